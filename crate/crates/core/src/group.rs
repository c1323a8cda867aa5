//! Finite permutation groups with full element enumeration, and subgroups
//! stored as index sets into the parent's sorted element list.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::perm::Permutation;

/// Index of an element in [`PermGroup::elements`].
pub type ElemId = u32;

/// Default limit on the number of enumerated group elements.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// Largest order for which a full Cayley table is kept.
const CAYLEY_TABLE_LIMIT: usize = 6_000;

/// Closure of `generators` under composition, sorted lexicographically by
/// image sequence. Fails once more than `cap` elements are found.
pub fn enumerate(generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    if cap == 0 {
        return Err(Error::InvalidParameter(
            "order cap must be at least 1".into(),
        ));
    }
    let degree = generators.first().map_or(1, Permutation::degree);
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut queue = vec![identity];
    let mut next = 0;
    while next < queue.len() {
        let current = queue[next].clone();
        next += 1;
        for g in generators {
            let product = current.compose_unchecked(g);
            if !seen.contains(&product) {
                if seen.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                seen.insert(product.clone());
                queue.push(product);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

/// A finite permutation group, fully enumerated at construction.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_ids: Vec<ElemId>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    cayley: Option<Vec<u16>>,
    inverses: Vec<ElemId>,
    orders: Vec<u32>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(generators, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter(
                "a group needs at least one generator".into(),
            ));
        }
        let elements = enumerate(&generators, cap)?;
        let degree = generators[0].degree();
        let index: HashMap<Permutation, ElemId> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as ElemId))
            .collect();
        let generator_ids = generators.iter().map(|g| index[g]).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mut group = Self {
            degree,
            generators,
            generator_ids,
            elements,
            index,
            cayley: None,
            inverses,
            orders: Vec::new(),
        };
        if group.order() <= CAYLEY_TABLE_LIMIT {
            group.cayley = Some(group.build_cayley_table());
        }
        group.orders = (0..group.order() as ElemId)
            .map(|a| group.element_order_uncached(a))
            .collect();
        Ok(group)
    }

    /// Rows of the Cayley table, filled along a breadth-first spanning tree
    /// of the right Cayley graph: if `b = b' * g` then `a * b = (a * b') * g`.
    fn build_cayley_table(&self) -> Vec<u16> {
        let n = self.order();
        let right: Vec<Vec<ElemId>> = self
            .generators
            .iter()
            .map(|g| {
                self.elements
                    .iter()
                    .map(|x| self.index[&x.compose_unchecked(g)])
                    .collect()
            })
            .collect();
        // parent[b] = (b', generator) with b = b' * g; identity is index 0
        let mut parent: Vec<Option<(ElemId, usize)>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut bfs = vec![0 as ElemId];
        let mut next = 0;
        while next < bfs.len() {
            let b = bfs[next];
            next += 1;
            for (gi, table) in right.iter().enumerate() {
                let c = table[b as usize];
                if !visited[c as usize] {
                    visited[c as usize] = true;
                    parent[c as usize] = Some((b, gi));
                    bfs.push(c);
                }
            }
        }
        let rows = par::map_range(n, |a| {
            let mut row = vec![0u16; n];
            row[0] = a as u16;
            for &b in &bfs[1..] {
                let (prev, gi) = parent[b as usize].expect("spanning tree");
                row[b as usize] = right[gi][row[prev as usize] as usize] as u16;
            }
            row
        });
        rows.concat()
    }

    fn element_order_uncached(&self, a: ElemId) -> u32 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.generator_ids
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: ElemId) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        self.index.get(p).copied()
    }

    pub const IDENTITY: ElemId = 0;

    /// Product `a * b` (apply `b` first).
    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.cayley {
            Some(table) => table[a as usize * self.order() + b as usize] as ElemId,
            None => {
                self.index[&self.elements[a as usize].compose_unchecked(&self.elements[b as usize])]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverses[a as usize]
    }

    /// `g * h * g⁻¹`.
    #[inline]
    pub fn conj(&self, g: ElemId, h: ElemId) -> ElemId {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: ElemId) -> u32 {
        self.orders[a as usize]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_ids;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Bit set over element indices of one group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(order: usize) -> Self {
        Self {
            words: vec![0; order.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, id: ElemId) -> bool {
        self.words[id as usize / 64] >> (id % 64) & 1 == 1
    }

    /// Returns true when `id` was not present before.
    #[inline]
    pub fn insert(&mut self, id: ElemId) -> bool {
        let word = &mut self.words[id as usize / 64];
        let bit = 1u64 << (id % 64);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(w as ElemId * 64 + tz)
            })
        })
    }
}

/// A subgroup of a [`PermGroup`], held as a sorted list of element indices
/// together with a bit mask and a small generating set.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<PermGroup>,
    elements: Vec<ElemId>,
    mask: ElementSet,
    generators: Vec<ElemId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mask.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|&g| self.group.element(g).to_string())
            .collect();
        write!(
            f,
            "Subgroup(order {}, gens [{}])",
            self.order(),
            gens.join(", ")
        )
    }
}

impl Subgroup {
    pub fn trivial(group: &Arc<PermGroup>) -> Self {
        let mut mask = ElementSet::new(group.order());
        mask.insert(PermGroup::IDENTITY);
        Self {
            group: Arc::clone(group),
            elements: vec![PermGroup::IDENTITY],
            mask,
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &Arc<PermGroup>) -> Self {
        Self::closure(group, group.generator_ids())
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(group: &Arc<PermGroup>, seed: &[ElemId]) -> Self {
        seed.iter()
            .fold(Self::trivial(group), |acc, &z| acc.extended(z))
    }

    /// Wraps an element set already known to be a subgroup.
    pub(crate) fn from_mask(group: &Arc<PermGroup>, mask: ElementSet) -> Self {
        let mut sub = Self::trivial(group);
        for e in mask.iter() {
            if !sub.contains(e) {
                sub = sub.extended(e);
            }
        }
        debug_assert_eq!(sub.mask, mask);
        sub
    }

    /// `⟨self, z⟩`, computed coset by coset (Dimino's method).
    pub fn extended(&self, z: ElemId) -> Self {
        if self.contains(z) {
            return self.clone();
        }
        let g = &*self.group;
        let mut generators = self.generators.clone();
        generators.push(z);
        let mut mask = self.mask.clone();
        let mut elements = self.elements.clone();
        let base = self.elements.clone();
        let mut reps = vec![PermGroup::IDENTITY];
        let mut next = 0;
        while next < reps.len() {
            let r = reps[next];
            next += 1;
            for &gen in &generators {
                let e = g.mul(r, gen);
                if !mask.contains(e) {
                    for &s in &base {
                        let x = g.mul(s, e);
                        mask.insert(x);
                        elements.push(x);
                    }
                    reps.push(e);
                }
            }
        }
        elements.sort_unstable();
        Self {
            group: Arc::clone(&self.group),
            elements,
            mask,
            generators,
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    pub fn mask(&self) -> &ElementSet {
        &self.mask
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, id: ElemId) -> bool {
        self.mask.contains(id)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &*self.group;
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let g = &*self.group;
        self.elements
            .iter()
            .any(|&e| g.element_order(e) as usize == self.order())
    }

    /// True iff `x * self * x⁻¹ = self`; only generators need checking.
    pub fn is_normalized_by(&self, x: ElemId) -> bool {
        self.generators
            .iter()
            .all(|&h| self.contains(self.group.conj(x, h)))
    }

    pub fn is_normal_in(&self, overgroup: &Self) -> bool {
        self.is_subgroup_of(overgroup)
            && overgroup
                .generators
                .iter()
                .all(|&x| self.is_normalized_by(x))
    }

    /// `g * self * g⁻¹`.
    pub fn conjugate(&self, g: ElemId) -> Self {
        let grp = &*self.group;
        let mut mask = ElementSet::new(grp.order());
        let mut elements: Vec<ElemId> = self
            .elements
            .iter()
            .map(|&h| {
                let x = grp.conj(g, h);
                mask.insert(x);
                x
            })
            .collect();
        elements.sort_unstable();
        Self {
            group: Arc::clone(&self.group),
            elements,
            mask,
            generators: self.generators.iter().map(|&h| grp.conj(g, h)).collect(),
        }
    }

    /// `N_G(self)`, by filtering every element of G.
    pub fn normalizer(&self) -> Self {
        let grp = &self.group;
        let keep = par::map_range(grp.order(), |g| self.is_normalized_by(g as ElemId));
        let mut mask = ElementSet::new(grp.order());
        for (g, k) in keep.into_iter().enumerate() {
            if k {
                mask.insert(g as ElemId);
            }
        }
        Self::from_mask(grp, mask)
    }

    /// Closure of all commutators `a⁻¹ b⁻¹ a b` with `a, b` in the subgroup.
    pub fn derived_subgroup(&self) -> Self {
        let g = &*self.group;
        let mut seen = ElementSet::new(g.order());
        let mut result = Self::trivial(&self.group);
        for &a in &self.elements {
            let ai = g.inv(a);
            for &b in &self.elements {
                let c = g.mul(g.mul(ai, g.inv(b)), g.mul(a, b));
                if seen.insert(c) && !result.contains(c) {
                    result = result.extended(c);
                }
            }
        }
        result
    }

    /// Multiset of element orders, sorted; a conjugacy invariant.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .elements
            .iter()
            .map(|&e| self.group.element_order(e))
            .collect();
        v.sort_unstable();
        v
    }

    /// Some `g` with `g * self * g⁻¹ = other`, if one exists.
    pub fn conjugating_element(&self, other: &Self) -> Option<ElemId> {
        if self.order() != other.order() {
            return None;
        }
        if self == other {
            return Some(PermGroup::IDENTITY);
        }
        if self.order_profile() != other.order_profile() {
            return None;
        }
        let grp = &*self.group;
        (0..grp.order() as ElemId).find(|&g| {
            self.generators
                .iter()
                .all(|&h| other.contains(grp.conj(g, h)))
        })
    }

    pub fn is_conjugate(&self, other: &Self) -> bool {
        self.conjugating_element(other).is_some()
    }

    /// Left cosets `g * self` in G; returns the least element of each, in
    /// ascending order.
    pub fn left_transversal(&self) -> Vec<ElemId> {
        let grp = &*self.group;
        let mut covered = ElementSet::new(grp.order());
        let mut reps = Vec::with_capacity(grp.order() / self.order());
        for g in 0..grp.order() as ElemId {
            if covered.contains(g) {
                continue;
            }
            reps.push(g);
            for &h in &self.elements {
                covered.insert(grp.mul(g, h));
            }
        }
        reps
    }
}

/// Right cosets `H n` of `H` inside an overgroup `N`, each identified by its
/// least element.
pub struct RightCosets {
    labels: Vec<u32>,
    reps: Vec<ElemId>,
}

impl RightCosets {
    pub const OUTSIDE: u32 = u32::MAX;

    pub fn new(overgroup: &Subgroup, sub: &Subgroup) -> Self {
        let grp = &**overgroup.group();
        let mut labels = vec![Self::OUTSIDE; grp.order()];
        let mut reps = Vec::with_capacity(overgroup.order() / sub.order());
        for &n in overgroup.elements() {
            if labels[n as usize] != Self::OUTSIDE {
                continue;
            }
            let id = reps.len() as u32;
            for &h in sub.elements() {
                labels[grp.mul(h, n) as usize] = id;
            }
            reps.push(n);
        }
        Self { labels, reps }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Coset index of `n`, or [`Self::OUTSIDE`] if `n` is not in the overgroup.
    #[inline]
    pub fn label(&self, n: ElemId) -> u32 {
        self.labels[n as usize]
    }

    /// Least element of each coset, ascending.
    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }
}

/// One element of `overgroup` per conjugacy class of `overgroup / sub`.
///
/// Cosets are conjugated by the generators of `overgroup`. With `rng = None`
/// the representative of a class is the least element over all its cosets,
/// and classes come out in ascending order of that element. With an `rng`,
/// a random element of a random coset of each class is returned instead.
pub fn quotient_class_reps<R: Rng>(
    overgroup: &Subgroup,
    sub: &Subgroup,
    mut rng: Option<&mut R>,
) -> Result<Vec<ElemId>> {
    if !sub.is_normal_in(overgroup) {
        return Err(Error::NotNormal);
    }
    let grp = &**overgroup.group();
    let cosets = RightCosets::new(overgroup, sub);
    let mut class_of = vec![u32::MAX; cosets.len()];
    let mut out = Vec::new();
    for start in 0..cosets.len() {
        if class_of[start] != u32::MAX {
            continue;
        }
        let class_id = out.len() as u32;
        class_of[start] = class_id;
        let mut orbit = vec![start];
        let mut next = 0;
        while next < orbit.len() {
            let n = cosets.reps()[orbit[next]];
            next += 1;
            for &x in overgroup.generators() {
                let c = cosets.label(grp.conj(x, n)) as usize;
                if class_of[c] == u32::MAX {
                    class_of[c] = class_id;
                    orbit.push(c);
                }
            }
        }
        let rep = match rng.as_deref_mut() {
            None => cosets.reps()[start],
            Some(rng) => {
                let coset = orbit[rng.gen_range(0..orbit.len())];
                let h = sub.elements()[rng.gen_range(0..sub.order())];
                grp.mul(h, cosets.reps()[coset])
            }
        };
        out.push(rep);
    }
    Ok(out)
}
