//! Conjugacy classes of subgroups and the canonical ordering `H_1, …, H_r`
//! that indexes ghost vectors, marks and unit vectors.
//!
//! Classes are sorted by subgroup order, then by the sorted element-index
//! tuple of the class representative, which is the lexicographically least
//! tuple in its class. `H_1` is the trivial subgroup and `H_r` is `G`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElemId, ElementSet, PermGroup, Subgroup};
use crate::par;
use crate::perm::Permutation;

/// One generator per cyclic subgroup, in ascending element order.
fn cyclic_generators(group: &Arc<PermGroup>) -> Vec<ElemId> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut gens = Vec::new();
    for g in 0..group.order() as ElemId {
        let c = Subgroup::closure(group, &[g]);
        if seen.insert(c.mask().clone()) {
            gens.push(g);
        }
    }
    gens
}

/// Every subgroup of `group` by plain cyclic extension: start from the
/// cyclic subgroups and close `⟨S, z⟩` over all found `S` and cyclic
/// generators `z` until nothing new appears.
pub fn all_subgroups(group: &Arc<PermGroup>) -> Vec<Subgroup> {
    let cyclic = cyclic_generators(group);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut found: Vec<Subgroup> = Vec::new();
    for &z in &cyclic {
        let c = Subgroup::closure(group, &[z]);
        if seen.insert(c.mask().clone()) {
            found.push(c);
        }
    }
    let mut next = 0;
    while next < found.len() {
        let s = found[next].clone();
        next += 1;
        for &z in &cyclic {
            if s.contains(z) {
                continue;
            }
            let u = s.extended(z);
            if seen.insert(u.mask().clone()) {
                found.push(u);
            }
        }
    }
    found
}

/// Ordered representatives of the conjugacy classes of subgroups of a group.
#[derive(Clone)]
pub struct SubgroupClassList {
    group: Arc<PermGroup>,
    reps: Vec<Subgroup>,
    normalizers: Vec<Subgroup>,
    class_sizes: Vec<usize>,
    index: HashMap<ElementSet, usize>,
}

struct RawClass {
    rep: Subgroup,
    normalizer: Subgroup,
    members: Vec<Subgroup>,
}

fn raw_class(sub: Subgroup) -> RawClass {
    let normalizer = sub.normalizer();
    let members: Vec<Subgroup> = normalizer
        .left_transversal()
        .into_iter()
        .map(|g| sub.conjugate(g))
        .collect();
    // orbit-stabilizer: conjugates by distinct cosets of N_G(H) are distinct
    let distinct: HashSet<&ElementSet> = members.iter().map(Subgroup::mask).collect();
    assert_eq!(distinct.len() * normalizer.order(), sub.group().order());
    let rep = members
        .iter()
        .min_by(|a, b| a.elements().cmp(b.elements()))
        .expect("nonempty class")
        .clone();
    let normalizer = if rep == sub {
        normalizer
    } else {
        rep.normalizer()
    };
    RawClass {
        rep,
        normalizer,
        members,
    }
}

impl SubgroupClassList {
    /// Enumerates subgroup classes by cyclic extension of class
    /// representatives.
    ///
    /// Every subgroup is `⟨S, z⟩` for a subgroup `S` with a shorter generating
    /// sequence and an element `z`; since `⟨S^g, z⟩ = ⟨S, z^{g⁻¹}⟩^g`, it is
    /// enough to extend one representative per class by every cyclic
    /// generator.
    pub fn new(group: &Arc<PermGroup>) -> Self {
        let cyclic = cyclic_generators(group);
        let mut known: HashSet<ElementSet> = HashSet::new();
        let mut classes: Vec<RawClass> = Vec::new();
        let admit =
            |sub: Subgroup, known: &mut HashSet<ElementSet>, classes: &mut Vec<RawClass>| {
                let class = raw_class(sub);
                for m in &class.members {
                    known.insert(m.mask().clone());
                }
                classes.push(class);
            };
        admit(Subgroup::trivial(group), &mut known, &mut classes);
        let mut next = 0;
        while next < classes.len() {
            let s = classes[next].rep.clone();
            next += 1;
            let candidates: Vec<ElemId> =
                cyclic.iter().copied().filter(|&z| !s.contains(z)).collect();
            let extensions = par::map_slice(&candidates, |&z| s.extended(z));
            for u in extensions {
                if !known.contains(u.mask()) {
                    admit(u, &mut known, &mut classes);
                }
            }
        }
        Self::from_raw(group, classes)
    }

    fn from_raw(group: &Arc<PermGroup>, mut classes: Vec<RawClass>) -> Self {
        classes.sort_by(|a, b| {
            (a.rep.order(), a.rep.elements()).cmp(&(b.rep.order(), b.rep.elements()))
        });
        let mut index = HashMap::new();
        for (i, class) in classes.iter().enumerate() {
            for m in &class.members {
                index.insert(m.mask().clone(), i);
            }
        }
        let class_sizes = classes.iter().map(|c| c.members.len()).collect();
        let (reps, normalizers) = classes.into_iter().map(|c| (c.rep, c.normalizer)).unzip();
        Self {
            group: Arc::clone(group),
            reps,
            normalizers,
            class_sizes,
            index,
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    /// Number of classes, `r`.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Subgroup] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &Subgroup {
        &self.reps[i]
    }

    /// `N_G(H_i)`.
    pub fn normalizer(&self, i: usize) -> &Subgroup {
        &self.normalizers[i]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Total number of subgroups of G.
    pub fn subgroup_count(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    /// 0-based class index of any subgroup of G.
    pub fn index_of(&self, sub: &Subgroup) -> Option<usize> {
        self.index.get(sub.mask()).copied()
    }

    /// Every subgroup of G with its class index.
    pub fn members(&self) -> impl Iterator<Item = (&ElementSet, usize)> {
        self.index.iter().map(|(m, &i)| (m, i))
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            degree: self.group.degree(),
            generators: self
                .group
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
            classes: self
                .reps
                .iter()
                .map(|h| LatticeClass {
                    order: h.order(),
                    representative: generator_strings(h),
                })
                .collect(),
        }
    }

    /// Rebuilds a class list from a lattice file and re-validates it:
    /// representatives must close to the stated orders, be pairwise
    /// non-conjugate, and every extension `⟨H_i, z⟩` by a cyclic generator
    /// must land in a listed class (which makes the list complete).
    pub fn from_file(file: &LatticeFile, order_cap: usize) -> Result<Self> {
        let parse = |text: &str| Permutation::parse(text, Some(file.degree));
        let generators = file
            .generators
            .iter()
            .map(|t| parse(t))
            .collect::<Result<Vec<_>>>()?;
        let group = Arc::new(PermGroup::with_cap(generators, order_cap)?);
        let mut classes = Vec::with_capacity(file.classes.len());
        for (k, class) in file.classes.iter().enumerate() {
            let ids = class
                .representative
                .iter()
                .map(|t| {
                    let p = parse(t)?;
                    group.id_of(&p).ok_or_else(|| {
                        Error::Lattice(format!("class {}: {t} is not in the group", k + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let sub = Subgroup::closure(&group, &ids);
            if sub.order() != class.order {
                return Err(Error::Lattice(format!(
                    "class {}: representative has order {}, file says {}",
                    k + 1,
                    sub.order(),
                    class.order
                )));
            }
            classes.push(raw_class(sub));
        }
        let mut known: HashMap<ElementSet, usize> = HashMap::new();
        for (k, class) in classes.iter().enumerate() {
            for m in &class.members {
                if let Some(j) = known.insert(m.mask().clone(), k) {
                    return Err(Error::Lattice(format!(
                        "classes {} and {} are conjugate",
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
        let cyclic = cyclic_generators(&group);
        let missing = par::map_slice(&classes, |class| {
            cyclic
                .iter()
                .filter(|&&z| !class.rep.contains(z))
                .map(|&z| class.rep.extended(z))
                .chain(std::iter::once(Subgroup::trivial(&group)))
                .find(|u| !known.contains_key(u.mask()))
        });
        if let Some(u) = missing.into_iter().flatten().next() {
            return Err(Error::Lattice(format!(
                "subgroup {u:?} is not conjugate to any listed class"
            )));
        }
        Ok(Self::from_raw(&group, classes))
    }

    /// Serializes the canonical lattice file as pretty JSON.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str, order_cap: usize) -> Result<Self> {
        let file: LatticeFile = serde_json::from_str(text)?;
        Self::from_file(&file, order_cap)
    }
}

fn generator_strings(h: &Subgroup) -> Vec<String> {
    if h.generators().is_empty() {
        return vec!["()".to_string()];
    }
    h.generators()
        .iter()
        .map(|&g| h.group().element(g).to_string())
        .collect()
}

/// On-disk lattice: the group and one generating set per class
/// representative, in canonical class order.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub degree: usize,
    pub generators: Vec<String>,
    pub classes: Vec<LatticeClass>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LatticeClass {
    pub order: usize,
    pub representative: Vec<String>,
}
