//! The unit group `Ω*(G)` of the Burnside ring.
//!
//! A ±1 ghost vector `u` is a unit of the Burnside ring iff for every class
//! representative `H = H_i` the function `n ↦ u(H⟨n⟩)/u(H)` on `N = N_G(H)`
//! is a linear character. Such a character factors through the largest
//! elementary abelian 2-quotient `E = N/R`; writing `Rn = Σ α_k e_k` in a
//! basis of `E`, `u(H_i) = (-1)^{v_i}` and `λ(e_k) = (-1)^{l_k}`, each
//! conjugacy class representative `q` of `N/H` gives one GF(2) equation
//!
//! ```text
//! α_1 l_1 + … + α_m l_m + v_p + v_q = 0,   H ~ H_p, H⟨q⟩ ~ H_q.
//! ```
//!
//! Conjugate cosets give the same equation because `E` is abelian, so class
//! representatives are enough. The `l` variables of all classes stay in one
//! global system; its nullspace projected onto the `v` coordinates is the
//! unit group.

mod families;
mod omega2;

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use families::{abelian_basis_units, inversion_units, odd_order_part};
pub use omega2::{
    conjecture_check, elementary_abelian_difference, gaussian_binomial, omega2_dim,
    ConjectureReport,
};

use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vector};
use crate::group::{quotient_class_reps, ElemId, RightCosets, Subgroup};
use crate::lattice::SubgroupClassList;
use crate::marks::{MarksTable, SignVector};
use crate::par;

/// `N/R`, the largest elementary abelian 2-quotient of `N/H`, with a basis
/// of cosets and the coordinates of every coset in that basis.
pub struct TwoQuotientData {
    pub h: Subgroup,
    pub n: Subgroup,
    pub r: Subgroup,
    cosets: RightCosets,
    coords: Vec<u64>,
    basis: Vec<ElemId>,
}

impl TwoQuotientData {
    /// Builds `R = ⟨H, N′, g² : g ∈ gens(N)⟩` and a greedy basis of `N/R`.
    ///
    /// Cosets are scanned by least element, or in a shuffled order when an
    /// `rng` is given.
    pub fn new(n: &Subgroup, h: &Subgroup, rng: Option<&mut ChaCha8Rng>) -> Result<Self> {
        if !h.is_normal_in(n) {
            return Err(Error::NotNormal);
        }
        let grp = &**n.group();
        let mut r = n.derived_subgroup();
        for &x in h.generators() {
            r = r.extended(x);
        }
        for &g in n.generators() {
            r = r.extended(grp.mul(g, g));
        }
        let cosets = RightCosets::new(n, &r);
        let size = cosets.len();
        if !size.is_power_of_two() {
            return Err(Error::Internal(format!(
                "|N/R| = {size} is not a power of two"
            )));
        }
        let mut order: Vec<usize> = (0..size).collect();
        if let Some(rng) = rng {
            order.shuffle(rng);
        }
        const UNSET: u64 = u64::MAX;
        let mut coords = vec![UNSET; size];
        coords[cosets.label(crate::group::PermGroup::IDENTITY) as usize] = 0;
        let mut reached = vec![cosets.label(crate::group::PermGroup::IDENTITY) as usize];
        let mut basis = Vec::new();
        for c in order {
            if reached.len() == size {
                break;
            }
            if coords[c] != UNSET {
                continue;
            }
            let k = basis.len();
            let e = cosets.reps()[c];
            basis.push(e);
            for idx in 0..reached.len() {
                let d = reached[idx];
                let product = cosets.label(grp.mul(cosets.reps()[d], e)) as usize;
                debug_assert_eq!(coords[product], UNSET);
                coords[product] = coords[d] | 1 << k;
                reached.push(product);
            }
        }
        debug_assert_eq!(1usize << basis.len(), size);
        Ok(Self {
            h: h.clone(),
            n: n.clone(),
            r,
            cosets,
            coords,
            basis,
        })
    }

    /// `m = log₂ |N/R|`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Representatives `e_1, …, e_m` of the basis cosets.
    pub fn basis(&self) -> &[ElemId] {
        &self.basis
    }

    /// Coordinates of `Rn` as a bit mask (bit `k` is `α_{k+1}`).
    pub fn coordinates(&self, n: ElemId) -> Result<u64> {
        match self.cosets.label(n) {
            RightCosets::OUTSIDE => Err(Error::NotInNormalizer),
            c => Ok(self.coords[c as usize]),
        }
    }

    /// The unique `α` with `Rn = e_1^{α_1} ⋯ e_m^{α_m}`.
    pub fn coset_decompose(&self, n: ElemId) -> Result<Gf2Vector> {
        let bits = self.coordinates(n)?;
        Ok(Gf2Vector::from_bits(
            &(0..self.dim())
                .map(|k| bits >> k & 1 == 1)
                .collect::<Vec<_>>(),
        ))
    }
}

/// The equation system contributed by one class representative, over
/// `(l_1, …, l_m, v_1, …, v_r)`.
#[derive(Clone, Debug)]
pub struct SubgroupEquations {
    pub class_index: usize,
    pub local_var_count: usize,
    pub rows: Vec<Gf2Vector>,
}

fn class_rng(seed: u64, class: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (class as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Equations for `H_i` (0-based). With a seed, the basis scan and the
/// coset representatives are randomised; the solution set does not change.
pub fn equations_for(
    classes: &SubgroupClassList,
    i: usize,
    seed: Option<u64>,
) -> Result<SubgroupEquations> {
    let h = classes.rep(i);
    let n = classes.normalizer(i);
    let r = classes.len();
    let mut rng = seed.map(|s| class_rng(s, i));
    let tq = TwoQuotientData::new(n, h, rng.as_mut())?;
    let reps = quotient_class_reps(n, h, rng.as_mut())?;
    let m = tq.dim();
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for q in reps {
        let c = h.extended(q);
        let target = classes
            .index_of(&c)
            .ok_or_else(|| Error::Lattice(format!("H{}<q> is not in the lattice", i + 1)))?;
        let alpha = tq.coordinates(q)?;
        let mut row = Gf2Vector::zeros(m + r);
        for k in 0..m {
            if alpha >> k & 1 == 1 {
                row.set(k, true);
            }
        }
        row.flip(m + i);
        row.flip(m + target);
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    Ok(SubgroupEquations {
        class_index: i,
        local_var_count: m,
        rows,
    })
}

/// `Ω*(G)` together with the class list its vectors are indexed by.
#[derive(Clone)]
pub struct UnitGroupResult {
    pub classes: Arc<SubgroupClassList>,
    pub rank: usize,
    pub basis: Vec<SignVector>,
    pub all_verified: bool,
}

impl UnitGroupResult {
    /// RREF basis of the unit group as a GF(2) subspace (bit set ⇔ −1).
    pub fn span(&self) -> Vec<Gf2Vector> {
        let r = self.classes.len();
        gf2::span_basis(r, &self.basis.iter().map(to_gf2).collect::<Vec<_>>())
    }

    pub fn contains(&self, u: &SignVector) -> bool {
        let r = self.classes.len();
        let reduced = gf2::rref(&Gf2Matrix::from_rows(r, self.span()));
        gf2::in_rref_span(&reduced, &to_gf2(u))
    }

    /// All `2^rank` units, sorted.
    pub fn elements(&self) -> Vec<SignVector> {
        let r = self.classes.len();
        let span = self.span();
        let mut out: Vec<SignVector> = (0u64..1 << span.len())
            .map(|mask| {
                let mut v = Gf2Vector::zeros(r);
                for (k, b) in span.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        v.xor_assign(b);
                    }
                }
                from_gf2(&v)
            })
            .collect();
        out.sort();
        out
    }
}

/// Sign vector ↦ GF(2) vector with a 1 wherever the sign is −1.
pub fn to_gf2(u: &SignVector) -> Gf2Vector {
    Gf2Vector::from_bits(&u.signs().iter().map(|&s| s < 0).collect::<Vec<_>>())
}

pub fn from_gf2(v: &Gf2Vector) -> SignVector {
    SignVector::from_bits(v.width(), |i| v.get(i))
}

/// RREF basis of the GF(2) span of a family of sign vectors.
pub fn sign_span(r: usize, family: &[SignVector]) -> Vec<Gf2Vector> {
    gf2::span_basis(r, &family.iter().map(to_gf2).collect::<Vec<_>>())
}

/// Assembles every `E(H_i)` into one system, takes its nullspace, projects
/// onto the `v` coordinates and checks each basis vector against the table
/// of marks.
pub fn unit_group(marks: &MarksTable, seed: Option<u64>) -> Result<UnitGroupResult> {
    let classes = Arc::clone(marks.classes());
    let r = classes.len();
    let systems = par::map_range(r, |i| equations_for(&classes, i, seed))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let local_total: usize = systems.iter().map(|s| s.local_var_count).sum();
    let width = local_total + r;
    let mut global = Gf2Matrix::new(width);
    let mut offset = 0;
    for system in &systems {
        let m = system.local_var_count;
        for row in &system.rows {
            let mut wide = Gf2Vector::zeros(width);
            for k in row.ones() {
                wide.set(
                    if k < m {
                        offset + k
                    } else {
                        local_total + k - m
                    },
                    true,
                );
            }
            global.push(wide);
        }
        offset += m;
    }
    let null = gf2::nullspace(&global);
    let v_coords: Vec<usize> = (local_total..width).collect();
    let projected = gf2::project_span(&null, &v_coords);
    let basis: Vec<SignVector> = projected.iter().map(from_gf2).collect();
    let checks = par::map_slice(&basis, |u| marks.is_unit(u));
    if let Some(index) = checks.iter().position(|ok| !ok) {
        return Err(Error::VerificationFailed { index });
    }
    Ok(UnitGroupResult {
        classes,
        rank: basis.len(),
        basis,
        all_verified: true,
    })
}

/// Default limit on `r` for [`brute_force_units`].
pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Every ±1 vector that passes the table-of-marks membership test.
///
/// The search assigns `u(H_r), u(H_{r-1}), …` in turn and abandons a branch
/// as soon as a back-substitution step is inexact, which only discards
/// vectors that would fail the full test anyway.
pub fn brute_force_units(marks: &MarksTable, cap_r: usize) -> Result<Vec<SignVector>> {
    let r = marks.len();
    if r > cap_r {
        return Err(Error::OracleCapExceeded { r, cap: cap_r });
    }
    let top = r.min(8);
    let chunks = par::map_range(1 << top, |prefix| {
        let mut x = vec![1i8; r];
        for t in 0..top {
            if prefix >> t & 1 == 1 {
                x[r - 1 - t] = -1;
            }
        }
        let mut out = Vec::new();
        let mut c = vec![0i128; r];
        match step_range(marks, &x, &mut c, r - top, r) {
            Some(true) if top == r => out.push(SignVector::new(x).expect("signs")),
            Some(true) => search(marks, &mut x, &mut c, r - top - 1, &mut out),
            Some(false) => {}
            None => exhaustive_below(marks, &mut x, r - top, &mut out),
        }
        out
    });
    let mut all: Vec<SignVector> = chunks.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// Back-substitution steps `j = to-1 … from`; `None` on overflow.
fn step_range(
    marks: &MarksTable,
    x: &[i8],
    c: &mut [i128],
    from: usize,
    to: usize,
) -> Option<bool> {
    for j in (from..to).rev() {
        match step(marks, x, c, j)? {
            true => {}
            false => return Some(false),
        }
    }
    Some(true)
}

#[allow(clippy::needless_range_loop)]
fn step(marks: &MarksTable, x: &[i8], c: &mut [i128], j: usize) -> Option<bool> {
    let r = marks.len();
    let mut rest = x[j] as i128;
    for i in j + 1..r {
        let m = marks.entry(i, j);
        if m != 0 && c[i] != 0 {
            rest = rest.checked_sub(c[i].checked_mul(m as i128)?)?;
        }
    }
    let d = marks.entry(j, j) as i128;
    if rest % d != 0 {
        return Some(false);
    }
    c[j] = rest / d;
    Some(true)
}

fn search(
    marks: &MarksTable,
    x: &mut Vec<i8>,
    c: &mut Vec<i128>,
    j: usize,
    out: &mut Vec<SignVector>,
) {
    for s in [1i8, -1] {
        x[j] = s;
        match step(marks, x, c, j) {
            Some(true) if j == 0 => out.push(SignVector::new(x.clone()).expect("signs")),
            Some(true) => search(marks, x, c, j - 1, out),
            Some(false) => {}
            None => exhaustive_below(marks, x, j, out),
        }
    }
    x[j] = 1;
}

/// Fallback after an `i128` overflow: try every assignment of `x[..upto]`,
/// keeping the rest fixed, with the big-integer membership test.
fn exhaustive_below(marks: &MarksTable, x: &mut [i8], upto: usize, out: &mut Vec<SignVector>) {
    for mask in 0u64..1 << upto {
        for (k, s) in x[..upto].iter_mut().enumerate() {
            *s = if mask >> k & 1 == 1 { -1 } else { 1 };
        }
        let u = SignVector::new(x.to_vec()).expect("signs");
        if marks.is_unit(&u) {
            out.push(u);
        }
    }
}

/// Serializable summary of a unit-group computation.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct UnitsReport {
    pub group: String,
    pub r: usize,
    pub rank: usize,
    pub basis: Vec<SignVector>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conjecture: Option<ConjectureReport>,
}

impl UnitsReport {
    pub fn new(group: &str, result: &UnitGroupResult) -> Self {
        Self {
            group: group.to_string(),
            r: result.classes.len(),
            rank: result.rank,
            basis: result.basis.clone(),
            verified: result.all_verified,
            conjecture: None,
        }
    }
}
