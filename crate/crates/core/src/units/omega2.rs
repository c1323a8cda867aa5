//! Rank of the ring generated by classes of pairs `(H, K)`, `|H:K| ≤ 2`,
//! and the inequality comparing it with the unit-group rank.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElementSet, Subgroup};
use crate::lattice::SubgroupClassList;
use crate::par;

use super::{TwoQuotientData, UnitGroupResult};

/// Number of `N_G(H)`-orbits on `{K ≤ H : |H:K| ≤ 2}`, summed over class
/// representatives `H`.
pub fn omega2_dim(classes: &SubgroupClassList) -> usize {
    let per_class = par::map_range(classes.len(), |i| {
        1 + index_two_orbits(classes.rep(i), classes.normalizer(i))
    });
    per_class.into_iter().sum()
}

/// Orbits of `n` (acting by conjugation) on the index-2 subgroups of `h`.
fn index_two_orbits(h: &Subgroup, n: &Subgroup) -> usize {
    let group = h.group();
    let tq = TwoQuotientData::new(h, &Subgroup::trivial(group), None).expect("1 is normal");
    let d = tq.dim();
    if d == 0 {
        return 0;
    }
    // kernels of the nonzero functionals on H/Φ₂(H)
    let kernels: Vec<ElementSet> = (1u64..1 << d)
        .map(|f| {
            let mut mask = ElementSet::new(group.order());
            for &x in h.elements() {
                let alpha = tq.coordinates(x).expect("element of H");
                if (alpha & f).count_ones().is_multiple_of(2) {
                    mask.insert(x);
                }
            }
            mask
        })
        .collect();
    let lookup: HashMap<&ElementSet, usize> =
        kernels.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut orbit_of = vec![usize::MAX; kernels.len()];
    let mut orbits = 0;
    for start in 0..kernels.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        orbit_of[start] = orbits;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for &x in n.generators() {
                let mut image = ElementSet::new(group.order());
                for e in kernels[k].iter() {
                    image.insert(group.conj(x, e));
                }
                let j = lookup[&image];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = orbits;
                    stack.push(j);
                }
            }
        }
        orbits += 1;
    }
    orbits
}

/// Gaussian binomial coefficient `[n choose k]_2`, via `q`-factorials with
/// `[j]_2 = 2^j - 1`.
pub fn gaussian_binomial(n: u32, k: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "gaussian binomial needs k <= n, got n = {n}, k = {k}"
        )));
    }
    let q_int = |j: u32| (BigUint::one() << j) - BigUint::one();
    let q_factorial = |m: u32| (1..=m).map(q_int).fold(BigUint::one(), |acc, x| acc * x);
    Ok(q_factorial(n) / (q_factorial(k) * q_factorial(n - k)))
}

/// `[n]_2 · Σ_{k=0}^{n-1} [n-1 choose k]_2`, the value of
/// `dim Ω₂ − dim Ω` for the elementary abelian group of order `2^n`.
pub fn elementary_abelian_difference(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let bracket_n = (BigUint::one() << n) - BigUint::one();
    let sum: BigUint = (0..n)
        .map(|k| gaussian_binomial(n - 1, k).expect("k < n"))
        .sum();
    bracket_n * sum
}

/// `rank Ω*(G) − 1` against `dim Ω₂(G) − dim Ω(G)`.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl ConjectureReport {
    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn conjecture_check(units: &UnitGroupResult) -> ConjectureReport {
    let classes = &units.classes;
    let lhs = units.rank as i64 - 1;
    let rhs = omega2_dim(classes) as i64 - classes.len() as i64;
    ConjectureReport {
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;
    use std::sync::Arc;

    use super::*;
    use crate::families;
    use crate::group::{ElemId, PermGroup};
    use crate::lattice::all_subgroups;

    fn classes(g: PermGroup) -> SubgroupClassList {
        SubgroupClassList::new(&Arc::new(g))
    }

    /// G-orbits on all pairs `(H, K)` with `K ≤ H` of index at most 2.
    fn pair_classes_by_brute_force(g: &Arc<PermGroup>) -> usize {
        let subs = all_subgroups(g);
        let pairs: Vec<(&Subgroup, &Subgroup)> = subs
            .iter()
            .flat_map(|h| {
                subs.iter()
                    .filter(move |k| {
                        k.is_subgroup_of(h)
                            && (k.order() == h.order() || 2 * k.order() == h.order())
                    })
                    .map(move |k| (h, k))
            })
            .collect();
        let mut seen: HashSet<(ElementSet, ElementSet)> = HashSet::new();
        let mut orbits = 0;
        for (h, k) in pairs {
            if seen.contains(&(h.mask().clone(), k.mask().clone())) {
                continue;
            }
            orbits += 1;
            for x in 0..g.order() as ElemId {
                seen.insert((h.conjugate(x).mask().clone(), k.conjugate(x).mask().clone()));
            }
        }
        orbits
    }

    #[test]
    fn odd_order_has_only_trivial_pairs() {
        for g in [families::cyclic(9).unwrap(), families::cyclic(15).unwrap()] {
            let list = classes(g);
            assert_eq!(omega2_dim(&list), list.len());
        }
    }

    #[test]
    fn small_differences() {
        let v4 = classes(families::elementary_abelian(2).unwrap());
        assert_eq!(omega2_dim(&v4), 11);
        let s3 = classes(families::symmetric(3).unwrap());
        assert_eq!(omega2_dim(&s3) - s3.len(), 2);
    }

    #[test]
    fn orbit_count_matches_pair_enumeration() {
        for g in [
            families::symmetric(3).unwrap(),
            families::symmetric(4).unwrap(),
            families::dihedral(8).unwrap(),
            families::elementary_abelian(3).unwrap(),
            families::semidirect_inversion(&[3, 3]).unwrap(),
        ] {
            let list = classes(g);
            assert_eq!(omega2_dim(&list), pair_classes_by_brute_force(list.group()));
        }
    }

    /// 2-dimensional subspaces of GF(2)^4, counted as sets of nonzero vectors.
    fn two_dim_subspaces_of_gf2_4() -> usize {
        let mut spaces: HashSet<[u8; 3]> = HashSet::new();
        for a in 1u8..16 {
            for b in 1u8..16 {
                if a != b {
                    let mut s = [a, b, a ^ b];
                    s.sort();
                    spaces.insert(s);
                }
            }
        }
        spaces.len()
    }

    #[test]
    fn gaussian_binomials() {
        for n in 0..6 {
            assert_eq!(gaussian_binomial(n, 0).unwrap(), BigUint::one());
        }
        assert_eq!(gaussian_binomial(2, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(two_dim_subspaces_of_gf2_4(), 35);
        assert_eq!(gaussian_binomial(4, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn elementary_abelian_formula_values() {
        assert_eq!(elementary_abelian_difference(1), BigUint::from(1u32));
        assert_eq!(elementary_abelian_difference(2), BigUint::from(6u32));
    }
}
