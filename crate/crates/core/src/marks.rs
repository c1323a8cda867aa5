//! The table of marks and the ghost-ring realisation of the Burnside ring.
//!
//! Row `i` of the table holds the marks of `H_1, …, H_r` on `G/H_i`, so a
//! Burnside element with multiplicities `c` has ghost vector `c · M`. An
//! integer vector `x` lies in the Burnside ring exactly when `c · M = x` has
//! an integral solution, which back-substitution decides without ever
//! forming `M⁻¹`.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElemId, Subgroup};
use crate::lattice::SubgroupClassList;
use crate::par;

/// Number of cosets `g H_i` fixed by `H_j`, i.e. with `g⁻¹ H_j g ⊆ H_i`.
pub fn mark(hi: &Subgroup, hj: &Subgroup) -> u64 {
    if !hi.order().is_multiple_of(hj.order()) {
        return 0;
    }
    count_fixed_cosets(hi, &hi.left_transversal(), hj)
}

fn count_fixed_cosets(hi: &Subgroup, transversal: &[ElemId], hj: &Subgroup) -> u64 {
    let g = &**hi.group();
    transversal
        .iter()
        .filter(|&&t| {
            let ti = g.inv(t);
            hj.generators().iter().all(|&h| hi.contains(g.conj(ti, h)))
        })
        .count() as u64
}

/// The `r × r` table of marks, lower triangular in the canonical class order.
#[derive(Clone)]
pub struct MarksTable {
    classes: Arc<SubgroupClassList>,
    entries: Vec<Vec<u64>>,
}

impl MarksTable {
    /// Computes every entry and checks the structural invariants.
    pub fn new(classes: Arc<SubgroupClassList>) -> Result<Self> {
        let r = classes.len();
        let entries = par::map_range(r, |i| {
            let hi = classes.rep(i);
            let transversal = hi.left_transversal();
            (0..r)
                .map(|j| {
                    let hj = classes.rep(j);
                    if !hi.order().is_multiple_of(hj.order()) {
                        0
                    } else {
                        count_fixed_cosets(hi, &transversal, hj)
                    }
                })
                .collect()
        });
        let table = Self { classes, entries };
        table.check_invariants()?;
        Ok(table)
    }

    fn check_invariants(&self) -> Result<()> {
        let r = self.len();
        let order = self.classes.group().order() as u64;
        let fail = |msg: String| Err(Error::Lattice(msg));
        for i in 0..r {
            let hi = self.classes.rep(i);
            for j in 0..r {
                let hj = self.classes.rep(j);
                let above = hj.order() > hi.order() || (hj.order() == hi.order() && i != j);
                if above && self.entries[i][j] != 0 {
                    return fail(format!(
                        "marks table not triangular at ({}, {})",
                        i + 1,
                        j + 1
                    ));
                }
            }
            let diagonal = (self.classes.normalizer(i).order() / hi.order()) as u64;
            if self.entries[i][i] != diagonal {
                return fail(format!("diagonal entry {} is not |N(H):H|", i + 1));
            }
            if self.entries[i][0] != order / hi.order() as u64 {
                return fail(format!("first column entry {} is not |G:H|", i + 1));
            }
        }
        if self.entries[r - 1].iter().any(|&m| m != 1) {
            return fail("last row is not all ones".into());
        }
        Ok(())
    }

    pub fn classes(&self) -> &Arc<SubgroupClassList> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Mark of `H_j` on `G/H_i` (0-based).
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Product of the diagonal, which is the determinant.
    pub fn determinant(&self) -> BigInt {
        (0..self.len())
            .map(|i| BigInt::from(self.entries[i][i]))
            .product()
    }

    /// `φ(b) = b · M`.
    pub fn marks_of(&self, b: &BurnsideElement) -> GhostVector {
        let r = self.len();
        assert_eq!(b.multiplicities.len(), r, "length mismatch");
        let values = (0..r)
            .map(|j| {
                (j..r)
                    .filter(|&i| self.entries[i][j] != 0)
                    .map(|i| &b.multiplicities[i] * self.entries[i][j])
                    .sum()
            })
            .collect();
        GhostVector { values }
    }

    /// Solves `c · M = x` exactly, descending from `H_r`.
    #[allow(clippy::needless_range_loop)]
    pub fn decompose(&self, x: &GhostVector) -> Decomposition {
        let r = self.len();
        assert_eq!(x.values.len(), r, "length mismatch");
        let mut c = vec![BigInt::zero(); r];
        for j in (0..r).rev() {
            let mut rest = x.values[j].clone();
            for i in j + 1..r {
                let m = self.entries[i][j];
                if m != 0 && !c[i].is_zero() {
                    rest -= &c[i] * m;
                }
            }
            let (q, rem) = rest.div_rem(&BigInt::from(self.entries[j][j]));
            if !rem.is_zero() {
                return Decomposition::NonIntegral { index: j };
            }
            c[j] = q;
        }
        Decomposition::Integral(BurnsideElement { multiplicities: c })
    }

    /// Membership of a ±1 vector in the Burnside ring.
    ///
    /// Runs the back-substitution in checked `i128` and only falls back to
    /// big integers if an intermediate overflows.
    pub fn is_unit(&self, u: &SignVector) -> bool {
        match self.integral_prefix_i128(&u.signs, 0) {
            Some(ok) => ok,
            None => matches!(self.decompose(&u.to_ghost()), Decomposition::Integral(_)),
        }
    }

    /// Checked back-substitution on the suffix `values[from..]` of a ghost
    /// vector indexed by class; `values` must have full length `r`. Returns
    /// `None` on `i128` overflow.
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn integral_prefix_i128(&self, values: &[i8], from: usize) -> Option<bool> {
        let r = self.len();
        let mut c = vec![0i128; r];
        for j in (from..r).rev() {
            let mut rest = values[j] as i128;
            for i in j + 1..r {
                let m = self.entries[i][j];
                if m != 0 && c[i] != 0 {
                    rest = rest.checked_sub(c[i].checked_mul(m as i128)?)?;
                }
            }
            let d = self.entries[j][j] as i128;
            if rest % d != 0 {
                return Some(false);
            }
            c[j] = rest / d;
        }
        Some(true)
    }

    /// Plain-text export: one lower-triangular row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.entries.iter().enumerate() {
            let line: Vec<String> = row[..=i].iter().map(u64::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    pub fn to_export(&self) -> MarksExport {
        MarksExport {
            classes: self
                .classes
                .reps()
                .iter()
                .zip(self.classes.class_sizes())
                .map(|(h, &size)| MarksClass {
                    order: h.order(),
                    size,
                })
                .collect(),
            rows: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, row)| row[..=i].to_vec())
                .collect(),
        }
    }
}

/// JSON form of the table of marks, with the class ordering alongside.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MarksExport {
    pub classes: Vec<MarksClass>,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MarksClass {
    pub order: usize,
    pub size: usize,
}

/// An element of the ghost ring `ℤ^r`; entry `i` is the value at `H_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostVector {
    pub values: Vec<BigInt>,
}

impl GhostVector {
    pub fn from_i64(values: &[i64]) -> Self {
        Self {
            values: values.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn pointwise_mul(&self, other: &Self) -> Self {
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// Multiplicities of the transitive G-sets `G/H_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    pub multiplicities: Vec<BigInt>,
}

impl BurnsideElement {
    pub fn from_i64(values: &[i64]) -> Self {
        Self {
            multiplicities: values.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    /// `[G/H_i]`.
    pub fn basis(r: usize, i: usize) -> Self {
        let mut multiplicities = vec![BigInt::zero(); r];
        multiplicities[i] = BigInt::from(1);
        Self { multiplicities }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.multiplicities.iter().all(|m| !m.is_negative())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Integral(BurnsideElement),
    /// The division at this 0-based class index was inexact.
    NonIntegral {
        index: usize,
    },
}

/// A ±1 vector of the ghost ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter(
                "sign vectors hold only +1 and -1".into(),
            ));
        }
        Ok(Self { signs })
    }

    pub fn ones(r: usize) -> Self {
        Self { signs: vec![1; r] }
    }

    pub fn minus_ones(r: usize) -> Self {
        Self { signs: vec![-1; r] }
    }

    /// Sign vector with `-1` exactly where `bit(i)` is true.
    pub fn from_bits(r: usize, bit: impl Fn(usize) -> bool) -> Self {
        Self {
            signs: (0..r).map(|i| if bit(i) { -1 } else { 1 }).collect(),
        }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn is_negative_at(&self, i: usize) -> bool {
        self.signs[i] < 0
    }

    pub fn pointwise_mul(&self, other: &Self) -> Self {
        Self {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    pub fn to_ghost(&self) -> GhostVector {
        GhostVector {
            values: self.signs.iter().map(|&s| BigInt::from(s)).collect(),
        }
    }
}
