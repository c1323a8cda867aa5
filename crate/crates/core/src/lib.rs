//! Unit groups of Burnside rings of small finite permutation groups.
//!
//! The pipeline runs bottom-up:
//!
//! 1. [`PermGroup`] enumerates a group from permutation generators.
//! 2. [`SubgroupClassList`] finds the conjugacy classes of subgroups and fixes
//!    the order `H_1, …, H_r` used by every vector in the crate.
//! 3. [`MarksTable`] computes the table of marks and decides membership of
//!    ghost vectors in the Burnside ring by exact back-substitution.
//! 4. [`unit_group`] builds one GF(2) system per class representative from
//!    the elementary abelian 2-quotients of normalizers and returns a basis
//!    of `Ω*(G)`, each vector checked against the table of marks.
//!
//! [`brute_force_units`] searches all ±1 vectors against the table of marks
//! and serves as an independent oracle for small `r`.
//!
//! ```
//! use std::sync::Arc;
//! use burnside::{families, unit_group, MarksTable, SubgroupClassList};
//!
//! let g = Arc::new(families::symmetric(3).unwrap());
//! let classes = Arc::new(SubgroupClassList::new(&g));
//! let marks = MarksTable::new(classes).unwrap();
//! assert_eq!(unit_group(&marks, None).unwrap().rank, 3);
//! ```
//!
//! With the default `parallel` feature the per-class work (marks rows,
//! equation systems, oracle subtrees) runs on rayon; without it the same
//! code runs sequentially.

pub mod error;
pub mod expr;
pub mod families;
pub mod gf2;
pub mod group;
pub mod lattice;
pub mod marks;
pub mod par;
pub mod perm;
pub mod units;

pub use error::{Error, Result};
pub use expr::{GroupSpec, LoadedGroup};
pub use group::{ElemId, PermGroup, Subgroup, DEFAULT_ORDER_CAP};
pub use lattice::{all_subgroups, SubgroupClassList};
pub use marks::{BurnsideElement, Decomposition, GhostVector, MarksTable, SignVector};
pub use perm::Permutation;
pub use units::{
    abelian_basis_units, brute_force_units, conjecture_check, inversion_units, omega2_dim,
    unit_group, ConjectureReport, UnitGroupResult, UnitsReport, DEFAULT_ORACLE_CAP,
};
