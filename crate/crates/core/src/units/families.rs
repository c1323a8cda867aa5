//! Explicit unit families for abelian groups and for semidirect products of
//! an odd abelian group with the inversion automorphism.

use crate::error::{Error, Result};
use crate::group::{ElemId, ElementSet, Subgroup};
use crate::marks::{MarksTable, SignVector};

use super::TwoQuotientData;

fn verify(marks: &MarksTable, family: Vec<SignVector>) -> Result<Vec<SignVector>> {
    match family.iter().position(|u| !marks.is_unit(u)) {
        Some(index) => Err(Error::VerificationFailed { index }),
        None => Ok(family),
    }
}

/// For abelian G with `|G/Φ₂(G)| = 2^n`: the units `-λ_i` for the index-2
/// subgroups `N_i`, where `λ_i(H) = +1` iff `H ≤ N_i`, followed by
/// `λ_G = ∏ λ_i` (or `-1` when `n = 0`).
pub fn abelian_basis_units(marks: &MarksTable) -> Result<Vec<SignVector>> {
    let classes = marks.classes();
    let group = classes.group();
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let r = classes.len();
    let whole = classes.rep(r - 1);
    let tq = TwoQuotientData::new(whole, &Subgroup::trivial(group), None)?;
    let n = tq.dim();
    if n == 0 {
        return verify(marks, vec![SignVector::minus_ones(r)]);
    }
    // N_f = kernel of the functional f on G/R
    let inside = |f: u64, h: &Subgroup| {
        h.generators().iter().all(|&x| {
            let alpha = tq.coordinates(x).expect("element of G");
            (alpha & f).count_ones().is_multiple_of(2)
        })
    };
    let lambdas: Vec<SignVector> = (1u64..1 << n)
        .map(|f| SignVector::from_bits(r, |i| !inside(f, classes.rep(i))))
        .collect();
    let lambda_g = lambdas
        .iter()
        .fold(SignVector::ones(r), |acc, l| acc.pointwise_mul(l));
    let mut family: Vec<SignVector> = lambdas.iter().map(SignVector::negated).collect();
    family.push(lambda_g);
    verify(marks, family)
}

/// The elements of odd order, provided they form an abelian subgroup `A` of
/// index 2 inverted by every element outside it.
pub fn odd_order_part(marks: &MarksTable) -> Result<Subgroup> {
    let classes = marks.classes();
    let group = classes.group();
    let wrong = |msg: &str| Error::WrongConstruction(msg.to_string());
    let mut mask = ElementSet::new(group.order());
    for g in 0..group.order() as ElemId {
        if group.element_order(g) % 2 == 1 {
            mask.insert(g);
        }
    }
    if mask.len() * 2 != group.order() {
        return Err(wrong("odd-order elements are not half the group"));
    }
    let seeds: Vec<ElemId> = mask.iter().collect();
    let a = Subgroup::closure(group, &seeds);
    if a.mask() != &mask {
        return Err(wrong("odd-order elements do not form a subgroup"));
    }
    if !a.is_abelian() {
        return Err(wrong("odd-order subgroup is not abelian"));
    }
    let inverts = (0..group.order() as ElemId)
        .filter(|&t| !a.contains(t))
        .all(|t| {
            a.generators()
                .iter()
                .all(|&x| group.conj(t, x) == group.inv(x))
        });
    if !inverts {
        return Err(wrong("elements outside A do not invert A"));
    }
    Ok(a)
}

/// For `G = A ⋊ ⟨i⟩`: the units `u_N` that are `-1` exactly on the class of
/// `⟨N, i⟩`, one per subgroup `N ≤ A`, followed by `-1`.
pub fn inversion_units(marks: &MarksTable) -> Result<Vec<SignVector>> {
    let classes = marks.classes();
    let a = odd_order_part(marks)?;
    let r = classes.len();
    let outside: Vec<usize> = (0..r)
        .filter(|&i| !classes.rep(i).is_subgroup_of(&a))
        .collect();
    let inside = r - outside.len();
    if outside.len() != inside {
        return Err(Error::WrongConstruction(format!(
            "{inside} classes inside A but {} outside",
            outside.len()
        )));
    }
    let mut family: Vec<SignVector> = outside
        .iter()
        .map(|&k| SignVector::from_bits(r, |i| i == k))
        .collect();
    family.push(SignVector::minus_ones(r));
    verify(marks, family)
}
