//! Constructors for the standard group families used throughout the crate.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn cycle(degree: usize, points: impl IntoIterator<Item = u32>) -> Permutation {
    let points: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[&points]).expect("valid cycle")
}

fn trivial(degree: usize) -> Vec<Permutation> {
    vec![Permutation::identity(degree.max(1))]
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    PermGroup::new(symmetric_generators(n)?)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    PermGroup::new(alternating_generators(n)?)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    PermGroup::new(cyclic_generators(n)?)
}

/// Dihedral group of the given order (not degree).
pub fn dihedral(order: usize) -> Result<PermGroup> {
    PermGroup::new(dihedral_generators(order)?)
}

/// `(C2)^k` acting on `2k` points.
pub fn elementary_abelian(k: usize) -> Result<PermGroup> {
    PermGroup::new(elementary_abelian_generators(k))
}

/// `G × H` acting on the disjoint union of the two point sets.
pub fn direct_product(left: &PermGroup, right: &PermGroup) -> Result<PermGroup> {
    PermGroup::new(product_generators(left.generators(), right.generators()))
}

/// `(C_{m1} × … × C_{mt}) ⋊ ⟨i⟩` where `i` inverts every element.
///
/// The abelian group acts regularly on its own elements (mixed-radix
/// encoded), and the inversion acts as `a ↦ a⁻¹` on those points.
pub fn semidirect_inversion(orders: &[usize]) -> Result<PermGroup> {
    PermGroup::new(semidirect_inversion_generators(orders)?)
}

pub fn symmetric_generators(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "symmetric group needs n >= 1".into(),
        ));
    }
    if n == 1 {
        return Ok(trivial(1));
    }
    let mut gens = vec![cycle(n, [0, 1])];
    if n > 2 {
        gens.push(cycle(n, 0..n as u32));
    }
    Ok(gens)
}

pub fn alternating_generators(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "alternating group needs n >= 1".into(),
        ));
    }
    if n < 3 {
        return Ok(trivial(n));
    }
    Ok((2..n as u32).map(|k| cycle(n, [0, 1, k])).collect())
}

pub fn cyclic_generators(n: usize) -> Result<Vec<Permutation>> {
    match n {
        0 => Err(Error::InvalidParameter("cyclic group needs n >= 1".into())),
        1 => Ok(trivial(1)),
        _ => Ok(vec![cycle(n, 0..n as u32)]),
    }
}

pub fn dihedral_generators(order: usize) -> Result<Vec<Permutation>> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "dihedral group order must be even and >= 2, got {order}"
        )));
    }
    let m = order / 2;
    match m {
        1 => cyclic_generators(2),
        2 => Ok(elementary_abelian_generators(2)),
        _ => {
            let rotation = cycle(m, 0..m as u32);
            let reflection = Permutation::from_images(
                (0..m as u32).map(|k| (m as u32 - k) % m as u32).collect(),
            )?;
            Ok(vec![rotation, reflection])
        }
    }
}

pub fn elementary_abelian_generators(k: usize) -> Vec<Permutation> {
    if k == 0 {
        return trivial(1);
    }
    let degree = 2 * k;
    (0..k as u32)
        .map(|i| cycle(degree, [2 * i, 2 * i + 1]))
        .collect()
}

/// Generators of the direct product on the disjoint union of supports.
pub fn product_generators(left: &[Permutation], right: &[Permutation]) -> Vec<Permutation> {
    let ld = left[0].degree();
    let degree = ld + right[0].degree();
    left.iter()
        .map(|g| g.shifted(0, degree))
        .chain(right.iter().map(|g| g.shifted(ld, degree)))
        .collect()
}

pub fn semidirect_inversion_generators(orders: &[usize]) -> Result<Vec<Permutation>> {
    if orders.is_empty() {
        return Err(Error::InvalidParameter(
            "semidirect inversion needs at least one factor".into(),
        ));
    }
    if let Some(&bad) = orders.iter().find(|&&m| m < 3 || m % 2 == 0) {
        return Err(Error::InvalidParameter(format!(
            "inversion factors must be odd and >= 3, got {bad}"
        )));
    }
    let degree: usize = orders.iter().product();
    let decode = |mut x: usize| -> Vec<usize> {
        orders
            .iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    let encode = |digits: &[usize]| -> u32 {
        digits
            .iter()
            .zip(orders)
            .rev()
            .fold(0usize, |acc, (&d, &m)| acc * m + d) as u32
    };
    let mut gens = Vec::new();
    for (axis, &m) in orders.iter().enumerate() {
        let images = (0..degree)
            .map(|x| {
                let mut d = decode(x);
                d[axis] = (d[axis] + 1) % m;
                encode(&d)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    let inversion = (0..degree)
        .map(|x| {
            let d: Vec<usize> = decode(x)
                .iter()
                .zip(orders)
                .map(|(&d, &m)| (m - d) % m)
                .collect();
            encode(&d)
        })
        .collect();
    gens.push(Permutation::from_images(inversion)?);
    Ok(gens)
}
