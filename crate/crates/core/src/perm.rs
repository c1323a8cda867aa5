//! Permutations on `0..degree` and their cycle notation.
//!
//! Composition follows the "right factor acts first" convention:
//! `p.compose(&q)` maps `k` to `p(q(k))`.
//!
//! Cycle notation in text is 1-based (`(1,2)(3,4,5)`, identity `()`), while
//! [`Permutation::images`] is 0-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            let i = i as usize;
            if i >= degree || seen[i] {
                return Err(Error::NotBijection { degree });
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let a = a as usize;
                if a >= degree || moved[a] {
                    return Err(Error::NotBijection { degree });
                }
                moved[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k as u32 == i)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other
                .images
                .iter()
                .map(|&k| self.images[k as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (k, &i) in self.images.iter().enumerate() {
            images[i as usize] = k as u32;
        }
        Self { images }
    }

    /// Extends the permutation to `degree` points, fixing the new ones.
    pub fn extended(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree.max(self.degree()) as u32);
        Self { images }
    }

    /// Shifts the support by `offset` and pads to `degree`.
    pub(crate) fn shifted(&self, offset: usize, degree: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (k, &i) in self.images.iter().enumerate() {
            images[k + offset] = i + offset as u32;
        }
        Self { images }
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k as u32);
                k = self.images[k] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,4,5)`.
    ///
    /// With `degree = None` the degree is the largest point mentioned (at
    /// least 1). Whitespace is ignored everywhere.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(0) as usize;
        let degree = match degree {
            Some(d) if d < max_point => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("point {max_point} exceeds degree {d}"),
                })
            }
            Some(d) => d,
            None => max_point.max(1),
        };
        let zero_based: Vec<Vec<u32>> = cycles
            .iter()
            .map(|c| c.iter().map(|&p| p - 1).collect())
            .collect();
        let refs: Vec<&[u32]> = zero_based.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs).map_err(|_| Error::Parse {
            pos: 0,
            msg: "cycles are not disjoint".into(),
        })
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<u32>>> {
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() {
        return Err(err(0, "empty permutation"));
    }
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c != '(' {
            return Err(err(pos, "expected '('"));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            let Some(&(pos, c)) = chars.get(i) else {
                return Err(err(text.len(), "unterminated cycle"));
            };
            if c == ')' && cycle.is_empty() {
                i += 1;
                break;
            }
            let start = i;
            let mut value: u64 = 0;
            while let Some(&(_, d)) = chars.get(i) {
                let Some(digit) = d.to_digit(10) else { break };
                value = value * 10 + digit as u64;
                if value > u32::MAX as u64 {
                    return Err(err(pos, "point out of range"));
                }
                i += 1;
            }
            if i == start {
                return Err(err(pos, "expected a point"));
            }
            if value == 0 {
                return Err(err(pos, "points are 1-based"));
            }
            cycle.push(value as u32);
            match chars.get(i) {
                Some(&(_, ',')) => i += 1,
                Some(&(_, ')')) => {
                    i += 1;
                    break;
                }
                Some(&(pos, _)) => return Err(err(pos, "expected ',' or ')'")),
                None => return Err(err(text.len(), "unterminated cycle")),
            }
        }
        if cycle.len() >= 2 {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, Some(degree)).unwrap()
    }

    #[test]
    fn right_factor_acts_first() {
        // (0 1) after (1 2): 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.compose(&b).unwrap().images(), &[1, 2, 0]);
    }

    #[test]
    fn identity_and_inverse_laws() {
        let q = p("(1,3,2)(4,5)", 5);
        let e = Permutation::identity(5);
        assert_eq!(e.compose(&q).unwrap(), q);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn parse_and_display() {
        let q = Permutation::parse(" ( 1 , 2 )(3,4, 5) ", None).unwrap();
        assert_eq!(q.degree(), 5);
        assert_eq!(q.to_string(), "(1,2)(3,4,5)");
        assert!(Permutation::parse("()", Some(4)).unwrap().is_identity());
        assert_eq!(Permutation::parse("()", None).unwrap().degree(), 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            Permutation::parse("(1,2", None),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            Permutation::parse("(1;2)", None),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(Permutation::parse("(0,1)", None).is_err());
        assert!(Permutation::parse("(1,2)(2,3)", None).is_err());
        assert!(Permutation::parse("(1,5)", Some(3)).is_err());
        assert!(Permutation::parse("", None).is_err());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
    }
}
