//! Dense linear algebra over GF(2) with rows packed into `u64` words.
//!
//! Every routine that returns a subspace returns it in reduced row-echelon
//! form, so equal subspaces compare equal bit for bit.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    width: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(width: usize) -> Self {
        Self {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn unit(width: usize, k: usize) -> Self {
        let mut v = Self::zeros(width);
        v.set(k, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            v.set(k, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, coordinate 0 first.
    pub fn from_str_bits(s: &str) -> Self {
        Self::from_bits(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, k: usize) -> bool {
        debug_assert!(k < self.width);
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, k: usize, value: bool) {
        assert!(k < self.width, "coordinate {k} out of range {}", self.width);
        let bit = 1u64 << (k % 64);
        if value {
            self.words[k / 64] |= bit;
        } else {
            self.words[k / 64] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, k: usize) {
        assert!(k < self.width, "coordinate {k} out of range {}", self.width);
        self.words[k / 64] ^= 1u64 << (k % 64);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// First set coordinate, if any.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(|&k| self.get(k))
    }

    /// Restriction to `coords`, in the given order.
    pub fn project(&self, coords: &[usize]) -> Self {
        let mut v = Self::zeros(coords.len());
        for (k, &c) in coords.iter().enumerate() {
            if self.get(c) {
                v.set(k, true);
            }
        }
        v
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.width {
            f.write_str(if self.get(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    width: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(width: usize, rows: Vec<Gf2Vector>) -> Self {
        assert!(rows.iter().all(|r| r.width == width), "ragged matrix");
        Self { width, rows }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn push(&mut self, row: Gf2Vector) {
        assert_eq!(row.width, self.width, "ragged matrix");
        self.rows.push(row);
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        Gf2Vector::from_bits(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }
}

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Gf2Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss–Jordan elimination; zero rows are dropped and pivots ascend.
pub fn rref(m: &Gf2Matrix) -> Rref {
    let mut rows: Vec<Gf2Vector> = m.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..m.width {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(top, p);
        let pivot = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != top && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Rref {
        matrix: Gf2Matrix {
            width: m.width,
            rows,
        },
        pivots,
    }
}

pub fn rank(m: &Gf2Matrix) -> usize {
    rref(m).rank()
}

/// Basis of `{x : M x = 0}`, one vector per free column `f`, with `x_f = 1`
/// and all other free coordinates zero.
pub fn nullspace(m: &Gf2Matrix) -> Vec<Gf2Vector> {
    let reduced = rref(m);
    let mut is_pivot = vec![false; m.width];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Gf2Vector> = (0..m.width)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Gf2Vector::unit(m.width, f);
            for (row, &p) in reduced.matrix.rows.iter().zip(&reduced.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    #[cfg(debug_assertions)]
    {
        assert_eq!(reduced.rank() + basis.len(), m.width, "rank-nullity");
        for v in &basis {
            assert!(m.mul_vec(v).is_zero(), "nullspace vector fails M v = 0");
        }
    }
    basis
}

/// RREF basis of the span of `vectors`.
pub fn span_basis(width: usize, vectors: &[Gf2Vector]) -> Vec<Gf2Vector> {
    rref(&Gf2Matrix::from_rows(width, vectors.to_vec()))
        .matrix
        .rows
}

/// RREF basis of the image of `span(basis)` under projection onto `coords`.
pub fn project_span(basis: &[Gf2Vector], coords: &[usize]) -> Vec<Gf2Vector> {
    let projected: Vec<Gf2Vector> = basis.iter().map(|v| v.project(coords)).collect();
    span_basis(coords.len(), &projected)
}

/// Whether `v` lies in the span of an RREF basis with the given pivots.
pub fn in_rref_span(reduced: &Rref, v: &Gf2Vector) -> bool {
    let mut w = v.clone();
    for (row, &p) in reduced.matrix.rows.iter().zip(&reduced.pivots) {
        if w.get(p) {
            w.xor_assign(row);
        }
    }
    w.is_zero()
}
