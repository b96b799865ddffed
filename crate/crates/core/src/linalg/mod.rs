//! Exact linear algebra over `Z[x]`.
//!
//! Ranks are taken over the fraction field `Q(x)` with Bareiss elimination.
//! Everything that needs an exact module answer (kernels, membership,
//! complements, intersections) goes through [`gb`], a strong Gröbner basis
//! engine for submodules of `Z[x]^n`.

mod gb;
mod lattice;

pub use lattice::{syzygy_basis, Lattice, MembershipCertificate};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::ZxPoly;

/// A vector in `Z[x]^n`.
pub type ZxVector = Vec<ZxPoly>;

pub fn zero_vector(n: usize) -> ZxVector {
    vec![ZxPoly::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> ZxVector {
    let mut v = zero_vector(n);
    v[i] = ZxPoly::one();
    v
}

pub fn is_zero_vector(v: &[ZxPoly]) -> bool {
    v.iter().all(ZxPoly::is_zero)
}

pub fn dot(a: &[ZxPoly], b: &[ZxPoly]) -> ZxPoly {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(ZxPoly::zero(), |acc, (x, y)| acc + x * y)
}

pub fn vec_add(a: &[ZxPoly], b: &[ZxPoly]) -> ZxVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[ZxPoly], b: &[ZxPoly]) -> ZxVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[ZxPoly]) -> ZxVector {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(a: &[ZxPoly], s: &ZxPoly) -> ZxVector {
    a.iter().map(|x| x * s).collect()
}

/// `sum_i coeffs[i] * vectors[i]` in `Z[x]^n`.
pub fn combine(vectors: &[ZxVector], coeffs: &[ZxPoly], n: usize) -> ZxVector {
    let mut out = zero_vector(n);
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += &(x * c);
        }
    }
    out
}

/// Divides a nonzero vector by the `Z[x]`-gcd of its entries, leaving the
/// sign of every entry unchanged (the gcd is taken positive).
pub fn primitive_vector(v: &[ZxPoly]) -> ZxVector {
    let g = v.iter().fold(ZxPoly::zero(), |g, e| g.gcd(e));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter()
        .map(|e| e.div_exact(&g).expect("gcd divides every entry"))
        .collect()
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A dense row-major matrix over `Z[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZxMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ZxPoly>,
}

impl ZxMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZxMatrix {
            rows,
            cols,
            entries: vec![ZxPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZxMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ZxPoly::one());
        }
        m
    }

    pub fn from_rows(rows: &[ZxVector], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            entries.extend(r.iter().cloned());
        }
        Ok(ZxMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds the matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(columns: &[ZxVector], rows: usize) -> Result<Self> {
        let mut m = ZxMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_dim(rows, c.len())?;
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ZxPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ZxPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> ZxVector {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> ZxVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<ZxVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<ZxVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> ZxMatrix {
        let mut t = ZxMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[ZxPoly]) -> Result<ZxVector> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| dot(&self.entries[i * self.cols..(i + 1) * self.cols], v))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ZxPoly::is_zero)
    }

    /// Rank over `Q(x)`.
    pub fn rank(&self) -> usize {
        rank_qx(self)
    }
}

/// Rank over the fraction field `Q(x)` by fraction-free (Bareiss) elimination.
///
/// After step `k` every live entry is a `(k+1) x (k+1)` minor of the input,
/// so the division by the previous pivot is always exact.
pub fn rank_qx(a: &ZxMatrix) -> usize {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<ZxPoly>> = (0..rows).map(|i| a.row(i)).collect();
    let mut prev = ZxPoly::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let factor = std::mem::replace(&mut row[c], ZxPoly::zero());
            for (e, p) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                let num = &(&pivot * e) - &(&factor * p);
                *e = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix, by Bareiss elimination.
pub fn determinant(a: &ZxMatrix) -> Result<ZxPoly> {
    check_dim(a.rows, a.cols)?;
    let n = a.rows;
    let mut m: Vec<Vec<ZxPoly>> = (0..n).map(|i| a.row(i)).collect();
    let mut prev = ZxPoly::one();
    let mut negate = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Ok(ZxPoly::zero());
        };
        if p != c {
            m.swap(c, p);
            negate = !negate;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = &(&m[c][c] * &m[i][j]) - &(&m[i][c] * &m[c][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = ZxPoly::zero();
        }
        prev = m[c][c].clone();
    }
    Ok(if negate { -prev } else { prev })
}

/// Indices of a maximal set of rows that are independent over `Q(x)`,
/// chosen greedily from the top.
pub fn independent_rows(a: &ZxMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut picked: Vec<ZxVector> = Vec::new();
    for i in 0..a.rows {
        picked.push(a.row(i));
        if rank_of_vectors(&picked, a.cols) > chosen.len() {
            chosen.push(i);
        } else {
            picked.pop();
        }
    }
    chosen
}

/// Rank over `Q(x)` of a list of vectors in `Z[x]^n`.
pub fn rank_of_vectors(vectors: &[ZxVector], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = ZxMatrix::from_rows(vectors, n).expect("vectors share the ambient dimension");
    rank_qx(&m)
}
