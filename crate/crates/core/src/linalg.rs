//! Dense exact linear algebra: rank, reduced row echelon form, kernels and
//! canonical cokernel presentations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, Scalar};

/// A dense matrix over an exact [`Field`], stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of scalars; panics on ragged input or
    /// scalars from another field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for s in row {
                assert!(field.contains(&s), "scalar {s} outside {field}");
                data.push(s);
            }
        }
        ExactMatrix { field, rows: n, cols, data }
    }

    /// Integer matrix mapped into `field`. Column count is taken from the
    /// first row (zero when there are no rows).
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows, cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.field.is_zero(s))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        assert_eq!(self.field, rhs.field, "field mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(r, c), &f.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c).clone());
            }
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn scaled(&self, s: &Scalar) -> ExactMatrix {
        let f = self.field;
        ExactMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f.mul(x, s)).collect(),
        }
    }

    /// Rank over the field. Rationals go through fraction-free (Bareiss)
    /// elimination on a row-scaled integer copy; prime fields use plain
    /// Gaussian elimination.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_rank(self.integer_rows()),
            Field::Prime(_) => self.rref().1.len(),
        }
    }

    /// Each row multiplied by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                    acc.lcm(s.as_rational().expect("rational entry").denom())
                });
                row.iter()
                    .map(|s| {
                        let q = s.as_rational().expect("rational entry");
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns. Pivots are taken in
    /// the leftmost available column, scanning rows top to bottom.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !f.is_zero(m.get(r, c))) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = f.inv(m.get(lead, c));
            for k in c..m.cols {
                let v = f.mul(m.get(lead, k), &inv);
                m.set(lead, k, v);
            }
            for r in 0..m.rows {
                if r == lead || f.is_zero(m.get(r, c)) {
                    continue;
                }
                let factor = m.get(r, c).clone();
                for k in c..m.cols {
                    let v = f.sub(m.get(r, k), &f.mul(&factor, m.get(lead, k)));
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space, one column per free variable of the
    /// RREF, with a 1 in that free coordinate.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let f = self.field;
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (col, &fc) in free.iter().enumerate() {
            k.set(fc, col, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, col, f.neg(rref.get(r, fc)));
            }
        }
        k
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Canonical presentation of `ambient / span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    pub dim: usize,
    /// `dim x ambient_dim`; kills every relation.
    pub projection: ExactMatrix,
    /// `ambient_dim x dim`; `projection * section` is the identity.
    pub section: ExactMatrix,
    /// Ambient coordinates whose images form the basis, strictly increasing.
    pub pivot_tags: Vec<usize>,
}

/// Cokernel of `relations` (columns are relations in the ambient space of
/// dimension `relations.rows()`). The basis is the set of ambient
/// coordinates that are not pivots of the RREF of the relation span, where
/// pivots are chosen at the lowest available index.
pub fn quotient_space(relations: &ExactMatrix) -> QuotientSpace {
    let f = relations.field();
    let ambient = relations.rows();
    let (rref, pivots) = relations.transpose().rref();
    let basis: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
    let dim = basis.len();
    let mut projection = ExactMatrix::zeros(f, dim, ambient);
    let mut section = ExactMatrix::zeros(f, ambient, dim);
    for (i, &q) in basis.iter().enumerate() {
        projection.set(i, q, f.one());
        section.set(q, i, f.one());
    }
    for (r, &p) in pivots.iter().enumerate() {
        for (i, &q) in basis.iter().enumerate() {
            projection.set(i, p, f.neg(rref.get(r, q)));
        }
    }
    QuotientSpace { ambient_dim: ambient, dim, projection, section, pivot_tags: basis }
}
