use std::fmt;

use num_traits::Zero;

use super::LinalgError;
use crate::ring::{format_scalar, Ring, Scalar};

/// Dense matrix with canonically reduced entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            entries.extend(row.into_iter().map(|x| ring.reduce(x)));
        }
        ExactMatrix { ring, rows: nrows, cols: ncols, entries }
    }

    pub fn from_int_rows(ring: Ring, rows: &[&[i64]]) -> Self {
        Self::from_rows(ring, rows.iter().map(|r| r.iter().map(|&x| ring.from_int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.entries[i * self.cols + j] = self.ring.reduce(x);
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.ring != other.ring {
            return Err(LinalgError::MixedRings(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + a * b;
                    }
                }
            }
        }
        for e in &mut out.entries {
            *e = self.ring.reduce(std::mem::take(e));
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, j) * x;
                    }
                }
                self.ring.reduce(acc)
            })
            .collect()
    }

    /// Re-reads the entries in another ring (e.g. integer matrix mod p).
    pub fn change_ring(&self, ring: Ring) -> ExactMatrix {
        ExactMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| ring.reduce(x.clone())).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix<{}>{}x{}[", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
