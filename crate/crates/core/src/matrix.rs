//! Dense row-major matrices over GF(q) and reduced row-echelon form.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Result of Gaussian elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    /// Same shape as the input; the first `rank` rows are nonzero.
    pub reduced: Matrix,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Builds a matrix from raw element indices, validating them against `field`.
    pub fn from_indices(field: &FieldSpec, rows: usize, cols: usize, indices: &[u32]) -> Result<Self> {
        if indices.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", indices.len())));
        }
        let data = indices.iter().map(|&i| field.element(i)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn push_row(&mut self, row: &[FieldElement]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("row has {} entries, expected {}", row.len(), self.cols)));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(&mut self, n: usize) {
        if n < self.rows {
            self.rows = n;
            self.data.truncate(n * self.cols);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, field: &FieldSpec) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Gaussian elimination; pivots are taken in the leftmost available
    /// column, using the smallest row index with a nonzero entry.
    pub fn rref(&self, field: &FieldSpec) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, rank * m.cols + j);
                }
            }
            let inv = field.inv(m.get(rank, col)).expect("pivot is nonzero");
            if inv != FieldElement::ONE {
                for j in col..m.cols {
                    let v = field.mul(m.get(rank, j), inv);
                    m.set(rank, j, v);
                }
            }
            for i in 0..m.rows {
                if i == rank {
                    continue;
                }
                let factor = m.get(i, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(factor, m.get(rank, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref { rank, reduced: m, pivots }
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.rref(field).rank
    }

    /// Row indices as nested arrays, the JSON representation.
    pub fn to_index_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.index() as u32).collect()).collect()
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_index_rows().serialize(s)
    }
}
