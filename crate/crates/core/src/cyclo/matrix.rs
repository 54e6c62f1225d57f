use std::fmt;

use num_integer::Integer;

use super::sparse::{self, SparseVec};
use super::{CycNum, Field};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

pub type CycMatrix = Matrix<CycNum>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_sparse_rows(rows: &[SparseVec<F>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_sparse_cols(cols: &[SparseVec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec<F>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn sparse_cols(&self) -> Vec<SparseVec<F>> {
        sparse::transpose(&self.sparse_rows(), self.cols)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        *v == F::one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = out.entries[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Kronecker product; row index is `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let inv = sparse::inverse(&self.sparse_rows())?;
        Some(Self::from_sparse_rows(&inv, self.cols))
    }

    pub fn rank(&self) -> usize {
        sparse::rank(&self.sparse_rows(), self.cols)
    }

    /// Columns form the reduced-echelon kernel basis.
    pub fn kernel(&self) -> Self {
        let k = sparse::kernel(&self.sparse_rows(), self.cols);
        Self::from_sparse_cols(&k, self.cols)
    }
}

impl CycMatrix {
    /// Least conductor containing every entry.
    pub fn conductor(&self) -> u32 {
        self.entries.iter().fold(1u32, |acc, x| acc.lcm(&x.conductor()))
    }
}

pub fn mat_rank(m: &CycMatrix) -> usize {
    m.rank()
}

pub fn mat_kernel(m: &CycMatrix) -> CycMatrix {
    m.kernel()
}

impl<F: Field + fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat_rank(&CycMatrix::identity(3)), 3);
        let m = CycMatrix::from_rows(vec![vec![CycNum::from_int(1), z(3, 1)], vec![z(3, 1), z(3, 2)]]);
        assert_eq!(mat_rank(&m), 1);
        assert_eq!(mat_rank(&CycMatrix::zeros(2, 2)), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = mat_kernel(&CycMatrix::zeros(2, 2));
        assert!(k.is_identity());
        let k = mat_kernel(&CycMatrix::identity(4));
        assert_eq!(k.cols(), 0);
        let ones = CycMatrix::from_rows(vec![vec![CycNum::from_int(1); 3]]);
        let k = mat_kernel(&ones);
        assert_eq!(k.cols(), 2);
        assert!(ones.matmul(&k).is_zero());
    }

    #[test]
    fn inverse_over_cyclotomics() {
        let m = CycMatrix::from_rows(vec![
            vec![z(3, 1), CycNum::from_int(1)],
            vec![CycNum::from_int(0), z(4, 1)],
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
        assert_eq!(m.conductor(), 12);
    }
}
