//! Sparse exact Gaussian elimination.
//!
//! Rows are inserted one at a time into an echelon basis. A row's pivot is
//! its first nonzero column after reduction, so the pivot set is the
//! lexicographically first independent column set, whatever the insertion
//! order happens to touch.

use std::collections::{BTreeMap, HashMap};

use super::Field;

/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Drop zero entries and merge duplicates.
pub fn normalize<F: Field>(entries: impl IntoIterator<Item = (usize, F)>) -> SparseVec<F> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (c, v) in entries {
        add_into(&mut acc, c, &v);
    }
    acc.into_iter().collect()
}

pub(crate) fn add_into<F: Field>(acc: &mut BTreeMap<usize, F>, c: usize, v: &F) {
    if v.is_zero() {
        return;
    }
    match acc.get_mut(&c) {
        Some(x) => {
            let s = x.add(v);
            if s.is_zero() {
                acc.remove(&c);
            } else {
                *x = s;
            }
        }
        None => {
            acc.insert(c, v.clone());
        }
    }
}

#[derive(Debug, Clone)]
pub struct Echelon<F> {
    ncols: usize,
    pivot_row: HashMap<usize, usize>,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivot_row: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_map(&self, v: &[(usize, F)]) -> BTreeMap<usize, F> {
        let mut acc: BTreeMap<usize, F> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        let mut cursor = 0usize;
        while let Some((&c, _)) = acc.range(cursor..).next() {
            if let Some(&r) = self.pivot_row.get(&c) {
                let f = acc.remove(&c).unwrap();
                for (cc, val) in &self.rows[r][1..] {
                    add_into(&mut acc, *cc, &f.mul(val).neg());
                }
            }
            cursor = c + 1;
        }
        acc
    }

    /// The remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        self.reduce_map(v).into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce_map(v).is_empty()
    }

    /// Add `v` to the basis; returns whether it was independent.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let rem = self.reduce_map(v);
        let Some((&p, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = lead.inv();
        let row: SparseVec<F> = rem.iter().map(|(c, x)| (*c, x.mul(&inv))).collect();
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Fully reduced row echelon form.
    pub fn into_rref(self) -> Rref<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].first().map(|(c, _)| *c).unwrap());
        let mut rows: Vec<SparseVec<F>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let pivot_idx: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        for i in (0..rows.len()).rev() {
            let needs: Vec<(usize, F)> = rows[i][1..]
                .iter()
                .filter(|(c, _)| pivot_idx.contains_key(c))
                .cloned()
                .collect();
            if needs.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, F> = rows[i].iter().cloned().collect();
            for (c, f) in needs {
                let j = pivot_idx[&c];
                for (cc, val) in &rows[j] {
                    add_into(&mut acc, *cc, &f.mul(val).neg());
                }
            }
            rows[i] = acc.into_iter().collect();
        }
        Rref {
            ncols: self.ncols,
            pivots,
            rows,
        }
    }
}

/// Reduced row echelon form: `rows[i]` has leading one at `pivots[i]` and
/// zeros in every other pivot column.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec<F>>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One kernel vector per free column, in ascending free-column order:
    /// `e_f - Σ_i rows[i][f] e_{pivots[i]}`.
    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        let mut by_free: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in &row[1..] {
                by_free.entry(*c).or_default().push((self.pivots[i], v.neg()));
            }
        }
        let is_pivot: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ncols)
            .filter(|c| !is_pivot.contains(c))
            .map(|f| {
                let mut v = by_free.remove(&f).unwrap_or_default();
                v.push((f, F::one()));
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }
}

pub fn rank<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn rref<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> Rref<F> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.into_rref()
}

/// Kernel of the matrix whose rows are given, as column vectors.
pub fn kernel<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> Vec<SparseVec<F>> {
    rref(rows, ncols).kernel_basis()
}

/// Indices of the greedily chosen independent rows (first-come basis).
pub fn independent_rows<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> Vec<usize> {
    let mut e = Echelon::new(ncols);
    rows.iter()
        .enumerate()
        .filter_map(|(i, r)| e.insert(r).then_some(i))
        .collect()
}

/// Transpose of a row-sparse `nrows × ncols` matrix.
pub fn transpose<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> Vec<SparseVec<F>> {
    let mut out: Vec<SparseVec<F>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            out[*c].push((r, v.clone()));
        }
    }
    out
}

/// Inverse of a square matrix given by rows, or `None` if singular.
pub fn inverse<F: Field>(rows: &[SparseVec<F>]) -> Option<Vec<SparseVec<F>>> {
    let n = rows.len();
    let aug: Vec<SparseVec<F>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.push((n + i, F::one()));
            v
        })
        .collect();
    let rr = rref(&aug, 2 * n);
    if rr.rank() < n || rr.pivots[n - 1] >= n {
        return None;
    }
    Some(
        rr.rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .filter(|(c, _)| *c >= n)
                    .map(|(c, v)| (c - n, v))
                    .collect()
            })
            .collect(),
    )
}

/// `y = M x` for row-sparse `M` and sparse `x`.
pub fn mat_vec<F: Field>(rows: &[SparseVec<F>], x: &[(usize, F)]) -> SparseVec<F> {
    let xm: HashMap<usize, &F> = x.iter().map(|(c, v)| (*c, v)).collect();
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut acc = F::zero();
        for (c, v) in row {
            if let Some(xv) = xm.get(c) {
                acc = acc.add(&v.mul(xv));
            }
        }
        if !acc.is_zero() {
            out.push((r, acc));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Rational;

    fn r(p: i64) -> Rational {
        Rational::from_integer(p.into())
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let rows = vec![vec![(0, r(1)), (1, r(1)), (2, r(1))]];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![(0, r(-1)), (1, r(1))]);
        assert_eq!(k[1], vec![(0, r(-1)), (2, r(1))]);
    }

    #[test]
    fn rref_is_reduced_regardless_of_insertion_order() {
        // second row gets pivot 2 while the first row already has an entry there
        let rows = vec![
            vec![(1, r(1)), (2, r(1)), (3, r(1))],
            vec![(1, r(1)), (2, r(2))],
            vec![(0, r(1)), (3, r(5))],
        ];
        let rr = rref(&rows, 4);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
        for (i, row) in rr.rows.iter().enumerate() {
            for (j, p) in rr.pivots.iter().enumerate() {
                let v = row.iter().find(|(c, _)| c == p).map(|(_, v)| v.clone());
                if i == j {
                    assert_eq!(v, Some(r(1)));
                } else {
                    assert_eq!(v, None);
                }
            }
        }
        let k = rr.kernel_basis();
        assert_eq!(k.len(), 1);
        for row in &rows {
            assert!(mat_vec(std::slice::from_ref(row), &k[0]).is_empty());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![(0, r(2)), (1, r(1))], vec![(0, r(1)), (1, r(1))]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0], vec![(0, r(1)), (1, r(-1))]);
        assert_eq!(inv[1], vec![(0, r(-1)), (1, r(2))]);
        let singular = vec![vec![(0, r(1)), (1, r(1))], vec![(0, r(2)), (1, r(2))]];
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn independent_rows_first_come() {
        let rows = vec![
            vec![(0, r(1))],
            vec![(0, r(3))],
            vec![(1, r(1))],
            vec![(0, r(1)), (1, r(1))],
        ];
        assert_eq!(independent_rows(&rows, 2), vec![0, 2]);
    }
}
