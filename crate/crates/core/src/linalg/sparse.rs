use std::collections::BTreeMap;

use super::Matrix;
use crate::scalar::Cyclo;

/// Column-compressed matrix; each column is sorted by row with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<Vec<(usize, Cyclo)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        SparseMatrix {
            rows,
            cols,
            order,
            data: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let data = (0..n).map(|i| vec![(i, Cyclo::one(order))]).collect();
        SparseMatrix {
            rows: n,
            cols: n,
            order,
            data,
        }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let data = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            order: m.order(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, self.order);
        for (j1, c1) in self.data.iter().enumerate() {
            for (j2, c2) in other.data.iter().enumerate() {
                let col = &mut out.data[j1 * other.cols + j2];
                for (i1, a) in c1 {
                    for (i2, b) in c2 {
                        col.push((i1 * other.rows + i2, a * b));
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Cyclo, other: &Self) {
        for (mine, theirs) in self.data.iter_mut().zip(&other.data) {
            if theirs.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, Cyclo> = mine.drain(..).collect();
            for (i, x) in theirs {
                let e = acc.entry(*i).or_insert_with(|| Cyclo::zero(self.order));
                *e = &*e + &(c * x);
            }
            *mine = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows, other.cols, self.order);
        for (j, col) in other.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Cyclo> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.data[*k] {
                    let e = acc.entry(*i).or_insert_with(|| Cyclo::zero(self.order));
                    *e = &*e + &(a * b);
                }
            }
            out.data[j] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        out
    }

    /// Number of positions where the two matrices differ.
    pub fn diff_count(&self, other: &Self) -> usize {
        let mut d = self.clone();
        d.add_scaled(&Cyclo::from_int(self.order, -1), other);
        d.nnz()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_dense() {
        let a = Matrix::from_ints(2, &[&[1, 0, 2], &[0, -1, 0]]);
        let b = Matrix::from_ints(2, &[&[0, 1], &[3, 0], &[1, 1]]);
        let (sa, sb) = (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&b));
        assert_eq!(sa.mul(&sb), SparseMatrix::from_dense(&a.mul(&b)));
        assert_eq!(sa.kron(&sb), SparseMatrix::from_dense(&a.kron(&b)));
        assert_eq!(sa.diff_count(&sa), 0);
        assert_eq!(SparseMatrix::identity(2, 2).mul(&sa), sa);
    }
}
