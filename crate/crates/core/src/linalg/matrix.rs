use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Cyclo;

/// Dense row-major matrix over ℚ(ζ_N).
///
/// A matrix of a linear map has column j equal to the image of basis vector j.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<Cyclo>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        Matrix {
            rows,
            cols,
            order,
            data: vec![Cyclo::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m[(i, i)] = Cyclo::one(order);
        }
        m
    }

    pub fn scalar(n: usize, c: &Cyclo) -> Self {
        let mut m = Self::zeros(n, n, c.order());
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        order: u32,
        mut f: impl FnMut(usize, usize) -> Cyclo,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            order,
            data,
        }
    }

    pub fn from_ints(order: u32, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, order, |i, j| Cyclo::from_int(order, rows[i][j]))
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, order: u32, columns: &[Vec<Cyclo>]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), order);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Cyclo], order: u32) -> Self {
        Self::from_columns(v.len(), order, &[v.to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> &[Cyclo] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Cyclo> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Cyclo>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Cyclo] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclo::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Structural(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// self += c · other
    pub fn add_scaled(&mut self, c: &Cyclo, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Product skipping zero entries of the left factor.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = &*o + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclo::zero(self.order);
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.order, |i, j| {
            self[(j, i)].clone()
        })
    }

    /// Kronecker product; row (i,k) ↦ i·B.rows + k, column (j,l) ↦ j·B.cols + l.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, self.order, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            order: self.order,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), self.order, |i, j| {
            self[(i, cols[j])].clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, self.order, |i, j| {
            self[(rows[i], j)].clone()
        })
    }

    /// Reduced row echelon form and pivot columns. Pivot = first nonzero entry.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Cyclo>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let data = rows.into_iter().flatten().collect();
        (
            Matrix {
                rows: self.rows,
                cols: self.cols,
                order: self.order,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves self·X = B; returns the solution with free variables set to zero.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "right-hand side row mismatch");
        let n = self.cols;
        let mut rows: Vec<Vec<Cyclo>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(b.row(i));
                r
            })
            .collect();
        let pivots = rref_rows(&mut rows, n);
        // inconsistent iff a zero row of the coefficient block has nonzero rhs
        for r in rows.iter().skip(pivots.len()) {
            if r[n..].iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        let mut x = Matrix::zeros(n, b.cols, self.order);
        for (ri, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = rows[ri][n + j].clone();
            }
        }
        Some(x)
    }

    pub fn solve(&self, b: &[Cyclo]) -> Option<Vec<Cyclo>> {
        self.solve_matrix(&Matrix::column_vector(b, self.order))
            .map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.rows, self.order))
    }

    pub fn kernel(&self) -> super::Subspace {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vecs = Vec::new();
        for f in (0..n).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Cyclo::zero(self.order); n];
            v[f] = Cyclo::one(self.order);
            for (ri, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(ri, f)];
            }
            vecs.push(v);
        }
        super::Subspace::span(n, self.order, &vecs)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Cyclo {
        let mut acc = Cyclo::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + &self[(i, i)];
        }
        acc
    }

    /// Entries flattened row-major into one vector.
    pub fn to_vec(&self) -> Vec<Cyclo> {
        self.data.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, order: u32, data: Vec<Cyclo>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        Matrix {
            rows,
            cols,
            order,
            data,
        }
    }
}

/// In-place RREF on the first `ncols` columns of `rows`; returns pivot columns.
pub(crate) fn rref_rows(rows: &mut [Vec<Cyclo>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let nz: Vec<usize> = (c..rows[r].len())
            .filter(|&j| !rows[r][j].is_zero())
            .collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Index<(usize, usize)> for Matrix {
    type Output = Cyclo;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclo {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclo {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} @{}", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
