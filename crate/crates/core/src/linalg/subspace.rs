use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Cyclo;

/// Subspace of an ambient coordinate space, held in canonical form:
/// the basis columns are the nonzero rows of the RREF of any spanning set.
/// Equal subspaces therefore have equal `basis` matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn span(ambient: usize, order: u32, vectors: &[Vec<Cyclo>]) -> Self {
        let mut rows: Vec<Vec<Cyclo>> = vectors.to_vec();
        for r in &rows {
            assert_eq!(r.len(), ambient, "vector length mismatch");
        }
        let pivots = super::matrix::rref_rows(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            ambient,
            basis: Matrix::from_columns(ambient, order, &rows),
        }
    }

    pub fn column_span(m: &Matrix) -> Self {
        Self::span(m.rows(), m.order(), &m.columns())
    }

    pub fn zero(ambient: usize, order: u32) -> Self {
        Self::span(ambient, order, &[])
    }

    pub fn full(ambient: usize, order: u32) -> Self {
        Self::column_span(&Matrix::identity(ambient, order))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn order(&self) -> u32 {
        self.basis.order()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Cyclo>> {
        self.basis.columns()
    }

    /// Pivot coordinate of each basis vector (its leading 1).
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|j| {
                (0..self.ambient)
                    .find(|&i| !self.basis[(i, j)].is_zero())
                    .expect("basis vectors are nonzero")
            })
            .collect()
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Cyclo]) -> Option<Vec<Cyclo>> {
        // Leading 1s of distinct basis vectors sit at distinct pivots with zeros
        // elsewhere, so the pivot entries of v are the coordinates.
        let coords: Vec<Cyclo> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.mul_vec(&coords);
        if recon.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Cyclo]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vecs = self.vectors();
        vecs.extend(other.vectors());
        Ok(Self::span(self.ambient, self.order(), &vecs))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Structural(format!(
                "ambient dimension mismatch: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// U ∩ V from the kernel of [U | −V].
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let order = self.order();
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.ambient, order));
        }
        let stacked = self
            .basis
            .hstack(&other.basis.scale(&Cyclo::from_int(order, -1)));
        let k = stacked.kernel();
        let top: Vec<usize> = (0..self.dim()).collect();
        let coeffs = k.basis().select_rows(&top);
        Ok(Self::column_span(&self.basis.mul(&coeffs)))
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &Matrix) -> Subspace {
        Self::column_span(&map.mul(&self.basis))
    }
}

/// Echelon basis grown one vector at a time. Each stored row has a leading 1
/// at its pivot and zeros at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    order: u32,
    rows: Vec<Vec<Cyclo>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ambient: usize, order: u32) -> Self {
        Echelon {
            ambient,
            order,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Cyclo]) -> bool {
        self.reduce(v).iter().all(Cyclo::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Cyclo]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("pivot is nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::span(self.ambient, self.order, &self.rows)
    }
}

/// Common kernel of several constraint blocks, each with `n` columns,
/// restricting the running solution space one block at a time.
pub fn common_kernel(n: usize, order: u32, blocks: impl IntoIterator<Item = Matrix>) -> Subspace {
    let mut basis = Matrix::identity(n, order);
    for b in blocks {
        if basis.cols() == 0 {
            break;
        }
        let restricted = b.mul(&basis);
        if restricted.is_zero() {
            continue;
        }
        let k = restricted.kernel();
        basis = basis.mul(k.basis());
    }
    Subspace::column_span(&basis)
}

/// Projection onto ambient/W and a right-inverse section.
///
/// The complement is spanned by the standard vectors at non-pivot
/// coordinates of W's canonical basis; projection·section = I and
/// projection·w = 0 for w ∈ W.
pub fn quotient(ambient_dim: usize, w: &Subspace) -> Result<(Matrix, Matrix)> {
    if w.ambient_dim() != ambient_dim {
        return Err(Error::Structural(format!(
            "quotient of {ambient_dim}-space by a subspace of a {}-space",
            w.ambient_dim()
        )));
    }
    let order = w.order();
    let pivots = w.pivots();
    let mut is_pivot = vec![false; ambient_dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|&i| !is_pivot[i]).collect();
    let q = free.len();
    let mut proj = Matrix::zeros(q, ambient_dim, order);
    let mut sect = Matrix::zeros(ambient_dim, q, order);
    for (r, &j) in free.iter().enumerate() {
        proj[(r, j)] = Cyclo::one(order);
        sect[(j, r)] = Cyclo::one(order);
        // v ↦ v − Σ_p v_p w_p, read at coordinate j
        for (b, &p) in pivots.iter().enumerate() {
            let wj = &w.basis()[(j, b)];
            if !wj.is_zero() {
                proj[(r, p)] = -wj;
            }
        }
    }
    Ok((proj, sect))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Cyclo> {
        x.iter().map(|&a| Cyclo::from_int(2, a)).collect()
    }

    #[test]
    fn intersect_examples() {
        let u = Subspace::span(3, 2, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span(3, 2, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(
            u.intersect(&w).unwrap(),
            Subspace::span(3, 2, &[v(&[0, 1, 0])])
        );
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.intersect(&Subspace::zero(3, 2)).unwrap().dim(), 0);
        assert!(u.intersect(&Subspace::zero(2, 2)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let (p, s) = quotient(2, &Subspace::zero(2, 2)).unwrap();
        assert!(p.is_identity() && s.is_identity());
        let (p, _) = quotient(2, &Subspace::full(2, 2)).unwrap();
        assert_eq!(p.rows(), 0);
        let w = Subspace::span(2, 2, &[v(&[1, 1])]);
        let (p, s) = quotient(2, &w).unwrap();
        assert_eq!(p.rows(), 1);
        assert!(p.mul_vec(&v(&[1, 1]))[0].is_zero());
        assert!(p.mul(&s).is_identity());
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(2, 2, &[v(&[1, 1]), v(&[2, 2])]);
        let b = Subspace::span(2, 2, &[v(&[-3, -3])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[5, 5])));
        assert!(!a.contains(&v(&[1, 0])));
    }
}
