//! Left modules over structure-constant algebras.

mod induce;

use std::sync::Arc;

pub use induce::{hom_a_h_module, induce, theta_maps, HomModule, Induced, ThetaMaps};

use crate::comod::ComoduleAlgebraData;
use crate::error::{Error, Result};
use crate::hopf::{AlgebraData, HopfAlgebraData, SubHopfEmbedding};
use crate::linalg::{common_kernel, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::Cyclo;

/// `action[i]` is ρ(e_i); columns are images of basis vectors.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: Arc<AlgebraData>,
    dim: usize,
    action: Vec<Matrix>,
}

fn same_algebra(a: &Arc<AlgebraData>, b: &Arc<AlgebraData>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ModuleRep {
    pub fn new(algebra: Arc<AlgebraData>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::Structural(format!(
                "module action given for {} of {} basis elements",
                action.len(),
                algebra.dim()
            )));
        }
        if action
            .iter()
            .any(|m| m.rows() != dim || m.cols() != dim || m.order() != algebra.order())
        {
            return Err(Error::Structural(
                "module action matrix has the wrong shape".into(),
            ));
        }
        Ok(ModuleRep {
            algebra,
            dim,
            action,
        })
    }

    /// Action of the unit through the counit: ρ(e_i) = ε(e_i).
    pub fn trivial(h: &HopfAlgebraData) -> Self {
        let action = h.counit().iter().map(|c| Matrix::scalar(1, c)).collect();
        Self::new(h.alg().clone(), 1, action).expect("counit has one entry per basis element")
    }

    /// One-dimensional module with ρ(e_i) = values[i].
    pub fn one_dimensional(algebra: Arc<AlgebraData>, values: &[Cyclo]) -> Result<Self> {
        let action = values.iter().map(|c| Matrix::scalar(1, c)).collect();
        Self::new(algebra, 1, action)
    }

    pub fn regular(algebra: Arc<AlgebraData>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_mult_matrix(&algebra.basis_vec(i)))
            .collect();
        let d = algebra.dim();
        Self::new(algebra, d, action).expect("left multiplication has the right shape")
    }

    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.algebra.order()
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// ρ(a) for an algebra element given by coordinates.
    pub fn act(&self, a: &[Cyclo]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim, self.order());
        for (c, rho) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                m.add_scaled(c, rho);
            }
        }
        m
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let a = &*self.algebra;
        let mut mult = 0;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(&a.product(&a.basis_vec(i), &a.basis_vec(j)));
                mult += lhs.sub(&rhs).nonzero_count();
            }
        }
        r.residual("module: ρ(a)ρ(b) = ρ(ab)", mult);
        let unit = self
            .act(a.unit())
            .sub(&Matrix::identity(self.dim, self.order()))
            .nonzero_count();
        r.residual("module: ρ(1) = id", unit);
        r
    }

    /// X ⊗ V with k·(x⊗v) = k₋₁·x ⊗ k₀·v.
    pub fn tensor_action(
        k: &ComoduleAlgebraData,
        x: &ModuleRep,
        v: &ModuleRep,
    ) -> Result<ModuleRep> {
        if !same_algebra(&x.algebra, k.over().alg()) {
            return Err(Error::Structural(
                "left factor is not a module over the coacting Hopf algebra".into(),
            ));
        }
        if !same_algebra(&v.algebra, k.alg()) {
            return Err(Error::Structural(
                "right factor is not a module over the comodule algebra".into(),
            ));
        }
        let dim = x.dim * v.dim;
        let action = (0..k.dim())
            .map(|i| {
                let mut m = Matrix::zeros(dim, dim, k.order());
                for (h, kk, c) in k.coaction_of(i) {
                    m.add_scaled(c, &x.action[*h].kron(&v.action[*kk]));
                }
                m
            })
            .collect();
        ModuleRep::new(k.alg().clone(), dim, action)
    }

    /// X ⊗ Y over a Hopf algebra via Δ.
    pub fn tensor(h: &Arc<HopfAlgebraData>, x: &ModuleRep, y: &ModuleRep) -> Result<ModuleRep> {
        Self::tensor_action(&ComoduleAlgebraData::regular(h.clone()), x, y)
    }

    /// Left dual: (h·f)(v) = f(S(h)·v), i.e. ρ*(h) = ρ(S(h))ᵀ.
    pub fn dual_module(h: &HopfAlgebraData, v: &ModuleRep) -> Result<ModuleRep> {
        if !same_algebra(&v.algebra, h.alg()) {
            return Err(Error::Structural(
                "module is over a different algebra".into(),
            ));
        }
        let s = h.antipode();
        let action = (0..h.dim())
            .map(|i| v.act(&s.column(i)).transpose())
            .collect();
        ModuleRep::new(h.alg().clone(), v.dim, action)
    }

    /// Restriction along a Hopf subalgebra embedding.
    pub fn restrict(emb: &SubHopfEmbedding, x: &ModuleRep) -> Result<ModuleRep> {
        if !same_algebra(&x.algebra, emb.big().alg()) {
            return Err(Error::Structural(
                "module is not over the ambient Hopf algebra".into(),
            ));
        }
        let e = emb.embed_matrix();
        let action = (0..e.cols()).map(|a| x.act(&e.column(a))).collect();
        ModuleRep::new(emb.small().alg().clone(), x.dim, action)
    }

    /// Same vector space with action conjugated by an invertible P: ρ'(a) = Pρ(a)P⁻¹.
    pub fn transport(&self, p: &Matrix) -> Result<ModuleRep> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Validation("transport matrix is singular".into()))?;
        let action = self.action.iter().map(|m| p.mul(m).mul(&pinv)).collect();
        ModuleRep::new(self.algebra.clone(), self.dim, action)
    }
}

/// Intertwiners V → W, stored as row-major vectorizations of dim W × dim V matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source_dim: usize,
    target_dim: usize,
    space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> Vec<Matrix> {
        let o = self.space.order();
        self.space
            .vectors()
            .into_iter()
            .map(|v| Matrix::from_vec(self.target_dim, self.source_dim, o, v))
            .collect()
    }

    pub fn coordinates(&self, t: &Matrix) -> Option<Vec<Cyclo>> {
        self.space.coordinates(t.entries())
    }

    pub fn contains(&self, t: &Matrix) -> bool {
        self.coordinates(t).is_some()
    }

    /// Linear combination of the basis.
    pub fn element(&self, coords: &[Cyclo]) -> Matrix {
        let v = self.space.basis().mul_vec(coords);
        Matrix::from_vec(self.target_dim, self.source_dim, self.space.order(), v)
    }
}

/// Constraint block for T·ρ_V(a) = ρ_W(a)·T on vec(T).
fn intertwiner_block(rv: &Matrix, rw: &Matrix) -> Matrix {
    let o = rv.order();
    Matrix::identity(rw.rows(), o)
        .kron(&rv.transpose())
        .sub(&rw.kron(&Matrix::identity(rv.rows(), o)))
}

pub fn hom_space(v: &ModuleRep, w: &ModuleRep) -> Result<HomSpace> {
    if !same_algebra(&v.algebra, &w.algebra) {
        return Err(Error::Structural(
            "Hom between modules over different algebras".into(),
        ));
    }
    let n = v.dim * w.dim;
    let blocks = v
        .action
        .iter()
        .zip(&w.action)
        .map(|(a, b)| intertwiner_block(a, b));
    Ok(HomSpace {
        source_dim: v.dim,
        target_dim: w.dim,
        space: common_kernel(n, v.order(), blocks),
    })
}

/// Exact count of nonzero entries in Tρ_V(e_i) − ρ_W(e_i)T over all i.
pub fn intertwiner_residual(t: &Matrix, v: &ModuleRep, w: &ModuleRep) -> usize {
    v.action
        .iter()
        .zip(&w.action)
        .map(|(a, b)| t.mul(a).sub(&b.mul(t)).nonzero_count())
        .sum()
}
