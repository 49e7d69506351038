//! Stabilizers St_K(V,W) in two independent realizations.
//!
//! The Hom-realized form Hom_K(H⊗V, W) carries the H-action
//! (h·f)(t⊗v) = f(th⊗v); the Yan–Zhu form is the subspace of H*⊗Hom(V,W)
//! whose left-multiplication operators are K-linear and serves as a
//! dimension oracle.

use std::sync::Arc;

use crate::comod::{CanonicalMap, ComoduleAlgebraData};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebraData, SubHopfEmbedding};
use crate::linalg::{common_kernel, Matrix, Subspace};
use crate::rep::{hom_a_h_module, hom_space, HomModule, HomSpace, ModuleRep};
use crate::report::Report;
use crate::scalar::Cyclo;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Realization {
    YanZhu,
    HomRealized,
}

#[derive(Clone, Debug)]
pub struct StabilizerSpace {
    pub realization: Realization,
    /// YanZhu: vectors in H*⊗Hom(V,W), index a·(dim W·dim V) + w·dim V + v.
    /// HomRealized: row-major dim W × (dim H·dim V) matrices.
    pub space: Subspace,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Present for the Hom-realized form only.
    pub h_action: Option<ModuleRep>,
}

impl StabilizerSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Matrix> {
        let o = self.space.order();
        let (rows, cols) = match self.realization {
            Realization::HomRealized => (
                self.target_dim,
                self.space.ambient_dim() / self.target_dim.max(1),
            ),
            Realization::YanZhu => (self.space.ambient_dim(), 1),
        };
        self.space
            .vectors()
            .into_iter()
            .map(|v| Matrix::from_vec(rows, cols, o, v))
            .collect()
    }

    pub fn coordinates(&self, f: &Matrix) -> Option<Vec<Cyclo>> {
        self.space.coordinates(f.entries())
    }
}

/// H* as an H-module under h⇁γ.
pub fn harpoon_module(h: &HopfAlgebraData) -> ModuleRep {
    let action = (0..h.dim())
        .map(|t| h.harpoon_matrix(&h.alg().basis_vec(t)))
        .collect();
    ModuleRep::new(h.alg().clone(), h.dim(), action).expect("harpoon matrices are square")
}

pub fn yan_zhu_stab(
    k: &ComoduleAlgebraData,
    v: &ModuleRep,
    w: &ModuleRep,
) -> Result<(StabilizerSpace, Report)> {
    let h = k.over();
    let dual = h.dual(false)?;
    let hv = ModuleRep::tensor_action(k, &harpoon_module(h), v)?;
    let hw = ModuleRep::tensor_action(k, &harpoon_module(h), w)?;
    let intertwiners = hom_space(&hv, &hw)?;
    let (dh, dv, dw, o) = (h.dim(), v.dim(), w.dim(), k.order());
    // ℒ(γ⊗T) = L_γ ⊗ T as a map H*⊗V → H*⊗W
    let mut cols = Vec::with_capacity(dh * dw * dv);
    for a in 0..dh {
        let la = dual.alg().left_mult_matrix(&dual.alg().basis_vec(a));
        for wi in 0..dw {
            for vi in 0..dv {
                let mut e = Matrix::zeros(dw, dv, o);
                e[(wi, vi)] = Cyclo::one(o);
                cols.push(la.kron(&e).to_vec());
            }
        }
    }
    let lmat = Matrix::from_columns(dh * dw * dh * dv, o, &cols);
    let mut report = Report::new();
    report.flag("yan-zhu: ℒ is injective", lmat.rank() == lmat.cols());
    let image = Subspace::column_span(&lmat);
    let meet = intertwiners.subspace().intersect(&image)?;
    let pre: Vec<Vec<Cyclo>> = meet
        .vectors()
        .iter()
        .map(|y| lmat.solve(y).expect("vector lies in the image"))
        .collect();
    let space = Subspace::span(dh * dw * dv, o, &pre);
    Ok((
        StabilizerSpace {
            realization: Realization::YanZhu,
            space,
            source_dim: dv,
            target_dim: dw,
            h_action: None,
        },
        report,
    ))
}

/// Hom_K(H⊗V, W) with its right-translation H-action.
pub fn stab_hom_realized(
    k: &ComoduleAlgebraData,
    v: &ModuleRep,
    w: &ModuleRep,
) -> Result<StabilizerSpace> {
    let h = k.over();
    let hv = ModuleRep::tensor_action(k, &ModuleRep::regular(h.alg().clone()), v)?;
    let hom = hom_space(&hv, w)?;
    let id_v = Matrix::identity(v.dim(), k.order());
    let basis = hom.basis();
    let action = (0..h.dim())
        .map(|t| {
            let r = h.alg().right_mult_matrix(&h.alg().basis_vec(t)).kron(&id_v);
            let cols: Vec<Vec<Cyclo>> = basis
                .iter()
                .map(|f| {
                    hom.coordinates(&f.mul(&r))
                        .expect("right translation commutes with the K-action")
                })
                .collect();
            Matrix::from_columns(hom.dim(), k.order(), &cols)
        })
        .collect();
    let module = ModuleRep::new(h.alg().clone(), hom.dim(), action)?;
    Ok(StabilizerSpace {
        realization: Realization::HomRealized,
        space: hom.subspace().clone(),
        source_dim: v.dim(),
        target_dim: w.dim(),
        h_action: Some(module),
    })
}

/// curry(f)(x)(h⊗v) = f(h·x⊗v), one dim W × (dim H·dim V) matrix per basis vector of X.
pub fn curry(h: &HopfAlgebraData, x: &ModuleRep, dv: usize, f: &Matrix) -> Vec<Matrix> {
    let (dh, dx, o) = (h.dim(), x.dim(), h.order());
    let id_v = Matrix::identity(dv, o);
    (0..dx)
        .map(|j| {
            let mut m = Matrix::zeros(f.rows(), dh * dv, o);
            for t in 0..dh {
                let hx = x.action(t).select_columns(&[j]);
                let block = f.mul(&hx.kron(&id_v));
                for r in 0..f.rows() {
                    for c in 0..dv {
                        m[(r, t * dv + c)] = block[(r, c)].clone();
                    }
                }
            }
            m
        })
        .collect()
}

/// uncurry(F)(x⊗v) = F(x)(1⊗v).
pub fn uncurry(h: &HopfAlgebraData, parts: &[Matrix], dv: usize) -> Matrix {
    let o = h.order();
    let one = Matrix::column_vector(h.unit(), o).kron(&Matrix::identity(dv, o));
    let rows = parts.first().map_or(0, Matrix::rows);
    let mut out = Matrix::zeros(rows, parts.len() * dv, o);
    for (j, p) in parts.iter().enumerate() {
        let b = p.mul(&one);
        for r in 0..rows {
            for c in 0..dv {
                out[(r, j * dv + c)] = b[(r, c)].clone();
            }
        }
    }
    out
}

/// (f∘g)(h⊗u) = f(h₁⊗g(h₂⊗u)) for f ∈ St(V,W), g ∈ St(U,V).
pub fn stab_compose(h: &HopfAlgebraData, f: &Matrix, g: &Matrix, dv: usize, du: usize) -> Matrix {
    let dh = h.dim();
    let o = h.order();
    let mut out = Matrix::zeros(f.rows(), dh * du, o);
    let fblocks: Vec<Matrix> = (0..dh)
        .map(|i| f.select_columns(&(i * dv..(i + 1) * dv).collect::<Vec<_>>()))
        .collect();
    let gblocks: Vec<Matrix> = (0..dh)
        .map(|j| g.select_columns(&(j * du..(j + 1) * du).collect::<Vec<_>>()))
        .collect();
    for t in 0..dh {
        let mut block = Matrix::zeros(f.rows(), du, o);
        for (i, j, c) in h.comult_of(t) {
            block.add_scaled(c, &fblocks[*i].mul(&gblocks[*j]));
        }
        for r in 0..f.rows() {
            for u in 0..du {
                out[(r, t * du + u)] = block[(r, u)].clone();
            }
        }
    }
    out
}

/// The unit e(h⊗v) = ε(h)v of St(V,V).
pub fn stab_unit(h: &HopfAlgebraData, dv: usize) -> Matrix {
    let o = h.order();
    Matrix::from_fn(1, h.dim(), o, |_, t| h.counit()[t].clone()).kron(&Matrix::identity(dv, o))
}

/// u ↦ ū with ū(h)(v) = u(h⊗v), from Hom_K(H⊗V,W) into Hom_A(H, Hom_R(V,W)).
#[derive(Clone, Debug)]
pub struct GaloisTransport {
    pub matrix: Matrix,
    pub hom_r: Subspace,
    pub target: HomModule,
    pub report: Report,
}

pub fn stab_galois_transport(
    k: &ComoduleAlgebraData,
    emb: &SubHopfEmbedding,
    can: &CanonicalMap,
    r: &Subspace,
    v: &ModuleRep,
    w: &ModuleRep,
) -> Result<GaloisTransport> {
    if !can.is_bijective() {
        return Err(Error::Precondition("extension is not Galois".into()));
    }
    let h: &Arc<HopfAlgebraData> = k.over();
    let a = emb.small();
    let (dh, dv, dw, o) = (h.dim(), v.dim(), w.dim(), k.order());
    let stab = stab_hom_realized(k, v, w)?;

    let blocks = r.vectors().into_iter().map(|rv| {
        let (rvm, rwm) = (v.act(&rv), w.act(&rv));
        Matrix::identity(dw, o)
            .kron(&rvm.transpose())
            .sub(&rwm.kron(&Matrix::identity(dv, o)))
    });
    let hom_r = common_kernel(dw * dv, o, blocks);
    let hom_r_basis: Vec<Matrix> = hom_r
        .vectors()
        .into_iter()
        .map(|x| Matrix::from_vec(dw, dv, o, x))
        .collect();

    // (a·T) = a^[1]·T·a^[2] through γ
    let dk = k.dim();
    let mut action = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let g = can.gamma(&a.alg().basis_vec(i))?;
        let mut cols = Vec::with_capacity(hom_r.dim());
        for t in &hom_r_basis {
            let mut m = Matrix::zeros(dw, dv, o);
            for (p, c) in g.iter().enumerate() {
                if !c.is_zero() {
                    let (k1, k2) = (p / dk, p % dk);
                    m.add_scaled(c, &w.action(k1).mul(t).mul(v.action(k2)));
                }
            }
            let coords = hom_r
                .coordinates(m.entries())
                .ok_or_else(|| Error::Consistency("γ-action leaves Hom_R(V,W)".into()))?;
            cols.push(coords);
        }
        action.push(Matrix::from_columns(hom_r.dim(), o, &cols));
    }
    let hom_r_module = ModuleRep::new(a.alg().clone(), hom_r.dim(), action)?;
    let mut report = Report::new();
    report.merge("hom_R module: ", hom_r_module.verify());
    let target = hom_a_h_module(emb, &hom_r_module)?;

    let mut outside = 0;
    let mut cols = Vec::with_capacity(stab.dim());
    for u in stab.basis() {
        let mut ubar = Matrix::zeros(hom_r.dim(), dh, o);
        for t in 0..dh {
            let block = u.select_columns(&(t * dv..(t + 1) * dv).collect::<Vec<_>>());
            match hom_r.coordinates(block.entries()) {
                Some(c) => {
                    for (row, x) in c.into_iter().enumerate() {
                        ubar[(row, t)] = x;
                    }
                }
                None => outside += 1,
            }
        }
        match target.space.coordinates(&ubar) {
            Some(c) => cols.push(c),
            None => {
                outside += 1;
                cols.push(vec![Cyclo::zero(o); target.space.dim()]);
            }
        }
    }
    report.residual("transport: ū lies in Hom_A(H, Hom_R(V,W))", outside);
    let matrix = Matrix::from_columns(target.space.dim(), o, &cols);
    report.flag(
        "transport: bijective",
        matrix.rows() == matrix.cols() && matrix.rank() == matrix.cols(),
    );
    let sa = stab
        .h_action
        .as_ref()
        .expect("realized form has an H-action");
    let mut hlin = 0;
    for t in 0..dh {
        hlin += matrix
            .mul(sa.action(t))
            .sub(&target.module.action(t).mul(&matrix))
            .nonzero_count();
    }
    report.residual("transport: H-linear", hlin);
    Ok(GaloisTransport {
        matrix,
        hom_r,
        target,
        report,
    })
}

/// Intertwiner space of the Hom-realized stabilizer, for callers that need HomSpace methods.
pub fn realized_hom(k: &ComoduleAlgebraData, v: &ModuleRep, w: &ModuleRep) -> Result<HomSpace> {
    let hv = ModuleRep::tensor_action(k, &ModuleRep::regular(k.over().alg().clone()), v)?;
    hom_space(&hv, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comod::canonical_map;
    use crate::group::FiniteGroup;

    fn z2() -> Arc<HopfAlgebraData> {
        Arc::new(HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap())
    }

    #[test]
    fn ground_comodule_has_full_stabilizer() {
        let h = z2();
        let ground = SubHopfEmbedding::ground(h.clone()).unwrap();
        let k = ComoduleAlgebraData::trivial(ground.small().alg().clone(), h.clone()).unwrap();
        let v = ModuleRep::regular(k.alg().clone());
        let (yz, rep) = yan_zhu_stab(&k, &v, &v).unwrap();
        assert!(rep.all_pass());
        assert_eq!(yz.dim(), 2);
        assert_eq!(stab_hom_realized(&k, &v, &v).unwrap().dim(), 2);
    }

    #[test]
    fn regular_comodule_dimension_formula() {
        let h = z2();
        let k = ComoduleAlgebraData::regular(h.clone());
        let v = ModuleRep::regular(k.alg().clone());
        let (yz, _) = yan_zhu_stab(&k, &v, &v).unwrap();
        let hr = stab_hom_realized(&k, &v, &v).unwrap();
        // dim K · dim St = dim V · dim W · dim H
        assert_eq!(2 * yz.dim(), 2 * 2 * 2);
        assert_eq!(yz.dim(), hr.dim());
        assert!(hr.h_action.as_ref().unwrap().verify().all_pass());
    }

    #[test]
    fn curry_roundtrip_and_composition_laws() {
        let h = z2();
        let k = ComoduleAlgebraData::regular(h.clone());
        let v = ModuleRep::regular(k.alg().clone());
        let x = ModuleRep::regular(h.alg().clone());
        let xv = ModuleRep::tensor_action(&k, &x, &v).unwrap();
        let homs = hom_space(&xv, &v).unwrap();
        let st = stab_hom_realized(&k, &v, &v).unwrap();
        for f in homs.basis() {
            let parts = curry(&h, &x, 2, &f);
            assert!(parts.iter().all(|p| st.coordinates(p).is_some()));
            assert_eq!(uncurry(&h, &parts, 2), f);
        }
        let e = stab_unit(&h, 2);
        assert!(st.coordinates(&e).is_some());
        let b = st.basis();
        for f in &b {
            assert_eq!(&stab_compose(&h, &e, f, 2, 2), f);
            assert_eq!(&stab_compose(&h, f, &e, 2, 2), f);
            for g in &b {
                let fg = stab_compose(&h, f, g, 2, 2);
                assert!(st.coordinates(&fg).is_some());
                for l in &b {
                    assert_eq!(
                        stab_compose(&h, &fg, l, 2, 2),
                        stab_compose(&h, f, &stab_compose(&h, g, l, 2, 2), 2, 2)
                    );
                }
            }
        }
    }

    #[test]
    fn transport_for_hopf_over_itself() {
        let h = z2();
        let k = Arc::new(ComoduleAlgebraData::regular(h.clone()));
        let r = k.coinvariants();
        let can = canonical_map(&k, &r).unwrap();
        let emb = SubHopfEmbedding::identity(h.clone());
        let v = ModuleRep::regular(k.alg().clone());
        let t = stab_galois_transport(&k, &emb, &can, &r, &v, &v).unwrap();
        assert!(t.report.all_pass(), "{}", t.report);
    }
}
