use super::{hom_space, HomSpace, ModuleRep};
use crate::error::{Error, Result};
use crate::hopf::SubHopfEmbedding;
use crate::linalg::{quotient, vec_kron, vec_sub, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::Cyclo;

/// Ind_A^H V = H⊗V / span{h·a⊗v − h⊗a·v}, with cosets represented by `section`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub module: ModuleRep,
    pub projection: Matrix,
    pub section: Matrix,
    pub relations: Subspace,
    /// dim = dim H · dim V / dim A.
    pub free_rank_ok: bool,
}

pub fn induce(emb: &SubHopfEmbedding, v: &ModuleRep) -> Result<Induced> {
    let (a, h) = (emb.small(), emb.big());
    if v.algebra().as_ref() != a.alg().as_ref() {
        return Err(Error::Structural(
            "module is not over the subalgebra".into(),
        ));
    }
    let (dh, dv, o) = (h.dim(), v.dim(), h.order());
    let mut rels = Vec::new();
    for t in 0..dh {
        let et = h.alg().basis_vec(t);
        for i in 0..a.dim() {
            let ha = h.product(&et, &emb.embed(&a.alg().basis_vec(i)));
            let av = v.action(i);
            for j in 0..dv {
                let vj = crate::linalg::unit_vec(dv, j, o);
                rels.push(vec_sub(&vec_kron(&ha, &vj), &vec_kron(&et, &av.column(j))));
            }
        }
    }
    let relations = Subspace::span(dh * dv, o, &rels);
    let (projection, section) = quotient(dh * dv, &relations)?;
    let id_v = Matrix::identity(dv, o);
    let action = (0..dh)
        .map(|t| {
            let l = h.alg().left_mult_matrix(&h.alg().basis_vec(t)).kron(&id_v);
            projection.mul(&l).mul(&section)
        })
        .collect();
    let q = projection.rows();
    let module = ModuleRep::new(h.alg().clone(), q, action)?;
    Ok(Induced {
        module,
        free_rank_ok: q * a.dim() == dh * dv,
        projection,
        section,
        relations,
    })
}

/// Hom_A(H, M) with A acting on H by left multiplication, as an H-module
/// under (h·f)(t) = f(th).
#[derive(Clone, Debug)]
pub struct HomModule {
    pub space: HomSpace,
    pub module: ModuleRep,
}

pub fn hom_a_h_module(emb: &SubHopfEmbedding, m: &ModuleRep) -> Result<HomModule> {
    let h = emb.big();
    let source = ModuleRep::restrict(emb, &ModuleRep::regular(h.alg().clone()))?;
    let space = hom_space(&source, m)?;
    let basis = space.basis();
    let action = (0..h.dim())
        .map(|t| {
            let r = h.alg().right_mult_matrix(&h.alg().basis_vec(t));
            let cols: Vec<Vec<Cyclo>> = basis
                .iter()
                .map(|f| {
                    space
                        .coordinates(&f.mul(&r))
                        .expect("right translation preserves A-linearity")
                })
                .collect();
            Matrix::from_columns(space.dim(), h.order(), &cols)
        })
        .collect();
    let module = ModuleRep::new(h.alg().clone(), space.dim(), action)?;
    Ok(HomModule { space, module })
}

/// θ: (Ind_A^H V)* → Hom_A(H, V*) and θ̃ back, with their exact checks.
#[derive(Clone, Debug)]
pub struct ThetaMaps {
    pub theta: Matrix,
    pub theta_tilde: Matrix,
    pub induced_dual: ModuleRep,
    pub hom: HomModule,
    pub report: Report,
}

pub fn theta_maps(emb: &SubHopfEmbedding, v: &ModuleRep) -> Result<ThetaMaps> {
    let (a, h) = (emb.small(), emb.big());
    let ind = induce(emb, v)?;
    let induced_dual = ModuleRep::dual_module(h, &ind.module)?;
    let v_dual = ModuleRep::dual_module(a, v)?;
    let hom = hom_a_h_module(emb, &v_dual)?;
    let (dh, dv, o) = (h.dim(), v.dim(), h.order());
    let q = ind.module.dim();
    let s = h.antipode();
    let sinv = h.antipode_inverse();
    let mut report = Report::new();

    // θ(e^q)(e_t)_i = ⟨e^q, P(S(e_t)⊗v_i)⟩
    let mut off_space = 0;
    let mut theta_cols = Vec::with_capacity(q);
    for qq in 0..q {
        let f = Matrix::from_fn(dv, dh, o, |i, t| {
            let mut acc = Cyclo::zero(o);
            for aa in 0..dh {
                let sa = &s[(aa, t)];
                if !sa.is_zero() {
                    acc = &acc + &(sa * &ind.projection[(qq, aa * dv + i)]);
                }
            }
            acc
        });
        match hom.space.coordinates(&f) {
            Some(c) => theta_cols.push(c),
            None => {
                off_space += 1;
                theta_cols.push(vec![Cyclo::zero(o); hom.space.dim()]);
            }
        }
    }
    report.residual("theta: θ(α) is A-linear", off_space);
    let theta = Matrix::from_columns(hom.space.dim(), o, &theta_cols);

    // θ̃(β)(h⊗v) = ⟨β(S⁻¹h), v⟩, read on coset representatives
    let mut unbalanced = 0;
    let mut tilde_cols = Vec::with_capacity(hom.space.dim());
    for b in hom.space.basis() {
        let mut func = vec![Cyclo::zero(o); dh * dv];
        for t in 0..dh {
            for i in 0..dv {
                let mut acc = Cyclo::zero(o);
                for aa in 0..dh {
                    let c = &sinv[(aa, t)];
                    if !c.is_zero() {
                        acc = &acc + &(c * &b[(i, aa)]);
                    }
                }
                func[t * dv + i] = acc;
            }
        }
        for r in ind.relations.vectors() {
            let pairing = r
                .iter()
                .zip(&func)
                .fold(Cyclo::zero(o), |acc, (x, y)| &acc + &(x * y));
            unbalanced += usize::from(!pairing.is_zero());
        }
        tilde_cols.push(ind.section.transpose().mul_vec(&func));
    }
    report.residual(
        "theta: θ̃(β) vanishes on the induction relations",
        unbalanced,
    );
    let theta_tilde = Matrix::from_columns(q, o, &tilde_cols);

    let m = hom.space.dim();
    report.flag(
        "theta: θ̃∘θ = id",
        theta_tilde.mul(&theta) == Matrix::identity(q, o),
    );
    report.flag(
        "theta: θ∘θ̃ = id",
        theta.mul(&theta_tilde) == Matrix::identity(m, o),
    );
    let mut eq_theta = 0;
    let mut eq_tilde = 0;
    for t in 0..dh {
        let ri = induced_dual.action(t);
        let rh = hom.module.action(t);
        eq_theta += theta.mul(ri).sub(&rh.mul(&theta)).nonzero_count();
        eq_tilde += theta_tilde
            .mul(rh)
            .sub(&ri.mul(&theta_tilde))
            .nonzero_count();
    }
    report.residual("theta: θ is H-linear", eq_theta);
    report.residual("theta: θ̃ is H-linear", eq_tilde);
    Ok(ThetaMaps {
        theta,
        theta_tilde,
        induced_dual,
        hom,
        report,
    })
}
