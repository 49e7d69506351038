//! φ/ψ for the monomial family, ω: St_K(T(V),T(W)) → (Ind_A^H(V⊗W*))*, and
//! data assembled from a Galois extension over A.

use std::sync::Arc;

use super::{BimoduleFunctor, DynamicalDatum};
use crate::comod::{canonical_map, CanonicalMap, ComoduleAlgebraData, Verdict};
use crate::error::{Error, Result};
use crate::hopf::SubHopfEmbedding;
use crate::linalg::{nonzero_count, vec_sub, Matrix, Subspace};
use crate::rep::{hom_a_h_module, induce, HomModule, ModuleRep};
use crate::report::Report;
use crate::scalar::Cyclo;
use crate::stab::stab_hom_realized;

/// Hom(V,W) as an A-module under a·T = a₁·T·S(a₂), on row-major vec(T).
pub fn hom_module(
    a: &crate::hopf::HopfAlgebraData,
    v: &ModuleRep,
    w: &ModuleRep,
) -> Result<ModuleRep> {
    let (dv, dw, o) = (v.dim(), w.dim(), a.order());
    let action = (0..a.dim())
        .map(|i| {
            let mut m = Matrix::zeros(dw * dv, dw * dv, o);
            for (j, k, c) in a.comult_of(i) {
                let sv = v.act(&a.antipode().column(*k));
                m.add_scaled(c, &w.action(*j).kron(&sv.transpose()));
            }
            m
        })
        .collect();
    ModuleRep::new(a.alg().clone(), dw * dv, action)
}

/// Hom(T(V),T(W)) as an A-module through γ(a) = a^[1]⊗a^[2]: a·T = a^[1]·T·a^[2].
pub fn gamma_module(
    can: &CanonicalMap,
    k: &ComoduleAlgebraData,
    tv: &ModuleRep,
    tw: &ModuleRep,
) -> Result<ModuleRep> {
    let a = k.over();
    let (dv, dw, dk, o) = (tv.dim(), tw.dim(), k.dim(), k.order());
    let mut action = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let g = can.gamma(&a.alg().basis_vec(i))?;
        let mut m = Matrix::zeros(dw * dv, dw * dv, o);
        for (p, c) in g.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            m.add_scaled(c, &tw.action(p / dk).kron(&tv.action(p % dk).transpose()));
        }
        action.push(m);
    }
    ModuleRep::new(a.alg().clone(), dw * dv, action)
}

fn galois_over(
    k: &Arc<ComoduleAlgebraData>,
    emb: &SubHopfEmbedding,
) -> Result<(Arc<ComoduleAlgebraData>, CanonicalMap)> {
    let kc = Arc::new(k.corestrict(emb)?);
    let one = Subspace::span(k.dim(), k.order(), &[k.alg().unit().to_vec()]);
    let can = canonical_map(&kc, &one)?;
    if !can.is_bijective() {
        return Err(Error::Precondition(
            "K is not Galois over the given Hopf subalgebra".into(),
        ));
    }
    Ok((kc, can))
}

/// Values f(e_t) of a map f: H → Hom(V,W), stored as the columns of a (dim W·dim V) × dim H matrix.
fn eval(f: &Matrix, h: &[Cyclo]) -> Vec<Cyclo> {
    f.mul_vec(h)
}

#[derive(Clone, Debug)]
pub struct PhiPsi {
    /// Hom_{ℂB}(H, Hom(V,W)).
    pub domain: HomModule,
    /// Hom_{𝔸(F)}(H, Hom(T(V),T(W))).
    pub codomain: HomModule,
    /// In the bases of `domain` and `codomain`.
    pub phi: Matrix,
    pub psi: Matrix,
    /// Nonzero entries of φ∘h − h∘φ over the basis of H, for right translation.
    pub h_linearity_residual: usize,
    pub report: Report,
}

/// φ(ξ)(c_l)(u_k⊗v) = Σ_s u_s⊗ξ(gˢxᵏc_l)(v), extended 𝔸(F)-linearly, and
/// ψ(α)(gʲxⁱc_l)(v) = p_j(α(c_l)(u_i⊗v)), extended ℂB-linearly.
pub fn phi_psi(d: &DynamicalDatum, v: &ModuleRep, w: &ModuleRep) -> Result<PhiPsi> {
    let mp = d
        .monomial
        .as_ref()
        .ok_or_else(|| Error::Unsupported("φ/ψ are defined for the monomial family".into()))?;
    let (spec, cos) = (&mp.spec, &mp.cosets);
    let (h, a, o) = (&d.h, d.base.small(), d.h.order());
    let (n, dh, dv, dw) = (spec.n, h.dim(), v.dim(), w.dim());
    let r = d.functor.rank();
    let tv = d.functor.apply(v)?;
    let tw = d.functor.apply(w)?;
    let hvw = hom_module(a, v, w)?;
    let domain = hom_a_h_module(&d.base, &hvw)?;
    let (kc, can) = galois_over(&d.k, &mp.galois_base)?;
    let gm = gamma_module(&can, &kc, &tv, &tw)?;
    let codomain = hom_a_h_module(&mp.galois_base, &gm)?;
    let af = mp.galois_base.small();
    let rw = r * dw;
    let rv = r * dv;

    // basis {a_m c_l} of H over 𝔸(F), a_m running over the basis of 𝔸(F)
    let nl = cos.reps.len();
    let mut af_cols = Vec::with_capacity(dh);
    for l in 0..nl {
        let cl = crate::linalg::unit_vec(dh, cos.reps[l] * n, o);
        for m in 0..af.dim() {
            af_cols.push(h.product(&mp.galois_base.embed(&af.alg().basis_vec(m)), &cl));
        }
    }
    let af_inv = super::monomial::change_of_basis(&Matrix::from_columns(dh, o, &af_cols))?;
    let coset_inv = super::monomial::change_of_basis(&cos.basis_matrix(spec, h))?;

    let mut report = Report::new();
    let mut phi_cols = Vec::with_capacity(domain.space.dim());
    let mut off = 0;
    for xi in domain.space.basis() {
        let mut vals = Vec::with_capacity(dh);
        for l in 0..nl {
            let mut alpha = Matrix::zeros(rw, rv, o);
            for k in 0..n {
                for s in 0..n {
                    let e = cos.element(spec, h, 0, s, k, l);
                    let val = eval(&xi, &e);
                    for wi in 0..dw {
                        for vi in 0..dv {
                            alpha[(s * dw + wi, k * dv + vi)] = val[wi * dv + vi].clone();
                        }
                    }
                }
            }
            let vec = alpha.to_vec();
            for m in 0..af.dim() {
                vals.push(gm.action(m).mul_vec(&vec));
            }
        }
        let full = Matrix::from_columns(rw * rv, o, &vals).mul(&af_inv);
        match codomain.space.coordinates(&full) {
            Some(c) => phi_cols.push(c),
            None => {
                off += 1;
                phi_cols.push(vec![Cyclo::zero(o); codomain.space.dim()]);
            }
        }
    }
    report.residual("phi/psi: φ(ξ) is 𝔸(F)-linear", off);
    let phi = Matrix::from_columns(codomain.space.dim(), o, &phi_cols);

    let mut psi_cols = Vec::with_capacity(codomain.space.dim());
    let mut off = 0;
    for alpha in codomain.space.basis() {
        let mut vals = vec![Vec::new(); dh];
        for l in 0..nl {
            let cl = crate::linalg::unit_vec(dh, cos.reps[l] * n, o);
            let at = Matrix::from_vec(rw, rv, o, eval(&alpha, &cl));
            for j in 0..n {
                for i in 0..n {
                    let base =
                        Matrix::from_fn(dw, dv, o, |wi, vi| at[(j * dw + wi, i * dv + vi)].clone())
                            .to_vec();
                    for b in 0..cos.b.len() {
                        vals[cos.index(n, b, j, i, l)] = hvw.action(b).mul_vec(&base);
                    }
                }
            }
        }
        let full = Matrix::from_columns(dw * dv, o, &vals).mul(&coset_inv);
        match domain.space.coordinates(&full) {
            Some(c) => psi_cols.push(c),
            None => {
                off += 1;
                psi_cols.push(vec![Cyclo::zero(o); domain.space.dim()]);
            }
        }
    }
    report.residual("phi/psi: ψ(α) is ℂB-linear", off);
    let psi = Matrix::from_columns(domain.space.dim(), o, &psi_cols);
    report.flag(
        format!(
            "phi/psi: dim Hom_ℂB = dim Hom_𝔸(F) = {}",
            domain.space.dim()
        ),
        domain.space.dim() == codomain.space.dim(),
    );
    report.flag("phi/psi: ψ∘φ = id", psi.mul(&phi).is_identity());
    report.flag("phi/psi: φ∘ψ = id", phi.mul(&psi).is_identity());
    let mut h_linearity_residual = 0;
    for t in 0..dh {
        h_linearity_residual += phi
            .mul(domain.module.action(t))
            .sub(&codomain.module.action(t).mul(&phi))
            .nonzero_count();
    }
    if !(report.passed("phi/psi: ψ∘φ = id") && report.passed("phi/psi: φ∘ψ = id")) {
        return Err(Error::Consistency(format!(
            "φ and ψ are not mutually inverse:\n{report}"
        )));
    }
    Ok(PhiPsi {
        domain,
        codomain,
        phi,
        psi,
        h_linearity_residual,
        report,
    })
}

#[derive(Clone, Debug)]
pub struct Omega {
    /// Columns: ω of each basis vector of St_K(T(V),T(W)) in the dual basis of Ind_A^H(V⊗W*).
    pub matrix: Matrix,
    pub report: Report,
}

/// ω(u)(h̄⊗v⊗f) = ⟨f, Θ(ū)(S⁻¹h)(v)⟩ with Θ(ū)(h) = Σ_q π₀∘u(z_q h⊗u_q⊗−).
pub fn omega(d: &DynamicalDatum, v: &ModuleRep, w: &ModuleRep) -> Result<Omega> {
    let (h, a, o) = (&d.h, d.base.small(), d.h.order());
    let (dh, dv, dw) = (h.dim(), v.dim(), w.dim());
    let r = d.functor.rank();
    let tv = d.functor.apply(v)?;
    let tw = d.functor.apply(w)?;
    let stab = stab_hom_realized(&d.k, &tv, &tw)?;
    let vw = ModuleRep::tensor(a, v, &ModuleRep::dual_module(a, w)?)?;
    let ind = induce(&d.base, &vw)?;
    let sinv = h.antipode_inverse();
    let section = d.section();

    // Θ(u)(e_t) as dw × dv matrices
    let theta = |u: &Matrix, hv: &[Cyclo]| -> Matrix {
        let mut out = Matrix::zeros(dw, dv, o);
        for (q, z) in section.iter().enumerate() {
            let zh = h.product(z, hv);
            for (t, c) in zh.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let blk = Matrix::from_fn(dw, dv, o, |wi, vi| {
                    u[(wi, t * (r * dv) + q * dv + vi)].clone()
                });
                out.add_scaled(c, &blk);
            }
        }
        out
    };
    let functional = |u: &Matrix| -> Vec<Cyclo> {
        let mut f = vec![Cyclo::zero(o); dh * dv * dw];
        for t in 0..dh {
            let m = theta(u, &sinv.column(t));
            for vi in 0..dv {
                for wi in 0..dw {
                    f[(t * dv + vi) * dw + wi] = m[(wi, vi)].clone();
                }
            }
        }
        f
    };
    let dot = |a: &[Cyclo], b: &[Cyclo]| {
        a.iter()
            .zip(b)
            .fold(Cyclo::zero(o), |acc, (x, y)| &acc + &(x * y))
    };

    let mut report = Report::new();
    let rels = ind.relations.vectors();
    let mut unbalanced = 0;
    let mut cols = Vec::with_capacity(stab.dim());
    for u in stab.basis() {
        let f = functional(&u);
        unbalanced += rels.iter().filter(|rv| !dot(&f, rv).is_zero()).count();
        cols.push(ind.section.transpose().mul_vec(&f));
    }
    report.residual(
        "omega: ω(u) vanishes on the induction relations",
        unbalanced,
    );
    let matrix = Matrix::from_columns(ind.module.dim(), o, &cols);
    let dual = ModuleRep::dual_module(h, &ind.module)?;
    let sa = stab
        .h_action
        .as_ref()
        .expect("realized stabilizer carries its H-action");
    let mut hlin = 0;
    for t in 0..dh {
        hlin += matrix
            .mul(sa.action(t))
            .sub(&dual.action(t).mul(&matrix))
            .nonzero_count();
    }
    report.residual("omega: H-linear", hlin);
    report.flag(
        format!("omega: bijective ({} = {})", stab.dim(), ind.module.dim()),
        stab.dim() == ind.module.dim() && matrix.rank() == stab.dim(),
    );
    if v.dim() == w.dim() && v.actions() == w.actions() {
        let unit = crate::stab::stab_unit(h, tv.dim());
        let f = functional(&unit);
        let mut expect = vec![Cyclo::zero(o); dh * dv * dw];
        for t in 0..dh {
            let eps = &h.counit()[t];
            for vi in 0..dv {
                expect[(t * dv + vi) * dw + vi] = eps.clone();
            }
        }
        report.residual(
            "omega: ω(1)(h̄⊗v⊗f) = ε(h)⟨f,v⟩",
            nonzero_count(&vec_sub(&f, &expect)),
        );
    }
    Ok(Omega { matrix, report })
}

/// Assembles a datum from K Galois over A itself, checking the supplied
/// isomorphisms Λ_{V,W}: Hom(T(V),T(W)) → Hom(V,W) on the A-battery.
pub fn generic_galois_datum(
    name: &str,
    base: SubHopfEmbedding,
    k: Arc<ComoduleAlgebraData>,
    functor: BimoduleFunctor,
    section: Vec<Vec<Cyclo>>,
    isos: &dyn Fn(&ModuleRep, &ModuleRep) -> Result<Matrix>,
) -> Result<(DynamicalDatum, Report)> {
    let d = DynamicalDatum::new(name, base.clone(), k.clone(), functor, section)?;
    let (kc, can) = galois_over(&k, &base)?;
    if k.coinvariants().dim() != 1 {
        return Err(Error::Validation("K must have trivial coinvariants".into()));
    }
    let mut report = d.validate()?;
    let a = base.small();
    let battery = d.a_battery();
    for (vn, v) in &battery {
        for (wn, w) in &battery {
            let (tv, tw) = (d.functor.apply(v)?, d.functor.apply(w)?);
            let lam = isos(v, w)?;
            let src = gamma_module(&can, &kc, &tv, &tw)?;
            let dst = hom_module(a, v, w)?;
            if lam.rows() != dst.dim() || lam.cols() != src.dim() {
                return Err(Error::Structural(format!(
                    "Λ_{{{vn},{wn}}} has the wrong shape"
                )));
            }
            let res = crate::rep::intertwiner_residual(&lam, &src, &dst);
            if res != 0 {
                return Err(Error::Validation(format!(
                    "Λ_{{{vn},{wn}}} is not A-linear: {res} nonzero residual entries"
                )));
            }
            if lam.rank() != src.dim() || src.dim() != dst.dim() {
                return Err(Error::Validation(format!(
                    "Λ_{{{vn},{wn}}} is not bijective"
                )));
            }
            report.flag(
                format!("galois datum: Λ_{{{vn},{wn}}} is an A-linear bijection"),
                true,
            );
            report.merge(&format!("ω_{{{vn},{wn}}}: "), omega(&d, v, w)?.report);
        }
    }
    report.flag(
        "galois datum: K is H-simple",
        d.k.is_h_simple()?.verdict == Verdict::SimpleCertified,
    );
    Ok((d, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::extract_twist_element;
    use crate::group::FiniteGroup;
    use crate::hopf::HopfAlgebraData;

    fn identity_isos(v: &ModuleRep, w: &ModuleRep) -> Result<Matrix> {
        Ok(Matrix::identity(v.dim() * w.dim(), v.order()))
    }

    #[test]
    fn phi_psi_e0_e1() {
        for d in [DynamicalDatum::e0().unwrap(), DynamicalDatum::e1().unwrap()] {
            let triv = ModuleRep::trivial(d.base.small());
            let pp = phi_psi(&d, &triv, &triv).unwrap();
            assert!(pp.report.all_pass(), "{}", pp.report);
            assert_eq!(pp.domain.space.dim(), d.h.dim() / d.base.small().dim());
        }
    }

    #[test]
    fn omega_checks_e0_e1() {
        for d in [DynamicalDatum::e0().unwrap(), DynamicalDatum::e1().unwrap()] {
            for (_, v) in d.a_battery() {
                let om = omega(&d, &v, &v).unwrap();
                assert!(om.report.all_pass(), "{}: {}", d.name, om.report);
            }
        }
    }

    #[test]
    fn trivial_and_regular_galois_data_give_trivial_twists() {
        let h = Arc::new(HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(3), 3).unwrap());
        for d in [
            DynamicalDatum::trivial(h.clone()).unwrap(),
            DynamicalDatum::regular(h.clone()).unwrap(),
        ] {
            let (d, rep) = generic_galois_datum(
                "g",
                d.base.clone(),
                d.k.clone(),
                d.functor.clone(),
                d.section().to_vec(),
                &identity_isos,
            )
            .unwrap();
            assert!(rep.all_pass(), "{rep}");
            let ex = extract_twist_element(&d).unwrap();
            assert!(ex.report.all_pass(), "{}", ex.report);
            let one = TwistElementOne::of(&ex.twist);
            assert!(one, "J = 1⊗1⊗1");
        }
    }

    struct TwistElementOne;
    impl TwistElementOne {
        fn of(j: &crate::twist::TwistElement) -> bool {
            let id =
                crate::twist::TwistElement::identity(j.hopf().clone(), j.base().clone()).unwrap();
            id.coeffs() == j.coeffs()
        }
    }

    #[test]
    fn non_linear_iso_rejected() {
        let h = Arc::new(HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap());
        let d = DynamicalDatum::regular(h).unwrap();
        // a shear of Hom(V,W): invertible but not A-linear once dim > 1
        let swap = |v: &ModuleRep, w: &ModuleRep| -> Result<Matrix> {
            let n = v.dim() * w.dim();
            Ok(Matrix::from_fn(n, n, 2, |i, j| {
                if i == j || (i == 0 && j == 1) {
                    Cyclo::one(2)
                } else {
                    Cyclo::zero(2)
                }
            }))
        };
        let err = generic_galois_datum(
            "bad",
            d.base.clone(),
            d.k.clone(),
            d.functor.clone(),
            d.section().to_vec(),
            &swap,
        )
        .unwrap_err();
        assert!(err.to_string().contains("not A-linear"), "{err}");
    }
}
