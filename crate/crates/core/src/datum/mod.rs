//! Dynamical data (K, T) and the twist pipeline.

pub mod example;
pub mod functor;
pub mod gauge;
pub mod monomial;
pub mod xi;

use std::sync::Arc;

pub use example::{generic_galois_datum, omega, phi_psi, Omega, PhiPsi};
pub use functor::{BimoduleFunctor, BlockMatrix};
pub use gauge::{gauge_from_equivalence, scalar_blocks, GaugeExtraction};
pub use monomial::{
    coset_data, group_sub_embedding, make_monomial_hopf, make_script_a, monomial_sub_embedding,
    CosetData, MonomialHopfSpec, ScriptASpec,
};
pub use xi::{
    compute_i_modules, extract_twist_element, xi_forward, xi_inverse, xi_space, Extraction, XiSpace,
};

use crate::comod::ComoduleAlgebraData;
use crate::error::{Error, Result};
use crate::hopf::tensor::tensor_unit;
use crate::hopf::{HopfAlgebraData, SubHopfEmbedding};
use crate::linalg::Matrix;
use crate::rep::ModuleRep;
use crate::report::Report;
use crate::scalar::Cyclo;

/// Parameters of the monomial family, kept for φ/ψ and the battery.
#[derive(Clone, Debug)]
pub struct MonomialParams {
    pub spec: MonomialHopfSpec,
    pub script_a: ScriptASpec,
    pub b: Vec<usize>,
    pub cosets: CosetData,
    /// 𝔸(F) ⊆ H, over which K is Galois.
    pub galois_base: SubHopfEmbedding,
}

/// A pair (K, T): K an H-comodule algebra and T: A-mod → K-mod given by a
/// bimodule 𝕜^r⊗A.
#[derive(Clone, Debug)]
pub struct DynamicalDatum {
    pub name: String,
    pub h: Arc<HopfAlgebraData>,
    pub base: SubHopfEmbedding,
    pub k: Arc<ComoduleAlgebraData>,
    pub functor: BimoduleFunctor,
    pub monomial: Option<MonomialParams>,
    /// z_q ∈ H with ξ(f)(x⊗v) = π₀ f(Σ_q z_q·x⊗u_q⊗v).
    section: Vec<Vec<Cyclo>>,
    base_comodule: Arc<ComoduleAlgebraData>,
}

impl DynamicalDatum {
    pub fn new(
        name: impl Into<String>,
        base: SubHopfEmbedding,
        k: Arc<ComoduleAlgebraData>,
        functor: BimoduleFunctor,
        section: Vec<Vec<Cyclo>>,
    ) -> Result<Self> {
        let h = base.big().clone();
        if section.len() != functor.rank() || section.iter().any(|z| z.len() != h.dim()) {
            return Err(Error::Structural(
                "the ξ section needs one element of H per summand of T".into(),
            ));
        }
        if k.over().as_ref() != h.as_ref() {
            return Err(Error::Structural(
                "K must be a comodule algebra over the ambient H".into(),
            ));
        }
        if functor.k().as_ref() != k.as_ref() || functor.base().small() != base.small() {
            return Err(Error::Structural("functor data do not match (K, A)".into()));
        }
        let base_comodule = Arc::new(ComoduleAlgebraData::from_embedding(&base));
        Ok(DynamicalDatum {
            name: name.into(),
            h,
            base,
            k,
            functor,
            monomial: None,
            section,
            base_comodule,
        })
    }

    /// The monomial family: H = 𝔸(G,χ,g), A = ℂB, K = 𝒜(F, μⁿ).
    pub fn monomial(
        name: impl Into<String>,
        spec: MonomialHopfSpec,
        f: Vec<usize>,
        b: Vec<usize>,
        mu: Cyclo,
    ) -> Result<Self> {
        spec.validate()?;
        let script_a = ScriptASpec {
            f,
            lambda: mu.pow(spec.n as u64),
            mu,
        };
        script_a.validate(&spec)?;
        let cosets = coset_data(&spec, &script_a.f, &b)?;
        let h = Arc::new(make_monomial_hopf(&spec)?);
        let k = Arc::new(make_script_a(&script_a, &spec, &h)?);
        let base = group_sub_embedding(&spec, &h, &b)?;
        let galois_base = monomial_sub_embedding(&spec, &h, &script_a.f)?;
        let functor = BimoduleFunctor::monomial(
            &spec,
            &script_a.f,
            &b,
            &script_a.mu,
            k.clone(),
            base.clone(),
        )?;
        let section = eigenprojections(&spec, &h)?;
        let mut d = Self::new(name, base, k, functor, section)?;
        d.monomial = Some(MonomialParams {
            spec,
            script_a,
            b,
            cosets,
            galois_base,
        });
        Ok(d)
    }

    /// Sweedler's algebra with K = 𝒜(ℤ₂, 1) and A = 𝕜.
    pub fn e0() -> Result<Self> {
        let spec = MonomialHopfSpec {
            group: crate::group::FiniteGroup::cyclic(2),
            chi: vec![Cyclo::one(2), Cyclo::from_int(2, -1)],
            g: 1,
            n: 2,
        };
        Self::monomial("E0", spec, vec![0, 1], vec![0], Cyclo::one(2))
    }

    /// G = ℤ₂×ℤ₂, g = (1,0), χ(a,b) = (−1)ᵃ, F = G, B = ⟨(0,1)⟩, μ = 1.
    pub fn e1() -> Result<Self> {
        let m1 = Cyclo::from_int(2, -1);
        let one = Cyclo::one(2);
        let spec = MonomialHopfSpec {
            group: crate::group::FiniteGroup::cyclic_product(&[2, 2]),
            chi: vec![one.clone(), one.clone(), m1.clone(), m1],
            g: 2,
            n: 2,
        };
        Self::monomial("E1", spec, vec![0, 1, 2, 3], vec![0, 1], one)
    }

    /// A = 𝕜 = K and T = id over a given H.
    pub fn trivial(h: Arc<HopfAlgebraData>) -> Result<Self> {
        let base = SubHopfEmbedding::ground(h.clone())?;
        let k = Arc::new(ComoduleAlgebraData::from_embedding(&base));
        let functor = BimoduleFunctor::new(
            k.clone(),
            base.clone(),
            vec![BlockMatrix::diagonal(1, base.small().unit())],
        )?;
        Self::new("trivial", base, k, functor, vec![h.unit().to_vec()])
    }

    /// K = H regular, A = H, T = id.
    pub fn regular(h: Arc<HopfAlgebraData>) -> Result<Self> {
        let base = SubHopfEmbedding::identity(h.clone());
        let k = Arc::new(ComoduleAlgebraData::regular(h.clone()));
        let o = h.order();
        let blocks = (0..h.dim())
            .map(|i| BlockMatrix::from_vec(1, h.dim(), &crate::linalg::unit_vec(h.dim(), i, o)))
            .collect();
        let functor = BimoduleFunctor::new(k.clone(), base.clone(), blocks)?;
        Self::new("regular", base, k, functor, vec![h.unit().to_vec()])
    }

    pub fn section(&self) -> &[Vec<Cyclo>] {
        &self.section
    }

    /// A as an H-comodule algebra through (ι⊗id)Δ_A; the base of the twist.
    pub fn base_comodule(&self) -> &Arc<ComoduleAlgebraData> {
        &self.base_comodule
    }

    pub fn ha_unit(&self) -> Vec<Cyclo> {
        tensor_unit(&[self.h.alg().as_ref(), self.base.small().alg().as_ref()])
    }

    /// Small H-modules used to certify element extraction.
    pub fn h_battery(&self) -> Result<Vec<(String, ModuleRep)>> {
        let mut out = vec![("1".to_string(), ModuleRep::trivial(&self.h))];
        if let Some(m) = &self.monomial {
            out.push(("Str".to_string(), string_module(&m.spec, &self.h)?));
        } else if self.h.dim() <= 4 {
            out.push(("H".to_string(), ModuleRep::regular(self.h.alg().clone())));
        }
        Ok(out)
    }

    pub fn a_battery(&self) -> Vec<(String, ModuleRep)> {
        let a = self.base.small();
        let mut out = vec![("1".to_string(), ModuleRep::trivial(a))];
        if a.dim() > 1 {
            out.push(("A".to_string(), ModuleRep::regular(a.alg().clone())));
        }
        out
    }

    /// K is H-simple with trivial coinvariants, T is a functor and the
    /// dimension identity dim A·(dim T(V))² = dim K·(dim V)² holds.
    pub fn validate(&self) -> Result<Report> {
        let mut r = Report::new();
        r.merge("K: ", self.k.verify());
        let simple = self.k.is_h_simple()?;
        r.flag(
            "datum: K is H-simple",
            simple.verdict == crate::comod::Verdict::SimpleCertified,
        );
        r.flag(
            "datum: K has trivial coinvariants",
            self.k.coinvariants().dim() == 1,
        );
        r.merge("", self.functor.verify());
        for (name, v) in self.a_battery() {
            let tv = self.functor.apply(&v)?;
            r.merge(&format!("T({name}): "), tv.verify());
            let lhs = self.base.small().dim() * tv.dim() * tv.dim();
            let rhs = self.k.dim() * v.dim() * v.dim();
            r.flag(
                format!("datum: dim A·(dim T({name}))² = dim K·(dim {name})²: {lhs} = {rhs}"),
                lhs == rhs,
            );
        }
        Ok(r)
    }
}

/// p_i = (1/n)Σ_j χ(g)^{ij} gʲ, the projection onto the χ(g)⁻ⁱ-eigenspace of g.
pub fn eigenprojections(spec: &MonomialHopfSpec, h: &HopfAlgebraData) -> Result<Vec<Vec<Cyclo>>> {
    let (n, o) = (spec.n, spec.order());
    let inv_n = Cyclo::from_int(o, n as i64).inv()?;
    let cg = &spec.chi[spec.g];
    Ok((0..n)
        .map(|i| {
            let mut p = crate::linalg::zero_vec(h.dim(), o);
            for j in 0..n {
                let gj = spec.group.pow(spec.g, j as i64);
                p[gj * n] = &cg.pow((i * j) as u64) * &inv_n;
            }
            p
        })
        .collect())
}

/// The n-dimensional H-module with basis wᵢ = xⁱw₀ and h·wᵢ = χ(h)⁻ⁱwᵢ.
pub fn string_module(spec: &MonomialHopfSpec, h: &Arc<HopfAlgebraData>) -> Result<ModuleRep> {
    let (n, o) = (spec.n, spec.order());
    let mut action = Vec::with_capacity(h.dim());
    for hh in 0..spec.group.order() {
        let inv = spec.chi[hh].inv()?;
        for i in 0..n {
            let mut m = Matrix::zeros(n, n, o);
            for j in 0..n - i {
                m[(i + j, j)] = inv.pow((i + j) as u64);
            }
            action.push(m);
        }
    }
    let rep = ModuleRep::new(h.alg().clone(), n, action)?;
    if !rep.verify().all_pass() {
        return Err(Error::Consistency(
            "string module fails the module axioms".into(),
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vec;

    fn int(n: i64) -> Cyclo {
        Cyclo::from_int(2, n)
    }

    #[test]
    fn e0_functor_on_trivial() {
        let d = DynamicalDatum::e0().unwrap();
        let tv = d
            .functor
            .apply(&ModuleRep::trivial(d.base.small()))
            .unwrap();
        // y is basis element 1 of K
        assert_eq!(tv.action(1), &Matrix::from_ints(2, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn e1_functor_relations_and_dimension() {
        let d = DynamicalDatum::e1().unwrap();
        let triv = ModuleRep::trivial(d.base.small());
        let tv = d.functor.apply(&triv).unwrap();
        let y = tv.action(1);
        assert!(y.pow(2).is_identity());
        assert_eq!(
            d.base.small().dim() * tv.dim() * tv.dim(),
            d.k.dim() * triv.dim() * triv.dim()
        );
        let v = d.validate().unwrap();
        assert!(v.all_pass(), "{v}");
    }

    #[test]
    fn xi_is_bijective_and_normalized() {
        let d = DynamicalDatum::e0().unwrap();
        let one_a = ModuleRep::trivial(d.base.small());
        for x in [
            ModuleRep::trivial(&d.h),
            ModuleRep::regular(d.h.alg().clone()),
        ] {
            let rx = ModuleRep::restrict(&d.base, &x).unwrap();
            let sp = xi_space(&d, &x, &one_a, &rx).unwrap();
            assert!(sp.bijective);
            // ξ⁻¹ then ξ on a nontrivial A-linear map
            let f = sp.hom_a.element(
                &(0..sp.hom_a.dim())
                    .map(|i| int(i as i64 + 1))
                    .collect::<Vec<_>>(),
            );
            let back = sp.inverse(&f).unwrap();
            assert_eq!(sp.forward(&back), f);
        }
        // X trivial: ξ reads the u₀ corner, so ξ(id_{T(M)}) = id_M
        let x = ModuleRep::trivial(&d.h);
        let sp = xi_space(&d, &x, &one_a, &one_a).unwrap();
        assert_eq!(sp.forward(&Matrix::identity(2, 2)), Matrix::identity(1, 2));
    }

    #[test]
    fn xi_is_natural() {
        let d = DynamicalDatum::e1().unwrap();
        let a = d.base.small();
        let (hreg, areg) = (
            ModuleRep::regular(d.h.alg().clone()),
            ModuleRep::regular(a.alg().clone()),
        );
        let w = ModuleRep::tensor(a, &ModuleRep::restrict(&d.base, &hreg).unwrap(), &areg).unwrap();
        let sp = xi_space(&d, &hreg, &areg, &w).unwrap();
        let coords: Vec<Cyclo> = (0..sp.hom_k.dim())
            .map(|i| int((i % 5) as i64 - 2))
            .collect();
        let f = sp.hom_k.element(&coords);
        let r = d.functor.rank();
        let o = 2;
        // in X: right multiplication by x·g on H is H-linear
        let u =
            d.h.alg()
                .right_mult_matrix(&d.h.product(&unit_vec(8, 1, o), &unit_vec(8, 4, o)));
        let lhs = sp.forward(&f.mul(&u.kron(&Matrix::identity(r * 2, o))));
        let rhs = sp.forward(&f).mul(&u.kron(&Matrix::identity(2, o)));
        assert_eq!(lhs, rhs);
        // in V: right multiplication by b on A is A-linear
        let e = a.alg().right_mult_matrix(&unit_vec(2, 1, o));
        let lhs =
            sp.forward(&f.mul(&Matrix::identity(8, o).kron(&Matrix::identity(r, o).kron(&e))));
        let rhs = sp.forward(&f).mul(&Matrix::identity(8, o).kron(&e));
        assert_eq!(lhs, rhs);
        // in W: an A-linear endomorphism of R(H)⊗A
        let hom_w = crate::rep::hom_space(&w, &w).unwrap();
        let g = hom_w.element(
            &(0..hom_w.dim())
                .map(|i| int(i as i64 % 3))
                .collect::<Vec<_>>(),
        );
        let lhs = sp.forward(&Matrix::identity(r, o).kron(&g).mul(&f));
        assert_eq!(lhs, g.mul(&sp.forward(&f)));
    }

    #[test]
    fn unit_laws_and_twists() {
        let d = DynamicalDatum::e0().unwrap();
        let ex = extract_twist_element(&d).unwrap();
        assert!(ex.report.all_pass(), "{}", ex.report);
        assert!(ex.report.passed("twist: 2-cocycle (trivial base)"));
        let triv = ModuleRep::trivial(&d.h);
        let hreg = ModuleRep::regular(d.h.alg().clone());
        let m = ModuleRep::trivial(d.base.small());
        assert!(compute_i_modules(&d, &triv, &hreg, &m)
            .unwrap()
            .is_identity());
        assert!(compute_i_modules(&d, &hreg, &triv, &m)
            .unwrap()
            .is_identity());
        let i = compute_i_modules(&d, &hreg, &hreg, &m).unwrap();
        assert!(i.inverse().is_some());

        let d = DynamicalDatum::e1().unwrap();
        let ex = extract_twist_element(&d).unwrap();
        assert!(ex.report.all_pass(), "{}", ex.report);
        assert_eq!(ex.twist.coeffs().len(), 128);
    }

    #[test]
    fn e1_twist_downstream() {
        let d = DynamicalDatum::e1().unwrap();
        let j = extract_twist_element(&d).unwrap().twist;
        let tg = crate::twist::build_twisted_galois(&j).unwrap();
        assert!(tg.report.all_pass(), "{}", tg.report);
        let expected = crate::twist::CanInverseConvention {
            cop_legs: false,
            cop_antipode: true,
        };
        assert_eq!(tg.convention, Some(expected));
        let s = string_module(&d.monomial.as_ref().unwrap().spec, &d.h).unwrap();
        let areg = ModuleRep::regular(d.base.small().alg().clone());
        let r = crate::twist::twisted_pentagon_check(&j, &s, &s, &s, &areg).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn module_functor_datum_has_trivial_twist() {
        let h = Arc::new(
            HopfAlgebraData::group_algebra(&crate::group::FiniteGroup::cyclic(2), 2).unwrap(),
        );
        let ex = extract_twist_element(&DynamicalDatum::regular(h).unwrap()).unwrap();
        let one =
            crate::twist::TwistElement::identity(ex.twist.hopf().clone(), ex.twist.base().clone())
                .unwrap();
        assert_eq!(ex.twist.coeffs(), one.coeffs());
    }

    #[test]
    fn overlapping_b_is_rejected() {
        let d = DynamicalDatum::e1().unwrap();
        let spec = d.monomial.unwrap().spec;
        let err =
            DynamicalDatum::monomial("bad", spec, vec![0, 1, 2, 3], vec![0, 2], Cyclo::one(2))
                .unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }
}
