//! Dynamical twists J ∈ H⊗H⊗S over an H-comodule algebra S.
//!
//! Elements are dense coefficient vectors on the product basis with index
//! (i·dim H + j)·dim S + k. The verifier here is deliberately independent of
//! the pipeline that produces twists.

mod galois;
mod pentagon;

use std::sync::Arc;

pub use galois::{build_twisted_galois, CanInverseConvention, TwistedGalois};
pub use pentagon::twisted_pentagon_check;

use crate::comod::ComoduleAlgebraData;
use crate::error::{Error, Result};
use crate::hopf::tensor::{map_leg, tensor_mul, tensor_unit};
use crate::hopf::{AlgebraData, HopfAlgebraData};
use crate::linalg::{nonzero_count, vec_sub, Matrix};
use crate::report::Report;
use crate::scalar::Cyclo;

/// Left-regular matrix of `a` in a tensor product of algebras.
pub(crate) fn tensor_left_mult(legs: &[&AlgebraData], a: &[Cyclo]) -> Matrix {
    let n = a.len();
    let order = legs[0].order();
    let cols: Vec<Vec<Cyclo>> = (0..n)
        .map(|p| tensor_mul(legs, a, &crate::linalg::unit_vec(n, p, order)))
        .collect();
    Matrix::from_columns(n, order, &cols)
}

/// Two-sided inverse in a tensor product of algebras, if one exists.
pub(crate) fn tensor_inverse(legs: &[&AlgebraData], a: &[Cyclo]) -> Option<Vec<Cyclo>> {
    let one = tensor_unit(legs);
    let x = tensor_left_mult(legs, a).solve(&one)?;
    (tensor_mul(legs, &x, a) == one).then_some(x)
}

fn comult_leg(h: &HopfAlgebraData, t: &[Cyclo], dims: &[usize], leg: usize) -> Vec<Cyclo> {
    map_leg(t, dims, leg, &[h.dim(), h.dim()], |i| h.comult_terms(i))
}

fn counit_leg(h: &HopfAlgebraData, t: &[Cyclo], dims: &[usize], leg: usize) -> Vec<Cyclo> {
    map_leg(t, dims, leg, &[], |i| h.counit_terms(i))
}

fn coaction_leg(s: &ComoduleAlgebraData, t: &[Cyclo], dims: &[usize], leg: usize) -> Vec<Cyclo> {
    map_leg(t, dims, leg, &[s.over().dim(), s.dim()], |i| {
        s.coaction_terms(i)
    })
}

fn check_base(h: &Arc<HopfAlgebraData>, s: &ComoduleAlgebraData) -> Result<()> {
    if s.over().as_ref() != h.as_ref() {
        return Err(Error::Structural(
            "comodule algebra is over a different Hopf algebra".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct TwistElement {
    h: Arc<HopfAlgebraData>,
    s: Arc<ComoduleAlgebraData>,
    coeffs: Vec<Cyclo>,
    inverse: Option<Vec<Cyclo>>,
}

impl TwistElement {
    pub fn new(
        h: Arc<HopfAlgebraData>,
        s: Arc<ComoduleAlgebraData>,
        coeffs: Vec<Cyclo>,
    ) -> Result<Self> {
        check_base(&h, &s)?;
        let n = h.dim() * h.dim() * s.dim();
        if coeffs.len() != n {
            return Err(Error::Structural(format!(
                "twist has {} coefficients, expected {n}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.order() != h.order()) {
            return Err(Error::Structural(
                "twist coefficient over the wrong field".into(),
            ));
        }
        let inverse = tensor_inverse(&[h.alg(), h.alg(), s.alg()], &coeffs);
        Ok(TwistElement {
            h,
            s,
            coeffs,
            inverse,
        })
    }

    pub fn identity(h: Arc<HopfAlgebraData>, s: Arc<ComoduleAlgebraData>) -> Result<Self> {
        let one = tensor_unit(&[h.alg(), h.alg(), s.alg()]);
        Self::new(h, s, one)
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebraData> {
        &self.h
    }

    pub fn base(&self) -> &Arc<ComoduleAlgebraData> {
        &self.s
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn inverse(&self) -> Result<&[Cyclo]> {
        self.inverse
            .as_deref()
            .ok_or_else(|| Error::Validation("twist is not invertible".into()))
    }

    pub(crate) fn legs(&self) -> [&AlgebraData; 3] {
        [self.h.alg(), self.h.alg(), self.s.alg()]
    }

    pub(crate) fn dims(&self) -> [usize; 3] {
        [self.h.dim(), self.h.dim(), self.s.dim()]
    }

    /// Nonzero terms (i, j, k, c) of J.
    pub fn terms(&self) -> Vec<(usize, usize, usize, Cyclo)> {
        let (dh, ds) = (self.h.dim(), self.s.dim());
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p / (dh * ds), (p / ds) % dh, p % ds, c.clone()))
            .collect()
    }
}

pub fn verify_twist(j: &TwistElement) -> Report {
    let (h, s) = (&*j.h, &*j.s);
    let (dh, ds) = (h.dim(), s.dim());
    let legs3 = j.legs();
    let dims3 = j.dims();
    let mut r = Report::new();

    r.flag("twist: J is invertible", j.inverse.is_some());

    // J·δ²(s) = δ²(s)·J for every basis element s
    let mut d0 = 0;
    for k in 0..ds {
        let once = s.coact(&s.alg().basis_vec(k));
        let twice = coaction_leg(s, &once, &[dh, ds], 1);
        let lhs = tensor_mul(&legs3, &j.coeffs, &twice);
        let rhs = tensor_mul(&legs3, &twice, &j.coeffs);
        d0 += nonzero_count(&vec_sub(&lhs, &rhs));
    }
    r.residual("twist: dynt0 (J commutes with δ²(S))", d0);

    // (Δ⊗id⊗id)(J)·(id⊗id⊗δ)(J) = (id⊗Δ⊗id)(J)·(1⊗J) in H⊗H⊗H⊗S
    let legs4 = [h.alg().as_ref(), h.alg(), h.alg(), s.alg()];
    let left_a = comult_leg(h, &j.coeffs, &dims3, 0);
    let left_b = coaction_leg(s, &j.coeffs, &dims3, 2);
    let right_a = comult_leg(h, &j.coeffs, &dims3, 1);
    let right_b = crate::linalg::vec_kron(h.unit(), &j.coeffs);
    let lhs = tensor_mul(&legs4, &left_a, &left_b);
    let rhs = tensor_mul(&legs4, &right_a, &right_b);
    r.residual(
        "twist: dynt1 (shifted cocycle)",
        nonzero_count(&vec_sub(&lhs, &rhs)),
    );

    let one_hs = tensor_unit(&[h.alg(), s.alg()]);
    let e1 = counit_leg(h, &j.coeffs, &dims3, 0);
    let e2 = counit_leg(h, &j.coeffs, &dims3, 1);
    r.residual(
        "twist: dynt2 (ε⊗id⊗id)J = 1",
        nonzero_count(&vec_sub(&e1, &one_hs)),
    );
    r.residual(
        "twist: dynt2 (id⊗ε⊗id)J = 1",
        nonzero_count(&vec_sub(&e2, &one_hs)),
    );

    if ds == 1 {
        // S = 𝕜: (Δ⊗id)(F)(F⊗1) = (id⊗Δ)(F)(1⊗F) with F = J read in H⊗H
        let scale = s.alg().unit()[0]
            .inv()
            .expect("unit of a 1-dim algebra is nonzero");
        let f: Vec<Cyclo> = j.coeffs.iter().map(|c| c * &scale).collect();
        let legs = [h.alg().as_ref(), h.alg(), h.alg()];
        let d2 = [dh, dh];
        let lhs = tensor_mul(
            &legs,
            &map_leg(&f, &d2, 0, &[dh, dh], |i| h.comult_terms(i)),
            &crate::linalg::vec_kron(&f, h.unit()),
        );
        let rhs = tensor_mul(
            &legs,
            &map_leg(&f, &d2, 1, &[dh, dh], |i| h.comult_terms(i)),
            &crate::linalg::vec_kron(h.unit(), &f),
        );
        r.residual(
            "twist: 2-cocycle (trivial base)",
            nonzero_count(&vec_sub(&lhs, &rhs)),
        );
    }
    r
}

/// t ∈ H⊗S, index a·dim S + k.
#[derive(Clone, Debug)]
pub struct GaugeElement {
    h: Arc<HopfAlgebraData>,
    s: Arc<ComoduleAlgebraData>,
    coeffs: Vec<Cyclo>,
    inverse: Option<Vec<Cyclo>>,
}

impl GaugeElement {
    pub fn new(
        h: Arc<HopfAlgebraData>,
        s: Arc<ComoduleAlgebraData>,
        coeffs: Vec<Cyclo>,
    ) -> Result<Self> {
        check_base(&h, &s)?;
        if coeffs.len() != h.dim() * s.dim() {
            return Err(Error::Structural(format!(
                "gauge element has {} coefficients, expected {}",
                coeffs.len(),
                h.dim() * s.dim()
            )));
        }
        let inverse = tensor_inverse(&[h.alg(), s.alg()], &coeffs);
        Ok(GaugeElement {
            h,
            s,
            coeffs,
            inverse,
        })
    }

    pub fn identity(h: Arc<HopfAlgebraData>, s: Arc<ComoduleAlgebraData>) -> Result<Self> {
        let one = tensor_unit(&[h.alg(), s.alg()]);
        Self::new(h, s, one)
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs == tensor_unit(&[self.h.alg(), self.s.alg()])
    }

    pub fn inverse(&self) -> Result<GaugeElement> {
        let inv = self
            .inverse
            .clone()
            .ok_or_else(|| Error::Validation("gauge element is not invertible".into()))?;
        GaugeElement::new(self.h.clone(), self.s.clone(), inv)
    }
}

/// (Δ⊗id)(t)·J = J′·(1⊗t)·(id⊗δ)(t) and ⟨ε,t¹⟩t² = 1.
pub fn gauge_check(j: &TwistElement, j2: &TwistElement, t: &GaugeElement) -> Result<Report> {
    if j.h.as_ref() != j2.h.as_ref()
        || j.s.as_ref() != j2.s.as_ref()
        || t.h.as_ref() != j.h.as_ref()
    {
        return Err(Error::Structural(
            "twists and gauge element live over different algebras".into(),
        ));
    }
    let (h, s) = (&*j.h, &*j.s);
    let legs = j.legs();
    let dts = [h.dim(), s.dim()];
    let mut r = Report::new();
    r.flag("gauge: t is invertible", t.inverse.is_some());
    let lhs = tensor_mul(
        &legs,
        &map_leg(&t.coeffs, &dts, 0, &[h.dim(), h.dim()], |i| {
            h.comult_terms(i)
        }),
        &j.coeffs,
    );
    let one_t = crate::linalg::vec_kron(h.unit(), &t.coeffs);
    let dt = coaction_leg(s, &t.coeffs, &dts, 1);
    let rhs = tensor_mul(&legs, &tensor_mul(&legs, &j2.coeffs, &one_t), &dt);
    r.residual(
        "gauge: (Δ⊗id)(t)J = J′(1⊗t)(id⊗δ)(t)",
        nonzero_count(&vec_sub(&lhs, &rhs)),
    );
    let norm = counit_leg(h, &t.coeffs, &dts, 0);
    r.residual(
        "gauge: ⟨ε,t¹⟩t² = 1",
        nonzero_count(&vec_sub(&norm, s.alg().unit())),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::hopf::SubHopfEmbedding;

    fn z2_ground() -> (Arc<HopfAlgebraData>, Arc<ComoduleAlgebraData>) {
        let h = Arc::new(HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap());
        let ground = SubHopfEmbedding::ground(h.clone()).unwrap();
        let s = Arc::new(ComoduleAlgebraData::from_embedding(&ground));
        (h, s)
    }

    #[test]
    fn identity_twist_passes() {
        let (h, s) = z2_ground();
        let j = TwistElement::identity(h.clone(), s.clone()).unwrap();
        let r = verify_twist(&j);
        assert!(r.all_pass(), "{r}");
        assert!(r.get("twist: 2-cocycle (trivial base)").is_some());
        let t = GaugeElement::identity(h, s).unwrap();
        assert!(gauge_check(&j, &j, &t).unwrap().all_pass());
    }

    #[test]
    fn group_algebra_cocycle_twist() {
        // F = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) is the standard non-trivial twist of 𝕜ℤ₂
        let (h, s) = z2_ground();
        let half = Cyclo::from_rational(2, crate::scalar::Rational::new(1, 2).unwrap());
        let m = |x: i64| &half * &Cyclo::from_int(2, x);
        let j = TwistElement::new(h, s, vec![m(1), m(1), m(1), m(-1)]).unwrap();
        assert!(verify_twist(&j).all_pass());
        let bad = TwistElement::new(
            j.h.clone(),
            j.s.clone(),
            vec![m(2), m(1), Cyclo::zero(2), Cyclo::zero(2)],
        )
        .unwrap();
        let r = verify_twist(&bad);
        assert!(!r.passed("twist: dynt2 (ε⊗id⊗id)J = 1"));
    }

    #[test]
    fn non_normalized_gauge_fails() {
        let (h, s) = z2_ground();
        let j = TwistElement::identity(h.clone(), s.clone()).unwrap();
        let two = Cyclo::from_int(2, 2);
        let t = GaugeElement::new(h, s, vec![two, Cyclo::zero(2)]).unwrap();
        let r = gauge_check(&j, &j, &t).unwrap();
        assert!(!r.passed("gauge: ⟨ε,t¹⟩t² = 1"));
    }
}
