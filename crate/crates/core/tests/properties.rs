//! Property tests over randomized inputs to the twist machinery.

use std::sync::Arc;

use proptest::prelude::*;

use dyntwist::cli::formats::{
    hopf_text, load_hopf, load_twist, sha256_ref, to_canonical, Loaded, TwistFile,
};
use dyntwist::datum::{extract_twist_element, DynamicalDatum, MonomialHopfSpec};
use dyntwist::group::FiniteGroup;
use dyntwist::hopf::tensor::{map_leg, tensor_mul};
use dyntwist::linalg::{vec_kron, vec_sub};
use dyntwist::scalar::Cyclo;
use dyntwist::twist::{gauge_check, verify_twist, GaugeElement, TwistElement};

fn small(o: u32) -> impl Strategy<Value = Cyclo> {
    (-3i64..=3).prop_map(move |n| Cyclo::from_int(o, n))
}

/// Taft-type datum: G = ℤₙ, χ(gᵏ) = ζₙ^{ek} with e a unit mod n, μ = ζₙʲ.
fn taft(n: usize, e: usize, j: usize) -> DynamicalDatum {
    let o = n as u32;
    let spec = MonomialHopfSpec {
        group: FiniteGroup::cyclic(n),
        chi: (0..n).map(|k| Cyclo::zeta_pow(o, (e * k) as i64)).collect(),
        g: 1,
        n,
    };
    DynamicalDatum::monomial(
        "taft",
        spec,
        (0..n).collect(),
        vec![0],
        Cyclo::zeta_pow(o, j as i64),
    )
    .unwrap()
}

fn unit_mod(n: usize) -> impl Strategy<Value = usize> {
    (1..n).prop_filter("unit", move |e| num_integer::gcd(*e, n) == 1)
}

/// J′ with (Δ⊗id)(t)J = J′(1⊗t)(id⊗δ)(t).
fn gauge_transform(j: &TwistElement, t: &[Cyclo]) -> Option<TwistElement> {
    let (h, s) = (j.hopf(), j.base());
    let legs = [h.alg().as_ref(), h.alg().as_ref(), s.alg().as_ref()];
    let dts = [h.dim(), s.dim()];
    let left = tensor_mul(
        &legs,
        &map_leg(t, &dts, 0, &[h.dim(), h.dim()], |i| h.comult_terms(i)),
        j.coeffs(),
    );
    let right = tensor_mul(
        &legs,
        &vec_kron(h.unit(), t),
        &map_leg(t, &dts, 1, &[h.dim(), s.dim()], |i| s.coaction_terms(i)),
    );
    let right_inv = TwistElement::new(h.clone(), s.clone(), right)
        .ok()?
        .inverse()
        .ok()?
        .to_vec();
    TwistElement::new(h.clone(), s.clone(), tensor_mul(&legs, &left, &right_inv)).ok()
}

/// Adds 1⊗(1 − (ε⊗id)t) so that ⟨ε,t¹⟩t² = 1.
fn normalize(d: &DynamicalDatum, t: Vec<Cyclo>) -> Vec<Cyclo> {
    let s = d.base_comodule();
    let norm = map_leg(&t, &[d.h.dim(), s.dim()], 0, &[], |i| d.h.counit_terms(i));
    let fix = vec_kron(d.h.unit(), &vec_sub(s.alg().unit(), &norm));
    t.iter().zip(&fix).map(|(a, b)| a + b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn monomial_family_satisfies_the_axioms(n in 2usize..5, e in 0usize..4, j in 0usize..4) {
        let e = [1, n - 1, 1, n - 1][e];
        let d = taft(n, e, j % n);
        prop_assert!(d.h.verify().all_pass());
        prop_assert!(d.k.verify().all_pass());
        let v = d.validate().unwrap();
        prop_assert!(v.all_pass(), "{}", v);
    }

    #[test]
    fn pipeline_output_is_a_twist(n in 2usize..4, e in unit_mod(3), j in 0usize..3) {
        let e = if n == 2 { 1 } else { e };
        let d = taft(n, e, j % n);
        let ex = extract_twist_element(&d).unwrap();
        prop_assert!(ex.report.all_pass(), "{}", ex.report);
        let r = verify_twist(&ex.twist);
        prop_assert!(r.all_pass(), "{}", r);
    }

    #[test]
    fn gauge_transforms_of_twists_are_twists(seed in proptest::collection::vec(small(2), 16)) {
        let d = DynamicalDatum::e1().unwrap();
        let j = extract_twist_element(&d).unwrap().twist;
        let t = normalize(&d, seed);
        let gauge = GaugeElement::new(d.h.clone(), d.base_comodule().clone(), t.clone()).unwrap();
        prop_assume!(gauge.inverse().is_ok());
        let j2 = gauge_transform(&j, &t).expect("invertible gauge gives an invertible twist");
        let r = verify_twist(&j2);
        prop_assert!(r.all_pass(), "{}", r);
        let g = gauge_check(&j, &j2, &gauge).unwrap();
        prop_assert!(g.all_pass(), "{}", g);
    }

    #[test]
    fn twist_files_round_trip(coeffs in proptest::collection::vec(small(2), 32)) {
        let d = DynamicalDatum::e1().unwrap();
        let h = load_hopf(&hopf_text(&d.h)).unwrap();
        let stext = dyntwist::cli::formats::comodule_text(d.base_comodule(), &h.reference);
        let s = Loaded { value: d.base_comodule().clone(), reference: sha256_ref(stext.as_bytes()) };
        let mut full = vec![Cyclo::zero(2); 128];
        full[..32].clone_from_slice(&coeffs);
        let j = TwistElement::new(h.value.clone(), Arc::clone(&s.value), full).unwrap();
        let text = to_canonical(&TwistFile::from_twist(&j, &h.reference, &s.reference));
        let back = load_twist(&text, &h, &s).unwrap();
        prop_assert_eq!(back.coeffs(), j.coeffs());
        prop_assert_eq!(to_canonical(&TwistFile::from_twist(&back, &h.reference, &s.reference)), text);
    }
}

#[test]
fn extraction_is_deterministic() {
    let d = DynamicalDatum::e1().unwrap();
    let a = extract_twist_element(&d).unwrap().twist;
    let b = extract_twist_element(&DynamicalDatum::e1().unwrap())
        .unwrap()
        .twist;
    assert_eq!(a.coeffs(), b.coeffs());
}
