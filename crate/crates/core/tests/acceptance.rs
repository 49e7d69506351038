//! Acceptance suite: one line per criterion, PASS or FAIL with the reason.
//! Exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dyntwist::cli::formats::{load_comodule, load_hopf, load_twist};
use dyntwist::comod::{canonical_map, ComoduleAlgebraData, Verdict};
use dyntwist::datum::{
    compute_i_modules, extract_twist_element, gauge_from_equivalence, phi_psi, scalar_blocks,
    DynamicalDatum,
};
use dyntwist::linalg::{Matrix, Subspace};
use dyntwist::rep::{theta_maps, ModuleRep};
use dyntwist::report::{Report, Status};
use dyntwist::scalar::Cyclo;
use dyntwist::stab::{stab_hom_realized, yan_zhu_stab};
use dyntwist::twist::{build_twisted_galois, twisted_pentagon_check, verify_twist, TwistElement};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(what: &str, r: &Report) -> Outcome {
    ensure(r.all_pass(), || {
        format!(
            "{what}:\n{}",
            Report {
                checks: r.failures().into_iter().cloned().collect()
            }
        )
    })
}

fn passed(r: &Report, name: &str) -> Outcome {
    match r.get(name) {
        Some(c) if c.status == Status::Pass && c.residual_nonzero_count == 0 => Ok(()),
        Some(c) => Err(format!(
            "{name}: {:?} with {} nonzero residual entries",
            c.status, c.residual_nonzero_count
        )),
        None => Err(format!("{name}: check missing")),
    }
}

fn within(what: &str, t: Duration, cap: Duration) -> Outcome {
    ensure(t < cap, || format!("{what} took {t:?}, limit {cap:?}"))
}

fn bin(args: &[&str]) -> (i32, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_dyntwist"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), start.elapsed())
}

fn read(p: PathBuf) -> String {
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn path(dir: &Path, f: &str) -> String {
    dir.join(f).display().to_string()
}

fn e0() -> DynamicalDatum {
    DynamicalDatum::e0().expect("E0 builds")
}

fn e1() -> DynamicalDatum {
    DynamicalDatum::e1().expect("E1 builds")
}

fn hopf_construction() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    for (name, prefix, dim) in [("E0", "e0", 4), ("E1", "e1", 8)] {
        let (code, t) = bin(&["example", name, "--out-dir", dir.path().to_str().unwrap()]);
        ensure(code == 0, || format!("example {name} exited with {code}"))?;
        within(&format!("example {name}"), t, Duration::from_secs(1))?;
        let h = load_hopf(&read(dir.path().join(format!("{prefix}_hopf.json"))))
            .map_err(|e| e.to_string())?;
        ensure(h.value.dim() == dim, || {
            format!("{name}: dim {} ≠ {dim}", h.value.dim())
        })?;
        let r = h.value.verify();
        all_pass(name, &r)?;
        ensure(
            r.checks.iter().all(|c| c.residual_nonzero_count == 0),
            || "nonzero residual".into(),
        )?;
        let (code, _) = bin(&[
            "verify",
            "hopf",
            &path(dir.path(), &format!("{prefix}_hopf.json")),
        ]);
        ensure(code == 0, || {
            format!("verify hopf on {name} exited with {code}")
        })?;
    }
    Ok(())
}

fn comodule_galois() -> Outcome {
    let start = Instant::now();
    for d in [e0(), e1()] {
        all_pass(&format!("{}: K axioms", d.name), &d.k.verify())?;
        let c = d.k.coinvariants().dim();
        ensure(c == 1, || {
            format!("{}: coinvariants have dimension {c}", d.name)
        })?;
        let m = d.monomial.as_ref().unwrap();
        let kc = Arc::new(d.k.corestrict(&m.galois_base).map_err(|e| e.to_string())?);
        let one = Subspace::span(d.k.dim(), d.k.order(), &[d.k.alg().unit().to_vec()]);
        let can = canonical_map(&kc, &one).map_err(|e| e.to_string())?;
        ensure(can.is_bijective(), || {
            format!("{}: can is not bijective", d.name)
        })?;
        let r = can.verify();
        passed(&r, "galois: can⁻¹·can = id")?;
        passed(&r, "galois: can·can⁻¹ = id")?;
        all_pass(&format!("{}: canonical map", d.name), &r)?;
    }
    within(
        "comodule/Galois checks",
        start.elapsed(),
        Duration::from_secs(5),
    )
}

fn simplicity() -> Outcome {
    for d in [e0(), e1()] {
        let c = d.k.is_h_simple().map_err(|e| e.to_string())?;
        ensure(c.verdict == Verdict::SimpleCertified, || {
            format!("{}: {:?} ({})", d.name, c.verdict, c.reason)
        })?;
    }
    let d = e1();
    let triv =
        ComoduleAlgebraData::trivial(d.k.alg().clone(), d.h.clone()).map_err(|e| e.to_string())?;
    let c = triv.is_h_simple().map_err(|e| e.to_string())?;
    ensure(c.verdict == Verdict::NotSimpleCertified, || {
        format!("trivial coaction: {:?}", c.verdict)
    })?;
    let w = c.witness.ok_or("no witness")?;
    ensure(w.dim() > 0 && w.dim() < triv.dim(), || {
        format!("witness of dimension {}", w.dim())
    })?;
    all_pass(
        "witness is a costable ideal",
        &triv.check_costable_ideal(&w),
    )
}

fn stabilizer_dimension() -> Outcome {
    let d = e1();
    let tv = d
        .functor
        .apply(&ModuleRep::trivial(d.base.small()))
        .map_err(|e| e.to_string())?;
    let (yz, r) = yan_zhu_stab(&d.k, &tv, &tv).map_err(|e| e.to_string())?;
    all_pass("Yan–Zhu realization", &r)?;
    let hom = stab_hom_realized(&d.k, &tv, &tv).map_err(|e| e.to_string())?;
    let expected = tv.dim() * tv.dim() * d.h.dim() / d.k.dim();
    ensure(expected == 4, || {
        format!("(2·2·8)/8 evaluates to {expected}")
    })?;
    ensure(yz.dim() == 4, || {
        format!("intersection realization has dimension {}", yz.dim())
    })?;
    ensure(hom.dim() == 4, || {
        format!("intertwiner realization has dimension {}", hom.dim())
    })
}

fn theta_pair() -> Outcome {
    let d = e1();
    let a = d.base.small();
    for (name, v) in [
        ("trivial", ModuleRep::trivial(a)),
        ("regular", ModuleRep::regular(a.alg().clone())),
    ] {
        let t = theta_maps(&d.base, &v).map_err(|e| e.to_string())?;
        for check in [
            "theta: θ̃∘θ = id",
            "theta: θ∘θ̃ = id",
            "theta: θ is H-linear",
            "theta: θ̃ is H-linear",
        ] {
            passed(&t.report, check).map_err(|e| format!("V = {name}: {e}"))?;
        }
    }
    Ok(())
}

fn phi_psi_inverse() -> Outcome {
    for d in [e0(), e1()] {
        let a = d.base.small();
        let mut mods = vec![("trivial", ModuleRep::trivial(a))];
        if a.dim() == 2 {
            let sign = ModuleRep::one_dimensional(
                a.alg().clone(),
                &[Cyclo::one(2), Cyclo::from_int(2, -1)],
            )
            .map_err(|e| e.to_string())?;
            mods.push(("sign", sign));
        }
        for (vn, v) in &mods {
            for (wn, w) in &mods {
                let p = phi_psi(&d, v, w).map_err(|e| format!("{} ({vn}, {wn}): {e}", d.name))?;
                passed(&p.report, "phi/psi: ψ∘φ = id")
                    .map_err(|e| format!("{} ({vn}, {wn}): {e}", d.name))?;
                passed(&p.report, "phi/psi: φ∘ψ = id")
                    .map_err(|e| format!("{} ({vn}, {wn}): {e}", d.name))?;
            }
        }
    }
    Ok(())
}

fn pipeline_end_to_end() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for (name, prefix) in [("E0", "e0"), ("E1", "e1")] {
        let (code, _) = bin(&["example", name, "--out-dir", out]);
        ensure(code == 0, || format!("example {name} exited with {code}"))?;
        let (code, t) = bin(&[
            "compute-twist",
            &path(dir.path(), &format!("{prefix}_datum.json")),
            "--out-dir",
            out,
        ]);
        ensure(code == 0, || {
            format!("compute-twist {name} exited with {code}")
        })?;
        within(&format!("compute-twist {name}"), t, Duration::from_secs(60))?;

        // independent reload and verification
        let h = load_hopf(&read(dir.path().join(format!("{prefix}_hopf.json"))))
            .map_err(|e| e.to_string())?;
        let s = load_comodule(&read(dir.path().join(format!("{prefix}_base.json"))), &h)
            .map_err(|e| e.to_string())?;
        let j = load_twist(
            &read(dir.path().join(format!("{prefix}_twist.json"))),
            &h,
            &s,
        )
        .map_err(|e| e.to_string())?;
        let r = verify_twist(&j);
        for check in [
            "twist: J is invertible",
            "twist: dynt0 (J commutes with δ²(S))",
            "twist: dynt1 (shifted cocycle)",
            "twist: dynt2 (ε⊗id⊗id)J = 1",
            "twist: dynt2 (id⊗ε⊗id)J = 1",
        ] {
            passed(&r, check).map_err(|e| format!("{name}: {e}"))?;
        }
        if name == "E1" {
            ensure(j.coeffs().len() == 128, || {
                format!("E1 twist has {} coefficients", j.coeffs().len())
            })?;
        } else {
            passed(&r, "twist: 2-cocycle (trivial base)")?;
        }
    }
    Ok(())
}

fn theorem_consequences() -> Outcome {
    for d in [e0(), e1()] {
        let ex = extract_twist_element(&d).map_err(|e| e.to_string())?;
        all_pass(&format!("{}: extraction", d.name), &ex.report)?;
        let invertibility: Vec<_> = ex
            .report
            .checks
            .iter()
            .filter(|c| c.name.contains("invertible") || c.name.contains("bijective"))
            .collect();
        ensure(invertibility.len() >= 2, || {
            format!(
                "{}: only {} invertibility checks",
                d.name,
                invertibility.len()
            )
        })?;

        let triv = ModuleRep::trivial(&d.h);
        let mut xs = d.h_battery().map_err(|e| e.to_string())?;
        xs.push(("H".into(), ModuleRep::regular(d.h.alg().clone())));
        for (xn, x) in &xs {
            for (mn, m) in d.a_battery() {
                let left = compute_i_modules(&d, x, &triv, &m).map_err(|e| e.to_string())?;
                let right = compute_i_modules(&d, &triv, x, &m).map_err(|e| e.to_string())?;
                ensure(left.is_identity(), || {
                    format!("{}: I_{{{xn},1}} ≠ id on M = {mn}", d.name)
                })?;
                ensure(right.is_identity(), || {
                    format!("{}: I_{{1,{xn}}} ≠ id on M = {mn}", d.name)
                })?;
            }
        }
    }
    let d = e1();
    let j = extract_twist_element(&d).map_err(|e| e.to_string())?.twist;
    let hreg = ModuleRep::regular(d.h.alg().clone());
    let areg = ModuleRep::regular(d.base.small().alg().clone());
    let r = twisted_pentagon_check(&j, &hreg, &hreg, &hreg, &areg).map_err(|e| e.to_string())?;
    all_pass("pentagon on (H, H, H, A)", &r)
}

fn twisted_galois_oracle() -> Outcome {
    let d = e1();
    let j = extract_twist_element(&d).map_err(|e| e.to_string())?.twist;
    let tg = build_twisted_galois(&j).map_err(|e| e.to_string())?;
    for check in [
        "twisted galois: algebra: associativity",
        "twisted galois: comodule: coassociativity",
        "twisted galois: comodule: coaction is multiplicative",
        "twisted galois: coinvariants = ε⊗S",
        "twisted galois: can is bijective",
    ] {
        passed(&tg.report, check)?;
    }
    all_pass("twisted Galois", &tg.report)?;

    // perturb one coefficient of the part of J that is not 1⊗1⊗1
    let mut coeffs = j.coeffs().to_vec();
    let p = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !c.is_zero())
        .map(|(p, _)| p)
        .ok_or("J = 1⊗1⊗1")?;
    coeffs[p] = &coeffs[p] * &Cyclo::from_int(2, 3);
    let bad =
        TwistElement::new(j.hopf().clone(), j.base().clone(), coeffs).map_err(|e| e.to_string())?;
    ensure(
        !verify_twist(&bad).passed("twist: dynt1 (shifted cocycle)"),
        || "corrupted twist satisfies dynt1".into(),
    )?;
    let tg = build_twisted_galois(&bad).map_err(|e| e.to_string())?;
    ensure(
        !tg.report.passed("twisted galois: algebra: associativity"),
        || "corrupted twist still gives an associative product".into(),
    )
}

fn gauge_invariance() -> Outcome {
    let d = e1();
    let id = gauge_from_equivalence(&d, &d, &scalar_blocks(&d, &Matrix::identity(2, 2)))
        .map_err(|e| e.to_string())?;
    ensure(id.t.is_identity(), || "φ = id does not give t = 1⊗1".into())?;
    all_pass("φ = id", &id.report)?;
    let two = Matrix::scalar(2, &Cyclo::from_int(2, 2));
    let d2 = d.transported(&two).map_err(|e| e.to_string())?;
    let g = gauge_from_equivalence(&d, &d2, &scalar_blocks(&d, &two)).map_err(|e| e.to_string())?;
    passed(
        &g.report,
        "J_T ~ J_{T′}: gauge: (Δ⊗id)(t)J = J′(1⊗t)(id⊗δ)(t)",
    )?;
    all_pass("φ = 2·id", &g.report)
}

fn determinism() -> Outcome {
    let mut runs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap().to_string();
        let (code, _) = bin(&["example", "E1", "--out-dir", &out]);
        ensure(code == 0, || "example E1 failed".into())?;
        let (code, _) = bin(&[
            "compute-twist",
            &path(dir.path(), "e1_datum.json"),
            "--out-dir",
            &out,
        ]);
        ensure(code == 0, || "compute-twist E1 failed".into())?;
        let files: Vec<Vec<u8>> = [
            "e1_hopf.json",
            "e1_base.json",
            "e1_comodule.json",
            "e1_datum.json",
            "e1_twist.json",
        ]
        .iter()
        .map(|f| std::fs::read(dir.path().join(f)).unwrap())
        .collect();
        runs.push(files);
    }
    ensure(runs[0] == runs[1], || "outputs differ between runs".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "Hopf construction: E0 and E1 are Hopf of dims 4 and 8",
            hopf_construction,
        ),
        (
            "Comodule/Galois: K axioms, trivial coinvariants, can bijective with verified inverse",
            comodule_galois,
        ),
        (
            "Simplicity: certified simple, and a witnessed counterexample",
            simplicity,
        ),
        (
            "Stabilizer dimension 4 in both realizations on E1",
            stabilizer_dimension,
        ),
        ("θ and θ̃ are inverse H-linear maps on E1", theta_pair),
        ("φ/ψ are mutually inverse on E0 and E1", phi_psi_inverse),
        (
            "Pipeline end to end with independent verification",
            pipeline_end_to_end,
        ),
        (
            "Unit laws, ξ⁻¹(id) invertibility and twisted pentagon",
            theorem_consequences,
        ),
        (
            "Twisted Galois oracle and corrupted-twist failure",
            twisted_galois_oracle,
        ),
        (
            "Gauge invariance under φ = 2·id and φ = id",
            gauge_invariance,
        ),
        ("Determinism of the E1 pipeline", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS [{:>2}] {name} ({:.2?})", i + 1, start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {e}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
