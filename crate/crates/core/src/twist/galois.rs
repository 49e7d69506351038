use std::sync::Arc;

use super::TwistElement;
use crate::comod::ComoduleAlgebraData;
use crate::error::Result;
use crate::hopf::{AlgebraData, HopfAlgebraData};
use crate::linalg::{axpy, nonzero_count, quotient, vec_kron, vec_sub, zero_vec, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::Cyclo;

/// Sweedler leg and antipode reading for the closed-form can⁻¹.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CanInverseConvention {
    /// β₁⊗β₂ taken from the coproduct of H^{*cop} rather than H*.
    pub cop_legs: bool,
    /// 𝒮 taken as the antipode of H^{*cop}, i.e. the transpose of S⁻¹.
    pub cop_antipode: bool,
}

/// B = H*⊗S with the J-twisted product, as a left H*-comodule algebra
/// α⊗s ↦ α₁⊗α₂⊗s (the flip of the right H^{*cop}-coaction α₂⊗s⊗α₁).
#[derive(Clone, Debug)]
pub struct TwistedGalois {
    pub algebra: Arc<AlgebraData>,
    pub dual: Arc<HopfAlgebraData>,
    pub comodule: Option<Arc<ComoduleAlgebraData>>,
    /// Convention under which the closed-form can⁻¹ inverts can, if any.
    pub convention: Option<CanInverseConvention>,
    pub report: Report,
}

pub fn build_twisted_galois(j: &TwistElement) -> Result<TwistedGalois> {
    let (h, s) = (j.hopf().clone(), j.base().clone());
    let (dh, ds, o) = (h.dim(), s.dim(), h.order());
    let db = dh * ds;
    let dual = Arc::new(h.dual(false)?);
    let hits: Vec<Matrix> = (0..dh)
        .map(|t| h.hit_matrix(&h.alg().basis_vec(t)))
        .collect();
    let hit_of = |x: &[Cyclo]| {
        let mut m = Matrix::zeros(dh, dh, o);
        for (t, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &hits[t]);
            }
        }
        m
    };
    let jterms = j.terms();

    // (α⊗k)(β⊗s) = (J¹⇀α)(J²k₋₁⇀β) ⊗ J³k₀s
    let twisted_product = |x: &[Cyclo], y: &[Cyclo]| -> Vec<Cyclo> {
        let mut out = zero_vec(db, o);
        for (px, cx) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (a, k) = (px / ds, px % ds);
            for (py, cy) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (b, sb) = (py / ds, py % ds);
                let cxy = cx * cy;
                for (i, jj, l, c) in &jterms {
                    let alpha = hits[*i].column(a);
                    for (hp, kp, cp) in s.coaction_of(k) {
                        let mid = h.product(&h.alg().basis_vec(*jj), &h.alg().basis_vec(*hp));
                        let beta = hit_of(&mid).column(b);
                        let left = dual.product(&alpha, &beta);
                        let right = s.alg().product(
                            &s.alg()
                                .product(&s.alg().basis_vec(*l), &s.alg().basis_vec(*kp)),
                            &s.alg().basis_vec(sb),
                        );
                        axpy(&mut out, &(&(&cxy * c) * cp), &vec_kron(&left, &right));
                    }
                }
            }
        }
        out
    };

    let labels = (0..db)
        .map(|p| {
            format!(
                "{}⊗{}",
                dual.alg().labels()[p / ds],
                s.alg().labels()[p % ds]
            )
        })
        .collect();
    let unit = vec_kron(dual.unit(), s.alg().unit());
    let algebra = Arc::new(AlgebraData::from_products(db, o, unit, labels, |p, q| {
        twisted_product(
            &crate::linalg::unit_vec(db, p, o),
            &crate::linalg::unit_vec(db, q, o),
        )
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
    })?);
    let mut report = Report::new();
    report.merge("twisted galois: ", algebra.verify());

    let coaction = (0..db)
        .map(|p| {
            let (a, k) = (p / ds, p % ds);
            dual.comult_of(a)
                .iter()
                .map(|(a1, a2, c)| (*a1, a2 * ds + k, c.clone()))
                .collect()
        })
        .collect();
    let comodule = match ComoduleAlgebraData::new(algebra.clone(), dual.clone(), coaction) {
        Ok(c) => Some(Arc::new(c)),
        Err(e) => {
            report.flag(format!("twisted galois: comodule structure ({e})"), false);
            None
        }
    };
    let mut convention = None;
    if let Some(c) = &comodule {
        report.merge("twisted galois: ", c.verify());
        let base_span: Vec<Vec<Cyclo>> = (0..ds)
            .map(|k| vec_kron(dual.unit(), &s.alg().basis_vec(k)))
            .collect();
        let base = Subspace::span(db, o, &base_span);
        let coinv = c.coinvariants();
        report.flag(
            "twisted galois: coinvariants = ε⊗S",
            coinv.contains_subspace(&base) && base.contains_subspace(&coinv),
        );

        // B⊗_S B with can(x⊗y) = x y₀ ⊗ y₁, y₀⊗y₁ = (β₂⊗s)⊗β₁
        let mut rels = Vec::new();
        for sv in base.vectors() {
            for x in 0..db {
                let ex = crate::linalg::unit_vec(db, x, o);
                let xs = algebra.product(&ex, &sv);
                for y in 0..db {
                    let ey = crate::linalg::unit_vec(db, y, o);
                    rels.push(vec_sub(
                        &vec_kron(&xs, &ey),
                        &vec_kron(&ex, &algebra.product(&sv, &ey)),
                    ));
                }
            }
        }
        let relations = Subspace::span(db * db, o, &rels);
        let (proj, sect) = quotient(db * db, &relations)?;
        let mut full = Matrix::zeros(db * dh, db * db, o);
        for x in 0..db {
            for y in 0..db {
                let (b, sb) = (y / ds, y % ds);
                for (b1, b2, cb) in dual.comult_of(b) {
                    let y0 = crate::linalg::unit_vec(db, b2 * ds + sb, o);
                    let prod = algebra.product(&algebra.basis_vec(x), &y0);
                    for (z, cz) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let e = &mut full[(z * dh + b1, x * db + y)];
                        *e = &*e + &(cz * cb);
                    }
                }
            }
        }
        let well_defined: usize = relations
            .vectors()
            .iter()
            .map(|v| nonzero_count(&full.mul_vec(v)))
            .sum();
        report.residual(
            "twisted galois: can vanishes on the balancing relations",
            well_defined,
        );
        let can = full.mul(&sect);
        report.flag(
            "twisted galois: can is bijective",
            can.rank() == can.cols() && can.rows() == can.cols(),
        );

        let jinv = j.inverse().ok().map(|v| v.to_vec());
        if let Some(jinv) = jinv {
            let inv_terms: Vec<(usize, usize, usize, Cyclo)> = {
                let t = TwistElement::new(h.clone(), s.clone(), jinv)?;
                t.terms()
            };
            let candidates = [
                CanInverseConvention {
                    cop_legs: true,
                    cop_antipode: true,
                },
                CanInverseConvention {
                    cop_legs: false,
                    cop_antipode: true,
                },
                CanInverseConvention {
                    cop_legs: true,
                    cop_antipode: false,
                },
                CanInverseConvention {
                    cop_legs: false,
                    cop_antipode: false,
                },
            ];
            for conv in candidates {
                let formula =
                    closed_form_can_inverse(&h, &dual, &s, &inv_terms, &hits, &proj, conv);
                let ok = can.mul(&formula).is_identity() && formula.mul(&can).is_identity();
                if ok {
                    convention = Some(conv);
                    break;
                }
            }
            report.flag(
                "twisted galois: closed-form can⁻¹ is a two-sided inverse",
                convention.is_some(),
            );
        } else {
            report.flag(
                "twisted galois: closed-form can⁻¹ is a two-sided inverse",
                false,
            );
        }
    }
    Ok(TwistedGalois {
        algebra,
        dual,
        comodule,
        convention,
        report,
    })
}

/// (γ⊗r)⊗β ↦ (J⁻¹⇀(γ𝒮(β₂)) ⊗ 1) ⊗_S ((J⁻²⇀β₁) ⊗ J⁻³r), projected to B⊗_S B.
fn closed_form_can_inverse(
    h: &HopfAlgebraData,
    dual: &HopfAlgebraData,
    s: &ComoduleAlgebraData,
    inv_terms: &[(usize, usize, usize, Cyclo)],
    hits: &[Matrix],
    proj: &Matrix,
    conv: CanInverseConvention,
) -> Matrix {
    let (dh, ds, o) = (h.dim(), s.dim(), h.order());
    let db = dh * ds;
    let antipode = if conv.cop_antipode {
        h.antipode_inverse().transpose()
    } else {
        h.antipode().transpose()
    };
    let mut cols = Vec::with_capacity(db * dh);
    for g in 0..dh {
        for r in 0..ds {
            for b in 0..dh {
                let mut rep = zero_vec(db * db, o);
                for (x1, x2, cb) in dual.comult_of(b) {
                    let (b1, b2) = if conv.cop_legs {
                        (*x2, *x1)
                    } else {
                        (*x1, *x2)
                    };
                    let gs = dual.product(&dual.alg().basis_vec(g), &antipode.column(b2));
                    for (i, jj, l, c) in inv_terms {
                        let left = vec_kron(&hits[*i].mul_vec(&gs), s.alg().unit());
                        let rs = s
                            .alg()
                            .product(&s.alg().basis_vec(*l), &s.alg().basis_vec(r));
                        let right = vec_kron(&hits[*jj].column(b1), &rs);
                        axpy(&mut rep, &(cb * c), &vec_kron(&left, &right));
                    }
                }
                cols.push(proj.mul_vec(&rep));
            }
        }
    }
    Matrix::from_columns(proj.rows(), o, &cols)
}
