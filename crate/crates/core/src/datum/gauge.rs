use super::functor::BlockMatrix;
use super::xi::{extract_twist_element, solve_universal};
use super::DynamicalDatum;
use crate::error::{Error, Result};
use crate::hopf::tensor::tensor_mul;
use crate::linalg::{axpy, vec_kron};
use crate::rep::ModuleRep;
use crate::report::Report;
use crate::scalar::Cyclo;
use crate::twist::{gauge_check, GaugeElement, TwistElement};

#[derive(Clone, Debug)]
pub struct GaugeExtraction {
    pub t: GaugeElement,
    pub twist: TwistElement,
    pub twist_prime: TwistElement,
    pub report: Report,
}

/// Reads φ ∈ M_r(A) off its action on T(A) and returns its inverse blocks.
fn block_inverse(d: &DynamicalDatum, phi: &BlockMatrix) -> Result<BlockMatrix> {
    let a = d.base.small();
    let (r, da, o) = (phi.r, a.dim(), d.h.order());
    let areg = ModuleRep::regular(a.alg().clone());
    let mut m = crate::linalg::Matrix::zeros(r * da, r * da, o);
    for p in 0..r {
        for q in 0..r {
            let blk = areg.act(phi.get(p, q));
            for i in 0..da {
                for j in 0..da {
                    m[(p * da + i, q * da + j)] = blk[(i, j)].clone();
                }
            }
        }
    }
    let inv = m
        .inverse()
        .ok_or_else(|| Error::Validation("φ is not invertible".into()))?;
    let unit = a.unit();
    let mut out = BlockMatrix::zeros(r, da, o);
    for q in 0..r {
        let mut col = crate::linalg::zero_vec(r * da, o);
        col[q * da..(q + 1) * da].clone_from_slice(unit);
        let img = inv.mul_vec(&col);
        for p in 0..r {
            *out.get_mut(p, q) = img[p * da..(p + 1) * da].to_vec();
        }
    }
    Ok(out)
}

/// t ∈ H⊗A from a K-linear natural isomorphism φ: T ⇒ T′ given by φ ∈ M_r(A).
///
/// σ = Δ′(φ)·C_T·(1⊗φ⁻¹) is the image of ξ_T⁻¹(id) under φ, and t = ξ_{T′}(σ).
/// J_T and J_{T′} are extracted independently before the gauge check.
pub fn gauge_from_equivalence(
    d: &DynamicalDatum,
    d2: &DynamicalDatum,
    phi: &BlockMatrix,
) -> Result<GaugeExtraction> {
    if d.k.as_ref() != d2.k.as_ref() || d.base.small() != d2.base.small() || d.h != d2.h {
        return Err(Error::Precondition(
            "both data must share H, A and K".into(),
        ));
    }
    let (r, o) = (d.functor.rank(), d.h.order());
    if phi.r != r || d2.functor.rank() != r {
        return Err(Error::Structural("φ must be an r×r matrix over A".into()));
    }
    let a = d.base.small();
    let prod_a = |x: &[Cyclo], y: &[Cyclo]| a.product(x, y);
    let mut natural = 0;
    for k in 0..d.k.dim() {
        let lhs = phi.mul(d.functor.block(k), prod_a);
        let rhs = d2.functor.block(k).mul(phi, prod_a);
        natural += lhs.sub(&rhs).nonzero_count();
    }
    if natural != 0 {
        return Err(Error::Validation(format!(
            "φ is not K-linear T(V) → T′(V): {natural} nonzero residual entries"
        )));
    }
    let phi_inv = block_inverse(d, phi)?;

    let c = solve_universal(d)?;
    let legs = [d.h.alg().as_ref(), a.alg().as_ref()];
    let prod = |x: &[Cyclo], y: &[Cyclo]| tensor_mul(&legs, x, y);
    let lift = |m: &BlockMatrix, f: &dyn Fn(&[Cyclo]) -> Vec<Cyclo>| BlockMatrix {
        r,
        dim: d.h.dim() * a.dim(),
        entries: m.entries.iter().map(|e| f(e)).collect(),
    };
    let left = lift(phi, &|e| d.base_comodule().coact(e));
    let right = lift(&phi_inv, &|e| vec_kron(d.h.unit(), e));
    let sigma = left.mul(&c, prod).mul(&right, prod);
    let mut t = crate::linalg::zero_vec(d.h.dim() * a.dim(), o);
    for (q, z) in d2.section().iter().enumerate() {
        axpy(
            &mut t,
            &Cyclo::one(o),
            &prod(sigma.get(0, q), &vec_kron(z, a.unit())),
        );
    }
    let t = GaugeElement::new(d.h.clone(), d.base_comodule().clone(), t)?;

    let ex = extract_twist_element(d)?;
    let ex2 = extract_twist_element(d2)?;
    let mut report = Report::new();
    report.merge("T: ", ex.report);
    report.merge("T′: ", ex2.report);
    report.merge("J_T ~ J_{T′}: ", gauge_check(&ex.twist, &ex2.twist, &t)?);
    Ok(GaugeExtraction {
        t,
        twist: ex.twist,
        twist_prime: ex2.twist,
        report,
    })
}

impl DynamicalDatum {
    /// T′ = P T P⁻¹ for a scalar matrix P, sharing K, A and the ξ section.
    pub fn transported(&self, p: &crate::linalg::Matrix) -> Result<DynamicalDatum> {
        let functor = self.functor.transport(p)?;
        let mut d = DynamicalDatum::new(
            format!("{}′", self.name),
            self.base.clone(),
            self.k.clone(),
            functor,
            self.section().to_vec(),
        )?;
        d.monomial = None;
        Ok(d)
    }
}

/// P as an element of M_r(A): P_pq·1_A.
pub fn scalar_blocks(d: &DynamicalDatum, p: &crate::linalg::Matrix) -> BlockMatrix {
    let unit = d.base.small().unit();
    let r = p.rows();
    BlockMatrix {
        r,
        dim: unit.len(),
        entries: (0..r * r)
            .map(|i| unit.iter().map(|u| u * &p[(i / r, i % r)]).collect())
            .collect(),
    }
}
