//! H-simplicity as a tri-state certificate.
//!
//! Costable ideals are the submodules of K under the operator algebra 𝒪
//! generated by left/right multiplications and the slices (α⊗id)δ. In
//! characteristic zero the radical of (a, b) ↦ tr(ab) on 𝒪 is J(𝒪); when it
//! vanishes, K is simple over 𝒪 iff the commutant End_𝒪(K) is a division
//! algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::ComoduleAlgebraData;
use crate::error::{Error, Result};
use crate::linalg::{common_kernel, Echelon, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::{euler_phi, Cyclo, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    SimpleCertified,
    NotSimpleCertified,
    Inconclusive,
}

/// Data backing a `SimpleCertified` verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleCertificate {
    pub operator_algebra_dim: usize,
    pub commutant_dim: usize,
    /// Minimal polynomial of a primitive commutant element, constant term first.
    pub min_poly: Vec<Cyclo>,
}

#[derive(Clone, Debug)]
pub struct SimplicityCertificate {
    pub verdict: Verdict,
    /// Proper costable ideal; present exactly for `NotSimpleCertified`.
    pub witness: Option<Subspace>,
    pub certificate: Option<SimpleCertificate>,
    pub reason: String,
}

// deterministic combinations tried when looking for a primitive element
const PRIMITIVE_TRIALS: i64 = 12;
// rational-root search gives up above this coefficient size
const ROOT_SEARCH_CAP: i64 = 1_000_000;

pub(super) fn certify(k: &ComoduleAlgebraData) -> Result<SimplicityCertificate> {
    let d = k.dim();
    let order = k.order();
    let gens = k.ideal_operators();
    let ops = operator_algebra(&gens, d, order);

    // J(𝒪)·K is a proper nonzero submodule whenever J(𝒪) ≠ 0
    let rad = trace_radical(&ops, order);
    if !rad.is_empty() {
        let imgs: Vec<Vec<Cyclo>> = rad.iter().flat_map(Matrix::columns).collect();
        let w = Subspace::span(d, order, &imgs);
        return witness(k, w, "radical of the operator algebra is nonzero");
    }

    let comm = commutant(&gens, d, order);
    if comm.len() == 1 {
        return Ok(simple(
            ops.len(),
            1,
            vec![-Cyclo::one(order), Cyclo::one(order)],
        ));
    }
    let crad = trace_radical(&comm, order);
    if let Some(n) = crad.first() {
        // n is nilpotent and commutes with 𝒪, so ker n is a submodule
        return witness(k, n.kernel(), "commutant has a nilpotent element");
    }

    let commutative = comm
        .iter()
        .all(|a| comm.iter().all(|b| a.mul(b) == b.mul(a)));
    let mut candidates: Vec<Matrix> = comm.clone();
    for t in 1..=PRIMITIVE_TRIALS {
        let mut c = Matrix::zeros(d, d, order);
        for (i, b) in comm.iter().enumerate() {
            let coeff = (i as i64 + 1).pow(t as u32 % 4 + 1) + t;
            c.add_scaled(&Cyclo::from_int(order, coeff), b);
        }
        candidates.push(c);
    }
    for c in &candidates {
        let mp = min_poly(c);
        if let Some(r) = rational_root(&mp) {
            let shifted = c.sub(&Matrix::scalar(d, &Cyclo::from_rational(order, r)));
            if !shifted.is_zero() {
                return witness(
                    k,
                    shifted.kernel(),
                    "commutant element has a rational eigenvalue",
                );
            }
        }
        if commutative && mp.len() - 1 == comm.len() {
            if certified_irreducible(&mp, order) {
                return Ok(simple(ops.len(), comm.len(), mp));
            }
            return Ok(inconclusive(format!(
                "primitive commutant element found but its degree-{} minimal polynomial could not be certified irreducible",
                mp.len() - 1
            )));
        }
    }
    Ok(inconclusive(if commutative {
        "no primitive element of the commutant found in the bounded search".into()
    } else {
        "commutant is noncommutative and no zero divisor was found".into()
    }))
}

fn simple(ops: usize, comm: usize, min_poly: Vec<Cyclo>) -> SimplicityCertificate {
    SimplicityCertificate {
        verdict: Verdict::SimpleCertified,
        witness: None,
        certificate: Some(SimpleCertificate {
            operator_algebra_dim: ops,
            commutant_dim: comm,
            min_poly,
        }),
        reason: "operator algebra is semisimple and its commutant is a field".into(),
    }
}

fn inconclusive(reason: String) -> SimplicityCertificate {
    SimplicityCertificate {
        verdict: Verdict::Inconclusive,
        witness: None,
        certificate: None,
        reason,
    }
}

fn witness(k: &ComoduleAlgebraData, w: Subspace, why: &str) -> Result<SimplicityCertificate> {
    let report: Report = k.check_costable_ideal(&w);
    if !report.all_pass() {
        return Err(Error::Consistency(format!(
            "extracted ideal failed its own checks ({why}):\n{report}"
        )));
    }
    Ok(SimplicityCertificate {
        verdict: Verdict::NotSimpleCertified,
        witness: Some(w),
        certificate: None,
        reason: why.into(),
    })
}

/// Basis of the unital algebra generated by `gens` inside End(𝕜^d).
fn operator_algebra(gens: &[Matrix], d: usize, order: u32) -> Vec<Matrix> {
    let mut ech = Echelon::new(d * d, order);
    let mut basis = Vec::new();
    let id = Matrix::identity(d, order);
    ech.insert(&id.to_vec());
    basis.push(id);
    let mut next = 0;
    // words grow by left multiplication with generators until the span is stable
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in gens {
            let p = g.mul(&b);
            if ech.insert(&p.to_vec()) {
                basis.push(p);
            }
        }
    }
    basis
}

/// Elements a of span(basis) with tr(ab) = 0 for every b.
fn trace_radical(basis: &[Matrix], order: u32) -> Vec<Matrix> {
    let m = basis.len();
    let gram = Matrix::from_fn(m, m, order, |i, j| basis[i].mul(&basis[j]).trace());
    gram.kernel()
        .vectors()
        .into_iter()
        .map(|c| combine(basis, &c))
        .collect()
}

fn combine(basis: &[Matrix], c: &[Cyclo]) -> Matrix {
    let mut acc = Matrix::zeros(basis[0].rows(), basis[0].cols(), basis[0].order());
    for (b, x) in basis.iter().zip(c) {
        if !x.is_zero() {
            acc.add_scaled(x, b);
        }
    }
    acc
}

/// Basis of {c : cg = gc for all generators}; unknown c[i][j] at i·d + j.
fn commutant(gens: &[Matrix], d: usize, order: u32) -> Vec<Matrix> {
    let id = Matrix::identity(d, order);
    let blocks = gens
        .iter()
        .map(|g| id.kron(&g.transpose()).sub(&g.kron(&id)));
    common_kernel(d * d, order, blocks)
        .vectors()
        .into_iter()
        .map(|v| Matrix::from_vec(d, d, order, v))
        .collect()
}

/// Monic minimal polynomial, constant term first.
fn min_poly(c: &Matrix) -> Vec<Cyclo> {
    let order = c.order();
    let mut powers = vec![Matrix::identity(c.rows(), order)];
    let mut ech = Echelon::new(c.rows() * c.cols(), order);
    ech.insert(&powers[0].to_vec());
    loop {
        let next = powers.last().expect("nonempty").mul(c);
        if !ech.insert(&next.to_vec()) {
            let cols: Vec<Vec<Cyclo>> = powers.iter().map(Matrix::to_vec).collect();
            let m = Matrix::from_columns(c.rows() * c.cols(), order, &cols);
            let a = m
                .solve(&next.to_vec())
                .expect("dependent power lies in the span");
            let mut poly: Vec<Cyclo> = a.iter().map(|x| -x).collect();
            poly.push(Cyclo::one(order));
            return poly;
        }
        powers.push(next);
    }
}

fn rational_coeffs(p: &[Cyclo]) -> Option<Vec<Rational>> {
    p.iter().map(|c| c.as_rational().cloned()).collect()
}

/// Some rational root of a polynomial with rational coefficients, if any.
fn rational_root(p: &[Cyclo]) -> Option<Rational> {
    let q = rational_coeffs(p)?;
    let den = q.iter().fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()));
    let ints: Vec<BigInt> = q.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    // a zero constant term means 0 is a root
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let a0 = ints[0].abs().to_i64().filter(|&x| x <= ROOT_SEARCH_CAP)?;
    let an = ints
        .last()?
        .abs()
        .to_i64()
        .filter(|&x| x <= ROOT_SEARCH_CAP)?;
    for pnum in divisors(a0) {
        for qden in divisors(an) {
            for s in [1, -1] {
                let r = Rational::new(s * pnum, qden).ok()?;
                if eval(&q, &r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
}

/// Degree 1, or degree ≤ 3 over ℚ itself with no rational root.
fn certified_irreducible(p: &[Cyclo], order: u32) -> bool {
    let deg = p.len() - 1;
    if deg == 1 {
        return true;
    }
    euler_phi(order) == 1
        && (2..=3).contains(&deg)
        && rational_coeffs(p).is_some()
        && rational_root(p).is_none()
}
