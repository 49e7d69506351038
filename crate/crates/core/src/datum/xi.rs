//! The adjunction ξ, the universal β = ξ⁻¹(id), I = id⊛id and the twist J = I⁻¹.
//!
//! ξ(f) = π₀∘f∘ι₀ where ι₀(x⊗m) = x⊗u₀⊗m and π₀ reads the u₀-block of
//! T(R(X)⊗M) = 𝕜^r⊗(X⊗M). Naturality makes β an element C ∈ M_r(H⊗A) with
//! β(x⊗u_q⊗m) = Σ_p u_p⊗C_pq·(x⊗m); it is fixed by C·D(k) = E(k)·C for all
//! k ∈ K together with C₀₀ = 1⊗1.

use super::functor::BlockMatrix;
use super::DynamicalDatum;
use crate::error::{Error, Result};
use crate::hopf::tensor::{map_leg, tensor_mul};
use crate::linalg::{axpy, nonzero_count, unit_vec, vec_kron, vec_sub, zero_vec, Matrix};
use crate::rep::{hom_space, HomSpace, ModuleRep};
use crate::report::Report;
use crate::scalar::Cyclo;
use crate::twist::{verify_twist, TwistElement};

/// Product in H⊗A.
fn ha_product(d: &DynamicalDatum) -> impl Fn(&[Cyclo], &[Cyclo]) -> Vec<Cyclo> + '_ {
    move |x, y| tensor_mul(&[d.h.alg().as_ref(), d.base.small().alg().as_ref()], x, y)
}

/// (ι⊗id)Δ_A(a) ∈ H⊗A.
fn delta_prime(d: &DynamicalDatum, a: &[Cyclo]) -> Vec<Cyclo> {
    d.base_comodule().coact(a)
}

/// D(k) = Σ_{δ(k)=h′⊗k′} E_pq⊗(h′⊗a_pq(k′)) and E(k) = Σ E_pq⊗Δ′(a_pq(k)).
fn d_and_e(d: &DynamicalDatum, k: usize) -> (BlockMatrix, BlockMatrix) {
    let (r, dh, da, o) = (
        d.functor.rank(),
        d.h.dim(),
        d.base.small().dim(),
        d.h.order(),
    );
    let mut dm = BlockMatrix::zeros(r, dh * da, o);
    for (hp, kp, c) in d.k.coaction_of(k) {
        let blk = d.functor.block(*kp);
        for p in 0..r {
            for q in 0..r {
                let a = blk.get(p, q);
                if a.iter().any(|x| !x.is_zero()) {
                    axpy(dm.get_mut(p, q), c, &vec_kron(&unit_vec(dh, *hp, o), a));
                }
            }
        }
    }
    let mut em = BlockMatrix::zeros(r, dh * da, o);
    let blk = d.functor.block(k);
    for p in 0..r {
        for q in 0..r {
            let a = blk.get(p, q);
            if a.iter().any(|x| !x.is_zero()) {
                *em.get_mut(p, q) = delta_prime(d, a);
            }
        }
    }
    (dm, em)
}

/// Solves for C; errors if the system is inconsistent or underdetermined.
pub fn solve_universal(d: &DynamicalDatum) -> Result<BlockMatrix> {
    let (r, o) = (d.functor.rank(), d.h.order());
    let w = d.h.dim() * d.base.small().dim();
    let unknowns = r * r * w;
    crate::limits::check_dim("universal β system", unknowns * unknowns * d.k.dim())?;
    let prod = ha_product(d);
    let des: Vec<(BlockMatrix, BlockMatrix)> = (0..d.k.dim()).map(|k| d_and_e(d, k)).collect();
    let rows_per = unknowns;
    let sections: Vec<Vec<Cyclo>> = d
        .section()
        .iter()
        .map(|z| vec_kron(z, d.base.small().unit()))
        .collect();
    let mut cols = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let c = BlockMatrix::from_vec(r, w, &unit_vec(unknowns, u, o));
        let mut col = Vec::with_capacity(rows_per * des.len() + w);
        for (dm, em) in &des {
            col.extend(c.mul(dm, &prod).sub(&em.mul(&c, &prod)).to_vec());
        }
        // normalization rows: Σ_q C_0q·(z_q⊗1)
        let mut norm = zero_vec(w, o);
        for (q, z) in sections.iter().enumerate() {
            axpy(&mut norm, &Cyclo::one(o), &prod(c.get(0, q), z));
        }
        col.extend(norm);
        cols.push(col);
    }
    let m = Matrix::from_columns(rows_per * des.len() + w, o, &cols);
    let mut rhs = zero_vec(rows_per * des.len(), o);
    rhs.extend(d.ha_unit());
    if m.rank() < unknowns {
        return Err(Error::Hypothesis(
            "ξ is not injective: K-linear maps with ξ(β) = id are not unique".into(),
        ));
    }
    let x = m
        .solve(&rhs)
        .ok_or_else(|| Error::Hypothesis("no K-linear β with ξ(β) = id exists".into()))?;
    Ok(BlockMatrix::from_vec(r, w, &x))
}

/// The matrix of β on X⊗T(N) → T(R(X)⊗N), from C.
pub fn beta_matrix(d: &DynamicalDatum, c: &BlockMatrix, x: &ModuleRep, n: &ModuleRep) -> Matrix {
    let (r, dx, dn, o) = (c.r, x.dim(), n.dim(), d.h.order());
    let da = d.base.small().dim();
    let blk = dx * dn;
    let mut out = Matrix::zeros(r * blk, r * blk, o);
    for p in 0..r {
        for q in 0..r {
            let mut acc = Matrix::zeros(blk, blk, o);
            for (t, coef) in c.get(p, q).iter().enumerate() {
                if !coef.is_zero() {
                    acc.add_scaled(coef, &x.action(t / da).kron(n.action(t % da)));
                }
            }
            if acc.is_zero() {
                continue;
            }
            for xi in 0..dx {
                for ni in 0..dn {
                    let row = p * blk + xi * dn + ni;
                    for xj in 0..dx {
                        for nj in 0..dn {
                            out[(row, xj * (r * dn) + q * dn + nj)] =
                                acc[(xi * dn + ni, xj * dn + nj)].clone();
                        }
                    }
                }
            }
        }
    }
    out
}

/// I = Σ_{j,q} (id⊗Δ′)(C₀ⱼ)·(1⊗C_jq)·(Δ(z_q)⊗1) ∈ H⊗H⊗A.
pub fn i_element(d: &DynamicalDatum, c: &BlockMatrix) -> Vec<Cyclo> {
    let (dh, da, o) = (d.h.dim(), d.base.small().dim(), d.h.order());
    let s = d.base_comodule();
    let legs = [
        d.h.alg().as_ref(),
        d.h.alg().as_ref(),
        d.base.small().alg().as_ref(),
    ];
    let mut out = zero_vec(dh * dh * da, o);
    for j in 0..c.r {
        let left = map_leg(c.get(0, j), &[dh, da], 1, &[dh, da], |i| {
            s.coaction_terms(i)
        });
        for (q, z) in d.section().iter().enumerate() {
            let right = vec_kron(d.h.unit(), c.get(j, q));
            let proj = vec_kron(&d.h.comult(z), d.base.small().unit());
            let t = tensor_mul(&legs, &tensor_mul(&legs, &left, &right), &proj);
            axpy(&mut out, &Cyclo::one(o), &t);
        }
    }
    out
}

/// Action of an element of H⊗H⊗A on X⊗Y⊗M.
pub fn act3(
    d: &DynamicalDatum,
    e: &[Cyclo],
    x: &ModuleRep,
    y: &ModuleRep,
    m: &ModuleRep,
) -> Matrix {
    let (dh, da) = (d.h.dim(), d.base.small().dim());
    let dim = x.dim() * y.dim() * m.dim();
    let mut out = Matrix::zeros(dim, dim, d.h.order());
    for (p, c) in e.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (i, j, k) = (p / (dh * da), (p / da) % dh, p % da);
        out.add_scaled(c, &x.action(i).kron(y.action(j)).kron(m.action(k)));
    }
    out
}

/// ξ: Hom_K(X⊗T(V), T(W)) → Hom_A(R(X)⊗V, W), on an intertwiner basis.
#[derive(Clone, Debug)]
pub struct XiSpace {
    pub hom_k: HomSpace,
    pub hom_a: HomSpace,
    /// Columns: ξ of each basis map of `hom_k`, row-major in Hom(R(X)⊗V, W).
    pub xi: Matrix,
    pub lands_in_hom_a: bool,
    pub bijective: bool,
    pub rx_v: ModuleRep,
    iota: Matrix,
    dw: usize,
}

/// ι(x⊗v) = Σ_q z_q·x⊗u_q⊗v, as a (dim X·r·dim V) × (dim X·dim V) matrix.
pub(crate) fn section_matrix(d: &DynamicalDatum, x: &ModuleRep, dv: usize) -> Matrix {
    let (r, dx, o) = (d.functor.rank(), x.dim(), d.h.order());
    let mut out = Matrix::zeros(dx * r * dv, dx * dv, o);
    for (q, z) in d.section().iter().enumerate() {
        let zx = x.act(z);
        for a in 0..dx {
            for b in 0..dx {
                let c = &zx[(a, b)];
                if c.is_zero() {
                    continue;
                }
                for vi in 0..dv {
                    out[(a * (r * dv) + q * dv + vi, b * dv + vi)] = c.clone();
                }
            }
        }
    }
    out
}

/// π₀∘f∘ι for f: X⊗T(V) → T(W).
fn corner(dw: usize, f: &Matrix, iota: &Matrix) -> Matrix {
    f.select_rows(&(0..dw).collect::<Vec<_>>()).mul(iota)
}

pub fn xi_space(
    d: &DynamicalDatum,
    x: &ModuleRep,
    v: &ModuleRep,
    w: &ModuleRep,
) -> Result<XiSpace> {
    let tv = d.functor.apply(v)?;
    let tw = d.functor.apply(w)?;
    let source = ModuleRep::tensor_action(&d.k, x, &tv)?;
    let rx = ModuleRep::restrict(&d.base, x)?;
    let rx_v = ModuleRep::tensor(d.base.small(), &rx, v)?;
    crate::limits::check_dim(
        "Hom_K solve",
        source.dim() * tw.dim() * source.dim() * tw.dim(),
    )?;
    let hom_k = hom_space(&source, &tw)?;
    let hom_a = hom_space(&rx_v, w)?;
    let iota = section_matrix(d, x, v.dim());
    let images: Vec<Vec<Cyclo>> = hom_k
        .basis()
        .iter()
        .map(|f| corner(w.dim(), f, &iota).to_vec())
        .collect();
    let xi = Matrix::from_columns(w.dim() * rx_v.dim(), d.h.order(), &images);
    let lands_in_hom_a = images.iter().all(|im| hom_a.subspace().contains(im));
    let bijective = lands_in_hom_a && xi.rank() == hom_k.dim() && hom_k.dim() == hom_a.dim();
    Ok(XiSpace {
        hom_k,
        hom_a,
        xi,
        lands_in_hom_a,
        bijective,
        rx_v,
        iota,
        dw: w.dim(),
    })
}

impl XiSpace {
    pub fn forward(&self, f: &Matrix) -> Matrix {
        corner(self.dw, f, &self.iota)
    }

    /// ξ⁻¹(f′); None when f′ is not in the image.
    pub fn inverse(&self, f: &Matrix) -> Option<Matrix> {
        self.xi.solve(f.entries()).map(|c| self.hom_k.element(&c))
    }
}

pub fn xi_forward(
    d: &DynamicalDatum,
    x: &ModuleRep,
    v: &ModuleRep,
    w: &ModuleRep,
    f: &Matrix,
) -> Result<Matrix> {
    let sp = xi_space(d, x, v, w)?;
    if !sp.hom_k.contains(f) {
        return Err(Error::Precondition(
            "ξ is applied to a map that is not K-linear".into(),
        ));
    }
    Ok(sp.forward(f))
}

pub fn xi_inverse(
    d: &DynamicalDatum,
    x: &ModuleRep,
    v: &ModuleRep,
    w: &ModuleRep,
    f: &Matrix,
) -> Result<Matrix> {
    let sp = xi_space(d, x, v, w)?;
    if !sp.hom_a.contains(f) {
        return Err(Error::Precondition(
            "ξ⁻¹ is applied to a map that is not A-linear".into(),
        ));
    }
    sp.inverse(f)
        .ok_or_else(|| Error::Hypothesis("ξ is not surjective on this triple".into()))
}

/// ξ⁻¹(id) on X⊗T(M) → T(R(X)⊗M), together with its space.
pub(crate) fn beta_solve(
    d: &DynamicalDatum,
    x: &ModuleRep,
    m: &ModuleRep,
) -> Result<(XiSpace, Option<Matrix>)> {
    let rx = ModuleRep::restrict(&d.base, x)?;
    let rx_m = ModuleRep::tensor(d.base.small(), &rx, m)?;
    let sp = xi_space(d, x, m, &rx_m)?;
    let beta = sp.inverse(&Matrix::identity(rx_m.dim(), d.h.order()));
    Ok((sp, beta))
}

/// I_{X,Y,M} = ξ(β_{X,Y⊗M}∘(id_X⊗β_{Y,M})) from two independent solves.
pub fn compute_i_modules(
    d: &DynamicalDatum,
    x: &ModuleRep,
    y: &ModuleRep,
    m: &ModuleRep,
) -> Result<Matrix> {
    let (inner, b2) = beta_solve(d, y, m)?;
    let b2 = b2.ok_or_else(|| Error::Hypothesis("ξ⁻¹(id) does not exist on (Y, M)".into()))?;
    let (_, b1) = beta_solve(d, x, &inner.rx_v)?;
    let b1 = b1.ok_or_else(|| Error::Hypothesis("ξ⁻¹(id) does not exist on (X, Y⊗M)".into()))?;
    // X⊗(Y⊗T(M)) and (X⊗Y)⊗T(M) share the flat index
    let composite = b1.mul(&Matrix::identity(x.dim(), d.h.order()).kron(&b2));
    let xy = ModuleRep::tensor(&d.h, x, y)?;
    let w = xy.dim() * m.dim();
    Ok(corner(w, &composite, &section_matrix(d, &xy, m.dim())))
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub c: BlockMatrix,
    /// I ∈ H⊗H⊗A.
    pub i: Vec<Cyclo>,
    pub twist: TwistElement,
    pub report: Report,
}

/// Runs the pipeline; errors on a failed hypothesis, otherwise returns the
/// twist with every certificate and axiom check in `report`.
pub fn extract_twist_element(d: &DynamicalDatum) -> Result<Extraction> {
    let o = d.h.order();
    let mut report = Report::new();
    let c = solve_universal(d)?;
    report.flag("extraction: ξ⁻¹(id) is unique on regular modules", true);
    let i = i_element(d, &c);

    // regular evaluation at 1⊗1⊗1
    let hreg = ModuleRep::regular(d.h.alg().clone());
    let areg = ModuleRep::regular(d.base.small().alg().clone());
    let beta_reg = beta_matrix(d, &c, &hreg, &areg);
    if beta_reg.rank() < beta_reg.rows() {
        return Err(Error::Hypothesis(
            "ξ⁻¹(id) is singular on (X, M) = (H, A)".into(),
        ));
    }
    report.flag(
        format!(
            "extraction: ξ⁻¹(id) invertible on (H, A), rank {}",
            beta_reg.rows()
        ),
        true,
    );
    let (dh, da) = (d.h.dim(), d.base.small().dim());
    let ya = ModuleRep::tensor(d.base.small(), &ModuleRep::restrict(&d.base, &hreg)?, &areg)?;
    let beta_outer = beta_matrix(d, &c, &hreg, &ya);
    let one3 = vec_kron(&vec_kron(d.h.unit(), d.h.unit()), d.base.small().unit());
    let hh = ModuleRep::tensor(&d.h, &hreg, &hreg)?;
    let v = section_matrix(d, &hh, da).mul_vec(&one3);
    let inner = Matrix::identity(dh, o).kron(&beta_reg);
    let out = beta_outer.mul_vec(&inner.mul_vec(&v));
    report.residual(
        "extraction: I_{H,H,A}(1⊗1⊗1) equals the element",
        nonzero_count(&vec_sub(&out[..dh * dh * da], &i)),
    );

    // certificate on small modules
    let hs = d.h_battery()?;
    let as_ = d.a_battery();
    for (xn, x) in &hs {
        for (mn, m) in &as_ {
            let (sol, beta) = beta_solve(d, x, m)?;
            report.flag(
                format!("extraction: ξ bijective on ({xn}, {mn})"),
                sol.bijective,
            );
            let elem = beta_matrix(d, &c, x, m);
            if elem.rank() < elem.rows() {
                return Err(Error::Hypothesis(format!(
                    "ξ⁻¹(id) is singular on ({xn}, {mn})"
                )));
            }
            report.flag(
                format!("extraction: ξ⁻¹(id) invertible on ({xn}, {mn})"),
                true,
            );
            report.flag(
                format!("extraction: element β matches solved ξ⁻¹(id) on ({xn}, {mn})"),
                beta.as_ref() == Some(&elem),
            );
        }
    }
    let trivial = ModuleRep::trivial(&d.h);
    for (xn, x) in &hs {
        for (yn, y) in &hs {
            for (mn, m) in &as_ {
                if x.dim() * y.dim() * m.dim() * d.functor.rank() > 16 {
                    continue;
                }
                let im = compute_i_modules(d, x, y, m)?;
                let diff = im.sub(&act3(d, &i, x, y, m)).nonzero_count();
                report.residual(
                    format!("extraction: I_{{{xn},{yn},{mn}}} is multiplication by the element"),
                    diff,
                );
            }
        }
        if xn == "1" {
            continue;
        }
        for (mn, m) in &as_ {
            let right = compute_i_modules(d, x, &trivial, m)?;
            let left = compute_i_modules(d, &trivial, x, m)?;
            report.flag(
                format!("unit law: I_{{{xn},1,{mn}}} = id"),
                right.is_identity(),
            );
            report.flag(
                format!("unit law: I_{{1,{xn},{mn}}} = id"),
                left.is_identity(),
            );
        }
    }
    let dims = [dh, dh, da];
    let eps = |leg| map_leg(&i, &dims, leg, &[], |t| d.h.counit_terms(t));
    let one_ha = d.ha_unit();
    report.residual(
        "unit law: (ε⊗id⊗id)(I) = 1",
        nonzero_count(&vec_sub(&eps(0), &one_ha)),
    );
    report.residual(
        "unit law: (id⊗ε⊗id)(I) = 1",
        nonzero_count(&vec_sub(&eps(1), &one_ha)),
    );

    let s = d.base_comodule().clone();
    let i_elem = TwistElement::new(d.h.clone(), s.clone(), i.clone())?;
    let jv = i_elem
        .inverse()
        .map_err(|_| Error::Hypothesis("I is not invertible in H⊗H⊗A".into()))?
        .to_vec();
    let twist = TwistElement::new(d.h.clone(), s, jv)?;
    report.merge("", verify_twist(&twist));
    Ok(Extraction {
        c,
        i,
        twist,
        report,
    })
}
