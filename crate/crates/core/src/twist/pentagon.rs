use super::TwistElement;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::rep::ModuleRep;
use crate::report::Report;

/// 𝒥_{X,Y,M} = Σ J¹⊗J²⊗J³ acting on X⊗Y⊗M.
fn twist_operator(j: &TwistElement, x: &ModuleRep, y: &ModuleRep, m: &ModuleRep) -> SparseMatrix {
    let dim = x.dim() * y.dim() * m.dim();
    let o = j.hopf().order();
    let sx: Vec<SparseMatrix> = x.actions().iter().map(SparseMatrix::from_dense).collect();
    let sy: Vec<SparseMatrix> = y.actions().iter().map(SparseMatrix::from_dense).collect();
    let sm: Vec<SparseMatrix> = m.actions().iter().map(SparseMatrix::from_dense).collect();
    let mut out = SparseMatrix::zeros(dim, dim, o);
    for (i, jj, k, c) in j.terms() {
        out.add_scaled(&c, &sx[i].kron(&sy[jj]).kron(&sm[k]));
    }
    out
}

/// 𝒥_{X⊗Y,Z,M}·𝒥_{X,Y,Z⊗M} = 𝒥_{X,Y⊗Z,M}·(id_X⊗𝒥_{Y,Z,M}) on X⊗Y⊗Z⊗M,
/// plus the unit normalizations 𝒥_{1,Y,M} = id = 𝒥_{X,1,M}.
pub fn twisted_pentagon_check(
    j: &TwistElement,
    x: &ModuleRep,
    y: &ModuleRep,
    z: &ModuleRep,
    m: &ModuleRep,
) -> Result<Report> {
    let h = j.hopf();
    let s = j.base();
    for v in [x, y, z] {
        if v.algebra().as_ref() != h.alg().as_ref() {
            return Err(Error::Structural(
                "pentagon legs must be modules over H".into(),
            ));
        }
    }
    if m.algebra().as_ref() != s.alg().as_ref() {
        return Err(Error::Structural(
            "last pentagon leg must be a module over the base".into(),
        ));
    }
    crate::limits::check_dim("pentagon space", x.dim() * y.dim() * z.dim() * m.dim())?;
    let xy = ModuleRep::tensor(h, x, y)?;
    let yz = ModuleRep::tensor(h, y, z)?;
    let zm = ModuleRep::tensor_action(s, z, m)?;
    let lhs = twist_operator(j, &xy, z, m).mul(&twist_operator(j, x, y, &zm));
    let id_x = SparseMatrix::identity(x.dim(), h.order());
    let rhs = twist_operator(j, x, &yz, m).mul(&id_x.kron(&twist_operator(j, y, z, m)));
    let mut r = Report::new();
    r.residual(
        "pentagon: 𝒥_{X⊗Y,Z,M}𝒥_{X,Y,Z⊗M} = 𝒥_{X,Y⊗Z,M}(id⊗𝒥_{Y,Z,M})",
        lhs.diff_count(&rhs),
    );
    let one = ModuleRep::trivial(h);
    let u1 = twist_operator(j, &one, y, m);
    let u2 = twist_operator(j, x, &one, m);
    r.residual(
        "pentagon: 𝒥_{1,Y,M} = id",
        u1.diff_count(&SparseMatrix::identity(u1.rows(), h.order())),
    );
    r.residual(
        "pentagon: 𝒥_{X,1,M} = id",
        u2.diff_count(&SparseMatrix::identity(u2.rows(), h.order())),
    );
    Ok(r)
}
