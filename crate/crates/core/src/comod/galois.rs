use std::sync::Arc;

use super::ComoduleAlgebraData;
use crate::error::{Error, Result};
use crate::linalg::{nonzero_count, quotient, vec_kron, vec_sub, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::Cyclo;

/// can: K⊗_R K → A⊗K, k⊗s ↦ k₋₁⊗k₀s, on the quotient of K⊗K by kr⊗s − k⊗rs.
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    k: Arc<ComoduleAlgebraData>,
    relations: Subspace,
    proj: Matrix,
    sect: Matrix,
    /// can on the full K⊗K.
    full: Matrix,
    can: Matrix,
    can_inv: Option<Matrix>,
}

pub fn canonical_map(k: &Arc<ComoduleAlgebraData>, r: &Subspace) -> Result<CanonicalMap> {
    let d = k.dim();
    let order = k.order();
    if r.ambient_dim() != d {
        return Err(Error::Structural(
            "coinvariant subspace lives in the wrong space".into(),
        ));
    }
    if !k.coinvariants().contains_subspace(r) {
        return Err(Error::Precondition(
            "R is not contained in the coinvariants".into(),
        ));
    }
    let alg = k.alg();
    let mut rels = Vec::new();
    for rv in r.vectors() {
        for i in 0..d {
            let ki = alg.basis_vec(i);
            let kr = alg.product(&ki, &rv);
            for j in 0..d {
                let sj = alg.basis_vec(j);
                let rs = alg.product(&rv, &sj);
                rels.push(vec_sub(&vec_kron(&kr, &sj), &vec_kron(&ki, &rs)));
            }
        }
    }
    let relations = Subspace::span(d * d, order, &rels);
    let (proj, sect) = quotient(d * d, &relations)?;

    let da = k.over().dim();
    let mut full = Matrix::zeros(da * d, d * d, order);
    for i in 0..d {
        for j in 0..d {
            let sj = alg.basis_vec(j);
            for (a, kk, c) in k.coaction_of(i) {
                let prod = alg.product(&alg.basis_vec(*kk), &sj);
                for (t, x) in prod.iter().enumerate() {
                    if !x.is_zero() {
                        let e = &mut full[(a * d + t, i * d + j)];
                        *e = &*e + &(c * x);
                    }
                }
            }
        }
    }
    let can = full.mul(&sect);
    let can_inv = can.inverse();
    Ok(CanonicalMap {
        k: k.clone(),
        relations,
        proj,
        sect,
        full,
        can,
        can_inv,
    })
}

impl CanonicalMap {
    pub fn quotient_dim(&self) -> usize {
        self.proj.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.can
    }

    pub fn inverse(&self) -> Option<&Matrix> {
        self.can_inv.as_ref()
    }

    pub fn is_bijective(&self) -> bool {
        self.can_inv.is_some()
    }

    pub fn projection(&self) -> &Matrix {
        &self.proj
    }

    pub fn section(&self) -> &Matrix {
        &self.sect
    }

    /// can applied to a representative in K⊗K.
    pub fn apply_full(&self, t: &[Cyclo]) -> Vec<Cyclo> {
        self.full.mul_vec(t)
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let defined: usize = self
            .relations
            .vectors()
            .iter()
            .map(|v| nonzero_count(&self.full.mul_vec(v)))
            .sum();
        r.residual("galois: can vanishes on the balancing relations", defined);
        r.flag("galois: can is bijective", self.is_bijective());
        if let Some(inv) = &self.can_inv {
            r.flag("galois: can⁻¹·can = id", inv.mul(&self.can).is_identity());
            r.flag("galois: can·can⁻¹ = id", self.can.mul(inv).is_identity());
        }
        r
    }

    /// γ(a) = can⁻¹(a⊗1) as a representative a^[1]⊗a^[2] in K⊗K.
    pub fn gamma(&self, a: &[Cyclo]) -> Result<Vec<Cyclo>> {
        let inv = self
            .can_inv
            .as_ref()
            .ok_or_else(|| Error::Precondition("extension is not Galois".into()))?;
        let rhs = vec_kron(a, self.k.alg().unit());
        Ok(self.sect.mul_vec(&inv.mul_vec(&rhs)))
    }

    /// can(γ(a)) = a⊗1 computed on the quotient and on the K⊗K representative.
    pub fn verify_gamma(&self, a: &[Cyclo]) -> Result<Report> {
        let g = self.gamma(a)?;
        let target = vec_kron(a, self.k.alg().unit());
        let mut r = Report::new();
        let on_quotient = self.can.mul_vec(&self.proj.mul_vec(&g));
        r.residual(
            "gamma: can(γ(a)) = a⊗1",
            nonzero_count(&vec_sub(&on_quotient, &target)),
        );
        r.residual(
            "gamma: a^[1]₋₁⊗a^[1]₀a^[2] = a⊗1",
            nonzero_count(&vec_sub(&self.full.mul_vec(&g), &target)),
        );
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::hopf::HopfAlgebraData;
    use crate::linalg::unit_vec;

    #[test]
    fn hopf_over_itself_is_galois() {
        let h = Arc::new(HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap());
        let k = Arc::new(ComoduleAlgebraData::regular(h.clone()));
        let r = k.coinvariants();
        let can = canonical_map(&k, &r).unwrap();
        assert_eq!(can.quotient_dim(), 4);
        assert!(can.verify().all_pass());
        assert!(can.verify_gamma(&unit_vec(2, 1, 2)).unwrap().all_pass());
        // γ(1) = 1⊗1
        let g1 = can.gamma(h.unit()).unwrap();
        assert_eq!(
            can.projection().mul_vec(&g1),
            can.projection().mul_vec(&vec_kron(h.unit(), h.unit()))
        );
    }

    #[test]
    fn trivial_coaction_not_galois() {
        let h = Arc::new(HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap());
        let k = Arc::new(ComoduleAlgebraData::trivial(h.alg().clone(), h).unwrap());
        let one = Subspace::span(2, 2, &[k.alg().unit().to_vec()]);
        let can = canonical_map(&k, &one).unwrap();
        assert!(!can.is_bijective());
        assert!(can.gamma(k.alg().unit()).is_err());
    }
}
