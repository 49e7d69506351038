//! Left comodule algebras δ: K → H⊗K.

mod galois;
mod simplicity;

use std::sync::Arc;

pub use galois::{canonical_map, CanonicalMap};
pub use simplicity::{SimpleCertificate, SimplicityCertificate, Verdict};

use crate::error::{Error, Result};
use crate::hopf::tensor::{map_leg, tensor_mul};
use crate::hopf::{AlgebraData, HopfAlgebraData, SubHopfEmbedding};
use crate::linalg::{nonzero_count, vec_kron, vec_sub, zero_vec, Echelon, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::Cyclo;

/// δ(e_k) = Σ c · e_h ⊗ e_{k'} stored as (h, k', c).
pub type CoactionTerms = Vec<(usize, usize, Cyclo)>;

#[derive(Clone, PartialEq, Debug)]
pub struct ComoduleAlgebraData {
    alg: Arc<AlgebraData>,
    over: Arc<HopfAlgebraData>,
    coaction: Vec<CoactionTerms>,
}

impl ComoduleAlgebraData {
    pub fn new(
        alg: Arc<AlgebraData>,
        over: Arc<HopfAlgebraData>,
        coaction: Vec<CoactionTerms>,
    ) -> Result<Self> {
        if alg.order() != over.order() {
            return Err(Error::Structural(
                "comodule algebra and Hopf algebra over different fields".into(),
            ));
        }
        if coaction.len() != alg.dim() {
            return Err(Error::Structural(format!(
                "coaction given on {} basis elements of a {}-dimensional algebra",
                coaction.len(),
                alg.dim()
            )));
        }
        if coaction
            .iter()
            .flatten()
            .any(|(h, k, c)| *h >= over.dim() || *k >= alg.dim() || c.order() != alg.order())
        {
            return Err(Error::Structural("coaction term out of range".into()));
        }
        Ok(ComoduleAlgebraData {
            alg,
            over,
            coaction,
        })
    }

    /// H as a comodule algebra over itself via Δ.
    pub fn regular(h: Arc<HopfAlgebraData>) -> Self {
        let coaction = (0..h.dim()).map(|k| h.comult_of(k).to_vec()).collect();
        let alg = h.alg().clone();
        Self::new(alg, h, coaction).expect("Δ is a valid coaction shape")
    }

    /// δ(k) = 1⊗k.
    pub fn trivial(alg: Arc<AlgebraData>, over: Arc<HopfAlgebraData>) -> Result<Self> {
        let coaction = (0..alg.dim())
            .map(|k| {
                over.unit()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(h, c)| (h, k, c.clone()))
                    .collect()
            })
            .collect();
        Self::new(alg, over, coaction)
    }

    /// A Hopf subalgebra A ⊆ H as an H-comodule algebra via (ι⊗id)Δ_A.
    pub fn from_embedding(emb: &SubHopfEmbedding) -> Self {
        let a = emb.small();
        let e = emb.embed_matrix();
        let coaction = (0..a.dim())
            .map(|k| {
                let mut terms = Vec::new();
                for (i, j, c) in a.comult_of(k) {
                    for h in 0..e.rows() {
                        let m = &e[(h, *i)];
                        if !m.is_zero() {
                            terms.push((h, *j, c * m));
                        }
                    }
                }
                terms
            })
            .collect();
        Self::new(a.alg().clone(), emb.big().clone(), coaction).expect("embedding shapes agree")
    }

    pub fn alg(&self) -> &Arc<AlgebraData> {
        &self.alg
    }

    pub fn over(&self) -> &Arc<HopfAlgebraData> {
        &self.over
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn order(&self) -> u32 {
        self.alg.order()
    }

    pub fn coaction_of(&self, k: usize) -> &[(usize, usize, Cyclo)] {
        &self.coaction[k]
    }

    /// Basis map for δ usable with `map_leg` (flat index h·dim K + k').
    pub fn coaction_terms(&self, k: usize) -> Vec<(usize, Cyclo)> {
        let d = self.dim();
        self.coaction[k]
            .iter()
            .map(|(h, kk, c)| (h * d + kk, c.clone()))
            .collect()
    }

    /// δ(v) on H⊗K.
    pub fn coact(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        let d = self.dim();
        let mut out = zero_vec(self.over.dim() * d, self.order());
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (h, kk, c) in &self.coaction[k] {
                out[h * d + kk] = &out[h * d + kk] + &(x * c);
            }
        }
        out
    }

    pub fn coaction_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Cyclo>> = (0..self.dim())
            .map(|k| self.coact(&self.alg.basis_vec(k)))
            .collect();
        Matrix::from_columns(self.over.dim() * self.dim(), self.order(), &cols)
    }

    /// Matrix of (α_h⊗id)δ for the dual-basis functional α_h.
    pub fn dual_slice(&self, h: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d, self.order());
        for k in 0..d {
            for (hh, kk, c) in &self.coaction[k] {
                if *hh == h {
                    m[(*kk, k)] = &m[(*kk, k)] + c;
                }
            }
        }
        m
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let (dh, dk) = (self.over.dim(), self.dim());
        let h = &*self.over;
        let mut coassoc = 0;
        let mut counit = 0;
        for k in 0..dk {
            let dkv = self.coact(&self.alg.basis_vec(k));
            let lhs = map_leg(&dkv, &[dh, dk], 0, &[dh, dh], |i| h.comult_terms(i));
            let rhs = map_leg(&dkv, &[dh, dk], 1, &[dh, dk], |i| self.coaction_terms(i));
            coassoc += nonzero_count(&vec_sub(&lhs, &rhs));
            let e = map_leg(&dkv, &[dh, dk], 0, &[1], |i| h.counit_terms(i));
            counit += nonzero_count(&vec_sub(&e, &self.alg.basis_vec(k)));
        }
        r.residual("comodule: coassociativity", coassoc);
        r.residual("comodule: counit", counit);

        let legs = [&**h.alg(), &*self.alg];
        let mut mult = 0;
        for i in 0..dk {
            let di = self.coact(&self.alg.basis_vec(i));
            for j in 0..dk {
                let dj = self.coact(&self.alg.basis_vec(j));
                let lhs = self.coact(
                    &self
                        .alg
                        .product(&self.alg.basis_vec(i), &self.alg.basis_vec(j)),
                );
                mult += nonzero_count(&vec_sub(&lhs, &tensor_mul(&legs, &di, &dj)));
            }
        }
        r.residual("comodule: coaction is multiplicative", mult);
        let unit = nonzero_count(&vec_sub(
            &self.coact(self.alg.unit()),
            &vec_kron(h.unit(), self.alg.unit()),
        ));
        r.residual("comodule: δ(1) = 1⊗1", unit);
        r
    }

    /// {k : δ(k) = 1⊗k}.
    pub fn coinvariants(&self) -> Subspace {
        let dk = self.dim();
        let one_k = Matrix::column_vector(self.over.unit(), self.order())
            .kron(&Matrix::identity(dk, self.order()));
        self.coaction_matrix().sub(&one_k).kernel()
    }

    /// Left and right multiplications by basis elements and the slices (α⊗id)δ.
    /// Their common invariant subspaces are exactly the costable two-sided ideals.
    pub fn ideal_operators(&self) -> Vec<Matrix> {
        let mut ops = Vec::new();
        for i in 0..self.dim() {
            let e = self.alg.basis_vec(i);
            ops.push(self.alg.left_mult_matrix(&e));
            ops.push(self.alg.right_mult_matrix(&e));
        }
        ops.extend((0..self.over.dim()).map(|h| self.dual_slice(h)));
        ops
    }

    /// Smallest costable two-sided ideal containing `v`.
    pub fn costable_closure(&self, v: &[Cyclo]) -> Subspace {
        let ops = self.ideal_operators();
        let mut ech = Echelon::new(self.dim(), self.order());
        let mut queue = Vec::new();
        if ech.insert(v) {
            queue.push(v.to_vec());
        }
        while let Some(w) = queue.pop() {
            for op in &ops {
                let u = op.mul_vec(&w);
                if ech.insert(&u) {
                    queue.push(u);
                }
            }
        }
        ech.to_subspace()
    }

    /// Exact checks that `w` is a nonzero proper costable two-sided ideal.
    pub fn check_costable_ideal(&self, w: &Subspace) -> Report {
        let mut r = Report::new();
        r.flag("ideal: nonzero", w.dim() > 0);
        r.flag("ideal: proper", w.dim() < self.dim());
        let mut two_sided = 0;
        let mut costable = 0;
        for v in w.vectors() {
            for i in 0..self.dim() {
                let e = self.alg.basis_vec(i);
                two_sided += usize::from(!w.contains(&self.alg.product(&e, &v)));
                two_sided += usize::from(!w.contains(&self.alg.product(&v, &e)));
            }
            for h in 0..self.over.dim() {
                costable += usize::from(!w.contains(&self.dual_slice(h).mul_vec(&v)));
            }
        }
        r.residual("ideal: two-sided", two_sided);
        r.residual("ideal: costable", costable);
        r
    }

    pub fn is_h_simple(&self) -> Result<SimplicityCertificate> {
        simplicity::certify(self)
    }

    /// Corestriction to a Hopf subalgebra A ⊆ H containing every left leg of δ.
    pub fn corestrict(&self, emb: &SubHopfEmbedding) -> Result<ComoduleAlgebraData> {
        if !Arc::ptr_eq(emb.big(), &self.over) && **emb.big() != *self.over {
            return Err(Error::Structural(
                "embedding target is not the coacting Hopf algebra".into(),
            ));
        }
        let (dh, dk) = (self.over.dim(), self.dim());
        let mut coaction = Vec::with_capacity(dk);
        for k in 0..dk {
            let dkv = self.coact(&self.alg.basis_vec(k));
            let mut terms = Vec::new();
            for kk in 0..dk {
                let slice: Vec<Cyclo> = (0..dh).map(|h| dkv[h * dk + kk].clone()).collect();
                if slice.iter().all(Cyclo::is_zero) {
                    continue;
                }
                let a = emb.pull_back(&slice).ok_or_else(|| {
                    Error::Structural(format!("coaction of basis element {k} does not corestrict"))
                })?;
                terms.extend(
                    a.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (i, kk, c)),
                );
            }
            coaction.push(terms);
        }
        Self::new(self.alg.clone(), emb.small().clone(), coaction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::linalg::unit_vec;

    fn z2() -> Arc<HopfAlgebraData> {
        Arc::new(HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap())
    }

    #[test]
    fn hopf_over_itself() {
        let k = ComoduleAlgebraData::regular(z2());
        assert!(k.verify().all_pass());
        let c = k.coinvariants();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(k.alg().unit()));
    }

    #[test]
    fn closure_of_unit_is_everything() {
        let k = ComoduleAlgebraData::regular(z2());
        assert_eq!(k.costable_closure(k.alg().unit()).dim(), 2);
        assert_eq!(k.costable_closure(&zero_vec(2, 2)).dim(), 0);
        // closure of a group-like basis element in 𝕜G over itself is all of K
        assert_eq!(k.costable_closure(&unit_vec(2, 1, 2)).dim(), 2);
    }

    #[test]
    fn trivial_coaction_has_big_coinvariants() {
        let h = z2();
        let k = ComoduleAlgebraData::trivial(h.alg().clone(), h).unwrap();
        assert!(k.verify().all_pass());
        assert_eq!(k.coinvariants().dim(), 2);
    }

    #[test]
    fn corrupted_coaction_fails() {
        let h = z2();
        let mut k = ComoduleAlgebraData::regular(h);
        k.coaction[1] = vec![(1, 0, Cyclo::one(2))];
        let r = k.verify();
        assert!(!r.all_pass());
    }

    #[test]
    fn corestriction_to_ground_fails_for_regular() {
        let h = z2();
        let k = ComoduleAlgebraData::regular(h.clone());
        let ground = SubHopfEmbedding::ground(h.clone()).unwrap();
        assert!(k.corestrict(&ground).is_err());
        let id = SubHopfEmbedding::identity(h);
        assert!(k.corestrict(&id).unwrap().verify().all_pass());
    }
}
