//! Algebras, coalgebras and Hopf algebras by structure constants.

mod algebra;
mod embedding;
pub mod tensor;

use std::sync::Arc;

pub use algebra::{terms_to_vec, AlgebraData, Terms};
pub use embedding::{ground_hopf, SubHopfEmbedding};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{nonzero_count, vec_kron, vec_sub, zero_vec, Matrix};
use crate::report::Report;
use crate::scalar::Cyclo;
use tensor::{map_leg, tensor_mul};

/// Hopf algebra on a basis: Δ(e_k) = Σ Δ[k][i][j] e_i⊗e_j, counit ε, antipode S.
///
/// `antipode[(a, i)]` is the coefficient of e_a in S(e_i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HopfAlgebraData {
    alg: Arc<AlgebraData>,
    comult: Vec<Vec<(usize, usize, Cyclo)>>,
    counit: Vec<Cyclo>,
    antipode: Matrix,
    antipode_inv: Matrix,
}

impl HopfAlgebraData {
    /// Assembles a Hopf algebra; the antipode is solved for when not given.
    pub fn new(
        alg: Arc<AlgebraData>,
        comult: Vec<Vec<(usize, usize, Cyclo)>>,
        counit: Vec<Cyclo>,
        antipode: Option<Matrix>,
    ) -> Result<Self> {
        let dim = alg.dim();
        if comult.len() != dim || counit.len() != dim {
            return Err(Error::Structural(format!(
                "Hopf data of dim {dim} with {} coproducts and {} counit values",
                comult.len(),
                counit.len()
            )));
        }
        if comult
            .iter()
            .flatten()
            .any(|(i, j, _)| *i >= dim || *j >= dim)
        {
            return Err(Error::Structural("coproduct index out of range".into()));
        }
        let antipode = match antipode {
            Some(s) => {
                if s.rows() != dim || s.cols() != dim {
                    return Err(Error::Structural(
                        "antipode matrix has the wrong shape".into(),
                    ));
                }
                s
            }
            None => solve_antipode(&alg, &comult, &counit)?,
        };
        let antipode_inv = antipode
            .inverse()
            .ok_or_else(|| Error::CorruptInput("antipode is singular".into()))?;
        Ok(HopfAlgebraData {
            alg,
            comult,
            counit,
            antipode,
            antipode_inv,
        })
    }

    /// Group algebra 𝕜G with group-like basis.
    pub fn group_algebra(g: &FiniteGroup, order: u32) -> Result<Self> {
        let n = g.order();
        let one = Cyclo::one(order);
        let labels = (0..n).map(|i| format!("h{i}")).collect();
        let unit = crate::linalg::unit_vec(n, g.identity(), order);
        let alg = AlgebraData::from_products(n, order, unit, labels, |a, b| {
            vec![(g.mul(a, b), one.clone())]
        })?;
        let comult = (0..n).map(|a| vec![(a, a, one.clone())]).collect();
        let counit = vec![one.clone(); n];
        Self::new(Arc::new(alg), comult, counit, None)
    }

    pub fn alg(&self) -> &Arc<AlgebraData> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn order(&self) -> u32 {
        self.alg.order()
    }

    pub fn comult_of(&self, k: usize) -> &[(usize, usize, Cyclo)] {
        &self.comult[k]
    }

    pub fn counit(&self) -> &[Cyclo] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    /// Exact inverse of the antipode matrix.
    pub fn antipode_inverse(&self) -> &Matrix {
        &self.antipode_inv
    }

    pub fn product(&self, a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
        self.alg.product(a, b)
    }

    pub fn unit(&self) -> &[Cyclo] {
        self.alg.unit()
    }

    /// Δ(a) as a vector on H⊗H.
    pub fn comult(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        let d = self.dim();
        let mut out = zero_vec(d * d, self.order());
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, m) in &self.comult[k] {
                out[i * d + j] = &out[i * d + j] + &(c * m);
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero(self.order());
        for (x, e) in a.iter().zip(&self.counit) {
            if !x.is_zero() && !e.is_zero() {
                acc = &acc + &(x * e);
            }
        }
        acc
    }

    pub fn apply_antipode(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        self.antipode.mul_vec(a)
    }

    pub fn apply_antipode_inv(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        self.antipode_inv.mul_vec(a)
    }

    /// Basis map for Δ usable with [`tensor::map_leg`].
    pub fn comult_terms(&self, k: usize) -> Vec<(usize, Cyclo)> {
        let d = self.dim();
        self.comult[k]
            .iter()
            .map(|(i, j, c)| (i * d + j, c.clone()))
            .collect()
    }

    /// Basis map for ε usable with [`tensor::map_leg`].
    pub fn counit_terms(&self, k: usize) -> Vec<(usize, Cyclo)> {
        if self.counit[k].is_zero() {
            Vec::new()
        } else {
            vec![(0, self.counit[k].clone())]
        }
    }

    /// Itemized check of every Hopf axiom; residuals are exact coefficient counts.
    pub fn verify(&self) -> Report {
        let d = self.dim();
        let a = &*self.alg;
        let hh = [a, a];
        let mut r = a.verify();

        let mut coassoc = 0;
        let mut counit = 0;
        for k in 0..d {
            let dk = self.comult(&a.basis_vec(k));
            let left = map_leg(&dk, &[d, d], 0, &[d, d], |i| self.comult_terms(i));
            let right = map_leg(&dk, &[d, d], 1, &[d, d], |i| self.comult_terms(i));
            coassoc += nonzero_count(&vec_sub(&left, &right));
            let l = map_leg(&dk, &[d, d], 0, &[1], |i| self.counit_terms(i));
            let rr = map_leg(&dk, &[d, d], 1, &[1], |i| self.counit_terms(i));
            counit += nonzero_count(&vec_sub(&l, &a.basis_vec(k)));
            counit += nonzero_count(&vec_sub(&rr, &a.basis_vec(k)));
        }
        r.residual("coalgebra: coassociativity", coassoc);
        r.residual("coalgebra: counit", counit);

        let mut dmult = nonzero_count(&vec_sub(
            &self.comult(a.unit()),
            &vec_kron(a.unit(), a.unit()),
        ));
        let mut emult = usize::from(!self.counit_of(a.unit()).is_one());
        for i in 0..d {
            for j in 0..d {
                let ei = a.basis_vec(i);
                let ej = a.basis_vec(j);
                let prod = a.product(&ei, &ej);
                let lhs = self.comult(&prod);
                let rhs = tensor_mul(&hh, &self.comult(&ei), &self.comult(&ej));
                dmult += nonzero_count(&vec_sub(&lhs, &rhs));
                let e = &self.counit_of(&prod) - &(&self.counit_of(&ei) * &self.counit_of(&ej));
                emult += usize::from(!e.is_zero());
            }
        }
        r.residual("bialgebra: comultiplication is an algebra map", dmult);
        r.residual("bialgebra: counit is an algebra map", emult);

        let (mut left, mut right) = (0, 0);
        for k in 0..d {
            let expected: Vec<Cyclo> = a.unit().iter().map(|u| u * &self.counit[k]).collect();
            let mut l = a.zero();
            let mut rr = a.zero();
            for (i, j, c) in &self.comult[k] {
                let si = self.antipode.column(*i);
                let sj = self.antipode.column(*j);
                crate::linalg::axpy(&mut l, c, &a.product(&si, &a.basis_vec(*j)));
                crate::linalg::axpy(&mut rr, c, &a.product(&a.basis_vec(*i), &sj));
            }
            left += nonzero_count(&vec_sub(&l, &expected));
            right += nonzero_count(&vec_sub(&rr, &expected));
        }
        r.residual("antipode: m(S⊗id)Δ = uε", left);
        r.residual("antipode: m(id⊗S)Δ = uε", right);
        let inv_ok = self.antipode.mul(&self.antipode_inv).is_identity()
            && self.antipode_inv.mul(&self.antipode).is_identity();
        r.flag("antipode: S·S⁻¹ = id", inv_ok);

        let mut anti = 0;
        for i in 0..d {
            for j in 0..d {
                let ei = a.basis_vec(i);
                let ej = a.basis_vec(j);
                let lhs = self.apply_antipode(&a.product(&ei, &ej));
                let rhs = a.product(&self.apply_antipode(&ej), &self.apply_antipode(&ei));
                anti += nonzero_count(&vec_sub(&lhs, &rhs));
            }
        }
        r.residual("antipode: anti-homomorphism", anti);
        r
    }

    /// H* on the dual basis; with `cop` the coproduct is flipped, giving H^{*cop}.
    pub fn dual(&self, cop: bool) -> Result<HopfAlgebraData> {
        let d = self.dim();
        let order = self.order();
        let labels = self.alg.labels().iter().map(|l| format!("{l}*")).collect();
        let mut entries = Vec::new();
        for (k, terms) in self.comult.iter().enumerate() {
            for (i, j, c) in terms {
                entries.push((*i, *j, k, c.clone()));
            }
        }
        let alg = AlgebraData::from_entries(d, order, self.counit.clone(), labels, entries)?;
        let mut comult: Vec<Vec<(usize, usize, Cyclo)>> = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.alg.basis_product(i, j) {
                    let (a, b) = if cop { (j, i) } else { (i, j) };
                    comult[*k].push((a, b, c.clone()));
                }
            }
        }
        let counit = self.alg.unit().to_vec();
        let antipode = if cop {
            self.antipode_inv.transpose()
        } else {
            self.antipode.transpose()
        };
        Self::new(Arc::new(alg), comult, counit, Some(antipode))
    }

    /// Matrix of γ ↦ h⇁γ on H*, where ⟨h⇁γ, t⟩ = ⟨γ, S⁻¹(h)t⟩.
    pub fn harpoon_matrix(&self, h: &[Cyclo]) -> Matrix {
        self.alg
            .left_mult_matrix(&self.apply_antipode_inv(h))
            .transpose()
    }

    pub fn harpoon(&self, h: &[Cyclo], gamma: &[Cyclo]) -> Vec<Cyclo> {
        self.harpoon_matrix(h).mul_vec(gamma)
    }

    /// Matrix of α ↦ h⇀α on H*, where ⟨h⇀α, t⟩ = ⟨α, th⟩.
    pub fn hit_matrix(&self, h: &[Cyclo]) -> Matrix {
        self.alg.right_mult_matrix(h).transpose()
    }

    pub fn hit(&self, h: &[Cyclo], alpha: &[Cyclo]) -> Vec<Cyclo> {
        self.hit_matrix(h).mul_vec(alpha)
    }
}

/// Solves m(S⊗id)Δ = uε for S; the unknown S[a][i] sits at column a·d + i.
fn solve_antipode(
    alg: &AlgebraData,
    comult: &[Vec<(usize, usize, Cyclo)>],
    counit: &[Cyclo],
) -> Result<Matrix> {
    let d = alg.dim();
    let order = alg.order();
    let mut m = Matrix::zeros(d * d, d * d, order);
    let mut rhs = zero_vec(d * d, order);
    for k in 0..d {
        for (i, j, c) in &comult[k] {
            for a in 0..d {
                for (cc, mc) in alg.basis_product(a, *j) {
                    let e = &mut m[(k * d + cc, a * d + i)];
                    *e = &*e + &(c * mc);
                }
            }
        }
        for cc in 0..d {
            rhs[k * d + cc] = &alg.unit()[cc] * &counit[k];
        }
    }
    let x = m
        .solve(&rhs)
        .ok_or_else(|| Error::CorruptInput("no antipode satisfies m(S⊗id)Δ = uε".into()))?;
    Ok(Matrix::from_vec(d, d, order, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::linalg::unit_vec;

    fn z2() -> HopfAlgebraData {
        HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap()
    }

    /// Sweedler's algebra on basis 1, x, g, gx with the axioms written out by hand.
    pub(crate) fn sweedler() -> HopfAlgebraData {
        let o = 2;
        let c = |n: i64| Cyclo::from_int(o, n);
        // basis: 0 = 1, 1 = x, 2 = g, 3 = gx
        let prod = |i: usize, j: usize| -> Terms {
            // decompose as g^a x^b
            let (a1, b1) = (i / 2, i % 2);
            let (a2, b2) = (j / 2, j % 2);
            if b1 + b2 > 1 {
                return vec![];
            }
            // x g = -g x
            let sign = if b1 == 1 && a2 == 1 { -1 } else { 1 };
            vec![((((a1 + a2) % 2) * 2) + b1 + b2, c(sign))]
        };
        let alg = AlgebraData::from_products(
            4,
            o,
            unit_vec(4, 0, o),
            ["1", "x", "g", "gx"].map(String::from).to_vec(),
            prod,
        )
        .unwrap();
        let comult = vec![
            vec![(0, 0, c(1))],
            vec![(0, 1, c(1)), (1, 2, c(1))],
            vec![(2, 2, c(1))],
            vec![(2, 3, c(1)), (3, 0, c(1))],
        ];
        let counit = vec![c(1), c(0), c(1), c(0)];
        HopfAlgebraData::new(Arc::new(alg), comult, counit, None).unwrap()
    }

    #[test]
    fn group_algebra_passes() {
        let r = z2().verify();
        assert!(r.all_pass(), "{r}");
        assert_eq!(z2().antipode(), z2().antipode_inverse());
    }

    #[test]
    fn sweedler_passes_and_antipode_is_solved() {
        let h = sweedler();
        let r = h.verify();
        assert!(r.all_pass(), "{r}");
        // S(x) = -x g⁻¹ = -x g = g x
        assert_eq!(
            h.antipode().column(1),
            vec![
                Cyclo::from_int(2, 0),
                Cyclo::from_int(2, 0),
                Cyclo::from_int(2, 0),
                Cyclo::from_int(2, 1)
            ]
        );
        assert_eq!(
            h.counit_of(&h.apply_antipode_inv(&unit_vec(4, 3, 2))),
            h.counit()[3].clone()
        );
    }

    #[test]
    fn corrupted_coproduct_fails_bialgebra() {
        let h = sweedler();
        let o = 2;
        let mut comult: Vec<_> = (0..4).map(|k| h.comult_of(k).to_vec()).collect();
        comult[1] = vec![(0, 1, Cyclo::one(o)), (1, 0, Cyclo::one(o))];
        let bad = HopfAlgebraData::new(
            h.alg().clone(),
            comult,
            h.counit().to_vec(),
            Some(h.antipode().clone()),
        )
        .unwrap();
        let r = bad.verify();
        assert!(
            !r.passed("bialgebra: comultiplication is an algebra map"),
            "{r}"
        );
    }

    #[test]
    fn dual_of_group_algebra_is_functions() {
        let d = z2().dual(false).unwrap();
        assert!(d.verify().all_pass());
        let e0 = unit_vec(2, 0, 2);
        let e1 = unit_vec(2, 1, 2);
        assert_eq!(d.product(&e0, &e0), e0);
        assert!(d.product(&e0, &e1).iter().all(Cyclo::is_zero));
        // counit of H* is evaluation at 1
        assert_eq!(d.counit(), z2().unit());
    }

    #[test]
    fn double_dual_is_identity_in_coordinates() {
        let h = sweedler();
        let dd = h.dual(false).unwrap().dual(false).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(h.alg().basis_product(i, j), dd.alg().basis_product(i, j));
            }
            assert_eq!(h.comult(&unit_vec(4, i, 2)), dd.comult(&unit_vec(4, i, 2)));
        }
        assert_eq!(h.antipode(), dd.antipode());
        assert!(h.dual(true).unwrap().verify().all_pass());
    }

    #[test]
    fn harpoon_is_a_module_action() {
        let h = sweedler();
        let one = unit_vec(4, 0, 2);
        let gamma = vec![
            Cyclo::from_int(2, 3),
            Cyclo::from_int(2, -1),
            Cyclo::from_int(2, 2),
            Cyclo::from_int(2, 5),
        ];
        assert_eq!(h.harpoon(&one, &gamma), gamma);
        for a in 0..4 {
            for b in 0..4 {
                let ea = unit_vec(4, a, 2);
                let eb = unit_vec(4, b, 2);
                let lhs = h.harpoon(&ea, &h.harpoon(&eb, &gamma));
                let rhs = h.harpoon(&h.product(&ea, &eb), &gamma);
                assert_eq!(lhs, rhs);
            }
        }
        // g ⇁ x*: ⟨g⇁x*, t⟩ = ⟨x*, g t⟩, nonzero exactly at t = gx
        let g = unit_vec(4, 2, 2);
        let xstar = unit_vec(4, 1, 2);
        assert_eq!(h.harpoon(&g, &xstar), unit_vec(4, 3, 2));
    }
}
