//! The monomial Hopf algebras 𝔸(G,χ,g) and their comodule algebras 𝒜(F,λ).
//!
//! Basis of 𝔸(G,χ,g): h·xⁱ at index h·n + i. Basis of 𝒜(F,λ): e_h·yⁱ at
//! index (position of h in F)·n + i, with F sorted ascending.

use std::sync::Arc;

use crate::comod::ComoduleAlgebraData;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::tensor::tensor_mul;
use crate::hopf::{AlgebraData, HopfAlgebraData, SubHopfEmbedding};
use crate::linalg::{unit_vec, Matrix};
use crate::scalar::{root_of_unity_order, Cyclo};

#[derive(Clone, Debug)]
pub struct MonomialHopfSpec {
    pub group: FiniteGroup,
    pub chi: Vec<Cyclo>,
    pub g: usize,
    pub n: usize,
}

impl MonomialHopfSpec {
    pub fn order(&self) -> u32 {
        self.chi.first().map_or(1, Cyclo::order)
    }

    pub fn dim(&self) -> usize {
        self.group.order() * self.n
    }

    pub fn validate(&self) -> Result<()> {
        let grp = &self.group;
        let o = self.order();
        if self.chi.len() != grp.order() {
            return Err(Error::Validation(format!(
                "χ has {} values for a group of order {}",
                self.chi.len(),
                grp.order()
            )));
        }
        if self.chi.iter().any(|c| c.order() != o) {
            return Err(Error::Validation(
                "χ values lie in different cyclotomic fields".into(),
            ));
        }
        for a in 0..grp.order() {
            for b in 0..grp.order() {
                if self.chi[grp.mul(a, b)] != &self.chi[a] * &self.chi[b] {
                    return Err(Error::Validation(format!(
                        "χ is not a character: χ({a}·{b}) ≠ χ({a})χ({b})"
                    )));
                }
            }
        }
        if self.g >= grp.order() || !grp.is_central(self.g) {
            return Err(Error::Validation("g must be central: g ∈ Z(G)".into()));
        }
        let chi_g = root_of_unity_order(&self.chi[self.g]);
        if self.n == 0 || grp.element_order(self.g) != self.n || chi_g != Some(self.n as u32) {
            return Err(Error::Validation(format!(
                "n = |g| = |χ(g)| fails: n = {}, |g| = {}, |χ(g)| = {}",
                self.n,
                grp.element_order(self.g),
                chi_g.map_or("∞".to_string(), |k| k.to_string())
            )));
        }
        let one = Cyclo::one(o);
        if self.chi.iter().any(|c| c.pow(self.n as u64) != one) {
            return Err(Error::Validation("χⁿ = 1 fails".into()));
        }
        Ok(())
    }

    /// The same data restricted to a subgroup F ∋ g, relabelled by position in `sub`.
    pub fn restrict(&self, sub: &[usize]) -> Result<MonomialHopfSpec> {
        let grp = &self.group;
        if !grp.is_subgroup(sub) || !sub.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Validation(
                "F must be a subgroup listed in ascending order".into(),
            ));
        }
        let pos = |x: usize| {
            sub.iter()
                .position(|&y| y == x)
                .expect("closed under products")
        };
        let table = sub
            .iter()
            .map(|&a| sub.iter().map(|&b| pos(grp.mul(a, b))).collect())
            .collect();
        let g = sub
            .iter()
            .position(|&y| y == self.g)
            .ok_or_else(|| Error::Validation("g ∈ F fails".into()))?;
        Ok(MonomialHopfSpec {
            group: FiniteGroup::from_table(table)?,
            chi: sub.iter().map(|&a| self.chi[a].clone()).collect(),
            g,
            n: self.n,
        })
    }
}

fn label(h: usize, i: usize, sym: &str) -> String {
    match i {
        0 => format!("h{h}"),
        1 => format!("h{h}·{sym}"),
        _ => format!("h{h}·{sym}^{i}"),
    }
}

pub fn make_monomial_hopf(spec: &MonomialHopfSpec) -> Result<HopfAlgebraData> {
    spec.validate()?;
    let (grp, n, o) = (&spec.group, spec.n, spec.order());
    let d = spec.dim();
    let labels = (0..d).map(|p| label(p / n, p % n, "x")).collect();
    let unit = unit_vec(d, grp.identity() * n, o);
    // (h xⁱ)(f xʲ) = χ(f)ⁱ hf x^{i+j}, zero once i + j ≥ n
    let alg = Arc::new(AlgebraData::from_products(d, o, unit, labels, |p, q| {
        let (h, i, f, j) = (p / n, p % n, q / n, q % n);
        if i + j >= n {
            Vec::new()
        } else {
            vec![(grp.mul(h, f) * n + i + j, spec.chi[f].pow(i as u64))]
        }
    })?);
    let legs = [alg.as_ref(), alg.as_ref()];
    let e = grp.identity();
    // Δx = 1⊗x + x⊗g
    let mut dx = vec![Cyclo::zero(o); d * d];
    if n > 1 {
        dx[(e * n) * d + e * n + 1] = Cyclo::one(o);
        dx[(e * n + 1) * d + spec.g * n] = Cyclo::one(o);
    }
    let comult = (0..d)
        .map(|p| {
            let (h, i) = (p / n, p % n);
            let mut acc = unit_vec(d * d, (h * n) * d + h * n, o);
            for _ in 0..i {
                acc = tensor_mul(&legs, &acc, &dx);
            }
            acc.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(f, c)| (f / d, f % d, c))
                .collect()
        })
        .collect();
    let counit = (0..d)
        .map(|p| {
            if p % n == 0 {
                Cyclo::one(o)
            } else {
                Cyclo::zero(o)
            }
        })
        .collect();
    HopfAlgebraData::new(alg, comult, counit, None)
}

/// 𝔸(F,χ,g) ⊆ 𝔸(G,χ,g) for a subgroup F ∋ g (ascending list).
pub fn monomial_sub_embedding(
    spec: &MonomialHopfSpec,
    big: &Arc<HopfAlgebraData>,
    sub: &[usize],
) -> Result<SubHopfEmbedding> {
    let small_spec = spec.restrict(sub)?;
    let small = Arc::new(make_monomial_hopf(&small_spec)?);
    let n = spec.n;
    let o = spec.order();
    let embed = Matrix::from_fn(big.dim(), small.dim(), o, |row, col| {
        if row == sub[col / n] * n + col % n {
            Cyclo::one(o)
        } else {
            Cyclo::zero(o)
        }
    });
    SubHopfEmbedding::new(small, big.clone(), embed)
}

/// ℂB ⊆ 𝔸(G,χ,g) for a subgroup B (ascending list), as group-likes h·x⁰.
pub fn group_sub_embedding(
    spec: &MonomialHopfSpec,
    big: &Arc<HopfAlgebraData>,
    sub: &[usize],
) -> Result<SubHopfEmbedding> {
    let grp = &spec.group;
    if !grp.is_subgroup(sub) || !sub.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Validation(
            "B must be a subgroup listed in ascending order".into(),
        ));
    }
    let pos = |x: usize| {
        sub.iter()
            .position(|&y| y == x)
            .expect("closed under products")
    };
    let table = sub
        .iter()
        .map(|&a| sub.iter().map(|&b| pos(grp.mul(a, b))).collect())
        .collect();
    let small = Arc::new(HopfAlgebraData::group_algebra(
        &FiniteGroup::from_table(table)?,
        spec.order(),
    )?);
    let o = spec.order();
    let embed = Matrix::from_fn(big.dim(), sub.len(), o, |row, col| {
        if row == sub[col] * spec.n {
            Cyclo::one(o)
        } else {
            Cyclo::zero(o)
        }
    });
    SubHopfEmbedding::new(small, big.clone(), embed)
}

#[derive(Clone, Debug)]
pub struct ScriptASpec {
    /// Ascending subgroup containing g.
    pub f: Vec<usize>,
    pub lambda: Cyclo,
    pub mu: Cyclo,
}

impl ScriptASpec {
    pub fn validate(&self, ambient: &MonomialHopfSpec) -> Result<()> {
        if !ambient.group.is_subgroup(&self.f) || !self.f.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Validation(
                "F must be a subgroup listed in ascending order".into(),
            ));
        }
        if !self.f.contains(&ambient.g) {
            return Err(Error::Validation("g ∈ F fails".into()));
        }
        if self.lambda.is_zero() {
            return Err(Error::Validation("λ must be nonzero".into()));
        }
        if self.mu.order() != ambient.order() || self.lambda.order() != ambient.order() {
            return Err(Error::Validation(
                "λ and μ must lie in the field of χ".into(),
            ));
        }
        if self.mu.pow(ambient.n as u64) != self.lambda {
            return Err(Error::Validation("μⁿ = λ fails".into()));
        }
        Ok(())
    }
}

/// 𝒜(F,λ) as a left 𝔸(G,χ,g)-comodule algebra.
pub fn make_script_a(
    spec: &ScriptASpec,
    ambient: &MonomialHopfSpec,
    h: &Arc<HopfAlgebraData>,
) -> Result<ComoduleAlgebraData> {
    spec.validate(ambient)?;
    let (grp, n, o) = (&ambient.group, ambient.n, ambient.order());
    let f = &spec.f;
    let d = f.len() * n;
    let pos = |x: usize| {
        f.iter()
            .position(|&y| y == x)
            .expect("F is closed under products")
    };
    let labels = (0..d).map(|p| label(f[p / n], p % n, "y")).collect();
    let unit = unit_vec(d, pos(grp.identity()) * n, o);
    // (e_h yⁱ)(e_f yʲ) = χ(f)ⁱ e_{hf} y^{i+j}, with yⁿ = λ
    let alg = Arc::new(AlgebraData::from_products(d, o, unit, labels, |p, q| {
        let (hh, i, ff, j) = (f[p / n], p % n, f[q / n], q % n);
        let mut c = ambient.chi[ff].pow(i as u64);
        let mut e = i + j;
        if e >= n {
            c = &c * &spec.lambda;
            e -= n;
        }
        vec![(pos(grp.mul(hh, ff)) * n + e, c)]
    })?);
    let dh = h.dim();
    let legs = [h.alg().as_ref(), alg.as_ref()];
    let e = grp.identity();
    let ginv = grp.inv(ambient.g);
    // δ(y) = g⁻¹⊗y − xg⁻¹⊗1
    let mut dy = vec![Cyclo::zero(o); dh * d];
    let one_k = pos(e) * n;
    if n > 1 {
        dy[(ginv * n) * d + one_k + 1] = Cyclo::one(o);
        let xg = h.product(&unit_vec(dh, e * n + 1, o), &unit_vec(dh, ginv * n, o));
        for (t, c) in xg.iter().enumerate() {
            if !c.is_zero() {
                dy[t * d + one_k] = -c;
            }
        }
    } else {
        // n = 1: y is the scalar μ and δ(y) = μ·1⊗1
        dy[(e * n) * d + one_k] = spec.mu.clone();
    }
    let coaction = (0..d)
        .map(|p| {
            let (hh, i) = (f[p / n], p % n);
            let mut acc = unit_vec(dh * d, (hh * n) * d + pos(hh) * n, o);
            for _ in 0..i {
                acc = tensor_mul(&legs, &acc, &dy);
            }
            acc.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(t, c)| (t / d, t % d, c))
                .collect()
        })
        .collect();
    ComoduleAlgebraData::new(alg, h.clone(), coaction)
}

/// Right cosets G = ∪ F c_l and F = ∪ B gʲ, with the products b gʲ xⁱ c_l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetData {
    /// c_l: the smallest element of each right coset F·c, in order of discovery.
    pub reps: Vec<usize>,
    /// gʲ for j = 0..n−1.
    pub g_powers: Vec<usize>,
    /// Ascending list of B.
    pub b: Vec<usize>,
}

pub fn coset_data(spec: &MonomialHopfSpec, f: &[usize], b: &[usize]) -> Result<CosetData> {
    let grp = &spec.group;
    if !grp.is_subgroup(f) || !grp.is_subgroup(b) || !b.iter().all(|x| f.contains(x)) {
        return Err(Error::Validation("B ≤ F ≤ G fails".into()));
    }
    let mut covered = vec![false; grp.order()];
    let mut reps = Vec::new();
    for c in 0..grp.order() {
        if !covered[c] {
            reps.push(c);
            for &x in f {
                covered[grp.mul(x, c)] = true;
            }
        }
    }
    let g_powers: Vec<usize> = (0..spec.n).map(|j| grp.pow(spec.g, j as i64)).collect();
    let mut seen = vec![false; grp.order()];
    for &gj in &g_powers {
        for &x in b {
            let y = grp.mul(x, gj);
            if seen[y] {
                return Err(Error::Validation("B ∩ ⟨g⟩ = {1} fails".into()));
            }
            seen[y] = true;
        }
    }
    if f.iter().any(|&x| !seen[x]) || seen.iter().filter(|&&s| s).count() != f.len() {
        return Err(Error::Validation("F = ∪ B gʲ fails".into()));
    }
    let mut bs = b.to_vec();
    bs.sort_unstable();
    Ok(CosetData {
        reps,
        g_powers,
        b: bs,
    })
}

impl CosetData {
    /// Basis element b gʲ xⁱ c_l of H as a vector; index order ((l·n + j)·n + i)·|B| + b.
    pub fn element(
        &self,
        spec: &MonomialHopfSpec,
        h: &HopfAlgebraData,
        b: usize,
        j: usize,
        i: usize,
        l: usize,
    ) -> Vec<Cyclo> {
        let (n, o, dh) = (spec.n, spec.order(), h.dim());
        let bg = spec.group.mul(self.b[b], self.g_powers[j]);
        let left = unit_vec(dh, bg * n + i, o);
        h.product(&left, &unit_vec(dh, self.reps[l] * n, o))
    }

    pub fn index(&self, n: usize, b: usize, j: usize, i: usize, l: usize) -> usize {
        ((l * n + j) * n + i) * self.b.len() + b
    }

    /// Columns are the products b gʲ xⁱ c_l in `index` order.
    pub fn basis_matrix(&self, spec: &MonomialHopfSpec, h: &HopfAlgebraData) -> Matrix {
        let n = spec.n;
        let mut cols = vec![Vec::new(); h.dim()];
        for l in 0..self.reps.len() {
            for j in 0..n {
                for i in 0..n {
                    for b in 0..self.b.len() {
                        cols[self.index(n, b, j, i, l)] = self.element(spec, h, b, j, i, l);
                    }
                }
            }
        }
        Matrix::from_columns(h.dim(), spec.order(), &cols)
    }
}

/// Expresses every basis vector of H in the basis given by the columns of `m`.
pub(crate) fn change_of_basis(m: &Matrix) -> Result<Matrix> {
    m.inverse()
        .ok_or_else(|| Error::Consistency("coset products do not form a basis of H".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_kron;

    fn e0_spec() -> MonomialHopfSpec {
        MonomialHopfSpec {
            group: FiniteGroup::cyclic(2),
            chi: vec![Cyclo::one(2), Cyclo::from_int(2, -1)],
            g: 1,
            n: 2,
        }
    }

    #[test]
    fn sweedler_structure() {
        let spec = e0_spec();
        let h = make_monomial_hopf(&spec).unwrap();
        assert_eq!(h.dim(), 4);
        assert!(h.verify().all_pass());
        // S(x) = −x g⁻¹ and S(g) = g⁻¹
        let x = unit_vec(4, 1, 2);
        let g = unit_vec(4, 2, 2);
        let xg = h.product(&x, &g);
        assert_eq!(
            h.apply_antipode(&x),
            xg.iter().map(|c| -c).collect::<Vec<_>>()
        );
        assert_eq!(h.apply_antipode(&g), g);
        assert_eq!(h.counit_of(&x), Cyclo::zero(2));
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut s = e0_spec();
        s.n = 3;
        let err = s.validate().unwrap_err().to_string();
        assert!(err.contains("n = |g| = |χ(g)|"), "{err}");
        let mut s = e0_spec();
        s.chi = vec![Cyclo::one(2), Cyclo::one(2)];
        assert!(s.validate().is_err());
    }

    #[test]
    fn degenerate_n_one_is_group_algebra() {
        let spec = MonomialHopfSpec {
            group: FiniteGroup::cyclic(2),
            chi: vec![Cyclo::one(2); 2],
            g: 0,
            n: 1,
        };
        let h = make_monomial_hopf(&spec).unwrap();
        let ga = HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2), 2).unwrap();
        assert_eq!(h.alg().dim(), 2);
        for k in 0..2 {
            assert_eq!(h.comult_of(k), ga.comult_of(k));
        }
    }

    #[test]
    fn script_a_e0_square_of_coaction() {
        let spec = e0_spec();
        let h = Arc::new(make_monomial_hopf(&spec).unwrap());
        let sa = ScriptASpec {
            f: vec![0, 1],
            lambda: Cyclo::one(2),
            mu: Cyclo::one(2),
        };
        let k = make_script_a(&sa, &spec, &h).unwrap();
        assert!(k.verify().all_pass());
        assert_eq!(k.coinvariants().dim(), 1);
        // δ(y)² = δ(y²) = δ(λ·1) = 1⊗1
        let y = unit_vec(4, 1, 2);
        let dy = k.coact(&y);
        let legs = [h.alg().as_ref(), k.alg().as_ref()];
        assert_eq!(
            tensor_mul(&legs, &dy, &dy),
            vec_kron(h.unit(), k.alg().unit())
        );
    }

    #[test]
    fn cosets_for_full_subgroup() {
        let spec = e0_spec();
        let c = coset_data(&spec, &[0, 1], &[0]).unwrap();
        assert_eq!(c.reps, vec![0]);
        assert_eq!(c.g_powers, vec![0, 1]);
        let h = make_monomial_hopf(&spec).unwrap();
        assert_eq!(c.basis_matrix(&spec, &h).rank(), 4);
        assert!(coset_data(&spec, &[0, 1], &[0, 1]).is_err());
    }
}
