use std::sync::Arc;

use super::monomial::{coset_data, MonomialHopfSpec};
use crate::comod::ComoduleAlgebraData;
use crate::error::{Error, Result};
use crate::hopf::SubHopfEmbedding;
use crate::linalg::{axpy, nonzero_count, vec_sub, zero_vec, Matrix};
use crate::rep::ModuleRep;
use crate::report::Report;
use crate::scalar::Cyclo;

/// r×r matrix with entries in an algebra of dimension `dim`; entry (p,q) at p·r + q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    pub r: usize,
    pub dim: usize,
    pub entries: Vec<Vec<Cyclo>>,
}

impl BlockMatrix {
    pub fn zeros(r: usize, dim: usize, order: u32) -> Self {
        BlockMatrix {
            r,
            dim,
            entries: vec![zero_vec(dim, order); r * r],
        }
    }

    pub fn diagonal(r: usize, unit: &[Cyclo]) -> Self {
        let o = unit.first().map_or(1, Cyclo::order);
        let mut m = Self::zeros(r, unit.len(), o);
        for p in 0..r {
            m.entries[p * r + p] = unit.to_vec();
        }
        m
    }

    pub fn get(&self, p: usize, q: usize) -> &[Cyclo] {
        &self.entries[p * self.r + q]
    }

    pub fn get_mut(&mut self, p: usize, q: usize) -> &mut Vec<Cyclo> {
        &mut self.entries[p * self.r + q]
    }

    pub fn mul(&self, other: &Self, prod: impl Fn(&[Cyclo], &[Cyclo]) -> Vec<Cyclo>) -> Self {
        let (r, o) = (self.r, self.order());
        let mut out = Self::zeros(r, self.dim, o);
        for p in 0..r {
            for k in 0..r {
                let a = self.get(p, k);
                if a.iter().all(Cyclo::is_zero) {
                    continue;
                }
                for q in 0..r {
                    let b = other.get(k, q);
                    if b.iter().all(Cyclo::is_zero) {
                        continue;
                    }
                    axpy(out.get_mut(p, q), &Cyclo::one(o), &prod(a, b));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| vec_sub(a, b))
            .collect();
        BlockMatrix {
            r: self.r,
            dim: self.dim,
            entries,
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().map(|e| nonzero_count(e)).sum()
    }

    pub fn order(&self) -> u32 {
        self.entries.iter().flatten().next().map_or(1, Cyclo::order)
    }

    /// P·M·P⁻¹ for a scalar matrix P.
    pub fn conjugate(&self, p: &Matrix, pinv: &Matrix) -> Self {
        let (r, o) = (self.r, self.order());
        let mut out = Self::zeros(r, self.dim, o);
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let s = &p[(a, b)] * &pinv[(c, d)];
                        if !s.is_zero() {
                            axpy(out.get_mut(a, d), &s, self.get(b, c));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_vec(&self) -> Vec<Cyclo> {
        self.entries.concat()
    }

    pub fn from_vec(r: usize, dim: usize, v: &[Cyclo]) -> Self {
        BlockMatrix {
            r,
            dim,
            entries: v.chunks(dim.max(1)).map(<[Cyclo]>::to_vec).collect(),
        }
    }
}

/// T(V) = 𝕜^r⊗V with k·(u_q⊗v) = Σ_p u_p ⊗ a_pq(k)·v for a_pq: K → A.
#[derive(Clone, Debug)]
pub struct BimoduleFunctor {
    k: Arc<ComoduleAlgebraData>,
    base: SubHopfEmbedding,
    blocks: Vec<BlockMatrix>,
}

impl BimoduleFunctor {
    pub fn new(
        k: Arc<ComoduleAlgebraData>,
        base: SubHopfEmbedding,
        blocks: Vec<BlockMatrix>,
    ) -> Result<Self> {
        if blocks.len() != k.dim() {
            return Err(Error::Structural(
                "functor needs one block matrix per basis element of K".into(),
            ));
        }
        let r = blocks.first().map_or(0, |b| b.r);
        if r == 0
            || blocks
                .iter()
                .any(|b| b.r != r || b.dim != base.small().dim())
        {
            return Err(Error::Structural(
                "functor block matrices have inconsistent shapes".into(),
            ));
        }
        Ok(BimoduleFunctor { k, base, blocks })
    }

    pub fn rank(&self) -> usize {
        self.blocks[0].r
    }

    pub fn k(&self) -> &Arc<ComoduleAlgebraData> {
        &self.k
    }

    pub fn base(&self) -> &SubHopfEmbedding {
        &self.base
    }

    pub fn block(&self, i: usize) -> &BlockMatrix {
        &self.blocks[i]
    }

    pub fn apply(&self, v: &ModuleRep) -> Result<ModuleRep> {
        if v.algebra().as_ref() != self.base.small().alg().as_ref() {
            return Err(Error::Structural(
                "T is applied to a module over the wrong algebra".into(),
            ));
        }
        let (r, dv, o) = (self.rank(), v.dim(), self.k.order());
        let action = self
            .blocks
            .iter()
            .map(|b| {
                let mut m = Matrix::zeros(r * dv, r * dv, o);
                for p in 0..r {
                    for q in 0..r {
                        let a = b.get(p, q);
                        if a.iter().all(Cyclo::is_zero) {
                            continue;
                        }
                        let rho = v.act(a);
                        for i in 0..dv {
                            for j in 0..dv {
                                m[(p * dv + i, q * dv + j)] = rho[(i, j)].clone();
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleRep::new(self.k.alg().clone(), r * dv, action)
    }

    /// a: K → M_r(A) is a unital algebra map.
    pub fn verify(&self) -> Report {
        let a = self.base.small().alg();
        let kalg = self.k.alg();
        let prod = |x: &[Cyclo], y: &[Cyclo]| a.product(x, y);
        let (r, o) = (self.rank(), self.k.order());
        let mut hom = 0;
        for i in 0..kalg.dim() {
            for j in 0..kalg.dim() {
                let lhs = self.blocks[i].mul(&self.blocks[j], prod);
                let mut rhs = BlockMatrix::zeros(r, a.dim(), o);
                for (k, c) in kalg.basis_product(i, j) {
                    for (dst, src) in rhs.entries.iter_mut().zip(&self.blocks[*k].entries) {
                        axpy(dst, c, src);
                    }
                }
                hom += lhs.sub(&rhs).nonzero_count();
            }
        }
        let mut unit = BlockMatrix::zeros(r, a.dim(), o);
        for (k, c) in kalg.unit().iter().enumerate() {
            if !c.is_zero() {
                for (dst, src) in unit.entries.iter_mut().zip(&self.blocks[k].entries) {
                    axpy(dst, c, src);
                }
            }
        }
        let mut r_ = Report::new();
        r_.residual("functor: a(k)a(k′) = a(kk′)", hom);
        r_.residual(
            "functor: a(1) = id",
            unit.sub(&BlockMatrix::diagonal(r, a.unit()))
                .nonzero_count(),
        );
        r_
    }

    /// T′ with a′(k) = P a(k) P⁻¹, so that P⊗id: T(V) → T′(V) is K-linear.
    pub fn transport(&self, p: &Matrix) -> Result<BimoduleFunctor> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Validation("transport matrix is singular".into()))?;
        if p.rows() != self.rank() {
            return Err(Error::Structural(
                "transport matrix has the wrong size".into(),
            ));
        }
        let blocks = self.blocks.iter().map(|b| b.conjugate(p, &pinv)).collect();
        BimoduleFunctor::new(self.k.clone(), self.base.clone(), blocks)
    }

    /// y·(u_i⊗v) = μ u_{i−1}⊗v (indices mod n) and e_h·(u_i⊗v) = χ(h)ⁱ u_i⊗b·v for h = b gʲ.
    pub fn monomial(
        spec: &MonomialHopfSpec,
        f: &[usize],
        b: &[usize],
        mu: &Cyclo,
        k: Arc<ComoduleAlgebraData>,
        base: SubHopfEmbedding,
    ) -> Result<BimoduleFunctor> {
        let cosets = coset_data(spec, f, b)?;
        let (n, o, grp) = (spec.n, spec.order(), &spec.group);
        let da = base.small().dim();
        let a = base.small().alg().clone();
        let prod = |x: &[Cyclo], y: &[Cyclo]| a.product(x, y);
        let one_a = a.unit().to_vec();
        let mut ay = BlockMatrix::zeros(n, da, o);
        for i in 0..n {
            *ay.get_mut((i + n - 1) % n, i) = one_a.iter().map(|c| c * mu).collect();
        }
        let mut ay_pows = vec![BlockMatrix::diagonal(n, &one_a)];
        for _ in 1..n {
            let last = ay_pows.last().expect("nonempty").mul(&ay, prod);
            ay_pows.push(last);
        }
        let mut blocks = Vec::with_capacity(f.len() * n);
        for &h in f {
            let (bpos, _) = (0..cosets.b.len())
                .flat_map(|bi| (0..n).map(move |j| (bi, j)))
                .find(|&(bi, j)| grp.mul(cosets.b[bi], cosets.g_powers[j]) == h)
                .ok_or_else(|| Error::Validation("F = ∪ B gʲ fails".into()))?;
            let mut eh = BlockMatrix::zeros(n, da, o);
            for i in 0..n {
                eh.get_mut(i, i)[bpos] = spec.chi[h].pow(i as u64);
            }
            for p in &ay_pows {
                blocks.push(eh.mul(p, prod));
            }
        }
        BimoduleFunctor::new(k, base, blocks)
    }
}
