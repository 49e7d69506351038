//! Elements of tensor products of algebras, stored densely with left-major
//! flattening over the leg dimensions.

use smallvec::SmallVec;

use super::AlgebraData;
use crate::linalg::{vec_kron, zero_vec};
use crate::scalar::Cyclo;

pub type MultiIndex = SmallVec<[usize; 6]>;

pub fn flat(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub fn unflat(mut f: usize, dims: &[usize]) -> MultiIndex {
    let mut out: MultiIndex = SmallVec::from_elem(0, dims.len());
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = f % d;
        f /= d;
    }
    out
}

fn nonzero_entries(t: &[Cyclo]) -> impl Iterator<Item = (usize, &Cyclo)> {
    t.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

/// Product in A₁⊗…⊗A_r, computed leg by leg.
pub fn tensor_mul(legs: &[&AlgebraData], a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
    let dims: Vec<usize> = legs.iter().map(|l| l.dim()).collect();
    let order = legs[0].order();
    let total: usize = dims.iter().product();
    let mut out = zero_vec(total, order);
    let bs: Vec<(MultiIndex, &Cyclo)> = nonzero_entries(b)
        .map(|(f, c)| (unflat(f, &dims), c))
        .collect();
    for (fa, ca) in nonzero_entries(a) {
        let ia = unflat(fa, &dims);
        for (ib, cb) in &bs {
            let mut partial: Vec<(usize, Cyclo)> = vec![(0, ca * *cb)];
            for (l, leg) in legs.iter().enumerate() {
                let prods = leg.basis_product(ia[l], ib[l]);
                if prods.is_empty() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::with_capacity(partial.len() * prods.len());
                for (p, c) in &partial {
                    for (k, m) in prods {
                        next.push((p * dims[l] + k, c * m));
                    }
                }
                partial = next;
            }
            for (p, c) in partial {
                out[p] = &out[p] + &c;
            }
        }
    }
    out
}

pub fn tensor_unit(legs: &[&AlgebraData]) -> Vec<Cyclo> {
    let mut acc = vec![Cyclo::one(legs[0].order())];
    for l in legs {
        acc = vec_kron(&acc, l.unit());
    }
    acc
}

/// Replaces leg `leg` by new legs of dims `new_dims` through the basis map
/// `f(i) = Σ (flat index over new_dims, coefficient)`.
pub fn map_leg(
    t: &[Cyclo],
    dims: &[usize],
    leg: usize,
    new_dims: &[usize],
    f: impl Fn(usize) -> Vec<(usize, Cyclo)>,
) -> Vec<Cyclo> {
    let order = t.first().map_or(1, Cyclo::order);
    let new_block: usize = new_dims.iter().product();
    let mut out_dims: Vec<usize> = dims[..leg].to_vec();
    out_dims.extend_from_slice(new_dims);
    out_dims.extend_from_slice(&dims[leg + 1..]);
    let total: usize = out_dims.iter().product();
    let after: usize = dims[leg + 1..].iter().product();
    let mut out = zero_vec(total, order);
    let cache: Vec<Vec<(usize, Cyclo)>> = (0..dims[leg]).map(&f).collect();
    for (fl, c) in nonzero_entries(t) {
        let idx = unflat(fl, dims);
        let before = flat(&idx[..leg], &dims[..leg]);
        let rest = flat(&idx[leg + 1..], &dims[leg + 1..]);
        for (nb, m) in &cache[idx[leg]] {
            let pos = (before * new_block + nb) * after + rest;
            out[pos] = &out[pos] + &(c * m);
        }
    }
    out
}

/// New leg k is old leg `perm[k]`.
pub fn permute_legs(t: &[Cyclo], dims: &[usize], perm: &[usize]) -> Vec<Cyclo> {
    let order = t.first().map_or(1, Cyclo::order);
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut out = zero_vec(t.len(), order);
    for (fl, c) in nonzero_entries(t) {
        let idx = unflat(fl, dims);
        let nidx: MultiIndex = perm.iter().map(|&p| idx[p]).collect();
        out[flat(&nidx, &new_dims)] = c.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_roundtrip() {
        let dims = [3, 2, 4];
        for f in 0..24 {
            assert_eq!(flat(&unflat(f, &dims), &dims), f);
        }
        assert_eq!(flat(&[1, 0, 2], &dims), 10);
    }
}
