//! Exact linear algebra over ℚ(ζ_N).
//!
//! Tensor flattening is left-major everywhere: (i, j) ↦ i·dim₂ + j, and
//! likewise for more legs.

mod matrix;
mod sparse;
mod subspace;

pub use matrix::Matrix;
pub(crate) use sparse::SparseMatrix;
pub use subspace::{common_kernel, quotient, Echelon, Subspace};

use crate::scalar::Cyclo;

pub fn zero_vec(n: usize, order: u32) -> Vec<Cyclo> {
    vec![Cyclo::zero(order); n]
}

pub fn unit_vec(n: usize, i: usize, order: u32) -> Vec<Cyclo> {
    let mut v = zero_vec(n, order);
    v[i] = Cyclo::one(order);
    v
}

pub fn vec_add(a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Cyclo], c: &Cyclo) -> Vec<Cyclo> {
    a.iter().map(|x| x * c).collect()
}

/// acc += c · v
pub fn axpy(acc: &mut [Cyclo], c: &Cyclo, v: &[Cyclo]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub fn nonzero_count(v: &[Cyclo]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Kronecker product of vectors under the left-major convention.
pub fn vec_kron(a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
    let order = a.first().or(b.first()).map_or(1, Cyclo::order);
    let mut out = zero_vec(a.len() * b.len(), order);
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}
