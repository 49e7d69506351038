//! Dense univariate polynomials over ℚ, lowest degree first.

use super::Rational;

pub fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x.sub_ref(&y)
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero after trimming.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().expect("nonzero").inv().expect("nonzero lead");
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty").mul_ref(&lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub_ref(&f.mul_ref(bj));
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// The n-th cyclotomic polynomial, monic, via Φ_n = (xⁿ − 1) / ∏_{d|n, d<n} Φ_d.
pub fn cyclotomic(n: u32) -> Vec<Rational> {
    assert!(n > 0);
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = Rational::from_int(-1);
    num[n as usize] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = divrem(&num, &cyclotomic(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// u with u·a ≡ 1 (mod m), or None when gcd(a, m) ≠ 1.
pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    // Invariant: r0 ≡ s0·a, r1 ≡ s1·a (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1 = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].inv().ok()?;
    let mut u: Vec<Rational> = s0.iter().map(|x| x.mul_ref(&c)).collect();
    let (_, rem) = divrem(&u, m);
    u = rem;
    Some(u)
}
