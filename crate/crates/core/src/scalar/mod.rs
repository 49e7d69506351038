//! Exact scalars: ℚ and the cyclotomic fields ℚ(ζ_N).
//!
//! A computation fixes one order N; every scalar it touches carries that order.

mod cyclo;
pub mod poly;
mod rational;

pub use cyclo::{euler_phi, Cyclo};
pub use rational::Rational;

/// Least common multiple.
pub fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Multiplicative order of a root of unity, if `c` is one of order dividing `c.order()`.
pub fn root_of_unity_order(c: &Cyclo) -> Option<u32> {
    let n = c.order();
    let mut p = c.clone();
    for k in 1..=2 * n {
        if p.is_one() {
            return Some(k);
        }
        p = &p * c;
    }
    None
}
