use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use smallvec::SmallVec;

use super::poly;
use super::Rational;
use crate::error::{Error, Result};

type Coeffs = SmallVec<[Rational; 2]>;

/// Element of ℚ(ζ_N) in the power basis 1, ζ, …, ζ^{φ(N)-1}, reduced modulo Φ_N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    coeffs: Coeffs,
}

/// Φ_N together with φ(N); one leaked instance per order.
struct FieldInfo {
    phi: usize,
    // monic Φ_N, low degree first, length phi + 1
    modulus: Vec<Rational>,
}

fn field(order: u32) -> &'static FieldInfo {
    static TABLE: OnceLock<RwLock<HashMap<u32, &'static FieldInfo>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = table.read().expect("field table poisoned").get(&order) {
        return f;
    }
    let modulus = poly::cyclotomic(order);
    let info: &'static FieldInfo = Box::leak(Box::new(FieldInfo {
        phi: modulus.len() - 1,
        modulus,
    }));
    table
        .write()
        .expect("field table poisoned")
        .entry(order)
        .or_insert(info)
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    field(n).phi
}

impl Cyclo {
    pub fn zero(order: u32) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let phi = field(order).phi;
        Cyclo {
            order,
            coeffs: SmallVec::from_elem(Rational::zero(), phi),
        }
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_int(n))
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::from_poly(order, raw)
    }

    /// Reduces an arbitrary polynomial in ζ modulo Φ_N.
    pub fn from_poly(order: u32, mut raw: Vec<Rational>) -> Self {
        let f = field(order);
        reduce(&mut raw, &f.modulus);
        raw.resize(f.phi, Rational::zero());
        Cyclo {
            order,
            coeffs: raw.into_iter().collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational number, if it lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::Structural(format!(
                "cyclotomic order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let phi = self.coeffs.len();
        if phi == 1 {
            let mut coeffs = Coeffs::new();
            coeffs.push(self.coeffs[0].mul_ref(&other.coeffs[0]));
            return Cyclo {
                order: self.order,
                coeffs,
            };
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = raw[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self::from_poly(self.order, raw)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(r)).collect(),
        }
    }

    /// Multiplicative inverse via extended Euclid against Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.inv()?));
        }
        let f = field(self.order);
        let u = poly::inverse_mod(&self.coeffs, &f.modulus).ok_or_else(|| {
            Error::Consistency(
                "cyclotomic polynomial shares a factor with a nonzero element".into(),
            )
        })?;
        Ok(Self::from_poly(self.order, u))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Re-expresses the value in ℚ(ζ_M) for a multiple M of the current order.
    pub fn embed(&self, new_order: u32) -> Result<Self> {
        if !new_order.is_multiple_of(self.order) {
            return Err(Error::Structural(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{new_order})",
                self.order
            )));
        }
        let step = (new_order / self.order) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::from_poly(new_order, raw))
    }

    /// Parses `p/q`, `p`, or `[c0,c1,...]@M` (M dividing `order`) into ℚ(ζ_order).
    pub fn parse(s: &str, order: u32) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('[') {
            let (body, tail) = rest
                .split_once("]@")
                .ok_or_else(|| Error::Parse(format!("malformed cyclotomic scalar {s:?}")))?;
            let m: u32 = tail
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("malformed cyclotomic order in {s:?}")))?;
            if m == 0 {
                return Err(Error::Parse(format!("zero cyclotomic order in {s:?}")));
            }
            let coeffs = if body.trim().is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .map(str::parse::<Rational>)
                    .collect::<Result<Vec<_>>>()?
            };
            let local = Self::from_poly(m, coeffs);
            local
                .embed(order)
                .map_err(|_| Error::Parse(format!("scalar {s:?} does not live in Q(zeta_{order})")))
        } else {
            Ok(Self::from_rational(order, s.parse()?))
        }
    }
}

/// In-place reduction of `raw` modulo a monic polynomial.
fn reduce(raw: &mut Vec<Rational>, modulus: &[Rational]) {
    let deg = modulus.len() - 1;
    while raw.len() > deg {
        let top = raw.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = raw.len() - deg;
        for (j, m) in modulus[..deg].iter().enumerate() {
            if !m.is_zero() {
                raw[shift + j] = raw[shift + j].sub_ref(&top.mul_ref(m));
            }
        }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]@{}", self.order)
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operator impls panic on order mismatch; the `try_*` methods report it instead.
macro_rules! cyclo_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
                self.$imp(rhs)
            }
        }
        impl $trait<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
    };
}

cyclo_binop!(Add, add, add_unchecked);
cyclo_binop!(Sub, sub, sub_unchecked);
cyclo_binop!(Mul, mul, mul_unchecked);

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(Rational::neg_ref).collect(),
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str, n: u32) -> Cyclo {
        Cyclo::parse(s, n).unwrap()
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = Cyclo::zeta_pow(4, 1);
        assert_eq!(&z * &z, Cyclo::from_int(4, -1));
    }

    #[test]
    fn one_is_identity() {
        let a = c("[3/2,-7]@12", 12);
        assert_eq!(&Cyclo::one(12) * &a, a);
    }

    #[test]
    fn zeta3_cubed() {
        let z = Cyclo::zeta_pow(3, 1);
        let z2 = Cyclo::zeta_pow(3, 2);
        assert_eq!(&z * &z2, Cyclo::one(3));
        assert_eq!(z2.to_string(), "[-1,-1]@3");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Cyclo::one(5).inv().unwrap(), Cyclo::one(5));
        for n in [3u32, 4, 5, 8, 12] {
            let z = Cyclo::zeta_pow(n, 1);
            assert_eq!(z.inv().unwrap(), Cyclo::zeta_pow(n, n as i64 - 1));
        }
        // (1 + ζ₄)⁻¹ = (1 − ζ₄)/2
        let a = c("[1,1]@4", 4);
        assert_eq!(a.inv().unwrap(), c("[1/2,-1/2]@4", 4));
        assert!(matches!(Cyclo::zero(4).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn order_mismatch_is_structural() {
        let a = Cyclo::one(3);
        let b = Cyclo::one(4);
        assert!(matches!(a.try_mul(&b), Err(Error::Structural(_))));
    }

    #[test]
    fn embedding_preserves_roots() {
        let z3 = Cyclo::zeta_pow(3, 1);
        let e = z3.embed(6).unwrap();
        assert_eq!(e, Cyclo::zeta_pow(6, 2));
        assert_eq!(c("[0,1]@3", 6), Cyclo::zeta_pow(6, 2));
        assert!(Cyclo::parse("[0,1]@4", 6).is_err());
        assert_eq!(
            Cyclo::from_int(2, -1).embed(4).unwrap(),
            Cyclo::zeta_pow(4, 2)
        );
    }

    #[test]
    fn parse_display_roundtrip() {
        for (s, n) in [("3/4", 5), ("[0,1]@4", 4), ("[1,0,-2,5/3]@5", 5), ("-1", 2)] {
            assert_eq!(c(s, n).to_string(), s);
        }
        assert!(Cyclo::parse("1/0", 2).is_err());
        assert!(Cyclo::parse("[1,2", 4).is_err());
    }

    #[test]
    fn low_orders_are_rational() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(Cyclo::zeta_pow(2, 1), Cyclo::from_int(2, -1));
        assert_eq!(Cyclo::zeta_pow(1, 5), Cyclo::one(1));
    }
}
