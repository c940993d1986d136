//! Coefficient ring abstraction shared by every series and polynomial type.
//!
//! Truncated series need context (offset, order, top degree) to build their
//! own zero and one, so the ring operations take `&self` and the identity
//! elements are produced "like" an existing value.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    // numerator and denominator may both overflow f64 on their own
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.denom().bits().max(r.numer().bits()) as i64 - 60;
            let n = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Formats a rational as `"num/den"`, the wire form used by every schema.
pub fn rat_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

pub trait Ring: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    /// Whether two values live in the same concrete ring. Only the dynamic
    /// [`crate::series::Coefficient`] ring can answer `false`.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

/// A ring containing the rationals, so integer division is available.
pub trait QAlgebra: Ring {
    fn scale(&self, r: &Rational) -> Self;

    fn from_rational_like(&self, r: &Rational) -> Self {
        self.one_like().scale(r)
    }

    /// Exact identity test against one; used by preconditions such as
    /// "constant term 1".
    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }
}

pub trait Invertible: Ring {
    fn try_inv(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

impl QAlgebra for Rational {
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Invertible for Rational {
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

impl QAlgebra for Complex64 {
    fn scale(&self, r: &Rational) -> Self {
        self * rat_to_f64(r)
    }
    fn is_one(&self) -> bool {
        (self - Complex64::new(1.0, 0.0)).norm() < 1e-300
    }
}

impl Invertible for Complex64 {
    fn try_inv(&self) -> Option<Self> {
        if self.norm() == 0.0 || !self.norm().is_finite() {
            None
        } else {
            Some(self.inv())
        }
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn abs_rat(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip_strings() {
        let r = rat(-48, 1);
        assert_eq!(rat_to_string(&r), "-48/1");
        assert_eq!(parse_rational("-48/1"), Some(r));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rat(2, 3).pow(5), rat(32, 243));
        assert_eq!(rat(2, 3).pow(0), int(1));
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = BigInt::from(10).pow(400);
        let r = Rational::new(big.clone() * 3, big);
        assert!((rat_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
