//! Truncated power series in a single cohomological variable (a Chern root).

use super::dense;
use crate::error::{Error, Result};
use crate::ring::{int, Invertible, QAlgebra, Rational, Ring};

/// `sum_{i < len} c_i x^i + O(x^len)`. Never empty.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> PowerSeries<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "power series needs at least one term");
        Self { coeffs }
    }

    pub fn constant(c: R, len: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; len.max(1)];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The variable `x` itself.
    pub fn variable(proto: &R, len: usize) -> Self {
        let mut coeffs = vec![proto.zero_like(); len.max(1)];
        if len > 1 {
            coeffs[1] = proto.one_like();
        }
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    pub fn map<S: Ring, F: FnMut(&R) -> S>(&self, f: F) -> PowerSeries<S> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, len: usize) -> Self {
        Self {
            coeffs: self.coeffs.iter().take(len.max(1)).cloned().collect(),
        }
    }

    /// Drops `x^0 .. x^(k-1)`, which must be zero, and shifts down.
    pub fn divide_by_x_power(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) || k >= self.len() {
            return Err(Error::Precondition(format!(
                "series not divisible by x^{k}"
            )));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// `g(b)` with `f(x) = g(x^2)`; odd coefficients are ignored.
    pub fn even_part_in_square(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().step_by(2).cloned().collect(),
        }
    }
}

impl<R: Ring> Ring for PowerSeries<R> {
    fn zero_like(&self) -> Self {
        self.map(|c| c.zero_like())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.coeffs[0].one_like(), self.len())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        Self {
            coeffs: (0..n).map(|i| self.coeffs[i].plus(&other.coeffs[i])).collect(),
        }
    }
    fn negated(&self) -> Self {
        self.map(|c| c.negated())
    }
    fn times(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let zero = self.coeffs[0].zero_like();
        Self {
            coeffs: dense::mul_trunc(&self.coeffs, &other.coeffs, n, &zero),
        }
    }
    fn compatible(&self, other: &Self) -> bool {
        self.coeffs[0].compatible(&other.coeffs[0])
    }
}

impl<R: QAlgebra> QAlgebra for PowerSeries<R> {
    fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }
    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }
}

impl<R: Invertible> Invertible for PowerSeries<R> {
    fn try_inv(&self) -> Option<Self> {
        dense::inv_trunc(&self.coeffs, self.len()).map(|coeffs| Self { coeffs })
    }
}

impl<R: QAlgebra> PowerSeries<R> {
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp requires zero constant term".into()));
        }
        Ok(Self {
            coeffs: dense::exp_trunc(&self.coeffs, self.len()),
        })
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition("log requires constant term 1".into()));
        }
        Ok(Self {
            coeffs: dense::log_trunc(&self.coeffs, self.len()),
        })
    }

    /// `exp(h x)` for a rational `h`.
    pub fn exp_linear(proto: &R, h: &Rational, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len.max(1));
        let mut c = Rational::from_integer(1.into());
        for i in 0..len.max(1) {
            coeffs.push(proto.from_rational_like(&c));
            c = c * h / int(i as i64 + 1);
        }
        Self { coeffs }
    }
}

impl PowerSeries<Rational> {
    /// Builds a rational series from a closure giving the i-th coefficient.
    pub fn from_fn<F: Fn(usize) -> Rational>(len: usize, f: F) -> Self {
        Self {
            coeffs: (0..len.max(1)).map(f).collect(),
        }
    }
}

/// `sum_i c_i x^i` evaluated at a complex point; used by numeric checks.
pub fn eval_complex(ps: &PowerSeries<num_complex::Complex64>, x: num_complex::Complex64) -> num_complex::Complex64 {
    ps.coeffs.iter().rev().fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn exp_linear_matches_exp_of_variable() {
        let proto = int(0);
        let a = PowerSeries::variable(&proto, 6).scale(&rat(1, 2)).exp().unwrap();
        assert_eq!(a, PowerSeries::exp_linear(&proto, &rat(1, 2), 6));
    }

    #[test]
    fn even_part() {
        let f = PowerSeries::new(vec![int(1), int(0), int(3), int(0), int(5)]);
        assert!(f.is_even());
        assert_eq!(f.even_part_in_square().coeffs(), &[int(1), int(3), int(5)]);
    }
}
