//! Truncated q-series on the half-integer grid.
//!
//! A [`QSeries`] stores the coefficients of `q^(offset + k/2)` for
//! `k < order` densely; everything from `offset + order/2` upward is unknown.
//! Non-grid prefactors such as `q^(1/8)` live in `offset`.

use num_complex::Complex64;
use num_integer::Integer;

use super::dense;
use crate::error::{Error, Result};
use crate::ring::{int, rat, rat_to_f64, rat_to_string, Invertible, QAlgebra, Rational, Ring};

#[derive(Clone, Debug)]
pub struct QSeries<R> {
    offset: Rational,
    coeffs: Vec<R>,
}

impl<R: Ring> PartialEq for QSeries<R>
where
    R: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.offset == other.offset && self.coeffs == other.coeffs
    }
}

/// Grid step shared by every series.
pub fn step() -> Rational {
    rat(1, 2)
}

/// Number of grid points that cover integer powers `q^0 ..= q^n`.
pub fn grid_order(n: u32) -> usize {
    2 * n as usize + 1
}

impl<R: Ring> QSeries<R> {
    pub fn from_coeffs(offset: Rational, coeffs: Vec<R>) -> Self {
        Self { offset, coeffs }
    }

    /// `c * q^(k/2)` known to `order` grid points.
    pub fn monomial(c: R, half_exp: usize, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order];
        if half_exp < order {
            coeffs[half_exp] = c;
        }
        Self {
            offset: int(0),
            coeffs,
        }
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn exponent(&self, k: usize) -> Rational {
        &self.offset + rat(k as i64, 2)
    }

    /// Coefficient of `q^e`; `None` if `e` is off-grid, below the offset or
    /// beyond the truncation order.
    pub fn coeff_at(&self, e: &Rational) -> Option<&R> {
        let k = (e - &self.offset) * int(2);
        if !k.is_integer() || k < int(0) {
            return None;
        }
        let k: usize = k.to_integer().try_into().ok()?;
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    pub fn map<S, F: FnMut(&R) -> S>(&self, f: F) -> QSeries<S> {
        QSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn with_offset(&self, offset: Rational) -> Self {
        Self {
            offset,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `q^(1/2) -> -q^(1/2)` on the grid part; the offset prefactor is kept.
    pub fn flip_half(&self) -> Self {
        Self {
            offset: self.offset.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.negated() } else { c.clone() })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale_by(&self, r: &R) -> Self {
        self.map(|c| c.times(r))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        match (self.coeffs.first(), other.coeffs.first()) {
            (Some(a), Some(b)) if !a.compatible(b) => Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                a, b
            ))),
            _ => Ok(()),
        }
    }

    fn grid_shift(&self, to: &Rational) -> Result<usize> {
        let d = (&self.offset - to) * int(2);
        if !d.is_integer() || d < int(0) {
            return Err(Error::GridMismatch(
                rat_to_string(&self.offset),
                rat_to_string(to),
            ));
        }
        Ok(d.to_integer().try_into().unwrap_or(usize::MAX))
    }

    /// Sum of two series whose offsets differ by a multiple of the step.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let base = if self.offset <= other.offset {
            self.offset.clone()
        } else {
            other.offset.clone()
        };
        let sa = self.grid_shift(&base)?;
        let sb = other.grid_shift(&base)?;
        let order = (self.order() + sa).min(other.order() + sb);
        let proto = match self.coeffs.first().or(other.coeffs.first()) {
            Some(p) => p.zero_like(),
            None => {
                return Ok(Self {
                    offset: base,
                    coeffs: Vec::new(),
                })
            }
        };
        let mut coeffs = vec![proto; order];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            if k >= sa {
                if let Some(c) = self.coeffs.get(k - sa) {
                    *slot = slot.plus(c);
                }
            }
            if k >= sb {
                if let Some(c) = other.coeffs.get(k - sb) {
                    *slot = slot.plus(c);
                }
            }
        }
        Ok(Self {
            offset: base,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Cauchy product; offsets add and the order is the smaller input order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let offset = &self.offset + &other.offset;
        let Some(proto) = self.coeffs.first().or(other.coeffs.first()) else {
            return Ok(Self {
                offset,
                coeffs: Vec::new(),
            });
        };
        let zero = proto.zero_like();
        Ok(Self {
            offset,
            coeffs: dense::mul_trunc(&self.coeffs, &other.coeffs, order, &zero),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series in incompatible rings")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("series on incompatible grids")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("series on incompatible grids")
    }

    /// Evaluates at `tau`, mapping coefficients to complex numbers with `f`.
    /// `q^e` means `exp(2 pi i tau e)`.
    pub fn eval_at<F: Fn(&R) -> Complex64>(&self, tau: Complex64, f: F) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let q_half = (two_pi_i * tau * 0.5).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            if !c.is_zero() {
                acc += f(c) * pow;
            }
            pow *= q_half;
        }
        acc * (two_pi_i * tau * rat_to_f64(&self.offset)).exp()
    }
}

impl<R: Invertible> QSeries<R> {
    /// Multiplicative inverse. Leading zero coefficients are absorbed into
    /// the offset (costing that many grid points of order).
    pub fn inv(&self) -> Result<Self> {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::NonUnitLeading)?;
        let body = &self.coeffs[lead..];
        let coeffs = dense::inv_trunc(body, body.len()).ok_or(Error::NonUnitLeading)?;
        Ok(Self {
            offset: -(&self.offset + rat(lead as i64, 2)),
            coeffs,
        })
    }
}

impl<R: QAlgebra> QSeries<R> {
    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.offset.is_zero() {
            return Err(Error::Precondition("exp requires offset 0".into()));
        }
        match self.coeffs.first() {
            None => Ok(self.clone()),
            Some(c0) if !c0.is_zero() => Err(Error::Precondition(
                "exp requires zero constant term".into(),
            )),
            Some(_) => Ok(Self {
                offset: int(0),
                coeffs: dense::exp_trunc(&self.coeffs, self.order()),
            }),
        }
    }

    pub fn log(&self) -> Result<Self> {
        if !self.offset.is_zero() {
            return Err(Error::Precondition("log requires offset 0".into()));
        }
        match self.coeffs.first() {
            None => Ok(self.clone()),
            Some(c0) if !c0.is_one() => Err(Error::Precondition(
                "log requires constant term 1".into(),
            )),
            Some(_) => Ok(Self {
                offset: int(0),
                coeffs: dense::log_trunc(&self.coeffs, self.order()),
            }),
        }
    }
}

impl QSeries<Rational> {
    /// `prod_{n>=1} (1 - q^n)^power` to `order` grid points, by direct
    /// factor-by-factor multiplication.
    pub fn euler_power(power: i64, order: usize) -> Self {
        let mut acc = Self::constant(int(1), order);
        let mut n = 2;
        while n < order.max(1) {
            let factor = Self::constant(int(1), order)
                .sub(&Self::monomial(int(1), n, order));
            let f = if power >= 0 {
                factor
            } else {
                factor.inv().expect("unit constant term")
            };
            for _ in 0..power.unsigned_abs() {
                acc = acc.mul(&f);
            }
            n += 2;
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn gcd_denominator(&self) -> num_bigint::BigInt {
        self.coeffs
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }
}

impl<R: Ring> Ring for QSeries<R> {
    fn zero_like(&self) -> Self {
        self.map(|c| c.zero_like()).with_offset(int(0))
    }
    fn one_like(&self) -> Self {
        let mut z = self.zero_like();
        if let Some(c0) = z.coeffs.first_mut() {
            *c0 = c0.one_like();
        }
        z
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.check_ring(other).is_ok()
    }
}

impl<R: QAlgebra> QAlgebra for QSeries<R> {
    fn scale(&self, r: &Rational) -> Self {
        QSeries::scale(self, r)
    }
    fn is_one(&self) -> bool {
        self.offset.is_zero()
            && self
                .coeffs
                .iter()
                .enumerate()
                .all(|(k, c)| if k == 0 { c.is_one() } else { c.is_zero() })
    }
}

impl<R: Invertible> Invertible for QSeries<R> {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}
