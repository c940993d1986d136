//! Laurent polynomials in a single variable `z` with exact rational
//! coefficients, and fractions whose denominators are products of the
//! cyclotomic-type factors `z^j - z^-j` and `z^j + z^-j`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ring::{int, rat_to_f64, Invertible, QAlgebra, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(int(1), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    /// `z^j + sign * z^-j`.
    pub fn binomial(j: i64, sign: i64) -> Self {
        Self::from_terms([(j, int(1)), (-j, int(sign))])
    }

    pub fn add_term(&mut self, e: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| int(0));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(|| int(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Substitutes `z -> z^k`.
    pub fn dilate(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e + k, c.clone())))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| z.powi(*e as i32) * rat_to_f64(c))
            .sum()
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_empty() {
            return None;
        }
        if self.is_empty() {
            return Some(Self::zero());
        }
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_exp() {
            let lo = rem.min_exp()?;
            if hi - lo < dhi - dlo {
                return None;
            }
            let e = hi - dhi;
            let c = rem.coeff(hi) / &lead;
            quot.add_term(e, &c);
            for (de, dc) in divisor.terms() {
                rem.add_term(de + e, &-(dc * &c));
            }
        }
        Some(quot)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("{c}*z^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Ring for Laurent {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn negated(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl QAlgebra for Laurent {
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }
}

impl Invertible for Laurent {
    /// Only monomials are units.
    fn try_inv(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -e))
    }
}

/// Denominator factor `z^j + sign * z^-j` with `j > 0`, `sign = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DenFactor {
    pub j: i64,
    pub sign: i64,
}

impl DenFactor {
    pub fn poly(&self) -> Laurent {
        Laurent::binomial(self.j, self.sign)
    }
}

/// A fraction `num / prod(factors)`. Denominators never cancel implicitly;
/// equality and zero tests are exact after bringing both sides to a common
/// denominator.
#[derive(Clone)]
pub struct LaurentFrac {
    num: Laurent,
    den: BTreeMap<DenFactor, u32>,
}

impl LaurentFrac {
    pub fn from_laurent(num: Laurent) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_laurent(Laurent::constant(c))
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> Laurent {
        self.den
            .iter()
            .fold(Laurent::one(), |acc, (f, e)| acc.times(&f.poly().pow(*e)))
    }

    pub fn den_factors(&self) -> &BTreeMap<DenFactor, u32> {
        &self.den
    }

    /// `1 / (z^j + sign z^-j)`, normalising negative `j` into the factor table.
    pub fn inv_binomial(j: i64, sign: i64) -> Self {
        assert!(j != 0, "z^0 factor is not a cyclotomic denominator");
        let (j, scale) = if j > 0 {
            (j, 1)
        } else {
            // z^-j' + s z^j' = s (z^j' + s z^-j')
            (-j, sign)
        };
        let mut den = BTreeMap::new();
        den.insert(DenFactor { j, sign }, 1);
        Self {
            num: Laurent::constant(int(scale)),
            den,
        }
    }

    /// If the value is a Laurent polynomial, returns it.
    pub fn to_laurent(&self) -> Option<Laurent> {
        self.num.div_exact(&self.denominator())
    }

    fn lift_to(&self, den: &BTreeMap<DenFactor, u32>) -> Laurent {
        let mut num = self.num.clone();
        for (f, e) in den {
            let have = self.den.get(f).copied().unwrap_or(0);
            if *e > have {
                num = num.times(&f.poly().pow(e - have));
            }
        }
        num
    }

    fn lcm(&self, other: &Self) -> BTreeMap<DenFactor, u32> {
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            let slot = den.entry(*f).or_insert(0);
            *slot = (*slot).max(*e);
        }
        den
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduced(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return Self::from_laurent(num);
        }
        for (f, e) in den.iter_mut() {
            while *e > 0 {
                match num.div_exact(&f.poly()) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        Self { num, den }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.denominator().eval(z)
    }
}

impl PartialEq for LaurentFrac {
    fn eq(&self, other: &Self) -> bool {
        let den = self.lcm(other);
        self.lift_to(&den) == other.lift_to(&den)
    }
}

impl fmt::Debug for LaurentFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.denominator())
        }
    }
}

impl Ring for LaurentFrac {
    fn zero_like(&self) -> Self {
        Self::from_laurent(Laurent::zero())
    }
    fn one_like(&self) -> Self {
        Self::from_laurent(Laurent::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let den = self.lcm(other);
        let num = self.lift_to(&den).plus(&other.lift_to(&den));
        if num.is_zero() {
            return self.zero_like();
        }
        Self { num, den }
    }
    fn negated(&self) -> Self {
        Self {
            num: self.num.negated(),
            den: self.den.clone(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        let num = self.num.times(&other.num);
        if num.is_zero() {
            return self.zero_like();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            *den.entry(*f).or_insert(0) += e;
        }
        Self { num, den }.reduced_cheap()
    }
}

impl LaurentFrac {
    // Monomial numerators cannot share a factor with the denominator; skip
    // the trial divisions in that common case.
    fn reduced_cheap(self) -> Self {
        if self.den.is_empty() || self.num.len() <= 1 {
            self
        } else {
            self.reduced()
        }
    }
}

impl QAlgebra for LaurentFrac {
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return self.zero_like();
        }
        Self {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }
}

impl Invertible for LaurentFrac {
    /// Invertible when the reduced numerator is a monomial times known
    /// cyclotomic factors.
    fn try_inv(&self) -> Option<Self> {
        let red = self.reduced();
        if red.num.is_zero() {
            return None;
        }
        let mut num = red.num.clone();
        let mut new_den: BTreeMap<DenFactor, u32> = BTreeMap::new();
        let span = num.max_exp()? - num.min_exp()?;
        'outer: while num.len() > 1 {
            // largest j first, so z^j - z^-j stays one factor
            for j in (1..=span.max(1)).rev() {
                for sign in [-1, 1] {
                    let f = DenFactor { j, sign };
                    if let Some(q) = num.div_exact(&f.poly()) {
                        num = q;
                        *new_den.entry(f).or_insert(0) += 1;
                        continue 'outer;
                    }
                }
            }
            return None;
        }
        let (e, c) = num.as_monomial()?;
        let mono_inv = Laurent::monomial(c.recip(), -e);
        let lifted = red
            .den
            .iter()
            .fold(mono_inv, |acc, (f, k)| acc.times(&f.poly().pow(*k)));
        Some(Self {
            num: lifted,
            den: new_den,
        }
        .reduced())
    }
}
