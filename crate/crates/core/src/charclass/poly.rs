use std::collections::BTreeMap;
use std::fmt;

use super::symbol::{Monomial, Symbol};
use crate::ring::{QAlgebra, Rational, Ring};

/// Polynomial in characteristic-class symbols, truncated above `top_degree`.
///
/// The coefficient ring is generic so that densities can carry q-series or
/// z-dependent coefficients; `unit` is the one of that ring and provides
/// zeros and ones of the right shape.
#[derive(Clone, Debug)]
pub struct GradedPoly<C> {
    terms: BTreeMap<Monomial, C>,
    top_degree: u32,
    unit: C,
}

impl<C: Ring> GradedPoly<C> {
    pub fn zero(unit: C, top_degree: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            top_degree,
            unit,
        }
    }

    pub fn constant(c: C, top_degree: u32) -> Self {
        let unit = c.one_like();
        Self::zero(unit, top_degree).with_term(Monomial::one(), c)
    }

    pub fn one(unit: C, top_degree: u32) -> Self {
        Self::constant(unit.clone(), top_degree)
    }

    pub fn monomial(m: Monomial, c: C, top_degree: u32) -> Self {
        let unit = c.one_like();
        Self::zero(unit, top_degree).with_term(m, c)
    }

    pub fn symbol(s: Symbol, unit: C, top_degree: u32) -> Self {
        let c = unit.clone();
        Self::zero(unit, top_degree).with_term(Monomial::symbol(s), c)
    }

    /// Adds `c * m`, dropping it when above the top degree.
    pub fn with_term(mut self, m: Monomial, c: C) -> Self {
        self.add_term(m, c);
        self
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if m.degree() > self.top_degree || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old = old.plus(&c);
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn unit(&self) -> &C {
        &self.unit
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.unit.zero_like())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    /// Homogeneous part of degree `d`.
    pub fn part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            top_degree: self.top_degree,
            unit: self.unit.clone(),
        }
    }

    pub fn with_top_degree(&self, top_degree: u32) -> Self {
        let mut out = Self::zero(self.unit.clone(), top_degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn map<D: Ring, F: Fn(&C) -> D>(&self, unit: D, f: F) -> GradedPoly<D> {
        let mut out = GradedPoly::zero(unit, self.top_degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Replaces symbols by polynomials; symbols mapped to `None` stay.
    pub fn substitute<F: Fn(&Symbol) -> Option<Self>>(&self, f: F) -> Self {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone(), self.top_degree);
            for (s, e) in m.factors() {
                let base = f(s).unwrap_or_else(|| Self::symbol(s.clone(), self.unit.clone(), self.top_degree));
                acc = acc.times(&base.pow(e));
            }
            out = out.plus(&acc);
        }
        out
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys().flat_map(|m| m.factors().map(|(s, _)| s))
    }
}

impl<C: QAlgebra> GradedPoly<C> {
    /// Multiplies the degree-`d` part by `weight(d)`.
    pub fn scale_by_degree<F: Fn(u32) -> Rational>(&self, weight: F) -> Self {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(&weight(m.degree())));
        }
        out
    }

    /// `exp` of a polynomial with vanishing constant term. The series stops
    /// on its own because such polynomials are nilpotent under truncation.
    pub fn exp_nilpotent(&self) -> Option<Self> {
        if !self.constant_term().is_zero() {
            return None;
        }
        let mut acc = self.one_like();
        let mut power = self.one_like();
        let mut k = 1i64;
        loop {
            power = power.times(self).scale(&Rational::new(1.into(), k.into()));
            if power.is_zero() {
                return Some(acc);
            }
            acc = acc.plus(&power);
            k += 1;
        }
    }

    /// `log` of a polynomial with constant term one.
    pub fn log_unipotent(&self) -> Option<Self> {
        if !self.constant_term().is_one() {
            return None;
        }
        let x = self.minus(&self.one_like());
        let mut acc = self.zero_like();
        let mut power = self.one_like();
        let mut k = 1i64;
        loop {
            power = power.times(&x);
            if power.is_zero() {
                return Some(acc);
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.plus(&power.scale(&Rational::new(sign.into(), k.into())));
            k += 1;
        }
    }
}

/// Equality compares nonzero terms only; the top degree is context.
impl<C: Ring> PartialEq for GradedPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.minus(other).is_zero()
    }
}

impl<C: Ring> Ring for GradedPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.unit.clone(), self.top_degree)
    }
    fn one_like(&self) -> Self {
        Self::one(self.unit.clone(), self.top_degree)
    }
    fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.with_top_degree(self.top_degree.min(other.top_degree));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn negated(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
            top_degree: self.top_degree,
            unit: self.unit.clone(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        let top = self.top_degree.min(other.top_degree);
        let mut out = Self::zero(self.unit.clone(), top);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if da + mb.degree() <= top {
                    out.add_term(ma.times(mb), ca.times(cb));
                }
            }
        }
        out
    }
    fn compatible(&self, other: &Self) -> bool {
        self.unit.compatible(&other.unit)
    }
}

impl<C: QAlgebra> QAlgebra for GradedPoly<C> {
    fn scale(&self, r: &Rational) -> Self {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(r));
        }
        out
    }
}

impl<C: Ring + fmt::Display> fmt::Display for GradedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms.iter().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
