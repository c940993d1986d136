//! Multiplicative sequences: `prod_j f(root_j)` rewritten in elementary
//! symmetric classes through `log`, Newton's identities and `exp`.

use super::poly::GradedPoly;
use super::symbol::{ClassKind, Symbol};
use crate::error::{Error, Result};
use crate::ring::{int, Invertible, QAlgebra, Rational, Ring};
use crate::series::PowerSeries;

/// Power sums `s_1..s_n` from elementary symmetric functions `e_1..`
/// (missing `e_i` are zero).
pub fn power_sums<C: QAlgebra>(elementary: &[C], n: usize, proto: &C) -> Vec<C> {
    let e = |i: usize| {
        elementary
            .get(i - 1)
            .cloned()
            .unwrap_or_else(|| proto.zero_like())
    };
    let mut s: Vec<C> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut acc = e(i).scale(&int(i as i64));
        if i % 2 == 0 {
            acc = acc.negated();
        }
        for j in 1..i {
            let t = e(j).times(&s[i - j - 1]);
            acc = if j % 2 == 1 { acc.plus(&t) } else { acc.minus(&t) };
        }
        s.push(acc);
    }
    s
}

/// Inverse of [`power_sums`].
pub fn elementary_from_power_sums<C: QAlgebra>(s: &[C], proto: &C) -> Vec<C> {
    let mut e: Vec<C> = Vec::with_capacity(s.len());
    for i in 1..=s.len() {
        let mut acc = proto.zero_like();
        for j in 1..=i {
            let prev = if j == i { proto.one_like() } else { e[i - j - 1].clone() };
            let t = prev.times(&s[j - 1]);
            acc = if j % 2 == 1 { acc.plus(&t) } else { acc.minus(&t) };
        }
        e.push(acc.scale(&Rational::new(1.into(), (i as i64).into())));
    }
    e
}

/// A family of formal roots of one bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGroup {
    pub kind: ClassKind,
    pub bundle: String,
    pub count: usize,
}

impl RootGroup {
    /// `count` root pairs `±a_j` of a real bundle, described by `p_i(bundle)`.
    pub fn pairs(bundle: &str, count: usize) -> Self {
        Self {
            kind: ClassKind::Pontryagin,
            bundle: bundle.to_string(),
            count,
        }
    }

    /// `count` Chern roots of a complex bundle, described by `c_i(bundle)`.
    pub fn complex(bundle: &str, count: usize) -> Self {
        Self {
            kind: ClassKind::Chern,
            bundle: bundle.to_string(),
            count,
        }
    }

    /// Degree of the variable the root factor is a series in.
    fn variable_degree(&self) -> u32 {
        self.kind.unit_degree()
    }

    fn elementary<C: Ring>(&self, unit: &C, top: u32) -> Vec<GradedPoly<C>> {
        (1..=self.count as u32)
            .map(|i| {
                let s = Symbol {
                    bundle: self.bundle.clone(),
                    kind: self.kind,
                    index: i,
                };
                GradedPoly::symbol(s, unit.clone(), top)
            })
            .collect()
    }

    /// Power sums of the root variables (`a_j^2` for pairs) as classes.
    pub fn power_sum_classes<C: QAlgebra>(&self, n: usize, unit: &C, top: u32) -> Vec<GradedPoly<C>> {
        let proto = GradedPoly::one(unit.clone(), top);
        power_sums(&self.elementary(unit, top), n, &proto)
    }
}

/// `prod_j f(root_j)` over the group. For root pairs `f` must be even and the
/// product runs over one root of each pair.
pub fn multiplicative_class<C>(f: &PowerSeries<C>, group: &RootGroup, top: u32) -> Result<GradedPoly<C>>
where
    C: QAlgebra + Invertible,
{
    let unit = f.coeff(0).one_like();
    let g = match group.kind {
        ClassKind::Pontryagin => {
            if !f.is_even() {
                return Err(Error::Precondition("root-pair factor must be even".into()));
            }
            f.even_part_in_square()
        }
        ClassKind::Chern => f.clone(),
    };
    let n = (top / group.variable_degree()) as usize;
    if g.len() < n + 1 {
        return Err(Error::InsufficientOrder {
            needed: n + 1,
            got: g.len(),
        });
    }
    if group.count == 0 {
        return Ok(GradedPoly::one(unit, top));
    }
    let g = g.truncate(n + 1);
    let g0 = g.coeff(0);
    let g0_inv = g0
        .try_inv()
        .ok_or_else(|| Error::Precondition("root factor has non-invertible constant term".into()))?;
    // pin the constant to exactly one; numeric rings only get it up to rounding
    let mut normalized: Vec<C> = g.coeffs().iter().map(|c| c.times(&g0_inv)).collect();
    normalized[0] = unit.clone();
    let log = PowerSeries::new(normalized).log()?;
    let s = group.power_sum_classes(n, &unit, top);
    let mut exponent = GradedPoly::zero(unit.clone(), top);
    for (i, si) in s.iter().enumerate() {
        let li = log.coeff(i + 1);
        if !li.is_zero() {
            exponent = exponent.plus(&si.map(unit.clone(), |c| c.times(&li)));
        }
    }
    let body = exponent.exp_nilpotent().expect("power sums have no constant term");
    Ok(body.times(&GradedPoly::constant(g0.pow(group.count as u32), top)))
}

/// The genus of the tangent bundle with characteristic series `f`, `f(0) = 1`.
pub fn genus_sequence(f: &PowerSeries<Rational>, top: u32) -> Result<GradedPoly<Rational>> {
    if !f.coeff(0).is_one() {
        return Err(Error::Precondition("characteristic series must start with 1".into()));
    }
    multiplicative_class(f, &RootGroup::pairs("", (top / 4) as usize), top)
}

fn sinh_over_x(scale: &Rational, len: usize) -> PowerSeries<Rational> {
    // sinh(s x)/(s x) = sum (s x)^{2k} / (2k+1)!
    let mut c = Vec::with_capacity(len);
    let mut fact = int(1);
    for i in 0..len {
        fact *= int(i as i64 + 1);
        c.push(if i % 2 == 0 { scale.pow(i as i32) / fact.clone() } else { int(0) });
    }
    PowerSeries::new(c)
}

fn cosh(scale: &Rational, len: usize) -> PowerSeries<Rational> {
    let mut c = Vec::with_capacity(len);
    let mut fact = int(1);
    for i in 0..len {
        if i > 0 {
            fact *= int(i as i64);
        }
        c.push(if i % 2 == 0 { scale.pow(i as i32) / fact.clone() } else { int(0) });
    }
    PowerSeries::new(c)
}

/// `(a/2)/sinh(a/2)`, the characteristic series of the A-hat genus.
pub fn ahat_factor(len: usize) -> PowerSeries<Rational> {
    sinh_over_x(&Rational::new(1.into(), 2.into()), len.max(1))
        .try_inv()
        .expect("unit constant term")
}

/// `a/tanh(a)`, the Hirzebruch L-genus series.
pub fn l_factor(len: usize) -> PowerSeries<Rational> {
    let one = int(1);
    cosh(&one, len.max(1)).times(&sinh_over_x(&one, len.max(1)).try_inv().expect("unit"))
}

/// `(a/2)/tanh(a/2)`, the L-type factor in the theta normalization.
pub fn half_l_factor(len: usize) -> PowerSeries<Rational> {
    let h = Rational::new(1.into(), 2.into());
    cosh(&h, len.max(1)).times(&sinh_over_x(&h, len.max(1)).try_inv().expect("unit"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn p(i: u32, top: u32) -> GradedPoly<Rational> {
        GradedPoly::symbol(Symbol::pontryagin(i, ""), int(1), top)
    }

    #[test]
    fn newton_small_cases() {
        let e = vec![int(3), int(5), int(7)];
        let s = power_sums(&e, 3, &int(0));
        assert_eq!(s[0], int(3));
        assert_eq!(s[1], int(9 - 10));
        assert_eq!(s[2], int(27 - 45 + 21));
        assert_eq!(elementary_from_power_sums(&s, &int(0)), e);
    }

    #[test]
    fn ahat_and_l_in_degree_four() {
        let a = genus_sequence(&ahat_factor(5), 4).unwrap();
        assert_eq!(a, GradedPoly::one(int(1), 4).plus(&p(1, 4).scale(&rat(-1, 24))));
        let l = genus_sequence(&l_factor(5), 8).unwrap();
        let want = GradedPoly::one(int(1), 8)
            .plus(&p(1, 8).scale(&rat(1, 3)))
            .plus(&p(2, 8).scale(&rat(7, 45)))
            .plus(&p(1, 8).times(&p(1, 8)).scale(&rat(-1, 45)));
        assert_eq!(l, want);
    }

    #[test]
    fn trivial_factor_gives_one() {
        let f = PowerSeries::constant(int(1), 5);
        assert_eq!(genus_sequence(&f, 8).unwrap(), GradedPoly::one(int(1), 8));
    }

    #[test]
    fn short_input_is_reported() {
        assert!(matches!(
            genus_sequence(&ahat_factor(3), 8),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn complex_roots_use_chern_classes() {
        // prod (1 + x_j) = total Chern class
        let f = PowerSeries::new(vec![int(1), int(1), int(0), int(0)]);
        let c = multiplicative_class(&f, &RootGroup::complex("E", 2), 6).unwrap();
        let sym = |i| GradedPoly::symbol(Symbol::chern(i, "E"), int(1), 6);
        assert_eq!(c, GradedPoly::one(int(1), 6).plus(&sym(1)).plus(&sym(2)));
    }
}
