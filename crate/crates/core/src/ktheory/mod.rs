//! Power operations on virtual bundles through their Chern characters.
//!
//! Every operation here is `exp` of a sum of Adams operations applied to
//! the character, e.g. `ch Sym_t(E) = exp(sum_k t^k/k psi^k ch E)`. A tensor
//! product of many such factors is therefore a single `exp` of a sum.

use crate::charclass::{ClassKind, GradedPoly, RootGroup};
use crate::ring::{int, QAlgebra, Rational, Ring};
use crate::series::{Laurent, LaurentFrac, PowerSeries, QSeries};
use num_complex::Complex64;

/// Rings with Adams operations `psi^k`, for characters of virtual bundles.
pub trait Adams: QAlgebra {
    fn adams(&self, k: i64) -> Self;
}

impl Adams for Rational {
    fn adams(&self, _k: i64) -> Self {
        self.clone()
    }
}

impl Adams for Complex64 {
    fn adams(&self, _k: i64) -> Self {
        *self
    }
}

/// `z -> z^k` on equivariant weights.
impl Adams for Laurent {
    fn adams(&self, k: i64) -> Self {
        self.dilate(k)
    }
}

impl Adams for LaurentFrac {
    fn adams(&self, k: i64) -> Self {
        let mut out = LaurentFrac::from_laurent(self.numerator().dilate(k));
        for (f, e) in self.den_factors() {
            let d = LaurentFrac::inv_binomial(f.j * k, f.sign);
            for _ in 0..*e {
                out = out.times(&d);
            }
        }
        out
    }
}

/// Degree `2i` is multiplied by `k^i`, coefficients by their own `psi^k`.
impl<C: Adams> Adams for GradedPoly<C> {
    fn adams(&self, k: i64) -> Self {
        let mut out = self.zero_like();
        for (m, c) in self.terms() {
            let w = int(k).pow(m.degree() as i32 / 2);
            out.add_term(m.clone(), c.adams(k).scale(&w));
        }
        out
    }
}

/// A series in a root variable `x` of cohomological degree 2.
impl<C: Adams> Adams for PowerSeries<C> {
    fn adams(&self, k: i64) -> Self {
        let mut w = int(1);
        let coeffs = self
            .coeffs()
            .iter()
            .map(|c| {
                let out = c.adams(k).scale(&w);
                w = &w * int(k);
                out
            })
            .collect();
        PowerSeries::new(coeffs)
    }
}

/// The parameter `t = sign * q^(half_exp/2)` of `Sym_t` or `Lambda_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Twist {
    pub sign: i8,
    pub half_exp: usize,
}

impl Twist {
    /// `t = q^n`.
    pub fn q_power(n: usize) -> Self {
        Self {
            sign: 1,
            half_exp: 2 * n,
        }
    }

    pub fn new(sign: i8, half_exp: usize) -> Self {
        assert!(sign == 1 || sign == -1, "twist sign must be +-1");
        assert!(half_exp > 0, "twist must have positive q-exponent");
        Self { sign, half_exp }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerOp {
    Sym,
    Lambda,
}

/// `log ch Op_t(chi)` as a series of grid order `order`.
pub fn power_op_log<C: Adams>(chi: &C, op: PowerOp, t: Twist, order: usize) -> QSeries<C> {
    let zero = chi.zero_like();
    let mut coeffs = vec![zero; order];
    let mut k = 1usize;
    while k * t.half_exp < order {
        let mut c = Rational::new(1.into(), (k as i64).into());
        if t.sign < 0 && k % 2 == 1 {
            c = -c;
        }
        if op == PowerOp::Lambda && k % 2 == 0 {
            c = -c;
        }
        let idx = k * t.half_exp;
        coeffs[idx] = coeffs[idx].plus(&chi.adams(k as i64).scale(&c));
        k += 1;
    }
    QSeries::from_coeffs(int(0), coeffs)
}

fn exp_of<C: Adams>(log: QSeries<C>) -> QSeries<C> {
    log.exp().expect("power operation logs have no constant term")
}

pub fn sym_total<C: Adams>(chi: &C, t: Twist, order: usize) -> QSeries<C> {
    exp_of(power_op_log(chi, PowerOp::Sym, t, order))
}

pub fn lambda_total<C: Adams>(chi: &C, t: Twist, order: usize) -> QSeries<C> {
    exp_of(power_op_log(chi, PowerOp::Lambda, t, order))
}

/// `log` of the Witten element for a reduced character `chi - rank`.
pub fn witten_log<C: Adams>(reduced: &C, order: usize) -> QSeries<C> {
    let mut acc = QSeries::constant(reduced.zero_like(), order);
    let mut j = 1;
    while 2 * j < order {
        acc = acc.add(&power_op_log(reduced, PowerOp::Sym, Twist::q_power(j), order));
        j += 1;
    }
    acc
}

/// `ch Psi_q(E) = ch prod_j Sym_{q^j}(E - rank E)`; factors beyond `order`
/// contribute 1.
pub fn witten_element<C: Adams>(reduced: &C, order: usize) -> QSeries<C> {
    exp_of(witten_log(reduced, order))
}

/// The three twists `R`, `R'`, `R''` built on top of the Witten element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum RVariant {
    R,
    RPrime,
    RDoublePrime,
}

impl RVariant {
    pub const ALL: [RVariant; 3] = [Self::R, Self::RPrime, Self::RDoublePrime];

    /// The `Lambda` parameter of the `m`-th factor, `m >= 1`.
    pub fn lambda_twist(self, m: usize) -> Twist {
        match self {
            Self::R => Twist::new(1, 2 * m),
            Self::RPrime => Twist::new(1, 2 * m - 1),
            Self::RDoublePrime => Twist::new(-1, 2 * m - 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::R => "R",
            Self::RPrime => "R'",
            Self::RDoublePrime => "R''",
        }
    }
}

pub fn r_variant_log<C: Adams>(reduced: &C, variant: RVariant, order: usize) -> QSeries<C> {
    let mut acc = witten_log(reduced, order);
    let mut m = 1;
    while variant.lambda_twist(m).half_exp < order {
        acc = acc.add(&power_op_log(reduced, PowerOp::Lambda, variant.lambda_twist(m), order));
        m += 1;
    }
    acc
}

pub fn r_variant<C: Adams>(reduced: &C, variant: RVariant, order: usize) -> QSeries<C> {
    exp_of(r_variant_log(reduced, variant, order))
}

/// A formal virtual bundle: integer combination of root families plus a
/// trivial summand of rank `shift`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KClass {
    pub parts: Vec<(i64, RootGroup)>,
    pub shift: i64,
}

impl KClass {
    pub fn bundle(g: RootGroup) -> Self {
        Self {
            parts: vec![(1, g)],
            shift: 0,
        }
    }

    pub fn trivial(rank: i64) -> Self {
        Self {
            parts: vec![],
            shift: rank,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        Self {
            parts,
            shift: self.shift + other.shift,
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            parts: self.parts.iter().map(|(n, g)| (-n, g.clone())).collect(),
            shift: -self.shift,
        }
    }

    /// Real rank for root-pair families, complex rank for Chern families.
    pub fn rank(&self) -> i64 {
        self.parts
            .iter()
            .map(|(n, g)| {
                n * g.count as i64
                    * match g.kind {
                        ClassKind::Pontryagin => 2,
                        ClassKind::Chern => 1,
                    }
            })
            .sum::<i64>()
            + self.shift
    }

    /// `E - rank E`.
    pub fn reduced(&self) -> Self {
        self.plus(&Self::trivial(-self.rank()))
    }

    /// Chern character truncated at `top`.
    pub fn character(&self, top: u32) -> GradedPoly<Rational> {
        let mut acc = GradedPoly::constant(int(self.shift), top);
        for (n, g) in &self.parts {
            acc = acc.plus(&family_character(g, top).scale(&int(*n)));
        }
        acc
    }
}

/// `sum_j (e^{a_j} + e^{-a_j})` for pairs, `sum_j e^{x_j}` for Chern roots.
fn family_character(g: &RootGroup, top: u32) -> GradedPoly<Rational> {
    let n = (top / g.kind.unit_degree()) as usize;
    let s = g.power_sum_classes(n, &int(1), top);
    let (rank, weight): (i64, Box<dyn Fn(usize) -> Rational>) = match g.kind {
        // 2 cosh(a) = 2 sum b^i / (2i)!
        ClassKind::Pontryagin => (2 * g.count as i64, Box::new(|i| int(2) / factorial(2 * i))),
        ClassKind::Chern => (g.count as i64, Box::new(|i| int(1) / factorial(i))),
    };
    let mut acc = GradedPoly::constant(int(rank), top);
    for (i, si) in s.iter().enumerate() {
        acc = acc.plus(&si.scale(&weight(i + 1)));
    }
    acc
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// `ch Sym_t(E)` for a [`KClass`], the series of [`sym_total`].
pub fn sym_total_class(e: &KClass, t: Twist, order: usize, top: u32) -> QSeries<GradedPoly<Rational>> {
    sym_total(&e.character(top), t, order)
}

pub fn lambda_total_class(e: &KClass, t: Twist, order: usize, top: u32) -> QSeries<GradedPoly<Rational>> {
    lambda_total(&e.character(top), t, order)
}

pub fn witten_element_class(e: &KClass, order: usize, top: u32) -> QSeries<GradedPoly<Rational>> {
    witten_element(&e.reduced().character(top), order)
}

pub fn r_variant_class(e: &KClass, v: RVariant, order: usize, top: u32) -> QSeries<GradedPoly<Rational>> {
    r_variant(&e.reduced().character(top), v, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::Symbol;
    use crate::ring::rat;
    use crate::series::grid_order;

    fn line(label: &str) -> KClass {
        KClass::bundle(RootGroup::complex(label, 1))
    }

    #[test]
    fn sym_of_zero_is_one() {
        let s = sym_total_class(&KClass::default(), Twist::q_power(1), 8, 4);
        assert!(s.is_one());
    }

    #[test]
    fn sym_of_line_is_geometric() {
        // ch Sym_q(L) = sum_n q^n e^{n x}
        let top = 6;
        let order = grid_order(3);
        let s = sym_total_class(&line("L"), Twist::q_power(1), order, top);
        let x = GradedPoly::symbol(Symbol::chern(1, "L"), int(1), top);
        for n in 0..3 {
            let want = x.scale(&int(n)).exp_nilpotent().unwrap();
            assert_eq!(s.coeff(2 * n as usize).unwrap(), &want);
            assert!(s.coeff(2 * n as usize + 1).unwrap().is_zero());
        }
    }

    #[test]
    fn splitting_identity() {
        let top = 8;
        let order = grid_order(3);
        let e = KClass::bundle(RootGroup::pairs("A", 1)).plus(&line("B"));
        let lhs = sym_total_class(&e, Twist::q_power(1), order, top)
            .mul(&lambda_total_class(&e, Twist::new(-1, 2), order, top));
        assert!(lhs.is_one());
    }

    #[test]
    fn witten_low_terms() {
        let top = 8;
        let e = KClass::bundle(RootGroup::pairs("F", 2));
        let w = witten_element_class(&e, grid_order(2), top);
        assert!(w.coeff(0).unwrap().is_one());
        assert_eq!(w.coeff(2).unwrap(), &e.reduced().character(top));
    }

    #[test]
    fn r_variant_first_coefficient() {
        let top = 8;
        let e = KClass::bundle(RootGroup::pairs("Fperp", 1));
        let r = r_variant_class(&e, RVariant::R, grid_order(2), top);
        assert_eq!(r.coeff(2).unwrap(), &e.reduced().character(top).scale(&int(2)));
        let r1 = r_variant_class(&e, RVariant::RPrime, grid_order(3), top);
        let r2 = r_variant_class(&e, RVariant::RDoublePrime, grid_order(3), top);
        assert_eq!(r1.flip_half(), r2);
    }

    #[test]
    fn pair_character_is_two_cosh() {
        let top = 8;
        let ch = KClass::bundle(RootGroup::pairs("", 1)).character(top);
        let p1 = GradedPoly::symbol(Symbol::pontryagin(1, ""), int(1), top);
        // one pair: 2 cosh(a) = 2 + b + b^2/12 with b = p1
        let want = GradedPoly::constant(int(2), top)
            .plus(&p1)
            .plus(&p1.times(&p1).scale(&rat(1, 12)));
        assert_eq!(ch, want);
    }
}
