//! Deliberately naive reference computations. Nothing here calls the series,
//! charclass, ktheory or theta engines; polynomials are plain maps from
//! exponent vectors to rationals and products are schoolbook loops.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::equivariant::{GroupElement2x2, Subgroup};
use crate::error::{Error, Result};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Multivariate polynomial truncated by a per-variable degree bound.
#[derive(Clone, Debug, PartialEq)]
struct Poly {
    terms: BTreeMap<Vec<u32>, Q>,
    bounds: Vec<u32>,
}

impl Poly {
    fn zero(bounds: &[u32]) -> Self {
        Self {
            terms: BTreeMap::new(),
            bounds: bounds.to_vec(),
        }
    }

    fn one(bounds: &[u32]) -> Self {
        let mut p = Self::zero(bounds);
        p.terms.insert(vec![0; bounds.len()], q(1));
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if e.iter().zip(&self.bounds).any(|(a, b)| a > b) || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.bounds);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// `sum_k c_k (variable v)^k` for a one-variable Taylor list.
    fn from_taylor(bounds: &[u32], v: usize, scale: &Q, taylor: &[Q]) -> Self {
        let mut p = Self::zero(bounds);
        let mut s = q(1);
        for (k, c) in taylor.iter().enumerate() {
            let mut e = vec![0; bounds.len()];
            e[v] = k as u32;
            p.add_term(e, c * &s);
            s *= scale;
        }
        p
    }
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(q(1), |acc, k| acc * q(k))
}

/// Taylor coefficients of `e^{hx}` up to `x^(n-1)`.
fn exp_taylor(h: &Q, n: usize) -> Vec<Q> {
    (0..n).map(|k| num_traits::pow(h.clone(), k) / factorial(k)).collect()
}

/// Schoolbook division of Taylor series, `a/b` with `b_0 != 0`.
fn divide(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().min(b.len());
    let mut out: Vec<Q> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = a[k].clone();
        for j in 0..k {
            s -= &out[j] * &b[k - j];
        }
        out.push(s / &b[0]);
    }
    out
}

/// The per-root series of a classical genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusSeries {
    /// `(x/2)/sinh(x/2)`
    Ahat,
    /// `x/tanh(x)`
    L,
}

fn genus_taylor(g: GenusSeries, n: usize) -> Vec<Q> {
    // both are x * (even numerator) / (odd denominator); work with shifted lists
    let m = n + 2;
    let (num, den) = match g {
        GenusSeries::Ahat => {
            let ep = exp_taylor(&Q::new(1.into(), 2.into()), m);
            let em = exp_taylor(&Q::new((-1).into(), 2.into()), m);
            let sinh2: Vec<Q> = ep.iter().zip(&em).map(|(a, b)| a - b).collect();
            // x / (2 sinh(x/2)) = 1 / (sinh2 / x)
            let mut one = vec![q(0); m - 1];
            one[0] = q(1);
            (one, sinh2[1..].to_vec())
        }
        GenusSeries::L => {
            let ep = exp_taylor(&q(1), m);
            let em = exp_taylor(&q(-1), m);
            let cosh: Vec<Q> = ep.iter().zip(&em).map(|(a, b)| (a + b) / q(2)).collect();
            let sinh: Vec<Q> = ep.iter().zip(&em).map(|(a, b)| (a - b) / q(2)).collect();
            (cosh[..m - 1].to_vec(), sinh[1..].to_vec())
        }
    };
    divide(&num, &den)[..n].to_vec()
}

/// Coefficients of a genus in degree 0 (`1`), 4 (`p1`) or 8 (`p1^2`, `p2`)
/// from the explicit product over two root pairs.
pub fn root_expansion(g: GenusSeries, degree: u32) -> Result<BTreeMap<String, Q>> {
    if degree == 0 {
        return Ok([("1".to_string(), q(1))].into_iter().collect());
    }
    if degree != 4 && degree != 8 {
        return Err(Error::Unsupported(format!("root_expansion in degree {degree}")));
    }
    let half = degree / 2;
    let bounds = [half, half];
    let t = genus_taylor(g, half as usize + 1);
    let prod = Poly::from_taylor(&bounds, 0, &q(1), &t).mul(&Poly::from_taylor(&bounds, 1, &q(1), &t));
    let mut out = BTreeMap::new();
    if degree == 4 {
        out.insert("p1".to_string(), prod.coeff(&[2, 0]));
    } else {
        let p1sq = prod.coeff(&[4, 0]);
        let p2 = prod.coeff(&[2, 2]) - q(2) * &p1sq;
        out.insert("p1^2".to_string(), p1sq);
        out.insert("p2".to_string(), p2);
    }
    Ok(out)
}

/// `p1` of CP2 in units of `h^2`, from `c = (1 + h)^3` and `p1 = c1^2 - 2 c2`.
pub fn cp2_p1() -> Q {
    let mut c = vec![q(1)];
    for _ in 0..3 {
        let mut next = vec![q(0); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v;
        }
        c = next;
    }
    &c[1] * &c[1] - q(2) * &c[2]
}

/// Body of a theta function by multiplying out the factors one at a time.
/// Keys are `(exponent of q^(1/2), exponent of z)`.
pub fn truncation_theta_body(sign: i64, first_half_exp: u32, order: u32) -> BTreeMap<(u32, i64), Q> {
    let mut cur: BTreeMap<(u32, i64), Q> = BTreeMap::new();
    cur.insert((0, 0), q(1));
    let mut e = first_half_exp;
    while e < order {
        for zexp in [1i64, -1] {
            let mut next = cur.clone();
            for ((a, b), c) in &cur {
                if a + e < order {
                    *next.entry((a + e, b + zexp)).or_insert_with(Q::zero) += c * q(sign);
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        e += 2;
    }
    cur
}

/// `prod_F Ahat(a) prod_n (1-q^n)^2 / ((1-q^n e^a)(1-q^n e^-a))` times
/// `prod_Fperp L(b)`, every geometric series expanded. Variables are
/// `[q, a_1.., b_1..]`, each root bounded by `root_degree`.
fn truncation_density(f_roots: usize, fperp_roots: usize, root_degree: u32, order_q: u32) -> Poly {
    let mut bounds = vec![order_q];
    bounds.extend(std::iter::repeat_n(root_degree, f_roots + fperp_roots));
    let len = root_degree as usize + 1;
    let ahat = genus_taylor(GenusSeries::Ahat, len);
    let l = genus_taylor(GenusSeries::L, len);
    let mut total = Poly::one(&bounds);
    for v in 1..=f_roots {
        total = total.mul(&Poly::from_taylor(&bounds, v, &q(1), &ahat));
        for n in 1..=order_q {
            for sign in [1i64, -1] {
                // 1/(1 - q^n e^{sign a}) = sum_k q^{nk} e^{k sign a}
                let mut geo = Poly::zero(&bounds);
                let mut k = 0;
                while k * n <= order_q {
                    let ek = exp_taylor(&q(k as i64 * sign), len);
                    let mut qpow = Poly::zero(&bounds);
                    let mut e = vec![0; bounds.len()];
                    e[0] = k * n;
                    qpow.add_term(e, q(1));
                    geo = geo.add(&Poly::from_taylor(&bounds, v, &q(1), &ek).mul(&qpow));
                    k += 1;
                }
                total = total.mul(&geo);
                let mut lin = Poly::one(&bounds);
                let mut e = vec![0; bounds.len()];
                e[0] = n;
                lin.add_term(e, q(-1));
                total = total.mul(&lin);
            }
        }
    }
    for v in f_roots + 1..=f_roots + fperp_roots {
        total = total.mul(&Poly::from_taylor(&bounds, v, &q(1), &l));
    }
    total
}

/// q-coefficients of `<Ahat(F) ch(Psi_q(F)) L(Fperp), [M]>` to `q^order_q`.
///
/// Unsplit (`split = false`, numbers keyed `p1`, `p1^2`, `p2`) uses two root
/// pairs and needs `dim` in {0, 4, 8}. Split uses one pair on each side, so
/// only `p1(F)`, `p1(Fperp)` and `p1(F)*p1(Fperp)` may be nonzero.
pub fn truncation_witten_index(dim: u32, split: bool, numbers: &BTreeMap<String, Q>, order_q: u32) -> Result<Vec<Q>> {
    if dim == 0 {
        let mut out = vec![q(0); order_q as usize + 1];
        out[0] = numbers.get("1").cloned().unwrap_or_else(|| q(1));
        return Ok(out);
    }
    if dim != 4 && dim != 8 {
        return Err(Error::Unsupported(format!("truncation in dimension {dim}")));
    }
    let rd = dim / 2;
    let (fr, pr) = if split { (1, 1) } else { (2, 0) };
    let total = truncation_density(fr, pr, rd, order_q);
    let at = |k: u32, e: &[u32]| {
        let mut v = vec![k];
        v.extend_from_slice(e);
        total.coeff(&v)
    };
    type Extract<'a> = Box<dyn Fn(u32) -> Q + 'a>;
    let mut coefficient_of: Vec<(&str, Extract)> = Vec::new();
    match (split, dim) {
        (false, 4) => coefficient_of.push(("p1", Box::new(|k| at(k, &[2, 0])))),
        (false, _) => {
            coefficient_of.push(("p1^2", Box::new(|k| at(k, &[4, 0]))));
            coefficient_of.push(("p2", Box::new(|k| at(k, &[2, 2]) - q(2) * at(k, &[4, 0]))));
        }
        (true, 4) => {
            coefficient_of.push(("p1(F)", Box::new(|k| at(k, &[2, 0]))));
            coefficient_of.push(("p1(Fperp)", Box::new(|k| at(k, &[0, 2]))));
        }
        (true, _) => coefficient_of.push(("p1(F)*p1(Fperp)", Box::new(|k| at(k, &[2, 2])))),
    }
    if let Some((k, _)) = numbers
        .iter()
        .find(|(k, v)| !v.is_zero() && !coefficient_of.iter().any(|(name, _)| name == k))
    {
        return Err(Error::Unsupported(format!("truncation with nonzero `{k}`")));
    }
    Ok((0..=order_q)
        .map(|k| {
            coefficient_of
                .iter()
                .map(|(name, c)| numbers.get(*name).map(|v| c(k) * v).unwrap_or_else(Q::zero))
                .fold(Q::zero(), |a, b| a + b)
        })
        .collect())
}

/// Root factor of an isolated fixed point, for [`two_fixed_point`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFactor {
    /// `1 / (z^m - z^-m)`
    Ahat(i64),
    /// `(z^n + z^-n) / (2 (z^n - z^-n))`
    Tanh(i64),
}

/// Laurent polynomial in `z` as exponent map.
type Lp = BTreeMap<i64, Q>;

fn lp_mul(a: &Lp, b: &Lp) -> Lp {
    let mut out = Lp::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn lp_binomial(j: i64, sign: i64) -> Lp {
    let mut out = Lp::new();
    *out.entry(j).or_insert_with(Q::zero) += q(1);
    *out.entry(-j).or_insert_with(Q::zero) += q(sign);
    out.retain(|_, c| !c.is_zero());
    out
}

/// `sum_points orientation * prod factors` over a common denominator. Returns
/// the numerator and denominator as Laurent polynomials in `z = zeta^(1/2)`;
/// the sum vanishes identically iff the numerator is empty.
pub fn two_fixed_point(points: &[(Vec<PointFactor>, i8)]) -> (BTreeMap<i64, Q>, BTreeMap<i64, Q>) {
    let one: Lp = [(0, q(1))].into_iter().collect();
    let fracs: Vec<(Lp, Lp)> = points
        .iter()
        .map(|(factors, o)| {
            let (mut num, mut den) = (one.clone(), one.clone());
            for f in factors {
                match f {
                    PointFactor::Ahat(m) => den = lp_mul(&den, &lp_binomial(*m, -1)),
                    PointFactor::Tanh(n) => {
                        num = lp_mul(&num, &lp_binomial(*n, 1));
                        den = lp_mul(&den, &lp_binomial(*n, -1));
                        den = lp_mul(&den, &[(0, q(2))].into_iter().collect());
                    }
                }
            }
            let sign: Lp = [(0, q(i64::from(*o)))].into_iter().collect();
            (lp_mul(&num, &sign), den)
        })
        .collect();
    let den = fracs.iter().fold(one.clone(), |acc, (_, d)| lp_mul(&acc, d));
    let mut num = Lp::new();
    for (i, (n, _)) in fracs.iter().enumerate() {
        let others = fracs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(n.clone(), |acc, (_, (_, d))| lp_mul(&acc, d));
        for (e, c) in others {
            *num.entry(e).or_insert_with(Q::zero) += c;
        }
    }
    num.retain(|_, c| !c.is_zero());
    (num, den)
}

/// Central difference `(f(x + h) - f(x - h)) / 2h`.
pub fn finite_difference<F: Fn(Complex64) -> Complex64>(f: F, x: Complex64, h: f64) -> Complex64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// `theta(v, tau)` from the product with a fixed, generous number of factors.
pub fn truncation_theta_numeric(v: Complex64, tau: Complex64, factors: usize) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let pi = std::f64::consts::PI;
    let qq = (2.0 * pi * i * tau).exp();
    let w = (2.0 * pi * i * v).exp();
    let mut acc = (2.0 * pi * i * tau / 8.0).exp() * 2.0 * (pi * v).sin();
    let mut qn = qq;
    for _ in 0..factors {
        acc *= (1.0 - qn) * (1.0 - qn * w) * (1.0 - qn / w);
        qn *= qq;
    }
    acc
}

/// `sum_points orientation * prod_m theta'(0) / (2 pi i theta(m t))` for
/// isolated points with tangent weights `m`, using the truncated product and
/// a central difference for `theta'(0)`.
pub fn truncation_theta_quotient(points: &[(Vec<i64>, i8)], t: Complex64, tau: Complex64) -> Complex64 {
    const FACTORS: usize = 400;
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let d = finite_difference(|v| truncation_theta_numeric(v, tau, FACTORS), Complex64::new(0.0, 0.0), 1e-5);
    points
        .iter()
        .map(|(ms, o)| {
            ms.iter().fold(Complex64::new(f64::from(*o), 0.0), |acc, m| {
                acc * d / (two_pi_i * truncation_theta_numeric(*m as f64 * t, tau, FACTORS))
            })
        })
        .sum()
}

/// Membership by reducing mod 2 and comparing with the listed images in
/// SL(2, F_2).
pub fn mod2_member(g: &GroupElement2x2, tag: Subgroup) -> bool {
    let r = |x: i64| x.rem_euclid(2);
    let m = [r(g.a), r(g.b), r(g.c), r(g.d)];
    let images: &[[i64; 4]] = match tag {
        Subgroup::Sl2z => return true,
        Subgroup::Gamma0Two => &[[1, 0, 0, 1], [1, 1, 0, 1]],
        Subgroup::GammaUpper0Two => &[[1, 0, 0, 1], [1, 0, 1, 1]],
        Subgroup::GammaTheta => &[[1, 0, 0, 1], [0, 1, 1, 0]],
    };
    images.contains(&m)
}
