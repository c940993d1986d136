//! Per-root factors of the fixed-point integrands.
//!
//! Roots are normalized: a topological root `a` enters through `a/2 + pi i k t`,
//! so every `2 pi i` prefactor has already cancelled. With `s = e^{a/2} z^k`,
//! `z = e^{pi i t}`, the q^0 parts are
//!
//! * Ahat type: `1/(s - s^-1)`, times `a` for a fixed pair,
//! * tanh type: `(s + s^-1) / (2 (s - s^-1))`, times `a` for a fixed pair.
//!
//! The theta path multiplies these by theta-body quotients, the direct path
//! by `exp` of Adams-operation sums. Both must give the same series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ktheory::{r_variant_log, witten_log, RVariant};
use crate::ring::{int, rat, Invertible, QAlgebra, Ring};
use crate::series::{Laurent, LaurentFrac, PowerSeries, QSeries};
use crate::theta::{q_pow, theta_body, theta_eval, theta_prime0, ThetaKind};

const PI: f64 = std::f64::consts::PI;

/// Which evaluation route builds the q-dependence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Path {
    Theta,
    Direct,
}

/// The bundle-level twist a root carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFactor {
    /// Ahat-type root of `F`, optionally with the Witten element.
    Ahat { witten: bool },
    /// Root of `Fperp` twisted by one of the `R` variants.
    Normal(RVariant),
}

impl RVariant {
    /// Theta function in the numerator of the normal-root quotient. The
    /// `Lambda_{q^(m-1/2)}` factors of `R'` multiply to the `theta3` body,
    /// those of `R''` to the `theta2` body.
    pub fn theta_kind(self) -> ThetaKind {
        match self {
            Self::R => ThetaKind::Theta1,
            Self::RPrime => ThetaKind::Theta3,
            Self::RDoublePrime => ThetaKind::Theta2,
        }
    }
}

fn uses_tanh(f: RootFactor) -> bool {
    f == RootFactor::Normal(RVariant::R)
}

// ---------------------------------------------------------------- exact

fn z_mono(e: i64) -> Laurent {
    Laurent::monomial(int(1), e)
}

fn ps_scale_laurent(p: &PowerSeries<Laurent>, l: &Laurent) -> PowerSeries<Laurent> {
    p.map(|c| c.times(l))
}

/// q^0 prefactor as a series in the root, exact in `z`.
fn exact_prefactor(f: RootFactor, k: i64, len: usize) -> Result<PowerSeries<LaurentFrac>> {
    let extra = usize::from(k == 0);
    let h = PowerSeries::exp_linear(&Laurent::one(), &rat(1, 2), len + extra);
    let h_inv = PowerSeries::exp_linear(&Laurent::one(), &rat(-1, 2), len + extra);
    let s = ps_scale_laurent(&h, &z_mono(k));
    let s_inv = ps_scale_laurent(&h_inv, &z_mono(-k));
    let mut den = s.minus(&s_inv);
    let mut num = s.plus(&s_inv).scale(&rat(1, 2));
    if k == 0 {
        den = den.divide_by_x_power(1)?;
        num = num.truncate(len);
    }
    let den = den.map(|c| LaurentFrac::from_laurent(c.clone()));
    let inv = den
        .try_inv()
        .ok_or_else(|| Error::Precondition("prefactor has a non-invertible constant term".into()))?;
    Ok(if uses_tanh(f) {
        inv.times(&num.map(|c| LaurentFrac::from_laurent(c.clone())))
    } else {
        inv
    })
}

fn lift_rational(q: &QSeries<crate::ring::Rational>, proto: &PowerSeries<Laurent>) -> QSeries<PowerSeries<Laurent>> {
    q.map(|c| proto.one_like().scale(c))
}

fn inv_series<R: Invertible>(s: &QSeries<R>) -> Result<QSeries<R>> {
    s.inv()
}

/// The q-dependent factor as a q-series over power series in the root.
fn exact_body(f: RootFactor, k: i64, path: Path, order: usize, len: usize) -> Result<QSeries<PowerSeries<Laurent>>> {
    let w = ps_scale_laurent(&PowerSeries::exp_linear(&Laurent::one(), &int(1), len), &z_mono(2 * k));
    let w_inv = ps_scale_laurent(&PowerSeries::exp_linear(&Laurent::one(), &int(-1), len), &z_mono(-2 * k));
    let one = w.one_like();
    if f == (RootFactor::Ahat { witten: false }) {
        return Ok(QSeries::constant(one, order));
    }
    match path {
        Path::Theta => {
            let c2 = lift_rational(&QSeries::euler_power(2, order), &w);
            let base = c2.mul(&inv_series(&theta_body(ThetaKind::Theta, &w, &w_inv, order))?);
            match f {
                RootFactor::Ahat { .. } => Ok(base),
                RootFactor::Normal(v) => {
                    let kind = v.theta_kind();
                    let at_one = theta_body(kind, &int(1), &int(1), order);
                    let ratio = theta_body(kind, &w, &w_inv, order).mul(&inv_series(&lift_rational(&at_one, &w))?);
                    Ok(base.mul(&ratio))
                }
            }
        }
        Path::Direct => {
            let reduced = w.plus(&w_inv).minus(&one.scale(&int(2)));
            let log = match f {
                RootFactor::Ahat { .. } => witten_log(&reduced, order),
                RootFactor::Normal(v) => r_variant_log(&reduced, v, order),
            };
            log.exp()
        }
    }
}

/// Exact per-root factor `f(x)` as a power series of length `len` whose
/// coefficients are q-series over `Q(z)`, `z = e^{pi i t}`.
pub fn exact_root_factor(
    f: RootFactor,
    k: i64,
    path: Path,
    order: usize,
    len: usize,
) -> Result<PowerSeries<QSeries<LaurentFrac>>> {
    let pre = exact_prefactor(f, k, len)?;
    let body = exact_body(f, k, path, order, len)?;
    let offset = body.offset().clone();
    let transposed = PowerSeries::new(
        (0..len)
            .map(|i| {
                QSeries::from_coeffs(
                    offset.clone(),
                    body.coeffs().iter().map(|p| LaurentFrac::from_laurent(p.coeff(i))).collect(),
                )
            })
            .collect(),
    );
    let pre = pre.map(|c| QSeries::constant(c.clone(), order));
    Ok(pre.times(&transposed))
}

// ---------------------------------------------------------------- numeric

/// Numeric point `(t, tau)` with the internal product tolerance.
#[derive(Clone, Copy, Debug)]
pub struct Point {
    pub t: Complex64,
    pub tau: Complex64,
    pub tol: f64,
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// `sum_k eps_k c^k / k (w^k + w^-k - 2)` with `eps_k = 1` (Sym) or
/// `(-1)^(k-1)` (Lambda).
fn op_log(c: Complex64, w: Complex64, lambda: bool, tol: f64) -> Result<Complex64> {
    let big = w.norm().max(w.inv().norm());
    if c.norm() * big >= 1.0 {
        return Err(Error::Precondition(
            "point lies outside the convergence region of the direct expansion".into(),
        ));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut ck, mut wk) = (c, w);
    for k in 1..=crate::theta::MAX_FACTORS {
        let term = ck * (wk + wk.inv() - 2.0) / k as f64;
        let sign = if lambda && k % 2 == 0 { -1.0 } else { 1.0 };
        acc += sign * term;
        if (ck.norm() * (big.powi(k as i32) + 2.0)) < tol / 10.0 {
            break;
        }
        ck *= c;
        wk *= w;
    }
    Ok(acc)
}

fn direct_log(f: RootFactor, w: Complex64, p: Point) -> Result<Complex64> {
    let big = w.norm().max(w.inv().norm());
    let mut acc = Complex64::new(0.0, 0.0);
    let q = q_pow(p.tau, 1.0);
    let mut qj = q;
    for _ in 0..crate::theta::MAX_FACTORS {
        if qj.norm() * (big + 2.0) < p.tol / 10.0 {
            break;
        }
        acc += op_log(qj, w, false, p.tol)?;
        qj *= q;
    }
    if let RootFactor::Normal(v) = f {
        for m in 1..=crate::theta::MAX_FACTORS {
            let tw = v.lambda_twist(m);
            let c = f64::from(tw.sign) * q_pow(p.tau, tw.half_exp as f64 / 2.0);
            if c.norm() * (big + 2.0) < p.tol / 10.0 {
                break;
            }
            acc += op_log(c, w, true, p.tol)?;
        }
    }
    Ok(acc)
}

/// Numeric per-root factor at root value `x`.
pub fn numeric_root_factor(f: RootFactor, k: i64, path: Path, x: Complex64, p: Point) -> Result<Complex64> {
    let lead = if k == 0 { x } else { Complex64::new(1.0, 0.0) };
    let arg = x / 2.0 + PI * i() * k as f64 * p.t;
    let s = arg.exp();
    let sinh2 = s - s.inv();
    let q0 = if uses_tanh(f) { (s + s.inv()) / (2.0 * sinh2) } else { sinh2.inv() };
    if f == (RootFactor::Ahat { witten: false }) {
        return Ok(lead * q0);
    }
    let w = s * s;
    match path {
        Path::Direct => Ok(lead * q0 * direct_log(f, w, p)?.exp()),
        Path::Theta => {
            let v = x / (2.0 * PI * i()) + k as f64 * p.t;
            let base = theta_prime0(p.tau, p.tol)? / (2.0 * PI * i() * theta_eval(ThetaKind::Theta, v, p.tau, p.tol)?);
            match f {
                RootFactor::Ahat { .. } => Ok(lead * base),
                RootFactor::Normal(var) => {
                    let kind = var.theta_kind();
                    let ratio = theta_eval(kind, v, p.tau, p.tol)? / theta_eval(kind, Complex64::new(0.0, 0.0), p.tau, p.tol)?;
                    Ok(lead * base * ratio)
                }
            }
        }
    }
}

/// Distance from `u` to the lattice `Z + tau Z`.
pub fn lattice_distance(u: Complex64, tau: Complex64) -> f64 {
    let m0 = (u.im / tau.im).round();
    let mut best = f64::INFINITY;
    for dm in -1..=1 {
        let m = m0 + dm as f64;
        let v = u - m * tau;
        let n0 = v.re.round();
        for dn in -1..=1 {
            best = best.min((v - (n0 + dn as f64)).norm());
        }
    }
    best
}

/// Pole threshold for `dist(k t, Z + tau Z)`.
pub const POLE_EPS: f64 = 1e-8;

/// Taylor coefficients `x^0 .. x^(len-1)` of `f` by the trapezoid rule on a
/// circle of radius `r`.
pub fn cauchy_taylor<F>(f: F, len: usize, r: f64) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const POINTS: usize = 64;
    let values: Vec<(Complex64, Complex64)> = (0..POINTS)
        .map(|j| {
            let e = (2.0 * PI * i() * j as f64 / POINTS as f64).exp();
            f(r * e).map(|v| (e, v))
        })
        .collect::<Result<_>>()?;
    Ok((0..len)
        .map(|n| {
            let s: Complex64 = values.iter().map(|(e, v)| v * e.powi(-(n as i32))).sum();
            s / (POINTS as f64 * r.powi(n as i32))
        })
        .collect())
}

/// Numeric per-root factor as a Taylor series of length `len`. Pair
/// factors (`k = 0`) are even, so their odd coefficients are set to zero.
pub fn numeric_root_series(f: RootFactor, k: i64, path: Path, len: usize, p: Point) -> Result<PowerSeries<Complex64>> {
    if k != 0 {
        let d = lattice_distance(k as f64 * p.t, p.tau);
        if d < POLE_EPS {
            return Err(Error::Pole(format!("rotation number {k} at t = {}", p.t)));
        }
        if len == 1 {
            return Ok(PowerSeries::new(vec![numeric_root_factor(f, k, path, Complex64::new(0.0, 0.0), p)?]));
        }
        let r = (PI * d).min(0.5);
        return Ok(PowerSeries::new(cauchy_taylor(|x| numeric_root_factor(f, k, path, x, p), len, r)?));
    }
    let r = (PI * p.tau.im.min(1.0)).min(0.5);
    let mut c = cauchy_taylor(|x| numeric_root_factor(f, 0, path, x, p), len, r)?;
    for (n, v) in c.iter_mut().enumerate() {
        if n % 2 == 1 {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    Ok(PowerSeries::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::grid_order;

    fn pt(t: (f64, f64), tau: (f64, f64)) -> Point {
        Point {
            t: Complex64::new(t.0, t.1),
            tau: Complex64::new(tau.0, tau.1),
            tol: 1e-15,
        }
    }

    fn eval_exact(s: &PowerSeries<QSeries<LaurentFrac>>, x: Complex64, p: Point) -> Complex64 {
        let z = (PI * i() * p.t).exp();
        s.coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, q| acc * x + q.eval_at(p.tau, |c| c.eval(z)))
    }

    #[test]
    fn exact_paths_agree() {
        let order = grid_order(3);
        let kinds = [
            RootFactor::Ahat { witten: true },
            RootFactor::Normal(RVariant::R),
            RootFactor::Normal(RVariant::RPrime),
            RootFactor::Normal(RVariant::RDoublePrime),
        ];
        for f in kinds {
            for k in [0, 1, -2] {
                let a = exact_root_factor(f, k, Path::Theta, order, 3).unwrap();
                let b = exact_root_factor(f, k, Path::Direct, order, 3).unwrap();
                assert_eq!(a, b, "{f:?} k={k}");
            }
        }
    }

    #[test]
    fn numeric_paths_agree_and_match_exact() {
        let p = pt((0.23, 0.01), (0.1, 1.1));
        let order = grid_order(12);
        for f in [RootFactor::Ahat { witten: true }, RootFactor::Normal(RVariant::RPrime), RootFactor::Normal(RVariant::R)] {
            for k in [1, 2] {
                let x = Complex64::new(0.05, -0.02);
                let a = numeric_root_factor(f, k, Path::Theta, x, p).unwrap();
                let b = numeric_root_factor(f, k, Path::Direct, x, p).unwrap();
                assert!((a - b).norm() < 1e-11 * a.norm().max(1.0), "{f:?}: {a} vs {b}");
                let e = exact_root_factor(f, k, Path::Theta, order, 4).unwrap();
                let s = numeric_root_series(f, k, Path::Theta, 4, p).unwrap();
                for n in 0..4 {
                    let ex = e.coeffs()[n].eval_at(p.tau, |c| c.eval((PI * i() * p.t).exp()));
                    assert!((ex - s.coeffs()[n]).norm() < 1e-8, "{f:?} k={k} n={n}: {ex} vs {}", s.coeffs()[n]);
                }
                let _ = eval_exact(&e, x, p);
            }
        }
    }

    #[test]
    fn q0_factor_shapes() {
        // moving Ahat root at x = 0: 1 / (z - z^-1)
        let e = exact_root_factor(RootFactor::Ahat { witten: false }, 1, Path::Direct, 1, 1).unwrap();
        let v = &e.coeffs()[0].coeffs()[0];
        assert_eq!(v.times(&LaurentFrac::from_laurent(Laurent::binomial(1, -1))), v.one_like());
        // fixed pair: x / (2 sinh(x/2)) = 1 - x^2/24 + ...
        let e = exact_root_factor(RootFactor::Ahat { witten: false }, 0, Path::Direct, 1, 3).unwrap();
        assert_eq!(e.coeffs()[2].coeffs()[0], LaurentFrac::constant(rat(-1, 24)));
    }

    #[test]
    fn poles_rejected() {
        let p = pt((0.5, 0.0), (0.0, 1.0));
        assert!(matches!(
            numeric_root_series(RootFactor::Ahat { witten: true }, 2, Path::Theta, 1, p),
            Err(Error::Pole(_))
        ));
        assert!(lattice_distance(Complex64::new(0.3, 1.0), Complex64::new(0.3, 1.0)) < 1e-12);
    }
}
