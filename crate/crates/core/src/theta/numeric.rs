use num_complex::Complex64;

use super::series::{Trig, ThetaSeries};
use super::ThetaKind;
use crate::error::{Error, Result};
use crate::ring::rat_to_f64;

/// Smallest admissible `Im tau` unless the caller lowers it.
pub const TAU_FLOOR: f64 = 0.05;
/// Hard cap on the number of product factors.
pub const MAX_FACTORS: usize = 10_000;
/// Tolerances below this are not reachable in double precision.
pub const MIN_TOL: f64 = 1e-15;

const PI: f64 = std::f64::consts::PI;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// `q^e = exp(2 pi i tau e)`.
pub fn q_pow(tau: Complex64, e: f64) -> Complex64 {
    (2.0 * PI * i() * tau * e).exp()
}

fn check(tau: Complex64, tol: f64, floor: f64) -> Result<()> {
    if !(tau.im >= floor) {
        return Err(Error::TauBelowFloor(tau.im, floor));
    }
    if !(tol >= MIN_TOL) {
        return Err(Error::ToleranceUnreachable(tol));
    }
    Ok(())
}

/// `c(q) = prod_n (1 - q^n)`, truncated once `|q|^n < tol/10`.
pub fn euler_c(tau: Complex64, tol: f64) -> Result<Complex64> {
    check(tau, tol, TAU_FLOOR)?;
    Ok(euler_c_unchecked(tau, tol))
}

fn euler_c_unchecked(tau: Complex64, tol: f64) -> Complex64 {
    let q = q_pow(tau, 1.0);
    let mut qn = q;
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..MAX_FACTORS {
        if qn.norm() < tol / 10.0 {
            break;
        }
        acc *= 1.0 - qn;
        qn *= q;
    }
    acc
}

/// Product body at `w = e^{2 pi i v}` with the stopping rule
/// `|q|^e (|w| + |w|^{-1}) < tol/10`.
pub(crate) fn body_eval(kind: ThetaKind, w: Complex64, tau: Complex64, tol: f64) -> Complex64 {
    let (sign, first) = kind.factor_shape();
    let s = sign as f64;
    let w_inv = w.inv();
    let bound = w.norm() + w_inv.norm();
    let q_half = q_pow(tau, 0.5);
    let q = q_half * q_half;
    let mut qe = q_pow(tau, first as f64 / 2.0);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..MAX_FACTORS {
        if qe.norm() * bound < tol / 10.0 {
            break;
        }
        acc *= (1.0 + s * qe * w) * (1.0 + s * qe * w_inv);
        qe *= q;
    }
    acc
}

fn trig(t: Trig, v: Complex64) -> Complex64 {
    match t {
        Trig::TwoSin => 2.0 * (PI * v).sin(),
        Trig::TwoCos => 2.0 * (PI * v).cos(),
        Trig::One => Complex64::new(1.0, 0.0),
    }
}

/// Numeric value of a theta function.
pub fn theta_eval(kind: ThetaKind, v: Complex64, tau: Complex64, tol: f64) -> Result<Complex64> {
    theta_eval_with_floor(kind, v, tau, tol, TAU_FLOOR)
}

pub fn theta_eval_with_floor(
    kind: ThetaKind,
    v: Complex64,
    tau: Complex64,
    tol: f64,
    floor: f64,
) -> Result<Complex64> {
    check(tau, tol, floor)?;
    let p = kind.prefactor();
    let w = (2.0 * PI * i() * v).exp();
    Ok(euler_c_unchecked(tau, tol)
        * q_pow(tau, rat_to_f64(&p.q_offset))
        * trig(p.trig, v)
        * body_eval(kind, w, tau, tol))
}

/// `theta'(0, tau) = 2 pi q^{1/8} c(q)^3`.
pub fn theta_prime0(tau: Complex64, tol: f64) -> Result<Complex64> {
    let c = euler_c(tau, tol)?;
    Ok(2.0 * PI * q_pow(tau, 0.125) * c * c * c)
}

/// Evaluates the exact representation numerically, prefactor included.
pub fn eval_series(t: &ThetaSeries, v: Complex64, tau: Complex64) -> Complex64 {
    let w = (2.0 * PI * i() * v).exp();
    let body = t.body.eval_at(tau, |l| l.eval(w));
    euler_c_unchecked(tau, 1e-16).powi(t.prefactor.c_power as i32)
        * q_pow(tau, rat_to_f64(&t.prefactor.q_offset))
        * trig(t.prefactor.trig, v)
        * body
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::theta_qseries;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-13;

    #[test]
    fn zero_at_origin_and_odd_period() {
        let tau = i();
        assert!(theta_eval(ThetaKind::Theta, Complex64::new(0.0, 0.0), tau, TOL).unwrap().norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
            let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.5));
            let a = theta_eval(ThetaKind::Theta, v + 1.0, tau, TOL).unwrap();
            let b = theta_eval(ThetaKind::Theta, v, tau, TOL).unwrap();
            assert!((a + b).norm() < 1e-10 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn others_nonzero_at_origin() {
        for tau in [i(), Complex64::new(0.3, 0.6), Complex64::new(-0.2, 1.7)] {
            for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
                assert!(theta_eval(kind, Complex64::new(0.0, 0.0), tau, TOL).unwrap().norm() > 1e-3);
            }
        }
    }

    #[test]
    fn series_and_numeric_agree() {
        // |q| <= 0.3 means Im tau >= ln(1/0.3)/(2 pi)
        let tau = Complex64::new(0.17, 0.2);
        assert!(q_pow(tau, 1.0).norm() <= 0.3);
        for kind in ThetaKind::ALL {
            let s = theta_qseries(kind, 2 * 40);
            for v in [Complex64::new(0.1, 0.05), Complex64::new(-0.37, -0.1)] {
                let a = eval_series(&s, v, tau);
                let b = theta_eval(kind, v, tau, 1e-14).unwrap();
                assert!((a - b).norm() < 1e-10, "{kind:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let tau = i();
        let h = 1e-5;
        let f = |v: f64| theta_eval(ThetaKind::Theta, Complex64::new(v, 0.0), tau, 1e-15).unwrap();
        let fd = (f(h) - f(-h)) / (2.0 * h);
        assert!((fd - theta_prime0(tau, 1e-15).unwrap()).norm() < 1e-6);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            theta_eval(ThetaKind::Theta, Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.01), TOL),
            Err(Error::TauBelowFloor(..))
        ));
        assert!(matches!(
            theta_eval(ThetaKind::Theta, Complex64::new(0.1, 0.0), i(), 1e-20),
            Err(Error::ToleranceUnreachable(_))
        ));
    }
}
