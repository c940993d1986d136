use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::numeric::theta_eval;
use super::ThetaKind;
use crate::error::{Error, Result};

const PI: f64 = std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Law {
    S,
    T,
    /// `t -> t + a tau + b` with `a`, `b` even.
    Lattice { a: i64, b: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub t: Complex64,
    pub tau: Complex64,
}

/// Sign of the exponent in `theta(t + a tau + b) = e^{+-pi i (a^2 tau + 2 a t)} theta(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExponentSign {
    Positive,
    Negative,
}

impl ExponentSign {
    pub fn factor(self) -> f64 {
        match self {
            Self::Positive => 1.0,
            Self::Negative => -1.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSignReport {
    /// Max residual with the positive exponent `e^{+pi i (a^2 tau + 2 a t)}`.
    pub positive_max: f64,
    pub negative_max: f64,
    /// Signs whose residuals are all below tolerance. Shifts with `a = 0`
    /// cannot tell the two apart.
    pub holds: Vec<ExponentSign>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformReport {
    pub kind: ThetaKind,
    pub law: Law,
    pub tol: f64,
    /// Residuals of `lhs = factor * base` as `|lhs/factor - base| / max(1, |base|)`.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub passed: bool,
    pub lattice: Option<LatticeSignReport>,
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// 5x5 grid with `Im tau` in `[0.5, 2]` and `|Re t|, |Im t| <= 1`.
pub fn standard_grid() -> Vec<Sample> {
    let mut out = Vec::with_capacity(25);
    for a in 0..5 {
        for b in 0..5 {
            let t = Complex64::new(-1.0 + 0.5 * a as f64, 1.0 - 0.5 * b as f64);
            let tau = Complex64::new(0.1 * (a as f64 - 2.0), 0.5 + 0.375 * b as f64);
            out.push(Sample { t, tau });
        }
    }
    out
}

/// `(lhs, factor, base)` of a law `lhs = factor * base` at one sample.
/// The lattice law uses `sign`.
fn sides(kind: ThetaKind, law: Law, s: Sample, sign: ExponentSign, tol: f64) -> Result<(Complex64, Complex64, Complex64)> {
    let Sample { t, tau } = s;
    let th = |k: ThetaKind, v: Complex64, tau: Complex64| theta_eval(k, v, tau, tol);
    let one = Complex64::new(1.0, 0.0);
    Ok(match law {
        Law::T => {
            let lhs = th(kind, t, tau + 1.0)?;
            match kind {
                ThetaKind::Theta | ThetaKind::Theta1 => (lhs, (PI * i() / 4.0).exp(), th(kind, t, tau)?),
                ThetaKind::Theta2 => (lhs, one, th(ThetaKind::Theta3, t, tau)?),
                ThetaKind::Theta3 => (lhs, one, th(ThetaKind::Theta2, t, tau)?),
            }
        }
        Law::S => {
            let lhs = th(kind, t / tau, -1.0 / tau)?;
            // sqrt(tau/i) e^{pi i t^2/tau}, principal branch
            let f = (tau / i()).sqrt() * (PI * i() * t * t / tau).exp();
            match kind {
                ThetaKind::Theta => (lhs, f / i(), th(kind, t, tau)?),
                ThetaKind::Theta1 => (lhs, f, th(ThetaKind::Theta2, t, tau)?),
                ThetaKind::Theta2 => (lhs, f, th(ThetaKind::Theta1, t, tau)?),
                ThetaKind::Theta3 => (lhs, f, th(ThetaKind::Theta3, t, tau)?),
            }
        }
        Law::Lattice { a, b } => {
            let (a, b) = (a as f64, b as f64);
            let lhs = th(kind, t + a * tau + b, tau)?;
            let e = sign.factor() * PI * i() * (a * a * tau + 2.0 * a * t);
            (lhs, e.exp(), th(kind, t, tau)?)
        }
    })
}

/// `|lhs/factor - base| / max(1, |base|)`. Dividing by the factor first keeps
/// the residual meaningful when the factor is exponentially large.
fn scaled(lhs: Complex64, factor: Complex64, base: Complex64) -> f64 {
    (lhs / factor - base).norm() / base.norm().max(1.0)
}

fn residuals(kind: ThetaKind, law: Law, samples: &[Sample], sign: ExponentSign, tol: f64) -> Result<Vec<f64>> {
    samples
        .par_iter()
        .map(|s| sides(kind, law, *s, sign, tol * 1e-3).map(|(l, f, b)| scaled(l, f, b)))
        .collect()
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

/// Evaluates a transformation law on every sample. Residuals are reported,
/// never asserted; for the lattice law both exponent signs are tried.
pub fn verify_transform(kind: ThetaKind, law: Law, samples: &[Sample], tol: f64) -> Result<TransformReport> {
    if let Law::Lattice { a, b } = law {
        if a % 2 != 0 || b % 2 != 0 {
            return Err(Error::Precondition(format!("lattice shift ({a}, {b}) must be even")));
        }
        let pos = residuals(kind, law, samples, ExponentSign::Positive, tol)?;
        let neg = residuals(kind, law, samples, ExponentSign::Negative, tol)?;
        let (pm, nm) = (max_of(&pos), max_of(&neg));
        let mut holds = Vec::new();
        if pm < tol {
            holds.push(ExponentSign::Positive);
        }
        if nm < tol {
            holds.push(ExponentSign::Negative);
        }
        let residuals = if pm < nm { pos } else { neg };
        let max_residual = max_of(&residuals);
        return Ok(TransformReport {
            kind,
            law,
            tol,
            max_residual,
            passed: !holds.is_empty(),
            residuals,
            lattice: Some(LatticeSignReport {
                positive_max: pm,
                negative_max: nm,
                holds,
            }),
        });
    }
    let residuals = residuals(kind, law, samples, ExponentSign::Negative, tol)?;
    let max_residual = max_of(&residuals);
    Ok(TransformReport {
        kind,
        law,
        tol,
        passed: max_residual < tol,
        max_residual,
        residuals,
        lattice: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_and_t_hold_for_all_kinds() {
        let grid = standard_grid();
        for kind in ThetaKind::ALL {
            for law in [Law::S, Law::T] {
                let r = verify_transform(kind, law, &grid, 1e-9).unwrap();
                assert!(r.passed, "{kind:?} {law:?}: {}", r.max_residual);
            }
        }
    }

    #[test]
    fn lattice_sign_is_negative() {
        let grid = standard_grid();
        for (a, b) in [(2, 0), (0, 2), (2, 2), (-2, 4)] {
            let r = verify_transform(ThetaKind::Theta, Law::Lattice { a, b }, &grid, 1e-9).unwrap();
            let l = r.lattice.unwrap();
            if a == 0 {
                assert_eq!(l.holds.len(), 2, "pure real shifts do not distinguish the signs");
            } else {
                assert_eq!(l.holds, vec![ExponentSign::Negative]);
            }
        }
    }

    #[test]
    fn odd_shift_rejected() {
        assert!(verify_transform(ThetaKind::Theta, Law::Lattice { a: 1, b: 0 }, &standard_grid(), 1e-9).is_err());
    }
}
