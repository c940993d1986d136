use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::factors::{exact_root_factor, numeric_root_series, Path, Point, RootFactor};
use super::model::{e_label, f0_label, fperp0_label, l_label, EquivariantModel, FixedComponent, Mode};
use crate::charclass::{l_factor, multiplicative_class, pair_fundamental, ClassKind, GradedPoly, RootGroup};
use crate::error::{Error, Result};
use crate::ktheory::RVariant;
use crate::ring::{int, Invertible, QAlgebra, Rational, Ring};
use crate::series::{grid_order, LaurentFrac, PowerSeries, QSeries};
use crate::theta::TAU_FLOOR;

/// Tolerance of the theta products and Adams sums inside one evaluation.
const INNER_TOL: f64 = 1e-15;

/// The twisted operator whose Lefschetz number is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LefschetzTwist {
    /// The plain Dirac operator on `F` with the `phi`-density; FOLIATED only.
    Dirac,
    /// `Psi_q(F) (x) phi`; FOLIATED only.
    Witten,
    /// `Psi_q(F) (x) R_q(Fperp)` and its primed versions; SPLIT only.
    R(RVariant),
}

struct GroupPlan {
    group: RootGroup,
    factor: RootFactor,
    k: i64,
}

fn check_twist(model: &EquivariantModel, twist: LefschetzTwist) -> Result<()> {
    match (model.mode, twist) {
        (Mode::Foliated, LefschetzTwist::R(_)) => Err(Error::Precondition(
            "R twists need a SPLIT model".into(),
        )),
        (Mode::Split, LefschetzTwist::Dirac | LefschetzTwist::Witten) => Err(Error::Precondition(
            "SPLIT models take the R twists".into(),
        )),
        _ => Ok(()),
    }
}

fn plan(c: &FixedComponent, twist: LefschetzTwist) -> Vec<GroupPlan> {
    let ahat = RootFactor::Ahat {
        witten: twist != LefschetzTwist::Dirac,
    };
    let mut out = vec![GroupPlan {
        group: RootGroup::pairs(f0_label(), c.f0_pairs),
        factor: ahat,
        k: 0,
    }];
    out.extend(c.moving_f.iter().enumerate().map(|(j, p)| GroupPlan {
        group: RootGroup::complex(&e_label(j), p.rank),
        factor: ahat,
        k: p.m,
    }));
    if let LefschetzTwist::R(v) = twist {
        out.push(GroupPlan {
            group: RootGroup::pairs(fperp0_label(), c.fperp0_pairs),
            factor: RootFactor::Normal(v),
            k: 0,
        });
        out.extend(c.moving_fperp.iter().enumerate().map(|(j, p)| GroupPlan {
            group: RootGroup::complex(&l_label(j), p.rank),
            factor: RootFactor::Normal(v),
            k: p.n,
        }));
    }
    out.retain(|g| g.group.count > 0);
    out
}

/// Series length in the root variable that a group needs up to degree `top`.
fn root_len(group: &RootGroup, top: u32) -> usize {
    match group.kind {
        ClassKind::Pontryagin => 2 * (top / 4) as usize + 1,
        ClassKind::Chern => (top / 2) as usize + 1,
    }
}

/// The homogeneous degree-`2l` part of the Hirzebruch `L(Fperp0)`; the
/// constant 1 outside FOLIATED mode.
fn phi_density(model: &EquivariantModel, c: &FixedComponent) -> Result<GradedPoly<Rational>> {
    let top = c.dim_n;
    if model.mode == Mode::Split {
        return Ok(GradedPoly::one(int(1), top));
    }
    let g = RootGroup::pairs(fperp0_label(), c.fperp0_pairs);
    let l = multiplicative_class(&l_factor(top as usize + 2), &g, top)?;
    Ok(l.part(2 * model.l))
}

fn assemble<C: QAlgebra + Invertible>(
    c: &FixedComponent,
    factors: Vec<(RootGroup, PowerSeries<C>)>,
    phi: &GradedPoly<Rational>,
    unit: C,
) -> Result<C> {
    let top = c.dim_n;
    let mut density = phi.map(unit.clone(), |r| unit.scale(r));
    for (g, f) in &factors {
        density = density.times(&multiplicative_class(f, g, top)?);
    }
    let v = pair_fundamental(&density, &c.numbers)?;
    Ok(if c.orientation < 0 { v.negated() } else { v })
}

fn component_exact(
    model: &EquivariantModel,
    c: &FixedComponent,
    twist: LefschetzTwist,
    path: Path,
    order: usize,
) -> Result<QSeries<LaurentFrac>> {
    let top = c.dim_n;
    let factors = plan(c, twist)
        .into_iter()
        .map(|g| {
            let f = exact_root_factor(g.factor, g.k, path, order, root_len(&g.group, top))?;
            Ok((g.group, f))
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = QSeries::constant(LaurentFrac::constant(int(1)), order);
    assemble(c, factors, &phi_density(model, c)?, unit)
}

fn component_numeric(
    model: &EquivariantModel,
    c: &FixedComponent,
    twist: LefschetzTwist,
    path: Path,
    p: Point,
) -> Result<Complex64> {
    let top = c.dim_n;
    let factors = plan(c, twist)
        .into_iter()
        .map(|g| {
            let f = numeric_root_series(g.factor, g.k, path, root_len(&g.group, top), p)?;
            Ok((g.group, f))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(c, factors, &phi_density(model, c)?, Complex64::new(1.0, 0.0))
}

/// Exact sum over fixed components as a q-series (to `q^order_q`) over
/// `Q(z)`, `z = e^{pi i t}`.
pub fn fixed_point_series(
    model: &EquivariantModel,
    twist: LefschetzTwist,
    path: Path,
    order_q: u32,
) -> Result<QSeries<LaurentFrac>> {
    check_twist(model, twist)?;
    let order = grid_order(order_q);
    let parts = model
        .components
        .par_iter()
        .map(|c| component_exact(model, c, twist, path, order))
        .collect::<Result<Vec<_>>>()?;
    let zero = QSeries::constant(LaurentFrac::constant(int(0)), order);
    Ok(parts.iter().fold(zero, |acc, s| acc.add(s)))
}

/// Numeric sum over fixed components at `(t, tau)`.
pub fn fixed_point_value(
    model: &EquivariantModel,
    twist: LefschetzTwist,
    path: Path,
    t: Complex64,
    tau: Complex64,
) -> Result<Complex64> {
    check_twist(model, twist)?;
    if !(tau.im >= TAU_FLOOR) {
        return Err(Error::TauBelowFloor(tau.im, TAU_FLOOR));
    }
    let p = Point { t, tau, tol: INNER_TOL };
    let parts = model
        .components
        .par_iter()
        .map(|c| component_numeric(model, c, twist, path, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().sum())
}

/// Lefschetz number of the twisted operator at `g = e^{2 pi i t}`, summed
/// from the fixed-point formula with sinh/tanh factors and Adams sums.
pub fn lefschetz(model: &EquivariantModel, twist: LefschetzTwist, t: Complex64, tau: Complex64) -> Result<Complex64> {
    fixed_point_value(model, twist, Path::Direct, t, tau)
}

pub fn lefschetz_series(model: &EquivariantModel, twist: LefschetzTwist, order_q: u32) -> Result<QSeries<LaurentFrac>> {
    fixed_point_series(model, twist, Path::Direct, order_q)
}

/// `H(t, tau)`, the theta-function form of the `Psi_q (x) phi` Lefschetz number.
pub fn h_eval(model: &EquivariantModel, t: Complex64, tau: Complex64) -> Result<Complex64> {
    fixed_point_value(model, LefschetzTwist::Witten, Path::Theta, t, tau)
}

pub fn h_series(model: &EquivariantModel, order_q: u32) -> Result<QSeries<LaurentFrac>> {
    fixed_point_series(model, LefschetzTwist::Witten, Path::Theta, order_q)
}

/// `G`, `G'`, `G''` in theta-function form.
pub fn g_eval(model: &EquivariantModel, v: RVariant, t: Complex64, tau: Complex64) -> Result<Complex64> {
    fixed_point_value(model, LefschetzTwist::R(v), Path::Theta, t, tau)
}

pub fn g_series(model: &EquivariantModel, v: RVariant, order_q: u32) -> Result<QSeries<LaurentFrac>> {
    fixed_point_series(model, LefschetzTwist::R(v), Path::Theta, order_q)
}

/// Numeric value of an exact fixed-point series at `(t, tau)`.
pub fn eval_fixed_series(s: &QSeries<LaurentFrac>, t: Complex64, tau: Complex64) -> Complex64 {
    let z = (Complex64::new(0.0, std::f64::consts::PI) * t).exp();
    s.eval_at(tau, |c| c.eval(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::CharNumbers;
    use crate::equivariant::model::{MovingF, MovingFperp};
    use crate::genus::witten_genus;
    use crate::series::Laurent;
    use std::collections::BTreeMap;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    fn point(ms: &[i64], ns: &[i64]) -> FixedComponent {
        FixedComponent::point(
            1,
            ms.iter().map(|&m| MovingF { rank: 1, m }).collect(),
            ns.iter().map(|&n| MovingFperp { rank: 1, n }).collect(),
        )
        .unwrap()
    }

    fn s2() -> EquivariantModel {
        EquivariantModel::new(Mode::Foliated, vec![point(&[1], &[]), point(&[-1], &[])], 1, 0, 0).unwrap()
    }

    #[test]
    fn s2_dirac_vanishes_exactly() {
        let s = lefschetz_series(&s2(), LefschetzTwist::Dirac, 2).unwrap();
        assert!(s.is_zero());
        let one = EquivariantModel::new(Mode::Foliated, vec![point(&[1], &[])], 1, 0, 0).unwrap();
        let s = lefschetz_series(&one, LefschetzTwist::Dirac, 0).unwrap();
        let v = s.coeffs()[0].times(&LaurentFrac::from_laurent(Laurent::binomial(1, -1)));
        assert!(v.is_one());
    }

    #[test]
    fn s2_witten_vanishes_both_paths() {
        assert!(h_series(&s2(), 3).unwrap().is_zero());
        assert!(lefschetz_series(&s2(), LefschetzTwist::Witten, 3).unwrap().is_zero());
        assert!(h_eval(&s2(), c(0.21, 0.03), c(0.1, 1.0)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn empty_model_is_zero() {
        let m = EquivariantModel::new(Mode::Foliated, vec![], 0, 0, 0).unwrap();
        assert_eq!(h_eval(&m, c(0.3, 0.0), c(0.0, 1.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn trivial_action_reduces_to_witten_genus() {
        let mut numbers = BTreeMap::new();
        numbers.insert("p1(F0)".parse().unwrap(), int(-48));
        let k3 = FixedComponent::new(4, 1, 2, 0, vec![], vec![], numbers).unwrap();
        let m = EquivariantModel::new(Mode::Foliated, vec![k3], 2, 0, 0).unwrap();
        let h = h_series(&m, 3).unwrap();
        let k3n = CharNumbers::from_pairs(4, &[("p1", int(-48))], Some(true)).unwrap();
        let w = witten_genus(&k3n, 3).unwrap();
        for (a, b) in h.coeffs().iter().zip(w.coeffs()) {
            assert_eq!(a, &LaurentFrac::constant(b.clone()));
        }
    }

    #[test]
    fn dual_paths_agree_on_split_points() {
        let m = EquivariantModel::new(
            Mode::Split,
            vec![point(&[1], &[2]), point(&[-1], &[1]), point(&[1], &[-3])],
            1,
            1,
            0,
        )
        .unwrap();
        for v in RVariant::ALL {
            let a = g_eval(&m, v, c(0.17, 0.01), c(-0.2, 0.9)).unwrap();
            let b = lefschetz(&m, LefschetzTwist::R(v), c(0.17, 0.01), c(-0.2, 0.9)).unwrap();
            assert!((a - b).norm() < 1e-10, "{v:?}: {a} vs {b}");
            let s = g_series(&m, v, 2).unwrap();
            assert_eq!(s, lefschetz_series(&m, LefschetzTwist::R(v), 2).unwrap());
        }
    }

    #[test]
    fn twist_mode_mismatch() {
        assert!(h_eval(
            &EquivariantModel::new(Mode::Split, vec![], 0, 0, 0).unwrap(),
            c(0.1, 0.0),
            c(0.0, 1.0)
        )
        .is_err());
    }

    #[test]
    fn pole_detected() {
        assert!(matches!(h_eval(&s2(), c(1.0, 0.0), c(0.0, 1.0)), Err(Error::Pole(_))));
    }
}
