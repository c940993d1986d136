use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lefschetz::{g_eval, h_eval};
use super::model::{anomaly_check, EquivariantModel, Mode};
use crate::error::{Error, Result};
use crate::ktheory::RVariant;
use crate::ring::{int, rat, rat_to_f64, rat_to_string, Rational};

const PI: f64 = std::f64::consts::PI;

/// An element of SL(2, Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupElement2x2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GroupElement2x2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let g = Self { a, b, c, d };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let det = self.a * self.d - self.b * self.c;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(())
    }

    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Self = Self { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Self = Self { a: 1, b: 1, c: 0, d: 1 };

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn act(&self, tau: Complex64) -> Complex64 {
        (self.a as f64 * tau + self.b as f64) / (self.c as f64 * tau + self.d as f64)
    }
}

impl fmt::Display for GroupElement2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Subgroup {
    #[serde(rename = "SL2Z")]
    Sl2z,
    #[serde(rename = "GAMMA0_2")]
    Gamma0Two,
    #[serde(rename = "GAMMA_UPPER0_2")]
    GammaUpper0Two,
    GammaTheta,
}

impl Subgroup {
    pub const ALL: [Subgroup; 4] = [Self::Sl2z, Self::Gamma0Two, Self::GammaUpper0Two, Self::GammaTheta];

    /// Generators used by the residual checks (up to `-I`).
    pub fn generators(self) -> Vec<GroupElement2x2> {
        let m = |a, b, c, d| GroupElement2x2 { a, b, c, d };
        match self {
            Self::Sl2z => vec![GroupElement2x2::S, GroupElement2x2::T],
            Self::Gamma0Two => vec![GroupElement2x2::T, m(1, 0, 2, 1)],
            Self::GammaUpper0Two => vec![m(1, 2, 0, 1), m(1, 0, 1, 1)],
            Self::GammaTheta => vec![GroupElement2x2::S, m(1, 2, 0, 1)],
        }
    }

    /// The twisted function that transforms under this subgroup.
    pub fn variant(self) -> Option<RVariant> {
        match self {
            Self::Sl2z => None,
            Self::Gamma0Two => Some(RVariant::R),
            Self::GammaUpper0Two => Some(RVariant::RDoublePrime),
            Self::GammaTheta => Some(RVariant::RPrime),
        }
    }
}

/// Mod-2 congruence membership.
pub fn subgroup_member(g: &GroupElement2x2, tag: Subgroup) -> Result<bool> {
    g.check()?;
    let even = |x: i64| x.rem_euclid(2) == 0;
    Ok(match tag {
        Subgroup::Sl2z => true,
        Subgroup::Gamma0Two => even(g.c),
        Subgroup::GammaUpper0Two => even(g.b),
        Subgroup::GammaTheta => {
            let identity = even(g.b) && even(g.c);
            let antidiagonal = even(g.a) && even(g.d);
            identity || antidiagonal
        }
    })
}

/// Index, weight and modular group of a Jacobi form over the lattice (2Z)^2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiFormMeta {
    #[serde(serialize_with = "ser_rat")]
    pub index: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub weight: Rational,
    pub subgroup: Subgroup,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// `(F|gamma)(t, tau) = (c tau + d)^-k e^{-2 pi i m c t^2/(c tau + d)} F(t/(c tau + d), gamma tau)`,
/// principal branch for the power.
pub fn slash<F>(f: F, g: GroupElement2x2, meta: &JacobiFormMeta) -> impl Fn(Complex64, Complex64) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64>,
{
    let (m, k) = (rat_to_f64(&meta.index), rat_to_f64(&meta.weight));
    move |t, tau| {
        let j = g.c as f64 * tau + g.d as f64;
        let factor = (-k * j.ln()).exp() * (-2.0 * PI * i() * m * g.c as f64 * t * t / j).exp();
        Ok(factor * f(t / j, g.act(tau))?)
    }
}

/// A transformation checked by [`jacobi_residual`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Generator {
    Modular(GroupElement2x2),
    /// `t -> t + lambda tau + mu`.
    Lattice { lambda: i64, mu: i64 },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Modular(g) => write!(f, "{g}"),
            Self::Lattice { lambda, mu } => write!(f, "shift({lambda},{mu})"),
        }
    }
}

impl Generator {
    /// Subgroup generators plus the lattice shifts (2, 0), (0, 2).
    pub fn standard(tag: Subgroup) -> Vec<Self> {
        let mut g: Vec<Self> = tag.generators().into_iter().map(Self::Modular).collect();
        g.push(Self::Lattice { lambda: 2, mu: 0 });
        g.push(Self::Lattice { lambda: 0, mu: 2 });
        g
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorResidual {
    pub generator: String,
    pub max_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexSignReport {
    /// Max residual with the stated index.
    pub stated_max: f64,
    /// Max residual with the index negated.
    pub negated_max: f64,
    /// `"stated"`, `"negated"`, both or neither, by which pass `tol`.
    pub holds: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub meta: JacobiFormMeta,
    pub tol: f64,
    pub per_generator: Vec<GeneratorResidual>,
    pub max_residual: f64,
    pub passed: bool,
    pub index_sign: IndexSignReport,
}

fn residual_one<F>(f: &F, gen: Generator, meta: &JacobiFormMeta, t: Complex64, tau: Complex64) -> Result<f64>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let base = f(t, tau)?;
    let scale = base.norm().max(1.0);
    match gen {
        Generator::Modular(g) => {
            let lhs = slash(f, g, meta)(t, tau)?;
            Ok((lhs - base).norm() / scale)
        }
        Generator::Lattice { lambda, mu } => {
            let (l, m) = (lambda as f64, mu as f64);
            let lhs = f(t + l * tau + m, tau)?;
            let factor = (-2.0 * PI * i() * rat_to_f64(&meta.index) * (l * l * tau + 2.0 * l * t)).exp();
            Ok((lhs / factor - base).norm() / scale)
        }
    }
}

fn max_residuals<F>(f: &F, meta: &JacobiFormMeta, gens: &[Generator], samples: &[(Complex64, Complex64)]) -> Result<Vec<f64>>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    gens.iter()
        .map(|g| {
            let r = samples
                .par_iter()
                .map(|(t, tau)| residual_one(f, *g, meta, *t, *tau))
                .collect::<Result<Vec<_>>>()?;
            Ok(r.into_iter().fold(0.0, f64::max))
        })
        .collect()
}

/// Max residuals of both defining identities of a Jacobi form. The index
/// is also tried with the opposite sign and the outcome reported.
pub fn jacobi_residual<F>(
    f: F,
    meta: &JacobiFormMeta,
    generators: &[Generator],
    samples: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<JacobiReport>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let stated = max_residuals(&f, meta, generators, samples)?;
    let negated_meta = JacobiFormMeta {
        index: -meta.index.clone(),
        ..meta.clone()
    };
    let negated = max_residuals(&f, &negated_meta, generators, samples)?;
    let max_of = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let (sm, nm) = (max_of(&stated), max_of(&negated));
    let mut holds = Vec::new();
    if sm < tol {
        holds.push("stated".to_string());
    }
    if nm < tol {
        holds.push("negated".to_string());
    }
    Ok(JacobiReport {
        meta: meta.clone(),
        tol,
        per_generator: generators
            .iter()
            .zip(&stated)
            .map(|(g, r)| GeneratorResidual {
                generator: g.to_string(),
                max_residual: *r,
            })
            .collect(),
        max_residual: sm,
        passed: sm < tol,
        index_sign: IndexSignReport {
            stated_max: sm,
            negated_max: nm,
            holds,
        },
    })
}

/// Expected meta of `H` (FOLIATED: weight `p + r - l`) or of `G`, `G'`, `G''`
/// (SPLIT: weight `p + r`), index `-n/2` from the anomaly check.
pub fn model_meta(model: &EquivariantModel, subgroup: Subgroup) -> Result<JacobiFormMeta> {
    let n = anomaly_check(model)?.n;
    let weight = match model.mode {
        Mode::Foliated => int((model.p + model.r) as i64 - model.l as i64),
        Mode::Split => {
            if subgroup.variant().is_none() {
                return Err(Error::Precondition(
                    "SPLIT models are checked against gamma0_2, gamma_upper0_2 or gamma_theta".into(),
                ));
            }
            int((model.p + model.r) as i64)
        }
    };
    Ok(JacobiFormMeta {
        index: rat(-n, 2),
        weight,
        subgroup,
    })
}

/// The function checked for a model: `H`, or the `G` variant of the subgroup.
pub fn model_function(model: &EquivariantModel, subgroup: Subgroup) -> impl Fn(Complex64, Complex64) -> Result<Complex64> + Sync + '_ {
    move |t, tau| match (model.mode, subgroup.variant()) {
        (Mode::Foliated, _) => h_eval(model, t, tau),
        (Mode::Split, Some(v)) => g_eval(model, v, t, tau),
        (Mode::Split, None) => Err(Error::Precondition("no G variant for SL2Z".into())),
    }
}

/// Fixed sample grid for Jacobi checks: small generic `t`, `Im tau` in
/// `[0.7, 1.5]`, away from the real axis poles of typical models.
pub fn sample_points() -> Vec<(Complex64, Complex64)> {
    let ts = [
        Complex64::new(0.137, 0.061),
        Complex64::new(-0.211, 0.043),
        Complex64::new(0.293, -0.052),
        Complex64::new(0.071, -0.029),
    ];
    let taus = [
        Complex64::new(0.05, 0.7),
        Complex64::new(-0.23, 1.1),
        Complex64::new(0.31, 1.5),
    ];
    ts.iter().flat_map(|t| taus.iter().map(move |tau| (*t, *tau))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{theta_eval, ThetaKind};

    #[test]
    fn membership_examples() {
        let t = GroupElement2x2::T;
        assert!(subgroup_member(&t, Subgroup::Gamma0Two).unwrap());
        assert!(!subgroup_member(&t, Subgroup::GammaUpper0Two).unwrap());
        assert!(subgroup_member(&GroupElement2x2::S, Subgroup::GammaTheta).unwrap());
        assert!(!subgroup_member(&t, Subgroup::GammaTheta).unwrap());
        let bad = GroupElement2x2 { a: 2, b: 0, c: 0, d: 1 };
        assert!(matches!(subgroup_member(&bad, Subgroup::Sl2z), Err(Error::NotUnimodular(2))));
        assert!(GroupElement2x2::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn generators_lie_in_their_subgroups() {
        for s in Subgroup::ALL {
            for g in s.generators() {
                assert!(subgroup_member(&g, s).unwrap(), "{g} not in {s:?}");
            }
        }
    }

    fn theta_fn(t: Complex64, tau: Complex64) -> Result<Complex64> {
        theta_eval(ThetaKind::Theta, t, tau, 1e-15)
    }

    #[test]
    fn identity_and_right_action() {
        let meta = JacobiFormMeta {
            index: rat(1, 2),
            weight: int(1),
            subgroup: Subgroup::Sl2z,
        };
        let pts = sample_points();
        let id = slash(theta_fn, GroupElement2x2::IDENTITY, &meta);
        for (t, tau) in &pts {
            assert!((id(*t, *tau).unwrap() - theta_fn(*t, *tau).unwrap()).norm() < 1e-14);
        }
        let (g1, g2) = (GroupElement2x2::S, GroupElement2x2 { a: 1, b: 0, c: 2, d: 1 });
        let nested = slash(slash(theta_fn, g1, &meta), g2, &meta);
        let direct = slash(theta_fn, g1.mul(&g2), &meta);
        for (t, tau) in pts.iter().take(10) {
            let (a, b) = (nested(*t, *tau).unwrap(), direct(*t, *tau).unwrap());
            assert!((a - b).norm() < 1e-10 * a.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn theta_s_slash_is_constant_multiple() {
        let meta = JacobiFormMeta {
            index: rat(1, 2),
            weight: rat(1, 2),
            subgroup: Subgroup::Sl2z,
        };
        let s = slash(theta_fn, GroupElement2x2::S, &meta);
        let ratios: Vec<Complex64> = sample_points()
            .iter()
            .map(|(t, tau)| s(*t, *tau).unwrap() / theta_fn(*t, *tau).unwrap())
            .collect();
        for r in &ratios {
            assert!((r - ratios[0]).norm() < 1e-10);
            assert!((r.norm() - 1.0).abs() < 1e-10);
        }
        // an eighth root of unity
        assert!((ratios[0].powi(8) - 1.0).norm() < 1e-9);
    }

    fn toy(ms: &[i64], ns: &[i64], mode: Mode) -> EquivariantModel {
        use crate::equivariant::{FixedComponent, MovingF, MovingFperp};
        let c = FixedComponent::point(
            1,
            ms.iter().map(|&m| MovingF { rank: 1, m }).collect(),
            ns.iter().map(|&n| MovingFperp { rank: 1, n }).collect(),
        )
        .unwrap();
        EquivariantModel::new(mode, vec![c], ms.len(), ns.len(), 0).unwrap()
    }

    #[test]
    fn single_point_h_is_jacobi() {
        let m = toy(&[1, 2], &[], Mode::Foliated);
        let meta = model_meta(&m, Subgroup::Sl2z).unwrap();
        assert_eq!(meta.index, rat(-5, 2));
        let gens = Generator::standard(Subgroup::Sl2z);
        let r = jacobi_residual(model_function(&m, Subgroup::Sl2z), &meta, &gens, &sample_points(), 1e-8).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.index_sign.holds, vec!["stated".to_string()]);
        let wrong = JacobiFormMeta {
            weight: int(3),
            ..meta
        };
        let r = jacobi_residual(model_function(&m, Subgroup::Sl2z), &wrong, &gens, &sample_points(), 1e-8).unwrap();
        assert!(r.max_residual > 0.01);
    }

    #[test]
    fn split_point_variants_match_subgroups() {
        let m = toy(&[1], &[2], Mode::Split);
        for s in [Subgroup::Gamma0Two, Subgroup::GammaUpper0Two, Subgroup::GammaTheta] {
            let meta = model_meta(&m, s).unwrap();
            let r = jacobi_residual(model_function(&m, s), &meta, &Generator::standard(s), &sample_points(), 1e-8)
                .unwrap();
            assert!(r.passed, "{s:?}: {:?}", r.per_generator);
        }
        // the theta2 quotient is not invariant under T^2's partner in Gamma_theta
        let v = Subgroup::GammaUpper0Two;
        let meta = model_meta(&m, Subgroup::GammaTheta).unwrap();
        let r = jacobi_residual(model_function(&m, v), &meta, &Generator::standard(Subgroup::GammaTheta), &sample_points(), 1e-8)
            .unwrap();
        assert!(!r.passed);
    }
}
