//! Built-in example manifolds and circle actions, each with the results it
//! is expected to reproduce under both the main code paths and the naive
//! oracles in [`oracle`].

pub mod oracle;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::charclass::{ahat_factor, genus_sequence, l_factor, pair_fundamental, CharNumbers};
use crate::equivariant::{
    anomaly_check, fixed_point_series, fixed_point_value, jacobi_residual, model_function, model_meta, sample_points,
    EquivariantModel, Generator, LefschetzTwist, Mode, Path, Subgroup,
};
use crate::error::{Error, Result};
use crate::genus::{subdirac_index, witten_genus, Integrality, KExpr, SplitManifoldSpec};
use crate::ktheory::RVariant;
use crate::ring::{int, Rational};
use crate::series::{grid_order, QSeries};
use oracle::{GenusSeries, PointFactor};

/// The data of an entry, in the JSON schema the CLI reads.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Model(EquivariantModel),
    Split(SplitManifoldSpec),
    Numbers(CharNumbers),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// The stored `p1` number against its derivation.
    P1Number,
    AhatNumber,
    LNumber,
    /// Witten-twisted index `<Ahat(F) ch(Psi_q(F)) L(Fperp)>` to `q^2`.
    WittenIndex,
    /// Same index to `q^3`, judged for integrality.
    Integrality,
    /// The common `n` of the anomaly condition.
    AnomalyN,
    AnomalyInconsistent,
    /// The `q^0` Lefschetz sum of the Dirac twist is zero in `Q(z)`.
    DiracVanishes,
    /// `H` is zero to `q^3` exactly and on the sample grid numerically.
    HVanishes,
    /// `G`, `G'`, `G''` are zero to `q^2`.
    GVanishes,
    /// Theta-quotient and direct Lefschetz evaluation agree.
    DualPath,
    /// `H` against the truncated theta product with a numeric derivative.
    ThetaQuotient,
    /// Jacobi residual over `SL2Z` with the model's meta.
    Jacobi,
    /// The same with the weight raised by one.
    JacobiControl,
}

/// What both the main path and the oracle must produce.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Exact(String),
    /// Every value has modulus below the bound (an exact `"0"` also passes).
    Vanishes(f64),
    /// Main and oracle values agree pointwise within the bound.
    Agree(f64),
    Above(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub check: Check,
    pub expect: Expect,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub payload: Payload,
    pub provenance: String,
    pub expected: Vec<Expected>,
}

impl CatalogEntry {
    pub fn numbers(&self) -> Option<&CharNumbers> {
        match &self.payload {
            Payload::Numbers(n) => Some(n),
            Payload::Split(s) => Some(&s.numbers),
            Payload::Model(_) => None,
        }
    }

    pub fn model(&self) -> Option<&EquivariantModel> {
        match &self.payload {
            Payload::Model(m) => Some(m),
            _ => None,
        }
    }

    /// The split spec of the payload; plain numbers are read as `F = TM`.
    pub fn split_spec(&self) -> Option<SplitManifoldSpec> {
        match &self.payload {
            Payload::Split(s) => Some(s.clone()),
            Payload::Numbers(n) => SplitManifoldSpec::tangent(n.clone()).ok(),
            Payload::Model(_) => None,
        }
    }
}

const NAMES: [&str; 12] = [
    "point",
    "k3",
    "cp2",
    "k3xk3",
    "k3xk3_split",
    "s2xs2_split",
    "s2_rotation",
    "s2rot_x_t2",
    "s4_rotation",
    "cp2_rotation",
    "s2xs2_rotation",
    "single_point",
];

pub fn list() -> &'static [&'static str] {
    &NAMES
}

fn exact(check: Check, v: &str) -> Expected {
    Expected {
        check,
        expect: Expect::Exact(v.to_string()),
    }
}

fn within(check: Check, expect: Expect) -> Expected {
    Expected { check, expect }
}

fn point(orientation: i8, ms: &[i64]) -> serde_json::Value {
    json!({"dimN": 0, "orientation": orientation,
           "moving_F": ms.iter().map(|m| json!({"rank": 1, "m": m})).collect::<Vec<_>>()})
}

pub fn builtin(name: &str) -> Result<CatalogEntry> {
    use Check::*;
    let (payload, provenance, expected) = match name {
        "point" => (
            json!({"dim": 0, "numbers": {"1": "1"}, "spin": true}),
            "the point; every genus is 1",
            vec![exact(AhatNumber, "1"), exact(WittenIndex, "1, 0, 0"), exact(Integrality, "integral")],
        ),
        "k3" => (
            json!({"dim": 4, "numbers": {"p1": "-48"}, "spin": true}),
            "signature -16 and L1 = p1/3 give p1 = -48; Ahat = -p1/24 = 2",
            vec![
                exact(P1Number, "-48"),
                exact(AhatNumber, "2"),
                exact(LNumber, "-16"),
                exact(WittenIndex, "2, -48, -144"),
                exact(Integrality, "integral"),
            ],
        ),
        "cp2" => (
            json!({"dim": 4, "numbers": {"p1": "3"}, "spin": false}),
            "c = (1 + h)^3, p1 = c1^2 - 2 c2 = 3 h^2; signature 1",
            vec![exact(P1Number, "3"), exact(LNumber, "1"), exact(AhatNumber, "-1/8")],
        ),
        "k3xk3" => (
            json!({"dim": 8, "numbers": {"p1^2": "4608", "p2": "2304"}, "spin": true}),
            "p(K3 x K3) = (1 - 48 a)(1 - 48 b) with a b = [pt]: p1^2 = 2 * 48^2, p2 = 48^2",
            vec![
                exact(AhatNumber, "4"),
                exact(LNumber, "256"),
                exact(WittenIndex, "4, -192, 1728"),
                exact(Integrality, "integral"),
            ],
        ),
        "k3xk3_split" => (
            json!({"dim": 8, "F": {"pairs": 2}, "Fperp": {"pairs": 2},
                   "numbers": {"p1(F)*p1(Fperp)": "2304", "p1(F)^2": "0", "p2(F)": "0",
                               "p1(Fperp)^2": "0", "p2(Fperp)": "0"},
                   "F_spin": true, "M_spin": true}),
            "F and Fperp the tangent bundles of the two K3 factors; Ahat(F) L(Fperp) = 2 * (-16)",
            vec![exact(WittenIndex, "-32, 768, 2304"), exact(Integrality, "integral")],
        ),
        "s2xs2_split" => (
            json!({"dim": 4, "F": {"pairs": 1}, "Fperp": {"pairs": 1},
                   "numbers": {"p1(F)": "0", "p1(Fperp)": "0"}, "F_spin": true, "M_spin": true}),
            "F and Fperp the tangent bundles of the two S2 factors; all Pontryagin numbers vanish",
            vec![exact(WittenIndex, "0, 0, 0"), exact(Integrality, "integral")],
        ),
        "s2_rotation" => (
            json!({"mode": "FOLIATED", "p": 1, "r": 0, "components": [point(1, &[1]), point(1, &[-1])]}),
            "rotation of S2 about an axis: poles with tangent weights +1 and -1",
            vec![
                exact(AnomalyN, "1"),
                exact(DiracVanishes, "0"),
                within(HVanishes, Expect::Vanishes(1e-9)),
                within(DualPath, Expect::Agree(1e-9)),
                within(ThetaQuotient, Expect::Agree(1e-7)),
            ],
        ),
        "s2rot_x_t2" => (
            json!({"mode": "FOLIATED", "p": 1, "r": 1, "components": [
                {"dimN": 2, "Fperp0_pairs": 1, "moving_F": [{"rank": 1, "m": 1}], "char_numbers": {"c1(E1)": "0"}},
                {"dimN": 2, "Fperp0_pairs": 1, "moving_F": [{"rank": 1, "m": -1}], "char_numbers": {"c1(E1)": "0"}}]}),
            "S2 x T2 with F = TS2 rotated and Fperp = TT2 trivial; fixed set two tori, normal bundle trivial",
            vec![
                exact(AnomalyN, "1"),
                within(HVanishes, Expect::Vanishes(1e-9)),
                within(DualPath, Expect::Agree(1e-9)),
            ],
        ),
        "s4_rotation" => (
            json!({"mode": "FOLIATED", "p": 2, "r": 0, "components": [
                {"dimN": 0, "moving_F": [{"rank": 2, "m": 1}]}, point(1, &[1, -1])]}),
            "diagonal rotation of C2 extended to S4: weights (1, 1) at one pole and (1, -1) at the other",
            vec![
                exact(AnomalyN, "2"),
                exact(DiracVanishes, "0"),
                within(HVanishes, Expect::Vanishes(1e-9)),
                within(DualPath, Expect::Agree(1e-9)),
                within(ThetaQuotient, Expect::Agree(1e-7)),
            ],
        ),
        "cp2_rotation" => (
            json!({"mode": "FOLIATED", "p": 2, "r": 0,
                   "components": [point(1, &[1, 2]), point(1, &[-1, 1]), point(1, &[-2, -1])]}),
            "[z0 : z1 : z2] -> [z0 : g z1 : g^2 z2]; sum of squared weights differs between points",
            vec![exact(AnomalyInconsistent, "inconsistent")],
        ),
        "s2xs2_rotation" => (
            json!({"mode": "SPLIT", "p": 1, "r": 1, "components": [
                {"dimN": 0, "moving_F": [{"rank": 1, "m": 1}], "moving_Fperp": [{"rank": 1, "n": 1}]},
                {"dimN": 0, "moving_F": [{"rank": 1, "m": 1}], "moving_Fperp": [{"rank": 1, "n": -1}]},
                {"dimN": 0, "moving_F": [{"rank": 1, "m": -1}], "moving_Fperp": [{"rank": 1, "n": 1}]},
                {"dimN": 0, "moving_F": [{"rank": 1, "m": -1}], "moving_Fperp": [{"rank": 1, "n": -1}]}]}),
            "both S2 factors rotated; four fixed points with weights (+-1, +-1)",
            vec![exact(GVanishes, "0"), within(DualPath, Expect::Agree(1e-9))],
        ),
        "single_point" => (
            json!({"mode": "FOLIATED", "p": 2, "r": 0, "components": [point(1, &[1, 2])]}),
            "one isolated fixed point with weights (1, 2); not a closed manifold, H is the bare theta quotient",
            vec![
                exact(AnomalyN, "5"),
                within(ThetaQuotient, Expect::Agree(1e-7)),
                within(DualPath, Expect::Agree(1e-9)),
                within(Jacobi, Expect::Vanishes(1e-8)),
                within(JacobiControl, Expect::Above(0.01)),
            ],
        ),
        _ => return Err(Error::UnknownEntry(name.to_string())),
    };
    let payload: Payload = serde_json::from_value(payload).map_err(|e| Error::InvalidModel(format!("{name}: {e}")))?;
    Ok(CatalogEntry {
        name: name.to_string(),
        payload,
        provenance: provenance.to_string(),
        expected,
    })
}

/// `builtin` for every name in [`list`].
pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| builtin(n).expect("built-in entries are valid")).collect()
}

/// Non-polar points for comparing the two evaluation paths: 5 values of
/// `t` times 4 values of `tau`, inside the region where the direct sums
/// converge for rotation numbers up to 2.
pub fn dual_path_samples() -> Vec<(Complex64, Complex64)> {
    let ts = [
        Complex64::new(0.113, 0.021),
        Complex64::new(0.237, -0.034),
        Complex64::new(0.371, 0.015),
        Complex64::new(-0.189, 0.027),
        Complex64::new(0.452, -0.011),
    ];
    let taus = [
        Complex64::new(0.0, 0.9),
        Complex64::new(0.25, 1.1),
        Complex64::new(-0.3, 1.3),
        Complex64::new(0.1, 0.8),
    ];
    taus.iter().flat_map(|tau| ts.iter().map(move |t| (*t, *tau))).collect()
}

/// A computed value, exact (as text) or numeric.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Exact(String),
    Values(Vec<Complex64>),
}

impl Outcome {
    fn max_norm(&self) -> Option<f64> {
        match self {
            Self::Exact(_) => None,
            Self::Values(v) => Some(v.iter().map(|z| z.norm()).fold(0.0, f64::max)),
        }
    }

    fn render(&self) -> String {
        match self {
            Self::Exact(s) => s.clone(),
            Self::Values(_) => format!("max |.| = {:.3e}", self.max_norm().unwrap_or(0.0)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckLine {
    pub entry: String,
    pub check: Check,
    pub expect: Expect,
    pub main: String,
    pub oracle: String,
    /// `max |main - oracle|` for numeric comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<f64>,
    pub passed: bool,
}

fn verdict(expect: &Expect, main: &Outcome, oracle: &Outcome) -> (bool, Option<f64>) {
    let vanishes = |o: &Outcome, tol: f64| match o {
        Outcome::Exact(s) => s == "0",
        Outcome::Values(v) => v.iter().all(|z| z.norm() < tol),
    };
    match (expect, main, oracle) {
        (Expect::Exact(s), Outcome::Exact(a), Outcome::Exact(b)) => (a == s && b == s, None),
        (Expect::Vanishes(tol), _, _) => (vanishes(main, *tol) && vanishes(oracle, *tol), None),
        (Expect::Agree(tol), Outcome::Values(a), Outcome::Values(b)) if a.len() == b.len() => {
            let d = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            (d < *tol, Some(d))
        }
        (Expect::Above(bound), Outcome::Values(a), Outcome::Values(b)) => {
            let min = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
            (min(a) > *bound && min(b) > *bound, None)
        }
        _ => (false, None),
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn q_integer_coeffs(s: &QSeries<Rational>, order_q: u32) -> Vec<Rational> {
    (0..=order_q)
        .map(|k| s.coeff_at(&int(i64::from(k))).cloned().unwrap_or_else(|| int(0)))
        .collect()
}

fn naive_numbers(n: &CharNumbers) -> BTreeMap<String, Rational> {
    n.numbers.iter().map(|(m, v)| (m.to_string(), v.clone())).collect()
}

fn naive_genus(g: GenusSeries, n: &CharNumbers) -> Result<Rational> {
    let coeffs = oracle::root_expansion(g, n.dim)?;
    let numbers = naive_numbers(n);
    coeffs.iter().try_fold(int(0), |acc, (k, c)| {
        let v = numbers.get(k).ok_or_else(|| Error::MissingNumber(k.clone()))?;
        Ok(acc + c * v)
    })
}

fn main_genus(f: &crate::series::PowerSeries<Rational>, n: &CharNumbers) -> Result<Rational> {
    pair_fundamental(&genus_sequence(f, n.dim)?, n)
}

fn witten_index_main(e: &CatalogEntry, order_q: u32) -> Result<(Vec<Rational>, Integrality)> {
    let spec = e.split_spec().ok_or_else(|| Error::Precondition("no manifold payload".into()))?;
    if let Payload::Numbers(n) = &e.payload {
        let w = witten_genus(n, order_q)?;
        let r = subdirac_index(&spec, &KExpr::Witten, &KExpr::One, grid_order(order_q))?;
        if q_integer_coeffs(&r.value, order_q) != q_integer_coeffs(&w, order_q) {
            return Err(Error::Precondition("witten_genus and subdirac_index disagree".into()));
        }
    }
    let r = subdirac_index(&spec, &KExpr::Witten, &KExpr::One, grid_order(order_q))?;
    Ok((q_integer_coeffs(&r.value, order_q), r.integrality))
}

fn witten_index_oracle(e: &CatalogEntry, order_q: u32) -> Result<Vec<Rational>> {
    let n = e.numbers().ok_or_else(|| Error::Precondition("no manifold payload".into()))?;
    oracle::truncation_witten_index(n.dim, matches!(e.payload, Payload::Split(_)), &naive_numbers(n), order_q)
}

/// Weights of `F`, weights of `Fperp` and orientation of an isolated point.
type PointWeights = (Vec<i64>, Vec<i64>, i8);

fn isolated_points(m: &EquivariantModel) -> Result<Vec<PointWeights>> {
    m.components
        .iter()
        .map(|c| {
            if !c.is_isolated() {
                return Err(Error::Unsupported("oracle needs isolated fixed points".into()));
            }
            let expand = |it: Vec<(usize, i64)>| it.into_iter().flat_map(|(r, w)| std::iter::repeat_n(w, r)).collect();
            Ok((
                expand(c.moving_f.iter().map(|p| (p.rank, p.m)).collect()),
                expand(c.moving_fperp.iter().map(|p| (p.rank, p.n)).collect()),
                c.orientation,
            ))
        })
        .collect()
}

fn two_point_zero(m: &EquivariantModel, fperp: fn(i64) -> PointFactor) -> Result<Outcome> {
    let points: Vec<(Vec<PointFactor>, i8)> = isolated_points(m)?
        .into_iter()
        .map(|(ms, ns, o)| {
            let f = ms.into_iter().map(PointFactor::Ahat).chain(ns.into_iter().map(fperp)).collect();
            (f, o)
        })
        .collect();
    let (num, _) = oracle::two_fixed_point(&points);
    Ok(Outcome::Exact(if num.is_empty() { "0".into() } else { "nonzero".into() }))
}

fn zero_text(zero: bool) -> Outcome {
    Outcome::Exact(if zero { "0".into() } else { "nonzero".into() })
}

fn twists(m: &EquivariantModel) -> Vec<LefschetzTwist> {
    match m.mode {
        Mode::Foliated => vec![LefschetzTwist::Witten],
        Mode::Split => [RVariant::R, RVariant::RPrime, RVariant::RDoublePrime]
            .into_iter()
            .map(LefschetzTwist::R)
            .collect(),
    }
}

fn values<F>(points: &[(Complex64, Complex64)], f: F) -> Result<Outcome>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    Ok(Outcome::Values(
        points.par_iter().map(|(t, tau)| f(*t, *tau)).collect::<Result<Vec<_>>>()?,
    ))
}

fn oracle_h(m: &EquivariantModel) -> Result<impl Fn(Complex64, Complex64) -> Result<Complex64> + Sync> {
    if m.mode != Mode::Foliated || m.r != 0 {
        return Err(Error::Unsupported("theta-quotient oracle needs FOLIATED with r = 0".into()));
    }
    let pts: Vec<(Vec<i64>, i8)> = isolated_points(m)?.into_iter().map(|(ms, _, o)| (ms, o)).collect();
    Ok(move |t, tau| Ok(oracle::truncation_theta_quotient(&pts, t, tau)))
}

fn jacobi_max<F>(f: F, m: &EquivariantModel, bump: i64) -> Result<Outcome>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let mut meta = model_meta(m, Subgroup::Sl2z)?;
    meta.weight += int(bump);
    let r = jacobi_residual(f, &meta, &Generator::standard(Subgroup::Sl2z), &sample_points(), 1e-8)?;
    Ok(Outcome::Values(vec![Complex64::new(r.max_residual, 0.0)]))
}

fn need_model(e: &CatalogEntry) -> Result<&EquivariantModel> {
    e.model().ok_or_else(|| Error::Precondition(format!("{} has no model", e.name)))
}

fn need_numbers(e: &CatalogEntry) -> Result<&CharNumbers> {
    e.numbers().ok_or_else(|| Error::Precondition(format!("{} has no numbers", e.name)))
}

/// Runs one check through the main path and through the oracle.
pub fn evaluate(e: &CatalogEntry, check: Check) -> Result<(Outcome, Outcome)> {
    let ex = |r: Rational| Outcome::Exact(r.to_string());
    Ok(match check {
        Check::P1Number => {
            let n = need_numbers(e)?;
            let stored = n.get(&"p1".parse()?).cloned().ok_or_else(|| Error::MissingNumber("p1".into()))?;
            let derived = if e.name == "cp2" {
                oracle::cp2_p1()
            } else {
                // signature -16 divided by the L1 coefficient
                int(-16) / &oracle::root_expansion(GenusSeries::L, 4)?["p1"]
            };
            (ex(stored), ex(derived))
        }
        Check::AhatNumber => {
            let n = need_numbers(e)?;
            (ex(main_genus(&ahat_factor(n.dim as usize + 2), n)?), ex(naive_genus(GenusSeries::Ahat, n)?))
        }
        Check::LNumber => {
            let n = need_numbers(e)?;
            (ex(main_genus(&l_factor(n.dim as usize + 2), n)?), ex(naive_genus(GenusSeries::L, n)?))
        }
        Check::WittenIndex => (
            Outcome::Exact(join(&witten_index_main(e, 2)?.0)),
            Outcome::Exact(join(&witten_index_oracle(e, 2)?)),
        ),
        Check::Integrality => {
            let (main, integrality) = witten_index_main(e, 3)?;
            let text = |ok: bool| Outcome::Exact(if ok { "integral".into() } else { "not integral".into() });
            let oracle = witten_index_oracle(e, 3)?;
            (
                text(integrality == Integrality::Verified && main.iter().all(|c| c.is_integer())),
                text(oracle.iter().all(|c| c.is_integer()) && oracle == main),
            )
        }
        Check::AnomalyN => {
            let m = need_model(e)?;
            let naive: Vec<i64> = m
                .components
                .iter()
                .map(|c| c.moving_f.iter().map(|p| p.rank as i64 * p.m * p.m).sum())
                .collect();
            let oracle = match naive.windows(2).all(|w| w[0] == w[1]) {
                true => naive.first().copied().unwrap_or(0).to_string(),
                false => "inconsistent".into(),
            };
            (Outcome::Exact(anomaly_check(m)?.n.to_string()), Outcome::Exact(oracle))
        }
        Check::AnomalyInconsistent => {
            let m = need_model(e)?;
            let main = match anomaly_check(m) {
                Err(Error::InconsistentAnomaly { .. }) => "inconsistent".to_string(),
                Ok(r) => r.n.to_string(),
                Err(err) => return Err(err),
            };
            let sums: Vec<i64> = isolated_points(m)?
                .iter()
                .map(|(ms, _, _)| ms.iter().map(|x| x * x).sum())
                .collect();
            let oracle = if sums.windows(2).all(|w| w[0] == w[1]) { "consistent" } else { "inconsistent" };
            (Outcome::Exact(main), Outcome::Exact(oracle.into()))
        }
        Check::DiracVanishes => {
            let m = need_model(e)?;
            let s = fixed_point_series(m, LefschetzTwist::Dirac, Path::Direct, 0)?;
            (zero_text(s.is_zero()), two_point_zero(m, PointFactor::Tanh)?)
        }
        Check::HVanishes => {
            let m = need_model(e)?;
            let exact = fixed_point_series(m, LefschetzTwist::Witten, Path::Theta, 3)?;
            let numeric = values(&sample_points(), |t, tau| {
                fixed_point_value(m, LefschetzTwist::Witten, Path::Theta, t, tau)
            })?;
            let main = match exact.is_zero() {
                true => numeric,
                false => zero_text(false),
            };
            let oracle = match oracle_h(m) {
                Ok(h) => values(&sample_points(), h)?,
                Err(Error::Unsupported(_)) => values(&dual_path_samples(), |t, tau| {
                    fixed_point_value(m, LefschetzTwist::Witten, Path::Direct, t, tau)
                })?,
                Err(err) => return Err(err),
            };
            (main, oracle)
        }
        Check::GVanishes => {
            let m = need_model(e)?;
            let zero = [RVariant::R, RVariant::RPrime, RVariant::RDoublePrime]
                .into_iter()
                .map(|v| fixed_point_series(m, LefschetzTwist::R(v), Path::Theta, 2).map(|s| s.is_zero()))
                .collect::<Result<Vec<_>>>()?;
            let tanh = two_point_zero(m, PointFactor::Tanh)?;
            let ahat = two_point_zero(m, PointFactor::Ahat)?;
            let oracle = zero_text(tanh == zero_text(true) && ahat == zero_text(true));
            (zero_text(zero.iter().all(|z| *z)), oracle)
        }
        Check::DualPath => {
            let m = need_model(e)?;
            let pts = dual_path_samples();
            let mut theta = Vec::new();
            let mut direct = Vec::new();
            for tw in twists(m) {
                if let Outcome::Values(v) = values(&pts, |t, tau| fixed_point_value(m, tw, Path::Theta, t, tau))? {
                    theta.extend(v);
                }
                if let Outcome::Values(v) = values(&pts, |t, tau| fixed_point_value(m, tw, Path::Direct, t, tau))? {
                    direct.extend(v);
                }
            }
            (Outcome::Values(theta), Outcome::Values(direct))
        }
        Check::ThetaQuotient => {
            let m = need_model(e)?;
            let pts = dual_path_samples();
            (
                values(&pts, |t, tau| fixed_point_value(m, LefschetzTwist::Witten, Path::Theta, t, tau))?,
                values(&pts, oracle_h(m)?)?,
            )
        }
        Check::Jacobi | Check::JacobiControl => {
            let m = need_model(e)?;
            let bump = i64::from(check == Check::JacobiControl);
            (jacobi_max(model_function(m, Subgroup::Sl2z), m, bump)?, jacobi_max(oracle_h(m)?, m, bump)?)
        }
    })
}

/// Every expected result of every entry, main path and oracle.
pub fn selftest() -> Vec<CheckLine> {
    all()
        .iter()
        .flat_map(|e| e.expected.iter().map(move |x| (e, x)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(e, x)| {
            let (main, oracle, passed, difference) = match evaluate(e, x.check) {
                Ok((a, b)) => {
                    let (passed, d) = verdict(&x.expect, &a, &b);
                    (a.render(), b.render(), passed, d)
                }
                Err(err) => (format!("error: {err}"), String::new(), false, None),
            };
            CheckLine {
                entry: e.name.clone(),
                check: x.check,
                expect: x.expect.clone(),
                main,
                oracle,
                difference,
                passed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for n in list() {
            let e = builtin(n).unwrap();
            let v = serde_json::to_value(&e.payload).unwrap();
            let back: Payload = serde_json::from_value(v).unwrap();
            assert_eq!(back, e.payload, "{n}");
        }
        assert!(matches!(builtin("hp2"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn payload_kinds() {
        assert!(matches!(builtin("k3").unwrap().payload, Payload::Numbers(_)));
        assert!(matches!(builtin("k3xk3_split").unwrap().payload, Payload::Split(_)));
        let s2 = builtin("s2_rotation").unwrap();
        assert_eq!(s2.model().unwrap().weights(), vec![-1, 1]);
        assert_eq!(builtin("k3").unwrap().numbers().unwrap().get(&"p1".parse().unwrap()), Some(&int(-48)));
    }

    #[test]
    fn exact_checks() {
        for (name, check) in [("k3", Check::AhatNumber), ("cp2", Check::LNumber), ("k3", Check::WittenIndex)] {
            let e = builtin(name).unwrap();
            let x = e.expected.iter().find(|x| x.check == check).unwrap();
            let (a, b) = evaluate(&e, check).unwrap();
            assert!(verdict(&x.expect, &a, &b).0, "{name} {check:?}: {a:?} {b:?}");
        }
    }

    #[test]
    fn verdict_rules() {
        let z = |x: f64| Outcome::Values(vec![Complex64::new(x, 0.0)]);
        assert!(verdict(&Expect::Vanishes(1e-9), &Outcome::Exact("0".into()), &z(1e-12)).0);
        assert!(!verdict(&Expect::Vanishes(1e-9), &z(1e-3), &z(0.0)).0);
        assert!(verdict(&Expect::Agree(1e-6), &z(1.0), &z(1.0 + 1e-8)).0);
        assert!(!verdict(&Expect::Exact("1".into()), &Outcome::Exact("1".into()), &Outcome::Exact("2".into())).0);
        assert!(verdict(&Expect::Above(0.01), &z(0.5), &z(0.2)).0);
    }
}
