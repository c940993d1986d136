//! Command-line front end. Every run produces one [`Report`]; the exit code
//! is 0 when all verdicts pass, 1 when one fails and 2 on input errors.

mod render;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog;
use crate::charclass::CharNumbers;
use crate::equivariant::{
    anomaly_check, eval_fixed_series, fixed_point_series, fixed_point_value, jacobi_residual, model_function,
    model_meta, sample_points, EquivariantModel, Generator, LefschetzTwist, Mode, Path, Subgroup,
};
use crate::error::Error;
use crate::genus::{split_genus, subdirac_index, witten_genus, IndexResult, Integrality, KExpr, SplitManifoldSpec};
use crate::ktheory::RVariant;
use crate::ring::rat_to_string;
use crate::series::{grid_order, LaurentFrac, QSeries};
use crate::theta::{standard_grid, verify_transform, ExponentSign, Law, Sample, ThetaKind};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Tolerance of the theta-vs-direct comparison attached to numeric runs.
const DUAL_PATH_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "genusforge", version, about = "Elliptic genera, theta functions and fixed-point sums")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genera of a manifold given by characteristic numbers.
    Genus {
        #[command(subcommand)]
        action: GenusAction,
    },
    /// Transformation laws of the theta functions.
    Theta {
        #[command(subcommand)]
        action: ThetaAction,
    },
    /// Fixed-point sums of a circle action.
    Equivariant {
        #[command(subcommand)]
        action: EquivariantAction,
    },
    /// Jacobi-form residuals of H or G.
    Jacobi {
        #[command(subcommand)]
        action: JacobiAction,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum GenusAction {
    Compute {
        /// JSON file, or `catalog:NAME`.
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        genus: GenusKind,
        /// Highest power of q.
        #[arg(long, default_value_t = 2)]
        order: u32,
        /// Twist of Fperp for `subdirac`.
        #[arg(long, value_enum, default_value_t = PhiKind::One)]
        phi: PhiKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenusKind {
    Witten,
    Subdirac,
    #[value(name = "split-R")]
    SplitR,
    #[value(name = "split-R1")]
    SplitR1,
    #[value(name = "split-R2")]
    SplitR2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PhiKind {
    One,
    Witten,
    R,
    R1,
    R2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    R,
    R1,
    R2,
}

impl From<VariantArg> for RVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::R => RVariant::R,
            VariantArg::R1 => RVariant::RPrime,
            VariantArg::R2 => RVariant::RDoublePrime,
        }
    }
}

#[derive(Subcommand, Debug)]
enum ThetaAction {
    Check {
        #[arg(long, value_enum)]
        law: LawArg,
        #[arg(long, value_enum, default_value_t = KindArg::Theta)]
        kind: KindArg,
        /// `standard` or `RxC` (rows of Im tau in [0.5, 2], columns of t).
        #[arg(long, default_value = "standard")]
        grid: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LawArg {
    #[value(name = "S")]
    S,
    #[value(name = "T")]
    T,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl From<KindArg> for ThetaKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Theta => ThetaKind::Theta,
            KindArg::Theta1 => ThetaKind::Theta1,
            KindArg::Theta2 => ThetaKind::Theta2,
            KindArg::Theta3 => ThetaKind::Theta3,
        }
    }
}

#[derive(clap::Args, Debug)]
struct PointArgs {
    /// JSON file, or `catalog:NAME`.
    #[arg(long)]
    model: String,
    /// Complex, e.g. `0.1+0.02i`.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    /// Exact q-series over Q(z) instead of a numeric value.
    #[arg(long)]
    exact: bool,
    /// Highest power of q for `--exact`.
    #[arg(long, default_value_t = 2)]
    order: u32,
}

#[derive(Subcommand, Debug)]
enum EquivariantAction {
    /// Fixed-point formula with sinh/tanh factors and Adams sums.
    Lefschetz {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum)]
        twist: Option<TwistArg>,
    },
    /// Theta-quotient form of the Witten-twisted Lefschetz number.
    #[command(name = "H")]
    H {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Theta-quotient forms G, G', G'' of a SPLIT model.
    #[command(name = "G")]
    G {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::R)]
        variant: VariantArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TwistArg {
    Dirac,
    Witten,
    R,
    R1,
    R2,
}

#[derive(Subcommand, Debug)]
enum JacobiAction {
    Verify {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum)]
        subgroup: SubgroupArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SubgroupArg {
    #[value(name = "gamma0_2")]
    Gamma0Two,
    #[value(name = "gamma_upper0_2")]
    GammaUpper0Two,
    #[value(name = "gamma_theta")]
    GammaTheta,
    Sl2z,
}

impl From<SubgroupArg> for Subgroup {
    fn from(s: SubgroupArg) -> Self {
        match s {
            SubgroupArg::Gamma0Two => Subgroup::Gamma0Two,
            SubgroupArg::GammaUpper0Two => Subgroup::GammaUpper0Two,
            SubgroupArg::GammaTheta => Subgroup::GammaTheta,
            SubgroupArg::Sl2z => Subgroup::Sl2z,
        }
    }
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
    Selftest,
}

/// A pass/fail judgement with the number it was made from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    /// The measured quantity, as text for exact values.
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub passed: bool,
}

impl Verdict {
    fn below(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value: json!(value),
            tol: Some(tol),
            passed: value < tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    /// SHA-256 over the command line and the bytes of every input file.
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Input or schema problem; always exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("schema error in `{source_name}` at `{path}`: {message}")]
    Schema {
        source_name: String,
        path: String,
        message: String,
    },
    #[error(transparent)]
    Domain(#[from] Error),
}

struct Session {
    hasher: Sha256,
    warnings: Vec<String>,
}

impl Session {
    fn new(argv: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in argv {
            hasher.update(a.as_bytes());
            hasher.update([0u8]);
        }
        Self {
            hasher,
            warnings: Vec::new(),
        }
    }

    /// Reads `catalog:NAME` or a file, hashing what was read.
    fn load<T: DeserializeOwned>(&mut self, source: &str, pick: fn(catalog::CatalogEntry) -> Option<T>) -> Result<T, InputError> {
        if let Some(name) = source.strip_prefix("catalog:") {
            let entry = catalog::builtin(name)?;
            self.hasher.update(name.as_bytes());
            return pick(entry).ok_or_else(|| InputError::Usage(format!("catalog entry `{name}` has the wrong kind of payload")));
        }
        let text = std::fs::read_to_string(source).map_err(|e| InputError::Io {
            path: source.to_string(),
            source: e,
        })?;
        self.hasher.update(text.as_bytes());
        parse_json(source, &text)
    }

    fn report(self, argv: Vec<String>, mode: Option<&str>, results: Value, verdicts: Vec<Verdict>) -> Report {
        Report {
            command: argv,
            inputs_digest: hex::encode(self.hasher.finalize()),
            mode: mode.map(str::to_string),
            results,
            verdicts,
            warnings: self.warnings,
        }
    }
}

/// Deserializes with a path-qualified error message.
pub fn parse_json<T: DeserializeOwned>(source_name: &str, text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| InputError::Schema {
        source_name: source_name.to_string(),
        path: e.path().to_string(),
        message: e.into_inner().to_string(),
    })
}

fn parse_complex(name: &str, s: &str) -> Result<Complex64, InputError> {
    s.replace(' ', "")
        .parse::<Complex64>()
        .map_err(|_| InputError::Usage(format!("--{name}: `{s}` is not a complex number")))
}

fn series_json(s: &QSeries<crate::ring::Rational>) -> Value {
    Value::Array(
        s.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| json!({"exponent": rat_to_string(&s.exponent(k)), "value": rat_to_string(c)}))
            .collect(),
    )
}

fn frac_series_json(s: &QSeries<LaurentFrac>) -> Value {
    Value::Array(
        s.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| json!({"exponent": rat_to_string(&s.exponent(k)), "value": format!("{:?}", c.reduced())}))
            .collect(),
    )
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn index_verdicts(r: &IndexResult, session: &mut Session) -> Vec<Verdict> {
    session.warnings.extend(r.warnings.iter().cloned());
    match r.integrality {
        Integrality::NotGuaranteed => vec![],
        i => vec![Verdict {
            name: "integrality".into(),
            value: json!(i),
            tol: None,
            passed: i == Integrality::Verified,
        }],
    }
}

fn load_manifold(session: &mut Session, source: &str) -> Result<catalog::Payload, InputError> {
    session.load(source, |e| match e.payload {
        p @ (catalog::Payload::Numbers(_) | catalog::Payload::Split(_)) => Some(p),
        catalog::Payload::Model(_) => None,
    })
}

fn load_model(session: &mut Session, source: &str) -> Result<EquivariantModel, InputError> {
    session.load(source, |e| e.model().cloned())
}

fn genus_compute(
    session: &mut Session,
    spec: &str,
    genus: GenusKind,
    order: u32,
    phi: PhiKind,
) -> Result<(Value, Vec<Verdict>), InputError> {
    let payload = load_manifold(session, spec)?;
    let as_split = |p: &catalog::Payload| -> Result<SplitManifoldSpec, InputError> {
        Ok(match p {
            catalog::Payload::Split(s) => s.clone(),
            catalog::Payload::Numbers(n) => SplitManifoldSpec::tangent(n.clone())?,
            catalog::Payload::Model(_) => unreachable!("filtered by load_manifold"),
        })
    };
    let order_grid = grid_order(order);
    match genus {
        GenusKind::Witten => {
            let numbers: &CharNumbers = match &payload {
                catalog::Payload::Numbers(n) => n,
                _ => return Err(InputError::Usage("the Witten genus takes plain characteristic numbers".into())),
            };
            let w = witten_genus(numbers, order)?;
            let integral = w.is_integral();
            let verdicts = match numbers.spin {
                Some(true) => vec![Verdict {
                    name: "integrality".into(),
                    value: json!(if integral { "verified" } else { "violated" }),
                    tol: None,
                    passed: integral,
                }],
                _ => {
                    session.warnings.push("integrality not guaranteed: M is not known to be spin".into());
                    vec![]
                }
            };
            Ok((json!({"genus": "witten", "series": series_json(&w)}), verdicts))
        }
        GenusKind::Subdirac => {
            let spec = as_split(&payload)?;
            let phi = match phi {
                PhiKind::One => KExpr::One,
                PhiKind::Witten => KExpr::Witten,
                PhiKind::R => KExpr::R(RVariant::R),
                PhiKind::R1 => KExpr::R(RVariant::RPrime),
                PhiKind::R2 => KExpr::R(RVariant::RDoublePrime),
            };
            let r = subdirac_index(&spec, &KExpr::Witten, &phi, order_grid)?;
            let v = index_verdicts(&r, session);
            Ok((json!({"genus": "subdirac", "series": series_json(&r.value)}), v))
        }
        GenusKind::SplitR | GenusKind::SplitR1 | GenusKind::SplitR2 => {
            let spec = as_split(&payload)?;
            let variant = match genus {
                GenusKind::SplitR => RVariant::R,
                GenusKind::SplitR1 => RVariant::RPrime,
                _ => RVariant::RDoublePrime,
            };
            let r = split_genus(&spec, variant, order_grid)?;
            let v = index_verdicts(&r, session);
            Ok((json!({"genus": variant.name(), "series": series_json(&r.value)}), v))
        }
    }
}

fn parse_grid(spec: &str) -> Result<Vec<Sample>, InputError> {
    if spec == "standard" {
        return Ok(standard_grid());
    }
    let bad = || InputError::Usage(format!("--grid: expected `standard` or `RxC`, got `{spec}`"));
    let (r, c) = spec.split_once('x').ok_or_else(bad)?;
    let (r, c): (usize, usize) = (r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?);
    if r < 2 || c < 2 || r * c > 10_000 {
        return Err(bad());
    }
    let mut out = Vec::with_capacity(r * c);
    for a in 0..r {
        for b in 0..c {
            let (fa, fb) = (a as f64 / (r - 1) as f64, b as f64 / (c - 1) as f64);
            let t = Complex64::new(-1.0 + 2.0 * fb, 1.0 - 2.0 * fa) / std::f64::consts::SQRT_2;
            let tau = Complex64::new(0.4 * (fb - 0.5), 0.5 + 1.5 * fa);
            out.push(Sample { t, tau });
        }
    }
    Ok(out)
}

fn theta_check(
    session: &mut Session,
    law: LawArg,
    kind: KindArg,
    grid: &str,
    tol: f64,
) -> Result<(Value, Vec<Verdict>), InputError> {
    let samples = parse_grid(grid)?;
    let law = match law {
        LawArg::S => Law::S,
        LawArg::T => Law::T,
        LawArg::Lattice => Law::Lattice { a: 2, b: 0 },
    };
    let r = verify_transform(kind.into(), law, &samples, tol)?;
    let mut verdicts = vec![Verdict::below("max_residual", r.max_residual, tol)];
    if let Some(l) = &r.lattice {
        let name = |s: &ExponentSign| match s {
            ExponentSign::Positive => "positive",
            ExponentSign::Negative => "negative",
        };
        let holds: Vec<&str> = l.holds.iter().map(name).collect();
        verdicts.push(Verdict {
            name: "exactly_one_sign".into(),
            value: json!(holds),
            tol: Some(tol),
            passed: holds.len() == 1,
        });
        if let [one] = holds.as_slice() {
            session.warnings.push(format!("lattice law holds with the {one} exponent sign only"));
        }
    }
    Ok((serde_json::to_value(&r).unwrap_or(Value::Null), verdicts))
}

fn equivariant(
    session: &mut Session,
    action: &EquivariantAction,
) -> Result<(Value, Vec<Verdict>, &'static str), InputError> {
    let (p, twist, path, label) = match action {
        EquivariantAction::Lefschetz { point, twist } => (point, *twist, Path::Direct, "lefschetz"),
        EquivariantAction::H { point } => (point, Some(TwistArg::Witten), Path::Theta, "H"),
        EquivariantAction::G { point, variant } => {
            let tw = match variant {
                VariantArg::R => TwistArg::R,
                VariantArg::R1 => TwistArg::R1,
                VariantArg::R2 => TwistArg::R2,
            };
            (point, Some(tw), Path::Theta, "G")
        }
    };
    let model = load_model(session, &p.model)?;
    let twist = match twist {
        Some(TwistArg::Dirac) => LefschetzTwist::Dirac,
        Some(TwistArg::Witten) => LefschetzTwist::Witten,
        Some(TwistArg::R) => LefschetzTwist::R(RVariant::R),
        Some(TwistArg::R1) => LefschetzTwist::R(RVariant::RPrime),
        Some(TwistArg::R2) => LefschetzTwist::R(RVariant::RDoublePrime),
        None => match model.mode {
            Mode::Foliated => LefschetzTwist::Dirac,
            Mode::Split => LefschetzTwist::R(RVariant::R),
        },
    };
    let (t, tau) = (parse_complex("t", &p.t)?, parse_complex("tau", &p.tau)?);
    let anomaly = match anomaly_check(&model) {
        Ok(a) => json!({"n": a.n}),
        Err(e) => {
            session.warnings.push(format!("anomaly check: {e}"));
            Value::Null
        }
    };
    if p.exact {
        let s = fixed_point_series(&model, twist, path, p.order)?;
        session
            .warnings
            .push(format!("value from the series truncated after q^{}", p.order));
        let results = json!({
            "function": label,
            "twist": format!("{twist:?}"),
            "path": path,
            "anomaly": anomaly,
            "series": frac_series_json(&s),
            "value": complex_json(eval_fixed_series(&s, t, tau)),
            "vanishes_to_order": s.is_zero(),
        });
        return Ok((results, vec![], "exact"));
    }
    let value = fixed_point_value(&model, twist, path, t, tau)?;
    let other = match path {
        Path::Theta => Path::Direct,
        Path::Direct => Path::Theta,
    };
    let mut verdicts = Vec::new();
    let results = match fixed_point_value(&model, twist, other, t, tau) {
        Ok(v) => {
            let diff = (v - value).norm() / value.norm().max(1.0);
            verdicts.push(Verdict::below("dual_path_difference", diff, DUAL_PATH_TOL));
            json!({"function": label, "twist": format!("{twist:?}"), "path": path, "anomaly": anomaly,
                   "value": complex_json(value), "other_path_value": complex_json(v)})
        }
        Err(e) => {
            session.warnings.push(format!("second path not evaluated: {e}"));
            json!({"function": label, "twist": format!("{twist:?}"), "path": path, "anomaly": anomaly,
                   "value": complex_json(value)})
        }
    };
    Ok((results, verdicts, "numeric"))
}

fn jacobi_verify(
    session: &mut Session,
    model: &str,
    subgroup: SubgroupArg,
    tol: f64,
) -> Result<(Value, Vec<Verdict>), InputError> {
    let model = load_model(session, model)?;
    let sg: Subgroup = subgroup.into();
    let meta = model_meta(&model, sg)?;
    let r = jacobi_residual(model_function(&model, sg), &meta, &Generator::standard(sg), &sample_points(), tol)?;
    session.warnings.push(format!(
        "index sign: stated max residual {:.3e}, negated {:.3e}; holds: {}",
        r.index_sign.stated_max,
        r.index_sign.negated_max,
        if r.index_sign.holds.is_empty() { "neither".to_string() } else { r.index_sign.holds.join(", ") }
    ));
    let verdicts = vec![Verdict::below("max_residual", r.max_residual, tol)];
    Ok((serde_json::to_value(&r).unwrap_or(Value::Null), verdicts))
}

fn catalog_cmd(action: &CatalogAction) -> Result<(Value, Vec<Verdict>), InputError> {
    match action {
        CatalogAction::List => Ok((json!(catalog::list()), vec![])),
        CatalogAction::Show { name } => {
            let e = catalog::builtin(name)?;
            Ok((serde_json::to_value(&e).unwrap_or(Value::Null), vec![]))
        }
        CatalogAction::Selftest => {
            let lines = catalog::selftest();
            let verdicts = lines
                .iter()
                .map(|l| Verdict {
                    name: format!("{}/{}", l.entry, serde_json::to_value(l.check).unwrap_or(Value::Null).as_str().unwrap_or("")),
                    value: json!({"main": l.main, "oracle": l.oracle}),
                    tol: match &l.expect {
                        catalog::Expect::Exact(_) => None,
                        catalog::Expect::Vanishes(t) | catalog::Expect::Agree(t) | catalog::Expect::Above(t) => Some(*t),
                    },
                    passed: l.passed,
                })
                .collect();
            Ok((serde_json::to_value(&lines).unwrap_or(Value::Null), verdicts))
        }
    }
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<Report, InputError> {
    let mut session = Session::new(&argv);
    let (mode, results, verdicts) = match &cli.command {
        Command::Genus {
            action: GenusAction::Compute { spec, genus, order, phi },
        } => {
            let (r, v) = genus_compute(&mut session, spec, *genus, *order, *phi)?;
            (Some("exact"), r, v)
        }
        Command::Theta {
            action: ThetaAction::Check { law, kind, grid, tol },
        } => {
            let (r, v) = theta_check(&mut session, *law, *kind, grid, *tol)?;
            (Some("numeric"), r, v)
        }
        Command::Equivariant { action } => {
            let (r, v, mode) = equivariant(&mut session, action)?;
            (Some(mode), r, v)
        }
        Command::Jacobi {
            action: JacobiAction::Verify { model, subgroup, tol },
        } => {
            let (r, v) = jacobi_verify(&mut session, model, *subgroup, *tol)?;
            (Some("numeric"), r, v)
        }
        Command::Catalog { action } => {
            let (r, v) = catalog_cmd(action)?;
            (None, r, v)
        }
    };
    Ok(session.report(argv, mode, results, verdicts))
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code with the text to print on stdout.
pub fn dispatch<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            return (code, e.to_string());
        }
    };
    match run(&cli, echo.clone()) {
        Ok(report) => {
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).unwrap_or_default(),
                Format::Text => render::text(&report),
            };
            (code, out)
        }
        Err(e) => {
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({"command": echo, "error": e.to_string()}))
                    .unwrap_or_default(),
                Format::Text => format!("error: {e}"),
            };
            (EXIT_INPUT, out)
        }
    }
}

/// Caps the global thread pool at `GENUSFORGE_THREADS` when it is set.
pub fn init_threads() -> Result<(), String> {
    match std::env::var("GENUSFORGE_THREADS") {
        Ok(v) => {
            let n: usize = v
                .parse()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| format!("GENUSFORGE_THREADS must be a positive integer, got `{v}`"))?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| e.to_string())
        }
        Err(_) => Ok(()),
    }
}
