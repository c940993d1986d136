use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charclass::{CharNumbers, Monomial, RootGroup, Symbol};
use crate::error::{Error, Result};
use crate::ring::{int, parse_rational, rat_to_string, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    /// The action on `Fperp` restricted to the fixed set is trivial.
    Foliated,
    /// Both `F` and `Fperp` may rotate at the fixed set.
    Split,
}

/// A complex summand of `F|N` (or `Fperp|N`) on which `e^{2 pi i t}` acts
/// by `e^{2 pi i w t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovingF {
    pub rank: usize,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovingFperp {
    pub rank: usize,
    pub n: i64,
}

/// A connected component `N` of the fixed-point set.
///
/// Root symbols: `p_i(F0)`, `p_i(Fperp0)` for the fixed parts, `c_i(Ej)` and
/// `c_i(Lj)` (1-based) for the moving summands of `F` and `Fperp`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComponentWire", into = "ComponentWire")]
pub struct FixedComponent {
    pub dim_n: u32,
    pub orientation: i8,
    pub f0_pairs: usize,
    pub fperp0_pairs: usize,
    pub moving_f: Vec<MovingF>,
    pub moving_fperp: Vec<MovingFperp>,
    pub numbers: CharNumbers,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentWire {
    #[serde(rename = "dimN")]
    dim_n: u32,
    #[serde(default = "one_i8")]
    orientation: i8,
    #[serde(rename = "F0_pairs", default)]
    f0_pairs: usize,
    #[serde(rename = "Fperp0_pairs", default)]
    fperp0_pairs: usize,
    #[serde(rename = "moving_F", default)]
    moving_f: Vec<MovingF>,
    #[serde(rename = "moving_Fperp", default)]
    moving_fperp: Vec<MovingFperp>,
    #[serde(default)]
    char_numbers: BTreeMap<String, String>,
}

fn one_i8() -> i8 {
    1
}

impl TryFrom<ComponentWire> for FixedComponent {
    type Error = Error;

    fn try_from(w: ComponentWire) -> Result<Self> {
        let mut numbers = BTreeMap::new();
        for (k, v) in &w.char_numbers {
            let value = parse_rational(v)
                .ok_or_else(|| Error::InvalidModel(format!("bad rational `{v}` for `{k}`")))?;
            numbers.insert(k.parse::<Monomial>()?, value);
        }
        FixedComponent::new(
            w.dim_n,
            w.orientation,
            w.f0_pairs,
            w.fperp0_pairs,
            w.moving_f,
            w.moving_fperp,
            numbers,
        )
    }
}

impl From<FixedComponent> for ComponentWire {
    fn from(c: FixedComponent) -> Self {
        Self {
            dim_n: c.dim_n,
            orientation: c.orientation,
            f0_pairs: c.f0_pairs,
            fperp0_pairs: c.fperp0_pairs,
            moving_f: c.moving_f,
            moving_fperp: c.moving_fperp,
            char_numbers: c
                .numbers
                .numbers
                .iter()
                .map(|(m, v)| (m.to_string(), rat_to_string(v)))
                .collect(),
        }
    }
}

pub(crate) fn f0_label() -> &'static str {
    "F0"
}

pub(crate) fn fperp0_label() -> &'static str {
    "Fperp0"
}

pub(crate) fn e_label(j: usize) -> String {
    format!("E{}", j + 1)
}

pub(crate) fn l_label(j: usize) -> String {
    format!("L{}", j + 1)
}

impl FixedComponent {
    pub fn new(
        dim_n: u32,
        orientation: i8,
        f0_pairs: usize,
        fperp0_pairs: usize,
        moving_f: Vec<MovingF>,
        moving_fperp: Vec<MovingFperp>,
        mut numbers: BTreeMap<Monomial, Rational>,
    ) -> Result<Self> {
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidModel(format!("orientation must be +1 or -1, got {orientation}")));
        }
        if dim_n as usize != 2 * (f0_pairs + fperp0_pairs) {
            return Err(Error::InvalidModel(format!(
                "dimN = {dim_n} but the fixed parts have real rank {}",
                2 * (f0_pairs + fperp0_pairs)
            )));
        }
        if moving_f.iter().any(|p| p.m == 0 || p.rank == 0) || moving_fperp.iter().any(|p| p.n == 0 || p.rank == 0) {
            return Err(Error::InvalidModel("moving parts need nonzero rank and rotation number".into()));
        }
        if dim_n == 0 {
            numbers.entry(Monomial::one()).or_insert_with(|| int(1));
        }
        let c = Self {
            dim_n,
            orientation,
            f0_pairs,
            fperp0_pairs,
            moving_f,
            moving_fperp,
            numbers: CharNumbers::new(dim_n, numbers, None)?,
        };
        let known: Vec<String> = c.root_groups().iter().map(|g| g.bundle.clone()).collect();
        for m in c.numbers.numbers.keys() {
            for (s, _) in m.factors() {
                if !known.contains(&s.bundle) {
                    return Err(Error::InvalidModel(format!("monomial `{m}` uses unknown bundle `{}`", s.bundle)));
                }
            }
        }
        Ok(c)
    }

    /// An isolated fixed point.
    pub fn point(orientation: i8, moving_f: Vec<MovingF>, moving_fperp: Vec<MovingFperp>) -> Result<Self> {
        Self::new(0, orientation, 0, 0, moving_f, moving_fperp, BTreeMap::new())
    }

    pub fn is_isolated(&self) -> bool {
        self.dim_n == 0
    }

    /// Half the real rank of `F|N`.
    pub fn f_half_rank(&self) -> usize {
        self.f0_pairs + self.moving_f.iter().map(|p| p.rank).sum::<usize>()
    }

    pub fn fperp_half_rank(&self) -> usize {
        self.fperp0_pairs + self.moving_fperp.iter().map(|p| p.rank).sum::<usize>()
    }

    pub fn root_groups(&self) -> Vec<RootGroup> {
        let mut out = vec![
            RootGroup::pairs(f0_label(), self.f0_pairs),
            RootGroup::pairs(fperp0_label(), self.fperp0_pairs),
        ];
        out.extend(self.moving_f.iter().enumerate().map(|(j, p)| RootGroup::complex(&e_label(j), p.rank)));
        out.extend(self.moving_fperp.iter().enumerate().map(|(j, p)| RootGroup::complex(&l_label(j), p.rank)));
        out
    }

    /// `sum_j rank(E_j) m_j^2`.
    pub fn anomaly_n(&self) -> i64 {
        self.moving_f.iter().map(|p| p.rank as i64 * p.m * p.m).sum()
    }
}

/// Fixed-point data of a circle action together with the global ranks
/// `2p = dim F`, `2r = dim Fperp` and the degree `2l` of the `phi`-density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelWire", into = "ModelWire")]
pub struct EquivariantModel {
    pub mode: Mode,
    pub components: Vec<FixedComponent>,
    pub p: usize,
    pub r: usize,
    pub l: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelWire {
    mode: Mode,
    components: Vec<FixedComponent>,
    p: usize,
    r: usize,
    #[serde(default)]
    l: u32,
}

impl TryFrom<ModelWire> for EquivariantModel {
    type Error = Error;

    fn try_from(w: ModelWire) -> Result<Self> {
        Self::new(w.mode, w.components, w.p, w.r, w.l)
    }
}

impl From<EquivariantModel> for ModelWire {
    fn from(m: EquivariantModel) -> Self {
        Self {
            mode: m.mode,
            components: m.components,
            p: m.p,
            r: m.r,
            l: m.l,
        }
    }
}

impl EquivariantModel {
    pub fn new(mode: Mode, components: Vec<FixedComponent>, p: usize, r: usize, l: u32) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if mode == Mode::Foliated && !c.moving_fperp.is_empty() {
                return Err(Error::InvalidModel(format!(
                    "component {i}: FOLIATED mode forbids moving Fperp parts"
                )));
            }
            if c.f_half_rank() != p || c.fperp_half_rank() != r {
                return Err(Error::InvalidModel(format!(
                    "component {i}: ranks (F, Fperp) = ({}, {}) differ from 2p = {}, 2r = {}",
                    2 * c.f_half_rank(),
                    2 * c.fperp_half_rank(),
                    2 * p,
                    2 * r
                )));
            }
        }
        if mode == Mode::Split && l != 0 {
            return Err(Error::InvalidModel("l applies to FOLIATED models only".into()));
        }
        if l % 2 != 0 {
            return Err(Error::InvalidModel(format!(
                "phi-density degree 2l = {} is not a Pontryagin degree",
                2 * l
            )));
        }
        Ok(Self {
            mode,
            components,
            p,
            r,
            l,
        })
    }

    pub fn is_isolated(&self) -> bool {
        self.components.iter().all(FixedComponent::is_isolated)
    }

    /// All rotation numbers of moving parts, `m_j` and `n_j`.
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self
            .components
            .iter()
            .flat_map(|c| c.moving_f.iter().map(|p| p.m).chain(c.moving_fperp.iter().map(|p| p.n)))
            .collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentAnomaly {
    pub n: i64,
    /// `<sum x^2 + sum y^2, [N]> = 0`, when `dim N = 4` and the numbers exist.
    pub squares_vanish: Option<bool>,
    /// `<sum m_j x_j, [N]> = 0`, when `dim N = 2` and the numbers exist.
    pub weighted_sum_vanishes: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnomalyResult {
    pub n: i64,
    pub components: Vec<ComponentAnomaly>,
}

fn pair_linear(numbers: &CharNumbers, terms: &[(Monomial, Rational)]) -> Option<Rational> {
    terms.iter().try_fold(int(0), |acc, (m, c)| numbers.get(m).map(|v| acc + v * c))
}

fn component_anomaly(c: &FixedComponent) -> ComponentAnomaly {
    let weighted_sum_vanishes = (c.dim_n == 2)
        .then(|| {
            let terms: Vec<_> = c
                .moving_f
                .iter()
                .enumerate()
                .map(|(j, p)| (Monomial::symbol(Symbol::chern(1, &e_label(j))), int(p.m)))
                .collect();
            pair_linear(&c.numbers, &terms).map(|v| v == int(0))
        })
        .flatten();
    let squares_vanish = (c.dim_n == 4)
        .then(|| {
            // sum of squared roots: p1(F0) + sum_j (c1(Ej)^2 - 2 c2(Ej))
            let mut terms = Vec::new();
            if c.f0_pairs > 0 {
                terms.push((Monomial::symbol(Symbol::pontryagin(1, f0_label())), int(1)));
            }
            for (j, p) in c.moving_f.iter().enumerate() {
                let e = e_label(j);
                terms.push((Monomial::power(Symbol::chern(1, &e), 2), int(1)));
                if p.rank >= 2 {
                    terms.push((Monomial::symbol(Symbol::chern(2, &e)), int(-2)));
                }
            }
            pair_linear(&c.numbers, &terms).map(|v| v == int(0))
        })
        .flatten();
    ComponentAnomaly {
        n: c.anomaly_n(),
        squares_vanish,
        weighted_sum_vanishes,
    }
}

/// The fixed-point form of `p1(F)_{S^1} = n u^2`: `n = sum_j rank(E_j) m_j^2`
/// on every component, plus the two relations on roots where the supplied
/// numbers can test them.
pub fn anomaly_check(model: &EquivariantModel) -> Result<AnomalyResult> {
    let components: Vec<ComponentAnomaly> = model.components.iter().map(component_anomaly).collect();
    let n = components.first().map_or(0, |c| c.n);
    for (i, c) in components.iter().enumerate() {
        if c.n != n {
            return Err(Error::InconsistentAnomaly {
                component: i,
                found: c.n,
                expected: n,
            });
        }
        if c.squares_vanish == Some(false) || c.weighted_sum_vanishes == Some(false) {
            return Err(Error::InvalidModel(format!(
                "component {i} violates a root relation of the anomaly condition"
            )));
        }
    }
    Ok(AnomalyResult { n, components })
}
