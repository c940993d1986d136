//! Non-equivariant index densities and genera of a manifold whose tangent
//! bundle splits as `TM = F + Fperp`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charclass::{
    ahat_factor, genus_sequence, l_factor, multiplicative_class, pair_fundamental, CharNumbers, GradedPoly, RootGroup,
};
use crate::error::{Error, Result};
use crate::ktheory::{r_variant, witten_element, KClass, RVariant};
use crate::ring::{int, parse_rational, rat_to_string, QAlgebra, Rational, Ring};
use crate::series::{grid_order, QSeries};

/// Dimension, splitting and characteristic numbers of a split manifold.
///
/// Symbols of `F` carry the label `F` and those of `Fperp` the label
/// `Fperp`, except that a bundle equal to all of `TM` (the other one has
/// rank zero) uses unlabeled symbols such as `p1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SplitWire", into = "SplitWire")]
pub struct SplitManifoldSpec {
    pub f_pairs: usize,
    pub fperp_pairs: usize,
    pub numbers: CharNumbers,
    pub f_spin: bool,
    pub m_spin: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Pairs {
    pairs: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitWire {
    dim: u32,
    #[serde(rename = "F")]
    f: Pairs,
    #[serde(rename = "Fperp")]
    fperp: Pairs,
    numbers: BTreeMap<String, String>,
    #[serde(rename = "F_spin")]
    f_spin: bool,
    #[serde(rename = "M_spin")]
    m_spin: bool,
}

impl TryFrom<SplitWire> for SplitManifoldSpec {
    type Error = Error;

    fn try_from(w: SplitWire) -> Result<Self> {
        let mut numbers = BTreeMap::new();
        for (k, v) in &w.numbers {
            let value = parse_rational(v)
                .ok_or_else(|| Error::InvalidModel(format!("bad rational `{v}` for `{k}`")))?;
            numbers.insert(k.parse()?, value);
        }
        let numbers = CharNumbers::new(w.dim, numbers, Some(w.m_spin))?;
        Self::new(w.f.pairs, w.fperp.pairs, numbers, w.f_spin, w.m_spin)
    }
}

impl From<SplitManifoldSpec> for SplitWire {
    fn from(s: SplitManifoldSpec) -> Self {
        Self {
            dim: s.numbers.dim,
            f: Pairs { pairs: s.f_pairs },
            fperp: Pairs { pairs: s.fperp_pairs },
            numbers: s
                .numbers
                .numbers
                .iter()
                .map(|(m, v)| (m.to_string(), rat_to_string(v)))
                .collect(),
            f_spin: s.f_spin,
            m_spin: s.m_spin,
        }
    }
}

impl SplitManifoldSpec {
    pub fn new(f_pairs: usize, fperp_pairs: usize, numbers: CharNumbers, f_spin: bool, m_spin: bool) -> Result<Self> {
        if numbers.dim as usize != 2 * (f_pairs + fperp_pairs) {
            return Err(Error::InvalidModel(format!(
                "dimension {} is not 2 * ({f_pairs} + {fperp_pairs})",
                numbers.dim
            )));
        }
        Ok(Self {
            f_pairs,
            fperp_pairs,
            numbers,
            f_spin,
            m_spin,
        })
    }

    /// `F = TM`, `Fperp = 0`.
    pub fn tangent(numbers: CharNumbers) -> Result<Self> {
        let spin = numbers.spin.unwrap_or(false);
        Self::new(numbers.dim as usize / 2, 0, numbers, spin, spin)
    }

    pub fn dim(&self) -> u32 {
        self.numbers.dim
    }

    pub fn f_group(&self) -> RootGroup {
        RootGroup::pairs(if self.fperp_pairs == 0 { "" } else { "F" }, self.f_pairs)
    }

    pub fn fperp_group(&self) -> RootGroup {
        RootGroup::pairs(if self.f_pairs == 0 { "" } else { "Fperp" }, self.fperp_pairs)
    }
}

/// A K-theory expression in a single bundle `E`.
#[derive(Clone, Debug, PartialEq)]
pub enum KExpr {
    One,
    /// `mult * E + shift`.
    Virtual { mult: i64, shift: i64 },
    /// `Psi_q(E)`.
    Witten,
    /// `R_q(E)`, `R'_q(E)` or `R''_q(E)`, Witten factor included.
    R(RVariant),
    Product(Vec<KExpr>),
}

impl KExpr {
    /// Chern character as a q-series of classes of `g`.
    pub fn character(&self, g: &RootGroup, order: usize, top: u32) -> QSeries<GradedPoly<Rational>> {
        let e = KClass::bundle(g.clone());
        let reduced = || e.reduced().character(top);
        match self {
            Self::One => QSeries::constant(GradedPoly::one(int(1), top), order),
            Self::Virtual { mult, shift } => {
                let c = e
                    .character(top)
                    .scale(&int(*mult))
                    .plus(&GradedPoly::constant(int(*shift), top));
                QSeries::constant(c, order)
            }
            Self::Witten => witten_element(&reduced(), order),
            Self::R(v) => r_variant(&reduced(), *v, order),
            Self::Product(xs) => xs.iter().fold(Self::One.character(g, order, top), |acc, x| {
                acc.mul(&x.character(g, order, top))
            }),
        }
    }
}

/// Characteristic class multiplying the twisted characters in a density.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityBase {
    /// `Ahat(F) L(Fperp)`, the sub-Dirac operator.
    AhatL,
    /// `Ahat(F) Ahat(Fperp) = Ahat(TM)`, the Dirac operator.
    AhatAhat,
}

fn base_class(spec: &SplitManifoldSpec, base: DensityBase) -> Result<GradedPoly<Rational>> {
    let top = spec.dim();
    let len = top as usize + 2;
    let a = multiplicative_class(&ahat_factor(len), &spec.f_group(), top)?;
    let other = match base {
        DensityBase::AhatL => l_factor(len),
        DensityBase::AhatAhat => ahat_factor(len),
    };
    Ok(a.times(&multiplicative_class(&other, &spec.fperp_group(), top)?))
}

fn density_with_base(
    spec: &SplitManifoldSpec,
    base: DensityBase,
    psi: &KExpr,
    phi: &KExpr,
    order: usize,
) -> Result<QSeries<GradedPoly<Rational>>> {
    let top = spec.dim();
    let b = base_class(spec, base)?;
    let chi = psi
        .character(&spec.f_group(), order, top)
        .mul(&phi.character(&spec.fperp_group(), order, top));
    Ok(chi.map(|c| c.times(&b)))
}

/// `Ahat(F) ch(psi(F)) L(Fperp) ch(phi(Fperp))` with `L` the Hirzebruch
/// class of `a/tanh(a)`. `order` is a grid order (half-integer steps).
pub fn index_density(
    spec: &SplitManifoldSpec,
    psi: &KExpr,
    phi: &KExpr,
    order: usize,
) -> Result<QSeries<GradedPoly<Rational>>> {
    density_with_base(spec, DensityBase::AhatL, psi, phi, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrality {
    /// Integrality is guaranteed and every coefficient is an integer.
    Verified,
    /// Integrality is guaranteed but some coefficient is not an integer.
    Violated,
    /// Nothing guarantees integrality; coefficients were not judged.
    NotGuaranteed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndexResult {
    pub value: QSeries<Rational>,
    pub integrality: Integrality,
    pub warnings: Vec<String>,
}

fn judge(value: &QSeries<Rational>, guaranteed: bool, why: &str) -> (Integrality, Vec<String>) {
    if !guaranteed {
        return (
            Integrality::NotGuaranteed,
            vec![format!("integrality not guaranteed: {why}")],
        );
    }
    if value.is_integral() {
        (Integrality::Verified, vec![])
    } else {
        (
            Integrality::Violated,
            vec!["non-integral coefficient where the index theorem guarantees integers".into()],
        )
    }
}

fn pair_series(density: &QSeries<GradedPoly<Rational>>, numbers: &CharNumbers) -> Result<QSeries<Rational>> {
    let coeffs = density
        .coeffs()
        .iter()
        .map(|c| pair_fundamental(c, numbers))
        .collect::<Result<Vec<_>>>()?;
    Ok(QSeries::from_coeffs(density.offset().clone(), coeffs))
}

/// `<index_density, [M]>`, coefficientwise in q.
pub fn subdirac_index(spec: &SplitManifoldSpec, psi: &KExpr, phi: &KExpr, order: usize) -> Result<IndexResult> {
    let value = pair_series(&index_density(spec, psi, phi, order)?, &spec.numbers)?;
    let (integrality, warnings) = judge(&value, spec.f_spin, "F is not spin");
    Ok(IndexResult {
        value,
        integrality,
        warnings,
    })
}

/// `<Ahat(TM) ch(Psi_q(TM)), [M]>` to `order` in q (not grid units).
pub fn witten_genus(numbers: &CharNumbers, order: u32) -> Result<QSeries<Rational>> {
    let top = numbers.dim;
    let go = grid_order(order);
    let g = RootGroup::pairs("", (top / 2) as usize);
    let a = genus_sequence(&ahat_factor(top as usize + 2), top)?;
    let density = KExpr::Witten.character(&g, go, top).map(|c| c.times(&a));
    pair_series(&density, numbers)
}

/// The three pairings `<Ahat(F) L(Fperp) ch Psi_q(F) ch R_q(Fperp), [M]>`,
/// and the `R'`, `R''` versions with `Ahat(TM)`, to grid order `order`.
pub fn split_genus(spec: &SplitManifoldSpec, variant: RVariant, order: usize) -> Result<IndexResult> {
    let base = match variant {
        RVariant::R => DensityBase::AhatL,
        RVariant::RPrime | RVariant::RDoublePrime => DensityBase::AhatAhat,
    };
    let density = density_with_base(spec, base, &KExpr::Witten, &KExpr::R(variant), order)?;
    let value = pair_series(&density, &spec.numbers)?;
    let (guaranteed, why) = match base {
        DensityBase::AhatL => (spec.f_spin, "F is not spin"),
        DensityBase::AhatAhat => (spec.m_spin, "M is not spin"),
    };
    let (integrality, warnings) = judge(&value, guaranteed, why);
    Ok(IndexResult {
        value,
        integrality,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::Monomial;
    use crate::ring::rat;

    fn k3() -> CharNumbers {
        CharNumbers::from_pairs(4, &[("p1", int(-48))], Some(true)).unwrap()
    }

    #[test]
    fn specializations() {
        let spec = SplitManifoldSpec::tangent(k3()).unwrap();
        let d = index_density(&spec, &KExpr::One, &KExpr::One, 1).unwrap();
        let c = d.coeff(0).unwrap();
        assert_eq!(c.coeff(&"p1".parse::<Monomial>().unwrap()), rat(-1, 24));
        let r = subdirac_index(&spec, &KExpr::One, &KExpr::One, 1).unwrap();
        assert_eq!(r.value.coeff(0), Some(&int(2)));
        assert_eq!(r.integrality, Integrality::Verified);

        // p = 0: only L(Fperp), the signature
        let sig = SplitManifoldSpec::new(0, 2, k3(), true, true).unwrap();
        let s = subdirac_index(&sig, &KExpr::One, &KExpr::One, 1).unwrap();
        assert_eq!(s.value.coeff(0), Some(&int(-16)));
    }

    #[test]
    fn two_sphere_has_zero_ahat() {
        let s2 = CharNumbers::new(2, BTreeMap::new(), Some(true)).unwrap();
        let spec = SplitManifoldSpec::tangent(s2).unwrap();
        let r = subdirac_index(&spec, &KExpr::One, &KExpr::One, 1).unwrap();
        assert_eq!(r.value.coeff(0), Some(&int(0)));
    }

    #[test]
    fn witten_genus_of_k3() {
        let w = witten_genus(&k3(), 2).unwrap();
        assert_eq!(w.coeff(0), Some(&int(2)));
        assert_eq!(w.coeff(2), Some(&int(-48)));
        assert_eq!(w.coeff(4), Some(&int(-144)));
        assert_eq!(witten_genus(&CharNumbers::point(), 3).unwrap().coeff(0), Some(&int(1)));
    }

    #[test]
    fn split_variants_reduce_to_witten_genus_without_fperp() {
        let spec = SplitManifoldSpec::tangent(k3()).unwrap();
        let w = witten_genus(&k3(), 3).unwrap();
        for v in RVariant::ALL {
            assert_eq!(split_genus(&spec, v, grid_order(3)).unwrap().value, w);
        }
    }

    #[test]
    fn json_round_trip() {
        let v = serde_json::json!({
            "dim": 8, "F": {"pairs": 2}, "Fperp": {"pairs": 2},
            "numbers": {"p1(F)*p1(Fperp)": "2304/1", "p1(F)^2": "0/1", "p2(F)": "0/1",
                        "p1(Fperp)^2": "0/1", "p2(Fperp)": "0/1"},
            "F_spin": true, "M_spin": true
        });
        let s: SplitManifoldSpec = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(s.dim(), 8);
        assert_eq!(serde_json::to_value(&s).unwrap(), v);
        let bad = serde_json::json!({"dim": 6, "F": {"pairs": 2}, "Fperp": {"pairs": 2},
            "numbers": {}, "F_spin": true, "M_spin": true});
        assert!(serde_json::from_value::<SplitManifoldSpec>(bad).is_err());
    }
}
