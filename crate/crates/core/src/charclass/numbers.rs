use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::poly::GradedPoly;
use super::symbol::Monomial;
use crate::error::{Error, Result};
use crate::ring::{parse_rational, rat_to_string, QAlgebra, Rational};

/// Characteristic numbers of a closed manifold of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CharNumbersWire", into = "CharNumbersWire")]
pub struct CharNumbers {
    pub dim: u32,
    pub numbers: BTreeMap<Monomial, Rational>,
    pub spin: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharNumbersWire {
    dim: u32,
    numbers: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spin: Option<bool>,
}

impl CharNumbers {
    pub fn new(dim: u32, numbers: BTreeMap<Monomial, Rational>, spin: Option<bool>) -> Result<Self> {
        if dim % 2 != 0 {
            return Err(Error::InvalidModel(format!("odd dimension {dim}")));
        }
        if let Some(m) = numbers.keys().find(|m| m.degree() != dim) {
            return Err(Error::InvalidModel(format!(
                "monomial `{m}` has degree {}, expected {dim}",
                m.degree()
            )));
        }
        Ok(Self { dim, numbers, spin })
    }

    /// Builds from `(monomial text, value)` pairs.
    pub fn from_pairs(dim: u32, pairs: &[(&str, Rational)], spin: Option<bool>) -> Result<Self> {
        let mut numbers = BTreeMap::new();
        for (k, v) in pairs {
            numbers.insert(k.parse::<Monomial>()?, v.clone());
        }
        Self::new(dim, numbers, spin)
    }

    /// The point: dimension zero with `<1, [pt]> = 1`.
    pub fn point() -> Self {
        Self::from_pairs(0, &[("1", crate::ring::int(1))], Some(true)).expect("valid")
    }

    pub fn get(&self, m: &Monomial) -> Option<&Rational> {
        self.numbers.get(m)
    }
}

impl TryFrom<CharNumbersWire> for CharNumbers {
    type Error = Error;

    fn try_from(w: CharNumbersWire) -> Result<Self> {
        let mut numbers = BTreeMap::new();
        for (k, v) in &w.numbers {
            let value = parse_rational(v)
                .ok_or_else(|| Error::InvalidModel(format!("bad rational `{v}` for `{k}`")))?;
            numbers.insert(k.parse::<Monomial>()?, value);
        }
        Self::new(w.dim, numbers, w.spin)
    }
}

impl From<CharNumbers> for CharNumbersWire {
    fn from(c: CharNumbers) -> Self {
        Self {
            dim: c.dim,
            numbers: c
                .numbers
                .iter()
                .map(|(m, v)| (m.to_string(), rat_to_string(v)))
                .collect(),
            spin: c.spin,
        }
    }
}

/// `<density, [M]>`: the top-degree part paired with the supplied numbers.
pub fn pair_fundamental<C: QAlgebra>(density: &GradedPoly<C>, numbers: &CharNumbers) -> Result<C> {
    if density.top_degree() != numbers.dim {
        return Err(Error::DimensionMismatch {
            density: density.top_degree(),
            numbers: numbers.dim,
        });
    }
    let mut acc = density.unit().zero_like();
    for (m, c) in density.terms() {
        if m.degree() != numbers.dim || c.is_zero() {
            continue;
        }
        let value = numbers
            .get(m)
            .ok_or_else(|| Error::MissingNumber(m.to_string()))?;
        acc = acc.plus(&c.scale(value));
    }
    Ok(acc)
}
