//! The closed set of coefficient rings and the series wire format.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Laurent, QSeries};
use crate::error::{Error, Result};
use crate::ring::{int, parse_rational, rat_to_string, Invertible, QAlgebra, Rational, Ring};

/// Dynamically tagged coefficient. Arithmetic between different variants
/// is a ring mismatch; [`QSeries::try_mul`] reports it as an error.
#[derive(Clone, Debug)]
pub enum Coefficient {
    Rational(Rational),
    Laurent(Laurent),
    /// Complex double compared with an absolute tolerance.
    Complex { value: Complex64, tol: f64 },
}

impl Coefficient {
    pub fn complex(value: Complex64, tol: f64) -> Self {
        Self::Complex { value, tol }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::Rational(_) => "rational",
            Self::Laurent(_) => "laurent",
            Self::Complex { .. } => "complex",
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (Self::Complex { value: a, .. }, Self::Complex { value: b, .. }) => (a - b).norm() <= tol,
            _ => self == other,
        }
    }

    fn mismatch(&self, other: &Self) -> ! {
        panic!("ring mismatch: {} vs {}", self.tag(), other.tag())
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Rational(a), Self::Rational(b)) => a == b,
            (Self::Laurent(a), Self::Laurent(b)) => a == b,
            (Self::Complex { value: a, tol: ta }, Self::Complex { value: b, tol: tb }) => {
                (a - b).norm() <= ta.max(*tb)
            }
            _ => false,
        }
    }
}

impl Ring for Coefficient {
    fn zero_like(&self) -> Self {
        match self {
            Self::Rational(_) => Self::Rational(int(0)),
            Self::Laurent(_) => Self::Laurent(Laurent::zero()),
            Self::Complex { tol, .. } => Self::complex(Complex64::new(0.0, 0.0), *tol),
        }
    }
    fn one_like(&self) -> Self {
        match self {
            Self::Rational(r) => Self::Rational(r.one_like()),
            Self::Laurent(_) => Self::Laurent(Laurent::one()),
            Self::Complex { tol, .. } => Self::complex(Complex64::new(1.0, 0.0), *tol),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            Self::Rational(r) => r.is_zero(),
            Self::Laurent(l) => l.is_empty(),
            Self::Complex { value, tol } => value.norm() <= *tol,
        }
    }
    fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Rational(a), Self::Rational(b)) => Self::Rational(a + b),
            (Self::Laurent(a), Self::Laurent(b)) => Self::Laurent(a.plus(b)),
            (Self::Complex { value: a, tol: ta }, Self::Complex { value: b, tol: tb }) => {
                Self::complex(a + b, ta.max(*tb))
            }
            _ => self.mismatch(other),
        }
    }
    fn negated(&self) -> Self {
        match self {
            Self::Rational(a) => Self::Rational(-a),
            Self::Laurent(a) => Self::Laurent(a.negated()),
            Self::Complex { value, tol } => Self::complex(-value, *tol),
        }
    }
    fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Rational(a), Self::Rational(b)) => Self::Rational(a * b),
            (Self::Laurent(a), Self::Laurent(b)) => Self::Laurent(a.times(b)),
            (Self::Complex { value: a, tol: ta }, Self::Complex { value: b, tol: tb }) => {
                Self::complex(a * b, ta.max(*tb))
            }
            _ => self.mismatch(other),
        }
    }
    fn compatible(&self, other: &Self) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

impl QAlgebra for Coefficient {
    fn scale(&self, r: &Rational) -> Self {
        match self {
            Self::Rational(a) => Self::Rational(a * r),
            Self::Laurent(a) => Self::Laurent(a.scale(r)),
            Self::Complex { value, tol } => Self::complex(value * crate::ring::rat_to_f64(r), *tol),
        }
    }
}

impl Invertible for Coefficient {
    fn try_inv(&self) -> Option<Self> {
        match self {
            Self::Rational(a) => a.try_inv().map(Self::Rational),
            Self::Laurent(a) => a.try_inv().map(Self::Laurent),
            Self::Complex { value, tol } => {
                if value.norm() <= *tol {
                    None
                } else {
                    Some(Self::complex(value.inv(), *tol))
                }
            }
        }
    }
}

impl QSeries<Coefficient> {
    /// `exp` restricted to the rational variant.
    pub fn exp_rational(&self) -> Result<Self> {
        self.require_rational()?;
        self.exp()
    }

    pub fn log_rational(&self) -> Result<Self> {
        self.require_rational()?;
        self.log()
    }

    fn require_rational(&self) -> Result<()> {
        if self
            .coeffs()
            .iter()
            .all(|c| matches!(c, Coefficient::Rational(_)))
        {
            Ok(())
        } else {
            Err(Error::Precondition(
                "exp/log are defined over the rational ring only".into(),
            ))
        }
    }
}

/// Ring-tagged coefficient as it appears on the wire.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientWire {
    Rational(String),
    /// `[exponent, "num/den"]` pairs in increasing exponent order.
    Laurent(Vec<(i64, String)>),
    Complex([f64; 2]),
}

/// `{offset: "p/q", step: "1/2", order: N, coeffs: [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesWire {
    pub offset: String,
    pub step: String,
    pub order: usize,
    pub coeffs: Vec<CoefficientWire>,
}

pub trait WireCoefficient: Ring + Sized {
    fn to_wire(&self) -> CoefficientWire;
    fn from_wire(w: &CoefficientWire) -> Result<Self>;
}

fn bad(msg: &str) -> Error {
    Error::Precondition(format!("malformed series coefficient: {msg}"))
}

impl WireCoefficient for Rational {
    fn to_wire(&self) -> CoefficientWire {
        CoefficientWire::Rational(rat_to_string(self))
    }
    fn from_wire(w: &CoefficientWire) -> Result<Self> {
        match w {
            CoefficientWire::Rational(s) => parse_rational(s).ok_or_else(|| bad(s)),
            _ => Err(Error::RingMismatch("expected rational coefficient".into())),
        }
    }
}

impl WireCoefficient for Laurent {
    fn to_wire(&self) -> CoefficientWire {
        CoefficientWire::Laurent(self.terms().map(|(e, c)| (e, rat_to_string(c))).collect())
    }
    fn from_wire(w: &CoefficientWire) -> Result<Self> {
        match w {
            CoefficientWire::Laurent(ts) => {
                let mut out = Laurent::zero();
                for (e, s) in ts {
                    out.add_term(*e, &parse_rational(s).ok_or_else(|| bad(s))?);
                }
                Ok(out)
            }
            _ => Err(Error::RingMismatch("expected laurent coefficient".into())),
        }
    }
}

impl WireCoefficient for Complex64 {
    fn to_wire(&self) -> CoefficientWire {
        CoefficientWire::Complex([self.re, self.im])
    }
    fn from_wire(w: &CoefficientWire) -> Result<Self> {
        match w {
            CoefficientWire::Complex([re, im]) => Ok(Complex64::new(*re, *im)),
            _ => Err(Error::RingMismatch("expected complex coefficient".into())),
        }
    }
}

/// Default tolerance attached to complex coefficients read from the wire.
pub const WIRE_COMPLEX_TOL: f64 = 1e-12;

impl WireCoefficient for Coefficient {
    fn to_wire(&self) -> CoefficientWire {
        match self {
            Self::Rational(r) => r.to_wire(),
            Self::Laurent(l) => l.to_wire(),
            Self::Complex { value, .. } => value.to_wire(),
        }
    }
    fn from_wire(w: &CoefficientWire) -> Result<Self> {
        Ok(match w {
            CoefficientWire::Rational(_) => Self::Rational(Rational::from_wire(w)?),
            CoefficientWire::Laurent(_) => Self::Laurent(Laurent::from_wire(w)?),
            CoefficientWire::Complex(_) => Self::complex(Complex64::from_wire(w)?, WIRE_COMPLEX_TOL),
        })
    }
}

impl<R: WireCoefficient> QSeries<R> {
    pub fn to_wire(&self) -> SeriesWire {
        SeriesWire {
            offset: rat_to_string(self.offset()),
            step: "1/2".into(),
            order: self.order(),
            coeffs: self.coeffs().iter().map(|c| c.to_wire()).collect(),
        }
    }

    pub fn from_wire(w: &SeriesWire) -> Result<Self> {
        if parse_rational(&w.step) != Some(super::step()) {
            return Err(Error::Precondition(format!("unsupported grid step {}", w.step)));
        }
        if w.coeffs.len() != w.order {
            return Err(Error::Precondition(format!(
                "order {} does not match {} coefficients",
                w.order,
                w.coeffs.len()
            )));
        }
        let offset = parse_rational(&w.offset).ok_or_else(|| bad(&w.offset))?;
        let coeffs = w.coeffs.iter().map(R::from_wire).collect::<Result<Vec<_>>>()?;
        if let Some(first) = coeffs.first() {
            if coeffs.iter().any(|c| !c.compatible(first)) {
                return Err(Error::RingMismatch("mixed coefficient rings".into()));
            }
        }
        Ok(Self::from_coeffs(offset, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn mismatched_rings_are_reported() {
        let a = QSeries::constant(Coefficient::Rational(int(1)), 3);
        let b = QSeries::constant(Coefficient::Laurent(Laurent::one()), 3);
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn complex_coefficients_compare_with_tolerance() {
        let a = Coefficient::complex(Complex64::new(1.0, 0.0), 1e-9);
        let b = Coefficient::complex(Complex64::new(1.0 + 1e-10, 0.0), 1e-9);
        assert_eq!(a, b);
        assert!(!a.approx_eq(&b, 1e-12));
    }

    #[test]
    fn exp_rejects_non_rational() {
        let a = QSeries::monomial(Coefficient::Laurent(Laurent::one()), 2, 4);
        assert!(a.exp_rational().is_err());
        let r = QSeries::monomial(Coefficient::Rational(int(1)), 2, 4);
        assert!(r.exp_rational().is_ok());
    }

    #[test]
    fn wire_format_shape() {
        let s = QSeries::from_coeffs(rat(1, 8), vec![int(1), rat(-1, 2)]);
        let json = serde_json::to_value(s.to_wire()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"offset": "1/8", "step": "1/2", "order": 2,
                "coeffs": [{"rational": "1/1"}, {"rational": "-1/2"}]})
        );
        let back: QSeries<Rational> = QSeries::from_wire(&serde_json::from_value(json).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn wire_rejects_mixed_rings() {
        let w = SeriesWire {
            offset: "0/1".into(),
            step: "1/2".into(),
            order: 2,
            coeffs: vec![CoefficientWire::Rational("1/1".into()), CoefficientWire::Complex([1.0, 0.0])],
        };
        assert!(QSeries::<Coefficient>::from_wire(&w).is_err());
    }
}
