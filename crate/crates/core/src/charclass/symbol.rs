//! Characteristic-class symbols and monomials with a small text grammar:
//! `p1`, `p2(F)`, `c1(E1)`, `p1(F)^2*p1(Fperp)`, and `1` for the empty monomial.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Pontryagin,
    Chern,
}

impl ClassKind {
    fn letter(self) -> char {
        match self {
            Self::Pontryagin => 'p',
            Self::Chern => 'c',
        }
    }

    /// Cohomological degree of the index-1 class.
    pub fn unit_degree(self) -> u32 {
        match self {
            Self::Pontryagin => 4,
            Self::Chern => 2,
        }
    }
}

/// `p_i(label)` or `c_i(label)`; the empty label is the tangent bundle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub bundle: String,
    pub kind: ClassKind,
    pub index: u32,
}

impl Symbol {
    pub fn pontryagin(index: u32, bundle: &str) -> Self {
        Self {
            bundle: bundle.to_string(),
            kind: ClassKind::Pontryagin,
            index,
        }
    }

    pub fn chern(index: u32, bundle: &str) -> Self {
        Self {
            bundle: bundle.to_string(),
            kind: ClassKind::Chern,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.kind.unit_degree() * self.index
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)?;
        if !self.bundle.is_empty() {
            write!(f, "({})", self.bundle)?;
        }
        Ok(())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::BadMonomial(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('p') => ClassKind::Pontryagin,
            Some('c') => ClassKind::Chern,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (digits, bundle) = match rest.find('(') {
            Some(i) => {
                let label = rest[i + 1..].strip_suffix(')').ok_or_else(bad)?;
                if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(bad());
                }
                (&rest[..i], label)
            }
            None => (rest, ""),
        };
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let index: u32 = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Self {
            bundle: bundle.to_string(),
            kind,
            index,
        })
    }
}

/// Product of symbols with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Symbol, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: Symbol, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(s, e);
        }
        Self(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(s, e)| s.degree() * e).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            *out.entry(s.clone()).or_insert(0) += e;
        }
        Self(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{s}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t == "1" {
            return Ok(Self::one());
        }
        let bad = || Error::BadMonomial(s.to_string());
        let mut out = Self::one();
        for factor in t.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.trim().parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            if exp == 0 {
                return Err(bad());
            }
            let sym: Symbol = base.parse().map_err(|_| bad())?;
            out = out.times(&Self::power(sym, exp));
        }
        Ok(out)
    }
}
