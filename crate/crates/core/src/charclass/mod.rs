//! Chern-root calculus: graded polynomials in characteristic classes,
//! multiplicative sequences and pairing with a fundamental class.

mod multiplicative;
mod numbers;
mod poly;
mod symbol;

pub use multiplicative::{
    ahat_factor, elementary_from_power_sums, genus_sequence, half_l_factor, l_factor,
    multiplicative_class, power_sums, RootGroup,
};
pub use numbers::{pair_fundamental, CharNumbers};
pub use poly::GradedPoly;
pub use symbol::{ClassKind, Monomial, Symbol};
