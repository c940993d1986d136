//! Jacobi theta functions: exact product expansions, numeric evaluation and
//! checks of their modular and lattice transformation laws.
//!
//! With `z = e^{2 pi i v}` and `c(q) = prod (1 - q^n)`:
//!
//! * `theta  = c(q) q^{1/8} 2 sin(pi v) prod (1 - q^n z)(1 - q^n / z)`
//! * `theta1 = c(q) q^{1/8} 2 cos(pi v) prod (1 + q^n z)(1 + q^n / z)`
//! * `theta2 = c(q) prod (1 - q^{n-1/2} z)(1 - q^{n-1/2} / z)`
//! * `theta3 = c(q) prod (1 + q^{n-1/2} z)(1 + q^{n-1/2} / z)`

mod numeric;
mod series;
mod transform;

use serde::{Deserialize, Serialize};

pub use numeric::{
    euler_c, eval_series, q_pow, theta_eval, theta_eval_with_floor, theta_prime0, MAX_FACTORS, MIN_TOL, TAU_FLOOR,
};
pub use series::{theta_body, theta_prime0_series, theta_qseries, Prefactor, ThetaSeries, Trig};
pub use transform::{standard_grid, verify_transform, ExponentSign, LatticeSignReport, Law, Sample, TransformReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [Self::Theta, Self::Theta1, Self::Theta2, Self::Theta3];
}
