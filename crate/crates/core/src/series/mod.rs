//! Exact truncated formal series: q-series on the half-integer grid,
//! power series in a root variable, and their coefficient rings.

mod coefficient;
mod dense;
mod laurent;
mod power;
mod qseries;

pub use coefficient::{Coefficient, CoefficientWire, SeriesWire, WireCoefficient, WIRE_COMPLEX_TOL};
pub use laurent::{DenFactor, Laurent, LaurentFrac};
pub use power::{eval_complex, PowerSeries};
pub use qseries::{grid_order, step, QSeries};
