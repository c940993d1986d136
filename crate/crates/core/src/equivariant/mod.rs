//! Circle actions: fixed-point data, Lefschetz numbers and their
//! theta-function forms, and the Jacobi-form checks.

mod factors;
mod jacobi;
mod lefschetz;
mod model;

pub use factors::{lattice_distance, Path, POLE_EPS};
pub use jacobi::{
    jacobi_residual, model_function, model_meta, sample_points, slash, subgroup_member, Generator, GeneratorResidual,
    GroupElement2x2, IndexSignReport, JacobiFormMeta, JacobiReport, Subgroup,
};
pub use lefschetz::{
    eval_fixed_series, fixed_point_series, fixed_point_value, g_eval, g_series, h_eval, h_series, lefschetz,
    lefschetz_series, LefschetzTwist,
};
pub use model::{anomaly_check, AnomalyResult, ComponentAnomaly, EquivariantModel, FixedComponent, Mode, MovingF, MovingFperp};
