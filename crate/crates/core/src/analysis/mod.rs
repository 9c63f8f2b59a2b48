//! Transition-region classification, residual prediction, `L^p` error
//! estimation and bound checks.

mod bound;
mod exact2d;
mod lp;
mod report;
mod transition;

pub use bound::{
    scaling_study, strip_measure_2d, strip_ratio, transition_measure, verify_bound, BoundCheck, ScalingFit,
    StripMeasure, STRIP_SAMPLES,
};
pub use exact2d::lp_error_exact2d;
pub use lp::{lp_error_grid, lp_error_mc};
pub use report::{to_csv_string, write_csv, ErrorReport, Method, CSV_HEADER};
pub use transition::{classify_transition, predicted_residual, HyperplaneChain, TransitionLabel};
