//! Convergence studies, the error metric and the verification suite behind
//! the `gb-lrei` command line.

mod config;
mod dump;
mod metric;
mod study;
mod verify;

pub use config::{
    default_taus, parse_real, ConfigMap, ExperimentConfig, InitialKind, ReferenceSpec, KEYS,
};
pub use dump::step_dump;
pub use metric::{error_metric, estimate_order, OrderEstimate};
pub use study::{build_grid, build_initial, run_convergence, ErrorRow, ErrorTable};
pub use verify::{
    random_band_limited, relative_gap, run_verification, VerifyOutcome, CLOSED_FORM_TOL,
    DECOMPOSITION_TOL, GRID_SIZES, STEP_SIZES,
};
