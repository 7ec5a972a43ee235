//! Identity checks over point samples, the finite-difference oracle and
//! report aggregation.

pub mod check;
pub mod fd;
pub mod sample;
pub mod suite;

pub use check::{
    run_check, run_check_with, CheckSpec, Identity, PointFailure, PointResidual, Stats,
    VerificationReport, Verdict, SCHEMA_VERSION,
};
pub use fd::{fd_coeffs, fd_coeffs_from_gradients, fd_oracle, FdField};
pub use sample::{sample_points, Domain};
pub use suite::{default_suite, run_suite, SuiteEntry, SuiteReport, SuiteResult};
