//! Concrete metric fields: Hopf potentials, the `ω_λ` family, the
//! Levi-Civita Ricci-flat metric, reference metrics and conformal scalings.

pub mod build;
pub mod hopf;
pub mod spec;

pub use build::{
    build_metric, build_metric_order, conformal_scale, deck_invariance_residual, kahler_potential,
    scalar_field_jet, METRIC_ORDER,
};
pub use hopf::{hessian_forms, phi_field, phi_value, HopfParams, PhiField};
pub use spec::{MetricSpec, PolyMetric, PolyTerm, ScalarField};
