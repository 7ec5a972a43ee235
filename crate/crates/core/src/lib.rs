//! Numerical verification of Levi-Civita Ricci curvature identities on
//! Hermitian manifolds, with Hopf surfaces as the main example.
//!
//! The engine works pointwise: a metric is represented by the truncated
//! Wirtinger jet of `h_{ij̄}` at a point ([`MetricJet`]), every curvature
//! quantity is read off from jet coefficients ([`Geometry`]), and the
//! [`verify`] layer samples points and checks identities between them.

pub mod error;
pub mod geometry;
pub mod jet;
pub mod linalg;
pub mod metric;
pub mod riemann;
pub mod solve;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use geometry::{Geometry, Options, Scalars};
pub use jet::{Jet, Layout, C64};
pub use metric::{Form01, Form10, Form11, MetricJet, Point, Tensor4};
pub use zoo::{HopfParams, MetricSpec, ScalarField};

/// Version string embedded in reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
