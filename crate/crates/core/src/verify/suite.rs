//! The acceptance suite: identities × built-in metrics × a parameter grid,
//! each entry with the verdict it is expected to produce.

use std::f64::consts::E;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::geometry::Options;
use crate::verify::check::{run_check_with, CheckSpec, Identity, Verdict, SCHEMA_VERSION};
use crate::zoo::hopf::HopfParams;
use crate::zoo::spec::{MetricSpec, PolyMetric, ScalarField};

/// `(|a|, |b|)` pairs of the default grid.
pub fn default_pairs() -> [(f64, f64); 3] {
    [(E, E), (E * E, E), (E.powf(1.5), E.powf(1.1))]
}

pub const DEFAULT_LAMBDAS: [f64; 3] = [-0.5, 0.0, 1.0];

/// Number of seeded polynomial metrics in the default suite.
const POLY_SEEDS: u64 = 5;

const POLY_EPS: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub check: CheckSpec,
    pub expect: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub check: CheckSpec,
    pub expect: Verdict,
    pub verdict: Option<Verdict>,
    pub max_residual: Option<f64>,
    pub as_expected: bool,
    pub warnings: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub seed: u64,
    pub n_points: usize,
    pub options: Options,
    pub results: Vec<SuiteResult>,
    pub n_unexpected: usize,
    pub all_as_expected: bool,
    pub wall_time: f64,
}

/// The default suite with `n_points` samples per entry.
pub fn default_suite(n_points: usize, seed: u64) -> Vec<SuiteEntry> {
    let mut out = Vec::new();
    let mut push = |identity: Identity, metric: MetricSpec, expect: Verdict| {
        out.push(SuiteEntry {
            check: CheckSpec::new(identity, metric, n_points, seed),
            expect,
        });
    };
    use Identity::*;
    use Verdict::{Fail, Pass};
    for (a, b) in default_pairs() {
        let hopf = HopfParams::real(a, b).expect("admissible grid");
        let lc = MetricSpec::HopfLcFlat { hopf };
        for id in [LcRicciFlat, KeyRelation, Scalar010, ScalarKey1, DeckInvariance, HessianMatrices, FdOracle] {
            push(id, lc.clone(), Pass);
        }
        for lambda in DEFAULT_LAMBDAS {
            let om = MetricSpec::HopfOmegaLambda { hopf, lambda };
            for id in [DetFormula, TwFormula, LcRicciFormula, KeyRelation, Scalar010, ScalarKey1, DeckInvariance] {
                push(id, om.clone(), Pass);
            }
        }
        push(LcRicciFlat, MetricSpec::HopfOmegaLambda { hopf, lambda: 0.0 }, Fail);
        let log_delta = MetricSpec::Conformal {
            base: Box::new(lc.clone()),
            f: ScalarField::LogDelta { scale: 1.0 },
        };
        push(ConformalLaw, log_delta.clone(), Pass);
        push(DeckInvariance, log_delta, Pass);
        let bumped = MetricSpec::Conformal {
            base: Box::new(lc),
            f: ScalarField::RandomPoly { seed: 1, eps: 1e-3 },
        };
        push(ConformalLaw, bumped.clone(), Pass);
        push(DeckInvariance, bumped, Fail);
    }
    let flat = MetricSpec::Flat { n: 2 };
    for id in [LcRicciFlat, KeyRelation, KahlerCollapse, Scalar010, ScalarKey1, FdOracle] {
        push(id, flat.clone(), Pass);
    }
    let kahler = MetricSpec::KahlerTest { c: 0.1 };
    for id in [KeyRelation, KahlerCollapse, Scalar010, ScalarKey1, FdOracle] {
        push(id, kahler.clone(), Pass);
    }
    push(LcRicciFlat, kahler.clone(), Fail);
    let standard = MetricSpec::HopfStandard { a: E };
    for id in [KeyRelation, Scalar010, ScalarKey1, DeckInvariance, FdOracle] {
        push(id, standard.clone(), Pass);
    }
    push(KahlerCollapse, standard, Fail);
    for k in 1..=POLY_SEEDS {
        let poly = MetricSpec::UserPolynomial(PolyMetric::random(k, POLY_EPS));
        for id in [KeyRelation, Scalar010, ScalarKey1, FdOracle] {
            push(id, poly.clone(), Pass);
        }
        push(KahlerCollapse, poly.clone(), Fail);
        let conf = MetricSpec::Conformal {
            base: Box::new(poly),
            f: ScalarField::RandomPoly { seed: k, eps: 0.1 },
        };
        push(ConformalLaw, conf.clone(), Pass);
        push(KeyRelation, conf, Pass);
    }
    push(
        ConformalLaw,
        MetricSpec::Conformal {
            base: Box::new(kahler),
            f: ScalarField::RandomPoly { seed: 7, eps: 0.1 },
        },
        Pass,
    );
    out
}

/// Runs every entry; a configuration or construction error counts as an
/// unexpected outcome.
pub fn run_suite(entries: &[SuiteEntry], seed: u64, n_points: usize, opts: Options) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<SuiteResult> = entries
        .iter()
        .map(|e| match run_check_with(&e.check, opts) {
            Ok(r) => SuiteResult {
                check: e.check.clone(),
                expect: e.expect,
                verdict: Some(r.verdict),
                max_residual: Some(r.stats.max),
                as_expected: r.verdict == e.expect,
                warnings: r.warnings.len(),
                error: None,
            },
            Err(err) => SuiteResult {
                check: e.check.clone(),
                expect: e.expect,
                verdict: None,
                max_residual: None,
                as_expected: false,
                warnings: 0,
                error: Some(err.to_string()),
            },
        })
        .collect();
    let n_unexpected = results.iter().filter(|r| !r.as_expected).count();
    SuiteReport {
        schema_version: SCHEMA_VERSION,
        engine_version: crate::ENGINE_VERSION.to_string(),
        seed,
        n_points,
        options: opts,
        results,
        n_unexpected,
        all_as_expected: n_unexpected == 0,
        wall_time: start.elapsed().as_secs_f64(),
    }
}
