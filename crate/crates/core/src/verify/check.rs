//! Identity checks over sampled points and their reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Geometry, Options};
use crate::jet::C64;
use crate::metric::{max_abs_diff_vec, Form11, Point};
use crate::verify::fd::{fd_oracle, worst_errors};
use crate::verify::sample::{sample_points, Domain, DEFAULT_EXCLUSION};
use crate::zoo::build::{build_metric, deck_invariance_residual, scalar_field_jet};
use crate::zoo::hopf::{hessian_forms, phi_field, HopfParams};
use crate::zoo::spec::MetricSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Half-width of the sampling box for metrics without a deck group.
pub const BOX_HALF_WIDTH: f64 = 0.5;

/// Share of points allowed to fail construction before a check aborts.
pub const MAX_FAILURE_FRACTION: f64 = 0.1;

/// Ratio between the first- and second-derivative FD tolerances.
const FD_FIRST_WEIGHT: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `𝔯ic(ω) = 0` through both the curvature trace and the Ricci relation.
    LcRicciFlat,
    /// `𝔯ic(ω) = Ric(ω) − ½(∂∂*ω + ∂̄∂̄*ω)`, the two paths against each other.
    KeyRelation,
    /// `𝔯ic(e^f ω) = 𝔯ic(ω) − √−1∂∂̄f` and `∂̄*_f ω_f = ∂̄*ω + √−1(n−1)∂f`.
    ConformalLaw,
    /// `det ω_λ = (1+λ)/(Δ³Φ²)`, relative error.
    DetFormula,
    /// `∂∂*ω_λ = ∂̄∂̄*ω_λ = √−1∂∂̄logΦ/(1+λ)` and `∂*ω_λ = √−1∂̄logΦ/(1+λ)`.
    TwFormula,
    /// `s_LC = s_C − ½⟨∂∂*ω + ∂̄∂̄*ω, ω⟩ = s_C − ⟨∂∂*ω, ω⟩`.
    #[serde(rename = "scalar-010")]
    Scalar010,
    /// `s = 2s_C + ⟨∂∂*ω + ∂̄∂̄*ω, ω⟩ − 2|∂*ω|² − ½|T|²`.
    ScalarKey1,
    /// Pullback of `h` by the deck map equals `h`.
    DeckInvariance,
    /// `√−1∂∂̄logΦ` against its closed form; both Hessian forms degenerate.
    HessianMatrices,
    /// Kähler metrics: `T = 0`, `∂*ω = 0`, `𝔯ic = Ric`, `s = 2s_C`.
    KahlerCollapse,
    /// `𝔯ic(ω_λ) = (2 − 1/(1+λ))√−1∂∂̄logΦ + 3√−1∂∂̄logΔ`.
    LcRicciFormula,
    /// Jet coefficients against central finite differences; the residual is
    /// `max(100·first, second)` so that tol 1e-6 gates first derivatives at
    /// 1e-8 and second derivatives at 1e-6.
    FdOracle,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::LcRicciFlat,
        Identity::KeyRelation,
        Identity::ConformalLaw,
        Identity::DetFormula,
        Identity::TwFormula,
        Identity::Scalar010,
        Identity::ScalarKey1,
        Identity::DeckInvariance,
        Identity::HessianMatrices,
        Identity::KahlerCollapse,
        Identity::LcRicciFormula,
        Identity::FdOracle,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Identity::LcRicciFlat => "lc-ricci-flat",
            Identity::KeyRelation => "key-relation",
            Identity::ConformalLaw => "conformal-law",
            Identity::DetFormula => "det-formula",
            Identity::TwFormula => "tw-formula",
            Identity::Scalar010 => "scalar-010",
            Identity::ScalarKey1 => "scalar-key1",
            Identity::DeckInvariance => "deck-invariance",
            Identity::HessianMatrices => "hessian-matrices",
            Identity::KahlerCollapse => "kahler-collapse",
            Identity::LcRicciFormula => "lc-ricci-formula",
            Identity::FdOracle => "fd-oracle",
        }
    }

    pub fn default_tol(&self) -> f64 {
        match self {
            Identity::FdOracle | Identity::ScalarKey1 => 1e-6,
            Identity::DetFormula | Identity::DeckInvariance | Identity::HessianMatrices => 1e-10,
            _ => 1e-8,
        }
    }

    /// Rejects metric kinds the identity says nothing about.
    pub fn check_metric(&self, spec: &MetricSpec) -> Result<()> {
        let ok = match self {
            Identity::ConformalLaw => matches!(spec, MetricSpec::Conformal { .. }),
            Identity::DetFormula | Identity::TwFormula | Identity::LcRicciFormula => {
                matches!(spec, MetricSpec::HopfOmegaLambda { .. })
            }
            Identity::DeckInvariance | Identity::HessianMatrices => spec.hopf().is_some(),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(
                "metric",
                format!("`{}` does not apply to `{}` metrics", self.tag(), spec.kind()),
            ))
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .iter()
            .find(|i| i.tag() == s)
            .copied()
            .ok_or_else(|| Error::param("identity", format!("unknown identity `{s}`")))
    }
}

mod spec_string {
    use super::MetricSpec;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(spec: &MetricSpec, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(spec)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<MetricSpec, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub identity: Identity,
    #[serde(with = "spec_string")]
    pub metric: MetricSpec,
    pub n_points: usize,
    pub seed: u64,
    pub tol: f64,
}

impl CheckSpec {
    pub fn new(identity: Identity, metric: MetricSpec, n_points: usize, seed: u64) -> Self {
        CheckSpec {
            identity,
            metric,
            n_points,
            seed,
            tol: identity.default_tol(),
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points == 0 {
            return Err(Error::param("n_points", "must be at least 1"));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::param("tol", format!("{} must be positive", self.tol)));
        }
        self.identity.check_metric(&self.metric)
    }

    pub fn domain(&self) -> Domain {
        match self.metric.hopf() {
            Some(hp) => Domain::HopfFundamental(hp),
            None => Domain::Box {
                n: self.metric.dim(),
                half_width: BOX_HALF_WIDTH,
                exclusion_radius: DEFAULT_EXCLUSION,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Residual at one point, with the named pieces it was assembled from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    pub index: usize,
    pub point: Point,
    pub residual: f64,
    pub components: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub index: usize,
    pub point: Point,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub max: f64,
    pub mean: f64,
    pub argmax: Point,
    pub argmax_index: usize,
    pub n_evaluated: usize,
    pub n_failed: usize,
}

impl Stats {
    pub fn from_points(per_point: &[PointResidual], n_failed: usize) -> Option<Stats> {
        let first = per_point.first()?;
        let mut best = first;
        let mut sum = 0.0;
        for r in per_point {
            sum += r.residual;
            if r.residual > best.residual {
                best = r;
            }
        }
        Some(Stats {
            max: best.residual,
            mean: sum / per_point.len() as f64,
            argmax: best.point.clone(),
            argmax_index: best.index,
            n_evaluated: per_point.len(),
            n_failed,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub check: CheckSpec,
    pub options: Options,
    pub per_point: Vec<PointResidual>,
    pub failures: Vec<PointFailure>,
    pub warnings: Vec<String>,
    pub stats: Stats,
    pub verdict: Verdict,
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

struct Eval {
    residual: f64,
    components: BTreeMap<String, f64>,
}

impl Eval {
    fn new() -> Self {
        Eval {
            residual: 0.0,
            components: BTreeMap::new(),
        }
    }

    /// Adds a component that counts towards the residual.
    fn gate(mut self, name: &str, v: f64) -> Self {
        self.residual = self.residual.max(v);
        self.components.insert(name.to_string(), v);
        self
    }

    /// Adds a component reported for information only.
    fn info(mut self, name: &str, v: f64) -> Self {
        self.components.insert(name.to_string(), v);
        self
    }
}

fn ddbar(jet: &crate::jet::Jet, n: usize) -> Form11 {
    Form11::from_fn(n, |i, j| jet.dz(i).dzb(j).value())
}

fn max_of(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn evaluate(identity: Identity, spec: &MetricSpec, p: &Point, opts: Options) -> Result<Eval> {
    match identity {
        Identity::DeckInvariance => {
            let hp = spec.hopf().expect("validated");
            let scale = build_metric(spec, p)?.h().value();
            let r = deck_invariance_residual(spec, p, &hp)?;
            return Ok(Eval::new().gate("deck", rel(r, crate::linalg::max_abs(&scale))));
        }
        Identity::HessianMatrices => {
            let hp = spec.hopf().expect("validated");
            return hessian_eval(p, &hp);
        }
        Identity::FdOracle => {
            let table = fd_oracle(spec, p, 2)?;
            let (first, second) = worst_errors(&table);
            let values2 = table.iter().fold(0.0f64, |m, f| m.max(f.rel_error_values(2)));
            return Ok(Eval::new()
                .gate("first_scaled", FD_FIRST_WEIGHT * first)
                .gate("second", second)
                .info("first", first)
                .info("second_value_stencil", values2));
        }
        _ => {}
    }
    let m = build_metric(spec, p)?;
    let g = Geometry::with_options(&m, opts)?;
    let n = g.n();
    match identity {
        Identity::LcRicciFlat | Identity::KeyRelation => {
            let ric = g.chern_ricci()?;
            let dd = g.d_del_star();
            let direct = g.lc_ricci();
            let relation = &ric - &dd;
            let scale = max_of(&[ric.max_abs(), dd.max_abs(), direct.max_abs()]);
            if identity == Identity::LcRicciFlat {
                Ok(Eval::new()
                    .gate("curvature_trace", rel(direct.max_abs(), scale))
                    .gate("ricci_relation", rel(relation.max_abs(), scale)))
            } else {
                Ok(Eval::new()
                    .gate("two_path", rel(direct.max_abs_diff(&relation), scale))
                    .gate("hermitian", rel(direct.hermitian_defect(), scale)))
            }
        }
        Identity::ConformalLaw => {
            let MetricSpec::Conformal { base, f } = spec else {
                unreachable!("validated")
            };
            let mb = build_metric(base, p)?;
            let gb = Geometry::with_options(&mb, opts)?;
            let fj = scalar_field_jet(f, base, p, 2)?;
            let lhs = g.lc_ricci();
            let base_lc = gb.lc_ricci();
            let ddf = ddbar(&fj, n);
            let law = &(&lhs - &base_lc) + &ddf;
            let scale = max_of(&[lhs.max_abs(), base_lc.max_abs(), ddf.max_abs()]);
            let (_, b_f) = g.del_star();
            let (_, b) = gb.del_star();
            let shift: Vec<C64> = (0..n)
                .map(|i| b.b[i] + C64::new(0.0, (n - 1) as f64) * fj.dz(i).value())
                .collect();
            let adj_scale = max_of(&[
                b_f.b.iter().map(|c| c.norm()).fold(0.0, f64::max),
                shift.iter().map(|c| c.norm()).fold(0.0, f64::max),
            ]);
            Ok(Eval::new()
                .gate("ricci_law", rel(law.max_abs(), scale))
                .gate("adjoint_law", rel(max_abs_diff_vec(&b_f.b, &shift), adj_scale)))
        }
        Identity::DetFormula | Identity::TwFormula | Identity::LcRicciFormula => {
            let MetricSpec::HopfOmegaLambda { hopf, lambda } = spec else {
                unreachable!("validated")
            };
            omega_lambda_eval(identity, &g, p, hopf, *lambda)
        }
        Identity::Scalar010 => {
            let s = g.scalars()?;
            let scale = max_of(&[s.s_c, s.s_lc, s.dd_pair]);
            Ok(Eval::new()
                .gate("full", rel((s.s_lc - (s.s_c - 0.5 * s.dd_pair)).abs(), scale))
                .gate("half", rel((s.s_lc - (s.s_c - s.d_del_pair)).abs(), scale))
                .gate("imaginary", rel(s.imag_defect, scale)))
        }
        Identity::ScalarKey1 => {
            let s = g.scalars()?;
            let terms = [
                2.0 * s.s_c,
                s.dd_pair,
                -2.0 * s.delstar_sq,
                -0.5 * s.torsion_sq,
            ];
            let rhs: f64 = terms.iter().sum();
            let scale = max_of(&[s.s, terms[0], terms[1], terms[2], terms[3]]);
            Ok(Eval::new()
                .gate("balance", rel((s.s - rhs).abs(), scale))
                .info("s", s.s)
                .info("s_c", s.s_c))
        }
        Identity::KahlerCollapse => {
            let ric = g.chern_ricci()?;
            let lc = g.lc_ricci();
            let s = g.scalars()?;
            let (a, _) = g.del_star();
            let star = a.a.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let scale = max_of(&[ric.max_abs(), lc.max_abs()]);
            let s_scale = max_of(&[s.s, 2.0 * s.s_c]);
            Ok(Eval::new()
                .gate("torsion", s.torsion_sq.abs().sqrt())
                .gate("del_star", star)
                .gate("ricci", rel(lc.max_abs_diff(&ric), scale))
                .gate("scalar", rel((s.s - 2.0 * s.s_c).abs(), s_scale)))
        }
        Identity::DeckInvariance | Identity::HessianMatrices | Identity::FdOracle => {
            unreachable!("handled above")
        }
    }
}

fn omega_lambda_eval(
    identity: Identity,
    g: &Geometry<'_>,
    p: &Point,
    hp: &HopfParams,
    lambda: f64,
) -> Result<Eval> {
    let f = phi_field(p, hp, 2)?;
    let (phi, delta) = (f.phi.value().re, f.delta.value().re);
    match identity {
        Identity::DetFormula => {
            let expect = (1.0 + lambda) / (delta.powi(3) * phi * phi);
            let det = g.metric().value().determinant();
            Ok(Eval::new()
                .gate("relative", (det - expect).norm() / expect.abs())
                .info("det", det.re))
        }
        Identity::TwFormula => {
            let log_phi = f.phi.ln()?;
            let target = ddbar(&log_phi, 2).scale(1.0 / (1.0 + lambda));
            let (a1, a2) = g.d_del_star_parts();
            let scale = max_of(&[target.max_abs(), a1.max_abs(), a2.max_abs()]);
            let (ds, dbs) = g.del_star();
            let expect: Vec<C64> = (0..2)
                .map(|j| C64::new(0.0, 1.0 / (1.0 + lambda)) * log_phi.dzb(j).value())
                .collect();
            let ds_scale = max_of(&[
                ds.a.iter().map(|c| c.norm()).fold(0.0, f64::max),
                expect.iter().map(|c| c.norm()).fold(0.0, f64::max),
            ]);
            Ok(Eval::new()
                .gate("del_del_star", rel(a1.max_abs_diff(&target), scale))
                .gate("delbar_delbar_star", rel(a2.max_abs_diff(&target), scale))
                .gate("del_star", rel(max_abs_diff_vec(&ds.a, &expect), ds_scale))
                .gate("mirror", rel(max_abs_diff_vec(&dbs.conj_mirror().a, &ds.a), ds_scale)))
        }
        Identity::LcRicciFormula => {
            let log_phi = f.phi.ln()?;
            let log_delta = f.delta.ln()?;
            let t1 = ddbar(&log_phi, 2).scale(2.0 - 1.0 / (1.0 + lambda));
            let t2 = ddbar(&log_delta, 2).scale(3.0);
            let lc = g.lc_ricci();
            let scale = max_of(&[lc.max_abs(), t1.max_abs(), t2.max_abs()]);
            Ok(Eval::new().gate("formula", rel(lc.max_abs_diff(&(&t1 + &t2)), scale)))
        }
        _ => unreachable!("omega-lambda identities only"),
    }
}

/// Closed form of `√−1∂∂̄logΦ`, in `A_{ij̄}` placement: the displayed
/// matrices list `conj(A_{ij̄}) = A_{jī}`, so they are transposed here.
pub fn hessian_closed_forms(p: &Point, hp: &HopfParams) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    let f = phi_field(p, hp, 0)?;
    let (phi, delta) = (f.phi.value().re, f.delta.value().re);
    let (z, w) = (p.coords[0], p.coords[1]);
    let al = hp.alpha();
    let k = 1.0 / (delta.powi(3) * phi * phi);
    let ddlog = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new((al - 2.0).powi(2) * w.norm_sqr(), 0.0) * k,
            z.conj() * w * (al * (al - 2.0) * k),
            w.conj() * z * (al * (al - 2.0) * k),
            C64::new(al * al * z.norm_sqr(), 0.0) * k,
        ],
    );
    let q = phi.powf(2.0 * al - 2.0);
    let k2 = 1.0 / (delta * delta * q);
    let dphi = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(z.norm_sqr(), 0.0) * k2,
            z.conj() * w * (q * k2),
            w.conj() * z * (q * k2),
            C64::new(w.norm_sqr() * q * q, 0.0) * k2,
        ],
    );
    Ok((ddlog, dphi))
}

fn hessian_eval(p: &Point, hp: &HopfParams) -> Result<Eval> {
    let (ddlog, dphi) = hessian_forms(p, hp)?;
    let (m_log, m_dphi) = hessian_closed_forms(p, hp)?;
    let e_log = rel(crate::linalg::max_abs(&(&ddlog.a - &m_log)), crate::linalg::max_abs(&m_log));
    let e_dphi = rel(crate::linalg::max_abs(&(&dphi.a - &m_dphi)), crate::linalg::max_abs(&m_dphi));
    let psd = ddlog.a.clone().symmetric_eigenvalues().iter().fold(f64::INFINITY, |m, &l| m.min(l));
    Ok(Eval::new()
        .gate("ddbar_log_phi", e_log)
        .gate("det_ddbar_log_phi", ddlog.a.determinant().norm())
        .gate("det_dphi_dbar_phi", dphi.a.determinant().norm())
        .gate("negative_eigenvalue", (-psd).max(0.0))
        .info("dphi_dbar_phi", e_dphi))
}

pub fn run_check(c: &CheckSpec) -> Result<VerificationReport> {
    run_check_with(c, Options::default())
}

/// Runs `c` on its sample; points are evaluated in parallel, results kept in
/// sample order.
pub fn run_check_with(c: &CheckSpec, opts: Options) -> Result<VerificationReport> {
    c.validate()?;
    let start = Instant::now();
    let points = sample_points(&c.domain(), c.n_points, c.seed);
    let results: Vec<Result<Eval>> = points
        .par_iter()
        .map(|p| evaluate(c.identity, &c.metric, p, opts))
        .collect();
    let mut per_point = Vec::new();
    let mut failures = Vec::new();
    for (index, (p, r)) in points.iter().zip(results).enumerate() {
        match r {
            Ok(e) if e.residual.is_finite() => per_point.push(PointResidual {
                index,
                point: p.clone(),
                residual: e.residual,
                components: e.components,
            }),
            Ok(e) => failures.push(PointFailure {
                index,
                point: p.clone(),
                error: format!("non-finite residual {}", e.residual),
            }),
            Err(err) => failures.push(PointFailure {
                index,
                point: p.clone(),
                error: err.to_string(),
            }),
        }
    }
    if failures.len() as f64 >= MAX_FAILURE_FRACTION * points.len() as f64 && !failures.is_empty() {
        return Err(Error::TooManyFailures {
            failed: failures.len(),
            total: points.len(),
        });
    }
    let warnings = failures
        .iter()
        .map(|f| format!("point {} skipped: {}", f.index, f.error))
        .collect();
    let stats = Stats::from_points(&per_point, failures.len()).expect("at least one point");
    let verdict = if stats.max <= c.tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        engine_version: crate::ENGINE_VERSION.to_string(),
        check: c.clone(),
        options: opts,
        per_point,
        failures,
        warnings,
        stats,
        verdict,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn identity_tags_roundtrip() {
        for id in Identity::ALL {
            assert_eq!(id.tag().parse::<Identity>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.tag()));
        }
        assert!("ricci".parse::<Identity>().is_err());
    }

    #[test]
    fn flat_lc_ricci_flat_is_exactly_zero() {
        let c = CheckSpec::new(Identity::LcRicciFlat, MetricSpec::Flat { n: 2 }, 5, 1);
        let r = run_check(&c).unwrap();
        assert!(r.passed());
        assert_eq!(r.stats.max, 0.0);
    }

    #[test]
    fn omega_zero_is_not_lc_ricci_flat() {
        let hp = HopfParams::real(E * E, E).unwrap();
        let spec = MetricSpec::HopfOmegaLambda { hopf: hp, lambda: 0.0 };
        let r = run_check(&CheckSpec::new(Identity::LcRicciFlat, spec.clone(), 5, 2)).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.stats.max > 1e-3);
        let f = run_check(&CheckSpec::new(Identity::LcRicciFormula, spec, 5, 2)).unwrap();
        assert!(f.passed(), "{}", f.stats.max);
    }

    #[test]
    fn config_errors() {
        let flat = MetricSpec::Flat { n: 2 };
        assert!(run_check(&CheckSpec::new(Identity::DetFormula, flat.clone(), 3, 1)).is_err());
        assert!(run_check(&CheckSpec::new(Identity::KeyRelation, flat.clone(), 0, 1)).is_err());
        assert!(run_check(&CheckSpec::new(Identity::KeyRelation, flat, 3, 1).with_tol(0.0)).is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let spec: MetricSpec = "user-polynomial{seed=4,eps=0.05}".parse().unwrap();
        let c = CheckSpec::new(Identity::KeyRelation, spec, 8, 9);
        let mut a = run_check(&c).unwrap();
        let mut b = run_check(&c).unwrap();
        a.wall_time = 0.0;
        b.wall_time = 0.0;
        assert_eq!(a, b);
    }
}
