//! Metric jets for every [`MetricSpec`] kind.

use crate::error::{Error, Result};
use crate::jet::{Jet, C64};
use crate::linalg::{self, JetMatrix};
use crate::metric::{MetricJet, Point};
use crate::zoo::hopf::{phi_field, HopfParams};
use crate::zoo::spec::{MetricSpec, PolyMetric, ScalarField};

/// Jet order carried by metrics handed to the geometry layer.
pub const METRIC_ORDER: usize = 2;

/// Reality tolerance for conformal factors.
const REAL_TOL: f64 = 1e-12;

pub fn build_metric(spec: &MetricSpec, p: &Point) -> Result<MetricJet> {
    build_metric_order(spec, p, METRIC_ORDER)
}

/// Metric jet of the given order at `p`.
pub fn build_metric_order(spec: &MetricSpec, p: &Point, order: usize) -> Result<MetricJet> {
    let h = metric_matrix(spec, p, order)?;
    MetricJet::new(h, p.clone())
}

fn check_dim(spec: &MetricSpec, p: &Point) -> Result<()> {
    if p.n() != spec.dim() {
        return Err(Error::OutsideChart(format!(
            "`{}` lives on ℂ^{}, got a point with {} coordinates",
            spec.kind(),
            spec.dim(),
            p.n()
        )));
    }
    Ok(())
}

fn metric_matrix(spec: &MetricSpec, p: &Point, order: usize) -> Result<JetMatrix> {
    check_dim(spec, p)?;
    let n = p.n();
    let x = p.coordinate_jets(order);
    let layout = x[0].layout().clone();
    match spec {
        MetricSpec::Flat { .. } => Ok(JetMatrix::identity(&layout, n)),
        MetricSpec::KahlerTest { c } => {
            let phi = kahler_potential(&p.coordinate_jets(order + 2), *c);
            Ok(JetMatrix::from_fn(2, |i, j| phi.dz(i).dzb(j)))
        }
        MetricSpec::HopfStandard { .. } => {
            if p.norm_sqr() == 0.0 {
                return Err(Error::OutsideChart("the origin is not in ℂ²∖{0}".into()));
            }
            let r2 = &(&x[0] * &x[2]) + &(&x[1] * &x[3]);
            let inv = r2.recip()?;
            let zero = Jet::zero(layout);
            Ok(JetMatrix::from_fn(2, |i, j| {
                if i == j {
                    inv.clone()
                } else {
                    zero.clone()
                }
            }))
        }
        MetricSpec::HopfOmegaLambda { hopf, lambda } => omega_lambda(p, hopf, *lambda, order),
        MetricSpec::HopfLcFlat { hopf } => {
            let omega = omega_lambda(p, hopf, -0.5, order)?;
            let delta3 = phi_field(p, hopf, order)?.delta.powi(3);
            Ok(omega.map(|e| e * &delta3))
        }
        MetricSpec::Conformal { base, f } => {
            let h = metric_matrix(base, p, order)?;
            let f = scalar_field_jet(f, base, p, order)?;
            Ok(conformal_matrix(&h, &f)?)
        }
        MetricSpec::UserPolynomial(poly) => poly_matrix(poly, &x),
    }
}

/// `ω_λ = √−1∂∂̄Φ/Φ + λ√−1∂∂̄logΦ` from the order-`order + 2` jet of `Φ`.
fn omega_lambda(p: &Point, hp: &HopfParams, lambda: f64, order: usize) -> Result<JetMatrix> {
    if !(lambda > -1.0) {
        return Err(Error::param("lambda", format!("{lambda} must exceed -1")));
    }
    let phi = phi_field(p, hp, order + 2)?.phi;
    let log_phi = phi.ln()?;
    let inv = phi.truncate(order).recip()?;
    Ok(JetMatrix::from_fn(2, |i, j| {
        &(&phi.dz(i).dzb(j) * &inv) + &(&log_phi.dz(i).dzb(j) * lambda)
    }))
}

/// `|z|²+|w|² + c(|z|⁴ + |z|²|w|² + 2|w|⁴ + z²w̄ + z̄²w)`.
pub fn kahler_potential(x: &[Jet], c: f64) -> Jet {
    let zz = &x[0] * &x[2];
    let ww = &x[1] * &x[3];
    let quartic = &(&(&zz * &zz) + &(&zz * &ww)) + &(&(&ww * &ww) * 2.0);
    let cubic = &(&(&x[0] * &x[0]) * &x[3]) + &(&(&x[2] * &x[2]) * &x[1]);
    &(&zz + &ww) + &(&(&quartic + &cubic) * c)
}

fn monomial(x: &[Jet], exps: &[u8; 4]) -> Jet {
    let mut m = Jet::constant(x[0].layout().clone(), C64::new(1.0, 0.0));
    for (v, &e) in exps.iter().enumerate() {
        if e > 0 {
            m = &m * &x[v].powi(e as u32);
        }
    }
    m
}

/// `I + P + P*` where `(P*)ᵢⱼ = conj(Pⱼᵢ)`.
fn poly_matrix(poly: &PolyMetric, x: &[Jet]) -> Result<JetMatrix> {
    if x.len() != 4 {
        return Err(Error::OutsideChart("polynomial metrics live on ℂ²".into()));
    }
    let layout = x[0].layout().clone();
    let mut p: Vec<Jet> = (0..4).map(|_| Jet::zero(layout.clone())).collect();
    for t in &poly.terms {
        p[t.row * 2 + t.col] += &(&monomial(x, &t.exps) * t.coeff);
    }
    let one = Jet::constant(layout.clone(), C64::new(1.0, 0.0));
    Ok(JetMatrix::from_fn(2, |i, j| {
        let mut e = &p[i * 2 + j] + &p[j * 2 + i].conj();
        if i == j {
            e += &one;
        }
        e
    }))
}

/// Jet of a scalar field; `base` supplies the Hopf parameters for `log-delta`.
pub fn scalar_field_jet(
    field: &ScalarField,
    base: &MetricSpec,
    p: &Point,
    order: usize,
) -> Result<Jet> {
    let x = p.coordinate_jets(order);
    let layout = x[0].layout().clone();
    match field {
        ScalarField::Zero => Ok(Jet::zero(layout)),
        ScalarField::RandomPoly { seed, eps } => {
            if x.len() != 4 {
                return Err(Error::OutsideChart("random-poly fields live on ℂ²".into()));
            }
            let mut q = Jet::zero(layout);
            for (exps, c) in ScalarField::random_poly_terms(*seed, *eps) {
                q += &(&monomial(&x, &exps) * c);
            }
            Ok(&q + &q.conj())
        }
        ScalarField::LogDelta { scale } => {
            let hp = base
                .hopf()
                .ok_or_else(|| Error::param("f", "log-delta needs a Hopf base metric"))?;
            Ok(phi_field(p, &hp, order)?.delta.ln()?.real_part() * *scale)
        }
    }
}

fn conformal_matrix(h: &JetMatrix, f: &Jet) -> Result<JetMatrix> {
    let defect = f.reality_defect();
    if defect > REAL_TOL * (1.0 + f.max_abs()) {
        return Err(Error::NotReal(defect));
    }
    let ef = f.exp();
    Ok(h.map(|e| e * &ef))
}

/// `e^f · h` with jets propagated; `f` must be a real jet.
pub fn conformal_scale(base: &MetricJet, f: &Jet) -> Result<MetricJet> {
    MetricJet::new(conformal_matrix(base.h(), f)?, base.point().clone())
}

/// `max |aᵢ conj(aⱼ) hᵢⱼ̄(az, bw) − hᵢⱼ̄(z, w)|`, the defect of the pullback
/// of `h` by the deck map `(z, w) ↦ (az, bw)`.
pub fn deck_invariance_residual(spec: &MetricSpec, p: &Point, hp: &HopfParams) -> Result<f64> {
    if p.n() != 2 {
        return Err(Error::OutsideChart("deck maps act on ℂ²".into()));
    }
    let h0 = build_metric_order(spec, p, 0)?.value();
    let h1 = build_metric_order(spec, &hp.deck(p), 0)?.value();
    let m = [hp.a(), hp.b()];
    let pulled = nalgebra::DMatrix::from_fn(2, 2, |i, j| m[i] * m[j].conj() * h1[(i, j)]);
    Ok(linalg::max_abs(&(pulled - h0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn pt(z: (f64, f64), w: (f64, f64)) -> Point {
        Point::c2(C64::new(z.0, z.1), C64::new(w.0, w.1))
    }

    #[test]
    fn flat_is_identity_with_zero_jets() {
        let m = build_metric(&MetricSpec::Flat { n: 3 }, &Point::new(vec![C64::new(0.3, 0.1); 3]))
            .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = m.entry(i, j);
                assert_eq!(e.value(), C64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
                assert!(e.coeffs()[1..].iter().all(|c| c.norm() == 0.0));
            }
        }
    }

    #[test]
    fn det_formula_on_one_point() {
        let hp = HopfParams::real(E * E, E).unwrap();
        let p = pt((0.6, 0.2), (-0.5, 0.7));
        for lambda in [-0.5, 0.0, 1.0] {
            let spec = MetricSpec::HopfOmegaLambda { hopf: hp, lambda };
            let m = build_metric(&spec, &p).unwrap();
            let f = phi_field(&p, &hp, 0).unwrap();
            let (phi, delta) = (f.phi.value().re, f.delta.value().re);
            let expect = (1.0 + lambda) / (delta.powi(3) * phi * phi);
            let det = m.value().determinant();
            assert!((det.re - expect).abs() < 1e-10 * expect, "{det} vs {expect}");
        }
    }

    #[test]
    fn lc_flat_at_equal_multipliers_matches_direct_formula() {
        // a = b: Φ = r², Δ = 1, ω = ∂∂̄r²/r² − ½∂∂̄log r² = δ/(2r²) + z̄ᵢzⱼ/(2r⁴)
        let spec = MetricSpec::hopf_lc_flat(E, E).unwrap();
        let p = pt((0.8, -0.3), (0.2, 0.9));
        let h = build_metric(&spec, &p).unwrap().value();
        let c = &p.coords;
        let r2 = p.norm_sqr();
        for i in 0..2 {
            for j in 0..2 {
                let d = if i == j { 1.0 } else { 0.0 };
                let expect = C64::new(d / (2.0 * r2), 0.0) + c[i].conj() * c[j] / (2.0 * r2 * r2);
                assert!((h[(i, j)] - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn lambda_at_or_below_minus_one_rejected() {
        let hp = HopfParams::real(E * E, E).unwrap();
        let spec = MetricSpec::HopfOmegaLambda { hopf: hp, lambda: -1.0 };
        let err = build_metric(&spec, &pt((1.0, 0.0), (0.5, 0.0))).unwrap_err();
        assert!(matches!(err, Error::InvalidParam { ref field, .. } if field == "lambda"));
    }

    #[test]
    fn deck_invariance_and_negative_control() {
        let hp = HopfParams::new(C64::from_polar(E * E, 0.4), C64::from_polar(E, -1.3)).unwrap();
        let p = pt((0.5, 0.3), (-0.4, 0.6));
        for spec in [
            MetricSpec::HopfLcFlat { hopf: hp },
            MetricSpec::HopfOmegaLambda { hopf: hp, lambda: 0.7 },
        ] {
            assert!(deck_invariance_residual(&spec, &p, &hp).unwrap() < 1e-10);
        }
        let flat = MetricSpec::Flat { n: 2 };
        let r = deck_invariance_residual(&flat, &pt((1.0, 0.0), (0.0, 0.0)), &hp).unwrap();
        assert!((r - (E.powi(4) - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn conformal_zero_is_identity_and_rejects_complex_factor() {
        let base = MetricSpec::KahlerTest { c: 0.1 };
        let p = pt((0.3, 0.1), (0.2, -0.2));
        let m = build_metric(&base, &p).unwrap();
        let zero = Jet::zero(m.entry(0, 0).layout().clone());
        let same = conformal_scale(&m, &zero).unwrap();
        for (a, b) in same.h().entries().iter().zip(m.h().entries()) {
            assert_eq!(a.coeffs(), b.coeffs());
        }
        let x = p.coordinate_jets(2);
        assert!(matches!(conformal_scale(&m, &x[0]), Err(Error::NotReal(_))));
    }

    #[test]
    fn indefinite_polynomial_metric_is_rejected() {
        let spec: MetricSpec = "user-polynomial{p11:1=-0.8}".parse().unwrap();
        assert_eq!(
            build_metric(&spec, &pt((0.1, 0.0), (0.1, 0.0))).unwrap_err(),
            Error::SingularMetric
        );
    }
}
