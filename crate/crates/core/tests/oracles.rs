//! Closed-form values the engine must reproduce.

use std::f64::consts::E;

use lcflat::verify::{sample_points, Domain};
use lcflat::zoo::{build_metric, hessian_forms, PolyMetric};
use lcflat::{Geometry, HopfParams, MetricSpec, Point, C64};

fn hopf_points(hp: HopfParams, n: usize) -> Vec<Point> {
    sample_points(&Domain::HopfFundamental(hp), n, 5)
}

#[test]
fn standard_hopf_metric_scalars() {
    // δ/|x|² is the product metric on S¹ × S³ (in the g = 2 Re h
    // normalisation); its Chern form is 2√−1∂∂̄ log|x|².
    let spec = MetricSpec::HopfStandard { a: E };
    for p in hopf_points(spec.hopf().unwrap(), 20) {
        let m = build_metric(&spec, &p).unwrap();
        let g = Geometry::new(&m).unwrap();
        let s = g.scalars().unwrap();
        assert!((s.s - 3.0).abs() < 1e-10, "s = {}", s.s);
        assert!((s.s_c - 2.0).abs() < 1e-10, "s_C = {}", s.s_c);
        let r2 = p.norm_sqr();
        let ric = g.chern_ricci().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { r2 } else { 0.0 };
                let expect = (C64::new(delta, 0.0) - p.coords[i].conj() * p.coords[j]) * (2.0 / (r2 * r2));
                assert!((ric.a[(i, j)] - expect).norm() < 1e-12, "({i},{j})");
            }
        }
    }
}

#[test]
fn torsion_norm_is_twice_adjoint_norm_in_dimension_two() {
    let mut specs: Vec<MetricSpec> = (1..=10).map(|k| MetricSpec::UserPolynomial(PolyMetric::random(k, 0.05))).collect();
    specs.push(MetricSpec::hopf_lc_flat(E * E, E).unwrap());
    specs.push(MetricSpec::HopfStandard { a: 3.0 });
    for spec in specs {
        let pts = match spec.hopf() {
            Some(hp) => hopf_points(hp, 10),
            None => sample_points(&Domain::unit_box(2, 0.5), 10, 5),
        };
        for p in pts {
            let m = build_metric(&spec, &p).unwrap();
            let s = Geometry::new(&m).unwrap().scalars().unwrap();
            assert!(
                (s.torsion_sq - 2.0 * s.delstar_sq).abs() <= 1e-10 * (1.0 + s.torsion_sq.abs()),
                "{spec}: {} vs {}",
                s.torsion_sq,
                s.delstar_sq
            );
        }
    }
}

#[test]
fn omega_lambda_splits_into_potential_terms() {
    // ω_λ = (1+λ)√−1∂∂̄logΦ + √−1∂Φ∧∂̄Φ/Φ²
    for (a, b) in [(E * E, E), (E.powf(1.5), E.powf(1.1))] {
        for lambda in [-0.5, 0.0, 2.0] {
            let spec = MetricSpec::hopf_omega_lambda(a, b, lambda).unwrap();
            let hp = spec.hopf().unwrap();
            for p in hopf_points(hp, 10) {
                let phi = lcflat::zoo::phi_value(&p, &hp).unwrap();
                let (ddlog, dphi) = hessian_forms(&p, &hp).unwrap();
                let expect = ddlog.a * C64::new(1.0 + lambda, 0.0) + dphi.a / C64::new(phi * phi, 0.0);
                let h = build_metric(&spec, &p).unwrap().value();
                let err = (h - &expect).iter().map(|c| c.norm()).fold(0.0, f64::max);
                let scale = expect.iter().map(|c| c.norm()).fold(0.0, f64::max);
                assert!(err <= 1e-12 * (1.0 + scale), "{err}");
            }
        }
    }
}

#[test]
fn kahler_potential_metric_collapses() {
    let spec = MetricSpec::KahlerTest { c: 0.1 };
    for p in sample_points(&Domain::unit_box(2, 0.5), 20, 5) {
        let m = build_metric(&spec, &p).unwrap();
        let g = Geometry::new(&m).unwrap();
        let s = g.scalars().unwrap();
        assert!(s.torsion_sq.abs() < 1e-24);
        assert!((s.s - 2.0 * s.s_c).abs() <= 1e-10 * (1.0 + s.s.abs()));
        assert!(g.lc_ricci().max_abs_diff(&g.chern_ricci().unwrap()) < 1e-12);
    }
}

#[test]
fn equal_multipliers_give_the_round_potential() {
    let hp = HopfParams::real(E, E).unwrap();
    assert_eq!(hp.alpha(), 1.0);
    for p in hopf_points(hp, 50) {
        let phi = lcflat::zoo::phi_value(&p, &hp).unwrap();
        assert!((phi - p.norm_sqr()).abs() <= 1e-12 * phi);
    }
}
