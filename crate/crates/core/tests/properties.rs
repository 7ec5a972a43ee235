use proptest::prelude::*;

use lcflat::verify::{run_check, CheckSpec, Identity};
use lcflat::zoo::{build_metric, deck_invariance_residual, phi_field, PolyMetric};
use lcflat::{Geometry, HopfParams, Jet, Layout, MetricSpec, Point, C64};

const DIM: usize = 4;
const ORDER: usize = 3;

fn c64() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn jet() -> impl Strategy<Value = Jet> {
    let n = Layout::get(DIM, ORDER).len();
    prop::collection::vec(c64(), n).prop_map(|c| Jet::from_coeffs(Layout::get(DIM, ORDER), c))
}

/// Jets with constant term bounded away from zero.
fn unit_jet() -> impl Strategy<Value = Jet> {
    (jet(), 1.5..3.0f64).prop_map(|(j, c)| &j.scale(C64::new(0.2, 0.0)) + c)
}

fn point() -> impl Strategy<Value = Point> {
    (c64(), c64())
        .prop_filter("away from the origin", |(z, w)| z.norm_sqr() + w.norm_sqr() > 0.05)
        .prop_map(|(z, w)| Point::c2(z, w))
}

fn multipliers() -> impl Strategy<Value = (f64, f64)> {
    (1.2..8.0f64, 1.2..8.0f64).prop_map(|(x, y)| if x >= y { (x, y) } else { (y, x) })
}

const TOL: f64 = 1e-12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative_and_distributive(a in jet(), b in jet(), c in jet()) {
        prop_assert!((&(&a * &b) * &c).approx_eq(&(&a * &(&b * &c)), TOL));
        prop_assert!((&a * &(&b + &c)).approx_eq(&(&(&a * &b) + &(&a * &c)), TOL));
        prop_assert!((&a * &b).approx_eq(&(&b * &a), TOL));
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map(a in jet(), b in jet()) {
        prop_assert!(a.conj().conj().approx_eq(&a, 0.0));
        prop_assert!((&a * &b).conj().approx_eq(&(&a.conj() * &b.conj()), TOL));
        prop_assert!((&a * &a.conj()).is_real(TOL));
        prop_assert!(a.real_part().is_real(TOL));
    }

    #[test]
    fn derivatives_obey_leibniz_and_commute(a in jet(), b in jet(), i in 0..2usize, j in 0..2usize) {
        let lhs = (&a * &b).dz(i);
        let rhs = &(&a.dz(i) * &b.truncate(ORDER - 1)) + &(&a.truncate(ORDER - 1) * &b.dz(i));
        prop_assert!(lhs.approx_eq(&rhs, TOL));
        prop_assert!(a.dz(i).dzb(j).approx_eq(&a.dzb(j).dz(i), TOL));
        // conj(∂_i f) = ∂_ī conj(f)
        prop_assert!(a.dz(i).conj().approx_eq(&a.conj().dzb(i), TOL));
    }

    #[test]
    fn elementary_functions_invert(a in unit_jet()) {
        prop_assert!(a.ln().unwrap().exp().approx_eq(&a, 1e-10));
        prop_assert!((&a * &a.recip().unwrap()).approx_eq(&(&Jet::zero(a.layout().clone()) + 1.0), 1e-10));
        prop_assert!(a.powf(0.5).unwrap().powi(2).approx_eq(&a, 1e-10));
    }

    #[test]
    fn potential_satisfies_its_constraint((a, b) in multipliers(), p in point()) {
        let hp = HopfParams::real(a, b).unwrap();
        let f = phi_field(&p, &hp, 2).unwrap();
        let al = hp.alpha();
        let x = p.coordinate_jets(2);
        let zz = &x[0] * &x[2];
        let ww = &x[1] * &x[3];
        let lhs = &(&zz * &f.phi.powf(-al).unwrap()) + &(&ww * &f.phi.powf(al - 2.0).unwrap());
        prop_assert!((&lhs - 1.0).max_abs() < 1e-10, "{}", (&lhs - 1.0).max_abs());
        prop_assert!(f.phi.is_real(1e-12) && f.delta.is_real(1e-12));
        prop_assert!(f.delta.value().re > 0.0);
    }

    #[test]
    fn lc_flat_metric_descends((a, b) in multipliers(), p in point()) {
        let spec = MetricSpec::HopfLcFlat { hopf: HopfParams::real(a, b).unwrap() };
        let hp = spec.hopf().unwrap();
        let scale = build_metric(&spec, &p).unwrap().value().iter().map(|c| c.norm()).fold(0.0, f64::max);
        let r = deck_invariance_residual(&spec, &p, &hp).unwrap();
        prop_assert!(r / (1.0 + scale) < 1e-10, "{r}");
    }

    #[test]
    fn lc_ricci_is_invariant_under_constant_rescaling(seed in 0u64..1000, c in 0.1..10.0f64, p in point()) {
        let spec = MetricSpec::UserPolynomial(PolyMetric::random(seed, 0.05));
        let m = build_metric(&spec, &p).unwrap();
        let layout = m.entry(0, 0).layout().clone();
        let cm = m.scaled_by(&(&Jet::zero(layout) + c)).unwrap();
        let (g, gc) = (Geometry::new(&m).unwrap(), Geometry::new(&cm).unwrap());
        let (r, rc) = (g.lc_ricci(), gc.lc_ricci());
        prop_assert!(r.max_abs_diff(&rc) <= 1e-10 * (1.0 + r.max_abs()));
        let (s, sc) = (g.scalars().unwrap(), gc.scalars().unwrap());
        prop_assert!((s.s - c * sc.s).abs() <= 1e-10 * (1.0 + s.s.abs()));
        prop_assert!((s.s_c - c * sc.s_c).abs() <= 1e-10 * (1.0 + s.s_c.abs()));
    }

    #[test]
    fn relation_holds_for_any_seed(seed in 0u64..100_000) {
        let c = CheckSpec::new(Identity::KeyRelation, MetricSpec::UserPolynomial(PolyMetric::random(seed, 0.05)), 3, seed);
        let r = run_check(&c).unwrap();
        prop_assert!(r.passed(), "{}", r.stats.max);
    }
}
