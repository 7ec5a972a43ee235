//! Implicitly defined scalar fields `F(x, θ(x)) = 0`, solved to jet order.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::jet::{Jet, Layout};

const MAX_BRACKET_STEPS: usize = 200;
const MAX_ITER: usize = 200;

/// Real roots of a strictly monotone scalar function by Newton's method,
/// safeguarded by a bracket: steps leaving the bracket fall back to bisection.
///
/// `f` returns `(value, derivative)`. The bracket is grown geometrically
/// from `seed` in the downhill direction.
pub fn newton_bracketed<F>(f: F, seed: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (f0, d0) = f(seed)?;
    if !f0.is_finite() {
        return Err(Error::NoBracket(format!("non-finite residual at seed {seed}")));
    }
    if f0.abs() <= tol {
        return polish(&f, seed);
    }
    // direction that decreases |F|: for increasing F with F > 0, move left
    let dir = if d0 == 0.0 { 1.0 } else { -(f0 * d0).signum() };
    let (mut lo, mut hi) = (seed, seed);
    let mut prev = seed;
    let mut step = 1.0;
    let mut found = false;
    for _ in 0..MAX_BRACKET_STEPS {
        let x = seed + dir * step;
        let (fx, _) = f(x)?;
        if !fx.is_finite() {
            break;
        }
        if fx == 0.0 || fx.signum() != f0.signum() {
            lo = prev.min(x);
            hi = prev.max(x);
            found = true;
            break;
        }
        prev = x;
        step *= 2.0;
    }
    if !found {
        return Err(Error::NoBracket(format!(
            "no sign change of F within {MAX_BRACKET_STEPS} doublings of seed {seed}"
        )));
    }
    let (flo, _) = f(lo)?;
    let sign_lo = flo.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITER {
        let (fx, dx) = f(x)?;
        if fx.abs() <= tol {
            return polish(&f, x);
        }
        if fx.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let newton = if dx != 0.0 { x - fx / dx } else { f64::NAN };
        let next = if newton.is_finite() && newton > lo.min(hi) && newton < lo.max(hi) {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoBracket(format!(
        "no convergence after {MAX_ITER} iterations (bracket [{lo}, {hi}])"
    )))
}

/// A few unguarded Newton steps once inside tolerance, kept only while the
/// residual keeps shrinking.
fn polish<F>(f: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (mut fx, mut dx) = f(x)?;
    let mut x = x;
    for _ in 0..3 {
        if dx == 0.0 || fx == 0.0 {
            break;
        }
        let cand = x - fx / dx;
        let (fc, dc) = f(cand)?;
        if fc.abs() >= fx.abs() {
            break;
        }
        x = cand;
        fx = fc;
        dx = dc;
    }
    Ok(x)
}

/// Order-`k` jet of the real function `θ(x)` defined by `F(x, θ) = 0`.
///
/// `coords` are the jets of the independent variables at the point (all in
/// one layout). `f` must accept coordinate jets of any layout, so the
/// constant term can be found with a cheap scalar Newton solve before the
/// higher coefficients are obtained by implicit differentiation: each pass
/// of `θ ← θ − F(x, θ) / F_θ(θ₀)` fixes one more degree, so `order + 1`
/// passes reproduce the exact truncated jet.
pub fn implicit_solve<F>(f: F, coords: &[Jet], seed: f64, tol: f64) -> Result<Jet>
where
    F: Fn(&[Jet], &Jet) -> Result<Jet>,
{
    if !(tol > 0.0) {
        return Err(Error::param("tol", "must be positive"));
    }
    assert!(!coords.is_empty(), "implicit_solve needs coordinates");
    let layout = coords[0].layout().clone();

    // scalar problem in a one-variable, first-order layout: θ = θ₀ + t
    let scalar = Layout::get(1, 1);
    let consts: Vec<Jet> = coords
        .iter()
        .map(|c| Jet::constant(scalar.clone(), c.value()))
        .collect();
    let eval = |theta: f64| -> Result<(f64, f64)> {
        let t = Jet::variable(scalar.clone(), 0, C64::new(theta, 0.0))?;
        let r = f(&consts, &t)?;
        Ok((r.value().re, r.coeff(&[1]).re))
    };
    let theta0 = newton_bracketed(eval, seed, tol)?;
    let (_, slope) = eval(theta0)?;
    if slope == 0.0 || !slope.is_finite() {
        return Err(Error::DegenerateDerivative);
    }

    let mut theta = Jet::constant(layout.clone(), C64::new(theta0, 0.0));
    for _ in 0..=layout.order() {
        let r = f(coords, &theta)?;
        theta = &theta - &r.scale(C64::new(1.0 / slope, 0.0));
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{jet_conj_var, jet_var};
    use std::f64::consts::PI;

    fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo).signum() == g(mid).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn hopf_equation(k1: f64, k2: f64) -> impl Fn(&[Jet], &Jet) -> Result<Jet> {
        move |x: &[Jet], theta: &Jet| {
            let zz = &x[0] * &x[2];
            let ww = &x[1] * &x[3];
            let e1 = (theta * (-k1 / PI)).exp();
            let e2 = (theta * (-k2 / PI)).exp();
            Ok(&zz * &e1 + &ww * &e2 - 1.0)
        }
    }

    fn coords(z: C64, w: C64, order: usize) -> Vec<Jet> {
        vec![
            jet_var(0, z, 2, order).unwrap(),
            jet_var(1, w, 2, order).unwrap(),
            jet_conj_var(0, z.conj(), 2, order).unwrap(),
            jet_conj_var(1, w.conj(), 2, order).unwrap(),
        ]
    }

    #[test]
    fn scalar_newton_matches_bisection_oracle() {
        let (k1, k2) = (2.0 * PI, PI);
        let g = |t: f64| (-k1 * t / PI).exp() + (-k2 * t / PI).exp() - 1.0;
        let oracle = bisect(g, -10.0, 10.0);
        let x = coords(C64::new(1.0, 0.0), C64::new(1.0, 0.0), 2);
        let theta = implicit_solve(hopf_equation(k1, k2), &x, 0.0, 1e-15).unwrap();
        assert!((theta.value().re - oracle).abs() < 1e-12);
        assert!(theta.is_real(1e-13));
    }

    #[test]
    fn equal_multipliers_give_radius_squared() {
        let k = 1.3;
        let (z, w) = (C64::new(0.4, -0.7), C64::new(1.2, 0.3));
        let x = coords(z, w, 4);
        let theta = implicit_solve(hopf_equation(k, k), &x, 0.0, 1e-15).unwrap();
        let phi = (&theta * (k / PI)).exp();
        let r2 = &x[0] * &x[2] + &x[1] * &x[3];
        assert!(phi.approx_eq(&r2, 1e-12), "{:?}", phi.max_abs_diff(&r2));
    }

    #[test]
    fn jet_residual_vanishes() {
        let x = coords(C64::new(0.8, 0.1), C64::new(-0.5, 0.9), 4);
        let f = hopf_equation(2.0, 1.1);
        let theta = implicit_solve(&f, &x, 0.0, 1e-15).unwrap();
        let r = f(&x, &theta).unwrap();
        assert!(r.max_abs() < 1e-13, "{}", r.max_abs());
    }

    #[test]
    fn origin_has_no_root() {
        let x = coords(C64::new(0.0, 0.0), C64::new(0.0, 0.0), 2);
        let err = implicit_solve(hopf_equation(2.0, 1.0), &x, 0.0, 1e-14).unwrap_err();
        assert!(matches!(err, Error::NoBracket(_)));
    }

    #[test]
    fn bracket_with_increasing_function() {
        let root = newton_bracketed(|t| Ok((t.powi(3) + t - 30.0, 3.0 * t * t + 1.0)), 0.0, 1e-14)
            .unwrap();
        assert!((root.powi(3) + root - 30.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        let x = coords(C64::new(1.0, 0.0), C64::new(0.0, 0.0), 2);
        assert!(implicit_solve(hopf_equation(2.0, 1.0), &x, 0.0, 0.0).is_err());
    }
}
