//! The potential `Φ`, phase `θ` and weight `Δ` on the cover `ℂ²∖{0}` of a
//! class-1 Hopf surface `H_{a,b}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, C64};
use crate::metric::{Form11, Point};
use crate::solve::implicit_solve;

/// Newton tolerance for `θ`; the defining equation is O(1).
const THETA_TOL: f64 = 1e-15;

/// Deck multipliers of `(z, w) ↦ (az, bw)`, with `|a| ≥ |b| > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfParams {
    a: C64,
    b: C64,
}

impl HopfParams {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        if !(b.norm() > 1.0) {
            return Err(Error::param("b", format!("|b| = {} must exceed 1", b.norm())));
        }
        if a.norm() < b.norm() {
            return Err(Error::param(
                "a",
                format!("|a| = {} must be at least |b| = {}", a.norm(), b.norm()),
            ));
        }
        Ok(HopfParams { a, b })
    }

    pub fn real(a: f64, b: f64) -> Result<Self> {
        HopfParams::new(C64::new(a, 0.0), C64::new(b, 0.0))
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn k1(&self) -> f64 {
        self.a.norm().ln()
    }

    pub fn k2(&self) -> f64 {
        self.b.norm().ln()
    }

    /// `α = 2k₁/(k₁+k₂) ∈ [1, 2)`.
    pub fn alpha(&self) -> f64 {
        2.0 * self.k1() / (self.k1() + self.k2())
    }

    /// Growth of `Φ` under one deck step: `Φ(az, bw) = |a||b| Φ(z, w)`.
    pub fn phi_period(&self) -> f64 {
        self.a.norm() * self.b.norm()
    }

    pub fn deck(&self, p: &Point) -> Point {
        Point::c2(self.a * p.coords[0], self.b * p.coords[1])
    }
}

/// Jets of `θ`, `Φ = e^{(k₁+k₂)θ/2π}` and `Δ = α|z|²Φ^{−α} + (2−α)|w|²Φ^{α−2}`.
#[derive(Clone, Debug)]
pub struct PhiField {
    pub theta: Jet,
    pub phi: Jet,
    pub delta: Jet,
}

fn check_chart(p: &Point) -> Result<()> {
    if p.n() != 2 {
        return Err(Error::OutsideChart(format!(
            "Hopf charts are two-dimensional, got {} coordinates",
            p.n()
        )));
    }
    if p.norm_sqr() == 0.0 {
        return Err(Error::OutsideChart("the origin is not in ℂ²∖{0}".into()));
    }
    Ok(())
}

/// `|z|² e^{−k₁θ/π} + |w|² e^{−k₂θ/π} − 1` for coordinate jets `(z, w, z̄, w̄)`.
pub fn theta_equation(hp: &HopfParams) -> impl Fn(&[Jet], &Jet) -> Result<Jet> {
    let (k1, k2) = (hp.k1(), hp.k2());
    move |x: &[Jet], theta: &Jet| {
        let zz = &x[0] * &x[2];
        let ww = &x[1] * &x[3];
        let e1 = (theta * (-k1 / PI)).exp();
        let e2 = (theta * (-k2 / PI)).exp();
        Ok(&zz * &e1 + &ww * &e2 - 1.0)
    }
}

pub fn phi_field(p: &Point, hp: &HopfParams, order: usize) -> Result<PhiField> {
    check_chart(p)?;
    let x = p.coordinate_jets(order);
    let theta = implicit_solve(theta_equation(hp), &x, 0.0, THETA_TOL)?.real_part();
    let phi = (&theta * ((hp.k1() + hp.k2()) / (2.0 * PI))).exp();
    let alpha = hp.alpha();
    let zz = &x[0] * &x[2];
    let ww = &x[1] * &x[3];
    let delta = &(&zz * &phi.powf(-alpha)?) * alpha
        + &(&ww * &phi.powf(alpha - 2.0)?) * (2.0 - alpha);
    Ok(PhiField { theta, phi, delta })
}

pub fn phi_value(p: &Point, hp: &HopfParams) -> Result<f64> {
    Ok(phi_field(p, hp, 0)?.phi.value().re)
}

/// `(√−1∂∂̄ log Φ, √−1∂Φ∧∂̄Φ)` as coefficient matrices `A_{ij̄}`.
pub fn hessian_forms(p: &Point, hp: &HopfParams) -> Result<(Form11, Form11)> {
    let f = phi_field(p, hp, 2)?;
    let log_phi = f.phi.ln()?;
    let ddlog = Form11::from_fn(2, |i, j| log_phi.dz(i).dzb(j).value());
    let grad: Vec<C64> = (0..2).map(|i| f.phi.dz(i).value()).collect();
    let gradb: Vec<C64> = (0..2).map(|j| f.phi.dzb(j).value()).collect();
    let dphi = Form11::from_fn(2, |i, j| grad[i] * gradb[j]);
    Ok((ddlog, dphi))
}
