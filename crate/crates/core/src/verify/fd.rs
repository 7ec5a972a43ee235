//! Central finite differences in real coordinates, re-expressed as
//! Wirtinger jet coefficients — an oracle independent of the jet engine.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, Layout, C64};
use crate::metric::Point;
use crate::zoo::build::build_metric_order;
use crate::zoo::hopf::phi_field;
use crate::zoo::spec::MetricSpec;

pub const FD_STEP: f64 = 1e-5;

/// Coefficients of one scalar field from both sources, in the dense layout
/// of `Layout::get(2n, order)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FdField {
    pub name: String,
    pub jet: Vec<C64>,
    /// Gated oracle, see [`fd_coeffs_from_gradients`].
    pub fd: Vec<C64>,
    /// Pure value stencil, kept for reference.
    pub fd_values: Vec<C64>,
    /// Total degree of each coefficient.
    pub degree: Vec<usize>,
}

impl FdField {
    /// `max |jet − fd| / (1 + max |jet|)` over coefficients of total degree `d`.
    pub fn rel_error(&self, d: usize) -> f64 {
        let mut scale: f64 = 0.0;
        let mut err: f64 = 0.0;
        for k in 0..self.jet.len() {
            if self.degree[k] == d {
                scale = scale.max(self.jet[k].norm());
                err = err.max((self.jet[k] - self.fd[k]).norm());
            }
        }
        err / (1.0 + scale)
    }

    /// As [`FdField::rel_error`] for the pure value stencil.
    pub fn rel_error_values(&self, d: usize) -> f64 {
        let mut scale: f64 = 0.0;
        let mut err: f64 = 0.0;
        for k in 0..self.jet.len() {
            if self.degree[k] == d {
                scale = scale.max(self.jet[k].norm());
                err = err.max((self.jet[k] - self.fd_values[k]).norm());
            }
        }
        err / (1.0 + scale)
    }
}

/// Wirtinger coefficients (orders ≤ 2) of `f` at `p` from central differences
/// of step [`FD_STEP`] in `(x¹…xⁿ, y¹…yⁿ)`.
pub fn fd_coeffs<F>(f: F, p: &Point, order: usize) -> Result<Vec<C64>>
where
    F: Fn(&Point) -> Result<C64>,
{
    if order > 2 {
        return Err(Error::InsufficientOrder(order));
    }
    let n = p.n();
    let m = 2 * n;
    let h = FD_STEP;
    let at = |steps: &[(usize, f64)]| -> Result<C64> {
        let mut dx = vec![0.0; m];
        for &(r, s) in steps {
            dx[r] += s * h;
        }
        f(&p.shifted(&dx)).map_err(|e| Error::OutsideChart(format!("stencil point: {e}")))
    };
    let f0 = at(&[])?;
    let mut grad = vec![C64::new(0.0, 0.0); m];
    let mut hess = DMatrix::<C64>::zeros(m, m);
    for r in 0..m {
        let fp = at(&[(r, 1.0)])?;
        let fm = at(&[(r, -1.0)])?;
        grad[r] = (fp - fm) / (2.0 * h);
        if order == 2 {
            hess[(r, r)] = (fp - f0 * 2.0 + fm) / (h * h);
        }
    }
    if order == 2 {
        for r in 0..m {
            for s in r + 1..m {
                let v = (at(&[(r, 1.0), (s, 1.0)])? - at(&[(r, 1.0), (s, -1.0)])?
                    - at(&[(r, -1.0), (s, 1.0)])?
                    + at(&[(r, -1.0), (s, -1.0)])?)
                    / (4.0 * h * h);
                hess[(r, s)] = v;
                hess[(s, r)] = v;
            }
        }
    }
    // ∂_z = ½(∂_x − i∂_y), ∂_z̄ = ½(∂_x + i∂_y)
    let mut c = DMatrix::<C64>::zeros(m, m);
    for i in 0..n {
        c[(i, i)] = C64::new(0.5, 0.0);
        c[(i, n + i)] = C64::new(0.0, -0.5);
        c[(n + i, i)] = C64::new(0.5, 0.0);
        c[(n + i, n + i)] = C64::new(0.0, 0.5);
    }
    let wgrad: Vec<C64> = (0..m)
        .map(|a| (0..m).map(|r| c[(a, r)] * grad[r]).sum())
        .collect();
    let whess = &c * &hess * c.transpose();
    let layout = Layout::get(m, order);
    let mut out = vec![C64::new(0.0, 0.0); layout.len()];
    for (k, slot) in out.iter_mut().enumerate() {
        let e = layout.exponents(k);
        let vars: Vec<usize> = (0..m).flat_map(|v| std::iter::repeat_n(v, e[v] as usize)).collect();
        *slot = match vars.as_slice() {
            [] => f0,
            [a] => wgrad[*a],
            [a, b] if a == b => whess[(*a, *a)] / 2.0,
            [a, b] => whess[(*a, *b)],
            _ => unreachable!("order ≤ 2"),
        };
    }
    Ok(out)
}

fn field<F>(name: &str, jet: &Jet, f: F, p: &Point, order: usize) -> Result<FdField>
where
    F: Fn(&Point) -> Result<Jet>,
{
    let layout = jet.layout();
    let fd = fd_coeffs_from_gradients(&f, p, order)?;
    let fd_values = fd_coeffs(|q| Ok(f(q)?.value()), p, order)?;
    Ok(FdField {
        name: name.to_string(),
        jet: jet.coeffs().to_vec(),
        fd,
        fd_values,
        degree: (0..layout.len()).map(|k| layout.degree(k)).collect(),
    })
}

/// Oracle coefficients for a field given as order-1 jets: degrees 0 and 1
/// from value stencils, degree 2 from central differences of the degree-1
/// coefficients. Value-only second differences at [`FD_STEP`] carry
/// roundoff of order `ε|f|/h² ≈ 1e-6·|f|`; differencing gradients keeps it
/// at `ε/h`.
pub fn fd_coeffs_from_gradients<F>(f: F, p: &Point, order: usize) -> Result<Vec<C64>>
where
    F: Fn(&Point) -> Result<Jet>,
{
    let mut out = fd_coeffs(|q| Ok(f(q)?.value()), p, order.min(1))?;
    if order < 2 {
        return Ok(out);
    }
    let n = p.n();
    let m = 2 * n;
    let h = FD_STEP;
    let grad_at = |r: usize, s: f64| -> Result<Vec<C64>> {
        let mut dx = vec![0.0; m];
        dx[r] = s * h;
        let j = f(&p.shifted(&dx)).map_err(|e| Error::OutsideChart(format!("stencil point: {e}")))?;
        Ok(j.coeffs()[1..=m].to_vec())
    };
    // d[r][a] = ∂_r (∂_a f) with r real, a Wirtinger
    let mut d = vec![vec![C64::new(0.0, 0.0); m]; m];
    for (r, row) in d.iter_mut().enumerate() {
        let gp = grad_at(r, 1.0)?;
        let gm = grad_at(r, -1.0)?;
        for a in 0..m {
            row[a] = (gp[a] - gm[a]) / (2.0 * h);
        }
    }
    let wirt = |b: usize, a: usize| {
        let i = b % n;
        let sy = if b < n { -0.5 } else { 0.5 };
        d[i][a] * 0.5 + d[n + i][a] * C64::new(0.0, sy)
    };
    let layout = Layout::get(m, 2);
    out.resize(layout.len(), C64::new(0.0, 0.0));
    for (k, slot) in out.iter_mut().enumerate().skip(m + 1) {
        let e = layout.exponents(k);
        let vars: Vec<usize> = (0..m).flat_map(|v| std::iter::repeat_n(v, e[v] as usize)).collect();
        *slot = match vars.as_slice() {
            [a, b] if a == b => wirt(*a, *a) / 2.0,
            [a, b] => (wirt(*a, *b) + wirt(*b, *a)) / 2.0,
            _ => unreachable!("degree 2"),
        };
    }
    Ok(out)
}

/// FD-versus-jet table for every metric entry of `spec` at `p` and, for
/// Hopf kinds, for `Φ`, `Δ` and `log Φ`. The gated oracle is
/// [`fd_coeffs_from_gradients`]; the pure value stencil is kept alongside.
pub fn fd_oracle(spec: &MetricSpec, p: &Point, order: usize) -> Result<Vec<FdField>> {
    let n = p.n();
    let sub = order.min(1);
    let m = build_metric_order(spec, p, order)?;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let entry = |q: &Point| Ok(build_metric_order(spec, q, sub)?.entry(i, j).clone());
            out.push(field(&format!("h{}{}", i + 1, j + 1), m.entry(i, j), entry, p, order)?);
        }
    }
    if let Some(hp) = spec.hopf() {
        let pf = phi_field(p, &hp, order)?;
        let phi = |q: &Point| Ok(phi_field(q, &hp, sub)?.phi);
        out.push(field("phi", &pf.phi, phi, p, order)?);
        let delta = |q: &Point| Ok(phi_field(q, &hp, sub)?.delta);
        out.push(field("delta", &pf.delta, delta, p, order)?);
        let log_phi = |q: &Point| phi_field(q, &hp, sub)?.phi.ln();
        out.push(field("log_phi", &pf.phi.ln()?, log_phi, p, order)?);
    }
    Ok(out)
}

/// Worst `(first, second)` derivative relative errors over a table.
pub fn worst_errors(table: &[FdField]) -> (f64, f64) {
    table.iter().fold((0.0f64, 0.0f64), |(a, b), f| {
        (a.max(f.rel_error(1)), b.max(f.rel_error(2)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_oracle_is_exact_to_roundoff() {
        // f = z²z̄ + 3 w̄ : coefficients are known in closed form
        let p = Point::c2(C64::new(0.3, -0.2), C64::new(0.5, 0.1));
        let f = |q: &Point| Ok(q.coords[0] * q.coords[0] * q.coords[0].conj() + q.coords[1].conj() * 3.0);
        let fd = fd_coeffs(f, &p, 2).unwrap();
        let x = p.coordinate_jets(2);
        let jet = &(&(&x[0] * &x[0]) * &x[2]) + &(&x[3] * 3.0);
        let coeffs = jet.coeffs();
        let err = |d: usize| {
            (0..coeffs.len())
                .filter(|&k| jet.layout().degree(k) == d)
                .map(|k| (coeffs[k] - fd[k]).norm())
                .fold(0.0, f64::max)
        };
        assert!(err(1) < 1e-9, "{}", err(1));
        assert!(err(2) < 1e-5, "{}", err(2));
        let g = |q: &Point| {
            let x = q.coordinate_jets(1);
            Ok(&(&(&x[0] * &x[0]) * &x[2]) + &(&x[3] * 3.0))
        };
        let fd = fd_coeffs_from_gradients(g, &p, 2).unwrap();
        for k in 0..coeffs.len() {
            assert!((coeffs[k] - fd[k]).norm() < 1e-9, "{k}: {} vs {}", coeffs[k], fd[k]);
        }
    }

    #[test]
    fn flat_derivatives_vanish() {
        let p = Point::c2(C64::new(0.3, -0.2), C64::new(0.5, 0.1));
        for f in fd_oracle(&MetricSpec::Flat { n: 2 }, &p, 2).unwrap() {
            assert!(f.fd[1..].iter().all(|c| c.norm() < 1e-10));
        }
    }
}
