//! Scalar curvature of the background Riemannian metric.
//!
//! With `zⁱ = xⁱ + √−1 yⁱ`, the real metric is taken as
//! `g(∂ₓᵢ, ∂ₓⱼ) = g(∂ᵧᵢ, ∂ᵧⱼ) = 2 Re hᵢⱼ̄` and `g(∂ₓᵢ, ∂ᵧⱼ) = 2 Im hᵢⱼ̄`,
//! i.e. the complex-bilinear extension of `g` restricted to
//! `T^{1,0} × T^{0,1}` is `h`. Everything below works in real coordinates
//! only: the Wirtinger jets of `h` are re-expanded in `(x, y)` and the
//! usual Levi-Civita formulas are applied.

use crate::error::Result;
use crate::jet::{Jet, Layout, C64};
use crate::linalg::JetMatrix;
use crate::metric::MetricJet;

/// Real metric `g_{ab}` (indices `x¹…xⁿ, y¹…yⁿ`) as jets in real coordinates.
pub fn real_metric(m: &MetricJet) -> JetMatrix {
    let n = m.n();
    let order = m.order();
    let real = Layout::get(2 * n, order);
    let zero = C64::new(0.0, 0.0);
    let images: Vec<Jet> = (0..2 * n)
        .map(|v| {
            let i = v % n;
            let x = Jet::variable(real.clone(), i, zero).expect("index");
            let y = Jet::variable(real.clone(), n + i, zero).expect("index");
            let s = if v < n { 1.0 } else { -1.0 };
            &x + &(&y * C64::new(0.0, s))
        })
        .collect();
    let hr: Vec<Jet> = m.h().entries().iter().map(|e| e.substitute(&images)).collect();
    let re = |i: usize, j: usize| &hr[i * n + j] + &hr[i * n + j].conj_coeffs();
    let im = |i: usize, j: usize| {
        (&hr[i * n + j] - &hr[i * n + j].conj_coeffs()).scale(C64::new(0.0, -1.0))
    };
    JetMatrix::from_fn(2 * n, |a, b| match (a < n, b < n) {
        (true, true) => re(a, b),
        (false, false) => re(a - n, b - n),
        (true, false) => im(a, b - n),
        (false, true) => im(b, a - n),
    })
}

/// Riemannian scalar curvature `s = g^{bc} R_{bc}` at the point.
pub fn scalar_curvature(m: &MetricJet) -> Result<f64> {
    let g = real_metric(m);
    let dim = g.n();
    let ginv = g.inverse()?.truncate(1);
    // ∂_a g_{bc}, order 1, at [a][b][c]
    let idx = |a: usize, b: usize, c: usize| (a * dim + b) * dim + c;
    let mut dg = Vec::with_capacity(dim * dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                dg.push(g.get(b, c).d(a).truncate(1));
            }
        }
    }
    // Γ^c_{ab} at [c][a][b]
    let mut gamma = Vec::with_capacity(dim * dim * dim);
    for c in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = Jet::zero(ginv.layout().clone());
                for d in 0..dim {
                    let t = &(&dg[idx(a, b, d)] + &dg[idx(b, a, d)]) - &dg[idx(d, a, b)];
                    acc += &(ginv.get(c, d) * &t);
                }
                gamma.push(acc * 0.5);
            }
        }
    }
    let gv = |c: usize, a: usize, b: usize| gamma[idx(c, a, b)].value();
    let ginv0 = ginv.value();
    let mut s = C64::new(0.0, 0.0);
    for b in 0..dim {
        for c in 0..dim {
            // R_{bc} = ∂_a Γ^a_{bc} − ∂_c Γ^a_{ba} + Γ^a_{ad}Γ^d_{bc} − Γ^a_{cd}Γ^d_{ba}
            let mut ric = C64::new(0.0, 0.0);
            for a in 0..dim {
                ric += gamma[idx(a, b, c)].d(a).value() - gamma[idx(a, b, a)].d(c).value();
                for d in 0..dim {
                    ric += gv(a, a, d) * gv(d, b, c) - gv(a, c, d) * gv(d, b, a);
                }
            }
            s += ginv0[(b, c)] * ric;
        }
    }
    Ok(s.re)
}
