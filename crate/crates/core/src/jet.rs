//! Truncated multivariate Taylor jets with complex coefficients.
//!
//! A [`Jet`] stores the Taylor coefficients `c_α` of a function around a
//! point, `f = Σ c_α u^α` with `|α| ≤ order`, in a dense vector ordered by a
//! canonical monomial [`Layout`]. The main use is Wirtinger jets: for `n`
//! complex variables the layout has `2n` formal variables ordered
//! `(z¹…zⁿ, z̄¹…z̄ⁿ)`, and `∂/∂zⁱ`, `∂/∂z̄ʲ` become plain partial
//! derivatives. The same storage also carries jets in real coordinates
//! (see [`Jet::substitute`]).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Canonical monomial ordering for jets in `dim` variables up to `order`.
///
/// Monomials are graded by total degree; within a degree the exponent
/// vectors are in descending lexicographic order.
pub struct Layout {
    dim: usize,
    order: usize,
    exps: Vec<Vec<u8>>,
    degree: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    /// `(i, j, k)` with `mono_i · mono_j = mono_k`, restricted to `deg(k) ≤ order`.
    products: Vec<(u32, u32, u32)>,
    /// `α!` per monomial.
    factorial: Vec<f64>,
}

impl fmt::Debug for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Layout")
            .field("dim", &self.dim)
            .field("order", &self.order)
            .field("len", &self.exps.len())
            .finish()
    }
}

fn push_monomials(dim: usize, remaining: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() + 1 == dim {
        prefix.push(remaining as u8);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for e in (0..=remaining).rev() {
        prefix.push(e as u8);
        push_monomials(dim, remaining - e, prefix, out);
        prefix.pop();
    }
}

impl Layout {
    fn build(dim: usize, order: usize) -> Self {
        assert!(dim > 0, "jet layout needs at least one variable");
        let mut exps = Vec::new();
        for d in 0..=order {
            push_monomials(dim, d, &mut Vec::with_capacity(dim), &mut exps);
        }
        let degree: Vec<usize> = exps
            .iter()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .collect();
        let index: HashMap<Vec<u8>, usize> =
            exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut products = Vec::new();
        let mut buf = vec![0u8; dim];
        for i in 0..exps.len() {
            for j in 0..exps.len() {
                if degree[i] + degree[j] > order {
                    continue;
                }
                for v in 0..dim {
                    buf[v] = exps[i][v] + exps[j][v];
                }
                let k = index[&buf];
                products.push((i as u32, j as u32, k as u32));
            }
        }
        let factorial = exps
            .iter()
            .map(|e| e.iter().map(|&x| (1..=x as u64).product::<u64>() as f64).product())
            .collect();
        Layout {
            dim,
            order,
            exps,
            degree,
            index,
            products,
            factorial,
        }
    }

    /// Shared layout for `(dim, order)`; layouts are built once per process.
    pub fn get(dim: usize, order: usize) -> Arc<Layout> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Layout>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("layout cache poisoned");
        guard
            .entry((dim, order))
            .or_insert_with(|| Arc::new(Layout::build(dim, order)))
            .clone()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, idx: usize) -> &[u8] {
        &self.exps[idx]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.degree[idx]
    }

    pub fn position(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

/// Order-truncated Taylor jet.
#[derive(Clone)]
pub struct Jet {
    layout: Arc<Layout>,
    coeffs: Vec<C64>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c != C64::new(0.0, 0.0) {
                m.entry(&self.layout.exps[i], c);
            }
        }
        m.finish()
    }
}

impl Jet {
    pub fn zero(layout: Arc<Layout>) -> Self {
        let coeffs = vec![C64::new(0.0, 0.0); layout.len()];
        Jet { layout, coeffs }
    }

    pub fn constant(layout: Arc<Layout>, value: C64) -> Self {
        let mut j = Jet::zero(layout);
        j.coeffs[0] = value;
        j
    }

    /// Jet of the coordinate function `u_var` whose value at the point is `value`.
    pub fn variable(layout: Arc<Layout>, var: usize, value: C64) -> Result<Self> {
        if var >= layout.dim {
            return Err(Error::VarIndex {
                index: var,
                n_vars: layout.dim,
            });
        }
        let mut j = Jet::constant(layout, value);
        if j.layout.order >= 1 {
            let mut e = vec![0u8; j.layout.dim];
            e[var] = 1;
            let pos = j.layout.index[&e];
            j.coeffs[pos] = C64::new(1.0, 0.0);
        }
        Ok(j)
    }

    pub fn from_coeffs(layout: Arc<Layout>, coeffs: Vec<C64>) -> Self {
        assert_eq!(layout.len(), coeffs.len(), "coefficient count mismatch");
        Jet { layout, coeffs }
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim
    }

    pub fn order(&self) -> usize {
        self.layout.order
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn value(&self) -> C64 {
        self.coeffs[0]
    }

    /// Taylor coefficient of the monomial with the given exponents (0 if absent
    /// or above the truncation order).
    pub fn coeff(&self, exps: &[u8]) -> C64 {
        self.layout
            .position(exps)
            .map(|i| self.coeffs[i])
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn set_coeff(&mut self, exps: &[u8], c: C64) {
        let i = self
            .layout
            .position(exps)
            .expect("monomial outside jet layout");
        self.coeffs[i] = c;
    }

    /// Partial derivative `∂^α f` at the point, i.e. `α! · c_α`.
    pub fn derivative_at(&self, exps: &[u8]) -> C64 {
        match self.layout.position(exps) {
            Some(i) => self.coeffs[i] * self.layout.factorial[i],
            None => C64::new(0.0, 0.0),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.layout.order {
            return self.clone();
        }
        let layout = Layout::get(self.layout.dim, order);
        // graded ordering: lower-order layout is a prefix
        let coeffs = self.coeffs[..layout.len()].to_vec();
        Jet { layout, coeffs }
    }

    fn aligned(a: &Jet, b: &Jet) -> (Jet, Jet) {
        assert_eq!(a.layout.dim, b.layout.dim, "jets over different variable sets");
        let order = a.layout.order.min(b.layout.order);
        (a.truncate(order), b.truncate(order))
    }

    fn same_layout(&self, other: &Jet) -> bool {
        Arc::ptr_eq(&self.layout, &other.layout)
    }

    fn zip_with(&self, other: &Jet, f: impl Fn(C64, C64) -> C64) -> Jet {
        if self.same_layout(other) {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&x, &y)| f(x, y))
                .collect();
            Jet {
                layout: self.layout.clone(),
                coeffs,
            }
        } else {
            let (a, b) = Jet::aligned(self, other);
            a.zip_with(&b, f)
        }
    }

    fn product(&self, other: &Jet) -> Jet {
        if !self.same_layout(other) {
            let (a, b) = Jet::aligned(self, other);
            return a.product(&b);
        }
        let mut out = vec![C64::new(0.0, 0.0); self.layout.len()];
        for &(i, j, k) in &self.layout.products {
            out[k as usize] += self.coeffs[i as usize] * other.coeffs[j as usize];
        }
        Jet {
            layout: self.layout.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, s: C64) -> Jet {
        Jet {
            layout: self.layout.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Coefficientwise complex conjugate *without* exchanging variables.
    /// For jets in real coordinates this is the jet of `conj(f)`.
    pub fn conj_coeffs(&self) -> Jet {
        Jet {
            layout: self.layout.clone(),
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Composition `g ∘ self` where `derivs[k] = g^{(k)}(self.value())`.
    ///
    /// `derivs` must hold at least `order + 1` entries.
    pub fn compose(&self, derivs: &[C64]) -> Jet {
        let order = self.layout.order;
        assert!(derivs.len() > order, "need {} derivatives", order + 1);
        let mut eps = self.clone();
        eps.coeffs[0] = C64::new(0.0, 0.0);
        let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
        let mut acc = Jet::constant(self.layout.clone(), derivs[order] / fact(order));
        for k in (0..order).rev() {
            acc = acc.product(&eps);
            acc.coeffs[0] += derivs[k] / fact(k);
        }
        acc
    }

    fn require_nonzero(&self, op: &'static str) -> Result<C64> {
        let c0 = self.value();
        if c0.norm() == 0.0 || !c0.is_finite() {
            return Err(Error::ZeroConstant { op });
        }
        Ok(c0)
    }

    pub fn recip(&self) -> Result<Jet> {
        let c0 = self.require_nonzero("reciprocal")?;
        let inv = c0.inv();
        let mut d = Vec::with_capacity(self.order() + 1);
        let mut term = inv;
        for k in 0..=self.order() {
            d.push(term);
            term = term * inv * (-(k as f64 + 1.0));
        }
        Ok(self.compose(&d))
    }

    pub fn try_div(&self, other: &Jet) -> Result<Jet> {
        Ok(self * &other.recip()?)
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        self.compose(&vec![e; self.order() + 1])
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Jet> {
        let c0 = self.require_nonzero("log")?;
        let inv = c0.inv();
        let mut d = vec![c0.ln()];
        let mut term = inv;
        for k in 1..=self.order() {
            d.push(term);
            term = term * inv * (-(k as f64));
        }
        Ok(self.compose(&d))
    }

    /// `self^p` for real `p` (principal branch).
    pub fn powf(&self, p: f64) -> Result<Jet> {
        let c0 = self.require_nonzero("power")?;
        let lc = c0.ln();
        let mut d = Vec::with_capacity(self.order() + 1);
        let mut falling = 1.0;
        for k in 0..=self.order() {
            d.push(falling * ((p - k as f64) * lc).exp());
            falling *= p - k as f64;
        }
        Ok(self.compose(&d))
    }

    pub fn powi(&self, k: u32) -> Jet {
        let mut acc = Jet::constant(self.layout.clone(), C64::new(1.0, 0.0));
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// `∂f/∂u_var`, one order lower.
    pub fn d(&self, var: usize) -> Jet {
        assert!(var < self.layout.dim, "variable index out of range");
        if self.layout.order == 0 {
            return Jet::zero(self.layout.clone());
        }
        let target = Layout::get(self.layout.dim, self.layout.order - 1);
        let mut buf;
        let mut coeffs = Vec::with_capacity(target.len());
        for e in &target.exps {
            buf = e.clone();
            buf[var] += 1;
            let src = self.layout.index[&buf];
            coeffs.push(self.coeffs[src] * (buf[var] as f64));
        }
        Jet {
            layout: target,
            coeffs,
        }
    }

    /// Composition with a linear change of variables: `images[k]` is the jet
    /// of old variable `k` in the new variables (zero constant term).
    pub fn substitute(&self, images: &[Jet]) -> Jet {
        assert_eq!(images.len(), self.layout.dim, "one image per variable");
        let layout = images[0].layout.clone();
        let order = self.layout.order.min(layout.order);
        let layout = Layout::get(layout.dim, order);
        let images: Vec<Jet> = images
            .iter()
            .map(|j| {
                assert!(j.value().norm() == 0.0, "substitution images must vanish at the point");
                j.truncate(order)
            })
            .collect();
        // powers[k][e] = images[k]^e
        let powers: Vec<Vec<Jet>> = images
            .iter()
            .map(|img| {
                let mut p = vec![Jet::constant(layout.clone(), C64::new(1.0, 0.0))];
                for e in 1..=order {
                    let next = p[e - 1].product(img);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = Jet::zero(layout.clone());
        for (idx, c) in self.coeffs.iter().enumerate() {
            if self.layout.degree[idx] > order || c.norm() == 0.0 {
                continue;
            }
            let mut term = Jet::constant(layout.clone(), *c);
            for (k, &e) in self.layout.exps[idx].iter().enumerate() {
                if e > 0 {
                    term = term.product(&powers[k][e as usize]);
                }
            }
            out += &term;
        }
        out
    }

    /// Largest coefficientwise difference.
    pub fn max_abs_diff(&self, other: &Jet) -> f64 {
        let (a, b) = Jet::aligned(self, other);
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Coefficientwise equality with absolute tolerance `tol` scaled by the
    /// largest coefficient magnitude (floored at 1).
    pub fn approx_eq(&self, other: &Jet, tol: f64) -> bool {
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        self.max_abs_diff(other) <= tol * scale
    }

    // ---- Wirtinger structure: variables (z¹…zⁿ, z̄¹…z̄ⁿ) ----

    /// Number of complex variables of a Wirtinger jet.
    pub fn n_complex(&self) -> usize {
        debug_assert!(self.layout.dim.is_multiple_of(2));
        self.layout.dim / 2
    }

    /// `∂/∂zⁱ`.
    pub fn dz(&self, i: usize) -> Jet {
        assert!(i < self.n_complex());
        self.d(i)
    }

    /// `∂/∂z̄ⁱ`.
    pub fn dzb(&self, i: usize) -> Jet {
        assert!(i < self.n_complex());
        self.d(self.n_complex() + i)
    }

    /// Jet of `conj(f)`: swaps the z / z̄ exponents and conjugates coefficients.
    pub fn conj(&self) -> Jet {
        let n = self.n_complex();
        let mut out = Jet::zero(self.layout.clone());
        let mut buf = vec![0u8; self.layout.dim];
        for (idx, e) in self.layout.exps.iter().enumerate() {
            buf[..n].copy_from_slice(&e[n..]);
            buf[n..].copy_from_slice(&e[..n]);
            let dst = self.layout.index[&buf];
            out.coeffs[dst] = self.coeffs[idx].conj();
        }
        out
    }

    /// Largest violation of `coeff(a,b) = conj(coeff(b,a))`.
    pub fn reality_defect(&self) -> f64 {
        self.max_abs_diff(&self.conj())
    }

    /// Real-valued predicate, coefficient by coefficient.
    pub fn is_real(&self, tol: f64) -> bool {
        self.reality_defect() <= tol * self.max_abs().max(1.0)
    }

    /// Replaces the jet by its real part `(f + conj f)/2`.
    pub fn real_part(&self) -> Jet {
        (self + &self.conj()).scale(C64::new(0.5, 0.0))
    }
}

/// Jet of the coordinate `zⁱ` (0-based `i`) with value `value`, in `n_vars`
/// complex variables at the given truncation order.
pub fn jet_var(i: usize, value: C64, n_vars: usize, order: usize) -> Result<Jet> {
    if i >= n_vars {
        return Err(Error::VarIndex { index: i, n_vars });
    }
    Jet::variable(Layout::get(2 * n_vars, order), i, value)
}

/// Jet of `z̄ⁱ` with value `value` (the conjugate coordinate's value).
pub fn jet_conj_var(i: usize, value: C64, n_vars: usize, order: usize) -> Result<Jet> {
    if i >= n_vars {
        return Err(Error::VarIndex { index: i, n_vars });
    }
    Jet::variable(Layout::get(2 * n_vars, order), n_vars + i, value)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Jet> for &Jet {
            type Output = Jet;
            fn $method(self, rhs: &Jet) -> Jet {
                let f: fn(&Jet, &Jet) -> Jet = $body;
                f(self, rhs)
            }
        }
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: &Jet) -> Jet {
                (&self).$method(rhs)
            }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.zip_with(b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| a.zip_with(b, |x, y| x - y));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

impl AddAssign<&Jet> for Jet {
    fn add_assign(&mut self, rhs: &Jet) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Jet> for Jet {
    fn sub_assign(&mut self, rhs: &Jet) {
        *self = &*self - rhs;
    }
}

impl Mul<C64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: C64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<C64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: C64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Add<C64> for &Jet {
    type Output = Jet;
    fn add(self, rhs: C64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += rhs;
        out
    }
}

impl Add<C64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: C64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Add<f64> for &Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        self + C64::new(rhs, 0.0)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        self + C64::new(rhs, 0.0)
    }
}

impl Sub<f64> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + C64::new(-rhs, 0.0)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + C64::new(-rhs, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn layout_counts_match_binomials() {
        // (2n+2)(2n+1)/2 monomials of degree <= 2 in 2n variables
        assert_eq!(Layout::get(4, 2).len(), 15);
        assert_eq!(Layout::get(2, 2).len(), 6);
        assert_eq!(Layout::get(4, 4).len(), 70);
        assert_eq!(Layout::get(4, 0).len(), 1);
    }

    #[test]
    fn coordinate_jet() {
        let z = jet_var(0, c(3.0, 0.0), 2, 2).unwrap();
        assert_eq!(z.value(), c(3.0, 0.0));
        assert_eq!(z.coeff(&[1, 0, 0, 0]), c(1.0, 0.0));
        assert_eq!(z.coeffs().iter().filter(|x| x.norm() > 0.0).count(), 2);
        assert!(matches!(
            jet_var(2, c(0.0, 0.0), 2, 2),
            Err(Error::VarIndex { index: 2, n_vars: 2 })
        ));
        assert!(jet_conj_var(5, c(0.0, 0.0), 2, 2).is_err());
    }

    #[test]
    fn conj_swaps_variables() {
        let z = jet_var(0, c(0.0, 1.0), 2, 2).unwrap();
        let zb = jet_conj_var(0, c(0.0, -1.0), 2, 2).unwrap();
        assert!(z.conj().approx_eq(&zb, 0.0));
    }

    #[test]
    fn modulus_squared() {
        let z = jet_var(0, c(1.0, 0.0), 1, 2).unwrap();
        let zb = jet_conj_var(0, c(1.0, 0.0), 1, 2).unwrap();
        let r2 = &z * &zb;
        assert_eq!(r2.value(), c(1.0, 0.0));
        assert_eq!(r2.coeff(&[1, 1]), c(1.0, 0.0));
        assert_eq!(r2.derivative_at(&[1, 1]), c(1.0, 0.0));
        assert!(r2.is_real(0.0));
    }

    #[test]
    fn quartic_modulus_first_derivative() {
        // (z z̄)² at z = 2: value 16, ∂/∂z = 2 z z̄² = 16;
        // central differences on |z|⁴ along x and y give the same Wirtinger value.
        let z = jet_var(0, c(2.0, 0.0), 1, 2).unwrap();
        let zb = jet_conj_var(0, c(2.0, 0.0), 1, 2).unwrap();
        let f = (&z * &zb).powi(2);
        assert!((f.value() - c(16.0, 0.0)).norm() < 1e-14);
        let g = |x: f64, y: f64| (x * x + y * y).powi(2);
        let h = 1e-5;
        let fx = (g(2.0 + h, 0.0) - g(2.0 - h, 0.0)) / (2.0 * h);
        let fy = (g(2.0, h) - g(2.0, -h)) / (2.0 * h);
        let fd = c(0.5 * fx, -0.5 * fy);
        assert!((fd - c(16.0, 0.0)).norm() < 1e-6);
        assert!((f.derivative_at(&[1, 0]) - fd).norm() < 1e-6);
        assert!((f.derivative_at(&[1, 0]) - c(16.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn reciprocal_identity_and_zero_division() {
        let z = jet_var(0, c(0.3, -0.2), 2, 3).unwrap();
        let w = jet_conj_var(1, c(1.1, 0.4), 2, 3).unwrap();
        let a = &(&z * &w) + 2.0;
        let one = &a * &a.recip().unwrap();
        assert!(one.approx_eq(&Jet::constant(a.layout().clone(), c(1.0, 0.0)), 1e-14));
        let zero_const = jet_var(0, c(0.0, 0.0), 2, 2).unwrap();
        assert!(matches!(
            zero_const.recip(),
            Err(Error::ZeroConstant { .. })
        ));
        assert!(zero_const.ln().is_err());
        assert!(zero_const.powf(0.5).is_err());
    }

    #[test]
    fn pow_of_radius_squared() {
        // |z|² + |w|² at (1, 1) is 2; power −1 gives 1/2
        let z = jet_var(0, c(1.0, 0.0), 2, 2).unwrap();
        let w = jet_var(1, c(1.0, 0.0), 2, 2).unwrap();
        let r2 = &z * &z.conj() + &w * &w.conj();
        let p = r2.powf(-1.0).unwrap();
        assert!((p.value() - c(0.5, 0.0)).norm() < 1e-15);
        assert!(r2.powf(1.0).unwrap().approx_eq(&r2, 1e-15));
        // d/dz (|z|²+|w|²)^{-1} = -z̄ / r2² = -1/4
        assert!((p.derivative_at(&[1, 0, 0, 0]) - c(-0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_lowers_order() {
        let z = jet_var(0, c(0.5, 0.5), 2, 3).unwrap();
        let f = z.powi(3);
        let df = f.dz(0);
        assert_eq!(df.order(), 2);
        let expect = (&z * &z).scale(c(3.0, 0.0)).truncate(2);
        assert!(df.approx_eq(&expect, 1e-15));
        assert!(f.dzb(0).max_abs() == 0.0);
    }

    #[test]
    fn mixed_orders_truncate() {
        let z4 = jet_var(0, c(1.0, 0.0), 2, 4).unwrap();
        let z2 = jet_var(0, c(1.0, 0.0), 2, 2).unwrap();
        assert_eq!((&z4 * &z2).order(), 2);
        assert_eq!((&z4 + &z2).order(), 2);
    }

    #[test]
    fn substitution_to_real_coordinates() {
        // f = z z̄ becomes x² + y²
        let z = jet_var(0, c(0.0, 0.0), 1, 2).unwrap();
        let f = &z * &z.conj();
        let real = Layout::get(2, 2);
        let x = Jet::variable(real.clone(), 0, c(0.0, 0.0)).unwrap();
        let y = Jet::variable(real.clone(), 1, c(0.0, 0.0)).unwrap();
        let i = c(0.0, 1.0);
        let g = f.substitute(&[&x + &(&y * i), &x - &(&y * i)]);
        assert!((g.coeff(&[2, 0]) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((g.coeff(&[0, 2]) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(g.coeff(&[1, 1]).norm() < 1e-15);
    }
}
