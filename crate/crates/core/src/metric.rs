//! Pointwise carriers: chart points, metric jets, forms and 4-tensors.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, Layout, C64};
use crate::linalg::{self, JetMatrix};

/// Hermitian defect allowed when a metric jet is validated.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// A point of a complex chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<C64>,
}

impl Point {
    pub fn new(coords: Vec<C64>) -> Self {
        Point { coords }
    }

    pub fn c2(z: C64, w: C64) -> Self {
        Point { coords: vec![z, w] }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Jets `(z¹…zⁿ, z̄¹…z̄ⁿ)` of the coordinate functions at this point.
    pub fn coordinate_jets(&self, order: usize) -> Vec<Jet> {
        let n = self.n();
        let layout = Layout::get(2 * n, order);
        let mut out = Vec::with_capacity(2 * n);
        for (i, c) in self.coords.iter().enumerate() {
            out.push(Jet::variable(layout.clone(), i, *c).expect("index in range"));
        }
        for (i, c) in self.coords.iter().enumerate() {
            out.push(Jet::variable(layout.clone(), n + i, c.conj()).expect("index in range"));
        }
        out
    }

    /// Point displaced by real offsets `dx` (in `x¹…xⁿ, y¹…yⁿ` order).
    pub fn shifted(&self, dx: &[f64]) -> Point {
        let n = self.n();
        Point {
            coords: (0..n)
                .map(|i| self.coords[i] + C64::new(dx[i], dx[n + i]))
                .collect(),
        }
    }
}

/// Order-k jet of a Hermitian metric `h_{ij̄}` at a point.
#[derive(Clone, Debug)]
pub struct MetricJet {
    h: JetMatrix,
    point: Point,
}

impl MetricJet {
    /// Validates the Hermitian symmetry at jet level and positive
    /// definiteness of the value part.
    pub fn new(h: JetMatrix, point: Point) -> Result<Self> {
        let n = h.n();
        if h.layout().dim() != 2 * n || point.n() != n {
            return Err(Error::param(
                "metric",
                format!("dimension mismatch: {n}x{n} matrix over {} variables", h.layout().dim()),
            ));
        }
        let scale = h.entries().iter().map(Jet::max_abs).fold(1.0, f64::max);
        let defect = h.hermitian_defect();
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(defect));
        }
        if !linalg::is_positive_definite(&h.value()) {
            return Err(Error::SingularMetric);
        }
        Ok(MetricJet { h, point })
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    pub fn h(&self) -> &JetMatrix {
        &self.h
    }

    pub fn entry(&self, i: usize, j: usize) -> &Jet {
        self.h.get(i, j)
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn value(&self) -> DMatrix<C64> {
        self.h.value()
    }

    /// `ψ · h` entrywise for a scalar jet `ψ`.
    pub fn scaled_by(&self, factor: &Jet) -> Result<MetricJet> {
        MetricJet::new(self.h.map(|e| e * factor), self.point.clone())
    }
}

/// Pointwise (1,1)-form `√−1 A_{ij̄} dzⁱ∧dz̄ʲ`; row index `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Form11 {
    pub a: DMatrix<C64>,
}

impl Form11 {
    pub fn new(a: DMatrix<C64>) -> Self {
        Form11 { a }
    }

    pub fn zeros(n: usize) -> Self {
        Form11 {
            a: DMatrix::zeros(n, n),
        }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Form11 {
            a: DMatrix::from_fn(n, n, f),
        }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.a)
    }

    pub fn hermitian_defect(&self) -> f64 {
        linalg::max_abs(&(&self.a - self.a.adjoint()))
    }

    /// A real form has a Hermitian coefficient matrix.
    pub fn is_real(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol * (1.0 + self.max_abs())
    }

    pub fn max_abs_diff(&self, other: &Form11) -> f64 {
        linalg::max_abs(&(&self.a - &other.a))
    }

    pub fn scale(&self, s: f64) -> Form11 {
        Form11 {
            a: self.a.map(|c| c * s),
        }
    }
}

impl std::ops::Add for &Form11 {
    type Output = Form11;
    fn add(self, rhs: &Form11) -> Form11 {
        Form11 { a: &self.a + &rhs.a }
    }
}

impl std::ops::Sub for &Form11 {
    type Output = Form11;
    fn sub(self, rhs: &Form11) -> Form11 {
        Form11 { a: &self.a - &rhs.a }
    }
}

/// Pointwise (1,0)-form `bᵢ dzⁱ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Form10 {
    pub b: Vec<C64>,
}

/// Pointwise (0,1)-form `aⱼ dz̄ʲ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Form01 {
    pub a: Vec<C64>,
}

impl Form10 {
    /// The (0,1)-form `conj(bᵢ) dz̄ⁱ`.
    pub fn conj_mirror(&self) -> Form01 {
        Form01 {
            a: self.b.iter().map(|c| c.conj()).collect(),
        }
    }
}

impl Form01 {
    pub fn conj_mirror(&self) -> Form10 {
        Form10 {
            b: self.a.iter().map(|c| c.conj()).collect(),
        }
    }
}

pub(crate) fn max_abs_diff_vec(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Pointwise 4-tensor with indices `(i, j̄, k, ℓ̄)` or, for the upper-index
/// Levi-Civita curvature, `(i, j̄, k, ℓ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<C64>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Tensor4 {
            n,
            data: vec![C64::new(0.0, 0.0); n * n * n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.data[self.idx(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: C64) {
        let idx = self.idx(i, j, k, l);
        self.data[idx] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest violation of `R_{ij̄kℓ̄} = conj(R_{jīℓk̄})`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let d = self.get(i, j, k, l) - self.get(j, i, l, k).conj();
                        worst = worst.max(d.norm());
                    }
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian_and_indefinite() {
        let p = Point::c2(C64::new(0.5, 0.0), C64::new(0.2, 0.1));
        let x = p.coordinate_jets(2);
        let l = x[0].layout().clone();
        let one = Jet::constant(l.clone(), C64::new(1.0, 0.0));
        let zero = Jet::zero(l.clone());
        let skew = JetMatrix::new(2, vec![one.clone(), x[0].clone(), x[0].clone(), one.clone()]);
        assert!(matches!(
            MetricJet::new(skew, p.clone()),
            Err(Error::NotHermitian(_))
        ));
        let neg = JetMatrix::new(2, vec![one.clone(), zero.clone(), zero, -&one]);
        assert_eq!(MetricJet::new(neg, p).unwrap_err(), Error::SingularMetric);
    }

    #[test]
    fn coordinate_jets_hold_conjugates() {
        let p = Point::c2(C64::new(0.5, 0.3), C64::new(-1.0, 2.0));
        let x = p.coordinate_jets(1);
        assert_eq!(x[2].value(), C64::new(0.5, -0.3));
        assert!(x[0].conj().approx_eq(&x[2], 0.0));
    }

    #[test]
    fn form_conj_mirror_roundtrip() {
        let a = Form01 {
            a: vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.25)],
        };
        assert_eq!(a.conj_mirror().conj_mirror(), a);
    }
}
