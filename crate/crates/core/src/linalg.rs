//! Small dense matrices of jets.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::jet::{Jet, Layout, C64};

/// Square matrix of jets sharing one layout, stored row-major.
#[derive(Clone, Debug)]
pub struct JetMatrix {
    n: usize,
    entries: Vec<Jet>,
}

impl JetMatrix {
    pub fn new(n: usize, entries: Vec<Jet>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        let order = entries.iter().map(Jet::order).min().unwrap_or(0);
        let entries = entries.into_iter().map(|e| e.truncate(order)).collect();
        JetMatrix { n, entries }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Jet) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        JetMatrix::new(n, entries)
    }

    pub fn constant(layout: &std::sync::Arc<Layout>, m: &DMatrix<C64>) -> Self {
        let n = m.nrows();
        JetMatrix::from_fn(n, |i, j| Jet::constant(layout.clone(), m[(i, j)]))
    }

    pub fn identity(layout: &std::sync::Arc<Layout>, n: usize) -> Self {
        JetMatrix::constant(layout, &DMatrix::identity(n, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.entries[0].order()
    }

    pub fn layout(&self) -> &std::sync::Arc<Layout> {
        self.entries[0].layout()
    }

    pub fn get(&self, i: usize, j: usize) -> &Jet {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Jet] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&Jet) -> Jet) -> JetMatrix {
        JetMatrix::new(self.n, self.entries.iter().map(f).collect())
    }

    pub fn value(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).value())
    }

    pub fn truncate(&self, order: usize) -> JetMatrix {
        self.map(|e| e.truncate(order))
    }

    pub fn transpose(&self) -> JetMatrix {
        JetMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &JetMatrix) -> JetMatrix {
        assert_eq!(self.n, other.n);
        JetMatrix::from_fn(self.n, |i, j| {
            let mut acc = &self.get(i, 0).clone() * other.get(0, j);
            for k in 1..self.n {
                acc += &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn add(&self, other: &JetMatrix) -> JetMatrix {
        JetMatrix::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn trace(&self) -> Jet {
        let mut acc = self.get(0, 0).clone();
        for i in 1..self.n {
            acc += self.get(i, i);
        }
        acc
    }

    /// Largest violation of `m_{ij} = conj(m_{ji})` at the level of Wirtinger jets.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max(self.get(i, j).max_abs_diff(&self.get(j, i).conj()));
            }
        }
        worst
    }

    /// Splits `M = M₀ + E` into the constant matrix and the nilpotent rest.
    fn split(&self) -> (DMatrix<C64>, JetMatrix) {
        let m0 = self.value();
        let rest = self.map(|e| e + (-e.value()));
        (m0, rest)
    }

    /// Inverse by the terminating Neumann series
    /// `M⁻¹ = Σₖ (−M₀⁻¹E)ᵏ M₀⁻¹`.
    pub fn inverse(&self) -> Result<JetMatrix> {
        let (m0, rest) = self.split();
        let inv0 = m0.try_inverse().ok_or(Error::SingularMetric)?;
        let layout = self.layout().clone();
        let inv0_j = JetMatrix::constant(&layout, &inv0);
        let x = inv0_j.mul(&rest).map(|e| -e);
        let mut term = JetMatrix::identity(&layout, self.n);
        let mut sum = term.clone();
        for _ in 0..self.order() {
            term = term.mul(&x);
            sum = sum.add(&term);
        }
        Ok(sum.mul(&inv0_j))
    }

    /// `log det M = log det M₀ + Σₖ (−1)^{k+1} tr(Yᵏ)/k` with `Y = M₀⁻¹E`.
    pub fn log_det(&self) -> Result<Jet> {
        let (m0, rest) = self.split();
        let det0 = m0.determinant();
        if det0.norm() == 0.0 {
            return Err(Error::SingularMetric);
        }
        let inv0 = m0.try_inverse().ok_or(Error::SingularMetric)?;
        let layout = self.layout().clone();
        let y = JetMatrix::constant(&layout, &inv0).mul(&rest);
        let mut acc = Jet::constant(layout.clone(), det0.ln());
        let mut pow = JetMatrix::identity(&layout, self.n);
        for k in 1..=self.order() {
            pow = pow.mul(&y);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc += &(pow.trace() * (sign / k as f64));
        }
        Ok(acc)
    }
}

/// Positive-definiteness of a Hermitian matrix via its eigenvalues
/// (nalgebra's complex Cholesky happily takes square roots of negative
/// pivots, so it cannot be used as the test).
pub fn is_positive_definite(m: &DMatrix<C64>) -> bool {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    herm.symmetric_eigenvalues().iter().all(|&l| l > 0.0)
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{jet_conj_var, jet_var};

    fn sample() -> JetMatrix {
        let z = jet_var(0, C64::new(0.3, 0.1), 2, 3).unwrap();
        let w = jet_var(1, C64::new(-0.2, 0.4), 2, 3).unwrap();
        let zb = jet_conj_var(0, C64::new(0.3, -0.1), 2, 3).unwrap();
        let wb = jet_conj_var(1, C64::new(-0.2, -0.4), 2, 3).unwrap();
        JetMatrix::new(
            2,
            vec![
                &(&z * &zb) + 2.0,
                &z * &wb,
                &w * &zb,
                &(&w * &wb) + 1.5,
            ],
        )
    }

    #[test]
    fn neumann_inverse() {
        let m = sample();
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        let id = JetMatrix::identity(m.layout(), 2);
        for (a, b) in prod.entries().iter().zip(id.entries()) {
            assert!(a.approx_eq(b, 1e-14));
        }
    }

    #[test]
    fn log_det_matches_direct_determinant() {
        let m = sample();
        let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
        let direct = det.ln().unwrap();
        assert!(m.log_det().unwrap().approx_eq(&direct, 1e-14));
    }

    #[test]
    fn hermitian_sample() {
        assert!(sample().hermitian_defect() < 1e-15);
        assert!(is_positive_definite(&sample().value()));
    }

    #[test]
    fn singular_value_part() {
        let l = Layout::get(4, 2);
        let m = JetMatrix::constant(&l, &DMatrix::from_element(2, 2, C64::new(1.0, 0.0)));
        assert_eq!(m.inverse().unwrap_err(), Error::SingularMetric);
        assert!(!is_positive_definite(&m.value()));
    }
}
