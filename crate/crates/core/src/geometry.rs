//! Chern and Levi-Civita calculus on `(T^{1,0}X, h)` from a metric jet.
//!
//! Index conventions: `hinv[k][l] = h^{kℓ̄}` with `h^{kℓ̄} h_{mℓ̄} = δ^k_m`,
//! i.e. the transpose of the matrix inverse of `(h_{ij̄})`. Christoffel
//! arrays are indexed `[k][i][j]` for `Γ^k_{ij}` and `Γ^k_{īj}`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, C64};
use crate::linalg::JetMatrix;
use crate::metric::{Form01, Form10, Form11, MetricJet, Tensor4};
use crate::riemann;

const I: C64 = C64::new(0.0, 1.0);

/// Engine switches used for mutation testing of the verification suite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    /// Flip the sign of the mixed Levi-Civita symbols `Γ^k_{īj}`.
    pub flip_mixed_christoffel: bool,
}

/// Connection coefficients, each kept as an order-1 jet so one further
/// derivative can be taken.
#[derive(Clone, Debug)]
pub struct Christoffels {
    n: usize,
    chern: Vec<Jet>,
    lc_hol: Vec<Jet>,
    lc_anti: Vec<Jet>,
}

impl Christoffels {
    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.n + i) * self.n + j
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Chern `Γ^k_{ij} = h^{kℓ̄} ∂ᵢ h_{jℓ̄}`.
    pub fn chern(&self, k: usize, i: usize, j: usize) -> &Jet {
        &self.chern[self.idx(k, i, j)]
    }

    /// Levi-Civita `Γ^k_{ij}`, symmetric in `(i, j)`.
    pub fn lc_hol(&self, k: usize, i: usize, j: usize) -> &Jet {
        &self.lc_hol[self.idx(k, i, j)]
    }

    /// Levi-Civita `Γ^k_{īj}`.
    pub fn lc_anti(&self, k: usize, i: usize, j: usize) -> &Jet {
        &self.lc_anti[self.idx(k, i, j)]
    }
}

/// Upper-index curvature `𝔯R^ℓ_{ij̄k}` stored at `(i, j, k, ℓ)`, and its
/// lowered form `𝔯R_{ij̄kℓ̄} = h_{sℓ̄} 𝔯R^s_{ij̄k}`.
#[derive(Clone, Debug)]
pub struct LcCurvature {
    pub upper: Tensor4,
    pub lowered: Tensor4,
}

#[derive(Clone, Debug)]
pub struct Torsion {
    /// `T^k_{ij}` at `[k][i][j]`.
    pub t: Vec<C64>,
    pub norm_sq: f64,
}

/// Scalar invariants at a point. Pairings follow the conventions of
/// [`Geometry::inner`] and [`Geometry::del_star_norm_sq`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scalars {
    pub s_c: f64,
    pub s_lc: f64,
    pub s: f64,
    pub torsion_sq: f64,
    pub delstar_sq: f64,
    /// `⟨∂∂*ω + ∂̄∂̄*ω, ω⟩`.
    pub dd_pair: f64,
    /// `⟨∂∂*ω, ω⟩`.
    pub d_del_pair: f64,
    /// Largest imaginary part discarded when forming the scalars.
    pub imag_defect: f64,
}

/// All connection/curvature quantities of one metric jet.
pub struct Geometry<'a> {
    metric: &'a MetricJet,
    n: usize,
    hinv: JetMatrix,
    /// `∂_{zⁱ} h_{jℓ̄}` at `[i][j][l]`, order 1.
    dh: Vec<Jet>,
    /// `∂_{z̄ⁱ} h_{jℓ̄}` at `[i][j][l]`, order 1.
    dbh: Vec<Jet>,
    chris: Christoffels,
}

impl<'a> Geometry<'a> {
    pub fn new(metric: &'a MetricJet) -> Result<Self> {
        Geometry::with_options(metric, Options::default())
    }

    pub fn with_options(metric: &'a MetricJet, opts: Options) -> Result<Self> {
        if metric.order() < 2 {
            return Err(Error::InsufficientOrder(metric.order()));
        }
        let n = metric.n();
        let hinv = metric.h().inverse()?.transpose();
        let idx3 = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let mut dh = Vec::with_capacity(n * n * n);
        let mut dbh = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    dh.push(metric.entry(j, l).dz(i).truncate(1));
                    dbh.push(metric.entry(j, l).dzb(i).truncate(1));
                }
            }
        }
        let hinv1 = hinv.truncate(1);
        let contract = |k: usize, f: &dyn Fn(usize) -> Jet| {
            let mut acc = hinv1.get(k, 0) * &f(0);
            for l in 1..n {
                acc += &(hinv1.get(k, l) * &f(l));
            }
            acc
        };
        let mut chern = Vec::with_capacity(n * n * n);
        let mut lc_hol = Vec::with_capacity(n * n * n);
        let mut lc_anti = Vec::with_capacity(n * n * n);
        let anti_sign = if opts.flip_mixed_christoffel { -0.5 } else { 0.5 };
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    chern.push(contract(k, &|l| dh[idx3(i, j, l)].clone()));
                    lc_hol.push(
                        contract(k, &|l| &dh[idx3(i, j, l)] + &dh[idx3(j, i, l)]) * 0.5,
                    );
                    // ∂_{z̄ⁱ} h_{jℓ̄} − ∂_{z̄ℓ} h_{jī}
                    lc_anti.push(
                        contract(k, &|l| &dbh[idx3(i, j, l)] - &dbh[idx3(l, j, i)]) * anti_sign,
                    );
                }
            }
        }
        Ok(Geometry {
            metric,
            n,
            hinv,
            dh,
            dbh,
            chris: Christoffels {
                n,
                chern,
                lc_hol,
                lc_anti,
            },
        })
    }

    fn i3(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    pub fn metric(&self) -> &MetricJet {
        self.metric
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn christoffels(&self) -> &Christoffels {
        &self.chris
    }

    /// Values `h^{kℓ̄}`.
    pub fn hinv_value(&self) -> DMatrix<C64> {
        self.hinv.value()
    }

    /// `R_{ij̄kℓ̄} = −∂ᵢ∂_{j̄} h_{kℓ̄} + h^{pq̄} ∂ᵢh_{kq̄} ∂_{j̄}h_{pℓ̄}`.
    pub fn chern_curvature(&self) -> Tensor4 {
        let n = self.n;
        let g = self.hinv_value();
        let mut r = Tensor4::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = -self.metric.entry(k, l).dz(i).dzb(j).value();
                        for p in 0..n {
                            for q in 0..n {
                                v += g[(p, q)]
                                    * self.dh[self.i3(i, k, q)].value()
                                    * self.dbh[self.i3(j, p, l)].value();
                            }
                        }
                        r.set(i, j, k, l, v);
                    }
                }
            }
        }
        r
    }

    /// Chern–Ricci form from `−∂ᵢ∂_{j̄} log det h`.
    pub fn chern_ricci(&self) -> Result<Form11> {
        let ld = self.metric.h().log_det()?;
        Ok(Form11::from_fn(self.n, |i, j| -ld.dz(i).dzb(j).value()))
    }

    /// Chern–Ricci form as the trace `h^{kℓ̄} R_{ij̄kℓ̄}`.
    pub fn chern_ricci_trace(&self) -> Form11 {
        let r = self.chern_curvature();
        let g = self.hinv_value();
        Form11::from_fn(self.n, |i, j| {
            let mut v = C64::new(0.0, 0.0);
            for k in 0..self.n {
                for l in 0..self.n {
                    v += g[(k, l)] * r.get(i, j, k, l);
                }
            }
            v
        })
    }

    /// `𝔯R^ℓ_{ij̄k} = −(∂_{j̄}Γ^ℓ_{ik} − ∂ᵢΓ^ℓ_{j̄k} + Γ^s_{ik}Γ^ℓ_{j̄s} − Γ^s_{j̄k}Γ^ℓ_{si})`.
    pub fn lc_curvature(&self) -> LcCurvature {
        let n = self.n;
        let c = &self.chris;
        let mut upper = Tensor4::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = c.lc_hol(l, i, k).dzb(j).value()
                            - c.lc_anti(l, j, k).dz(i).value();
                        for s in 0..n {
                            v += c.lc_hol(s, i, k).value() * c.lc_anti(l, j, s).value()
                                - c.lc_anti(s, j, k).value() * c.lc_hol(l, s, i).value();
                        }
                        upper.set(i, j, k, l, -v);
                    }
                }
            }
        }
        let h = self.metric.value();
        let mut lowered = Tensor4::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = C64::new(0.0, 0.0);
                        for s in 0..n {
                            v += h[(s, l)] * upper.get(i, j, k, s);
                        }
                        lowered.set(i, j, k, l, v);
                    }
                }
            }
        }
        LcCurvature { upper, lowered }
    }

    /// First Levi-Civita Ricci form `𝔯R^{(1)}_{ij̄} = 𝔯R^k_{ij̄k}`.
    pub fn lc_ricci(&self) -> Form11 {
        let r = self.lc_curvature();
        Form11::from_fn(self.n, |i, j| {
            (0..self.n)
                .map(|k| r.upper.get(i, j, k, k))
                .fold(C64::new(0.0, 0.0), |a, b| a + b)
        })
    }

    /// Jets of `∂*ω = aⱼ dz̄ʲ` and `∂̄*ω = bᵢ dzⁱ` (order 1).
    pub fn del_star_jets(&self) -> (Vec<Jet>, Vec<Jet>) {
        let n = self.n;
        let c = &self.chris;
        let a: Vec<Jet> = (0..n)
            .map(|j| {
                let mut tr = c.lc_anti(0, j, 0).clone();
                for k in 1..n {
                    tr += c.lc_anti(k, j, k);
                }
                tr * (-2.0 * I)
            })
            .collect();
        let b: Vec<Jet> = (0..n)
            .map(|i| {
                let mut tr = c.lc_anti(0, i, 0).clone();
                for k in 1..n {
                    tr += c.lc_anti(k, i, k);
                }
                tr.conj() * (2.0 * I)
            })
            .collect();
        (a, b)
    }

    /// `∂*ω = −2√−1 Γ^k_{j̄k} dz̄ʲ` and `∂̄*ω = 2√−1 conj(Γ^k_{īk}) dzⁱ`.
    pub fn del_star(&self) -> (Form01, Form10) {
        let (a, b) = self.del_star_jets();
        (
            Form01 {
                a: a.iter().map(Jet::value).collect(),
            },
            Form10 {
                b: b.iter().map(Jet::value).collect(),
            },
        )
    }

    /// The (1,1)-forms `∂∂*ω` and `∂̄∂̄*ω` separately.
    pub fn d_del_star_parts(&self) -> (Form11, Form11) {
        let (a, b) = self.del_star_jets();
        // ∂(aⱼ dz̄ʲ) = ∂ᵢaⱼ dzⁱ∧dz̄ʲ ; ∂̄(bᵢ dzⁱ) = −∂_{j̄}bᵢ dzⁱ∧dz̄ʲ
        let dd = Form11::from_fn(self.n, |i, j| -I * a[j].dz(i).value());
        let bb = Form11::from_fn(self.n, |i, j| I * b[i].dzb(j).value());
        (dd, bb)
    }

    /// `½(∂∂*ω + ∂̄∂̄*ω)`.
    pub fn d_del_star(&self) -> Form11 {
        let (dd, bb) = self.d_del_star_parts();
        (&dd + &bb).scale(0.5)
    }

    /// `Ric(ω) − ½(∂∂*ω + ∂̄∂̄*ω)`, the relation route to `𝔯ic(ω)`.
    pub fn lc_ricci_via_relation(&self) -> Result<Form11> {
        Ok(&self.chern_ricci()? - &self.d_del_star())
    }

    /// `T^k_{ij} = h^{kℓ̄}(∂ᵢh_{jℓ̄} − ∂ⱼh_{iℓ̄})` and
    /// `|T|² = h_{kℓ̄} h^{ip̄} h^{jq̄} T^k_{ij} conj(T^ℓ_{pq})` over all index values.
    pub fn torsion(&self) -> Torsion {
        let n = self.n;
        let g = self.hinv_value();
        let h = self.metric.value();
        let mut t = vec![C64::new(0.0, 0.0); n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut v = C64::new(0.0, 0.0);
                    for l in 0..n {
                        v += g[(k, l)]
                            * (self.dh[self.i3(i, j, l)].value() - self.dh[self.i3(j, i, l)].value());
                    }
                    t[self.i3(k, i, j)] = v;
                }
            }
        }
        let mut norm = C64::new(0.0, 0.0);
        for k in 0..n {
            for l in 0..n {
                for i in 0..n {
                    for p in 0..n {
                        for j in 0..n {
                            for q in 0..n {
                                norm += h[(k, l)]
                                    * g[(i, p)]
                                    * g[(j, q)]
                                    * t[self.i3(k, i, j)]
                                    * t[self.i3(l, p, q)].conj();
                            }
                        }
                    }
                }
            }
        }
        Torsion {
            t,
            norm_sq: norm.re,
        }
    }

    /// `|∂*ω|² = h^{ij̄} conj(a_ī) a_j̄` for `∂*ω = a_j̄ dz̄ʲ`.
    pub fn del_star_norm_sq(&self) -> f64 {
        let (a, _) = self.del_star();
        let g = self.hinv_value();
        let mut v = C64::new(0.0, 0.0);
        for i in 0..self.n {
            for j in 0..self.n {
                v += g[(i, j)] * a.a[i].conj() * a.a[j];
            }
        }
        v.re
    }

    /// `⟨α, β⟩ = h^{ik̄} h^{ℓj̄} α_{ij̄} conj(β_{kℓ̄})`; with `β = ω` this is
    /// the trace `h^{ij̄} α_{ij̄}`.
    pub fn inner(&self, alpha: &Form11, beta: &Form11) -> C64 {
        let g = self.hinv_value();
        let n = self.n;
        let mut v = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        v += g[(i, k)] * g[(l, j)] * alpha.a[(i, j)] * beta.a[(k, l)].conj();
                    }
                }
            }
        }
        v
    }

    /// `⟨α, ω⟩ = h^{ij̄} α_{ij̄}`.
    pub fn trace(&self, alpha: &Form11) -> C64 {
        let g = self.hinv_value();
        let mut v = C64::new(0.0, 0.0);
        for i in 0..self.n {
            for j in 0..self.n {
                v += g[(i, j)] * alpha.a[(i, j)];
            }
        }
        v
    }

    pub fn metric_form(&self) -> Form11 {
        Form11::new(self.metric.value())
    }

    pub fn riemannian_scalar(&self) -> Result<f64> {
        riemann::scalar_curvature(self.metric)
    }

    pub fn scalars(&self) -> Result<Scalars> {
        let ric = self.chern_ricci()?;
        let s_c = self.trace(&ric);
        let lc = self.lc_curvature();
        let g = self.hinv_value();
        let n = self.n;
        let mut s_lc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        s_lc += g[(i, j)] * g[(k, l)] * lc.lowered.get(i, j, k, l);
                    }
                }
            }
        }
        let (dd, bb) = self.d_del_star_parts();
        let dd_pair = self.trace(&(&dd + &bb));
        let d_del_pair = self.trace(&dd);
        let imag_defect = [s_c.im, s_lc.im, dd_pair.im]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        Ok(Scalars {
            s_c: s_c.re,
            s_lc: s_lc.re,
            s: self.riemannian_scalar()?,
            torsion_sq: self.torsion().norm_sq,
            delstar_sq: self.del_star_norm_sq(),
            dd_pair: dd_pair.re,
            d_del_pair: d_del_pair.re,
            imag_defect: imag_defect.max(d_del_pair.im.abs()),
        })
    }
}
