//! Declarative metric descriptions and their textual form.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! spec   := kind [ "{" [ pair ("," pair)* ] "}" ]
//! pair   := key "=" value
//! value  := spec | real | complex
//! real   := decimal | "e" | "e^" decimal
//! complex:= real | real ("+"|"-") decimal "i" | decimal "i"
//! ```
//!
//! Metric kinds:
//!
//! | kind | keys |
//! |------|------|
//! | `flat` | `n` (default 2) |
//! | `kahler-test` | `c` (default 0.1) |
//! | `hopf-standard` | `a` (diagonal deck multiplier, default e) |
//! | `hopf-omega-lambda` | `a`, `b`, `lambda` |
//! | `hopf-lc-flat` | `a`, `b` |
//! | `conformal` | `base` (metric spec), `f` (scalar field) |
//! | `user-polynomial` | `seed`, `eps` — or explicit terms `pIJ:MONO=c` |
//!
//! Scalar fields: `zero`, `random-poly{seed=..,eps=..}`, `log-delta{scale=..}`.
//! A user-polynomial term `p12:z1*zb2=0.1+0.2i` adds `c·z¹z̄²` to `P₁₂` in
//! `h = I + P + P*`; monomial factors are `z1`, `z2`, `zb1`, `zb2`, with
//! `1` for the constant monomial.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jet::C64;
use crate::zoo::hopf::HopfParams;

#[derive(Clone, Debug, PartialEq)]
pub enum MetricSpec {
    Flat { n: usize },
    KahlerTest { c: f64 },
    /// `δᵢⱼ/(|z|²+|w|²)`, descending to the diagonal surface `H_{a,a}`.
    HopfStandard { a: f64 },
    HopfOmegaLambda { hopf: HopfParams, lambda: f64 },
    HopfLcFlat { hopf: HopfParams },
    Conformal { base: Box<MetricSpec>, f: ScalarField },
    UserPolynomial(PolyMetric),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarField {
    Zero,
    RandomPoly { seed: u64, eps: f64 },
    /// `scale · log Δ` for the Hopf parameters of the base metric.
    LogDelta { scale: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyTerm {
    pub row: usize,
    pub col: usize,
    /// Exponents of `(z¹, z², z̄¹, z̄²)`.
    pub exps: [u8; 4],
    pub coeff: C64,
}

/// `h = I + P + P*` with `P` a polynomial matrix in `(z, z̄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMetric {
    pub terms: Vec<PolyTerm>,
    /// `(seed, eps)` when generated by [`PolyMetric::random`].
    pub origin: Option<(u64, f64)>,
}

/// Monomials of total degree ≤ `deg` in four variables.
pub(crate) fn monomials4(deg: u8) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg - a {
            for c in 0..=deg - a - b {
                for d in 0..=deg - a - b - c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

impl PolyMetric {
    /// Degree-2 random polynomial perturbation with coefficients uniform in
    /// the square `[−eps, eps]²` of ℂ.
    pub fn random(seed: u64, eps: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut terms = Vec::new();
        for row in 0..2 {
            for col in 0..2 {
                for exps in monomials4(2) {
                    let coeff = C64::new(rng.random_range(-eps..=eps), rng.random_range(-eps..=eps));
                    terms.push(PolyTerm {
                        row,
                        col,
                        exps,
                        coeff,
                    });
                }
            }
        }
        PolyMetric {
            terms,
            origin: Some((seed, eps)),
        }
    }
}

impl ScalarField {
    /// Real polynomial `q + conj(q)` of degree ≤ 3, `q` with coefficients in
    /// `[−eps, eps]²`; returns `(exps, coeff)` for `q`.
    pub fn random_poly_terms(seed: u64, eps: f64) -> Vec<([u8; 4], C64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f1e1d);
        monomials4(3)
            .into_iter()
            .map(|e| {
                (
                    e,
                    C64::new(rng.random_range(-eps..=eps), rng.random_range(-eps..=eps)),
                )
            })
            .collect()
    }
}

impl MetricSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MetricSpec::Flat { .. } => "flat",
            MetricSpec::KahlerTest { .. } => "kahler-test",
            MetricSpec::HopfStandard { .. } => "hopf-standard",
            MetricSpec::HopfOmegaLambda { .. } => "hopf-omega-lambda",
            MetricSpec::HopfLcFlat { .. } => "hopf-lc-flat",
            MetricSpec::Conformal { .. } => "conformal",
            MetricSpec::UserPolynomial(_) => "user-polynomial",
        }
    }

    /// Deck group of the quotient this metric lives on, if any.
    pub fn hopf(&self) -> Option<HopfParams> {
        match self {
            MetricSpec::HopfOmegaLambda { hopf, .. } | MetricSpec::HopfLcFlat { hopf } => {
                Some(*hopf)
            }
            MetricSpec::HopfStandard { a } => HopfParams::real(*a, *a).ok(),
            MetricSpec::Conformal { base, .. } => base.hopf(),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            MetricSpec::Flat { n } => *n,
            MetricSpec::Conformal { base, .. } => base.dim(),
            _ => 2,
        }
    }

    pub fn hopf_lc_flat(a: f64, b: f64) -> Result<Self> {
        Ok(MetricSpec::HopfLcFlat {
            hopf: HopfParams::real(a, b)?,
        })
    }

    pub fn hopf_omega_lambda(a: f64, b: f64, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(MetricSpec::HopfOmegaLambda {
            hopf: HopfParams::real(a, b)?,
            lambda,
        })
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > -1.0) {
        return Err(Error::param("lambda", format!("{lambda} must exceed -1")));
    }
    Ok(())
}

// ---- formatting ----

struct Num(f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Cx(C64);

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        if c.im == 0.0 {
            write!(f, "{}", c.re)
        } else if c.im < 0.0 {
            write!(f, "{}-{}i", c.re, -c.im)
        } else {
            write!(f, "{}+{}i", c.re, c.im)
        }
    }
}

fn mono_name(exps: &[u8; 4]) -> String {
    const NAMES: [&str; 4] = ["z1", "z2", "zb1", "zb2"];
    let mut parts = Vec::new();
    for (v, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            parts.push(NAMES[v]);
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Zero => write!(f, "zero"),
            ScalarField::RandomPoly { seed, eps } => {
                write!(f, "random-poly{{seed={seed},eps={}}}", Num(*eps))
            }
            ScalarField::LogDelta { scale } => write!(f, "log-delta{{scale={}}}", Num(*scale)),
        }
    }
}

impl fmt::Display for MetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricSpec::Flat { n } => write!(f, "flat{{n={n}}}"),
            MetricSpec::KahlerTest { c } => write!(f, "kahler-test{{c={}}}", Num(*c)),
            MetricSpec::HopfStandard { a } => write!(f, "hopf-standard{{a={}}}", Num(*a)),
            MetricSpec::HopfOmegaLambda { hopf, lambda } => write!(
                f,
                "hopf-omega-lambda{{a={},b={},lambda={}}}",
                Cx(hopf.a()),
                Cx(hopf.b()),
                Num(*lambda)
            ),
            MetricSpec::HopfLcFlat { hopf } => {
                write!(f, "hopf-lc-flat{{a={},b={}}}", Cx(hopf.a()), Cx(hopf.b()))
            }
            MetricSpec::Conformal { base, f: field } => {
                write!(f, "conformal{{base={base},f={field}}}")
            }
            MetricSpec::UserPolynomial(p) => match p.origin {
                Some((seed, eps)) => write!(f, "user-polynomial{{seed={seed},eps={}}}", Num(eps)),
                None => {
                    let terms: Vec<String> = p
                        .terms
                        .iter()
                        .map(|t| {
                            format!(
                                "p{}{}:{}={}",
                                t.row + 1,
                                t.col + 1,
                                mono_name(&t.exps),
                                Cx(t.coeff)
                            )
                        })
                        .collect();
                    write!(f, "user-polynomial{{{}}}", terms.join(","))
                }
            },
        }
    }
}

// ---- parsing ----

/// Generic `kind{key=value,...}` node; values are kept as raw text.
#[derive(Debug)]
struct Node {
    kind: String,
    pairs: Vec<(String, String)>,
}

fn parse_node(src: &str) -> Result<Node> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let (kind, body) = match s.find('{') {
        None => (s.clone(), None),
        Some(open) => {
            if !s.ends_with('}') {
                return Err(Error::Parse(format!("unbalanced braces in `{src}`")));
            }
            (s[..open].to_string(), Some(&s[open + 1..s.len() - 1]))
        }
    };
    if kind.is_empty() {
        return Err(Error::Parse(format!("missing kind in `{src}`")));
    }
    let mut pairs = Vec::new();
    if let Some(body) = body {
        let mut depth = 0i32;
        let mut start = 0;
        let bytes = body.as_bytes();
        let mut items = Vec::new();
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                b'{' => depth += 1,
                b'}' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(Error::Parse(format!("unbalanced braces in `{src}`")));
                    }
                }
                b',' if depth == 0 => {
                    items.push(&body[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced braces in `{src}`")));
        }
        if start < body.len() {
            items.push(&body[start..]);
        }
        for item in items {
            let eq = item
                .find('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{item}`")))?;
            pairs.push((item[..eq].to_string(), item[eq + 1..].to_string()));
        }
    }
    Ok(Node { kind, pairs })
}

/// Decimal literal, `e`, or `e^x`.
pub fn parse_real(field: &str, s: &str) -> Result<f64> {
    let bad = || Error::param(field, format!("`{s}` is not a number"));
    let v = if s == "e" {
        std::f64::consts::E
    } else if let Some(rest) = s.strip_prefix("e^") {
        rest.parse::<f64>().map_err(|_| bad())?.exp()
    } else {
        s.parse::<f64>().map_err(|_| bad())?
    };
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

pub fn parse_complex(field: &str, s: &str) -> Result<C64> {
    let bad = || Error::param(field, format!("`{s}` is not a complex number"));
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'^') {
                split = Some(i);
                break;
            }
        }
        return match split {
            Some(i) => {
                let re = parse_real(field, &body[..i])?;
                let im = body[i..].parse::<f64>().map_err(|_| bad())?;
                Ok(C64::new(re, im))
            }
            None => Ok(C64::new(0.0, body.parse::<f64>().map_err(|_| bad())?)),
        };
    }
    Ok(C64::new(parse_real(field, s)?, 0.0))
}

fn parse_u64(field: &str, s: &str) -> Result<u64> {
    s.parse::<u64>()
        .map_err(|_| Error::param(field, format!("`{s}` is not a non-negative integer")))
}

struct Keys<'a> {
    kind: &'a str,
    pairs: &'a [(String, String)],
    used: Vec<bool>,
}

impl<'a> Keys<'a> {
    fn new(node: &'a Node) -> Self {
        Keys {
            kind: &node.kind,
            pairs: &node.pairs,
            used: vec![false; node.pairs.len()],
        }
    }

    fn take(&mut self, key: &str) -> Option<&'a str> {
        for (i, (k, v)) in self.pairs.iter().enumerate() {
            if k == key && !self.used[i] {
                self.used[i] = true;
                return Some(v.as_str());
            }
        }
        None
    }

    fn require(&mut self, key: &str) -> Result<&'a str> {
        self.take(key)
            .ok_or_else(|| Error::param(key, format!("required by `{}`", self.kind)))
    }

    fn finish(&self) -> Result<()> {
        for (i, (k, _)) in self.pairs.iter().enumerate() {
            if !self.used[i] {
                return Err(Error::param(k.clone(), format!("unknown key for `{}`", self.kind)));
            }
        }
        Ok(())
    }
}

fn parse_mono(field: &str, s: &str) -> Result<[u8; 4]> {
    let mut exps = [0u8; 4];
    if s == "1" {
        return Ok(exps);
    }
    for factor in s.split('*') {
        let v = match factor {
            "z1" => 0,
            "z2" => 1,
            "zb1" => 2,
            "zb2" => 3,
            _ => return Err(Error::param(field, format!("unknown monomial factor `{factor}`"))),
        };
        exps[v] += 1;
    }
    Ok(exps)
}

fn parse_poly(node: &Node) -> Result<PolyMetric> {
    let has_seed = node.pairs.iter().any(|(k, _)| k == "seed" || k == "eps");
    if has_seed {
        let mut keys = Keys::new(node);
        let seed = parse_u64("seed", keys.require("seed")?)?;
        let eps = keys.take("eps").map(|v| parse_real("eps", v)).transpose()?.unwrap_or(0.05);
        keys.finish()?;
        if !(eps > 0.0) {
            return Err(Error::param("eps", "must be positive"));
        }
        return Ok(PolyMetric::random(seed, eps));
    }
    let mut terms = Vec::new();
    for (k, v) in &node.pairs {
        let (idx, mono) = k
            .split_once(':')
            .ok_or_else(|| Error::param(k.clone(), "expected pIJ:MONOMIAL"))?;
        let ij = idx
            .strip_prefix('p')
            .filter(|d| d.len() == 2)
            .ok_or_else(|| Error::param(k.clone(), "expected pIJ with I, J in {1, 2}"))?;
        let digit = |c: char| match c {
            '1' => Ok(0),
            '2' => Ok(1),
            _ => Err(Error::param(k.clone(), "matrix index must be 1 or 2")),
        };
        let mut chars = ij.chars();
        let row = digit(chars.next().unwrap())?;
        let col = digit(chars.next().unwrap())?;
        let exps = parse_mono(k, mono)?;
        if exps.iter().map(|&e| e as u32).sum::<u32>() > 4 {
            return Err(Error::param(k.clone(), "monomial degree above 4"));
        }
        terms.push(PolyTerm {
            row,
            col,
            exps,
            coeff: parse_complex(k, v)?,
        });
    }
    Ok(PolyMetric {
        terms,
        origin: None,
    })
}

impl FromStr for ScalarField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let node = parse_node(s)?;
        let mut keys = Keys::new(&node);
        let out = match node.kind.as_str() {
            "zero" => ScalarField::Zero,
            "random-poly" => {
                let seed = parse_u64("seed", keys.require("seed")?)?;
                let eps = keys.take("eps").map(|v| parse_real("eps", v)).transpose()?.unwrap_or(0.1);
                ScalarField::RandomPoly { seed, eps }
            }
            "log-delta" => ScalarField::LogDelta {
                scale: keys
                    .take("scale")
                    .map(|v| parse_real("scale", v))
                    .transpose()?
                    .unwrap_or(1.0),
            },
            other => return Err(Error::param("f", format!("unknown scalar field `{other}`"))),
        };
        keys.finish()?;
        Ok(out)
    }
}

fn take_hopf(keys: &mut Keys<'_>) -> Result<HopfParams> {
    let a = parse_complex("a", keys.require("a")?)?;
    let b = parse_complex("b", keys.require("b")?)?;
    HopfParams::new(a, b)
}

impl FromStr for MetricSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let node = parse_node(s)?;
        if node.kind == "user-polynomial" {
            return Ok(MetricSpec::UserPolynomial(parse_poly(&node)?));
        }
        let mut keys = Keys::new(&node);
        let out = match node.kind.as_str() {
            "flat" => {
                let n = keys
                    .take("n")
                    .map(|v| parse_u64("n", v))
                    .transpose()?
                    .unwrap_or(2) as usize;
                if n == 0 {
                    return Err(Error::param("n", "must be positive"));
                }
                MetricSpec::Flat { n }
            }
            "kahler-test" => MetricSpec::KahlerTest {
                c: keys.take("c").map(|v| parse_real("c", v)).transpose()?.unwrap_or(0.1),
            },
            "hopf-standard" => {
                let a = keys
                    .take("a")
                    .map(|v| parse_real("a", v))
                    .transpose()?
                    .unwrap_or(std::f64::consts::E);
                HopfParams::real(a, a)?;
                MetricSpec::HopfStandard { a }
            }
            "hopf-omega-lambda" => {
                let hopf = take_hopf(&mut keys)?;
                let lambda = parse_real("lambda", keys.require("lambda")?)?;
                check_lambda(lambda)?;
                MetricSpec::HopfOmegaLambda { hopf, lambda }
            }
            "hopf-lc-flat" => MetricSpec::HopfLcFlat {
                hopf: take_hopf(&mut keys)?,
            },
            "conformal" => {
                let base: MetricSpec = keys.require("base")?.parse()?;
                let f: ScalarField = keys.take("f").map(str::parse).transpose()?.unwrap_or(ScalarField::Zero);
                if matches!(f, ScalarField::LogDelta { .. }) && base.hopf().is_none() {
                    return Err(Error::param("f", "log-delta needs a Hopf base metric"));
                }
                MetricSpec::Conformal {
                    base: Box::new(base),
                    f,
                }
            }
            other => return Err(Error::param("metric", format!("unknown metric kind `{other}`"))),
        };
        keys.finish()?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let s: MetricSpec = "hopf-lc-flat{a=7.389056,b=2.718282}".parse().unwrap();
        match &s {
            MetricSpec::HopfLcFlat { hopf } => {
                assert_eq!(hopf.a(), C64::new(7.389056, 0.0));
                assert_eq!(hopf.b(), C64::new(2.718282, 0.0));
            }
            other => panic!("{other:?}"),
        }
        let s: MetricSpec = "hopf-omega-lambda{a=e^2, b=e, lambda=0.0}".parse().unwrap();
        assert_eq!(s.kind(), "hopf-omega-lambda");
        assert_eq!("flat".parse::<MetricSpec>().unwrap(), MetricSpec::Flat { n: 2 });
        let c: MetricSpec =
            "conformal{base=hopf-omega-lambda{a=e^2,b=e,lambda=-0.5},f=log-delta{scale=3}}"
                .parse()
                .unwrap();
        assert!(c.hopf().is_some());
        let a: C64 = parse_complex("a", "1.5-2i").unwrap();
        assert_eq!(a, C64::new(1.5, -2.0));
        assert_eq!(parse_complex("a", "1e-3+2e-1i").unwrap(), C64::new(1e-3, 0.2));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = "hopf-lc-flat{a=2,b=3}".parse::<MetricSpec>().unwrap_err();
        assert!(matches!(err, Error::InvalidParam { ref field, .. } if field == "a"), "{err}");
        let err = "hopf-omega-lambda{a=3,b=2,lambda=-1}".parse::<MetricSpec>().unwrap_err();
        assert!(matches!(err, Error::InvalidParam { ref field, .. } if field == "lambda"));
        let err = "hopf-lc-flat{a=3,b=x}".parse::<MetricSpec>().unwrap_err();
        assert!(matches!(err, Error::InvalidParam { ref field, .. } if field == "b"));
        let err = "hopf-lc-flat{a=3,b=2,c=1}".parse::<MetricSpec>().unwrap_err();
        assert!(matches!(err, Error::InvalidParam { ref field, .. } if field == "c"));
        assert!("sphere".parse::<MetricSpec>().is_err());
        assert!("flat{n=2".parse::<MetricSpec>().is_err());
        assert!("conformal{base=flat,f=log-delta{scale=1}}".parse::<MetricSpec>().is_err());
    }

    #[test]
    fn explicit_polynomial_terms() {
        let s: MetricSpec = "user-polynomial{p12:z1*zb2=0.1+0.2i,p11:1=0.3}".parse().unwrap();
        let MetricSpec::UserPolynomial(p) = &s else {
            panic!()
        };
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[0].exps, [1, 0, 0, 1]);
        assert_eq!(s.to_string().parse::<MetricSpec>().unwrap(), s);
    }

    fn arb_spec() -> impl Strategy<Value = MetricSpec> {
        let hopf = (1.01f64..20.0, 1.01f64..20.0).prop_map(|(x, y)| {
            let (a, b) = if x >= y { (x, y) } else { (y, x) };
            HopfParams::real(a, b).unwrap()
        });
        let leaf = prop_oneof![
            (1usize..4).prop_map(|n| MetricSpec::Flat { n }),
            (-1.0f64..1.0).prop_map(|c| MetricSpec::KahlerTest { c }),
            (1.01f64..10.0).prop_map(|a| MetricSpec::HopfStandard { a }),
            (hopf.clone(), -0.99f64..5.0)
                .prop_map(|(hopf, lambda)| MetricSpec::HopfOmegaLambda { hopf, lambda }),
            hopf.prop_map(|hopf| MetricSpec::HopfLcFlat { hopf }),
            (any::<u64>(), 0.001f64..1.0)
                .prop_map(|(s, e)| MetricSpec::UserPolynomial(PolyMetric::random(s, e))),
        ];
        leaf.prop_recursive(2, 4, 1, |inner| {
            (inner, any::<u64>(), 0.01f64..1.0).prop_map(|(base, seed, eps)| MetricSpec::Conformal {
                base: Box::new(base),
                f: ScalarField::RandomPoly { seed, eps },
            })
        })
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(spec in arb_spec()) {
            let text = spec.to_string();
            let back: MetricSpec = text.parse().unwrap();
            prop_assert_eq!(back, spec);
        }
    }
}
