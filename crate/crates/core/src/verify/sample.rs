//! Deterministic point samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::jet::C64;
use crate::metric::Point;
use crate::zoo::hopf::{phi_value, HopfParams};

/// Default radius of the ball around the origin kept out of box samples.
pub const DEFAULT_EXCLUSION: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Domain {
    /// Uniform in `[−w, w]^{2n}` minus the ball of radius `exclusion_radius`.
    Box {
        n: usize,
        half_width: f64,
        exclusion_radius: f64,
    },
    /// Cross-section `{1 ≤ Φ < |a||b|}` of the deck action.
    HopfFundamental(HopfParams),
}

impl Domain {
    pub fn unit_box(n: usize, half_width: f64) -> Self {
        Domain::Box {
            n,
            half_width,
            exclusion_radius: DEFAULT_EXCLUSION,
        }
    }
}

fn gaussian_direction(rng: &mut ChaCha8Rng) -> [f64; 4] {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-6 {
            return v.map(|x| x / r);
        }
    }
}

/// `n` points drawn deterministically from `domain` with `seed`.
pub fn sample_points(domain: &Domain, n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    match domain {
        Domain::Box {
            n: dim,
            half_width,
            exclusion_radius,
        } => {
            let r2min = exclusion_radius * exclusion_radius;
            while out.len() < n {
                let coords: Vec<C64> = (0..*dim)
                    .map(|_| {
                        C64::new(
                            rng.random_range(-half_width..=*half_width),
                            rng.random_range(-half_width..=*half_width),
                        )
                    })
                    .collect();
                let p = Point::new(coords);
                if p.norm_sqr() >= r2min {
                    out.push(p);
                }
            }
        }
        Domain::HopfFundamental(hp) => {
            // Φ = 1 on the unit sphere and grows along rays; every ray leaves
            // the cross-section before radius |a|.
            let period = hp.phi_period();
            let rmax = hp.a().norm().ln();
            while out.len() < n {
                let d = gaussian_direction(&mut rng);
                let r = (rng.random::<f64>() * rmax).exp();
                let p = Point::c2(C64::new(r * d[0], r * d[1]), C64::new(r * d[2], r * d[3]));
                match phi_value(&p, hp) {
                    Ok(phi) if (1.0..period).contains(&phi) => out.push(p),
                    _ => {}
                }
            }
        }
    }
    out
}
