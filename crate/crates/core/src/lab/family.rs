use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::VecN;
use crate::simplex::Simplex;

/// Minimum `|τ|/h^n` accepted for a random template.
pub const ILL_SHAPED_MIN_TAU: f64 = 1e-8;
pub const DEFAULT_ASPECT: f64 = 0.05;
const MAX_TEMPLATE_DRAWS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Regular,
    /// `β = α`
    SchwarzLinear,
    /// `β = α²`
    SchwarzQuadratic,
    /// `β = α³`
    SchwarzCubic,
    RandomIllShaped { seed: u64, aspect: f64 },
}

impl FamilyKind {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::Regular => "regular",
            FamilyKind::SchwarzLinear => "schwarz-linear",
            FamilyKind::SchwarzQuadratic => "schwarz-quadratic",
            FamilyKind::SchwarzCubic => "schwarz-cubic",
            FamilyKind::RandomIllShaped { .. } => "random-ill-shaped",
        }
    }

    /// Parse a family name as used on the command line. `seed` and `aspect`
    /// only matter for `random-ill-shaped`.
    pub fn parse(name: &str, seed: u64, aspect: f64) -> Result<Self> {
        Ok(match name {
            "regular" => FamilyKind::Regular,
            "schwarz-linear" => FamilyKind::SchwarzLinear,
            "schwarz-quadratic" => FamilyKind::SchwarzQuadratic,
            "schwarz-cubic" => FamilyKind::SchwarzCubic,
            "random-ill-shaped" => FamilyKind::RandomIllShaped { seed, aspect },
            other => return Err(Error::Config(format!("unknown family '{other}'"))),
        })
    }

    fn schwarz_exponent(&self) -> Option<i32> {
        match self {
            FamilyKind::SchwarzLinear => Some(1),
            FamilyKind::SchwarzQuadratic => Some(2),
            FamilyKind::SchwarzCubic => Some(3),
            _ => None,
        }
    }
}

/// Simplices contracting onto `center` as the scale `h` goes to zero.
///
/// * `regular`: centroid at `center`, circumradius `h`.
/// * `schwarz-*` (n = 2 only): `center`, `center + (−h, h^p)`, `center + (h, h^p)`.
/// * `random-ill-shaped`: one template drawn from the unit ball with its last
///   coordinate squashed by `aspect`, then scaled by `h` and moved to `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexFamily {
    name: String,
    kind: FamilyKind,
    center: VecN,
    template: Vec<VecN>,
}

impl SimplexFamily {
    pub fn new(kind: FamilyKind, center: VecN) -> Result<Self> {
        let n = center.dim();
        if n == 0 || n > crate::ga::MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        let template = match kind {
            FamilyKind::Regular => regular_template(n),
            FamilyKind::RandomIllShaped { seed, aspect } => {
                if !(aspect > 0.0 && aspect <= 1.0) {
                    return Err(Error::Config(format!("aspect must lie in (0, 1], got {aspect}")));
                }
                random_template(n, seed, aspect)?
            }
            _ => {
                if n != 2 {
                    return Err(Error::Config(format!(
                        "{} families live in E_2, center has dimension {n}",
                        kind.label()
                    )));
                }
                Vec::new()
            }
        };
        Ok(Self { name: kind.label().to_string(), kind, center, template })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn center(&self) -> &VecN {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// The member at scale `h`.
    pub fn generate(&self, h: f64) -> Result<Simplex> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Config(format!("scale must be positive and finite, got {h}")));
        }
        let vertices = match self.kind.schwarz_exponent() {
            Some(p) => {
                let beta = h.powi(p);
                vec![
                    self.center.clone(),
                    &self.center + &VecN::from([-h, beta]),
                    &self.center + &VecN::from([h, beta]),
                ]
            }
            None => self.template.iter().map(|t| &self.center + &t.scale(h)).collect(),
        };
        Simplex::new(vertices)
    }
}

/// Regular simplex with centroid 0 and circumradius 1: the vertices
/// `e_1 … e_n` and `t(1,…,1)` with `t = (1 − √(n+1))/n` all lie at mutual
/// distance `√2`, then get recentred and rescaled.
fn regular_template(n: usize) -> Vec<VecN> {
    let t = (1.0 - ((n + 1) as f64).sqrt()) / n as f64;
    let mut pts: Vec<VecN> = (0..n).map(|i| VecN::basis(n, i)).collect();
    pts.push(VecN::new(vec![t; n]));
    let centroid = VecN::new(vec![(1.0 + t) / (n + 1) as f64; n]);
    let radius = pts[0].distance(&centroid);
    pts.iter().map(|p| (p - &centroid).scale(1.0 / radius)).collect()
}

fn random_template(n: usize, seed: u64, aspect: f64) -> Result<Vec<VecN>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_TEMPLATE_DRAWS {
        let pts: Vec<VecN> = (0..=n)
            .map(|_| {
                let mut p = unit_ball_point(&mut rng, n);
                p[n - 1] *= aspect;
                VecN::new(p)
            })
            .collect();
        if Simplex::new(pts.clone())?.tau().abs() >= ILL_SHAPED_MIN_TAU {
            return Ok(pts);
        }
    }
    Err(Error::Config(format!(
        "no admissible template after {MAX_TEMPLATE_DRAWS} draws (aspect {aspect})"
    )))
}

fn unit_ball_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if p.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return p;
        }
    }
}
