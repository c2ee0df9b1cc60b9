//! Scalar fields `f: Ω ⊆ E_n → R`.

mod expr;

pub use expr::{BinOp, Expr, Expression, Func};

use crate::error::{Error, Result};
use crate::ga::VecN;

/// Coordinate tolerance when matching a query point against tabulated samples.
pub const TABULATED_MATCH_TOL: f64 = 1e-12;

/// Closed-form fields with analytic gradients.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    /// `sqrt(1 − x1²)` on `[−1, 1] × R`.
    Schwarz,
    /// `g · x + c`.
    Linear { g: Vec<f64>, c: f64 },
    /// `½ xᵀ Q x`, `q` row-major `n × n`.
    Quadratic { q: Vec<f64> },
    /// `sin(x1) exp(x2)`.
    SinExp,
}

/// Values known only at listed points.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    samples: Vec<(VecN, f64)>,
}

impl Tabulated {
    pub fn samples(&self) -> &[(VecN, f64)] {
        &self.samples
    }

    fn lookup(&self, p: &VecN) -> Option<f64> {
        self.samples
            .iter()
            .find(|(q, _)| q.max_abs_diff(p) <= TABULATED_MATCH_TOL)
            .map(|(_, v)| *v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldKind {
    Builtin(Builtin),
    Expression(Expression),
    Tabulated(Tabulated),
}

/// A deterministic scalar field of `dim` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    dim: usize,
    name: String,
    kind: FieldKind,
}

impl ScalarField {
    pub fn schwarz() -> Self {
        Self { dim: 2, name: "schwarz".into(), kind: FieldKind::Builtin(Builtin::Schwarz) }
    }

    pub fn sin_exp() -> Self {
        Self { dim: 2, name: "sin-exp".into(), kind: FieldKind::Builtin(Builtin::SinExp) }
    }

    pub fn linear(g: Vec<f64>, c: f64) -> Self {
        Self { dim: g.len(), name: "linear".into(), kind: FieldKind::Builtin(Builtin::Linear { g, c }) }
    }

    pub fn quadratic(dim: usize, q: Vec<f64>) -> Result<Self> {
        if q.len() != dim * dim {
            return Err(Error::Shape(format!("quadratic form in {dim} variables needs {} entries", dim * dim)));
        }
        Ok(Self { dim, name: "quadratic".into(), kind: FieldKind::Builtin(Builtin::Quadratic { q }) })
    }

    /// The default quadratic `½ xᵀ Q x` with `Q = [[2, ½], [½, 1]]`.
    pub fn default_quadratic() -> Self {
        Self::quadratic(2, vec![2.0, 0.5, 0.5, 1.0]).expect("2x2 form")
    }

    pub fn expression(source: &str, dim: usize) -> Result<Self> {
        let e = Expression::parse(source, dim)?;
        Ok(Self { dim, name: source.trim().to_string(), kind: FieldKind::Expression(e) })
    }

    pub fn tabulated(dim: usize, samples: Vec<(VecN, f64)>) -> Result<Self> {
        for (p, _) in &samples {
            Error::check_dim(dim, p.dim())?;
        }
        Ok(Self { dim, name: "tabulated".into(), kind: FieldKind::Tabulated(Tabulated { samples }) })
    }

    /// Resolve a field spec: a builtin name (`schwarz`, `sin-exp`,
    /// `linear:g1,…,gn[;c]`, `quadratic[:q11,…,qnn]`) or else an expression in
    /// `x1 … x{dim}`.
    pub fn from_spec(spec: &str, dim: Option<usize>) -> Result<Self> {
        let spec = spec.trim();
        let field = match spec.split_once(':').map_or((spec, None), |(h, t)| (h, Some(t))) {
            ("schwarz", None) => Some(Self::schwarz()),
            ("sin-exp", None) => Some(Self::sin_exp()),
            ("quadratic", None) => Some(Self::default_quadratic()),
            ("quadratic", Some(rest)) => {
                let q = parse_numbers(rest)?;
                let n = (q.len() as f64).sqrt().round() as usize;
                Some(Self::quadratic(n, q)?)
            }
            ("linear", Some(rest)) => {
                let (g, c) = match rest.split_once(';') {
                    Some((g, c)) => (g, parse_number(c)?),
                    None => (rest, 0.0),
                };
                Some(Self::linear(parse_numbers(g)?, c))
            }
            _ => None,
        };
        match (field, dim) {
            (Some(f), Some(d)) if f.dim != d => Err(Error::Config(format!(
                "field `{spec}` has {} variables but the input is {d}-dimensional",
                f.dim
            ))),
            (Some(f), _) => Ok(f),
            (None, Some(d)) => Self::expression(spec, d),
            (None, None) => Err(Error::Config(format!(
                "cannot infer the dimension of expression `{spec}`"
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            FieldKind::Builtin(_) => "builtin",
            FieldKind::Expression(_) => "expression",
            FieldKind::Tabulated(_) => "tabulated",
        }
    }

    pub fn eval(&self, p: &VecN) -> Result<f64> {
        Error::check_dim(self.dim, p.dim())?;
        let x = p.components();
        let domain = |detail: String| Error::Domain { point: x.to_vec(), detail };
        match &self.kind {
            FieldKind::Builtin(b) => match b {
                Builtin::Schwarz => {
                    let r = 1.0 - x[0] * x[0];
                    if r < 0.0 {
                        return Err(domain(format!("sqrt(1 - x1^2) needs |x1| <= 1, got x1 = {}", x[0])));
                    }
                    Ok(r.sqrt())
                }
                Builtin::Linear { g, c } => Ok(p.dot_unchecked(&VecN::new(g.clone())) + c),
                Builtin::Quadratic { q } => {
                    let n = self.dim;
                    let mut s = 0.0;
                    for i in 0..n {
                        for j in 0..n {
                            s += x[i] * q[i * n + j] * x[j];
                        }
                    }
                    Ok(0.5 * s)
                }
                Builtin::SinExp => Ok(x[0].sin() * x[1].exp()),
            },
            FieldKind::Expression(e) => e.eval(x).map_err(domain),
            FieldKind::Tabulated(t) => t.lookup(p).ok_or_else(|| Error::MissingSample(x.to_vec())),
        }
    }

    /// Whether `p` lies in the field's domain `Ω`.
    pub fn in_domain(&self, p: &VecN) -> bool {
        self.eval(p).is_ok()
    }

    pub fn has_gradient(&self) -> bool {
        matches!(self.kind, FieldKind::Builtin(_))
    }

    /// Analytic `∇f(p)`, available for builtins only.
    pub fn gradient(&self, p: &VecN) -> Result<VecN> {
        Error::check_dim(self.dim, p.dim())?;
        let x = p.components();
        let FieldKind::Builtin(b) = &self.kind else {
            return Err(Error::Config(format!("field `{}` has no analytic gradient", self.name)));
        };
        match b {
            Builtin::Schwarz => {
                let r = 1.0 - x[0] * x[0];
                if r <= 0.0 {
                    return Err(Error::Domain {
                        point: x.to_vec(),
                        detail: "gradient of sqrt(1 - x1^2) needs |x1| < 1".into(),
                    });
                }
                Ok(VecN::new(vec![-x[0] / r.sqrt(), 0.0]))
            }
            Builtin::Linear { g, .. } => Ok(VecN::new(g.clone())),
            Builtin::Quadratic { q } => {
                let n = self.dim;
                Ok(VecN::new(
                    (0..n)
                        .map(|i| 0.5 * (0..n).map(|j| (q[i * n + j] + q[j * n + i]) * x[j]).sum::<f64>())
                        .collect(),
                ))
            }
            Builtin::SinExp => Ok(VecN::new(vec![x[0].cos() * x[1].exp(), x[0].sin() * x[1].exp()])),
        }
    }
}

/// The named builtin fields with their default parameters.
pub fn builtin_catalog() -> Vec<ScalarField> {
    vec![
        ScalarField::schwarz(),
        ScalarField::linear(vec![2.0, -3.0], 0.0),
        ScalarField::default_quadratic(),
        ScalarField::sin_exp(),
    ]
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("`{}` is not a number", s.trim())))
}

fn parse_numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_number).collect()
}
