use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::estimate::{estimate_gradient, GradientEstimate};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ga::VecN;
use crate::simplex::{secant_ratio, SampledSimplex, Simplex};

/// Vertices and cells of a simplicial complex in `E_n`. Cells hold `n+1`
/// zero-based vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialMesh {
    dim: usize,
    vertices: Vec<VecN>,
    cells: Vec<Vec<usize>>,
}

impl SimplicialMesh {
    pub fn new(dim: usize, vertices: Vec<VecN>, cells: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 || dim > crate::ga::MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::Shape(format!("vertex {i} has {} coordinates, expected {dim}", v.dim())));
            }
        }
        for (c, cell) in cells.iter().enumerate() {
            if cell.len() != dim + 1 {
                return Err(Error::Shape(format!(
                    "cell {c} has {} vertices, expected {}",
                    cell.len(),
                    dim + 1
                )));
            }
            if let Some(&bad) = cell.iter().find(|&&k| k >= vertices.len()) {
                return Err(Error::Shape(format!(
                    "cell {c} refers to vertex {bad}, mesh has {}",
                    vertices.len()
                )));
            }
        }
        Ok(Self { dim, vertices, cells })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[VecN] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_simplex(&self, c: usize) -> Result<Simplex> {
        Simplex::new(self.cells[c].iter().map(|&k| self.vertices[k].clone()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CellOutcome {
    /// Mirrored mean ratio from a field.
    Mean { estimate: GradientEstimate },
    /// Secant ratio from vertex values only.
    Naive { value: VecN, tau: f64 },
    Degenerate { tau: f64, threshold: f64 },
    Domain { message: String },
    Failed { message: String },
}

impl CellOutcome {
    pub fn value(&self) -> Option<&VecN> {
        match self {
            CellOutcome::Mean { estimate } => Some(&estimate.value),
            CellOutcome::Naive { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            CellOutcome::Mean { .. } | CellOutcome::Naive { .. } => "ok",
            CellOutcome::Degenerate { .. } => "degenerate",
            CellOutcome::Domain { .. } => "domain",
            CellOutcome::Failed { .. } => "failed",
        }
    }

    fn from_error(e: Error) -> Self {
        match e {
            Error::DegenerateSimplex { tau, threshold } => CellOutcome::Degenerate { tau, threshold },
            e if e.is_domain() => CellOutcome::Domain { message: e.to_string() },
            e => CellOutcome::Failed { message: e.to_string() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellGradient {
    pub cell: usize,
    pub centroid: VecN,
    pub tau: f64,
    pub outcome: CellOutcome,
}

/// Per-cell `r̄_f`. Bad cells become flagged rows.
pub fn mesh_gradients(mesh: &SimplicialMesh, field: &ScalarField) -> Result<Vec<CellGradient>> {
    Error::check_dim(mesh.dim, field.dim())?;
    Ok(per_cell(mesh, |_, s| {
        estimate_gradient(field, s).map(|estimate| CellOutcome::Mean { estimate })
    }))
}

/// Per-cell `r_f` from one value per mesh vertex.
pub fn mesh_secant_gradients(mesh: &SimplicialMesh, values: &[f64]) -> Result<Vec<CellGradient>> {
    if values.len() != mesh.vertices.len() {
        return Err(Error::Shape(format!(
            "{} values for {} mesh vertices",
            values.len(),
            mesh.vertices.len()
        )));
    }
    Ok(per_cell(mesh, |c, s| {
        s.ensure_nondegenerate()?;
        let vals = mesh.cells[c].iter().map(|&k| values[k]).collect();
        let value = secant_ratio(&SampledSimplex::tabulated(s.clone(), vals)?)?;
        Ok(CellOutcome::Naive { value, tau: s.tau() })
    }))
}

fn per_cell(
    mesh: &SimplicialMesh,
    run: impl Fn(usize, &Simplex) -> Result<CellOutcome> + Sync,
) -> Vec<CellGradient> {
    (0..mesh.cells.len())
        .into_par_iter()
        .map(|c| {
            let simplex = mesh.cell_simplex(c).expect("cell shape validated");
            let outcome = run(c, &simplex).unwrap_or_else(CellOutcome::from_error);
            CellGradient { cell: c, centroid: simplex.centroid(), tau: simplex.tau(), outcome }
        })
        .collect()
}
