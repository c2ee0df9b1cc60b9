//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verdict, 2 degenerate geometry, 3 field
//! domain error, 4 configuration or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ga::{det_via_quotient, lu_determinant, VecN};
use crate::lab::{
    convergence_sweep_with_reference, estimate_gradient, last_decade_rate, log_scales, mesh_gradients,
    mesh_secant_gradients, schwarz_demo, FamilyKind, SimplexFamily, SimplicialMesh, DEFAULT_ASPECT,
};
use crate::report::{
    format_sig, schwarz_table, to_json, CellRecord, ConvergeRecord, ConvergeReport, GradReport,
    MeshReport, TABLE_DIGITS,
};
use crate::simplex::Simplex;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

/// Caps the rayon pool used for sweeps and meshes.
pub const THREADS_ENV: &str = "CLIFFGRAD_THREADS";
/// Largest determinant size accepted by `detcheck`.
pub const DETCHECK_MAX_K: usize = 8;
pub const DETCHECK_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "cliffgrad", version, about = "Clifford-quotient gradient estimates on simplices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean-ratio gradient of a field on one simplex.
    Grad {
        /// Builtin name (schwarz, sin-exp, quadratic[:q..], linear:g1,..[;c]) or expression in x1..xn.
        #[arg(long)]
        field: String,
        /// Vertices as "x,y;x,y;x,y".
        #[arg(long, conflicts_with = "simplex_file", required_unless_present = "simplex_file")]
        simplex: Option<String>,
        /// File holding the same vertex syntax.
        #[arg(long)]
        simplex_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Secant and mean ratios along a contracting simplex family.
    Converge {
        #[arg(long)]
        field: String,
        /// regular, schwarz-linear, schwarz-quadratic, schwarz-cubic or random-ill-shaped.
        #[arg(long, default_value = "regular")]
        family: String,
        /// Contraction target x0 as "x,y,..". Defaults to the origin of the field's space.
        #[arg(long)]
        center: Option<String>,
        /// Gradient to compare against. Defaults to the analytic gradient of a builtin field.
        #[arg(long)]
        reference: Option<String>,
        #[arg(long, default_value_t = 1e-1)]
        h_max: f64,
        #[arg(long, default_value_t = 1e-4)]
        h_min: f64,
        #[arg(long, default_value_t = 4)]
        per_decade: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Squash factor of random-ill-shaped templates.
        #[arg(long, default_value_t = DEFAULT_ASPECT)]
        aspect: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Secant planes of the Schwarz half-cylinder along three triangle families.
    Schwarz {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Compare the Clifford-quotient determinant with LU on random matrices.
    Detcheck {
        #[arg(long, short)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Per-cell gradients on a JSON mesh.
    Meshgrad {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Mesh input document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshFile {
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    pub cells: Vec<Vec<usize>>,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub field: Option<String>,
}

/// Output of one command: text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_degenerate() => EXIT_DEGENERATE,
        Error::GradeResidual { .. } => EXIT_DEGENERATE,
        _ if e.is_domain() => EXIT_DOMAIN,
        _ => EXIT_CONFIG,
    }
}

/// Parse `args`, run, print, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = with_thread_cap(|| run(&cli.command));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn with_thread_cap(f: impl FnOnce() -> Result<Outcome> + Send) -> Result<Outcome> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?
                .install(f)
        }
        _ => f(),
    }
}

/// Run a parsed command without touching the process streams.
pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Grad { field, simplex, simplex_file, format } => {
            let text = match (simplex, simplex_file) {
                (Some(s), _) => s.clone(),
                (None, Some(p)) => read_text(p)?,
                (None, None) => return Err(Error::Config("give --simplex or --simplex-file".into())),
            };
            cmd_grad(field, &text, *format)
        }
        Command::Converge {
            field,
            family,
            center,
            reference,
            h_max,
            h_min,
            per_decade,
            seed,
            aspect,
            format,
            output,
        } => {
            let cfg = ConvergeConfig {
                field: field.clone(),
                family: family.clone(),
                center: center.clone(),
                reference: reference.clone(),
                h_max: *h_max,
                h_min: *h_min,
                per_decade: *per_decade,
                seed: *seed,
                aspect: *aspect,
            };
            emit(cmd_converge(&cfg, *format)?, output.as_deref())
        }
        Command::Schwarz { format } => cmd_schwarz(*format),
        Command::Detcheck { k, trials, seed, format } => cmd_detcheck(*k, *trials, *seed, *format),
        Command::Meshgrad { mesh, format, output } => {
            let text = read_text(mesh)?;
            emit(cmd_meshgrad(&text, *format)?, output.as_deref())
        }
    }
}

fn emit(out: Outcome, path: Option<&Path>) -> Result<Outcome> {
    match path {
        Some(p) => {
            fs::write(p, &out.stdout)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display())))?;
            Ok(Outcome { stdout: String::new(), code: out.code })
        }
        None => Ok(out),
    }
}

fn read_text(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))
}

/// `"1,2"` into a vector.
pub fn parse_point(text: &str) -> Result<VecN> {
    let coords = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Config(format!("bad coordinate '{}' in '{text}'", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VecN::new(coords))
}

/// `"0,0;1,0;0,1"` into a simplex.
pub fn parse_simplex(text: &str) -> Result<Simplex> {
    let pts = text
        .trim()
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_point)
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(pts).map_err(|e| match e {
        Error::Shape(m) => Error::Config(m),
        Error::DimensionMismatch { expected, found } => {
            Error::Config(format!("vertices mix dimensions {expected} and {found}"))
        }
        other => other,
    })
}

pub fn cmd_grad(field: &str, simplex: &str, format: Format) -> Result<Outcome> {
    let s = parse_simplex(simplex)?;
    let f = ScalarField::from_spec(field, Some(s.dim()))?;
    let est = estimate_gradient(&f, &s)?;
    let report = GradReport {
        field: f.name().to_string(),
        vertices: s.vertices().iter().map(|v| v.components().to_vec()).collect(),
        gradient: est.value.components().to_vec(),
        tau: est.simplex_tau,
        evaluations: est.evaluations,
        chain_min_diff: est.chain_min_diff,
        residual_grades: est.residual_grades,
    };
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let header: Vec<String> = (1..=report.gradient.len())
                .map(|i| format!("r_mean_{i}"))
                .chain(["tau", "evaluations"].map(String::from))
                .collect();
            let mut row: Vec<String> = report.gradient.iter().map(|x| x.to_string()).collect();
            row.extend([report.tau.to_string(), report.evaluations.to_string()]);
            crate::report::to_csv(&header, &[row])?
        }
        Format::Table => report.to_table(),
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeConfig {
    pub field: String,
    pub family: String,
    pub center: Option<String>,
    pub reference: Option<String>,
    pub h_max: f64,
    pub h_min: f64,
    pub per_decade: usize,
    pub seed: u64,
    pub aspect: f64,
}

pub fn converge_report(cfg: &ConvergeConfig) -> Result<ConvergeReport> {
    let center = cfg.center.as_deref().map(parse_point).transpose()?;
    let field = ScalarField::from_spec(&cfg.field, center.as_ref().map(VecN::dim))?;
    let center = center.unwrap_or_else(|| VecN::zeros(field.dim()));
    let kind = FamilyKind::parse(&cfg.family, cfg.seed, cfg.aspect)?;
    let family = SimplexFamily::new(kind, center.clone())?;
    let scales = log_scales(cfg.h_max, cfg.h_min, cfg.per_decade)?;
    let reference = match &cfg.reference {
        Some(r) => parse_point(r)?,
        None => field.gradient(&center).map_err(|_| {
            Error::Config(format!("field '{}' has no analytic gradient; pass --reference", field.name()))
        })?,
    };
    if !field.in_domain(&center) {
        return Err(Error::Config(format!("center {:?} lies outside the field's domain", center.components())));
    }
    let rows = convergence_sweep_with_reference(&field, &family, &scales, &reference)?;
    Ok(ConvergeReport {
        field: field.name().to_string(),
        family: family.name().to_string(),
        center: center.components().to_vec(),
        reference: reference.components().to_vec(),
        last_decade_rate: last_decade_rate(&rows),
        rows: rows.iter().map(ConvergeRecord::from).collect(),
    })
}

pub fn cmd_converge(cfg: &ConvergeConfig, format: Format) -> Result<Outcome> {
    let report = converge_report(cfg)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&report)?,
        Format::Csv | Format::Table => report.to_csv()?,
    }))
}

pub fn cmd_schwarz(format: Format) -> Result<Outcome> {
    let report = schwarz_demo()?;
    let code = if report.all_passed() { EXIT_OK } else { EXIT_VERDICT };
    let stdout = match format {
        Format::Json => to_json(&report)?,
        _ => schwarz_table(&report),
    };
    Ok(Outcome { stdout, code })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetcheckReport {
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub identity_det: f64,
    /// `max |det_quotient − det_LU| / Π |row_i|`
    pub max_rel_dev: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Deviation is measured against the Hadamard bound `Π |row_i|`, which keeps
/// nearly singular draws from dominating.
pub fn detcheck(k: usize, trials: usize, seed: u64) -> Result<DetcheckReport> {
    if !(1..=DETCHECK_MAX_K).contains(&k) {
        return Err(Error::Config(format!("k must lie in 1..={DETCHECK_MAX_K}, got {k}")));
    }
    let identity: Vec<VecN> = (0..k).map(|i| VecN::basis(k, i)).collect();
    let identity_det = det_via_quotient(&identity)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_rel_dev = (identity_det - 1.0).abs();
    for _ in 0..trials {
        let rows: Vec<VecN> =
            (0..k).map(|_| VecN::new((0..k).map(|_| rng.gen_range(-1.0..1.0)).collect())).collect();
        let hadamard: f64 = rows.iter().map(VecN::norm).product();
        if hadamard == 0.0 {
            continue;
        }
        let dev = (det_via_quotient(&rows)? - lu_determinant(&rows)?).abs() / hadamard;
        max_rel_dev = max_rel_dev.max(dev);
    }
    Ok(DetcheckReport {
        k,
        trials,
        seed,
        identity_det,
        max_rel_dev,
        tolerance: DETCHECK_TOL,
        passed: max_rel_dev <= DETCHECK_TOL,
    })
}

pub fn cmd_detcheck(k: usize, trials: usize, seed: u64, format: Format) -> Result<Outcome> {
    let r = detcheck(k, trials, seed)?;
    let stdout = match format {
        Format::Json => to_json(&r)?,
        _ => format!(
            "k = {}, trials = {}, seed = {}\ndet(I_k) = {}\nmax relative deviation = {} (tolerance {})\n{}\n",
            r.k,
            r.trials,
            r.seed,
            format_sig(r.identity_det, TABLE_DIGITS),
            format_sig(r.max_rel_dev, TABLE_DIGITS),
            format_sig(r.tolerance, TABLE_DIGITS),
            if r.passed { "PASS" } else { "FAIL" }
        ),
    };
    Ok(Outcome { stdout, code: if r.passed { EXIT_OK } else { EXIT_VERDICT } })
}

pub fn mesh_report(text: &str) -> Result<MeshReport> {
    let file: MeshFile =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("mesh file: {e}")))?;
    let vertices = file.vertices.into_iter().map(VecN::new).collect();
    let mesh = SimplicialMesh::new(file.dimension, vertices, file.cells).map_err(|e| match e {
        Error::Shape(m) => Error::Config(format!("malformed mesh: {m}")),
        other => Error::Config(format!("malformed mesh: {other}")),
    })?;
    let cells = match (file.values, file.field) {
        (Some(_), Some(_)) => {
            return Err(Error::Config("mesh file has both 'values' and 'field'; give one".into()))
        }
        (None, None) => return Err(Error::Config("mesh file needs 'values' or 'field'".into())),
        (Some(values), None) => mesh_secant_gradients(&mesh, &values)
            .map_err(|e| Error::Config(format!("malformed mesh: {e}")))?,
        (None, Some(spec)) => {
            let field = ScalarField::from_spec(&spec, Some(mesh.dim()))?;
            mesh_gradients(&mesh, &field)?
        }
    };
    Ok(MeshReport { dimension: mesh.dim(), cells: cells.iter().map(CellRecord::from).collect() })
}

pub fn cmd_meshgrad(text: &str, format: Format) -> Result<Outcome> {
    let report = mesh_report(text)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&report)?,
        Format::Csv | Format::Table => report.to_csv()?,
    }))
}
