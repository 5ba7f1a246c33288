//! JSON report shapes. Every report carries [`SCHEMA_VERSION`]; the schema
//! itself ships as `schema/report.schema.json`.

use std::collections::BTreeMap;

use nestrad_core::reduce::ReductionResult;
use nestrad_core::{SolveReport, C64};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

pub fn complexes(zs: &[C64]) -> Vec<Complex> {
    zs.iter().map(|&z| z.into()).collect()
}

#[derive(Debug, Serialize)]
pub struct Branch {
    pub policy: &'static str,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct OracleMatch {
    pub index: usize,
    pub distance: f64,
    pub degree: usize,
}

#[derive(Debug, Serialize)]
pub struct MapCoeffs {
    pub k: Complex,
    pub l: Complex,
    pub m: Complex,
    pub n: Complex,
    pub s: Complex,
}

#[derive(Debug, Serialize)]
pub struct ReductionReport {
    pub shape: Option<&'static str>,
    pub map: MapCoeffs,
    /// Highest degree first.
    pub target: Vec<Complex>,
    pub named: BTreeMap<&'static str, Complex>,
    pub residuals: Vec<f64>,
    pub max_match_error: f64,
    pub condition: f64,
    pub ill_conditioned: bool,
    pub dropped: f64,
    pub start: Option<usize>,
    pub notes: Vec<String>,
}

impl From<&ReductionResult> for ReductionReport {
    fn from(r: &ReductionResult) -> Self {
        let m = &r.map;
        let mut target: Vec<C64> = r.target.coeffs().to_vec();
        target.reverse();
        Self {
            shape: r.shape.map(|s| s.name()),
            map: MapCoeffs {
                k: m.k.into(),
                l: m.l.into(),
                m: m.m.into(),
                n: m.n.into(),
                s: m.s.into(),
            },
            target: complexes(&target),
            named: r.named_coefficients().into_iter().map(|(k, v)| (k, v.into())).collect(),
            residuals: r.residual_report.clone(),
            max_match_error: r.max_match_error(),
            condition: r.condition,
            ill_conditioned: r.is_ill_conditioned(),
            dropped: r.dropped,
            start: r.start,
            notes: r.notes.clone(),
        }
    }
}

/// The reduced equation solved on the way to a root of the input.
#[derive(Debug, Serialize)]
pub struct Pipeline {
    pub reduction: ReductionReport,
    pub target_status: String,
    pub target_root: Complex,
    pub target_residual: f64,
    pub preimage_consistent: bool,
}

#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub method: String,
    pub status: String,
    pub root: Option<Complex>,
    pub residual: Option<f64>,
    pub iterations: usize,
    pub relaxation: f64,
    pub branch: Branch,
    pub oracle: Option<OracleMatch>,
    pub pipeline: Option<Pipeline>,
    pub seed: u64,
    pub error: Option<String>,
}

impl SolveOutput {
    pub fn new(method: &str, policy: &'static str, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: "solve",
            method: method.to_string(),
            status: String::new(),
            root: None,
            residual: None,
            iterations: 0,
            relaxation: 1.0,
            branch: Branch { policy, notes: Vec::new() },
            oracle: None,
            pipeline: None,
            seed,
            error: None,
        }
    }

    pub fn absorb(&mut self, report: &SolveReport) {
        self.status = report.status.to_string();
        self.root = Some(report.root.into());
        self.residual = Some(report.residual);
        self.iterations = report.iterations;
        self.relaxation = report.relaxation;
        self.branch.notes.extend(report.notes.iter().cloned());
    }
}

#[derive(Debug, Serialize)]
pub struct ReduceOutput {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub status: String,
    pub degree: usize,
    pub seed: u64,
    pub result: Option<ReductionReport>,
    pub best_residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct GridSpec {
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub nx: usize,
    pub ny: usize,
}

#[derive(Debug, Serialize)]
pub struct CellOutput {
    pub re: f64,
    pub im: f64,
    pub status: String,
    pub root_index: i64,
    pub iterations: usize,
}

#[derive(Debug, Serialize)]
pub struct BasinOutput {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub method: &'static str,
    pub grid: GridSpec,
    pub counts: BTreeMap<String, usize>,
    pub roots: Vec<Complex>,
    /// The cell whose initial iterate is nearest the origin.
    pub center: CellOutput,
    pub csv: String,
    pub pgm: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct NestedOutput {
    pub status: String,
    pub root: Complex,
    pub residual: f64,
    pub iterations: usize,
    pub distance_to_y: f64,
    pub matches_y: bool,
}

#[derive(Debug, Serialize)]
pub struct ModularRun {
    pub n_max: usize,
    pub cf_depth: usize,
    pub q: Complex,
    pub r: Complex,
    pub y: Complex,
    pub j: Complex,
    pub identity_residual: f64,
    pub identity_absolute: f64,
    pub identity_passes: bool,
    pub nested: NestedOutput,
}

#[derive(Debug, Serialize)]
pub struct ModularOutput {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub status: String,
    pub tau: Complex,
    pub nome: &'static str,
    pub tolerance: f64,
    pub runs: Vec<ModularRun>,
    /// Largest change in `Y` and `j` across the requested truncations.
    pub spread_y: Option<f64>,
    pub spread_j: Option<f64>,
    pub error: Option<String>,
}
