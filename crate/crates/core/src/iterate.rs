//! Iteration policy, audited outcomes, and the fixed-point driver that turns an
//! infinite nesting into a finite, checked computation.

use std::fmt;

use num_complex::Complex64;

use crate::error::{NestError, Result};
use crate::numerics::BranchPolicy;

/// Smallest relaxation factor the adaptive damping will reach.
pub const MIN_RELAXATION: f64 = 1.0 / 4096.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Damping {
    /// Plain iteration `u ← g(u)`.
    Off,
    /// `u ← u + λ·(g(u) − u)`, halving `λ` whenever the fixed-point defect
    /// stops shrinking. Fixed points are unchanged; only the approach to them is.
    #[default]
    Adaptive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub divergence_cap: f64,
    pub policy: BranchPolicy,
    /// Initial iterate; `None` means the depth-one truncation (innermost
    /// nesting replaced by zero).
    pub u0: Option<Complex64>,
    pub keep_trace: bool,
    pub damping: Damping,
}

impl Default for IterConfig {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iter: 2000,
            divergence_cap: 1e8,
            policy: BranchPolicy::RealPreferring,
            u0: None,
            keep_trace: false,
            damping: Damping::Adaptive,
        }
    }
}

impl IterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || self.max_iter < 1 || !(self.divergence_cap > 1.0) {
            return Err(NestError::InvalidInput(format!(
                "invalid iteration config: tol={}, max_iter={}, divergence_cap={}",
                self.tol, self.max_iter, self.divergence_cap
            )));
        }
        if let Some(u0) = self.u0 {
            if !is_finite(u0) {
                return Err(NestError::InvalidInput("initial iterate is not finite".into()));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> Complex64 {
        self.u0.unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    MaxIterations,
    Diverged,
    OutsideDomain,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Converged => "Converged",
            Self::MaxIterations => "MaxIterations",
            Self::Diverged => "Diverged",
            Self::OutsideDomain => "OutsideDomain",
        })
    }
}

/// The audited outcome of an iterative solve.
///
/// `Converged` is only reported when the fixed-point defect is below the
/// tolerance *and* the equation residual at `root` passes the caller's
/// contract. No field is ever NaN or infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub status: Status,
    pub root: Complex64,
    pub residual: f64,
    pub iterations: usize,
    /// Iterates `u₀, u₁, …`; `iterations + 1` entries when kept.
    pub trace: Option<Vec<Complex64>>,
    /// Final relaxation factor (1 means undamped).
    pub relaxation: f64,
    pub notes: Vec<String>,
}

impl SolveReport {
    pub fn is_converged(&self) -> bool {
        self.status == Status::Converged
    }

    pub(crate) fn direct(status: Status, root: Complex64, residual: f64, note: impl Into<String>) -> Self {
        let (root, residual) = sanitize(root, residual);
        Self {
            status,
            root,
            residual,
            iterations: 0,
            trace: None,
            relaxation: 1.0,
            notes: vec![note.into()],
        }
    }
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn sanitize(root: Complex64, residual: f64) -> (Complex64, f64) {
    let root = if is_finite(root) { root } else { Complex64::new(0.0, 0.0) };
    let residual = if residual.is_finite() { residual } else { f64::MAX };
    (root, residual)
}

/// Why an iteration map refused to produce the next iterate.
#[derive(Clone, Debug)]
pub(crate) struct Halt {
    pub status: Status,
    pub note: String,
}

impl Halt {
    pub fn new(status: Status, note: impl Into<String>) -> Self {
        Self {
            status,
            note: note.into(),
        }
    }

    pub fn from_error(err: NestError) -> Self {
        let status = match err {
            NestError::OutsideDomain(_) | NestError::Domain(_) => Status::OutsideDomain,
            _ => Status::Diverged,
        };
        Self::new(status, err.to_string())
    }

    pub fn from_report(what: &str, report: &SolveReport) -> Self {
        let mut note = format!("{what} stopped with {}", report.status);
        if let Some(last) = report.notes.last() {
            note.push_str(": ");
            note.push_str(last);
        }
        Self::new(report.status, note)
    }
}

impl From<NestError> for Halt {
    fn from(err: NestError) -> Self {
        Self::from_error(err)
    }
}

pub(crate) struct Run {
    pub status: Status,
    pub point: Complex64,
    pub iterations: usize,
    pub trace: Option<Vec<Complex64>>,
    pub relaxation: f64,
    pub note: Option<String>,
}

/// Iterates `map` from `start` until the defect `|g(u) − u|` drops below
/// `tol·(1 + |u|)` at a point `accept` certifies, the iterate leaves the disc
/// of radius `divergence_cap·cap_scale`, or `max_iter` is exhausted.
pub(crate) fn fixed_point<M, A>(start: Complex64, cfg: &IterConfig, cap_scale: f64, mut map: M, mut accept: A) -> Run
where
    M: FnMut(Complex64) -> std::result::Result<Complex64, Halt>,
    A: FnMut(Complex64) -> bool,
{
    let cap = cfg.divergence_cap * cap_scale.max(1.0);
    let mut trace = cfg.keep_trace.then(|| vec![start]);
    let mut u = start;
    let mut lambda = 1.0;
    let mut prev_defect = f64::INFINITY;
    let finish = |status, point, iterations, trace, lambda, note| Run {
        status,
        point,
        iterations,
        trace,
        relaxation: lambda,
        note,
    };
    for k in 0..cfg.max_iter {
        let g = match map(u) {
            Ok(g) => g,
            Err(halt) => return finish(halt.status, u, k, trace, lambda, Some(halt.note)),
        };
        if !is_finite(g) {
            return finish(Status::Diverged, u, k, trace, lambda, Some("iterate became non-finite".into()));
        }
        let defect = (g - u).norm();
        let threshold = cfg.tol * (1.0 + u.norm());
        if defect <= threshold && accept(g) {
            if let Some(t) = trace.as_mut() {
                t.push(g);
            }
            return finish(Status::Converged, g, k + 1, trace, lambda, None);
        }
        if cfg.damping == Damping::Adaptive
            && defect >= prev_defect
            && defect > 10.0 * threshold
            && lambda > MIN_RELAXATION
        {
            lambda *= 0.5;
        }
        prev_defect = defect;
        let next = u + (g - u) * lambda;
        if next.norm() > cap {
            return finish(
                Status::Diverged,
                u,
                k + 1,
                trace,
                lambda,
                Some(format!("|iterate| exceeded {cap:e}")),
            );
        }
        if let Some(t) = trace.as_mut() {
            t.push(next);
        }
        u = next;
    }
    finish(Status::MaxIterations, u, cfg.max_iter, trace, lambda, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn contracting_map_converges_undamped() {
        let cfg = IterConfig {
            keep_trace: true,
            ..IterConfig::default()
        };
        let run = fixed_point(c(0.0), &cfg, 1.0, |u| Ok((u + 6.0).sqrt()), |_| true);
        assert_eq!(run.status, Status::Converged);
        assert!((run.point - c(3.0)).norm() < 1e-12);
        assert_eq!(run.relaxation, 1.0);
        assert_eq!(run.trace.unwrap().len(), run.iterations + 1);
    }

    #[test]
    fn damping_tames_oscillation() {
        // g(x) = 2 - 1.5x has the repulsive fixed point 0.8 (g' = -1.5)
        let cfg = IterConfig::default();
        let run = fixed_point(c(0.0), &cfg, 1.0, |u| Ok(2.0 - 1.5 * u), |_| true);
        assert_eq!(run.status, Status::Converged);
        assert!((run.point - c(0.8)).norm() < 1e-12);
        assert!(run.relaxation < 1.0);

        let plain = IterConfig {
            damping: Damping::Off,
            ..IterConfig::default()
        };
        let run = fixed_point(c(0.0), &plain, 1.0, |u| Ok(2.0 - 1.5 * u), |_| true);
        assert_eq!(run.status, Status::Diverged);
    }

    #[test]
    fn rejected_points_keep_iterating() {
        let cfg = IterConfig {
            max_iter: 50,
            ..IterConfig::default()
        };
        let run = fixed_point(c(1.0), &cfg, 1.0, Ok, |_| false);
        assert_eq!(run.status, Status::MaxIterations);
        assert_eq!(run.iterations, 50);
    }

    #[test]
    fn halts_are_reported() {
        let cfg = IterConfig::default();
        let run = fixed_point(c(1.0), &cfg, 1.0, |_| Err(Halt::new(Status::OutsideDomain, "nope")), |_| true);
        assert_eq!(run.status, Status::OutsideDomain);
        assert_eq!(run.iterations, 0);
        assert_eq!(run.note.as_deref(), Some("nope"));
    }
}
