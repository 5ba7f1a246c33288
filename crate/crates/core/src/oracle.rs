//! Ground truth for every solver: all roots of a polynomial by Aberth–Ehrlich
//! simultaneous iteration, residuals in compensated arithmetic, and nearest
//! root matching.

use num_complex::Complex64;

use crate::error::{NestError, Result};
use crate::poly::Poly;

pub const MAX_SWEEPS: usize = 500;

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|p(rootᵢ)|` after polishing.
    pub certified_residuals: Vec<f64>,
    pub sweeps: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Smallest pairwise distance between roots (infinite for one root).
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.roots.len() {
            for j in i + 1..self.roots.len() {
                best = best.min((self.roots[i] - self.roots[j]).norm());
            }
        }
        best
    }
}

fn initial_radius(p: &Poly) -> f64 {
    let n = p.degree();
    let lead = p.leading().norm();
    // geometric mean of the root moduli, clamped by the Cauchy bound
    let c0 = p.coeff(0).norm();
    let cauchy = 1.0 + p.coeffs()[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    let mean = if c0 > 0.0 { (c0 / lead).powf(1.0 / n as f64) } else { 0.5 };
    mean.clamp(1e-3, cauchy)
}

/// All `deg p` roots of `p`.
pub fn all_roots(p: &Poly) -> Result<RootSet> {
    let n = p.degree();
    let coeffs = p.coeffs();
    if n == 1 {
        let r = -coeffs[0] / coeffs[1];
        return Ok(RootSet {
            roots: vec![r],
            certified_residuals: vec![residual(p, r)],
            sweeps: 0,
        });
    }
    // Exact zero roots are split off so the iteration works on a polynomial
    // with a non-zero constant term.
    let zeros = coeffs.iter().take_while(|c| c.re == 0.0 && c.im == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let reduced;
    let work = if zeros > 0 {
        if zeros == n {
            return Ok(RootSet {
                certified_residuals: vec![0.0; n],
                roots,
                sweeps: 0,
            });
        }
        reduced = Poly::new(coeffs[zeros..].to_vec())?;
        &reduced
    } else {
        p
    };
    let (found, sweeps) = aberth(work)?;
    roots.extend(found);
    let certified_residuals = roots.iter().map(|&r| residual(p, r)).collect();
    Ok(RootSet {
        roots,
        certified_residuals,
        sweeps,
    })
}

fn aberth(p: &Poly) -> Result<(Vec<Complex64>, usize)> {
    let n = p.degree();
    let radius = initial_radius(p);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; n];
    for sweep in 1..=MAX_SWEEPS {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (f, df) = p.eval_with_derivative(z[k]);
            // at the rounding floor of the evaluation there is nothing left to gain
            if f.norm() <= 4.0 * f64::EPSILON * p.magnitude_at(z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = f / df;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let w = ratio / (1.0 - ratio * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                // Derivative vanished; nudge off the critical point.
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + z[k].norm());
                z[k] += nudge;
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            polish(p, &mut z);
            return Ok((z, sweep));
        }
    }
    Err(NestError::NoConvergence { sweeps: MAX_SWEEPS })
}

fn polish(p: &Poly, z: &mut [Complex64]) {
    let dp = p.derivative_coeffs();
    for r in z.iter_mut() {
        for _ in 0..2 {
            let f = p.eval_compensated(*r);
            let df = crate::poly::eval_slice(&dp, *r);
            if df.norm() == 0.0 || f.norm() == 0.0 {
                break;
            }
            let next = *r - f / df;
            if p.eval_compensated(next).norm() < f.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
}

/// `|p(x)|` evaluated in double-double arithmetic.
pub fn residual(p: &Poly, x: Complex64) -> f64 {
    p.eval_compensated(x).norm()
}

/// Index of the root nearest `candidate` and its distance.
pub fn match_root(candidate: Complex64, rs: &RootSet) -> (usize, f64) {
    rs.roots
        .iter()
        .enumerate()
        .map(|(i, r)| (i, (candidate - r).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .unwrap_or((usize::MAX, f64::INFINITY))
}

/// Greedy one-to-one matching of two equally sized point sets; returns the
/// largest matched distance. Pairs are taken in order of increasing distance.
pub fn match_sets(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "matching needs equally sized sets");
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}
