//! Rogers–Ramanujan continued fraction, the j-invariant, and the icosahedral
//! identity `(Y + 125)² = j^{1/3}·Y^{5/3} + 12500` with `Y = R⁻⁵ − 11 − R⁵`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{NestError, Result};
use crate::iterate::{IterConfig, SolveReport};
use crate::nestcore::{solve_quad_nest, QuadNestForm};
use crate::numerics::{radical, BranchPolicy, RationalIndex};

/// A point of the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tau {
    value: Complex64,
}

impl Tau {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.im > 0.0) || !value.re.is_finite() || !value.im.is_finite() {
            return Err(NestError::Domain(format!("τ = {value} is not in the upper half plane")));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// `q = exp(2πiτ)`.
    pub fn q(&self) -> Complex64 {
        (Complex64::new(0.0, 2.0 * PI) * self.value).exp()
    }

    /// `exp(πiτ)`.
    pub fn half_q(&self) -> Complex64 {
        (Complex64::new(0.0, PI) * self.value).exp()
    }
}

/// Which nome the continued fraction is evaluated at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Nome {
    /// `R(e^{2πiτ})`.
    #[default]
    Full,
    /// `R(e^{πiτ})`.
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QTruncation {
    pub n_max: usize,
    pub cf_depth: usize,
}

impl QTruncation {
    pub fn new(n_max: usize, cf_depth: usize) -> Result<Self> {
        if n_max < 4 || cf_depth < 4 {
            return Err(NestError::InvalidInput(format!(
                "truncation orders must be at least 4, got n_max={n_max}, cf_depth={cf_depth}"
            )));
        }
        Ok(Self { n_max, cf_depth })
    }
}

impl Default for QTruncation {
    fn default() -> Self {
        Self { n_max: 20, cf_depth: 60 }
    }
}

/// `R(q) = q^{1/5}/(1 + q/(1 + q²/(1 + ⋯)))`, evaluated from the bottom up.
pub fn rr_cf(q: Complex64, t: &QTruncation) -> Result<Complex64> {
    if !(q.norm() < 1.0) {
        return Err(NestError::Domain(format!("|q| = {} is not below 1", q.norm())));
    }
    let mut tail = Complex64::new(1.0, 0.0);
    for k in (1..=t.cf_depth).rev() {
        tail = 1.0 + q.powu(k as u32) / tail;
    }
    let fifth = radical(q, RationalIndex::integer(5)?, BranchPolicy::Principal)?;
    Ok(fifth / tail)
}

fn divisor_power_sum(n: usize, power: u32) -> f64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as f64).powi(power as i32)).sum()
}

/// The normalised Eisenstein series `(E₄, E₆)` truncated at `qⁿ`.
pub fn eisenstein(q: Complex64, n_max: usize) -> (Complex64, Complex64) {
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut e6 = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=n_max {
        qn *= q;
        e4 += 240.0 * divisor_power_sum(n, 3) * qn;
        e6 -= 504.0 * divisor_power_sum(n, 5) * qn;
    }
    (e4, e6)
}

/// `j(τ) = 1728·E₄³/(E₄³ − E₆²)`.
///
/// Fails when the first omitted term of `E₆` could exceed `1e−8`, i.e. when
/// `Im τ` is too small for the requested order.
pub fn j_invariant(tau: &Tau, t: &QTruncation) -> Result<Complex64> {
    let q = tau.q();
    let next = t.n_max + 1;
    let bound = 504.0 * divisor_power_sum(next, 5) * q.norm().powi(next as i32);
    if !(bound <= 1e-8) {
        return Err(NestError::Domain(format!(
            "Im τ = {} is too small for n_max = {}: truncation bound {bound:e}",
            tau.value.im, t.n_max
        )));
    }
    let (e4, e6) = eisenstein(q, t.n_max);
    let e43 = e4 * e4 * e4;
    let disc = e43 - e6 * e6;
    if disc.norm() == 0.0 {
        return Err(NestError::Domain("E₄³ = E₆² at this τ".into()));
    }
    Ok(1728.0 * e43 / disc)
}

/// `|(Y + 125)² − j^{1/3}·Y^{5/3} − 12500|` with principal powers, absolute
/// and relative to the size of its terms.
pub fn identity_defect(y: Complex64, j: Complex64) -> (f64, f64) {
    let j13 = j.powf(1.0 / 3.0);
    let y53 = principal_five_thirds(y);
    let lhs = (y + 125.0) * (y + 125.0);
    let rhs = j13 * y53 + 12500.0;
    let abs = (lhs - rhs).norm();
    (abs, abs / (lhs.norm() + (j13 * y53).norm() + 12500.0))
}

fn principal_five_thirds(y: Complex64) -> Complex64 {
    radical(y, RationalIndex::new(3, 5).expect("3/5 is a valid index"), BranchPolicy::Principal)
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq)]
pub struct IcosahedralReport {
    pub tau: Complex64,
    pub nome: Nome,
    pub q: Complex64,
    pub r: Complex64,
    /// `R⁻⁵ − 11 − R⁵`.
    pub y: Complex64,
    pub j: Complex64,
    /// Identity defect relative to the size of its terms.
    pub identity_residual: f64,
    pub identity_absolute: f64,
    /// The nested solve of `(x² + 250x + 3125)/j^{1/3} = x^{5/3}`, whose
    /// intended fixed point is `Y`.
    pub nested: SolveReport,
    pub nested_distance: f64,
    pub nested_matches: bool,
}

/// Checks the icosahedral identity at `τ` and runs the nested-radical
/// solution of the same equation from `cfg`.
pub fn verify_icosahedral(tau: &Tau, t: &QTruncation, cfg: &IterConfig) -> Result<IcosahedralReport> {
    verify_icosahedral_with(tau, t, cfg, Nome::Full)
}

pub fn verify_icosahedral_with(tau: &Tau, t: &QTruncation, cfg: &IterConfig, nome: Nome) -> Result<IcosahedralReport> {
    let q = match nome {
        Nome::Full => tau.q(),
        Nome::Half => tau.half_q(),
    };
    let r = rr_cf(q, t)?;
    let r5 = r.powu(5);
    let y = r5.inv() - 11.0 - r5;
    let j = j_invariant(tau, t)?;
    let (identity_absolute, identity_residual) = identity_defect(y, j);

    let scale = j.powf(-1.0 / 3.0);
    let form = QuadNestForm::new(
        scale,
        250.0 * scale,
        3125.0 * scale,
        RationalIndex::ONE,
        RationalIndex::new(5, 3)?,
    )?;
    let nested = solve_quad_nest(&form, cfg)?;
    let nested_distance = (nested.root - y).norm();
    let nested_matches = nested.is_converged() && nested_distance <= 1e-6 * (1.0 + y.norm());
    Ok(IcosahedralReport {
        tau: tau.value,
        nome,
        q,
        r,
        y,
        j,
        identity_residual,
        identity_absolute,
        nested,
        nested_distance,
        nested_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(re: f64, im: f64) -> Tau {
        Tau::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(Tau::new(Complex64::new(0.0, -1.0)).is_err());
        assert!(QTruncation::new(3, 10).is_err());
    }

    #[test]
    fn classical_values() {
        let t = QTruncation::default();
        assert!((j_invariant(&tau(0.0, 1.0), &t).unwrap() - 1728.0).norm() < 1e-8);
        assert!((j_invariant(&tau(0.0, 2.0), &t).unwrap() - 287_496.0).norm() < 1e-5);
        let r = rr_cf(Complex64::new((-2.0 * PI).exp(), 0.0), &t).unwrap();
        let closed = ((5.0 + 5f64.sqrt()) / 2.0).sqrt() - (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.re - closed).abs() < 1e-14);
    }

    #[test]
    fn small_imaginary_part_is_refused() {
        assert!(matches!(
            j_invariant(&tau(0.0, 0.1), &QTruncation::default()),
            Err(NestError::Domain(_))
        ));
        assert!(rr_cf(Complex64::new(1.0, 0.0), &QTruncation::default()).is_err());
    }

    #[test]
    fn identity_holds_and_is_sensitive() {
        let rep = verify_icosahedral(&tau(0.0, 1.0), &QTruncation::default(), &IterConfig::default()).unwrap();
        assert!(rep.identity_residual < 1e-12, "{}", rep.identity_residual);
        // j = 1728 makes Y a double root, so the defect grows only quadratically.
        let (near, _) = identity_defect(rep.y + 0.01, rep.j);
        assert!(near > 1e-6 && near < 1e-3, "{near}");

        let rep = verify_icosahedral(&tau(0.0, 2.0), &QTruncation::default(), &IterConfig::default()).unwrap();
        assert!(rep.identity_residual < 1e-6);
        assert!(identity_defect(rep.y + 0.01, rep.j).0 > 1e-3);
    }
}
