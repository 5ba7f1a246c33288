//! Dense complex-coefficient polynomials, lowest degree first.

use std::fmt;

use num_complex::Complex64;

use crate::error::{NestError, Result};
use crate::numerics::horner_compensated;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial from coefficients `[c₀, c₁, …, cₙ]`. Exact trailing
    /// zeros are dropped; the result must have degree at least one.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(NestError::InvalidInput(
                "polynomial must have degree at least one".into(),
            ));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(NestError::InvalidInput("non-finite coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Coefficients given highest degree first, as equations are usually
    /// written.
    pub fn from_descending(coeffs: &[Complex64]) -> Result<Self> {
        Self::new(coeffs.iter().rev().copied().collect())
    }

    /// `Σ c·x^k` over `(k, c)` pairs; repeated powers add up.
    pub fn from_terms(terms: &[(usize, Complex64)]) -> Result<Self> {
        let degree = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        for &(k, c) in terms {
            coeffs[k] += c;
        }
        Self::new(coeffs)
    }

    /// `Π (x − rᵢ)`.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            coeffs = mul_slices(&coeffs, &[-r, Complex64::new(1.0, 0.0)]);
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        Self {
            coeffs: self.coeffs.iter().map(|&c| c / lead).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        eval_slice(&self.coeffs, x)
    }

    /// Evaluation in double-double arithmetic.
    pub fn eval_compensated(&self, x: Complex64) -> Complex64 {
        horner_compensated(&self.coeffs, x)
    }

    /// `(p(x), p'(x))` in one Horner pass.
    pub fn eval_with_derivative(&self, x: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    pub fn derivative_coeffs(&self) -> Vec<Complex64> {
        derivative_slice(&self.coeffs)
    }

    /// `Σ|cₖ|·|x|ᵏ`, the natural scale for judging `|p(x)|`.
    pub fn magnitude_at(&self, x: Complex64) -> f64 {
        let r = x.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn coeff_norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// The polynomial `p(x + h)`.
    pub fn shifted(&self, h: Complex64) -> Self {
        // Horner-style Taylor shift.
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len()];
        for &c in self.coeffs.iter().rev() {
            // out <- out * (x + h) + c
            let mut next = vec![Complex64::new(0.0, 0.0); out.len()];
            for k in 0..out.len() {
                if k + 1 < out.len() {
                    next[k + 1] += out[k];
                }
                next[k] += out[k] * h;
            }
            next[0] += c;
            out = next;
        }
        Self { coeffs: out }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn eval_slice(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

pub(crate) fn derivative_slice(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

pub(crate) fn mul_slices(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(a: &[Complex64], m: &[Complex64]) -> Vec<Complex64> {
    let n = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= n {
        r.resize(n, Complex64::new(0.0, 0.0));
        return r;
    }
    for top in (n..r.len()).rev() {
        let lead = r[top];
        if lead.re == 0.0 && lead.im == 0.0 {
            continue;
        }
        for k in 0..=n {
            r[top - n + k] -= lead * m[k];
        }
    }
    r.truncate(n);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_constants() {
        assert!(Poly::from_real(&[1.0]).is_err());
        assert!(Poly::from_real(&[1.0, 0.0]).is_err());
        assert_eq!(Poly::from_real(&[1.0, 2.0, 0.0]).unwrap().degree(), 1);
    }

    #[test]
    fn from_roots_expands() {
        let p = Poly::from_roots(&[c(1.0), c(2.0)]).unwrap();
        assert_eq!(p.coeffs(), &[c(2.0), c(-3.0), c(1.0)]);
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = Poly::from_real(&[2.0, 2.0, 1.0]).unwrap();
        let q = p.shifted(c(-1.0));
        // x² + 2x + 2 at x - 1 is x² + 1
        assert_eq!(q.coeffs(), &[c(1.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn remainder() {
        // x³ mod (x² - 1) = x
        let r = rem_monic(&[c(0.0), c(0.0), c(0.0), c(1.0)], &[c(-1.0), c(0.0), c(1.0)]);
        assert_eq!(r, vec![c(0.0), c(1.0)]);
    }

    #[test]
    fn derivative_pass() {
        let p = Poly::from_real(&[1.0, -3.0, 0.0, 2.0]).unwrap();
        let (v, d) = p.eval_with_derivative(c(2.0));
        assert_eq!(v, c(11.0));
        assert_eq!(d, c(21.0));
    }
}
