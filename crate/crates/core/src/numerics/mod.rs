//! Branch-aware complex arithmetic, rational-index radicals and the gamma
//! function.
//!
//! Radicals follow the convention `√[d]{x} = x^{1/d}` for a positive rational
//! index `d`, so `√[1/2]{x}` is `x²`, `√[3/2]{x}` is `x^{2/3}` and `√[1/7]{x}`
//! is `x⁷`. Every nested construction in this crate is written in terms of
//! [`radical`].

mod compensated;
mod gamma;

pub use compensated::{horner_compensated, DoubleDouble};
pub use gamma::{gamma_ratio, log_gamma, reciprocal_gamma, sin_pi};

use std::fmt;

use num_complex::Complex64;

use crate::error::{NestError, Result};

/// A reduced non-zero rational `num/den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalIndex {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl RationalIndex {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(NestError::InvalidIndex { num, den });
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den);
        Ok(Self {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn integer(n: i64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub const ONE: Self = Self { num: 1, den: 1 };

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }

    pub fn recip(self) -> Self {
        Self::new(self.den, self.num).expect("non-zero rational has a reciprocal")
    }

    pub fn mul(self, other: Self) -> Self {
        Self::new(self.num * other.num, self.den * other.den).expect("product of non-zero rationals")
    }

    pub fn div(self, other: Self) -> Self {
        self.mul(other.recip())
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }
}

impl fmt::Display for RationalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::str::FromStr for RationalIndex {
    type Err = NestError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || NestError::InvalidInput(format!("cannot parse rational index `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Self::integer(s.trim().parse().map_err(|_| bad())?),
        }
    }
}

/// How a multivalued radical picks its branch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BranchPolicy {
    /// `exp(log(x)/d)` with `Arg x ∈ (−π, π]`.
    Principal,
    /// Real result for a real radicand whenever a real root exists,
    /// otherwise [`BranchPolicy::Principal`].
    #[default]
    RealPreferring,
}

impl fmt::Display for BranchPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Principal => f.write_str("principal"),
            Self::RealPreferring => f.write_str("real-preferring"),
        }
    }
}

/// Truncation policy for power series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Consecutive growing terms tolerated before the series is declared
    /// outside its convergence domain.
    pub growth_guard: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-17,
            max_terms: 20_000,
            growth_guard: 8,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 || self.growth_guard < 2 {
            return Err(NestError::InvalidInput(format!("invalid series config {self:?}")));
        }
        Ok(())
    }
}

/// Normalises `-0.0` imaginary parts so the principal argument of a negative
/// real is `+π`.
fn canonical(x: Complex64) -> Complex64 {
    Complex64::new(x.re, x.im + 0.0)
}

fn powi(x: Complex64, n: i64) -> Complex64 {
    let mut base = x;
    let mut e = n.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    if n < 0 {
        acc.inv()
    } else {
        acc
    }
}

/// `√[d]{x} = x^{1/d} = x^{den/num}` under the given branch policy.
pub fn radical(x: Complex64, d: RationalIndex, policy: BranchPolicy) -> Result<Complex64> {
    let (p, q) = (d.den, d.num);
    if x.re == 0.0 && x.im == 0.0 {
        return if q > 0 { Ok(Complex64::new(0.0, 0.0)) } else { Err(NestError::ZeroToNegativePower) };
    }
    let x = canonical(x);
    if q.abs() == 1 {
        return Ok(powi(x, p * q.signum()));
    }
    if policy == BranchPolicy::RealPreferring && x.im == 0.0 {
        let r = x.re;
        let qa = q.unsigned_abs();
        if r > 0.0 {
            return Ok(Complex64::new(real_root(r, p, q), 0.0));
        }
        if qa % 2 == 1 {
            let mag = real_root(-r, p, q);
            let v = if p % 2 == 0 { mag } else { -mag };
            return Ok(Complex64::new(v, 0.0));
        }
    }
    Ok(principal_power(x, p, q))
}

/// `r^{p/q}` for `r > 0`.
fn real_root(r: f64, p: i64, q: i64) -> f64 {
    let v = match q.abs() {
        2 => r.sqrt(),
        3 => r.cbrt(),
        qa => r.powf(1.0 / qa as f64),
    };
    let v = v.powi(p as i32);
    if q < 0 {
        1.0 / v
    } else {
        v
    }
}

fn principal_power(x: Complex64, p: i64, q: i64) -> Complex64 {
    let root = if q.abs() == 2 {
        x.sqrt()
    } else {
        let (r, theta) = x.to_polar();
        let qa = q.abs() as f64;
        Complex64::from_polar(r.powf(1.0 / qa), theta / qa)
    };
    let v = powi(root, p);
    if q < 0 {
        v.inv()
    } else {
        v
    }
}

/// Generalised hypergeometric series `pFq(a; b; z)` summed by its term
/// recurrence. Only the `p ≤ q + 1` case is supported; for `p = q + 1` the
/// argument must satisfy `|z| < 1`.
pub fn hypergeometric_pfq(a: &[f64], b: &[f64], z: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    cfg.validate()?;
    if a.len() > b.len() + 1 {
        return Err(NestError::InvalidInput("pFq with p > q + 1 diverges".into()));
    }
    if a.len() == b.len() + 1 && z.norm() >= 1.0 {
        return Err(NestError::OutsideDomain(format!(
            "|z| = {} is not below the unit radius of convergence",
            z.norm()
        )));
    }
    if b.iter().any(|&bj| bj <= 0.0 && bj.fract() == 0.0) {
        return Err(NestError::InvalidInput("lower parameter is a non-positive integer".into()));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0usize;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        let num: f64 = a.iter().map(|&ai| ai + kf).product();
        let den: f64 = b.iter().map(|&bj| bj + kf).product();
        term *= z * (num / (den * (kf + 1.0)));
        sum += term;
        if term.norm() <= cfg.rel_tol * sum.norm().max(f64::MIN_POSITIVE) {
            small += 1;
            if small >= 3 || term.norm() == 0.0 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(NestError::OutsideDomain(format!(
        "series not converged within {} terms",
        cfg.max_terms
    )))
}
