//! Closed-form roots of polynomials of degree at most four.
//!
//! Quartics go through Ferrari's resolvent cubic, cubics through Cardano.
//! Every root gets a few Newton steps on its own polynomial afterwards, which
//! removes the cancellation the radical formulas are prone to.

use num_complex::Complex64;

use crate::error::{NestError, Result};
use crate::poly::{derivative_slice, eval_slice};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn is_zero(c: Complex64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

/// All roots (with multiplicity) of `Σ coeffs[k]·x^k`, degree ≤ 4 after
/// dropping exact leading zeros.
pub fn roots_upto_quartic(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|&v| is_zero(v)) {
        c.pop();
    }
    let mut roots = match c.len() {
        0 | 1 => {
            return Err(NestError::DegenerateCoefficient(
                "constant polynomial has no roots to solve for".into(),
            ))
        }
        2 => vec![-c[0] / c[1]],
        3 => quadratic(c[2], c[1], c[0]).to_vec(),
        4 => cubic(c[3], c[2], c[1], c[0]).to_vec(),
        5 => quartic(c[4], c[3], c[2], c[1], c[0]).to_vec(),
        n => {
            return Err(NestError::InvalidInput(format!(
                "closed form supports degree ≤ 4, got {}",
                n - 1
            )))
        }
    };
    polish(&c, &mut roots);
    Ok(roots)
}

fn polish(c: &[Complex64], roots: &mut [Complex64]) {
    let d = derivative_slice(c);
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let f = eval_slice(c, *r);
            let df = eval_slice(&d, *r);
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            let candidate = *r - step;
            if !(candidate.re.is_finite() && candidate.im.is_finite()) {
                break;
            }
            // Keep the step only when it improves the residual; Newton misbehaves
            // next to multiple roots.
            if eval_slice(c, candidate).norm() <= f.norm() {
                *r = candidate;
            } else {
                break;
            }
        }
    }
}

/// Roots of `a x² + b x + c` using the cancellation-free form.
pub fn quadratic(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // choose the sign that avoids cancellation in -b ± disc
    let s = if (b.conj() * disc).re >= 0.0 { -b - disc } else { -b + disc };
    if is_zero(s) {
        let r = -b / (2.0 * a);
        return [r, r];
    }
    [s / (2.0 * a), 2.0 * c / s]
}

/// Roots of `a x³ + b x² + c x + d`.
pub fn cubic(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 3] {
    let b = b / a;
    let c = c / a;
    let d = d / a;
    // x = t - b/3: t³ + p t + q = 0
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let w = if (-q / 2.0 + disc).norm() >= (-q / 2.0 - disc).norm() {
        -q / 2.0 + disc
    } else {
        -q / 2.0 - disc
    };
    if is_zero(w) {
        // p = q = 0: triple root
        return [-shift; 3];
    }
    let u = w.powf(1.0 / 3.0);
    let mut out = [ZERO; 3];
    let mut uk = u;
    for slot in &mut out {
        let t = uk - p / (3.0 * uk);
        *slot = t - shift;
        uk *= omega;
    }
    out
}

/// Roots of `a x⁴ + b x³ + c x² + d x + e` via the resolvent cubic.
pub fn quartic(a: Complex64, b: Complex64, c: Complex64, d: Complex64, e: Complex64) -> [Complex64; 4] {
    let b = b / a;
    let c = c / a;
    let d = d / a;
    let e = e / a;
    // x = y - b/4: y⁴ + p y² + q y + r = 0
    let shift = b / 4.0;
    let b2 = b * b;
    let p = c - 3.0 * b2 / 8.0;
    let q = b2 * b / 8.0 - b * c / 2.0 + d;
    let r = -3.0 * b2 * b2 / 256.0 + b2 * c / 16.0 - b * d / 4.0 + e;

    // (y² + p/2 + m)² = 2m y² − q y + (m² + p m + p²/4 − r)
    // is a perfect square when 8m(m² + p m + p²/4 − r) = q².
    let res = cubic(
        Complex64::new(8.0, 0.0),
        8.0 * p,
        2.0 * p * p - 8.0 * r,
        -q * q,
    );
    let m = res
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(ZERO);

    let ys: [Complex64; 4] = if m.norm() == 0.0 {
        // q = 0: biquadratic y⁴ + p y² + r
        let [z1, z2] = quadratic(Complex64::new(1.0, 0.0), p, r);
        let (s1, s2) = (z1.sqrt(), z2.sqrt());
        [s1, -s1, s2, -s2]
    } else {
        let s = (2.0 * m).sqrt();
        let half = p / 2.0 + m;
        let k = q / (2.0 * s);
        let one = Complex64::new(1.0, 0.0);
        let [y1, y2] = quadratic(one, -s, half + k);
        let [y3, y4] = quadratic(one, s, half - k);
        [y1, y2, y3, y4]
    };
    ys.map(|y| y - shift)
}
