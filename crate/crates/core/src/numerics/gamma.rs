use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{NestError, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn is_non_positive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `sin(πz)` with the argument reduced modulo 2 first, so integers give
/// exact zeros.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let s = (r * PI).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

fn wrap_phase(z: Complex64) -> Complex64 {
    let mut im = z.im.rem_euclid(2.0 * PI);
    if im > PI {
        im -= 2.0 * PI;
    }
    Complex64::new(z.re, im)
}

fn log_gamma_lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// A logarithm of `Γ(z)` with imaginary part in `(−π, π]`, i.e. the principal
/// logarithm of `Γ(z)`.
///
/// Uses the Lanczos approximation for `Re z ≥ 1/2` and the reflection
/// formula below that.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(NestError::InvalidInput(format!("log_gamma of non-finite {z}")));
    }
    if is_non_positive_integer(z) {
        return Err(NestError::Pole(z));
    }
    let raw = if z.re < 0.5 {
        LN_PI - sin_pi(z).ln() - log_gamma_lanczos(1.0 - z)
    } else {
        log_gamma_lanczos(z)
    };
    Ok(wrap_phase(raw))
}

/// `1/Γ(z)`, an entire function: exactly zero at the poles of `Γ`.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if is_non_positive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `Γ(num)/Γ(den)`; zero when `den` sits on a pole, an error when `num` does.
pub fn gamma_ratio(num: Complex64, den: Complex64) -> Result<Complex64> {
    if is_non_positive_integer(num) {
        return Err(NestError::Pole(num));
    }
    if is_non_positive_integer(den) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((log_gamma(num)? - log_gamma(den)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn unit_and_poles() {
        assert!((reciprocal_gamma(c(1.0)) - c(1.0)).norm() < 1e-15);
        assert_eq!(reciprocal_gamma(c(-3.0)), c(0.0));
        assert_eq!(reciprocal_gamma(c(0.0)), c(0.0));
        assert!(matches!(log_gamma(c(-2.0)), Err(NestError::Pole(_))));
    }

    #[test]
    fn half_integer() {
        // Γ(1/2) = √π
        let lg = log_gamma(c(0.5)).unwrap();
        assert!((lg.re - 0.572_364_942_924_700_1).abs() < 1e-15);
        assert_eq!(lg.im, 0.0);
    }

    #[test]
    fn negative_real_gamma_has_phase_pi() {
        // Γ(-1/2) = -2√π
        let lg = log_gamma(c(-0.5)).unwrap();
        assert!((lg.im - PI).abs() < 1e-15);
        assert!((lg.exp() - c(-2.0 * PI.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn ratio_vanishes_on_denominator_poles() {
        assert_eq!(gamma_ratio(c(1.5), c(-1.0)).unwrap(), c(0.0));
        assert!(gamma_ratio(c(-1.0), c(2.0)).is_err());
        // Γ(5)/Γ(3) = 12
        assert!((gamma_ratio(c(5.0), c(3.0)).unwrap() - c(12.0)).norm() < 1e-12);
    }
}
