use num_complex::Complex64;

/// Unevaluated sum `hi + lo` carrying roughly twice the working precision.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        Self { hi, lo }
    }

    pub fn add_f64(self, x: f64) -> Self {
        self.add(Self::from_f64(x))
    }

    pub fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = two_sum(p, e);
        Self { hi, lo }
    }
}

/// Evaluates `Σ coeffs[k]·x^k` by Horner's rule in double-double complex
/// arithmetic, so the result is accurate to about one rounding of the exact
/// value even where the plain recurrence cancels.
pub fn horner_compensated(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut re = DoubleDouble::default();
    let mut im = DoubleDouble::default();
    for c in coeffs.iter().rev() {
        // (re + i·im)·(x.re + i·x.im) + c
        let nr = re.mul_f64(x.re).add(im.mul_f64(x.im).neg()).add_f64(c.re);
        let ni = re.mul_f64(x.im).add(im.mul_f64(x.re)).add_f64(c.im);
        re = nr;
        im = ni;
    }
    Complex64::new(re.to_f64(), im.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_value() {
        // (x - 1)^5 expanded, evaluated next to its root; the plain Horner
        // result is dominated by rounding noise.
        let coeffs: Vec<Complex64> = [-1.0, 5.0, -10.0, 10.0, -5.0, 1.0]
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        let x = Complex64::new(1.0 + 1e-3, 0.0);
        let v = horner_compensated(&coeffs, x);
        assert!((v.re - 1e-15).abs() < 1e-22, "{}", v.re);
    }

    #[test]
    fn sums_exactly() {
        let a = DoubleDouble::from_f64(1.0).add_f64(1e-20);
        assert_eq!(a.hi, 1.0);
        assert_eq!(a.lo, 1e-20);
    }
}
