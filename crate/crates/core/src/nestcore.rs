//! Nested-radical and series engines for the quadratic power form, Euler's
//! trinomial and the Bring–Jerrard quintic.

use num_complex::Complex64;

use crate::error::{NestError, Result};
use crate::iterate::{fixed_point, sanitize, Halt, IterConfig, SolveReport, Status};
use crate::numerics::{hypergeometric_pfq, log_gamma, radical, BranchPolicy, RationalIndex, SeriesConfig};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// `x^e` for a rational exponent `e`, i.e. the radical of index `1/e`.
pub(crate) fn rpow(x: Complex64, e: RationalIndex, policy: BranchPolicy) -> Result<Complex64> {
    radical(x, e.recip(), policy)
}

/// `a·x^{2μ} + b·x^{μ} + c = feed·x^{ν}`.
///
/// With `feed = 1` this is the plain quadratic power form; the sextic
/// reduction uses `feed = −1` after moving its leading term across.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadNestForm {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub mu: RationalIndex,
    pub nu: RationalIndex,
    pub feed: Complex64,
    delta: Complex64,
}

impl QuadNestForm {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, mu: RationalIndex, nu: RationalIndex) -> Result<Self> {
        if is_zero(a) {
            return Err(NestError::DegenerateCoefficient("leading coefficient a is zero".into()));
        }
        if !mu.is_positive() || !nu.is_positive() {
            return Err(NestError::InvalidInput(format!("exponents must be positive, got μ={mu}, ν={nu}")));
        }
        Ok(Self {
            a,
            b,
            c,
            mu,
            nu,
            feed: ONE,
            delta: (b * b - 4.0 * a * c).sqrt(),
        })
    }

    pub fn with_feed(mut self, feed: Complex64) -> Result<Self> {
        if is_zero(feed) {
            return Err(NestError::DegenerateCoefficient("feed coefficient is zero".into()));
        }
        self.feed = feed;
        Ok(self)
    }

    /// The principal square root of `b² − 4ac`. Only its square enters the
    /// iteration; it is kept so reports can state the branch used.
    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    fn inner(&self, u: Complex64, policy: BranchPolicy) -> Result<Complex64> {
        let disc = (self.b * self.b - 4.0 * self.a * self.c) / (4.0 * self.a * self.a);
        let root = radical(disc + self.feed * u / self.a, RationalIndex::integer(2)?, policy)?;
        Ok(-self.b / (2.0 * self.a) + root)
    }

    /// One level of the nesting: `u ↦ (−b/2a + √(Δ²/4a² + feed·u/a))^{ν/μ}`.
    pub fn step(&self, u: Complex64, policy: BranchPolicy) -> Result<Complex64> {
        radical(self.inner(u, policy)?, self.mu.div(self.nu), policy)
    }

    pub fn residual(&self, x: Complex64, policy: BranchPolicy) -> Result<(f64, f64)> {
        let xm = rpow(x, self.mu, policy)?;
        let xn = rpow(x, self.nu, policy)?;
        let lhs = self.a * xm * xm + self.b * xm + self.c - self.feed * xn;
        let scale = 1.0
            + self.a.norm() * xm.norm_sqr()
            + self.b.norm() * xm.norm()
            + self.c.norm()
            + self.feed.norm() * xn.norm();
        Ok((lhs.norm(), scale))
    }

    fn coeff_scale(&self) -> f64 {
        1.0 + self.a.norm() + self.b.norm() + self.c.norm()
    }
}

/// Shared tail of the nested engines: run the driver, recover `x` from the
/// final iterate and package the report.
fn finish_nested<S, X, R>(cfg: &IterConfig, cap_scale: f64, step: S, recover: X, residual: R) -> SolveReport
where
    S: Fn(Complex64) -> Result<Complex64>,
    X: Fn(Complex64) -> Result<Complex64>,
    R: Fn(Complex64) -> Result<(f64, f64)>,
{
    let check = |u: Complex64| -> Option<(Complex64, f64, f64)> {
        let x = recover(u).ok()?;
        let (r, s) = residual(x).ok()?;
        Some((x, r, s))
    };
    let run = fixed_point(
        cfg.start(),
        cfg,
        cap_scale,
        |u| step(u).map_err(Halt::from_error),
        |u| matches!(check(u), Some((_, r, s)) if r <= cfg.tol * s),
    );
    let (root, residual) = match check(run.point) {
        Some((x, r, _)) => (x, r),
        None => (run.point, f64::MAX),
    };
    let (root, residual) = sanitize(root, residual);
    let mut notes = Vec::new();
    notes.extend(run.note);
    if run.relaxation < 1.0 {
        notes.push(format!("damped iteration, final relaxation {}", run.relaxation));
    }
    SolveReport {
        status: run.status,
        root,
        residual,
        iterations: run.iterations,
        trace: run.trace,
        relaxation: run.relaxation,
        notes,
    }
}

/// Solves the quadratic power form by iterating its one-level nesting on
/// `u = x^ν` and returning `x = w^{1/μ}` where `w = x^μ` is the inner
/// quadratic-formula value at the fixed point.
pub fn solve_quad_nest(form: &QuadNestForm, cfg: &IterConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let policy = cfg.policy;
    Ok(finish_nested(
        cfg,
        form.coeff_scale(),
        |u| form.step(u, policy),
        |u| radical(form.inner(u, policy)?, form.mu, policy),
        |x| form.residual(x, policy),
    ))
}

/// Euler's trinomial `a·q·x^p + x^q = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrinomialForm {
    pub a: Complex64,
    pub p: RationalIndex,
    pub q: RationalIndex,
}

impl TrinomialForm {
    pub fn new(a: Complex64, p: RationalIndex, q: RationalIndex) -> Result<Self> {
        if !p.is_positive() || !q.is_positive() {
            return Err(NestError::InvalidInput(format!("exponents must be positive, got p={p}, q={q}")));
        }
        Ok(Self { a, p, q })
    }

    pub fn residual(&self, x: Complex64, policy: BranchPolicy) -> Result<(f64, f64)> {
        let xp = rpow(x, self.p, policy)?;
        let xq = rpow(x, self.q, policy)?;
        let aq = self.a * self.q.as_f64();
        let lhs = aq * xp + xq - 1.0;
        Ok((lhs.norm(), 2.0 + aq.norm() * xp.norm() + xq.norm()))
    }
}

/// Whether `(n·pd + pn·k)·qd / (pd·qn) − k + 1` is a non-positive integer,
/// i.e. whether the denominator gamma of the k-th series term has a pole.
fn lower_gamma_pole(n: u32, p: RationalIndex, q: RationalIndex, k: u64) -> bool {
    let (pn, pd) = (p.num() as i128, p.den() as i128);
    let (qn, qd) = (q.num() as i128, q.den() as i128);
    let (n, k) = (n as i128, k as i128);
    let den = pd * qn;
    let num = (n * pd + pn * k) * qd - (k - 1) * den;
    num % den == 0 && num / den <= 0
}

/// `xⁿ` for the root of the trinomial continuous in `a` with `x(0) = 1`, by
/// Euler's gamma-function series.
pub fn euler_series(form: &TrinomialForm, n: u32, cfg: &SeriesConfig) -> Result<Complex64> {
    cfg.validate()?;
    if n == 0 {
        return Err(NestError::InvalidInput("series power n must be positive".into()));
    }
    let (p, q) = (form.p.as_f64(), form.q.as_f64());
    let nf = n as f64;
    let z = -form.a * q;
    if is_zero(z) {
        return Ok(ONE);
    }
    let ln_z = z.ln();
    let prefactor = nf / q;
    let mut sum = ZERO;
    let mut small = 0usize;
    let mut growing = 0usize;
    let mut last = f64::INFINITY;
    for k in 0..cfg.max_terms as u64 {
        if lower_gamma_pole(n, form.p, form.q, k) {
            continue;
        }
        let kf = k as f64;
        let alpha = (nf + p * kf) / q;
        let beta = alpha - kf + 1.0;
        let log_term = log_gamma(Complex64::new(alpha, 0.0))? - log_gamma(Complex64::new(beta, 0.0))?
            - log_gamma(Complex64::new(kf + 1.0, 0.0))?
            + ln_z * kf;
        let term = prefactor * log_term.exp();
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(NestError::OutsideDomain(format!("series term {k} overflowed")));
        }
        sum += term;
        let mag = term.norm();
        if mag > last && k > 0 {
            growing += 1;
            if growing >= cfg.growth_guard {
                return Err(NestError::OutsideDomain(format!(
                    "terms grew for {growing} consecutive indices; |a| = {} is beyond the convergence radius",
                    form.a.norm()
                )));
            }
        } else {
            growing = 0;
        }
        last = mag;
        if mag <= cfg.rel_tol * sum.norm() {
            small += 1;
            if small >= 3 {
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

/// Solves the trinomial by iterating `u ← 1 − a·q·u^{p/q}` on `u = x^q`.
pub fn euler_nested(form: &TrinomialForm, cfg: &IterConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let policy = cfg.policy;
    let aq = form.a * form.q.as_f64();
    let ratio = form.p.div(form.q);
    Ok(finish_nested(
        cfg,
        1.0 + form.a.norm(),
        |u| Ok(ONE - aq * rpow(u, ratio, policy)?),
        |u| radical(u, form.q, policy),
        |x| form.residual(x, policy),
    ))
}

/// `x⁵ + a·x + b = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BringJerrardForm {
    pub a: Complex64,
    pub b: Complex64,
}

impl BringJerrardForm {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        x.powu(5) + self.a * x + self.b
    }

    pub fn residual(&self, x: Complex64) -> (f64, f64) {
        let r = x.norm();
        (self.eval(x).norm(), 1.0 + r.powi(5) + self.a.norm() * r + self.b.norm())
    }
}

/// `|t|` must stay below this for the Bring radical series to converge.
pub fn bring_radius() -> f64 {
    4.0 * 5f64.powf(-1.25)
}

/// The Bring radical: the root of `x⁵ + x + t = 0` analytic at `t = 0`,
/// summed as `−t·₄F₃(1/5, 2/5, 3/5, 4/5; 1/2, 3/4, 5/4; −3125t⁴/256)`.
pub fn bring_radical(t: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    let z = -3125.0 * t.powu(4) / 256.0;
    if z.norm() >= 1.0 {
        return Err(NestError::OutsideDomain(format!(
            "|t| = {} is not below the Bring radical radius {}",
            t.norm(),
            bring_radius()
        )));
    }
    if is_zero(t) {
        return Ok(ZERO);
    }
    let f = hypergeometric_pfq(&[0.2, 0.4, 0.6, 0.8], &[0.5, 0.75, 1.25], z, cfg)?;
    Ok(-t * f)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BrSolution {
    pub root: Complex64,
    /// The fourth root `c` of `A` used to scale the equation to `w⁵ + w + t`.
    pub scale: Complex64,
    /// The Bring radical argument `t = B/c⁵`.
    pub argument: Complex64,
    pub residual: f64,
}

/// Root of `x⁵ + A·x + B` as `c·BR(B/c⁵)` with `c⁴ = A`.
///
/// The root does not depend on which fourth root `c` is: the four choices
/// rotate `t` by powers of `i`, which the odd series undoes. The result is
/// the root that tends to `−B/A` as `B → 0`.
pub fn quintic_solve_br(form: &BringJerrardForm, cfg: &SeriesConfig, policy: BranchPolicy) -> Result<BrSolution> {
    if is_zero(form.a) {
        return Err(NestError::DegenerateCoefficient(
            "A = 0 leaves no linear term to scale by".into(),
        ));
    }
    let c = radical(form.a, RationalIndex::integer(4)?, policy)?;
    let t = form.b / c.powu(5);
    let w = bring_radical(t, cfg)?;
    let root = c * w;
    let (residual, _) = form.residual(root);
    Ok(BrSolution {
        root,
        scale: c,
        argument: t,
        residual,
    })
}

/// One branch combination of the literal scaling
/// `x = (−A/5)^{1/4}·BR(−(5⁵/(−A⁵))^{1/4}·B/4)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchTrial {
    /// Powers of `i` applied to the principal outer and inner fourth roots.
    pub outer: u8,
    pub inner: u8,
    pub argument: Complex64,
    pub root: Option<Complex64>,
    pub residual: Option<f64>,
}

/// Evaluates the literal scaling over all sixteen fourth-root branch pairs.
pub fn quartic_branch_survey(form: &BringJerrardForm, cfg: &SeriesConfig) -> Result<Vec<BranchTrial>> {
    if is_zero(form.a) {
        return Err(NestError::DegenerateCoefficient("A = 0".into()));
    }
    let i = Complex64::new(0.0, 1.0);
    let outer0 = (-form.a / 5.0).powf(0.25);
    let inner0 = (3125.0 / (-form.a.powu(5))).powf(0.25);
    let mut out = Vec::with_capacity(16);
    for o in 0..4u8 {
        for n in 0..4u8 {
            let outer = outer0 * i.powu(o as u32);
            let inner = inner0 * i.powu(n as u32);
            let t = -inner * form.b / 4.0;
            let root = bring_radical(t, cfg).ok().map(|w| outer * w);
            out.push(BranchTrial {
                outer: o,
                inner: n,
                argument: t,
                root,
                residual: root.map(|x| form.residual(x).0),
            });
        }
    }
    Ok(out)
}

/// Iterates `x ← (−B − A·x)^{1/5}`.
pub fn quintic_solve_nested(form: &BringJerrardForm, cfg: &IterConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let policy = cfg.policy;
    let five = RationalIndex::integer(5)?;
    Ok(finish_nested(
        cfg,
        1.0 + form.a.norm() + form.b.norm(),
        |x| radical(-form.b - form.a * x, five, policy),
        Ok,
        |x| Ok(form.residual(x)),
    ))
}

/// Status of a direct (non-iterative) evaluation checked against a residual.
pub(crate) fn direct_report(root: Complex64, residual: f64, bound: f64, note: &str) -> SolveReport {
    let status = if residual <= bound { Status::Converged } else { Status::MaxIterations };
    SolveReport::direct(status, root, residual, note)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iterate::Damping;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn idx(n: i64, d: i64) -> RationalIndex {
        RationalIndex::new(n, d).unwrap()
    }

    #[test]
    fn classic_six() {
        let form = QuadNestForm::new(c(1.0), c(0.0), c(-6.0), idx(1, 1), idx(1, 1)).unwrap();
        let cfg = IterConfig {
            keep_trace: true,
            ..IterConfig::default()
        };
        let rep = solve_quad_nest(&form, &cfg).unwrap();
        assert_eq!(rep.status, Status::Converged);
        assert!((rep.root - c(3.0)).norm() < 1e-12);
        assert!(rep.iterations <= 100);
        assert_eq!(rep.trace.as_ref().unwrap().len(), rep.iterations + 1);
        assert_eq!(form.delta(), c(24f64.sqrt()));
    }

    #[test]
    fn truncations_contract() {
        let form = QuadNestForm::new(c(1.0), c(0.0), c(-6.0), idx(1, 1), idx(1, 1)).unwrap();
        let cfg = IterConfig {
            keep_trace: true,
            damping: Damping::Off,
            ..IterConfig::default()
        };
        let trace = solve_quad_nest(&form, &cfg).unwrap().trace.unwrap();
        let errs: Vec<f64> = trace.iter().map(|u| (u - c(3.0)).norm()).collect();
        for k in 3..errs.len() {
            if errs[k - 1] > 1e-14 {
                assert!(errs[k] <= errs[k - 1] * 0.2, "k={k}: {} vs {}", errs[k], errs[k - 1]);
            }
        }
    }

    #[test]
    fn sextic_feed() {
        // y⁶ + y² − y − 1 = 0 has the root y = 1
        let form = QuadNestForm::new(c(1.0), c(-1.0), c(-1.0), idx(1, 1), idx(6, 1))
            .unwrap()
            .with_feed(c(-1.0))
            .unwrap();
        let rep = solve_quad_nest(&form, &IterConfig::default()).unwrap();
        if rep.is_converged() {
            let y = rep.root;
            let v = y.powu(6) + y * y - y - 1.0;
            assert!(v.norm() < 1e-10);
        }
    }

    #[test]
    fn series_small_cases() {
        let cfg = SeriesConfig::default();
        let form = TrinomialForm::new(c(0.0), idx(3, 2), idx(5, 1)).unwrap();
        assert_eq!(euler_series(&form, 1, &cfg).unwrap(), c(1.0));
        let form = TrinomialForm::new(c(0.1), idx(1, 1), idx(2, 1)).unwrap();
        let x = euler_series(&form, 1, &cfg).unwrap();
        assert!((x - c(-0.1 + 1.01f64.sqrt())).norm() < 1e-13, "{x}");
        let x2 = euler_series(&form, 2, &cfg).unwrap();
        assert!((x2 - x * x).norm() < 1e-13);
    }

    #[test]
    fn series_outside_radius() {
        let form = TrinomialForm::new(c(5.0), idx(1, 1), idx(2, 1)).unwrap();
        assert!(matches!(
            euler_series(&form, 1, &SeriesConfig::default()),
            Err(NestError::OutsideDomain(_))
        ));
    }

    #[test]
    fn golden_ratio_nesting() {
        let form = TrinomialForm::new(c(0.5), idx(1, 1), idx(2, 1)).unwrap();
        let rep = euler_nested(&form, &IterConfig::default()).unwrap();
        assert!(rep.is_converged(), "{rep:?}");
        assert!((rep.root - c((5f64.sqrt() - 1.0) / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn bring_radical_basics() {
        let cfg = SeriesConfig::default();
        assert_eq!(bring_radical(c(0.0), &cfg).unwrap(), c(0.0));
        let w = bring_radical(c(0.2), &cfg).unwrap();
        assert!((w + bring_radical(c(-0.2), &cfg).unwrap()).norm() < 1e-15);
        assert!((w.powu(5) + w + 0.2).norm() < 1e-14);
        assert!(bring_radical(c(0.6), &cfg).is_err());
    }

    #[test]
    fn quintic_via_bring_radical() {
        let cfg = SeriesConfig::default();
        let sol = quintic_solve_br(&BringJerrardForm::new(c(1.0), c(0.0)), &cfg, BranchPolicy::RealPreferring).unwrap();
        assert_eq!(sol.root, c(0.0));
        let sol = quintic_solve_br(&BringJerrardForm::new(c(1.0), c(0.1)), &cfg, BranchPolicy::RealPreferring).unwrap();
        assert!(sol.residual < 1e-14);
        let sol = quintic_solve_br(&BringJerrardForm::new(c(-1.0), c(0.05)), &cfg, BranchPolicy::RealPreferring).unwrap();
        assert!(sol.residual < 1e-12);
        assert!(matches!(
            quintic_solve_br(&BringJerrardForm::new(c(0.0), c(1.0)), &cfg, BranchPolicy::Principal),
            Err(NestError::DegenerateCoefficient(_))
        ));
        assert!(matches!(
            quintic_solve_br(&BringJerrardForm::new(c(1.0), c(9.0)), &cfg, BranchPolicy::Principal),
            Err(NestError::OutsideDomain(_))
        ));
    }

    #[test]
    fn literal_scaling_misses() {
        let form = BringJerrardForm::new(c(1.0), c(0.1));
        let trials = quartic_branch_survey(&form, &SeriesConfig::default()).unwrap();
        assert_eq!(trials.len(), 16);
        let best = trials.iter().filter_map(|t| t.residual).fold(f64::INFINITY, f64::min);
        assert!(best > 1e-3, "{best}");
    }

    #[test]
    fn nested_quintic_exact_root() {
        let rep = quintic_solve_nested(&BringJerrardForm::new(c(1.0), c(-2.0)), &IterConfig::default()).unwrap();
        assert!(rep.is_converged());
        assert!((rep.root - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn repulsive_zero_is_never_claimed() {
        let cfg = IterConfig {
            u0: Some(c(1.0)),
            ..IterConfig::default()
        };
        let rep = quintic_solve_nested(&BringJerrardForm::new(c(-5.0), c(0.0)), &cfg).unwrap();
        if rep.is_converged() {
            assert!(rep.root.norm() > 0.5);
            assert!(rep.residual <= cfg.tol * 30.0);
        }
    }
}
