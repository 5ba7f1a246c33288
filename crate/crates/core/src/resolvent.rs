//! Resolvent functions and the septic, octic and nonic solvers built on them.
//!
//! `H₇(u)` inverts the cubic `a·H³ + b·H² + c·H + d = u` by a periodic nested
//! cube root; `H₉(u)` inverts a quintic through a Bring–Jerrard reduction and
//! the Bring radical. A power form `P(x^μ) = x^ν` is then solved by iterating
//! `x^ν ← H(x^ν)^{ν/μ}`.

use std::cell::Cell;

use num_complex::Complex64;

use crate::closed_form::{quadratic, roots_upto_quartic};
use crate::error::{NestError, Result};
use crate::iterate::{fixed_point, sanitize, Halt, IterConfig, Run, SolveReport, Status};
use crate::nestcore::{direct_report, quintic_solve_br, solve_quad_nest, BringJerrardForm, QuadNestForm};
use crate::numerics::{radical, BranchPolicy, RationalIndex, SeriesConfig};
use crate::poly::Poly;
use crate::reduce::{self, ReduceConfig, ReductionResult, Selection, TargetShape, TschirnhausMap};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

fn idx(n: i64) -> RationalIndex {
    RationalIndex::integer(n).expect("non-zero integer index")
}

/// `a·H³ + b·H² + c·H + d = u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicResolventForm {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl CubicResolventForm {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if is_zero(a) {
            return Err(NestError::DegenerateCoefficient("cubic coefficient a is zero".into()));
        }
        Ok(Self { a, b, c, d })
    }

    /// `Δ₃ = 4bd − c²`.
    pub fn delta3(&self) -> Complex64 {
        4.0 * self.b * self.d - self.c * self.c
    }

    pub fn eval(&self, h: Complex64) -> Complex64 {
        ((self.a * h + self.b) * h + self.c) * h + self.d
    }

    /// `(|a·H³ + b·H² + c·H + d − u|, scale)`.
    pub fn residual(&self, h: Complex64, u: Complex64) -> (f64, f64) {
        let r = h.norm();
        let scale = 1.0
            + u.norm()
            + self.a.norm() * r.powi(3)
            + self.b.norm() * r * r
            + self.c.norm() * r
            + self.d.norm();
        ((self.eval(h) - u).norm(), scale)
    }

    /// One step of the completed-square nesting
    /// `H ↦ (u/a − Δ₃/(4ba) − (b/a)·(c/(2b) + H)²)^{1/3}`.
    pub fn h7_step(&self, h: Complex64, u: Complex64, policy: BranchPolicy) -> Result<Complex64> {
        let (a, b, c) = (self.a, self.b, self.c);
        let square = radical(c / (2.0 * b) + h, RationalIndex::new(1, 2)?, policy)?;
        radical(u / a - self.delta3() / (4.0 * b * a) - b / a * square, idx(3), policy)
    }

    /// One step of the direct nesting `H ↦ ((u − d − c·H − b·H²)/a)^{1/3}`.
    pub fn direct_step(&self, h: Complex64, u: Complex64, policy: BranchPolicy) -> Result<Complex64> {
        radical((u - self.d - self.c * h - self.b * h * h) / self.a, idx(3), policy)
    }
}

fn report_from_run(run: Run, root: Complex64, residual: f64, extra: Vec<String>) -> SolveReport {
    let (root, residual) = sanitize(root, residual);
    let mut notes = extra;
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

fn iterate_cubic<S>(form: &CubicResolventForm, u: Complex64, cfg: &IterConfig, step: S) -> SolveReport
where
    S: Fn(Complex64) -> Result<Complex64>,
{
    let run = fixed_point(
        cfg.start(),
        cfg,
        1.0 + form.a.norm() + form.b.norm() + form.c.norm() + form.d.norm() + u.norm(),
        |h| step(h).map_err(Halt::from_error),
        |h| {
            let (r, s) = form.residual(h, u);
            r <= cfg.tol * s
        },
    );
    let h = run.point;
    let (r, _) = form.residual(h, u);
    report_from_run(run, h, r, Vec::new())
}

/// `H₇(u)` by the completed-square nesting. Requires `b ≠ 0`; use
/// [`invert_cubic`] for the general case.
pub fn h7_eval(form: &CubicResolventForm, u: Complex64, cfg: &IterConfig) -> Result<SolveReport> {
    cfg.validate()?;
    if is_zero(form.a) {
        return Err(NestError::DegenerateCoefficient("cubic coefficient a is zero".into()));
    }
    if is_zero(form.b) {
        return Err(NestError::DegenerateCoefficient(
            "b = 0: the completed square divides by b; use the direct nesting".into(),
        ));
    }
    Ok(iterate_cubic(form, u, cfg, |h| form.h7_step(h, u, cfg.policy)))
}

/// Solves `a·H³ + b·H² + c·H + d = u` for any coefficients: the
/// completed-square nesting when `b` is usable, the direct nesting when `b`
/// is zero or negligible, and closed forms when the cubic term is absent.
/// Closed-form roots are chosen nearest to `cfg.u0`.
pub fn invert_cubic(form: &CubicResolventForm, u: Complex64, cfg: &IterConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let CubicResolventForm { a, b, c, d } = *form;
    if is_zero(a) {
        let hint = cfg.start();
        let roots: Vec<Complex64> = if !is_zero(b) {
            quadratic(b, c, d - u).to_vec()
        } else if !is_zero(c) {
            vec![(u - d) / c]
        } else {
            return Err(NestError::DegenerateCoefficient("cubic is constant in H".into()));
        };
        let h = roots
            .into_iter()
            .min_by(|x, y| (x - hint).norm().total_cmp(&(y - hint).norm()))
            .unwrap_or(ZERO);
        let (r, s) = form.residual(h, u);
        return Ok(direct_report(h, r, cfg.tol * s, "closed form (no cubic term)"));
    }
    let negligible = b.norm() <= 1e-8 * (a.norm() + c.norm() + d.norm() + u.norm());
    if negligible {
        Ok(iterate_cubic(form, u, cfg, |h| form.direct_step(h, u, cfg.policy)))
    } else {
        h7_eval(form, u, cfg)
    }
}

/// The nesting `W ↦ u + k − W^{2/3}`, `H = W^{1/3}`, whose fixed points
/// satisfy `H³ + H² = u + k`. Kept for comparing the constant `k` in basin
/// studies; residuals are measured against `H³ + H² − 1/2 = u`.
pub fn h7_printed_variant(u: Complex64, constant: Complex64, cfg: &IterConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let policy = cfg.policy;
    let form = CubicResolventForm::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), ZERO, Complex64::new(-0.5, 0.0))?;
    let two_thirds = RationalIndex::new(3, 2)?;
    let cube = idx(3);
    let run = fixed_point(
        cfg.start(),
        cfg,
        1.0 + u.norm() + constant.norm(),
        |w| Ok(u + constant - radical(w, two_thirds, policy).map_err(Halt::from_error)?),
        |w| match radical(w, cube, policy) {
            Ok(h) => {
                let (r, s) = form.residual(h, u);
                r <= cfg.tol * s
            }
            Err(_) => false,
        },
    );
    let h = radical(run.point, cube, policy).unwrap_or(ZERO);
    let (r, _) = form.residual(h, u);
    Ok(report_from_run(run, h, r, vec![format!("constant {constant}")]))
}

/// `a·H⁵ + b·H⁴ + c·H³ + d·H² + e·H + f = u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuinticResolventForm {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub f: Complex64,
}

impl QuinticResolventForm {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64, e: Complex64, f: Complex64) -> Result<Self> {
        if is_zero(a) {
            return Err(NestError::DegenerateCoefficient("quintic coefficient a is zero".into()));
        }
        Ok(Self { a, b, c, d, e, f })
    }

    fn coeffs_minus(&self, u: Complex64) -> Vec<Complex64> {
        vec![self.f - u, self.e, self.d, self.c, self.b, self.a]
    }

    pub fn eval(&self, h: Complex64) -> Complex64 {
        ((((self.a * h + self.b) * h + self.c) * h + self.d) * h + self.e) * h + self.f
    }

    pub fn residual(&self, h: Complex64, u: Complex64) -> (f64, f64) {
        let r = h.norm();
        let scale = 1.0
            + u.norm()
            + [self.f, self.e, self.d, self.c, self.b, self.a]
                .iter()
                .enumerate()
                .map(|(k, c)| c.norm() * r.powi(k as i32))
                .sum::<f64>();
        ((self.eval(h) - u).norm(), scale)
    }
}

/// Settings for the quintic resolvent pipeline.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct H9Config {
    pub series: SeriesConfig,
    pub reduce: ReduceConfig,
}

struct H9Value {
    h: Complex64,
    residual: f64,
    map: TschirnhausMap,
    argument: Complex64,
}

fn h9_from_reduction(
    form: &QuinticResolventForm,
    poly: &Poly,
    u: Complex64,
    r: &ReductionResult,
    cfg: &IterConfig,
    h9: &H9Config,
) -> Result<H9Value> {
    let bj: BringJerrardForm = r
        .bring_jerrard_form()
        .ok_or_else(|| NestError::InvalidInput("reduction target is not a quintic".into()))?;
    let (g, argument) = if is_zero(bj.a) {
        (radical(-bj.b, idx(5), cfg.policy)?, ZERO)
    } else {
        let sol = quintic_solve_br(&bj, &h9.series, cfg.policy)?;
        (sol.root, sol.argument)
    };
    let pre = reduce::invert_map(r, g, poly, cfg.tol.max(1e-12)).map_err(|e| match e {
        NestError::AmbiguousPreimage { candidates } => NestError::AmbiguousRoot { candidates },
        other => other,
    })?;
    let (residual, _) = form.residual(pre.x, u);
    Ok(H9Value {
        h: pre.x,
        residual,
        map: r.map,
        argument,
    })
}

fn h9_solve(
    form: &QuinticResolventForm,
    u: Complex64,
    hint: Option<Complex64>,
    warm: Option<TschirnhausMap>,
    cfg: &IterConfig,
    h9: &H9Config,
) -> Result<H9Value> {
    let poly = Poly::new(form.coeffs_minus(u))?;
    let rcfg = ReduceConfig {
        selection: Selection::SmallestBringArgument,
        warm_start: warm,
        ..h9.reduce.clone()
    };
    let candidates = reduce::reduction_candidates(&poly, TargetShape::Quintic, &rcfg)?;
    let mut last_err = None;
    let mut values = Vec::new();
    for r in &candidates {
        match h9_from_reduction(form, &poly, u, r, cfg, h9) {
            Ok(v) => values.push(v),
            Err(e) => last_err = Some(e),
        }
    }
    let real_problem = poly.is_real() && cfg.policy == BranchPolicy::RealPreferring;
    let key = |v: &H9Value| -> (u8, f64) {
        let contract = v.residual <= cfg.tol.max(1e-12) * form.residual(v.h, u).1;
        let bad = u8::from(!contract);
        match hint {
            Some(h0) => (bad, (v.h - h0).norm()),
            None => {
                let nonreal = real_problem && v.h.im.abs() > 1e-9 * (1.0 + v.h.norm());
                (bad * 2 + u8::from(nonreal), v.argument.norm())
            }
        }
    };
    let best = values
        .into_iter()
        .enumerate()
        .min_by(|(i, x), (j, y)| {
            let (kx, ky) = (key(x), key(y));
            kx.0.cmp(&ky.0).then(kx.1.total_cmp(&ky.1)).then(i.cmp(j))
        })
        .map(|(_, v)| v);
    best.ok_or_else(|| {
        last_err.unwrap_or(NestError::ReductionFailed {
            reason: "no reduction produced a usable Bring radical".into(),
            best_residual: f64::INFINITY,
        })
    })
}

/// `H₉(u)`: reduce the quintic `a·H⁵ + … + (f − u)` to Bring–Jerrard form,
/// evaluate the reduced root by the Bring radical and map it back through
/// the quartic transformation. `cfg.u0`, when set, picks the candidate
/// nearest to it; otherwise real roots of real problems are preferred, then
/// the smallest Bring radical argument.
pub fn h9_eval(form: &QuinticResolventForm, u: Complex64, cfg: &IterConfig, h9: &H9Config) -> Result<SolveReport> {
    cfg.validate()?;
    if is_zero(form.a) {
        return Err(NestError::DegenerateCoefficient("quintic coefficient a is zero".into()));
    }
    let v = h9_solve(form, u, cfg.u0, None, cfg, h9)?;
    let (_, scale) = form.residual(v.h, u);
    let mut rep = direct_report(v.h, v.residual, cfg.tol * scale, "Bring–Jerrard reduction and Bring radical");
    rep.notes.push(format!("Bring radical argument {}", v.argument));
    Ok(rep)
}

/// The inner equation of a power form.
#[derive(Clone, Debug, PartialEq)]
pub enum ResolventInner {
    /// `a·X² + b·X + c`, solved by the quadratic nesting.
    Quadratic { a: Complex64, b: Complex64, c: Complex64 },
    Cubic(CubicResolventForm),
    Quintic(QuinticResolventForm),
}

/// `P(x^μ) = x^ν` with `P` the inner polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerForm {
    pub inner: ResolventInner,
    pub mu: RationalIndex,
    pub nu: RationalIndex,
}

impl PowerForm {
    pub fn new(inner: ResolventInner, mu: RationalIndex, nu: RationalIndex) -> Result<Self> {
        if !mu.is_positive() || !nu.is_positive() {
            return Err(NestError::InvalidInput(format!("exponents must be positive, got μ={mu}, ν={nu}")));
        }
        Ok(Self { inner, mu, nu })
    }

    fn inner_eval(&self, x: Complex64) -> Complex64 {
        match &self.inner {
            ResolventInner::Quadratic { a, b, c } => (a * x + b) * x + c,
            ResolventInner::Cubic(f) => f.eval(x),
            ResolventInner::Quintic(f) => f.eval(x),
        }
    }

    fn inner_scale(&self, x: Complex64) -> f64 {
        let r = x.norm();
        let cs: Vec<Complex64> = match &self.inner {
            ResolventInner::Quadratic { a, b, c } => vec![*c, *b, *a],
            ResolventInner::Cubic(f) => vec![f.d, f.c, f.b, f.a],
            ResolventInner::Quintic(f) => vec![f.f, f.e, f.d, f.c, f.b, f.a],
        };
        cs.iter().enumerate().map(|(k, c)| c.norm() * r.powi(k as i32)).sum()
    }

    fn coeff_sum(&self) -> f64 {
        match &self.inner {
            ResolventInner::Quadratic { a, b, c } => a.norm() + b.norm() + c.norm(),
            ResolventInner::Cubic(f) => f.a.norm() + f.b.norm() + f.c.norm() + f.d.norm(),
            ResolventInner::Quintic(f) => [f.a, f.b, f.c, f.d, f.e, f.f].iter().map(|c| c.norm()).sum(),
        }
    }

    /// `(|P(x^μ) − x^ν|, scale)`.
    pub fn residual(&self, x: Complex64, policy: BranchPolicy) -> Result<(f64, f64)> {
        let xm = radical(x, self.mu.recip(), policy)?;
        let xn = radical(x, self.nu.recip(), policy)?;
        Ok(((self.inner_eval(xm) - xn).norm(), 1.0 + self.inner_scale(xm) + xn.norm()))
    }
}

/// Solves `H(V)` for the inner equation `P(H) = V`, warm-started at `hint`.
fn inner_solve(
    form: &PowerForm,
    v: Complex64,
    hint: Complex64,
    warm: &Cell<Option<TschirnhausMap>>,
    cfg: &IterConfig,
    h9: &H9Config,
) -> std::result::Result<Complex64, Halt> {
    let inner_cfg = IterConfig {
        u0: Some(hint),
        keep_trace: false,
        ..cfg.clone()
    };
    match &form.inner {
        ResolventInner::Cubic(f) => {
            let rep = invert_cubic(f, v, &inner_cfg)?;
            if rep.is_converged() {
                Ok(rep.root)
            } else {
                Err(Halt::from_report("cubic resolvent", &rep))
            }
        }
        ResolventInner::Quintic(f) => {
            if is_zero(f.a) {
                let mut cs = f.coeffs_minus(v);
                cs.pop();
                let roots = roots_upto_quartic(&cs)?;
                return roots
                    .into_iter()
                    .min_by(|x, y| (x - hint).norm().total_cmp(&(y - hint).norm()))
                    .ok_or_else(|| Halt::new(Status::OutsideDomain, "empty root set"));
            }
            let value = h9_solve(f, v, Some(hint), warm.get(), &inner_cfg, h9)?;
            warm.set(Some(value.map));
            let (_, scale) = f.residual(value.h, v);
            if value.residual <= cfg.tol.max(1e-12) * scale {
                Ok(value.h)
            } else {
                Err(Halt::new(
                    Status::MaxIterations,
                    format!("quintic resolvent residual {:e} above contract", value.residual),
                ))
            }
        }
        ResolventInner::Quadratic { .. } => unreachable!("quadratic inner is delegated"),
    }
}

/// Solves a power form by iterating `V ← H(V)^{ν/μ}` on `V = x^ν`, with the
/// inner resolvent warm-started from its previous value. Returns
/// `x = H(V)^{1/μ}`.
pub fn power_form_solve(form: &PowerForm, cfg: &IterConfig) -> Result<SolveReport> {
    power_form_solve_with(form, cfg, &H9Config::default())
}

pub fn power_form_solve_with(form: &PowerForm, cfg: &IterConfig, h9: &H9Config) -> Result<SolveReport> {
    cfg.validate()?;
    if let ResolventInner::Quadratic { a, b, c } = form.inner {
        let q = QuadNestForm::new(a, b, c, form.mu, form.nu)?;
        return solve_quad_nest(&q, cfg);
    }
    let policy = cfg.policy;
    let ratio = form.mu.div(form.nu);
    let hint = Cell::new(ZERO);
    let warm = Cell::new(None);
    let recover = |h: Complex64| radical(h, form.mu, policy);
    let run = fixed_point(
        cfg.start(),
        cfg,
        1.0 + form.coeff_sum(),
        |v| {
            let h = inner_solve(form, v, hint.get(), &warm, cfg, h9)?;
            hint.set(h);
            radical(h, ratio, policy).map_err(Halt::from_error)
        },
        |v| {
            let Ok(h) = inner_solve(form, v, hint.get(), &warm, cfg, h9) else {
                return false;
            };
            match recover(h).and_then(|x| form.residual(x, policy)) {
                Ok((r, s)) => r <= cfg.tol * s,
                Err(_) => false,
            }
        },
    );
    let finalize = || -> Option<(Complex64, f64)> {
        let h = inner_solve(form, run.point, hint.get(), &warm, cfg, h9).ok()?;
        let x = recover(h).ok()?;
        let (r, _) = form.residual(x, policy).ok()?;
        Some((x, r))
    };
    let (x, r) = finalize().unwrap_or((hint.get(), f64::MAX));
    Ok(report_from_run(run, x, r, Vec::new()))
}

fn septic_residual(coeffs: [Complex64; 4], y: Complex64) -> (f64, f64) {
    let [a, b, c, d] = coeffs;
    let r = y.norm();
    let v = y.powu(7) - ((a * y + b) * y + c) * y - d;
    let scale = 1.0 + r.powi(7) + a.norm() * r.powi(3) + b.norm() * r * r + c.norm() * r + d.norm();
    (v.norm(), scale)
}

/// Solves `y⁷ = a·y³ + b·y² + c·y + d` by the two-level nesting
/// `y = H₇(H₇(H₇(…)⁷)⁷)`.
pub fn septic_solve(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    cfg: &IterConfig,
) -> Result<SolveReport> {
    cfg.validate()?;
    if is_zero(a) && is_zero(b) && is_zero(c) {
        let y = radical(d, idx(7), cfg.policy)?;
        let (r, s) = septic_residual([a, b, c, d], y);
        return Ok(direct_report(y, r, cfg.tol * s, "pure seventh root"));
    }
    let form = PowerForm::new(ResolventInner::Cubic(CubicResolventForm { a, b, c, d }), RationalIndex::ONE, idx(7))?;
    power_form_solve(&form, cfg)
}

fn octic_residual(coeffs: [Complex64; 5], x: Complex64) -> (f64, f64) {
    let [a, b, c, d, e] = coeffs;
    let r = x.norm();
    let v = x.powu(8) - a * x.powu(4) - ((b * x + c) * x + d) * x - e;
    let scale = 1.0 + r.powi(8) + a.norm() * r.powi(4) + b.norm() * r.powi(3) + c.norm() * r * r + d.norm() * r + e.norm();
    (v.norm(), scale)
}

/// Solves `x⁸ = a·x⁴ + b·x³ + c·x² + d·x + e` through the fixed point of
/// `ξ ↦ H₇(ξ)⁸ − a·H₇(ξ)⁴` with `H₇` inverting `b·H³ + c·H² + d·H + e`;
/// the root is `x = H₇(ξ)`.
pub fn octic_solve(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    e: Complex64,
    cfg: &IterConfig,
) -> Result<SolveReport> {
    cfg.validate()?;
    let coeffs = [a, b, c, d, e];
    let policy = cfg.policy;
    if is_zero(b) && is_zero(c) && is_zero(d) {
        // x⁸ − a·x⁴ − e = 0 is a quadratic in x⁴
        let x4 = a / 2.0 + radical(a * a / 4.0 + e, idx(2), policy)?;
        let x = radical(x4, idx(4), policy)?;
        let (r, s) = octic_residual(coeffs, x);
        return Ok(direct_report(x, r, cfg.tol * s, "biquadratic closed form in x⁴"));
    }
    let cubic = CubicResolventForm { a: b, b: c, c: d, d: e };
    let hint = Cell::new(ZERO);
    let inner = |xi: Complex64, h0: Complex64| -> std::result::Result<Complex64, Halt> {
        let inner_cfg = IterConfig {
            u0: Some(h0),
            keep_trace: false,
            ..cfg.clone()
        };
        let rep = invert_cubic(&cubic, xi, &inner_cfg)?;
        if rep.is_converged() {
            Ok(rep.root)
        } else {
            Err(Halt::from_report("cubic resolvent", &rep))
        }
    };
    let h8 = |h: Complex64| {
        let h4 = h.powu(4);
        h4 * h4 - a * h4
    };
    let run = fixed_point(
        cfg.start(),
        cfg,
        1.0 + coeffs.iter().map(|c| c.norm()).sum::<f64>(),
        |xi| {
            let h = inner(xi, hint.get())?;
            hint.set(h);
            Ok(h8(h))
        },
        |xi| match inner(xi, hint.get()) {
            Ok(h) => {
                let (r, s) = octic_residual(coeffs, h);
                r <= cfg.tol * s
            }
            Err(_) => false,
        },
    );
    let (x, r, defect) = match inner(run.point, hint.get()) {
        Ok(h) => (h, octic_residual(coeffs, h).0, (h8(h) - run.point).norm()),
        Err(_) => (hint.get(), f64::MAX, f64::MAX),
    };
    Ok(report_from_run(run, x, r, vec![format!("|H₈(ξ) − ξ| = {defect:e}")]))
}

fn nonic_residual(coeffs: [Complex64; 6], y: Complex64) -> (f64, f64) {
    let r = y.norm();
    let poly = coeffs
        .iter()
        .fold(ZERO, |acc, &c| acc * y + c);
    let scale = 1.0
        + r.powi(9)
        + coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm() * r.powi(5 - i as i32))
            .sum::<f64>();
    ((y.powu(9) - poly).norm(), scale)
}

/// Solves `y⁹ = a·y⁵ + b·y⁴ + c·y³ + d·y² + e·y + f` by iterating
/// `u ← H₉(u)⁹`.
#[allow(clippy::too_many_arguments)]
pub fn nonic_solve(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    e: Complex64,
    f: Complex64,
    cfg: &IterConfig,
    h9: &H9Config,
) -> Result<SolveReport> {
    cfg.validate()?;
    let coeffs = [a, b, c, d, e, f];
    if coeffs[..5].iter().all(|&c| is_zero(c)) {
        let y = radical(f, idx(9), cfg.policy)?;
        let (r, s) = nonic_residual(coeffs, y);
        return Ok(direct_report(y, r, cfg.tol * s, "pure ninth root"));
    }
    let form = PowerForm::new(
        ResolventInner::Quintic(QuinticResolventForm { a, b, c, d, e, f }),
        RationalIndex::ONE,
        idx(9),
    )?;
    power_form_solve_with(&form, cfg, h9)
}
