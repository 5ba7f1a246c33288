//! `nestrad solve`: one equation, one root, an oracle verdict.

use clap::ValueEnum;
use nestrad_core::closed_form::roots_upto_quartic;
use nestrad_core::nestcore::quintic_solve_br;
use nestrad_core::reduce::{invert_map, reduce_to_form, ReduceConfig, Selection};
use nestrad_core::resolvent::{h7_eval, h7_printed_variant, nonic_solve, octic_solve, septic_solve, H9Config};
use nestrad_core::{
    all_roots, euler_nested, euler_series, match_root, quintic_solve_nested, solve_quad_nest, BringJerrardForm,
    CubicResolventForm, IterConfig, NestError, Poly, QuadNestForm, RationalIndex, SeriesConfig, SolveReport, Status,
    TargetShape, TrinomialForm, C64,
};

use crate::report::{OracleMatch, Pipeline, ReductionReport, SolveOutput};
use crate::{EquationArgs, Method, Outcome, SolveArgs, EXIT_FAILED, EXIT_OK, EXIT_REDUCTION};

/// Relative source residual below which a recovered preimage counts as a root.
const PREIMAGE_TOL: f64 = 1e-8;

pub(crate) enum Fail {
    Usage(String),
    Numeric(NestError),
}

impl From<NestError> for Fail {
    fn from(e: NestError) -> Self {
        Self::Numeric(e)
    }
}

fn usage(e: NestError) -> Fail {
    Fail::Usage(e.to_string())
}

pub(crate) fn need<T: Copy>(value: Option<T>, flag: &str, method: Method) -> Result<T, Fail> {
    value.ok_or_else(|| Fail::Usage(format!("--method {} needs {flag}", method_name(method))))
}

pub(crate) fn method_name(m: Method) -> String {
    m.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

pub(crate) fn coeff_list<const N: usize>(eq: &EquationArgs, names: &str) -> Result<[C64; N], Fail> {
    let list = eq
        .coeffs
        .as_ref()
        .ok_or_else(|| Fail::Usage(format!("--method {} needs --coeffs {names}", method_name(eq.method))))?;
    <[C64; N]>::try_from(list.0.as_slice()).map_err(|_| {
        Fail::Usage(format!(
            "--method {} needs {N} coefficients ({names}), got {}",
            method_name(eq.method),
            list.0.len()
        ))
    })
}

struct Solved {
    report: SolveReport,
    /// Status text when it differs from `report.status`.
    status: Option<String>,
    poly: Option<Poly>,
    /// Root to match against the oracle when `report.root` is a power of it.
    oracle_root: Option<C64>,
    pipeline: Option<Pipeline>,
}

impl Solved {
    fn plain(report: SolveReport, poly: Option<Poly>) -> Self {
        Self { report, status: None, poly, oracle_root: None, pipeline: None }
    }
}

fn checked(root: C64, residual: f64, scale: f64, tol: f64, notes: Vec<String>) -> SolveReport {
    let status = if residual <= tol * scale { Status::Converged } else { Status::MaxIterations };
    SolveReport { status, root, residual, iterations: 0, trace: None, relaxation: 1.0, notes }
}

fn integral(r: RationalIndex) -> Option<usize> {
    (r.is_integer() && r.num() > 0).then_some(r.num() as usize)
}

pub(crate) fn quad_form(eq: &EquationArgs) -> Result<QuadNestForm, Fail> {
    let m = eq.method;
    let (a, b, c) = (need(eq.a, "--a", m)?, need(eq.b, "--b", m)?, need(eq.c, "--c", m)?);
    let (mu, nu) = (eq.mu.unwrap_or(RationalIndex::ONE), eq.nu.unwrap_or(RationalIndex::ONE));
    QuadNestForm::new(a, b, c, mu, nu).map_err(usage)
}

pub(crate) fn trinomial_form(eq: &EquationArgs) -> Result<TrinomialForm, Fail> {
    let m = eq.method;
    TrinomialForm::new(need(eq.a, "--a", m)?, need(eq.p, "--p", m)?, need(eq.q, "--q", m)?).map_err(usage)
}

pub(crate) fn bring_form(eq: &EquationArgs) -> Result<BringJerrardForm, Fail> {
    let m = eq.method;
    Ok(BringJerrardForm::new(need(eq.big_a, "--A", m)?, need(eq.big_b, "--B", m)?))
}

fn quad_poly(f: &QuadNestForm) -> Option<Poly> {
    let (mu, nu) = (integral(f.mu)?, integral(f.nu)?);
    Poly::from_terms(&[(2 * mu, f.a), (mu, f.b), (0, f.c), (nu, -f.feed)]).ok()
}

fn trinomial_poly(f: &TrinomialForm) -> Option<Poly> {
    let (p, q) = (integral(f.p)?, integral(f.q)?);
    Poly::from_terms(&[(p, f.a * f.q.as_f64()), (q, C64::new(1.0, 0.0)), (0, C64::new(-1.0, 0.0))]).ok()
}

/// `x^n − Σ cᵢ·x^{kᵢ}`.
fn monic_minus(n: usize, terms: &[(usize, C64)]) -> Option<Poly> {
    let mut all = vec![(n, C64::new(1.0, 0.0))];
    all.extend(terms.iter().map(|&(k, c)| (k, -c)));
    Poly::from_terms(&all).ok()
}

fn bring_poly(f: &BringJerrardForm) -> Option<Poly> {
    monic_minus(5, &[(1, -f.a), (0, -f.b)])
}

fn dispatch(eq: &EquationArgs, cfg: &IterConfig, seed: u64) -> Result<Solved, Fail> {
    let m = eq.method;
    let series = SeriesConfig::default();
    match m {
        Method::QuadNest => {
            let form = quad_form(eq)?;
            Ok(Solved::plain(solve_quad_nest(&form, cfg)?, quad_poly(&form)))
        }
        Method::EulerSeries => {
            let form = trinomial_form(eq)?;
            if eq.n == 0 {
                return Err(Fail::Usage("--n must be positive".into()));
            }
            let x = euler_series(&form, 1, &series)?;
            let value = if eq.n == 1 { x } else { euler_series(&form, eq.n, &series)? };
            let (r, s) = form.residual(x, cfg.policy)?;
            let mut notes = vec!["Euler gamma-function series".to_string()];
            if eq.n > 1 {
                notes.push(format!("root reports x^{}; residual and oracle use x = {x}", eq.n));
            }
            let mut solved = Solved::plain(checked(value, r, s, cfg.tol, notes), trinomial_poly(&form));
            solved.oracle_root = Some(x);
            Ok(solved)
        }
        Method::EulerNest => {
            let form = trinomial_form(eq)?;
            Ok(Solved::plain(euler_nested(&form, cfg)?, trinomial_poly(&form)))
        }
        Method::QuinticBr => {
            let form = bring_form(eq)?;
            let sol = quintic_solve_br(&form, &series, cfg.policy)?;
            let (_, scale) = form.residual(sol.root);
            let notes = vec![
                format!("fourth root of A: c = {}", sol.scale),
                format!("Bring radical argument t = B/c⁵ = {}", sol.argument),
            ];
            Ok(Solved::plain(checked(sol.root, sol.residual, scale, cfg.tol, notes), bring_poly(&form)))
        }
        Method::QuinticNest => {
            let form = bring_form(eq)?;
            Ok(Solved::plain(quintic_solve_nested(&form, cfg)?, bring_poly(&form)))
        }
        Method::Septic => {
            let [a, b, c, d] = coeff_list::<4>(eq, "a,b,c,d")?;
            let poly = monic_minus(7, &[(3, a), (2, b), (1, c), (0, d)]);
            Ok(Solved::plain(septic_solve(a, b, c, d, cfg)?, poly))
        }
        Method::Octic => {
            let [a, b, c, d, e] = coeff_list::<5>(eq, "a,b,c,d,e")?;
            let poly = monic_minus(8, &[(4, a), (3, b), (2, c), (1, d), (0, e)]);
            Ok(Solved::plain(octic_solve(a, b, c, d, e, cfg)?, poly))
        }
        Method::Nonic => {
            let [a, b, c, d, e, f] = coeff_list::<6>(eq, "a,b,c,d,e,f")?;
            let poly = monic_minus(9, &[(5, a), (4, b), (3, c), (2, d), (1, e), (0, f)]);
            let h9 = H9Config { series, reduce: ReduceConfig::with_seed(seed) };
            Ok(Solved::plain(nonic_solve(a, b, c, d, e, f, cfg, &h9)?, poly))
        }
        Method::H7 => {
            let [a, b, c, d] = coeff_list::<4>(eq, "a,b,c,d")?;
            let u = need(eq.u, "--u", m)?;
            let form = CubicResolventForm::new(a, b, c, d).map_err(usage)?;
            let poly = Poly::from_terms(&[(3, a), (2, b), (1, c), (0, d - u)]).ok();
            Ok(Solved::plain(h7_eval(&form, u, cfg)?, poly))
        }
        Method::H7Printed => {
            let u = need(eq.u, "--u", m)?;
            let constant = eq.constant.unwrap_or(C64::new(0.5, 0.0));
            let one = C64::new(1.0, 0.0);
            let poly = Poly::from_terms(&[(3, one), (2, one), (0, C64::new(-0.5, 0.0) - u)]).ok();
            Ok(Solved::plain(h7_printed_variant(u, constant, cfg)?, poly))
        }
        Method::Auto => {
            let coeffs = eq.poly.as_ref().ok_or_else(|| Fail::Usage("--method auto needs --poly".into()))?;
            auto(&coeffs.0, cfg, seed)
        }
    }
}

/// Closed forms up to degree four; otherwise reduce to the degree's
/// low-term shape, solve that with its engine, and map the root back.
fn auto(desc: &[C64], cfg: &IterConfig, seed: u64) -> Result<Solved, Fail> {
    let p = Poly::from_descending(desc).map_err(usage)?;
    let n = p.degree();
    let accepts = |x: C64| p.eval_compensated(x).norm() <= cfg.tol * (1.0 + p.magnitude_at(x));
    if n <= 4 {
        let hint = cfg.start();
        let roots = roots_upto_quartic(p.coeffs())?;
        let x = roots
            .iter()
            .copied()
            .min_by(|a, b| (a - hint).norm().total_cmp(&(b - hint).norm()))
            .ok_or(NestError::NoConvergence { sweeps: 0 })?;
        let r = p.eval_compensated(x).norm();
        let status = if accepts(x) { Status::Converged } else { Status::MaxIterations };
        let notes = vec![format!("closed form, root nearest {hint}")];
        let report = SolveReport { status, root: x, residual: r, iterations: 0, trace: None, relaxation: 1.0, notes };
        return Ok(Solved::plain(report, Some(p)));
    }
    let shape = TargetShape::for_degree(n)
        .ok_or_else(|| Fail::Usage(format!("--method auto handles degrees 1 to 9, got {n}")))?;
    let selection = if shape == TargetShape::Quintic { Selection::SmallestBringArgument } else { Selection::BestConditioned };
    let rcfg = ReduceConfig { selection, ..ReduceConfig::with_seed(seed) };
    let red = reduce_to_form(&p, shape, &rcfg)?;
    let v: Vec<C64> = red.named_coefficients().into_iter().map(|(_, c)| c).collect();
    let series = SeriesConfig::default();
    let mut notes = vec![format!("reduced to the {} shape", shape.name())];
    let target = match shape {
        TargetShape::Quintic => {
            let form = BringJerrardForm::new(v[0], v[1]);
            match quintic_solve_br(&form, &series, cfg.policy) {
                Ok(sol) => {
                    let (_, scale) = form.residual(sol.root);
                    notes.push(format!("Bring radical argument t = {}", sol.argument));
                    checked(sol.root, sol.residual, scale, cfg.tol, Vec::new())
                }
                Err(NestError::OutsideDomain(why)) => {
                    notes.push(format!("Bring radical unavailable ({why}); nested iteration used"));
                    quintic_solve_nested(&form, cfg)?
                }
                Err(e) => return Err(e.into()),
            }
        }
        TargetShape::Sextic => {
            let form = QuadNestForm::new(v[0], v[1], v[2], RationalIndex::ONE, RationalIndex::integer(6)?)
                .and_then(|f| f.with_feed(C64::new(-1.0, 0.0)))?;
            solve_quad_nest(&form, cfg)?
        }
        TargetShape::Septic => septic_solve(v[0], v[1], v[2], v[3], cfg)?,
        TargetShape::Octic => octic_solve(v[0], v[1], v[2], v[3], v[4], cfg)?,
        TargetShape::Nonic => {
            let h9 = H9Config { series, reduce: ReduceConfig::with_seed(seed) };
            nonic_solve(v[0], v[1], v[2], v[3], v[4], v[5], cfg, &h9)?
        }
    };
    let pre = invert_map(&red, target.root, &p, PREIMAGE_TOL)?;
    notes.extend(target.notes.iter().cloned());
    let status = if !target.is_converged() {
        None
    } else if accepts(pre.x) {
        None
    } else {
        Some("PreimageMismatch".to_string())
    };
    let report = SolveReport {
        status: target.status,
        root: pre.x,
        residual: pre.residual,
        iterations: target.iterations,
        trace: None,
        relaxation: target.relaxation,
        notes,
    };
    let pipeline = Pipeline {
        reduction: ReductionReport::from(&red),
        target_status: target.status.to_string(),
        target_root: target.root.into(),
        target_residual: target.residual,
        preimage_consistent: pre.consistent,
    };
    Ok(Solved { report, status, poly: Some(p), oracle_root: None, pipeline: Some(pipeline) })
}

pub(crate) fn cmd_solve(args: &SolveArgs, seed: u64) -> Outcome {
    let cfg = match args.iter.config() {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let eq = &args.equation;
    let mut out = SolveOutput::new(&method_name(eq.method), args.iter.policy.label(), seed);
    match dispatch(eq, &cfg, seed) {
        Ok(solved) => {
            out.absorb(&solved.report);
            if let Some(s) = solved.status {
                out.status = s;
            }
            if let Some(p) = &solved.poly {
                match all_roots(p) {
                    Ok(rs) => {
                        let (index, distance) = match_root(solved.oracle_root.unwrap_or(solved.report.root), &rs);
                        out.oracle = Some(OracleMatch { index, distance, degree: p.degree() });
                    }
                    Err(e) => out.branch.notes.push(format!("oracle unavailable: {e}")),
                }
            }
            out.pipeline = solved.pipeline;
            let code = if out.status == Status::Converged.to_string() { EXIT_OK } else { EXIT_FAILED };
            Outcome::json(code, &out)
        }
        Err(Fail::Usage(msg)) => Outcome::usage(msg),
        Err(Fail::Numeric(e)) => {
            out.status = e.kind().to_string();
            out.error = Some(e.to_string());
            let code = if matches!(e, NestError::ReductionFailed { .. }) { EXIT_REDUCTION } else { EXIT_FAILED };
            Outcome::json(code, &out)
        }
    }
}
