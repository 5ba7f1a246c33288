//! `reduce`, `basin` and `verify-modular`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use nestrad_core::basin::{compute, BasinMap};
use nestrad_core::modular::{verify_icosahedral_with, Nome};
use nestrad_core::reduce::{reduce_to_form, ReduceConfig};
use nestrad_core::{BasinGrid, BasinMethod, CubicResolventForm, NestError, Poly, QTruncation, Status, Tau, C64};

use crate::report::{
    BasinOutput, CellOutput, GridSpec, ModularOutput, ModularRun, NestedOutput, ReduceOutput, ReductionReport,
    SCHEMA_VERSION,
};
use crate::solve::{bring_form, coeff_list, method_name, need, quad_form, trinomial_form, Fail};
use crate::{
    BasinArgs, Method, ModularArgs, NomeArg, Outcome, ReduceArgs, Shape, EXIT_FAILED, EXIT_IO, EXIT_OK,
    EXIT_REDUCTION,
};

fn shape_of(s: Shape) -> nestrad_core::TargetShape {
    use nestrad_core::TargetShape as T;
    match s {
        Shape::Quintic => T::Quintic,
        Shape::Sextic => T::Sextic,
        Shape::Septic => T::Septic,
        Shape::Octic => T::Octic,
        Shape::Nonic => T::Nonic,
    }
}

pub(crate) fn cmd_reduce(args: &ReduceArgs, seed: u64) -> Outcome {
    let p = match Poly::from_descending(&args.poly.0) {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let n = p.degree();
    let shape = match args.shape.map(shape_of).or_else(|| nestrad_core::TargetShape::for_degree(n)) {
        Some(s) if s.degree() == n => s,
        Some(s) => return Outcome::usage(format!("shape {} needs degree {}, got {n}", s.name(), s.degree())),
        None => return Outcome::usage(format!("reductions need degree 5 to 9, got {n}")),
    };
    if args.starts == 0 {
        return Outcome::usage("--starts must be positive");
    }
    let cfg = ReduceConfig { starts: args.starts, ..ReduceConfig::with_seed(seed) };
    let mut out = ReduceOutput {
        schema_version: SCHEMA_VERSION,
        command: "reduce",
        status: String::new(),
        degree: n,
        seed,
        result: None,
        best_residual: None,
        error: None,
    };
    match reduce_to_form(&p, shape, &cfg) {
        Ok(r) => {
            out.status = "Reduced".into();
            out.result = Some(ReductionReport::from(&r));
            Outcome::json(EXIT_OK, &out)
        }
        Err(e) => {
            out.status = e.kind().into();
            out.error = Some(e.to_string());
            let code = match e {
                NestError::ReductionFailed { best_residual, .. } => {
                    out.best_residual = Some(best_residual);
                    EXIT_REDUCTION
                }
                _ => EXIT_FAILED,
            };
            Outcome::json(code, &out)
        }
    }
}

fn basin_method(args: &BasinArgs) -> Result<BasinMethod, Fail> {
    let eq = &args.equation;
    let m = eq.method;
    Ok(match m {
        Method::QuadNest => BasinMethod::QuadNest(quad_form(eq)?),
        Method::QuinticNest => BasinMethod::QuinticNest(bring_form(eq)?),
        Method::EulerNest => BasinMethod::EulerNest(trinomial_form(eq)?),
        Method::Septic => BasinMethod::Septic(coeff_list::<4>(eq, "a,b,c,d")?),
        Method::H7 => {
            let [a, b, c, d] = coeff_list::<4>(eq, "a,b,c,d")?;
            let form = CubicResolventForm::new(a, b, c, d).map_err(|e| Fail::Usage(e.to_string()))?;
            BasinMethod::H7 { form, u: need(eq.u, "--u", m)? }
        }
        Method::H7Printed => BasinMethod::H7Printed {
            u: need(eq.u, "--u", m)?,
            constant: eq.constant.unwrap_or(C64::new(0.5, 0.0)),
        },
        other => {
            return Err(Fail::Usage(format!(
                "basin maps support quad-nest, quintic-nest, euler-nest, septic, h7 and h7-printed, not {}",
                method_name(other)
            )))
        }
    })
}

fn write_file(path: &Path, f: impl FnOnce(BufWriter<File>) -> std::io::Result<()>) -> Result<(), String> {
    let file = File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    f(BufWriter::new(file)).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cell_output(map: &BasinMap) -> CellOutput {
    let center = map
        .cells
        .iter()
        .min_by(|a, b| C64::new(a.re, a.im).norm().total_cmp(&C64::new(b.re, b.im).norm()))
        .expect("grids have at least one cell");
    CellOutput {
        re: center.re,
        im: center.im,
        status: center.status.to_string(),
        root_index: center.root_index.map_or(-1, |i| i as i64),
        iterations: center.iterations,
    }
}

pub(crate) fn cmd_basin(args: &BasinArgs) -> Outcome {
    let cfg = match args.iter.config() {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let method = match basin_method(args) {
        Ok(m) => m,
        Err(Fail::Usage(msg)) => return Outcome::usage(msg),
        Err(Fail::Numeric(e)) => return Outcome::usage(e.to_string()),
    };
    let grid = match BasinGrid::new(args.re, args.im, args.nx, args.ny) {
        Ok(g) => g,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let map = match compute(&method, &grid, &cfg) {
        Ok(m) => m,
        Err(e) => {
            return Outcome { code: EXIT_FAILED, stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    let io = write_file(&args.csv, |w| map.write_csv(w)).and_then(|_| match &args.pgm {
        Some(path) => write_file(path, |w| map.write_pgm(w)),
        None => Ok(()),
    });
    if let Err(msg) = io {
        return Outcome { code: EXIT_IO, stdout: String::new(), stderr: format!("error: {msg}\n") };
    }
    let counts: BTreeMap<String, usize> = [Status::Converged, Status::MaxIterations, Status::Diverged, Status::OutsideDomain]
        .into_iter()
        .map(|s| (s.to_string(), map.count(s)))
        .collect();
    let out = BasinOutput {
        schema_version: SCHEMA_VERSION,
        command: "basin",
        method: map.method,
        grid: GridSpec { re: [grid.re_range.0, grid.re_range.1], im: [grid.im_range.0, grid.im_range.1], nx: grid.nx, ny: grid.ny },
        counts,
        roots: crate::report::complexes(&map.roots),
        center: cell_output(&map),
        csv: args.csv.display().to_string(),
        pgm: args.pgm.as_ref().map(|p| p.display().to_string()),
    };
    Outcome::json(EXIT_OK, &out)
}

pub(crate) fn cmd_verify_modular(args: &ModularArgs) -> Outcome {
    let cfg = match args.iter.config() {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    if args.nmax.0.is_empty() || !(args.identity_tol > 0.0) {
        return Outcome::usage("--nmax needs at least one order and --identity-tol must be positive");
    }
    let (nome, label) = match args.nome {
        NomeArg::Full => (Nome::Full, "full"),
        NomeArg::Half => (Nome::Half, "half"),
    };
    let mut out = ModularOutput {
        schema_version: SCHEMA_VERSION,
        command: "verify-modular",
        status: String::new(),
        tau: args.tau.into(),
        nome: label,
        tolerance: args.identity_tol,
        runs: Vec::new(),
        spread_y: None,
        spread_j: None,
        error: None,
    };
    let fail = |mut out: ModularOutput, e: NestError| {
        out.status = e.kind().into();
        out.error = Some(e.to_string());
        Outcome::json(EXIT_FAILED, &out)
    };
    let tau = match Tau::new(args.tau) {
        Ok(t) => t,
        Err(e) => return fail(out, e),
    };
    let mut values: Vec<(C64, C64)> = Vec::new();
    for &n_max in &args.nmax.0 {
        let t = match QTruncation::new(n_max, args.cf_depth) {
            Ok(t) => t,
            Err(e) => return Outcome::usage(e.to_string()),
        };
        let rep = match verify_icosahedral_with(&tau, &t, &cfg, nome) {
            Ok(r) => r,
            Err(e) => return fail(out, e),
        };
        values.push((rep.y, rep.j));
        out.runs.push(ModularRun {
            n_max,
            cf_depth: args.cf_depth,
            q: rep.q.into(),
            r: rep.r.into(),
            y: rep.y.into(),
            j: rep.j.into(),
            identity_residual: rep.identity_residual,
            identity_absolute: rep.identity_absolute,
            identity_passes: rep.identity_residual <= args.identity_tol,
            nested: NestedOutput {
                status: rep.nested.status.to_string(),
                root: rep.nested.root.into(),
                residual: rep.nested.residual,
                iterations: rep.nested.iterations,
                distance_to_y: rep.nested_distance,
                matches_y: rep.nested_matches,
            },
        });
    }
    if values.len() > 1 {
        let spread = |pick: fn(&(C64, C64)) -> C64| {
            let base = pick(&values[0]);
            values.iter().map(|v| (pick(v) - base).norm()).fold(0.0, f64::max)
        };
        out.spread_y = Some(spread(|v| v.0));
        out.spread_j = Some(spread(|v| v.1));
    }
    let pass = out.runs.iter().all(|r| r.identity_passes);
    out.status = if pass { "Verified" } else { "IdentityFailed" }.into();
    Outcome::json(if pass { EXIT_OK } else { EXIT_FAILED }, &out)
}
