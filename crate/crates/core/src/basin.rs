//! Empirical convergence maps: every cell of a grid of initial iterates is
//! solved independently and classified by outcome and by which root it found.

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{NestError, Result};
use crate::iterate::{IterConfig, SolveReport, Status};
use crate::nestcore::{euler_nested, quintic_solve_nested, solve_quad_nest, BringJerrardForm, QuadNestForm, TrinomialForm};
use crate::oracle::{all_roots, match_root, RootSet};
use crate::poly::Poly;
use crate::resolvent::{h7_eval, h7_printed_variant, septic_solve, CubicResolventForm};

pub const MAX_SIDE: usize = 4096;

/// The equation whose nesting is mapped. The grid varies the initial iterate.
#[derive(Clone, Debug, PartialEq)]
pub enum BasinMethod {
    QuadNest(QuadNestForm),
    QuinticNest(BringJerrardForm),
    EulerNest(TrinomialForm),
    /// `y⁷ = a·y³ + b·y² + c·y + d` as `[a, b, c, d]`.
    Septic([Complex64; 4]),
    H7 { form: CubicResolventForm, u: Complex64 },
    H7Printed { u: Complex64, constant: Complex64 },
}

impl BasinMethod {
    pub fn name(&self) -> &'static str {
        match self {
            Self::QuadNest(_) => "quad-nest",
            Self::QuinticNest(_) => "quintic-nest",
            Self::EulerNest(_) => "euler-nest",
            Self::Septic(_) => "septic",
            Self::H7 { .. } => "h7",
            Self::H7Printed { .. } => "h7-printed",
        }
    }

    fn solve(&self, cfg: &IterConfig) -> Result<SolveReport> {
        match self {
            Self::QuadNest(form) => solve_quad_nest(form, cfg),
            Self::QuinticNest(form) => quintic_solve_nested(form, cfg),
            Self::EulerNest(form) => euler_nested(form, cfg),
            Self::Septic([a, b, c, d]) => septic_solve(*a, *b, *c, *d, cfg),
            Self::H7 { form, u } => h7_eval(form, *u, cfg),
            Self::H7Printed { u, constant } => h7_printed_variant(*u, *constant, cfg),
        }
    }

    /// The polynomial whose roots the nesting can reach, when the exponents
    /// are integral.
    pub fn polynomial(&self) -> Option<Poly> {
        let one = Complex64::new(1.0, 0.0);
        let mut terms: Vec<(usize, Complex64)> = Vec::new();
        match self {
            Self::QuadNest(f) => {
                let (mu, nu) = (integral(f.mu.num(), f.mu.den())?, integral(f.nu.num(), f.nu.den())?);
                terms.extend([(2 * mu, f.a), (mu, f.b), (0, f.c), (nu, -f.feed)]);
            }
            Self::QuinticNest(f) => terms.extend([(5, one), (1, f.a), (0, f.b)]),
            Self::EulerNest(f) => {
                let (p, q) = (integral(f.p.num(), f.p.den())?, integral(f.q.num(), f.q.den())?);
                terms.extend([(p, f.a * f.q.as_f64()), (q, one), (0, -one)]);
            }
            Self::Septic([a, b, c, d]) => terms.extend([(7, one), (3, -a), (2, -b), (1, -c), (0, -d)]),
            Self::H7 { form, u } => terms.extend([(3, form.a), (2, form.b), (1, form.c), (0, form.d - u)]),
            Self::H7Printed { u, constant } => terms.extend([(3, one), (2, one), (0, -(u + constant))]),
        }
        Poly::from_terms(&terms).ok()
    }
}

fn integral(num: i64, den: i64) -> Option<usize> {
    (den == 1 && num > 0).then_some(num as usize)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasinGrid {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl BasinGrid {
    pub fn new(re_range: (f64, f64), im_range: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        let ordered = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 <= r.1;
        if !ordered(re_range) || !ordered(im_range) {
            return Err(NestError::InvalidInput("grid ranges must be finite with lo ≤ hi".into()));
        }
        if nx == 0 || ny == 0 || nx > MAX_SIDE || ny > MAX_SIDE {
            return Err(NestError::InvalidInput(format!(
                "grid resolution must be between 1 and {MAX_SIDE} per side, got {nx}×{ny}"
            )));
        }
        Ok(Self { re_range, im_range, nx, ny })
    }

    /// Initial iterate at column `i`, row `j`. Rows run from the top
    /// (largest imaginary part) down; a side of one cell uses the midpoint.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        let node = |(lo, hi): (f64, f64), k: usize, n: usize| {
            if n == 1 {
                0.5 * (lo + hi)
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        };
        let re = node(self.re_range, i, self.nx);
        let im = node((self.im_range.1, self.im_range.0), j, self.ny);
        Complex64::new(re, im)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub re: f64,
    pub im: f64,
    pub status: Status,
    /// Index of the root reached, or `None` when the cell did not converge.
    pub root_index: Option<usize>,
    pub root: Complex64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasinMap {
    pub grid: BasinGrid,
    pub method: &'static str,
    /// Row-major, top row first.
    pub cells: Vec<Cell>,
    /// Roots the indices refer to: the oracle's roots when the equation is
    /// polynomial, otherwise distinct limits in order of first appearance.
    pub roots: Vec<Complex64>,
}

/// Solves the nesting from every grid point, in parallel.
pub fn compute(method: &BasinMethod, grid: &BasinGrid, cfg: &IterConfig) -> Result<BasinMap> {
    cfg.validate()?;
    let oracle: Option<RootSet> = match method.polynomial() {
        Some(p) => Some(all_roots(&p)?),
        None => None,
    };
    let mut cells: Vec<Cell> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let z = grid.point(k % grid.nx, k / grid.nx);
            let cell_cfg = IterConfig { u0: Some(z), keep_trace: false, ..cfg.clone() };
            let (status, root, iterations) = match method.solve(&cell_cfg) {
                Ok(r) => (r.status, r.root, r.iterations),
                Err(NestError::OutsideDomain(_) | NestError::Domain(_)) => (Status::OutsideDomain, z, 0),
                Err(_) => (Status::Diverged, z, 0),
            };
            Cell { re: z.re, im: z.im, status, root_index: None, root, iterations }
        })
        .collect();

    let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-6 * (1.0 + b.norm());
    let mut roots = oracle.as_ref().map(|o| o.roots.clone()).unwrap_or_default();
    for cell in cells.iter_mut().filter(|c| c.status == Status::Converged) {
        cell.root_index = match &oracle {
            Some(o) => {
                let (i, _) = match_root(cell.root, o);
                close(cell.root, o.roots[i]).then_some(i)
            }
            None => Some(match roots.iter().position(|&r| close(cell.root, r)) {
                Some(i) => i,
                None => {
                    roots.push(cell.root);
                    roots.len() - 1
                }
            }),
        };
    }
    Ok(BasinMap { grid: *grid, method: method.name(), cells, roots })
}

impl BasinMap {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "re,im,status,root_index,iterations")?;
        for c in &self.cells {
            let index = c.root_index.map_or(-1, |i| i as i64);
            writeln!(out, "{},{},{},{},{}", c.re, c.im, c.status, index, c.iterations)?;
        }
        Ok(())
    }

    /// Binary greyscale image, one pixel per cell: 255 for cells that did
    /// not converge, otherwise a shade keyed by root index.
    pub fn write_pgm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P5\n{} {}\n255\n", self.grid.nx, self.grid.ny)?;
        let pixels: Vec<u8> = self.cells.iter().map(|c| shade(c.root_index)).collect();
        out.write_all(&pixels)
    }

    pub fn count(&self, status: Status) -> usize {
        self.cells.iter().filter(|c| c.status == status).count()
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.grid.nx + i]
    }
}

fn shade(index: Option<usize>) -> u8 {
    match index {
        Some(i) => ((40 * i) % 240) as u8,
        None => 255,
    }
}
