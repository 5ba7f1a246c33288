//! Tschirnhaus transformations.
//!
//! A quartic map `y = k·x⁴ + l·x³ + m·x² + n·x + s` sends the roots of a
//! degree-`N` polynomial to the roots of another degree-`N` polynomial. The
//! top three coefficients of the image vanish exactly when the first three
//! power sums of the image roots do, which gives the Bring–Jerrard quintic
//! and the low-term sextic, septic, octic and nonic shapes the engines take.
//!
//! The power-sum conditions are solved numerically: the first is linear and
//! fixes `s`; the other two are homogeneous in `(k, l, m, n)`, so Newton's
//! method runs on them together with two random hyperplanes, from several
//! seeded starts. Every accepted map is checked against the oracle.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::roots_upto_quartic;
use crate::error::{NestError, Result};
use crate::linalg;
use crate::nestcore::BringJerrardForm;
use crate::oracle::{self, RootSet};
use crate::poly::{mul_slices, rem_monic, Poly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Condition numbers above this are reported as ill-conditioned.
pub const CONDITION_WARNING: f64 = 1e6;
/// Tolerance for matching mapped source roots against target roots.
pub const MATCH_TOLERANCE: f64 = 1e-6;

/// `y = k·x⁴ + l·x³ + m·x² + n·x + s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TschirnhausMap {
    pub k: Complex64,
    pub l: Complex64,
    pub m: Complex64,
    pub n: Complex64,
    pub s: Complex64,
}

impl TschirnhausMap {
    pub fn new(k: Complex64, l: Complex64, m: Complex64, n: Complex64, s: Complex64) -> Result<Self> {
        let map = Self { k, l, m, n, s };
        if map.is_constant() {
            return Err(NestError::InvalidInput("Tschirnhaus map is constant".into()));
        }
        Ok(map)
    }

    pub fn identity() -> Self {
        Self {
            k: ZERO,
            l: ZERO,
            m: ZERO,
            n: ONE,
            s: ZERO,
        }
    }

    pub fn linear(n: Complex64, s: Complex64) -> Result<Self> {
        Self::new(ZERO, ZERO, ZERO, n, s)
    }

    /// Coefficients lowest degree first: `[s, n, m, l, k]`.
    pub fn coeffs(&self) -> [Complex64; 5] {
        [self.s, self.n, self.m, self.l, self.k]
    }

    fn from_coeffs(c: [Complex64; 5]) -> Self {
        Self {
            s: c[0],
            n: c[1],
            m: c[2],
            l: c[3],
            k: c[4],
        }
    }

    fn is_constant(&self) -> bool {
        [self.k, self.l, self.m, self.n].iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        (((self.k * x + self.l) * x + self.m) * x + self.n) * x + self.s
    }

    pub fn derivative(&self, x: Complex64) -> Complex64 {
        ((4.0 * self.k * x + 3.0 * self.l) * x + 2.0 * self.m) * x + self.n
    }

    pub fn is_real(&self) -> bool {
        self.coeffs().iter().all(|c| c.im == 0.0)
    }

    fn scaled(&self, factor: Complex64) -> Self {
        Self::from_coeffs(self.coeffs().map(|c| c * factor))
    }
}

impl fmt::Display for TschirnhausMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y = ({})x⁴ + ({})x³ + ({})x² + ({})x + ({})",
            self.k, self.l, self.m, self.n, self.s
        )
    }
}

/// Low-term shapes reachable by a quartic map. Each kills the three
/// coefficients just below the leading one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetShape {
    /// `y⁵ + A·y + B`.
    Quintic,
    /// `y⁶ + e₁·y² + f₁·y + g₁`.
    Sextic,
    /// `y⁷ = a·y³ + b·y² + c·y + d`.
    Septic,
    /// `y⁸ = a·y⁴ + b·y³ + c·y² + d·y + e`.
    Octic,
    /// `y⁹ = a·y⁵ + b·y⁴ + c·y³ + d·y² + e·y + f`.
    Nonic,
}

impl TargetShape {
    pub fn degree(self) -> usize {
        match self {
            Self::Quintic => 5,
            Self::Sextic => 6,
            Self::Septic => 7,
            Self::Octic => 8,
            Self::Nonic => 9,
        }
    }

    pub fn for_degree(n: usize) -> Option<Self> {
        match n {
            5 => Some(Self::Quintic),
            6 => Some(Self::Sextic),
            7 => Some(Self::Septic),
            8 => Some(Self::Octic),
            9 => Some(Self::Nonic),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Quintic => "quintic",
            Self::Sextic => "sextic",
            Self::Septic => "septic",
            Self::Octic => "octic",
            Self::Nonic => "nonic",
        }
    }

    /// Coefficient indices that must vanish in the target.
    pub fn vanishing(self) -> [usize; 3] {
        let n = self.degree();
        [n - 1, n - 2, n - 3]
    }

    /// The surviving target coefficients in the shape's own naming.
    pub fn named(self, target: &Poly) -> Vec<(&'static str, Complex64)> {
        let t = |k| target.coeff(k);
        match self {
            Self::Quintic => vec![("A", t(1)), ("B", t(0))],
            Self::Sextic => vec![("e1", t(2)), ("f1", t(1)), ("g1", t(0))],
            Self::Septic => ["a", "b", "c", "d"].iter().enumerate().map(|(i, &n)| (n, -t(3 - i))).collect(),
            Self::Octic => ["a", "b", "c", "d", "e"].iter().enumerate().map(|(i, &n)| (n, -t(4 - i))).collect(),
            Self::Nonic => ["a", "b", "c", "d", "e", "f"]
                .iter()
                .enumerate()
                .map(|(i, &n)| (n, -t(5 - i)))
                .collect(),
        }
    }
}

impl fmt::Display for TargetShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How to choose among the maps found from different starts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Smallest condition number.
    #[default]
    BestConditioned,
    /// Quintic only: smallest Bring radical argument `|B|/|A|^{5/4}`, which
    /// is invariant under rescaling the map.
    SmallestBringArgument,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReduceConfig {
    pub seed: u64,
    pub starts: usize,
    pub max_newton: usize,
    pub selection: Selection,
    /// Tried before the random starts, and accepted on its own if it
    /// verifies.
    pub warm_start: Option<TschirnhausMap>,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            starts: 16,
            max_newton: 80,
            selection: Selection::BestConditioned,
            warm_start: None,
        }
    }
}

impl ReduceConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionResult {
    pub shape: Option<TargetShape>,
    pub target: Poly,
    pub map: TschirnhausMap,
    /// Distance from each mapped source root to its matched target root.
    pub residual_report: Vec<f64>,
    /// Worst relative sensitivity of a recovered source root to an error in
    /// its target root: `max (1 + max|y|)/(|T′(xᵢ)|·(1 + |xᵢ|))`.
    pub condition: f64,
    /// Largest magnitude among the target coefficients set to zero, relative
    /// to the coefficient scale.
    pub dropped: f64,
    /// Index of the successful start; `None` when no search was needed.
    pub start: Option<usize>,
    pub notes: Vec<String>,
}

impl ReductionResult {
    pub fn is_ill_conditioned(&self) -> bool {
        self.condition > CONDITION_WARNING
    }

    pub fn max_match_error(&self) -> f64 {
        self.residual_report.iter().copied().fold(0.0, f64::max)
    }

    pub fn bring_jerrard_form(&self) -> Option<BringJerrardForm> {
        (self.target.degree() == 5).then(|| BringJerrardForm::new(self.target.coeff(1), self.target.coeff(0)))
    }

    /// `|B|/|A|^{5/4}` for a quintic target.
    pub fn bring_argument(&self) -> Option<f64> {
        let bj = self.bring_jerrard_form()?;
        let a = bj.a.norm();
        Some(if a == 0.0 { f64::INFINITY } else { bj.b.norm() / a.powf(1.25) })
    }

    pub fn named_coefficients(&self) -> Vec<(&'static str, Complex64)> {
        self.shape.map(|s| s.named(&self.target)).unwrap_or_default()
    }
}

/// Power sums `S₀ … S_{count−1}` of the roots of a monic polynomial, by
/// Newton's identities.
pub(crate) fn power_sums(monic: &[Complex64], count: usize) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let mut s = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            s.push(Complex64::new(n as f64, 0.0));
            continue;
        }
        let mut acc = if k <= n { monic[n - k] * k as f64 } else { ZERO };
        for i in 1..=(k - 1).min(n) {
            acc += monic[n - i] * s[k - i];
        }
        s.push(-acc);
    }
    s
}

fn check_degree(p: &Poly) -> Result<()> {
    if p.degree() < 2 {
        return Err(NestError::InvalidInput("transform needs degree at least 2".into()));
    }
    Ok(())
}

/// The monic polynomial whose roots are `T(xᵢ)` over the roots `xᵢ` of `p`:
/// the characteristic polynomial of `T(C)` for the companion matrix `C` of
/// `p`.
pub fn transform(p: &Poly, t: &TschirnhausMap) -> Result<Poly> {
    check_degree(p)?;
    let monic = p.monic();
    let m = monic.coeffs();
    let n = p.degree();
    // C·e_j = e_{j+1}, last column −m
    let mut companion = vec![vec![ZERO; n]; n];
    for j in 0..n {
        if j + 1 < n {
            companion[j + 1][j] = ONE;
        }
        companion[j][n - 1] = -m[j];
    }
    let mul = |a: &[Vec<Complex64>], b: &[Vec<Complex64>]| -> Vec<Vec<Complex64>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let mut acc = vec![vec![ZERO; n]; n];
    for &coef in t.coeffs().iter().rev() {
        acc = mul(&acc, &companion);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += coef;
        }
    }
    Poly::new(linalg::char_poly(acc))
}

/// The same polynomial as [`transform`], computed independently as the
/// characteristic polynomial of multiplication by `T` modulo `p`: the
/// determinant `det(y·I − M_T)` is sampled on the unit circle and interpolated by an
/// inverse discrete Fourier transform.
pub fn transform_by_interpolation(p: &Poly, t: &TschirnhausMap) -> Result<Poly> {
    check_degree(p)?;
    let monic = p.monic();
    let m = monic.coeffs();
    let n = p.degree();
    let tc = rem_monic(&t.coeffs(), m);
    // column j holds x^j·T mod p
    let mut matrix = vec![vec![ZERO; n]; n];
    for j in 0..n {
        let mut xj = vec![ZERO; j + 1];
        xj[j] = ONE;
        let col = rem_monic(&mul_slices(&xj, &tc), m);
        for (r, v) in col.iter().enumerate() {
            matrix[r][j] = *v;
        }
    }
    let samples = n + 1;
    let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / samples as f64);
    let values: Vec<Complex64> = (0..samples)
        .map(|k| {
            let y = omega(k);
            let mut a = matrix.iter().map(|row| row.iter().map(|v| -v).collect::<Vec<_>>()).collect::<Vec<_>>();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += y;
            }
            linalg::determinant(a)
        })
        .collect();
    let coeffs = (0..samples)
        .map(|j| {
            let acc: Complex64 = values.iter().enumerate().map(|(k, v)| v * omega((j * k) % samples).conj()).sum();
            acc / samples as f64
        })
        .collect();
    Poly::new(coeffs)
}

/// Linear map `y = x + a_{N−1}/(N·a_N)` killing the second coefficient.
pub fn depress(p: &Poly) -> Result<ReductionResult> {
    check_degree(p)?;
    let n = p.degree();
    let h = p.coeff(n - 1) / (p.leading() * n as f64);
    let map = TschirnhausMap::linear(ONE, h)?;
    let mut target = if h.re == 0.0 && h.im == 0.0 { p.monic() } else { p.shifted(-h).monic() };
    let mut coeffs = target.coeffs().to_vec();
    let dropped = coeffs[n - 1].norm() / p.monic().coeff_norm1();
    coeffs[n - 1] = ZERO;
    target = Poly::new(coeffs)?;
    Ok(ReductionResult {
        shape: None,
        target,
        map,
        residual_report: Vec::new(),
        condition: 1.0,
        dropped,
        start: None,
        notes: Vec::new(),
    })
}

/// Bring–Jerrard reduction of a quintic to `y⁵ + A·y + B`.
pub fn bring_jerrard(p: &Poly, cfg: &ReduceConfig) -> Result<ReductionResult> {
    if p.degree() != 5 {
        return Err(NestError::InvalidInput(format!("Bring–Jerrard needs a quintic, got degree {}", p.degree())));
    }
    reduce_to_form(p, TargetShape::Quintic, cfg)
}

/// The power-sum conditions `P₂ = P₃ = 0` (with `P₁ = 0` solved for `s`),
/// as functions of the free coefficients `z = (n, m, l, k)`.
struct Conditions {
    sums: Vec<Complex64>,
    degree: f64,
}

impl Conditions {
    fn new(monic: &[Complex64]) -> Self {
        Self {
            sums: power_sums(monic, 13),
            degree: (monic.len() - 1) as f64,
        }
    }

    fn tau(&self, z: &[Complex64; 4]) -> [Complex64; 5] {
        let s: Complex64 = -(1..=4).map(|a| z[a - 1] * self.sums[a]).sum::<Complex64>() / self.degree;
        [s, z[0], z[1], z[2], z[3]]
    }

    /// `(P₂, P₃, ∇P₂, ∇P₃, scale₂, scale₃)`.
    #[allow(clippy::type_complexity)]
    fn eval(&self, z: &[Complex64; 4]) -> (Complex64, Complex64, [Complex64; 4], [Complex64; 4], f64, f64) {
        let t = self.tau(z);
        let s = &self.sums;
        let mut p2 = ZERO;
        let mut p3 = ZERO;
        let mut sc2 = 0.0;
        let mut sc3 = 0.0;
        let mut g2 = [ZERO; 5];
        let mut g3 = [ZERO; 5];
        for a in 0..5 {
            for b in 0..5 {
                let q = t[a] * t[b] * s[a + b];
                p2 += q;
                sc2 += q.norm();
                g2[a] += 2.0 * t[b] * s[a + b];
                for c in 0..5 {
                    let r = t[a] * t[b] * t[c] * s[a + b + c];
                    p3 += r;
                    sc3 += r.norm();
                    g3[a] += 3.0 * t[b] * t[c] * s[a + b + c];
                }
            }
        }
        let chain = |g: [Complex64; 5]| -> [Complex64; 4] {
            std::array::from_fn(|i| g[i + 1] - g[0] * s[i + 1] / self.degree)
        };
        (p2, p3, chain(g2), chain(g3), sc2, sc3)
    }
}

fn random_complex(rng: &mut ChaCha8Rng, real: bool) -> Complex64 {
    let re = rng.gen_range(-1.0..1.0);
    let im = if real { 0.0 } else { rng.gen_range(-1.0..1.0) };
    Complex64::new(re, im)
}

/// Newton on `[P₂, P₃, v·z − 1, w·z]`; returns `z` when the conditions hold
/// to near rounding level.
fn newton(
    cond: &Conditions,
    mut z: [Complex64; 4],
    v: [Complex64; 4],
    w: [Complex64; 4],
    max_iter: usize,
) -> std::result::Result<[Complex64; 4], f64> {
    let mut best = f64::INFINITY;
    for _ in 0..max_iter {
        let (p2, p3, g2, g3, sc2, sc3) = cond.eval(&z);
        let err = (p2.norm() / sc2.max(f64::MIN_POSITIVE)).max(p3.norm() / sc3.max(f64::MIN_POSITIVE));
        best = best.min(err);
        let hv: Complex64 = v.iter().zip(&z).map(|(a, b)| a * b).sum::<Complex64>() - 1.0;
        let hw: Complex64 = w.iter().zip(&z).map(|(a, b)| a * b).sum();
        if err <= 1e-14 && hv.norm() <= 1e-13 && hw.norm() <= 1e-13 {
            return Ok(z);
        }
        let jac = vec![g2.to_vec(), g3.to_vec(), v.to_vec(), w.to_vec()];
        let Some(step) = linalg::solve(jac, vec![p2, p3, hv, hw]) else {
            return Err(best);
        };
        for (zi, di) in z.iter_mut().zip(&step) {
            *zi -= di;
        }
        let size: f64 = z.iter().map(|c| c.norm()).sum();
        if !size.is_finite() || size > 1e8 {
            return Err(best);
        }
    }
    let (p2, p3, _, _, sc2, sc3) = cond.eval(&z);
    let err = (p2.norm() / sc2.max(f64::MIN_POSITIVE)).max(p3.norm() / sc3.max(f64::MIN_POSITIVE));
    if err <= 1e-12 {
        Ok(z)
    } else {
        Err(best.min(err))
    }
}

/// Builds and verifies the reduction for a candidate map; `Err` carries a
/// reason and a diagnostic magnitude.
fn verify(
    p: &Poly,
    source: &RootSet,
    map: TschirnhausMap,
    shape: TargetShape,
) -> std::result::Result<ReductionResult, (String, f64)> {
    // Rescale so the image roots are about the size of the source roots.
    let images: Vec<Complex64> = source.roots.iter().map(|&x| map.eval(x)).collect();
    let y_max = images.iter().map(|y| y.norm()).fold(0.0, f64::max);
    if !(y_max > 0.0) || !y_max.is_finite() {
        return Err(("map collapses every root".into(), f64::INFINITY));
    }
    let x_max = source.roots.iter().map(|x| x.norm()).fold(1.0, f64::max);
    let map = map.scaled(Complex64::new(x_max / y_max, 0.0));
    let images: Vec<Complex64> = source.roots.iter().map(|&x| map.eval(x)).collect();
    let y_max = x_max;

    let full = transform(p, &map).map_err(|e| (e.to_string(), f64::INFINITY))?;
    let mut coeffs = full.coeffs().to_vec();
    let scale = full.coeff_norm1();
    let mut dropped: f64 = 0.0;
    for k in shape.vanishing() {
        dropped = dropped.max(coeffs[k].norm() / scale);
        coeffs[k] = ZERO;
    }
    if dropped > 1e-9 {
        return Err(("vanishing coefficients not small".into(), dropped));
    }
    let target = Poly::new(coeffs).map_err(|e| (e.to_string(), f64::INFINITY))?;
    let target_roots = oracle::all_roots(&target).map_err(|e| (e.to_string(), f64::INFINITY))?;
    if target_roots.min_separation() <= 1e-6 * (1.0 + y_max) {
        return Err(("map sends two roots to the same image".into(), target_roots.min_separation()));
    }
    let residual_report: Vec<f64> = images.iter().map(|&y| oracle::match_root(y, &target_roots).1).collect();
    let worst = oracle::match_sets(&images, &target_roots.roots);
    if worst > MATCH_TOLERANCE * y_max {
        return Err(("target roots do not match mapped source roots".into(), worst));
    }
    let condition = source
        .roots
        .iter()
        .map(|&x| (1.0 + y_max) / (map.derivative(x).norm() * (1.0 + x.norm())))
        .fold(0.0, f64::max);
    let mut notes = Vec::new();
    if !map.is_real() && p.is_real() {
        notes.push("map has complex coefficients".into());
    }
    if condition > CONDITION_WARNING {
        notes.push(format!("ill-conditioned: condition {condition:e}"));
    }
    Ok(ReductionResult {
        shape: Some(shape),
        target,
        map,
        residual_report,
        condition,
        dropped,
        start: None,
        notes,
    })
}

fn score(r: &ReductionResult, sel: Selection) -> f64 {
    match sel {
        Selection::BestConditioned => r.condition,
        Selection::SmallestBringArgument => r.bring_argument().unwrap_or(f64::INFINITY),
    }
}

/// Quartic map onto the given low-term shape, found by seeded multi-start
/// Newton and verified root by root against the oracle. Among the verified
/// maps the one preferred by `cfg.selection` wins, ties going to the earlier
/// start.
pub fn reduce_to_form(p: &Poly, shape: TargetShape, cfg: &ReduceConfig) -> Result<ReductionResult> {
    let mut found = reduction_candidates(p, shape, cfg)?;
    let best = (0..found.len())
        .min_by(|&i, &j| score(&found[i], cfg.selection).total_cmp(&score(&found[j], cfg.selection)).then(i.cmp(&j)))
        .expect("candidates are non-empty");
    Ok(found.swap_remove(best))
}

/// Every verified map, in start order. A verified warm start or an input
/// already in shape yields a single candidate.
pub fn reduction_candidates(p: &Poly, shape: TargetShape, cfg: &ReduceConfig) -> Result<Vec<ReductionResult>> {
    let n = shape.degree();
    if p.degree() != n {
        return Err(NestError::InvalidInput(format!(
            "{shape} shape needs degree {n}, got {}",
            p.degree()
        )));
    }
    let monic = p.monic();
    let source = oracle::all_roots(&monic)?;
    let x_max = source.roots.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let sep = source.min_separation();
    if sep <= 1e-6 * (1.0 + x_max) {
        return Err(NestError::ReductionFailed {
            reason: format!("source has a (near-)multiple root: root separation {sep:e}"),
            best_residual: sep,
        });
    }
    if shape.vanishing().iter().all(|&k| monic.coeff(k) == ZERO) {
        let residual_report = vec![0.0; n];
        return Ok(vec![ReductionResult {
            shape: Some(shape),
            target: monic,
            map: TschirnhausMap::identity(),
            residual_report,
            condition: source
                .roots
                .iter()
                .map(|x| (1.0 + x_max) / (1.0 + x.norm()))
                .fold(0.0, f64::max),
            dropped: 0.0,
            start: None,
            notes: vec!["already in shape; identity map".into()],
        }]);
    }

    let cond = Conditions::new(monic.coeffs());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let real = p.is_real();
    let mut best_residual = f64::INFINITY;
    let mut best_reason = String::from("no start converged");
    let mut found: Vec<ReductionResult> = Vec::new();

    let mut attempt = |idx: usize, z0: [Complex64; 4], v: [Complex64; 4], w: [Complex64; 4]| -> Option<ReductionResult> {
        match newton(&cond, z0, v, w, cfg.max_newton) {
            Ok(z) => {
                let t = cond.tau(&z);
                let map = TschirnhausMap::from_coeffs(t);
                match verify(p, &source, map, shape) {
                    Ok(mut r) => {
                        r.start = Some(idx);
                        Some(r)
                    }
                    Err((reason, mag)) => {
                        if mag < best_residual {
                            best_residual = mag;
                            best_reason = reason;
                        }
                        None
                    }
                }
            }
            Err(err) => {
                if err < best_residual {
                    best_residual = err;
                    best_reason = "Newton did not converge".into();
                }
                None
            }
        }
    };

    if let Some(warm) = cfg.warm_start {
        let c = warm.coeffs();
        let z0 = [c[1], c[2], c[3], c[4]];
        let norm2: f64 = z0.iter().map(|c| c.norm_sqr()).sum();
        if norm2 > 0.0 {
            let v = z0.map(|c| c.conj() / norm2);
            // v·z0 = 1 and w·z0 = 0, so z0 itself satisfies both hyperplanes
            let w = [z0[1], -z0[0], ZERO, ZERO];
            let w = if w.iter().all(|c| c.norm() == 0.0) { [ZERO, ZERO, z0[3], -z0[2]] } else { w };
            if let Some(r) = attempt(usize::MAX, z0, v, w) {
                return Ok(vec![r]);
            }
        }
    }

    for idx in 0..cfg.starts.max(1) {
        let real_start = real && idx % 2 == 0;
        let z0: [Complex64; 4] = std::array::from_fn(|_| random_complex(&mut rng, real_start));
        let v: [Complex64; 4] = std::array::from_fn(|_| random_complex(&mut rng, real_start));
        let w: [Complex64; 4] = std::array::from_fn(|_| random_complex(&mut rng, real_start));
        if let Some(r) = attempt(idx, z0, v, w) {
            found.push(r);
        }
    }
    if found.is_empty() {
        return Err(NestError::ReductionFailed {
            reason: best_reason,
            best_residual,
        });
    }
    Ok(found)
}

/// A preimage `x` of a target root under the map, with its residual in the
/// source polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Preimage {
    pub x: Complex64,
    pub residual: f64,
    /// Whether `x` is a root of the source to within `tol` (relative).
    pub consistent: bool,
    /// Every solution of `T(x) = y` with its relative source residual.
    pub candidates: Vec<(Complex64, f64)>,
}

fn relative_residual(p: &Poly, x: Complex64) -> f64 {
    oracle::residual(p, x) / p.magnitude_at(x).max(f64::MIN_POSITIVE)
}

/// Solves `T(x) = y` in closed form and keeps the candidate that best solves
/// the source polynomial, polished by at most five Newton steps.
pub fn invert_map(result: &ReductionResult, y: Complex64, original: &Poly, tol: f64) -> Result<Preimage> {
    let mut shifted = result.map.coeffs();
    shifted[0] -= y;
    let roots = roots_upto_quartic(&shifted)?;
    let mut candidates: Vec<(Complex64, f64)> = roots.iter().map(|&x| (x, relative_residual(original, x))).collect();
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1));
    if candidates.len() >= 2 {
        let (r0, r1) = (candidates[0].1, candidates[1].1);
        if r0 <= tol && r1 <= tol && r1 <= 10.0 * r0.max(f64::MIN_POSITIVE)
            && (candidates[0].0 - candidates[1].0).norm() > 1e-9 * (1.0 + candidates[0].0.norm())
        {
            return Err(NestError::AmbiguousPreimage {
                candidates: vec![candidates[0].0, candidates[1].0],
            });
        }
    }
    let (mut x, pre) = candidates[0];
    if pre <= 1e-6 {
        let dp = original.derivative_coeffs();
        for _ in 0..5 {
            let f = original.eval_compensated(x);
            let df = crate::poly::eval_slice(&dp, x);
            if f.norm() == 0.0 || df.norm() == 0.0 {
                break;
            }
            let next = x - f / df;
            if relative_residual(original, next) < relative_residual(original, x) {
                x = next;
            } else {
                break;
            }
        }
    }
    let rel = relative_residual(original, x);
    Ok(Preimage {
        x,
        residual: oracle::residual(original, x),
        consistent: rel <= tol,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: &Poly, b: &[f64], tol: f64) -> bool {
        a.coeffs().len() == b.len() && a.coeffs().iter().zip(b).all(|(x, &y)| (x - c(y)).norm() < tol)
    }

    #[test]
    fn square_map_collapses_roots() {
        let p = Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let t = TschirnhausMap::new(c(0.0), c(0.0), c(1.0), c(0.0), c(0.0)).unwrap();
        assert!(close(&transform(&p, &t).unwrap(), &[1.0, -2.0, 1.0], 1e-14));
        assert!(close(&transform_by_interpolation(&p, &t).unwrap(), &[1.0, -2.0, 1.0], 1e-12));
    }

    #[test]
    fn shift_map() {
        let p = Poly::from_real(&[-2.0, 0.0, 1.0]).unwrap();
        let t = TschirnhausMap::linear(c(1.0), c(1.0)).unwrap();
        assert!(close(&transform(&p, &t).unwrap(), &[-1.0, -2.0, 1.0], 1e-14));
    }

    #[test]
    fn depress_examples() {
        let r = depress(&Poly::from_real(&[2.0, 2.0, 1.0]).unwrap()).unwrap();
        assert!(close(&r.target, &[1.0, 0.0, 1.0], 1e-15));
        assert_eq!(r.map.s, c(1.0));
        let p = Poly::from_real(&[1.0, -3.0, 0.0, 1.0]).unwrap();
        let r = depress(&p).unwrap();
        assert_eq!(r.target.coeffs(), p.coeffs());
        assert_eq!(r.map, TschirnhausMap::identity());
    }

    #[test]
    fn quintic_reduction_matches_oracle() {
        let p = Poly::from_real(&[1.0; 6]).unwrap();
        let r = bring_jerrard(&p, &ReduceConfig::default()).unwrap();
        assert!(r.max_match_error() < 1e-9, "{}", r.max_match_error());
        let t = r.target.coeffs();
        for k in 2..5 {
            assert_eq!(t[k], ZERO);
        }
    }

    #[test]
    fn already_reduced_short_circuits() {
        let p = Poly::from_real(&[0.3, -1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let r = bring_jerrard(&p, &ReduceConfig::default()).unwrap();
        assert_eq!(r.map, TschirnhausMap::identity());
        let bj = r.bring_jerrard_form().unwrap();
        assert_eq!((bj.a, bj.b), (c(-1.0), c(0.3)));
    }

    #[test]
    fn double_root_is_refused() {
        let p = Poly::from_real(&[2.0, -4.0, 2.0, 1.0, -2.0, 1.0]).unwrap();
        assert!(matches!(
            bring_jerrard(&p, &ReduceConfig::default()),
            Err(NestError::ReductionFailed { .. })
        ));
    }

    #[test]
    fn inversion_round_trip() {
        let p = Poly::from_real(&[-2.0, 0.0, 1.0]).unwrap();
        let r = ReductionResult {
            shape: None,
            target: p.clone(),
            map: TschirnhausMap::linear(c(1.0), c(1.0)).unwrap(),
            residual_report: vec![],
            condition: 1.0,
            dropped: 0.0,
            start: None,
            notes: vec![],
        };
        let pre = invert_map(&r, c(2.0), &Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap(), 1e-10).unwrap();
        assert!((pre.x - c(1.0)).norm() < 1e-15);
        assert!(pre.consistent);
        let pre = invert_map(&r, c(7.0), &Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap(), 1e-10).unwrap();
        assert!(!pre.consistent);
    }
}
