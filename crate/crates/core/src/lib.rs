//! Polynomial equations solved by periodic nested radicals, hypergeometric
//! series and Tschirnhaus reductions, each checked against an independent
//! all-roots oracle.
//!
//! The engines are:
//!
//! * [`nestcore`]: quadratic power forms, Euler's trinomial series and the
//!   Bring–Jerrard quintic.
//! * [`resolvent`]: cubic and quintic resolvent functions, which drive the
//!   septic, octic and nonic solvers.
//! * [`reduce`]: quartic Tschirnhaus maps onto the low-term shapes the
//!   engines accept.
//! * [`modular`]: the Rogers–Ramanujan continued fraction, the
//!   j-invariant and the icosahedral identity linking them.
//! * [`basin`]: empirical convergence maps over grids of initial iterates.
//!
//! ```
//! use nestrad_core::{solve_quad_nest, IterConfig, QuadNestForm, RationalIndex, C64};
//!
//! let one = RationalIndex::ONE;
//! let form = QuadNestForm::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(-6.0, 0.0), one, one)?;
//! let report = solve_quad_nest(&form, &IterConfig::default())?;
//! assert!((report.root.re - 3.0).abs() < 1e-12);
//! # Ok::<(), nestrad_core::NestError>(())
//! ```

pub mod basin;
pub mod closed_form;
pub mod error;
pub mod iterate;
mod linalg;
pub mod modular;
pub mod nestcore;
pub mod numerics;
pub mod oracle;
pub mod poly;
pub mod reduce;
pub mod resolvent;

pub use num_complex::Complex64 as C64;

pub use basin::{BasinGrid, BasinMap, BasinMethod};
pub use error::{NestError, Result};
pub use iterate::{Damping, IterConfig, SolveReport, Status};
pub use nestcore::{
    bring_radical, euler_nested, euler_series, quintic_solve_br, quintic_solve_nested, solve_quad_nest,
    BringJerrardForm, QuadNestForm, TrinomialForm,
};
pub use modular::{QTruncation, Tau};
pub use numerics::{log_gamma, radical, reciprocal_gamma, BranchPolicy, RationalIndex, SeriesConfig};
pub use oracle::{all_roots, match_root, RootSet};
pub use poly::Poly;
pub use reduce::{ReductionResult, TargetShape, TschirnhausMap};
pub use resolvent::{CubicResolventForm, PowerForm, QuinticResolventForm};
