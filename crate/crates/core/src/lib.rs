//! Analytic continuation of holomorphic germs along paths in the punctured
//! complex plane.
//!
//! The crate is organised around one concrete construction: the function
//! `f = h ∘ ψ ∘ λ`, where `λ` is the logarithm branch with `λ(1/2) = ln(1/2)`,
//! `ψ` is a Riemann map of the staircase domain
//! `ℰ = ⋃ₙ {n ≤ x ≤ n+1, y > 2πn}` onto the unit disc and `h(z) = Σ z^(2^ν)` is
//! a lacunary series with natural boundary on the unit circle. Whether `f`
//! can be continued along a path is decided exactly by where the logarithm
//! lift of the path sits relative to `ℰ`, and numerically by transporting
//! truncated power series along the path until their radius collapses.
//!
//! Modules:
//!
//! * [`path`]: polylines in `ℂ*`, logarithm lifts and the open-path winding number.
//! * [`staircase`]: exact geometry of `ℰ`, its boundary and the slit targets.
//! * [`series`]: truncated power-series germs, recentering and composition.
//! * [`conformal`]: a geodesic-zipper approximation of `ψ` on a truncated `ℰ`.
//! * [`continuation`]: germ transport along paths and the exact lift oracle.
//! * [`monodromy`]: path construction, slit classification and the `exp ∘ exp` example.
//! * [`formats`]: the JSON and CSV interchange formats used by the CLI.

pub mod conformal;
pub mod continuation;
pub mod formats;
pub mod monodromy;
pub mod path;
pub mod series;
pub mod staircase;
pub mod tol;

pub use num_complex::Complex64;

pub use conformal::{build_map, f_element_at_base, f_germ_at_base, ConformalError, ConformalMap, FElement, QualityReport, Truncation};
pub use continuation::{
    continuable_exact, continue_along, crosscheck, ChainStatus, Composed, ContinuationChain,
    ContinuationError, ContinuationOptions, CrosscheckReport, FailureReason, FunctionElement, OracleVerdict, Verdict,
};
pub use monodromy::{classify, expexp_demo, reach_path, truth_table, ClassificationReport, ExpExpReport, MonodromyError, TruthTable};
pub use path::{lift_log, validate_path, winding_number, LogLift, PathError, PathPolyline};
pub use series::{compose, estimate_radius, eval_h, h_germ, log_germ, recenter, Germ, SeriesError};
pub use staircase::Staircase;
