//! Default numeric tolerances shared across modules.

use std::f64::consts::PI;

/// `|exp(lift) - path| ` bound for logarithm lifts.
pub const LIFT_TOL: f64 = 1e-10;

/// Equality-with-boundary threshold for staircase geometry.
pub const GEOM_TOL: f64 = 1e-9;

/// Agreement bound between overlapping germs.
pub const AGREE_TOL: f64 = 1e-7;

/// Truncation error bound for lacunary coefficients.
pub const COEFF_TOL: f64 = 1e-12;

/// Numeric-vs-exact failure location tolerance, in path parameter.
pub const CROSS_TOL: f64 = 0.02;

/// Steps never exceed this fraction of the current radius estimate.
pub const STEP_SAFETY: f64 = 0.5;

/// Continuation is declared failed once a radius estimate drops below this.
pub const RADIUS_FLOOR: f64 = 1e-4;

pub const MAX_STEPS: usize = 100_000;

/// Default truncation order of germs.
pub const ORDER: usize = 64;

/// Minimum distance to `∂ℰ` kept by routed lift paths.
pub const ROUTE_CLEARANCE: f64 = 0.05;

/// Maximum lift arc length between consecutive samples of `exp(α)`.
pub const EXP_STEP: f64 = 0.1;

/// Lifts are refined until every sub-segment subtends less than this angle.
pub const MAX_LIFT_ANGLE: f64 = PI / 4.0;
