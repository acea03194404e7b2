//! Reachability paths, slit classification and the exp∘exp two-branch example.

use std::f64::consts::{E, TAU};
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::continuation::{continuable_exact, continue_along, Composed, ContinuationChain, ContinuationError, ContinuationOptions, Verdict};
use crate::path::{lift_log, validate_path, PathError, PathPolyline};
use crate::series::{log_germ, SeriesError};
use crate::staircase::Staircase;
use crate::tol::{EXP_STEP, LIFT_TOL, ORDER, ROUTE_CLEARANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonodromyError {
    #[error("target must be nonzero")]
    ZeroTarget,
    #[error("routing failed: {0}")]
    RoutingFailure(String),
    #[error("{omega} is not on the slit of index {m}")]
    NotOnSlit { omega: Complex64, m: i64 },
    #[error("empty range: {0}")]
    EmptyRange(&'static str),
    #[error(transparent)]
    Continuation(#[from] ContinuationError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Path(#[from] PathError),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Lift of the base point `1/2`.
pub fn base_lift() -> Complex64 {
    c(0.5f64.ln(), 0.0)
}

/// Polyline in the lift plane from `ln(1/2)` to `target`, inside `int ℰ`.
///
/// The route climbs in the base strip to a height above every glue threshold
/// it has to cross, runs horizontally to the target's strip, descends to a
/// staging point with clearance from the target strip's floor and right wall,
/// and ends with a short leg to `target`. All legs but the last keep
/// `clearance` from `∂ℰ`.
pub fn route_lift(target: Complex64, staircase: &Staircase, clearance: f64) -> Result<Vec<Complex64>, MonodromyError> {
    let start = base_lift();
    if !staircase.in_interior(target) {
        return Err(MonodromyError::RoutingFailure(format!("target {target} is not interior")));
    }
    if target == start {
        return Ok(vec![start]);
    }
    let inset = 2.0 * clearance;
    let n = target.re.floor();
    let stage = c(
        target.re.clamp(n + inset, n + 1.0 - inset),
        target.im.max(TAU * n + inset),
    );
    let top_strip = n.max(start.re.floor());
    let height = (TAU * top_strip + 1.0).max(stage.im).max(start.im);
    let mut pts = vec![start, c(start.re, height), c(stage.re, height), stage, target];
    pts.dedup();
    for w in pts[..pts.len() - 1].windows(2) {
        let gap = staircase.segment_boundary_distance(w[0], w[1]);
        if gap < clearance || !staircase.in_interior(w[1]) {
            return Err(MonodromyError::RoutingFailure(format!(
                "leg {} -> {} has clearance {gap:.3e} < {clearance}",
                w[0], w[1]
            )));
        }
    }
    Ok(pts)
}

/// `exp` of a lift polyline, sampled so that consecutive lift samples are at
/// most `step` apart (`final_step` on the last leg). The first point is set to
/// exactly `1/2` and the last to exactly `omega`.
fn exp_path(lift: &[Complex64], omega: Complex64, step: f64, final_step: f64) -> Result<PathPolyline, MonodromyError> {
    let mut pts = vec![c(0.5, 0.0)];
    let legs = lift.len().saturating_sub(1);
    for (i, w) in lift.windows(2).enumerate() {
        let h = if i + 1 == legs { final_step } else { step };
        let pieces = ((w[1] - w[0]).norm() / h).ceil().max(1.0) as usize;
        for j in 1..=pieces {
            pts.push((w[0] + (w[1] - w[0]) * (j as f64 / pieces as f64)).exp());
        }
    }
    if legs > 0 {
        *pts.last_mut().unwrap() = omega;
    }
    Ok(validate_path(pts)?)
}

/// `exp` of [`route_lift`] to `target`, checked against the exact oracle.
/// The last leg is resampled more finely when its chords stray from the lift.
pub fn witness_path(target: Complex64, omega: Complex64, staircase: &Staircase) -> Result<PathPolyline, MonodromyError> {
    let lift = route_lift(target, staircase, ROUTE_CLEARANCE)?;
    let mut final_step = EXP_STEP;
    for _ in 0..8 {
        let path = exp_path(&lift, omega, EXP_STEP, final_step)?;
        let v = continuable_exact(&path, staircase)?;
        if v.verdict == Verdict::Continuable && (v.lift_end - target).norm() < LIFT_TOL.max(1e3 * f64::EPSILON * target.norm()) {
            return Ok(path);
        }
        final_step /= 8.0;
    }
    Err(MonodromyError::RoutingFailure(format!("no admissible sampling of the route to {target}")))
}

/// A path `β = exp(α)` from `1/2` to `omega` along which `f` continues; `α`
/// ends at [`Staircase::choose_lift_target`].
pub fn reach_path(omega: Complex64, staircase: &Staircase) -> Result<PathPolyline, MonodromyError> {
    if omega.norm() == 0.0 || !omega.re.is_finite() || !omega.im.is_finite() {
        return Err(MonodromyError::ZeroTarget);
    }
    witness_path(staircase.choose_lift_target(omega), omega, staircase)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub omega: Complex64,
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "N")]
    pub n: i64,
    pub lift_end: Complex64,
    pub verdict: Verdict,
    /// `floor(Im lift_end / 2π)`: the open-path winding number a path ending at
    /// `lift_end` would have. It can differ from `n` by one.
    pub definition_winding: i64,
    #[serde(skip)]
    pub witness_path: Option<PathPolyline>,
}

/// Lift endpoint for a slit target `omega` of index `m` reached with winding index `n`.
///
/// Circle targets take `M + i(arg₀ ω + 2πN)` with `arg₀ ∈ [-2π, 0)`, so that
/// `2π(N-1) ≤ Im < 2πN`; the circle formula wins at `ω = e^M`. Segment
/// targets take `ln ω + 2πi(N-1)`.
pub fn slit_lift(omega: Complex64, m: i64, n: i64, staircase: &Staircase) -> Result<Complex64, MonodromyError> {
    if staircase.on_slit_circle(omega, m) {
        let mut arg = omega.arg();
        if arg >= 0.0 {
            arg -= TAU;
        }
        Ok(c(m as f64, arg + TAU * n as f64))
    } else if staircase.on_slit_segment(omega, m) {
        Ok(c(omega.re.ln(), TAU * (n - 1) as f64))
    } else {
        Err(MonodromyError::NotOnSlit { omega, m })
    }
}

fn verdict_of(z: Complex64, staircase: &Staircase) -> Verdict {
    if staircase.in_interior(z) {
        Verdict::Continuable
    } else if staircase.is_reentrant_corner(z) {
        Verdict::Corner
    } else {
        Verdict::Blocked
    }
}

pub fn classify(omega: Complex64, m: i64, n: i64, staircase: &Staircase) -> Result<ClassificationReport, MonodromyError> {
    let lift_end = slit_lift(omega, m, n, staircase)?;
    let verdict = verdict_of(lift_end, staircase);
    let witness_path = match verdict {
        Verdict::Continuable => Some(witness_path(lift_end, omega, staircase)?),
        _ => None,
    };
    Ok(ClassificationReport {
        omega,
        m,
        n,
        lift_end,
        verdict,
        definition_winding: ((lift_end.im + LIFT_TOL) / TAU).floor() as i64,
        witness_path,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable {
    pub rows: Vec<ClassificationReport>,
    /// Every non-corner row is continuable exactly when `N > M`, and every `N = M` row is blocked.
    pub theorem_b: bool,
}

/// Slit sample points of index `m`: circle points at arguments
/// `-2π(j + ½)/samples` and `max(samples/2, 1)` interior points of the segment.
pub fn slit_samples(m: i64, samples: usize) -> Vec<Complex64> {
    let radius = (m as f64).exp();
    let mut out: Vec<Complex64> = (0..samples)
        .map(|j| Complex64::from_polar(radius, -TAU * (j as f64 + 0.5) / samples as f64))
        .collect();
    let n_seg = (samples / 2).max(1);
    out.extend((0..n_seg).map(|j| c((m as f64 - 1.0 + (j as f64 + 1.0) / (n_seg as f64 + 1.0)).exp(), 0.0)));
    out
}

pub fn truth_table(
    m_range: RangeInclusive<i64>,
    n_offsets: &[i64],
    samples_per_slit: usize,
    staircase: &Staircase,
) -> Result<TruthTable, MonodromyError> {
    if m_range.is_empty() {
        return Err(MonodromyError::EmptyRange("M range"));
    }
    if n_offsets.is_empty() {
        return Err(MonodromyError::EmptyRange("N offsets"));
    }
    if samples_per_slit == 0 {
        return Err(MonodromyError::EmptyRange("samples per slit"));
    }
    let mut rows = Vec::new();
    for m in m_range {
        let pts = slit_samples(m, samples_per_slit);
        for &d in n_offsets {
            for &omega in &pts {
                rows.push(classify(omega, m, m + d, staircase)?);
            }
        }
    }
    let theorem_b = rows.iter().filter(|r| r.verdict != Verdict::Corner).all(|r| {
        (r.verdict == Verdict::Continuable) == (r.n > r.m) && (r.n != r.m || r.verdict == Verdict::Blocked)
    });
    Ok(TruthTable { rows, theorem_b })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpExpReport {
    /// `ℓ₂ ∘ ℓ₁` continued along `γ`.
    pub branch_a: ContinuationChain,
    /// `ℓ₂ ∘ ℓ₃` continued along `γ`.
    pub branch_b: ContinuationChain,
    /// `γ(t_fail)` for branch A.
    pub a_fail_point: Option<Complex64>,
    pub b_final_value: Option<Complex64>,
    /// `ln(2π) + iπ/2` from the lift of `[1, 1 + 2πi, 2πi]`.
    pub b_expected: Complex64,
}

impl ExpExpReport {
    pub fn a_fails_near_one(&self) -> bool {
        self.a_fail_point.is_some_and(|z| (z - 1.0).norm() < 0.05)
    }

    pub fn b_matches(&self, tol: f64) -> bool {
        self.b_final_value.is_some_and(|v| (v - self.b_expected).norm() < tol)
    }
}

/// The two inverse branches of `exp ∘ exp` at `e`, continued along `γ(t) = t + (1-t)e`.
pub fn expexp_demo(opts: &ContinuationOptions) -> Result<ExpExpReport, MonodromyError> {
    let gamma = validate_path(vec![c(E, 0.0), c(1.0, 0.0)])?;
    let l1 = log_germ(c(E, 0.0), 0.0, ORDER)?;
    let l2 = log_germ(c(1.0, 0.0), 0.0, ORDER)?;
    let branch_a = continue_along(&Composed::new(l2.clone(), l1)?, &gamma, opts)?;

    let lift_of_l3 = validate_path(vec![c(1.0, 0.0), c(1.0, TAU)])?;
    let l2_moved = continue_along(&l2, &lift_of_l3, opts)?;
    if !l2_moved.completed() {
        return Err(MonodromyError::RoutingFailure("log germ did not reach 1 + 2πi".into()));
    }
    let l3 = log_germ(c(E, 0.0), TAU, ORDER)?;
    let branch_b = continue_along(&Composed::new(l2_moved.last().clone(), l3)?, &gamma, opts)?;

    let oracle_path = validate_path(vec![c(1.0, 0.0), c(1.0, TAU), c(0.0, TAU)])?;
    let b_expected = lift_log(&oracle_path, 0.0).end();
    Ok(ExpExpReport {
        a_fail_point: branch_a.t_fail().map(|t| gamma.point_at(t)),
        b_final_value: branch_b.completed().then(|| branch_b.last().value()),
        branch_a,
        branch_b,
        b_expected,
    })
}

/// Winding index the reach path to `omega` is designed to have.
pub fn expected_winding(omega: Complex64, staircase: &Staircase) -> i64 {
    (staircase.choose_lift_target(omega).im / TAU).floor() as i64
}
