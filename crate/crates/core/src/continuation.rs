//! Germ transport along polylines, and the exact continuability oracle for
//! `f = h ∘ ψ ∘ λ` based on staircase membership of the logarithm lift.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::path::{lift_log, segment_pieces, signed_angle, PathPolyline};
use crate::series::{compose, h_germ, log_germ, recenter, Germ, Provenance, SeriesError};
use crate::staircase::Staircase;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContinuationError {
    #[error("start germ is centered at {germ}, but the path starts at {path}")]
    CenterMismatch { germ: Complex64, path: Complex64 },
    #[error("invalid option: {0}")]
    InvalidOptions(String),
    #[error("oracle paths must start at 0.5, got {0}")]
    WrongBasePoint(Complex64),
}

/// Why a single element could not be moved to a new center.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElementError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Domain(String),
    #[error("outer element stalled while following the inner value")]
    Stalled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationOptions {
    pub step_safety: f64,
    pub radius_floor: f64,
    pub max_steps: usize,
    pub cross_tol: f64,
    pub geom_tol: f64,
    pub lift_tol: f64,
    pub agree_tol: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            step_safety: tol::STEP_SAFETY,
            radius_floor: tol::RADIUS_FLOOR,
            max_steps: tol::MAX_STEPS,
            cross_tol: tol::CROSS_TOL,
            geom_tol: tol::GEOM_TOL,
            lift_tol: tol::LIFT_TOL,
            agree_tol: tol::AGREE_TOL,
        }
    }
}

impl ContinuationOptions {
    pub fn validate(&self) -> Result<(), ContinuationError> {
        let bad = |what: &str| Err(ContinuationError::InvalidOptions(what.to_string()));
        if !(self.step_safety > 0.0 && self.step_safety < 1.0) {
            return bad("step_safety must lie in (0, 1)");
        }
        if !(self.radius_floor > 0.0 && self.radius_floor.is_finite()) {
            return bad("radius_floor must be positive");
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive");
        }
        for (name, v) in [
            ("cross_tol", self.cross_tol),
            ("geom_tol", self.geom_tol),
            ("lift_tol", self.lift_tol),
            ("agree_tol", self.agree_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(&format!("{name} must be positive"));
            }
        }
        Ok(())
    }
}

/// Something that owns a germ and knows how to re-expand itself at a nearby point.
pub trait FunctionElement: Clone {
    fn germ(&self) -> &Germ;

    /// The element re-expanded at `to`, which lies within
    /// `step_safety × radius_est` of the current center.
    fn advance(&self, to: Complex64, opts: &ContinuationOptions) -> Result<Self, ElementError>;
}

/// Plain germs move by Taylor shift. Logarithm and lacunary germs are then
/// re-expanded in closed form on the branch selected by the shifted value,
/// which keeps their radius at the true distance to the singular set.
impl FunctionElement for Germ {
    fn germ(&self) -> &Germ {
        self
    }

    fn advance(&self, to: Complex64, opts: &ContinuationOptions) -> Result<Self, ElementError> {
        let shifted = recenter(self, to, opts.step_safety)?;
        Ok(match self.provenance() {
            Provenance::Log => {
                let principal = to.arg();
                let k = ((shifted.value().im - principal) / TAU).round();
                log_germ(to, principal + TAU * k, self.order())?
            }
            Provenance::Lacunary => h_germ(to, self.order())?,
            Provenance::Composed | Provenance::Recentered => shifted,
        })
    }
}

/// `outer ∘ inner` as an element: the inner element follows the path and the
/// outer element follows the inner values.
#[derive(Debug, Clone)]
pub struct Composed<O, I> {
    outer: O,
    inner: I,
    germ: Germ,
}

impl<O: FunctionElement, I: FunctionElement> Composed<O, I> {
    pub fn new(outer: O, inner: I) -> Result<Self, SeriesError> {
        let germ = compose(outer.germ(), inner.germ())?;
        Ok(Composed { outer, inner, germ })
    }

    pub fn outer(&self) -> &O {
        &self.outer
    }

    pub fn inner(&self) -> &I {
        &self.inner
    }
}

/// Moves `element` to `target` along a straight line in steps it can take.
fn follow<E: FunctionElement>(element: &E, target: Complex64, opts: &ContinuationOptions) -> Result<E, ElementError> {
    let mut e = element.clone();
    for _ in 0..10_000 {
        let c = e.germ().center();
        let reach = opts.step_safety * e.germ().radius_est() * (1.0 - 1e-9);
        let d = target - c;
        if d.norm() <= reach {
            return e.advance(target, opts);
        }
        if e.germ().radius_est() < opts.radius_floor {
            return Err(ElementError::Stalled);
        }
        e = e.advance(c + d * (reach / d.norm()), opts)?;
    }
    Err(ElementError::Stalled)
}

impl<O: FunctionElement, I: FunctionElement> FunctionElement for Composed<O, I> {
    fn germ(&self) -> &Germ {
        &self.germ
    }

    fn advance(&self, to: Complex64, opts: &ContinuationOptions) -> Result<Self, ElementError> {
        let inner = self.inner.advance(to, opts)?;
        let outer = follow(&self.outer, inner.germ().value(), opts)?;
        let germ = compose(outer.germ(), inner.germ())?;
        Ok(Composed { outer, inner, germ })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReason {
    RadiusCollapse { radius: f64 },
    StepLimit { steps: usize },
    Element { message: String },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::RadiusCollapse { radius } => write!(f, "radius estimate {radius:.3e} below floor"),
            FailureReason::StepLimit { steps } => write!(f, "step limit {steps} exceeded"),
            FailureReason::Element { message } => write!(f, "{message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChainStatus {
    Completed,
    Failed { t_fail: f64, reason: FailureReason },
}

/// Germs placed along a path, with the path parameter of each center.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationChain {
    pub elements: Vec<Germ>,
    pub breakpoints: Vec<f64>,
    pub status: ChainStatus,
}

impl ContinuationChain {
    pub fn completed(&self) -> bool {
        self.status == ChainStatus::Completed
    }

    pub fn t_fail(&self) -> Option<f64> {
        match self.status {
            ChainStatus::Completed => None,
            ChainStatus::Failed { t_fail, .. } => Some(t_fail),
        }
    }

    pub fn last(&self) -> &Germ {
        self.elements.last().expect("a chain holds at least its start germ")
    }

    /// Largest disagreement of adjacent germs over their overlap test points.
    pub fn max_overlap_defect(&self) -> f64 {
        self.elements.windows(2).map(|w| overlap_defect(&w[0], &w[1])).fold(0.0, f64::max)
    }
}

/// Eight points on the circle of radius `min(r₁, r₂)/4` about the midpoint of the centers.
pub fn overlap_points(a: &Germ, b: &Germ) -> [Complex64; 8] {
    let mid = (a.center() + b.center()) * 0.5;
    let rho = 0.25 * a.radius_est().min(b.radius_est());
    std::array::from_fn(|j| mid + Complex64::from_polar(rho, TAU * j as f64 / 8.0))
}

pub fn overlap_defect(a: &Germ, b: &Germ) -> f64 {
    overlap_points(a, b).iter().map(|&z| (a.eval(z) - b.eval(z)).norm()).fold(0.0, f64::max)
}

/// Largest parameter `t' ≥ t` with `path[t, t']` inside the closed disc `D(center, reach)`.
fn farthest_in_disc(path: &PathPolyline, t: f64, center: Complex64, reach: f64) -> f64 {
    if path.segment_count() == 0 || path.total_length() == 0.0 {
        return 1.0;
    }
    let pts = path.points();
    let (seg0, s0) = path.locate(t);
    for seg in seg0..path.segment_count() {
        let s_a = if seg == seg0 { s0 } else { 0.0 };
        let (p, q) = (pts[seg], pts[seg + 1]);
        let a = p + (q - p) * s_a;
        if (q - center).norm() <= reach {
            continue;
        }
        let d = q - a;
        let qa = d.norm_sqr();
        let w = a - center;
        let qb = 2.0 * (w.re * d.re + w.im * d.im);
        let qc = (w.norm_sqr() - reach * reach).min(0.0);
        let u = ((-qb + (qb * qb - 4.0 * qa * qc).max(0.0).sqrt()) / (2.0 * qa)).clamp(0.0, 1.0);
        return path.segment_param(seg, s_a + u * (1.0 - s_a)).max(t);
    }
    1.0
}

/// Continues `start` along `path` by repeated re-expansion.
///
/// Each new center is the farthest path point whose connecting sub-path stays
/// within `step_safety × radius_est` of the current center. The chain fails
/// when the radius estimate drops below `radius_floor`, when `max_steps` is
/// exceeded, or when an element cannot be built; `t_fail` is then the last
/// parameter reached.
pub fn continue_along<E: FunctionElement>(
    start: &E,
    path: &PathPolyline,
    opts: &ContinuationOptions,
) -> Result<ContinuationChain, ContinuationError> {
    opts.validate()?;
    let c0 = start.germ().center();
    if (c0 - path.start()).norm() > 1e-12 * path.start().norm().max(1.0) {
        return Err(ContinuationError::CenterMismatch { germ: c0, path: path.start() });
    }
    let mut current = start.clone();
    let mut elements = vec![current.germ().clone()];
    let mut breakpoints = vec![0.0];
    let mut t = 0.0;
    let mut steps = 0usize;
    let status = loop {
        if t >= 1.0 {
            break ChainStatus::Completed;
        }
        let radius = current.germ().radius_est();
        if radius < opts.radius_floor {
            break ChainStatus::Failed { t_fail: t, reason: FailureReason::RadiusCollapse { radius } };
        }
        if steps >= opts.max_steps {
            break ChainStatus::Failed { t_fail: t, reason: FailureReason::StepLimit { steps } };
        }
        let reach = opts.step_safety * radius * (1.0 - 1e-9);
        let t_next = farthest_in_disc(path, t, current.germ().center(), reach);
        let to = if t_next >= 1.0 { path.end() } else { path.point_at(t_next) };
        match current.advance(to, opts) {
            Ok(next) => {
                current = next;
                t = t_next.min(1.0);
                steps += 1;
                elements.push(current.germ().clone());
                breakpoints.push(t);
            }
            Err(e) => {
                break ChainStatus::Failed { t_fail: t, reason: FailureReason::Element { message: e.to_string() } };
            }
        }
    };
    Ok(ContinuationChain { elements, breakpoints, status })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Continuable,
    Blocked,
    Corner,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Continuable => "continuable",
            Verdict::Blocked => "blocked",
            Verdict::Corner => "corner",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub verdict: Verdict,
    pub first_exit_t: Option<f64>,
    /// End of the lift, or the lift at the first exit when blocked.
    pub lift_end: Complex64,
}

/// Exact continuability of `f = h ∘ ψ ∘ λ` along `path`.
///
/// The lift (branch `Im = 0` at `1/2`) is examined piece by piece. On each
/// refined piece the parameters where `ln|z|` is an integer or where `z`
/// crosses the positive real axis split it into runs lying in one open
/// lattice cell `(m, m+1) × (2πk, 2π(k+1))`. Interior status is constant on
/// such a cell, so testing the split points and one point per run decides
/// membership for the whole lift.
pub fn continuable_exact(path: &PathPolyline, staircase: &Staircase) -> Result<OracleVerdict, ContinuationError> {
    if (path.start() - Complex64::new(0.5, 0.0)).norm() > 1e-12 {
        return Err(ContinuationError::WrongBasePoint(path.start()));
    }
    let pts = path.points();
    let lift = lift_log(path, 0.0);
    let blocked = |t: f64, z: Complex64| {
        let corner = t >= 1.0 - 1e-12 && staircase.is_reentrant_corner(z);
        OracleVerdict {
            verdict: if corner { Verdict::Corner } else { Verdict::Blocked },
            first_exit_t: Some(t),
            lift_end: z,
        }
    };
    if !staircase.in_interior(lift.start()) {
        return Ok(blocked(0.0, lift.start()));
    }
    for seg in 0..path.segment_count() {
        let (p, q) = (pts[seg], pts[seg + 1]);
        let pieces = segment_pieces(p, q, tol::MAX_LIFT_ANGLE);
        let m = pieces.len() - 1;
        let mut im = lift.points[seg].im;
        for (j, w) in pieces.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let d = b - a;
            let mut events = lattice_events(a, b);
            events.sort_by(f64::total_cmp);
            let mut samples = Vec::with_capacity(2 * events.len() + 2);
            let mut prev = 0.0;
            for &e in &events {
                samples.push(0.5 * (prev + e));
                samples.push(e);
                prev = e;
            }
            samples.push(0.5 * (prev + 1.0));
            samples.push(1.0);
            for u in samples {
                let z = a + d * u;
                let zeta = Complex64::new(z.norm().ln(), im + signed_angle(a, z));
                if !staircase.in_interior(zeta) {
                    let s_seg = (j as f64 + u) / m as f64;
                    return Ok(blocked(path.segment_param(seg, s_seg), zeta));
                }
            }
            im += signed_angle(a, b);
        }
    }
    Ok(OracleVerdict { verdict: Verdict::Continuable, first_exit_t: None, lift_end: lift.end() })
}

/// Interior parameters of `[a, b]` where `|z| = e^m` or `z` meets the positive real axis.
fn lattice_events(a: Complex64, b: Complex64) -> Vec<f64> {
    let d = b - a;
    let inside = |u: f64| u > 0.0 && u < 1.0;
    let mut out = Vec::new();
    if d.im != 0.0 {
        let u = -a.im / d.im;
        if inside(u) && a.re + u * d.re > 0.0 {
            out.push(u);
        }
    }
    // |a + u d|² = e^{2m}: quadratic in u, |z| ranges over [min, max] on the piece.
    let (ra, rb) = (a.norm(), b.norm());
    let qa = d.norm_sqr();
    if qa == 0.0 {
        return out;
    }
    let qb = 2.0 * (a.re * d.re + a.im * d.im);
    let u_min = (-qb / (2.0 * qa)).clamp(0.0, 1.0);
    let r_min = (a + d * u_min).norm();
    let lo = r_min.ln().floor() as i64;
    let hi = ra.max(rb).ln().ceil() as i64;
    for mm in lo..=hi {
        let r2 = (2.0 * mm as f64).exp();
        let qc = a.norm_sqr() - r2;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            continue;
        }
        let s = disc.sqrt();
        for u in [(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)] {
            if inside(u) {
                out.push(u);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    pub oracle: OracleVerdict,
    pub chain: ContinuationChain,
    pub agree: bool,
}

/// Runs the numeric continuation of `element` and the exact oracle on `path`.
///
/// They agree when both succeed, or when the numeric failure parameter lies
/// within `cross_tol` of the oracle's first exit parameter.
pub fn crosscheck<E: FunctionElement>(
    path: &PathPolyline,
    element: &E,
    staircase: &Staircase,
    opts: &ContinuationOptions,
) -> Result<CrosscheckReport, ContinuationError> {
    let oracle = continuable_exact(path, staircase)?;
    let chain = continue_along(element, path, opts)?;
    let agree = match (oracle.first_exit_t, chain.t_fail()) {
        (None, None) => true,
        (Some(t_star), Some(t_fail)) => (t_fail - t_star).abs() < opts.cross_tol,
        _ => false,
    };
    Ok(CrosscheckReport { oracle, chain, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{circle_loop, validate_path};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn log_at_half() -> Germ {
        log_germ(c(0.5, 0.0), 0.0, tol::ORDER).unwrap()
    }

    #[test]
    fn log_loop_picks_up_two_pi() {
        let chain = continue_along(&log_at_half(), &circle_loop(0.5, 1, 64), &Default::default()).unwrap();
        assert!(chain.completed());
        assert!((chain.last().value() - c(0.5f64.ln(), TAU)).norm() < 1e-9);
        assert!(chain.max_overlap_defect() < 1e-7);
    }

    #[test]
    fn log_along_real_segment() {
        let path = validate_path(vec![c(0.5, 0.0), c(2.0, 0.0)]).unwrap();
        let chain = continue_along(&log_at_half(), &path, &Default::default()).unwrap();
        assert!(chain.completed());
        assert!((chain.last().value() - c(2f64.ln(), 0.0)).norm() < 1e-12);
        assert_eq!(*chain.breakpoints.last().unwrap(), 1.0);
        for (g, &t) in chain.elements.iter().zip(&chain.breakpoints) {
            assert!((g.center() - path.point_at(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn steps_respect_safety_factor() {
        let path = circle_loop(0.5, 2, 9);
        let opts = ContinuationOptions::default();
        let chain = continue_along(&log_at_half(), &path, &opts).unwrap();
        for w in chain.elements.windows(2) {
            assert!((w[1].center() - w[0].center()).norm() <= opts.step_safety * w[0].radius_est() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn center_mismatch_is_rejected() {
        let path = validate_path(vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(matches!(
            continue_along(&log_at_half(), &path, &Default::default()),
            Err(ContinuationError::CenterMismatch { .. })
        ));
        let bad = ContinuationOptions { step_safety: 1.5, ..Default::default() };
        let path = validate_path(vec![c(0.5, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(matches!(continue_along(&log_at_half(), &path, &bad), Err(ContinuationError::InvalidOptions(_))));
    }

    #[test]
    fn generic_germ_fails_by_radius_collapse() {
        let g = log_at_half().with_radius(0.4);
        let shifted = recenter(&g, c(0.5, 0.0), 0.5).unwrap();
        assert_eq!(shifted.provenance(), Provenance::Recentered);
        let path = validate_path(vec![c(0.5, 0.0), c(0.5, 3.0)]).unwrap();
        let chain = continue_along(&shifted, &path, &Default::default()).unwrap();
        match chain.status {
            ChainStatus::Failed { reason: FailureReason::RadiusCollapse { .. }, t_fail } => assert!(t_fail < 0.3),
            ref s => panic!("unexpected status {s:?}"),
        }
    }

    #[test]
    fn lacunary_germ_runs_into_unit_circle() {
        let g = h_germ(c(0.5, 0.0), tol::ORDER).unwrap();
        let path = validate_path(vec![c(0.5, 0.0), c(0.5, 1.0)]).unwrap();
        let chain = continue_along(&g, &path, &Default::default()).unwrap();
        let t = chain.t_fail().expect("natural boundary stops the chain");
        // |0.5 + i y| = 1 at y = √3/2
        assert!((t - 0.75f64.sqrt()).abs() < 1e-3, "t_fail = {t}");
        assert!(chain.max_overlap_defect() < 1e-7);
    }

    #[test]
    fn oracle_examples() {
        let st = Staircase::default();
        let constant = validate_path(vec![c(0.5, 0.0)]).unwrap();
        let v = continuable_exact(&constant, &st).unwrap();
        assert_eq!(v.verdict, Verdict::Continuable);
        assert!((v.lift_end - c(0.5f64.ln(), 0.0)).norm() < 1e-15);

        let real = validate_path(vec![c(0.5, 0.0), c(2.0, 0.0)]).unwrap();
        let v = continuable_exact(&real, &st).unwrap();
        assert_eq!(v.verdict, Verdict::Blocked);
        assert!((v.first_exit_t.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!(v.lift_end.norm() < 1e-12);

        let wrong = validate_path(vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(matches!(continuable_exact(&wrong, &st), Err(ContinuationError::WrongBasePoint(_))));
    }

    #[test]
    fn oracle_loop_then_out() {
        // one turn lifts to Im 2π, then |z| → 2 crosses x = 0 above the glue line
        let mut pts = circle_loop(0.5, 1, 32).points().to_vec();
        pts.push(c(2.0, 0.0));
        let v = continuable_exact(&validate_path(pts).unwrap(), &Staircase::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Continuable);
        assert!((v.lift_end - c(2f64.ln(), TAU)).norm() < 1e-12);
    }

    #[test]
    fn oracle_catches_brief_excursion() {
        // below the real axis the lift reaches the wall x = 0 where |z| = 1
        let st = Staircase::default();
        let pts = vec![c(0.5, 0.0), c(0.5, -0.5), c(0.9, -0.9), c(0.5, -0.5)];
        let v = continuable_exact(&validate_path(pts.clone()).unwrap(), &st).unwrap();
        assert_eq!(v.verdict, Verdict::Blocked);
        let t = v.first_exit_t.unwrap();
        let z = validate_path(pts).unwrap().point_at(t);
        assert!((z.norm() - 1.0).abs() < 1e-12);
    }

    /// Independent oracle: dense sampling of the lift.
    fn dense_oracle(path: &PathPolyline, st: &Staircase) -> bool {
        let lift = lift_log(path, 0.0);
        let pts = path.points();
        let mut ok = st.in_interior(lift.start());
        for seg in 0..path.segment_count() {
            let mut im = lift.points[seg].im;
            let (a, b) = (pts[seg], pts[seg + 1]);
            let n = 2000;
            let mut prev = a;
            for i in 1..=n {
                let z = a + (b - a) * (i as f64 / n as f64);
                im += signed_angle(prev, z);
                prev = z;
                ok &= st.in_interior(c(z.norm().ln(), im));
            }
        }
        ok
    }

    #[test]
    fn oracle_matches_dense_sampling() {
        let st = Staircase::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..6);
            let mut pts = vec![c(0.5, 0.0)];
            for _ in 0..n {
                let r = rng.gen_range(-2.5f64..2.5).exp();
                pts.push(Complex64::from_polar(r, rng.gen_range(-PI..PI)));
            }
            let Ok(path) = validate_path(pts) else { continue };
            let exact = continuable_exact(&path, &st).unwrap().verdict == Verdict::Continuable;
            assert_eq!(exact, dense_oracle(&path, &st), "{:?}", path.points());
        }
    }

    #[test]
    fn log_continuation_matches_lift_on_random_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut pts = vec![c(0.5, 0.0)];
            for _ in 0..rng.gen_range(1..8) {
                pts.push(Complex64::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI)));
            }
            let Ok(path) = validate_path(pts) else { continue };
            if crate::path::segment_origin_distance(path.start(), path.end()) < 1e-3 {
                continue;
            }
            let min_gap = path.points().windows(2).map(|w| crate::path::segment_origin_distance(w[0], w[1])).fold(f64::INFINITY, f64::min);
            if min_gap < 1e-3 {
                continue;
            }
            let chain = continue_along(&log_at_half(), &path, &Default::default()).unwrap();
            assert!(chain.completed());
            let lift = lift_log(&path, 0.0);
            assert!((chain.last().value() - lift.end()).norm() < tol::AGREE_TOL);
        }
    }

    #[test]
    fn composed_log_log() {
        let outer = log_germ(c(1.0, 0.0), 0.0, 32).unwrap();
        let inner = log_germ(c(std::f64::consts::E, 0.0), 0.0, 32).unwrap();
        let el = Composed::new(outer, inner).unwrap();
        let path = validate_path(vec![c(std::f64::consts::E, 0.0), c(10.0, 5.0)]).unwrap();
        let chain = continue_along(&el, &path, &Default::default()).unwrap();
        assert!(chain.completed());
        let expect = c(10.0, 5.0).ln().ln();
        assert!((chain.last().value() - expect).norm() < 1e-9);
    }
}
