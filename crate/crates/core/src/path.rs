//! Polyline paths in the punctured plane and their logarithm lifts.
//!
//! A path is the concatenation of straight segments between consecutive
//! points, parameterized by chord-length fraction `t ∈ [0, 1]`. Every point
//! and every segment must stay away from the origin, so a continuous branch
//! of the logarithm exists along the whole path.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::tol::{LIFT_TOL, MAX_LIFT_ANGLE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("path has no points")]
    EmptyPath,
    #[error("point {index} is not finite")]
    NonFinite { index: usize },
    #[error("point {index} is the origin")]
    PointAtOrigin { index: usize },
    #[error("segment {segment} passes through the origin")]
    SegmentThroughOrigin { segment: usize },
}

/// A validated polyline in `ℂ \ {0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathPolyline {
    points: Vec<Complex64>,
    /// Cumulative chord length up to each vertex.
    cumulative: Vec<f64>,
}

/// Distance from the origin to the closed segment `[a, b]`.
pub fn segment_origin_distance(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let s = (-(a.re * d.re + a.im * d.im) / len2).clamp(0.0, 1.0);
    (a + d * s).norm()
}

/// Builds a [`PathPolyline`], rejecting paths that touch the origin.
pub fn validate_path(points: Vec<Complex64>) -> Result<PathPolyline, PathError> {
    if points.is_empty() {
        return Err(PathError::EmptyPath);
    }
    for (index, p) in points.iter().enumerate() {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(PathError::NonFinite { index });
        }
        if p.norm() == 0.0 {
            return Err(PathError::PointAtOrigin { index });
        }
    }
    let mut cumulative = Vec::with_capacity(points.len());
    cumulative.push(0.0);
    for (segment, w) in points.windows(2).enumerate() {
        if segment_origin_distance(w[0], w[1]) <= 0.0 {
            return Err(PathError::SegmentThroughOrigin { segment });
        }
        let last = *cumulative.last().unwrap();
        cumulative.push(last + (w[1] - w[0]).norm());
    }
    Ok(PathPolyline { points, cumulative })
}

impl PathPolyline {
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn start(&self) -> Complex64 {
        self.points[0]
    }

    pub fn end(&self) -> Complex64 {
        *self.points.last().unwrap()
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Path parameter of vertex `k`.
    pub fn vertex_param(&self, k: usize) -> f64 {
        let total = self.total_length();
        if total == 0.0 {
            if k + 1 == self.points.len() {
                1.0
            } else {
                0.0
            }
        } else {
            self.cumulative[k] / total
        }
    }

    /// Path parameter of the point at fraction `s` along segment `seg`.
    pub fn segment_param(&self, seg: usize, s: f64) -> f64 {
        let total = self.total_length();
        if total == 0.0 {
            return if seg + 1 == self.segment_count() && s >= 1.0 { 1.0 } else { 0.0 };
        }
        let len = self.cumulative[seg + 1] - self.cumulative[seg];
        ((self.cumulative[seg] + s * len) / total).min(1.0)
    }

    /// Segment index and local fraction for parameter `t`.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        if self.points.len() == 1 {
            return (0, 0.0);
        }
        let total = self.total_length();
        let target = t.clamp(0.0, 1.0) * total;
        let nseg = self.segment_count();
        for seg in 0..nseg {
            let (l0, l1) = (self.cumulative[seg], self.cumulative[seg + 1]);
            if target <= l1 || seg + 1 == nseg {
                let s = if l1 > l0 { ((target - l0) / (l1 - l0)).clamp(0.0, 1.0) } else { 1.0 };
                return (seg, s);
            }
        }
        unreachable!()
    }

    pub fn point_at(&self, t: f64) -> Complex64 {
        if self.points.len() == 1 {
            return self.points[0];
        }
        if t >= 1.0 {
            return self.end();
        }
        let (seg, s) = self.locate(t);
        let (a, b) = (self.points[seg], self.points[seg + 1]);
        a + (b - a) * s
    }

    /// Returns a copy with the midpoint of segment `seg` inserted.
    pub fn with_midpoint(&self, seg: usize) -> PathPolyline {
        let mut pts = self.points.clone();
        let mid = (pts[seg] + pts[seg + 1]) * 0.5;
        pts.insert(seg + 1, mid);
        validate_path(pts).expect("midpoint insertion keeps a valid path valid")
    }
}

/// Signed angle subtended at the origin by the segment from `a` to `b`.
///
/// Exact for any segment avoiding the origin, whose subtended angle lies
/// strictly inside `(-π, π)`.
pub fn signed_angle(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

/// Splits `[a, b]` into equal pieces each subtending less than `max_angle`.
/// Returns the piece endpoints, `a` and `b` included.
pub fn segment_pieces(a: Complex64, b: Complex64, max_angle: f64) -> Vec<Complex64> {
    let total = signed_angle(a, b).abs();
    let mut m = ((total / max_angle).floor() as usize + 1).max(1);
    loop {
        let pts: Vec<Complex64> = (0..=m)
            .map(|i| {
                if i == m {
                    b
                } else {
                    a + (b - a) * (i as f64 / m as f64)
                }
            })
            .collect();
        if pts.windows(2).all(|w| signed_angle(w[0], w[1]).abs() < max_angle) {
            return pts;
        }
        m *= 2;
    }
}

/// Continuous logarithm image of a path.
#[derive(Debug, Clone, PartialEq)]
pub struct LogLift {
    pub points: Vec<Complex64>,
    pub start_branch_im: f64,
}

impl LogLift {
    pub fn start(&self) -> Complex64 {
        self.points[0]
    }

    pub fn end(&self) -> Complex64 {
        *self.points.last().unwrap()
    }

    /// Total increase of the imaginary part along the lift.
    pub fn delta_im(&self) -> f64 {
        self.end().im - self.start().im
    }
}

/// Lifts `path` through the logarithm, starting at `ln|path[0]| + i·start_branch_im`.
///
/// Each segment is refined until its pieces subtend less than `π/4` and the
/// exact per-piece angles are accumulated. At every vertex the accumulated
/// imaginary part is snapped to the nearest value `arg z + 2πk` (shifted by
/// the start offset when `start_branch_im` is not a logarithm value of the
/// first point), which keeps `exp(lift)` equal to the vertex up to rounding.
pub fn lift_log(path: &PathPolyline, start_branch_im: f64) -> LogLift {
    let pts = path.points();
    let mut points = Vec::with_capacity(pts.len());
    points.push(Complex64::new(pts[0].norm().ln(), start_branch_im));
    // Zero whenever the start branch is a genuine logarithm value of path[0].
    let offset = start_branch_im - pts[0].arg();
    let mut im = start_branch_im;
    for w in pts.windows(2) {
        let pieces = segment_pieces(w[0], w[1], MAX_LIFT_ANGLE);
        im += pieces.windows(2).map(|p| signed_angle(p[0], p[1])).sum::<f64>();
        let principal = w[1].arg() + offset;
        let k = ((im - principal) / TAU).round();
        let snapped = principal + TAU * k;
        debug_assert!((snapped - im).abs() < 1e-6);
        im = snapped;
        points.push(Complex64::new(w[1].norm().ln(), im));
    }
    LogLift { points, start_branch_im }
}

/// Open-path winding number: `floor((Im lift_end - Im lift_start) / 2π)`.
///
/// The quotient is nudged by `LIFT_TOL` before flooring so that a closed loop,
/// whose increment is `2πk` up to rounding, yields `k` rather than `k - 1`.
pub fn winding_number(path: &PathPolyline) -> i64 {
    winding_from_delta(lift_log(path, 0.0).delta_im())
}

pub fn winding_from_delta(delta_im: f64) -> i64 {
    ((delta_im + LIFT_TOL) / TAU).floor() as i64
}

/// Samples `k` counterclockwise turns (clockwise for negative `k`) of the circle
/// of the given radius, starting and ending at `radius`. `per_turn` chords per turn.
pub fn circle_loop(radius: f64, turns: i64, per_turn: usize) -> PathPolyline {
    let n = (turns.unsigned_abs() as usize * per_turn).max(1);
    let total = TAU * turns as f64;
    let mut pts: Vec<Complex64> = (0..=n)
        .map(|i| Complex64::from_polar(radius, total * i as f64 / n as f64))
        .collect();
    if turns != 0 {
        *pts.last_mut().unwrap() = Complex64::new(radius, 0.0);
    }
    validate_path(pts).expect("circle avoids the origin")
}

/// Samples the arc `radius·e^{iθ}` for `θ` from `from` to `to`.
pub fn arc(radius: f64, from: f64, to: f64, pieces: usize) -> PathPolyline {
    let n = pieces.max(1);
    let pts = (0..=n)
        .map(|i| Complex64::from_polar(radius, from + (to - from) * i as f64 / n as f64))
        .collect();
    validate_path(pts).expect("arc avoids the origin")
}
