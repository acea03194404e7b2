//! Geometry of the staircase domain `ℰ = ⋃ₙ ℰₙ`, `ℰₙ = {n ≤ x ≤ n+1, y > 2πn}`.
//!
//! We work with the interior of the union: the open half-strips
//! `{n < x < n+1, y > 2πn}` glued along the half-lines `{x = n+1, y > 2π(n+1)}`.
//! Equivalently `z ∈ int ℰ ⟺ Im z > 2π·⌊Re z⌋`. Its boundary is the staircase
//! polyline made of walls `{x = n, 2π(n-1) ≤ y ≤ 2πn}` and floors
//! `{y = 2πn, n ≤ x ≤ n+1}`. The top of each wall, `(n, 2πn)`, is a reentrant
//! corner.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::tol::GEOM_TOL;

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * s)).norm()
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Distance between the closed segments `[a, b]` and `[c, d]`.
pub fn segment_segment_distance(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// The two boundary edges indexed by `n`: the wall at `x = n` and the floor of `ℰₙ`.
fn edges(n: i64) -> [(Complex64, Complex64); 2] {
    let x = n as f64;
    [
        (Complex64::new(x, TAU * (x - 1.0)), Complex64::new(x, TAU * x)),
        (Complex64::new(x, TAU * x), Complex64::new(x + 1.0, TAU * x)),
    ]
}

/// Range of edge indices that can hold the nearest boundary point to any of
/// `pts`. The staircase is monotone in both coordinates, so edges beyond the
/// span of `⌊x⌋` and `⌊y/2π⌋` are farther than those at its ends.
fn edge_range(pts: &[Complex64]) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for p in pts {
        let fx = p.re.floor() as i64;
        let fy = (p.im / TAU).floor() as i64;
        lo = lo.min(fx.min(fy));
        hi = hi.max(fx.max(fy));
    }
    (lo - 1, hi + 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum StaircaseError {
    #[error("truncation needs n_min < n_max and y_max > 2π(n_max + 1); got ({n_min}, {n_max}, {y_max})")]
    BadTruncation { n_min: i64, n_max: i64, y_max: f64 },
}

/// Predicates on the staircase domain, parameterized by the boundary tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Staircase {
    pub geom_tol: f64,
}

impl Default for Staircase {
    fn default() -> Self {
        Staircase { geom_tol: GEOM_TOL }
    }
}

impl Staircase {
    pub const fn new(geom_tol: f64) -> Self {
        Staircase { geom_tol }
    }

    /// Exact membership in `int ℰ`, without tolerance.
    pub fn raw_interior(z: Complex64) -> bool {
        z.im > TAU * z.re.floor()
    }

    /// Membership in `int ℰ` with a clearance of more than `geom_tol` from the boundary.
    pub fn in_interior(&self, z: Complex64) -> bool {
        Self::raw_interior(z) && self.boundary_distance(z) > self.geom_tol
    }

    /// Euclidean distance from `z` to `∂ℰ`.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let (lo, hi) = edge_range(&[z]);
        (lo..=hi)
            .flat_map(edges)
            .map(|(a, b)| point_segment_distance(z, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from the segment `[a, b]` to `∂ℰ`; zero when it touches or crosses.
    pub fn segment_boundary_distance(&self, a: Complex64, b: Complex64) -> f64 {
        let (lo, hi) = edge_range(&[a, b]);
        (lo..=hi)
            .flat_map(edges)
            .map(|(c, d)| segment_segment_distance(a, b, c, d))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `z` is within `geom_tol` of a reentrant corner `(m, 2πm)`.
    pub fn is_reentrant_corner(&self, z: Complex64) -> bool {
        let m = z.re.round();
        (z - Complex64::new(m, TAU * m)).norm() < self.geom_tol
    }

    /// Whether `omega` lies on the circle `|ω| = e^M` or the segment `[e^(M-1), e^M]`.
    pub fn slit_contains(&self, omega: Complex64, m: i64) -> bool {
        self.on_slit_circle(omega, m) || self.on_slit_segment(omega, m)
    }

    pub fn on_slit_circle(&self, omega: Complex64, m: i64) -> bool {
        (omega.norm() - (m as f64).exp()).abs() < self.geom_tol
    }

    pub fn on_slit_segment(&self, omega: Complex64, m: i64) -> bool {
        let (lo, hi) = ((m as f64 - 1.0).exp(), (m as f64).exp());
        omega.im.abs() < self.geom_tol && omega.re >= lo - self.geom_tol && omega.re <= hi + self.geom_tol
    }

    /// The logarithm value `ln|ω| + i(arg ω + 2πk)` of `omega` with the least
    /// `k` for which it lies in `int ℰ`.
    pub fn choose_lift_target(&self, omega: Complex64) -> Complex64 {
        let x = omega.norm().ln();
        let arg = omega.arg();
        // Points within geom_tol of a glue line behave like the glue line itself.
        let threshold = if (x - x.round()).abs() <= self.geom_tol {
            TAU * x.round()
        } else {
            TAU * x.floor()
        };
        let mut k = ((threshold - arg) / TAU).floor() - 1.0;
        loop {
            let z = Complex64::new(x, arg + TAU * k);
            if self.in_interior(z) {
                return z;
            }
            k += 1.0;
        }
    }
}

/// A bounded view of `ℰ`: strips `n_min ..= n_max`, cut at height `y_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub n_min: i64,
    pub n_max: i64,
    pub y_max: f64,
}

impl Truncation {
    pub fn new(n_min: i64, n_max: i64, y_max: f64) -> Result<Self, StaircaseError> {
        if n_min >= n_max || !(y_max > TAU * (n_max as f64 + 1.0)) {
            return Err(StaircaseError::BadTruncation { n_min, n_max, y_max });
        }
        Ok(Truncation { n_min, n_max, y_max })
    }

    /// Polygon corners in counterclockwise order, starting at the bottom-left.
    pub fn vertices(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(self.n_min as f64, TAU * self.n_min as f64)];
        for n in self.n_min..=self.n_max {
            let x = n as f64 + 1.0;
            v.push(Complex64::new(x, TAU * n as f64));
            if n < self.n_max {
                v.push(Complex64::new(x, TAU * x));
            }
        }
        v.push(Complex64::new(self.n_max as f64 + 1.0, self.y_max));
        v.push(Complex64::new(self.n_min as f64, self.y_max));
        v
    }

    /// Distance from `z` to the polygon boundary.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let v = self.vertices();
        (0..v.len())
            .map(|i| point_segment_distance(z, v[i], v[(i + 1) % v.len()]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Open-polygon membership, ignoring tolerance.
    pub fn raw_contains(&self, z: Complex64) -> bool {
        Staircase::raw_interior(z)
            && z.re > self.n_min as f64
            && z.re < self.n_max as f64 + 1.0
            && z.im < self.y_max
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.raw_contains(z) && self.boundary_distance(z) > tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent membership oracle: enumerate half-strips and glue lines.
    fn interior_oracle(z: Complex64) -> bool {
        (-50i64..50).any(|n| {
            let x = n as f64;
            (z.re > x && z.re < x + 1.0 && z.im > TAU * x) || (z.re == x + 1.0 && z.im > TAU * (x + 1.0))
        })
    }

    /// Independent distance oracle: dense sampling of the boundary polyline.
    fn distance_oracle(z: Complex64) -> f64 {
        let mut best = f64::INFINITY;
        for n in -6i64..20 {
            for (a, b) in edges(n) {
                for i in 0..=4000 {
                    let p = a + (b - a) * (i as f64 / 4000.0);
                    best = best.min((z - p).norm());
                }
            }
        }
        best
    }

    #[test]
    fn interior_examples() {
        let s = Staircase::default();
        assert!(s.in_interior(c(0.5f64.ln(), 0.0)));
        assert!(!s.in_interior(c(0.0, 0.0)));
        assert!(s.in_interior(c(0.5, 10.0)));
        assert!(!s.in_interior(c(1.0, 3.0)));
        for z in [c(0.0, 0.0), c(1.0, 3.0), c(1.0, 7.0), c(-0.5, -7.0), c(0.5, 0.1)] {
            assert_eq!(Staircase::raw_interior(z), interior_oracle(z), "{z}");
        }
    }

    #[test]
    fn distance_examples() {
        let s = Staircase::default();
        assert!((s.boundary_distance(c(0.5, 1.0)) - 0.5).abs() < 1e-12);
        assert_eq!(s.boundary_distance(c(0.0, 0.0)), 0.0);
        // The wall x = -1 (spanning y ∈ [-4π, -2π]) is nearer than the floor y = -2π.
        let d = s.boundary_distance(c(-0.5, -7.0));
        assert!((d - 0.5).abs() < 1e-12);
        assert!((d - distance_oracle(c(-0.5, -7.0))).abs() < 1e-3);
        for z in [c(0.5, 1.0), c(2.3, 20.0), c(-1.7, -3.0), c(0.2, 100.0)] {
            assert!((s.boundary_distance(z) - distance_oracle(z)).abs() < 2e-3, "{z}");
        }
    }

    #[test]
    fn slit_examples() {
        let s = Staircase::default();
        assert!(s.slit_contains(c(-1.0, 0.0), 0));
        assert!(s.slit_contains(c(0.5, 0.0), 0));
        assert!(0.5 > (-1.0f64).exp());
        assert!(!s.slit_contains(c(2.0, 0.0), 0));
    }

    #[test]
    fn lift_target_examples() {
        let s = Staircase::default();
        let z = s.choose_lift_target(c(0.0, 2.0));
        assert!((z - c(2f64.ln(), PI / 2.0)).norm() < 1e-12);
        let z = s.choose_lift_target(c(0.5, 0.0));
        assert!((z - c(0.5f64.ln(), 0.0)).norm() < 1e-12);
        let e3 = 3f64.exp();
        let z = s.choose_lift_target(c(-e3, 0.0));
        assert!((z.re - 3.0).abs() < 1e-12);
        assert!((z.im - 7.0 * PI).abs() < 1e-12);
        // minimal: one turn lower is not interior
        assert!(!s.in_interior(z - c(0.0, TAU)));
    }

    #[test]
    fn truncation_validation() {
        assert!(Truncation::new(-2, 2, 8.0 * PI).is_ok());
        assert!(Truncation::new(2, 2, 100.0).is_err());
        assert!(Truncation::new(-2, 2, 6.0 * PI).is_err());
        let t = Truncation::new(-2, 2, 8.0 * PI).unwrap();
        let v = t.vertices();
        assert_eq!(v.len(), 1 + 5 + 4 + 2);
        // counterclockwise: positive signed area
        let area: f64 = (0..v.len()).map(|i| cross(v[i], v[(i + 1) % v.len()])).sum::<f64>() / 2.0;
        assert!(area > 0.0);
        assert!(t.contains(c(0.5f64.ln(), 0.0), 0.05));
        assert!(!t.contains(c(-2.5, 0.0), 0.0));
        assert!(!t.contains(c(0.5, 30.0), 0.0));
    }

    fn arb_point() -> impl Strategy<Value = Complex64> {
        (-4.0f64..4.0, -30.0f64..30.0).prop_map(|(x, y)| c(x, y))
    }

    proptest! {
        #[test]
        fn open_set_witness(z in arb_point(), a in 0.0f64..TAU, r in 0.0f64..0.499) {
            let s = Staircase::default();
            prop_assume!(s.in_interior(z));
            let d = s.boundary_distance(z);
            let w = z + Complex64::from_polar(r * d, a);
            prop_assert!(Staircase::raw_interior(w));
        }

        #[test]
        fn exp_section(r in -3.0f64..3.0, a in -PI..PI) {
            let s = Staircase::default();
            let omega = Complex64::from_polar(r.exp(), a);
            let z = s.choose_lift_target(omega);
            prop_assert!((z.exp() - omega).norm() < 1e-10 * omega.norm().max(1.0));
            prop_assert!(s.in_interior(z));
        }

        #[test]
        fn slit_circle_has_integer_log_modulus(m in -3i64..=3, a in -PI..PI) {
            let s = Staircase::default();
            let omega = Complex64::from_polar((m as f64).exp(), a);
            prop_assert!(s.slit_contains(omega, m));
            prop_assert!((omega.norm().ln() - m as f64).abs() < s.geom_tol);
        }

        #[test]
        fn translation_structure(z in arb_point()) {
            let shifted = z + c(1.0, TAU);
            prop_assert_eq!(Staircase::raw_interior(z), Staircase::raw_interior(shifted));
        }
    }
}
