//! Numerical Riemann map of a truncated staircase onto the unit disc.
//!
//! The map is built with the geodesic variant of the zipper algorithm. Boundary
//! nodes `z₀, z₁, …, z_{n-1}` are taken along the truncated polygon. The first
//! map `i·√((z - z₁)/(z - z₀))` opens the segment `[z₀, z₁]` onto the real line.
//! Each following node is pushed forward to a point `a` of the upper half-plane
//! and removed by the elementary map that sends the hyperbolic geodesic from
//! `0` to `a` onto an interval of the real line. A last map unzips the arc
//! back to `z₀`, and a Möbius transformation sends the upper half-plane to the
//! disc with `ψ̂(ζ₀) = 0` and `ψ̂'(ζ₀) > 0`.
//!
//! The result is an exact conformal map of the region bounded by the
//! preimages of the geodesic arcs, a region whose boundary passes through
//! every node and approaches the polygon as the node count grows.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;
use thiserror::Error;

use crate::continuation::{ContinuationOptions, ElementError, FunctionElement};
use crate::series::{compose, h_germ, log_germ, Germ, Provenance, SeriesError};
pub use crate::staircase::Truncation;
use crate::staircase::{point_segment_distance, StaircaseError};

/// Fraction of the distance to the polygon used as Cauchy sampling radius.
const SAMPLE_FRACTION: f64 = 0.5;

/// Boundary probes sit this fraction of the local node spacing inside the polygon.
const PROBE_FRACTION: f64 = 0.02;

const GRID_SAMPLES: usize = 200;
const GRID_CLEARANCE: f64 = 0.05;
const BOUNDARY_PROBES: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConformalError {
    #[error(transparent)]
    BadTruncation(#[from] StaircaseError),
    #[error("resolution must be at least 64 boundary nodes, got {0}")]
    BadResolution(usize),
    #[error("boundary nodes {0} and {1} coincide")]
    DegenerateBoundary(usize, usize),
    #[error("node {0} left the upper half-plane while zipping (crowding)")]
    Crowding(usize),
    #[error("normalization point {0} is not inside the truncated domain")]
    BadNormalization(Complex64),
    #[error("point {0} is outside the truncated domain")]
    OutsideDomain(Complex64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A value with its complex derivative.
#[derive(Debug, Clone, Copy)]
struct Dual {
    v: Complex64,
    d: Complex64,
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Elementary map removing the geodesic from `0` to `a`:
/// `T(z) = z / (1 - z/b)` straightens the arc onto `[0, ic]`, then `√(T² + c²)`.
#[derive(Debug, Clone, Copy)]
struct GeodesicSlit {
    /// Second real point of the circle carrying the arc; `None` when it is the
    /// imaginary axis.
    b: Option<f64>,
    c: f64,
}

fn straighten(b: Option<f64>, z: Dual) -> Dual {
    match b {
        None => z,
        Some(b) => {
            let den = Complex64::new(1.0, 0.0) - z.v / b;
            Dual { v: z.v / den, d: z.d / (den * den) }
        }
    }
}

impl GeodesicSlit {
    fn through(a: Complex64) -> Self {
        if a.re.abs() <= 1e-14 * a.norm() {
            return GeodesicSlit { b: None, c: a.im };
        }
        let b = a.norm_sqr() / a.re;
        let t = a / (Complex64::new(1.0, 0.0) - a / b);
        GeodesicSlit { b: Some(b), c: t.im }
    }

    fn apply(&self, z: Dual) -> Dual {
        let t = straighten(self.b, z);
        let w = t.v * t.v + self.c * self.c;
        let r = (-w).sqrt();
        Dual { v: I * r, d: -I * t.v * t.d / r }
    }

    /// Image of the point at infinity, approached from the upper half-plane.
    fn apply_infinity(&self) -> Option<f64> {
        self.b.map(|b| {
            let t = -b;
            t.signum() * (t * t + self.c * self.c).sqrt()
        })
    }

    /// Image of a real point approached from the upper half-plane.
    fn apply_real(&self, x: f64) -> Option<f64> {
        let t = match self.b {
            None => x,
            Some(b) => {
                if x == b {
                    return None;
                }
                x / (1.0 - x / b)
            }
        };
        Some(t.signum() * (t * t + self.c * self.c).sqrt())
    }
}

/// Approximate Riemann map `ψ̂` of a truncated staircase onto the unit disc.
#[derive(Debug, Clone)]
pub struct ConformalMap {
    truncation: Truncation,
    vertices: Vec<Complex64>,
    nodes: Vec<Complex64>,
    slits: Vec<GeodesicSlit>,
    /// Image of `z₀` before the closing map; `None` when it stayed at infinity.
    closing: Option<f64>,
    flip: f64,
    zeta0: Complex64,
    u0: Complex64,
    rotation: Complex64,
}

/// Places `count` nodes along the closed polygon, every vertex included,
/// spacing roughly uniform by arc length.
fn boundary_nodes(vertices: &[Complex64], count: usize) -> Vec<Complex64> {
    let nv = vertices.len();
    let lens: Vec<f64> = (0..nv).map(|i| (vertices[(i + 1) % nv] - vertices[i]).norm()).collect();
    let perimeter: f64 = lens.iter().sum();
    let mut parts: Vec<usize> = lens
        .iter()
        .map(|l| ((l / perimeter * count as f64).round() as usize).max(1))
        .collect();
    let key = |parts: &[usize], i: usize| lens[i] / parts[i] as f64;
    while parts.iter().sum::<usize>() < count {
        let i = (0..nv).max_by(|&a, &b| key(&parts, a).total_cmp(&key(&parts, b))).unwrap();
        parts[i] += 1;
    }
    while parts.iter().sum::<usize>() > count {
        let i = (0..nv)
            .filter(|&i| parts[i] > 1)
            .min_by(|&a, &b| key(&parts, a).total_cmp(&key(&parts, b)))
            .unwrap();
        parts[i] -= 1;
    }
    let mut nodes = Vec::with_capacity(count);
    for i in 0..nv {
        let (a, b) = (vertices[i], vertices[(i + 1) % nv]);
        for j in 0..parts[i] {
            nodes.push(a + (b - a) * (j as f64 / parts[i] as f64));
        }
    }
    nodes
}

/// Builds `ψ̂` for `truncation` with `resolution` boundary nodes, normalized at `ln(1/2)`.
pub fn build_map(truncation: Truncation, resolution: usize) -> Result<ConformalMap, ConformalError> {
    build_map_at(truncation, resolution, Complex64::new(0.5f64.ln(), 0.0))
}

/// As [`build_map`], with an explicit normalization point.
pub fn build_map_at(truncation: Truncation, resolution: usize, zeta0: Complex64) -> Result<ConformalMap, ConformalError> {
    let truncation = Truncation::new(truncation.n_min, truncation.n_max, truncation.y_max)?;
    if resolution < 64 {
        return Err(ConformalError::BadResolution(resolution));
    }
    if !truncation.contains(zeta0, 0.0) {
        return Err(ConformalError::BadNormalization(zeta0));
    }
    let vertices = truncation.vertices();
    let mut nodes = boundary_nodes(&vertices, resolution);
    // Zipping starts (and therefore ends) at the node nearest the normalization
    // point. Starting inside a deep channel instead pushes the rest of the
    // domain towards infinity in the intermediate planes, and distinct interior
    // points then collide in floating point.
    let near = (0..nodes.len())
        .min_by(|&a, &b| (nodes[a] - zeta0).norm().total_cmp(&(nodes[b] - zeta0).norm()))
        .unwrap();
    nodes.rotate_left(near);
    ConformalMap::from_nodes(truncation, vertices, nodes, zeta0)
}

impl ConformalMap {
    fn from_nodes(
        truncation: Truncation,
        vertices: Vec<Complex64>,
        nodes: Vec<Complex64>,
        zeta0: Complex64,
    ) -> Result<Self, ConformalError> {
        let n = nodes.len();
        for i in 0..n {
            if nodes[i] == nodes[(i + 1) % n] {
                return Err(ConformalError::DegenerateBoundary(i, (i + 1) % n));
            }
        }
        let mut map = ConformalMap {
            truncation,
            vertices,
            nodes,
            slits: Vec::with_capacity(n),
            closing: None,
            flip: 1.0,
            zeta0,
            u0: Complex64::new(0.0, 1.0),
            rotation: Complex64::new(1.0, 0.0),
        };
        for k in 2..n {
            let a = map.unzip(Dual { v: map.nodes[k], d: Complex64::new(1.0, 0.0) }).v;
            if !(a.im > 0.0) || !a.re.is_finite() {
                return Err(ConformalError::Crowding(k));
            }
            map.slits.push(GeodesicSlit::through(a));
        }
        // z₀ starts at infinity under the opening map.
        let mut p: Option<f64> = None;
        for s in &map.slits {
            p = match p {
                None => s.apply_infinity(),
                Some(x) => s.apply_real(x),
            };
        }
        map.closing = p;
        let v = straighten(map.closing, map.unzip(Dual { v: zeta0, d: Complex64::new(1.0, 0.0) }));
        map.flip = if v.v.re > 0.0 { 1.0 } else { -1.0 };
        let u = map.to_half_plane(zeta0);
        if !(u.v.im > 0.0) {
            return Err(ConformalError::BadNormalization(zeta0));
        }
        map.u0 = u.v;
        let dw = u.d / (u.v - u.v.conj());
        map.rotation = Complex64::from_polar(1.0, -dw.arg());
        Ok(map)
    }

    /// Opening map followed by every geodesic slit map.
    fn unzip(&self, z: Dual) -> Dual {
        let (z0, z1) = (self.nodes[0], self.nodes[1]);
        let q = (z.v - z1) / (z.v - z0);
        let dq = z.d * (z1 - z0) / ((z.v - z0) * (z.v - z0));
        let s = q.sqrt();
        let mut w = Dual { v: I * s, d: I * dq / (2.0 * s) };
        for slit in &self.slits {
            w = slit.apply(w);
        }
        w
    }

    fn to_half_plane(&self, z: Complex64) -> Dual {
        let t = straighten(self.closing, self.unzip(Dual { v: z, d: Complex64::new(1.0, 0.0) }));
        Dual { v: self.flip * t.v * t.v, d: 2.0 * self.flip * t.v * t.d }
    }

    fn eval_dual(&self, z: Complex64) -> Dual {
        let u = self.to_half_plane(z);
        let den = u.v - self.u0.conj();
        Dual {
            v: self.rotation * (u.v - self.u0) / den,
            d: self.rotation * (self.u0 - self.u0.conj()) / (den * den) * u.d,
        }
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// Polygon corners of the truncated domain.
    pub fn boundary_vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn zeta0(&self) -> Complex64 {
        self.zeta0
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.truncation.contains(z, 0.0)
    }

    /// Forward evaluation `ψ̂(z)`.
    pub fn psi_eval(&self, z: Complex64) -> Result<Complex64, ConformalError> {
        if !self.contains(z) {
            return Err(ConformalError::OutsideDomain(z));
        }
        Ok(self.eval_dual(z).v)
    }

    /// `ψ̂(z)` and `ψ̂'(z)`.
    pub fn psi_eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64), ConformalError> {
        if !self.contains(z) {
            return Err(ConformalError::OutsideDomain(z));
        }
        let d = self.eval_dual(z);
        Ok((d.v, d.d))
    }

    /// Taylor germ of `ψ̂` at `z` from a Cauchy integral over a circle of radius
    /// half the distance to the polygon. The radius estimate is that sampling radius.
    pub fn psi_germ(&self, z: Complex64, order: usize) -> Result<Germ, ConformalError> {
        if !self.contains(z) {
            return Err(ConformalError::OutsideDomain(z));
        }
        let rho = SAMPLE_FRACTION * self.truncation.boundary_distance(z);
        let n = (4 * order).max(64).next_power_of_two();
        let mut buf: Vec<Complex64> = (0..n)
            .map(|j| self.eval_dual(z + Complex64::from_polar(rho, TAU * j as f64 / n as f64)).v)
            .collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let scaled = buf.into_iter().take(order + 1).map(|c| c / n as f64).collect();
        Ok(Germ::from_scaled(z, rho, scaled, rho, Provenance::Composed)?)
    }

    /// Germ of `h ∘ ψ̂` at `z`.
    pub fn lacunary_germ(&self, z: Complex64, order: usize) -> Result<Germ, ConformalError> {
        let psi = self.psi_germ(z, order)?;
        let outer = h_germ(psi.value(), order)?;
        Ok(compose(&outer, &psi)?)
    }

    /// Boundary adherence, interior modulus and discrete injectivity measurements.
    pub fn quality_report(&self) -> QualityReport {
        let grid = self.interior_grid(GRID_SAMPLES, GRID_CLEARANCE);
        let images: Vec<Complex64> = grid.iter().map(|&z| self.eval_dual(z).v).collect();
        let interior_max_modulus = images.iter().map(|w| w.norm()).fold(0.0, f64::max);
        let mut sep = f64::INFINITY;
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                sep = sep.min((images[i] - images[j]).norm());
            }
        }
        let probes: Vec<f64> = self.boundary_probes(BOUNDARY_PROBES).iter().map(|&z| self.eval_dual(z).v.norm()).collect();
        QualityReport {
            interior_max_modulus,
            boundary_min_modulus: probes.iter().copied().fold(f64::INFINITY, f64::min),
            boundary_mean_modulus: probes.iter().sum::<f64>() / probes.len() as f64,
            grid_injectivity_min_separation: sep,
        }
    }

    /// `count` lattice points of the truncated domain with the given clearance
    /// from its boundary, spread evenly over the admissible lattice.
    pub fn interior_grid(&self, count: usize, clearance: f64) -> Vec<Complex64> {
        let t = self.truncation;
        let (x0, x1) = (t.n_min as f64, t.n_max as f64 + 1.0);
        let (y0, y1) = (TAU * t.n_min as f64, t.y_max);
        let mut h = ((x1 - x0) * (y1 - y0) / (2 * count) as f64).sqrt();
        loop {
            let mut pts = Vec::new();
            let nx = ((x1 - x0) / h).floor() as usize;
            let ny = ((y1 - y0) / h).floor() as usize;
            for j in 0..=ny {
                for i in 0..=nx {
                    let z = Complex64::new(x0 + h * (i as f64 + 0.5), y0 + h * (j as f64 + 0.5));
                    if t.contains(z, clearance) {
                        pts.push(z);
                    }
                }
            }
            if pts.len() >= count {
                return (0..count).map(|i| pts[i * pts.len() / count]).collect();
            }
            h *= 0.8;
        }
    }

    /// Points just inside `count` evenly chosen boundary nodes.
    pub fn boundary_probes(&self, count: usize) -> Vec<Complex64> {
        let n = self.nodes.len();
        (0..count)
            .map(|i| {
                let k = i * n / count;
                let (prev, here, next) = (self.nodes[(k + n - 1) % n], self.nodes[k], self.nodes[(k + 1) % n]);
                // counterclockwise polygon: interior to the left of each edge
                let inward = I * ((here - prev).unscale((here - prev).norm()) + (next - here).unscale((next - here).norm()));
                let spacing = 0.5 * ((here - prev).norm() + (next - here).norm());
                let mut probe = here + inward.unscale(inward.norm()) * (PROBE_FRACTION * spacing);
                if !self.contains(probe) {
                    // reentrant corner: the bisector above points outward
                    probe = here - inward.unscale(inward.norm()) * (PROBE_FRACTION * spacing);
                }
                probe
            })
            .collect()
    }

    /// Distance from `z` to the nearest boundary node.
    pub fn node_distance(&self, z: Complex64) -> f64 {
        let n = self.nodes.len();
        (0..n)
            .map(|i| point_segment_distance(z, self.nodes[i], self.nodes[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Map quality measurements, serialized as the map report JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QualityReport {
    pub interior_max_modulus: f64,
    pub boundary_min_modulus: f64,
    pub boundary_mean_modulus: f64,
    pub grid_injectivity_min_separation: f64,
}

impl QualityReport {
    pub fn passes(&self) -> bool {
        self.interior_max_modulus < 1.0 && self.boundary_mean_modulus > 0.95 && self.grid_injectivity_min_separation > 0.0
    }
}

/// The single-valued function element `h ∘ ψ̂` on the truncated domain.
#[derive(Debug, Clone)]
pub struct MappedLacunary {
    map: Arc<ConformalMap>,
    order: usize,
    germ: Germ,
}

impl MappedLacunary {
    pub fn at(map: Arc<ConformalMap>, z: Complex64, order: usize) -> Result<Self, ConformalError> {
        let germ = map.lacunary_germ(z, order)?;
        Ok(MappedLacunary { map, order, germ })
    }
}

impl FunctionElement for MappedLacunary {
    fn germ(&self) -> &Germ {
        &self.germ
    }

    fn advance(&self, to: Complex64, _opts: &ContinuationOptions) -> Result<Self, ElementError> {
        let germ = self.map.lacunary_germ(to, self.order).map_err(|e| ElementError::Domain(e.to_string()))?;
        Ok(MappedLacunary { map: self.map.clone(), order: self.order, germ })
    }
}

/// Function element of `f = h ∘ ψ̂ ∘ λ`: a logarithm germ composed with `h ∘ ψ̂`.
pub type FElement = crate::continuation::Composed<MappedLacunary, Germ>;

/// The element of `f` at `1/2` on the branch `λ(1/2) = ln(1/2)`.
pub fn f_element_at_base(map: Arc<ConformalMap>, order: usize) -> Result<FElement, ConformalError> {
    if order < 8 {
        return Err(SeriesError::InvalidOrder { min: 8, got: order }.into());
    }
    let lambda = log_germ(Complex64::new(0.5, 0.0), 0.0, order)?;
    let outer = MappedLacunary::at(map, lambda.value(), order)?;
    crate::continuation::Composed::new(outer, lambda).map_err(ConformalError::from)
}

/// Germ of `h ∘ ψ̂ ∘ λ` at `1/2`.
pub fn f_germ_at_base(map: Arc<ConformalMap>, order: usize) -> Result<Germ, ConformalError> {
    Ok(f_element_at_base(map, order)?.germ().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::eval_h;
    use std::f64::consts::PI;

    fn standard(resolution: usize) -> ConformalMap {
        build_map(Truncation::new(-2, 2, 8.0 * PI).unwrap(), resolution).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization() {
        let m = standard(256);
        let (w, dw) = m.psi_eval_with_derivative(m.zeta0()).unwrap();
        assert!(w.norm() < 1e-6);
        assert!(dw.re > 0.0 && dw.im.abs() < 1e-9 * dw.re);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let m = standard(256);
        // the map is tiny and noisier high in the channel, where a wider stencil is used
        for (z, h, rel) in [(c(-0.5, 0.3), 1e-5, 1e-6), (c(0.5, 2.0), 1e-5, 1e-6), (c(-1.5, -5.0), 1e-5, 1e-6), (c(2.5, 20.0), 1e-2, 1e-3)] {
            let (_, d) = m.psi_eval_with_derivative(z).unwrap();
            let fd = (m.psi_eval(z + h).unwrap() - m.psi_eval(z - h).unwrap()) / (2.0 * h);
            let fdi = (m.psi_eval(z + c(0.0, h)).unwrap() - m.psi_eval(z - c(0.0, h)).unwrap()) / c(0.0, 2.0 * h);
            assert!((d - fd).norm() < rel * d.norm(), "{z}: {d} vs {fd}");
            assert!((d - fdi).norm() < rel * d.norm());
        }
    }

    #[test]
    fn quality_at_standard_truncation() {
        let m = standard(256);
        let grid = m.interior_grid(200, 0.05);
        assert_eq!(grid.len(), 200);
        assert!(grid.iter().all(|&z| m.truncation().boundary_distance(z) >= 0.05));
        let q = m.quality_report();
        assert!(q.interior_max_modulus < 1.0);
        assert!(q.grid_injectivity_min_separation > 0.0);
        assert!(q.boundary_min_modulus >= 0.95 && q.boundary_min_modulus <= 1.0, "{q:?}");
        assert!(q.passes());
        for p in m.boundary_probes(32) {
            let r = m.psi_eval(p).unwrap().norm();
            assert!((0.95..=1.0).contains(&r), "{p}: {r}");
        }
    }

    #[test]
    fn modulus_grows_toward_floor() {
        let m = standard(256);
        let moduli: Vec<f64> = [1.0, 0.5, 0.25, 0.1, 0.05]
            .iter()
            .map(|&y| m.psi_eval(c(0.5, y)).unwrap().norm())
            .collect();
        assert!(moduli.windows(2).all(|w| w[1] > w[0]), "{moduli:?}");
    }

    #[test]
    fn boundary_adherence_improves() {
        let lo = standard(128).quality_report();
        let hi = standard(512).quality_report();
        assert!(hi.boundary_mean_modulus >= lo.boundary_mean_modulus);
    }

    #[test]
    fn psi_germ_reproduces_map() {
        let m = standard(256);
        let z = c(0.3, 1.0);
        let g = m.psi_germ(z, 64).unwrap();
        let (_, d) = m.psi_eval_with_derivative(z).unwrap();
        assert!((g.coeff(1) - d).norm() < 1e-9);
        for j in 0..16 {
            let p = z + Complex64::from_polar(0.5 * g.radius_est(), TAU * j as f64 / 16.0);
            assert!((g.eval(p) - m.psi_eval(p).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn f_germ_matches_direct_evaluation() {
        let m = Arc::new(standard(256));
        let g = f_germ_at_base(m.clone(), 64).unwrap();
        assert!(g.value().norm() < 1e-10);
        let direct = |z: Complex64| eval_h(m.psi_eval(z.ln()).unwrap(), 1e-15).unwrap();
        assert!((g.eval(c(0.55, 0.0)) - direct(c(0.55, 0.0))).norm() < 1e-5);
        for j in 0..16 {
            let p = c(0.5, 0.0) + Complex64::from_polar(0.5 * g.radius_est(), TAU * j as f64 / 16.0);
            assert!((g.eval(p) - direct(p)).norm() < 1e-5);
        }
        let est = g.estimate_radius();
        assert!(est > 0.0 && est < 2f64.ln() + 0.1, "{est}");
        assert!(f_germ_at_base(m, 4).is_err());
    }

    #[test]
    fn errors() {
        let t = Truncation { n_min: 2, n_max: 1, y_max: 100.0 };
        assert!(matches!(build_map(t, 256), Err(ConformalError::BadTruncation(_))));
        let t = Truncation::new(-2, 2, 8.0 * PI).unwrap();
        assert_eq!(build_map(t, 63).unwrap_err(), ConformalError::BadResolution(63));
        let m = standard(64);
        assert!(matches!(m.psi_eval(c(0.5, -1.0)), Err(ConformalError::OutsideDomain(_))));
        assert!(matches!(m.psi_eval(c(0.5, 30.0)), Err(ConformalError::OutsideDomain(_))));
        let dup = vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        assert!(matches!(
            ConformalMap::from_nodes(t, t.vertices(), dup, c(0.2, 0.2)),
            Err(ConformalError::DegenerateBoundary(1, 2))
        ));
    }

    #[test]
    fn nodes_cover_every_vertex() {
        let m = standard(256);
        assert_eq!(m.nodes().len(), 256);
        for v in m.boundary_vertices() {
            assert!(m.nodes().contains(v));
        }
        assert!(m.node_distance(c(0.0, 0.0)) < 1e-15);
    }

    fn shared() -> &'static ConformalMap {
        static MAP: std::sync::OnceLock<ConformalMap> = std::sync::OnceLock::new();
        MAP.get_or_init(|| standard(128))
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn interior_points_land_in_disc(x in -1.95f64..2.95, y in -7.9f64..25.0) {
            let m = shared();
            let z = c(x, y);
            proptest::prop_assume!(m.contains(z) && m.node_distance(z) > 0.05);
            let w = m.psi_eval(z).unwrap();
            proptest::prop_assert!(w.norm() < 1.0, "{z} -> {w}");
        }
    }
}
