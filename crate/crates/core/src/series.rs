//! Truncated power-series germs.
//!
//! A [`Germ`] stores its Taylor coefficients in normalized form,
//! `b_k = a_k · s^k` for a scale `s` close to the radius estimate. Germs near a
//! natural boundary have radii down to `1e-4` and raw coefficients up to
//! `1e256` at order 64; the normalized coefficients stay of moderate size and
//! every operation here works on them directly.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::tol::COEFF_TOL;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("germ center is zero")]
    ZeroCenter,
    #[error("point {0} lies outside the unit disc")]
    OutsideDisc(Complex64),
    #[error("truncation order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },
    #[error("tolerance must be positive")]
    InvalidTolerance,
    #[error("step of length {step} exceeds {limit} (step_safety × radius)")]
    StepTooLarge { step: f64, limit: f64 },
    #[error("inner value is {distance} from the outer center, outside radius {radius}")]
    CompositionOutOfRange { distance: f64, radius: f64 },
    #[error("at least 8 coefficients are needed, got {0}")]
    TooFewCoefficients(usize),
    #[error("germ has non-finite coefficients or radius")]
    NonFinite,
    #[error("lacunary expansion at {0} did not converge")]
    NotConverged(Complex64),
}

/// How a germ was produced; decides how it is refreshed during continuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Log,
    Lacunary,
    Composed,
    Recentered,
}

/// A truncated power series `Σ a_k (z - center)^k` with a radius estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Germ {
    center: Complex64,
    scale: f64,
    scaled: Vec<Complex64>,
    radius_est: f64,
    provenance: Provenance,
}

impl Germ {
    /// Builds a germ from normalized coefficients `b_k = a_k · scale^k`.
    pub fn from_scaled(
        center: Complex64,
        scale: f64,
        scaled: Vec<Complex64>,
        radius_est: f64,
        provenance: Provenance,
    ) -> Result<Self, SeriesError> {
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        if scaled.is_empty()
            || !finite(&center)
            || !scaled.iter().all(finite)
            || !(scale > 0.0 && scale.is_finite())
            || !(radius_est > 0.0 && radius_est.is_finite())
        {
            return Err(SeriesError::NonFinite);
        }
        Ok(Germ { center, scale, scaled, radius_est, provenance })
    }

    /// Builds a germ from raw Taylor coefficients.
    pub fn from_coeffs(
        center: Complex64,
        coeffs: &[Complex64],
        radius_est: f64,
        provenance: Provenance,
    ) -> Result<Self, SeriesError> {
        let scale = radius_est.min(1.0);
        let scaled = coeffs.iter().enumerate().map(|(k, a)| a * scale.powi(k as i32)).collect();
        Germ::from_scaled(center, scale, scaled, radius_est, provenance)
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius_est(&self) -> f64 {
        self.radius_est
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn order(&self) -> usize {
        self.scaled.len() - 1
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn scaled_coeffs(&self) -> &[Complex64] {
        &self.scaled
    }

    /// Value at the center, `a₀`.
    pub fn value(&self) -> Complex64 {
        self.scaled[0]
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.scaled[k] / self.scale.powi(k as i32)
    }

    /// Raw Taylor coefficients `a₀ … a_K`. May overflow for tiny radii.
    pub fn coeffs(&self) -> Vec<Complex64> {
        (0..self.scaled.len()).map(|k| self.coeff(k)).collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let sigma = (z - self.center) / self.scale;
        self.scaled.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, b| acc * sigma + b)
    }

    /// Cauchy–Hadamard estimate from the stored coefficients; see [`estimate_radius`].
    pub fn estimate_radius(&self) -> f64 {
        let inv = top_window(self.scaled.len())
            .filter(|&k| k > 0 && self.scaled[k].norm() > 0.0)
            .map(|k| (self.scaled[k].norm().ln() / k as f64).exp() / self.scale)
            .fold(0.0, f64::max);
        if inv == 0.0 {
            f64::INFINITY
        } else {
            1.0 / inv
        }
    }

    /// Same germ with another radius estimate.
    pub fn with_radius(mut self, radius_est: f64) -> Self {
        self.radius_est = radius_est;
        self
    }
}

fn top_window(len: usize) -> std::ops::Range<usize> {
    (len - 1) / 2..len
}

/// Taylor germ of the logarithm at `z0` on the branch with `Im log z0 = branch_im`.
pub fn log_germ(z0: Complex64, branch_im: f64, order: usize) -> Result<Germ, SeriesError> {
    if z0.norm() == 0.0 {
        return Err(SeriesError::ZeroCenter);
    }
    if order < 1 {
        return Err(SeriesError::InvalidOrder { min: 1, got: order });
    }
    let r = z0.norm();
    let unit = r / z0;
    let mut scaled = Vec::with_capacity(order + 1);
    scaled.push(Complex64::new(r.ln(), branch_im));
    let mut p = Complex64::new(1.0, 0.0);
    for k in 1..=order {
        p *= unit;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        scaled.push(p * (sign / k as f64));
    }
    Germ::from_scaled(z0, r, scaled, r, Provenance::Log)
}

/// `h(z) = Σ_{ν≥0} z^(2^ν)` summed until the tail bound `|z|^(2^(K+1)) / (1 - |z|)` drops below `eps`.
pub fn eval_h(z: Complex64, eps: f64) -> Result<Complex64, SeriesError> {
    let r = z.norm();
    if r >= 1.0 {
        return Err(SeriesError::OutsideDisc(z));
    }
    if !(eps > 0.0) {
        return Err(SeriesError::InvalidTolerance);
    }
    let mut p = z;
    let mut sum = Complex64::new(0.0, 0.0);
    loop {
        sum += p;
        if p.norm_sqr() / (1.0 - r) < eps {
            return Ok(sum);
        }
        p = p * p;
    }
}

fn pow_u64(mut base: Complex64, mut e: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// Taylor germ of `h` at `z0`, `|z0| < 1`, normalized to the radius `1 - |z0|`.
///
/// Coefficients are `Σ_ν C(2^ν, k) z0^(2^ν - k)`; the sum over `ν` stops once the
/// terms are past their peak and below `COEFF_TOL` relative to the result.
pub fn h_germ(z0: Complex64, order: usize) -> Result<Germ, SeriesError> {
    let r = z0.norm();
    if r >= 1.0 {
        return Err(SeriesError::OutsideDisc(z0));
    }
    let delta = 1.0 - r;
    let decay = -r.ln();
    let mut scaled = vec![Complex64::new(0.0, 0.0); order + 1];
    for nu in 0..63u32 {
        let n = 1u64 << nu;
        let kmax = (order as u64).min(n) as usize;
        // C(n, k) δ^k, built incrementally
        let mut binom = Vec::with_capacity(kmax + 1);
        binom.push(1.0f64);
        for k in 1..=kmax {
            let prev = binom[k - 1];
            binom.push(prev * ((n - k as u64 + 1) as f64) * delta / k as f64);
        }
        let mut power = pow_u64(z0, n - kmax as u64);
        let mut term_max = 0.0f64;
        for k in (0..=kmax).rev() {
            let term = power * binom[k];
            term_max = term_max.max(term.norm());
            scaled[k] += term;
            power *= z0;
        }
        let past_peak = n as f64 > order as f64 && n as f64 * decay > 2.0 * (order as f64 + 1.0);
        let size = scaled.iter().map(|c| c.norm()).fold(1.0, f64::max);
        if past_peak && term_max < COEFF_TOL * 1e-4 * size {
            return Germ::from_scaled(z0, delta, scaled, delta, Provenance::Lacunary);
        }
    }
    Err(SeriesError::NotConverged(z0))
}

/// Re-expands `g` about `new_center` by an exact Taylor shift of its polynomial.
///
/// The radius becomes the conservative `radius_est - |Δ|`.
pub fn recenter(g: &Germ, new_center: Complex64, step_safety: f64) -> Result<Germ, SeriesError> {
    let step = (new_center - g.center).norm();
    let limit = step_safety * g.radius_est;
    if step > limit * (1.0 + 1e-12) {
        return Err(SeriesError::StepTooLarge { step, limit });
    }
    let new_radius = g.radius_est - step;
    let delta = (new_center - g.center) / g.scale;
    let mut c = g.scaled.clone();
    let n = c.len() - 1;
    if delta.norm() > 0.0 {
        for i in 0..n {
            for j in (i..n).rev() {
                let next = c[j + 1];
                c[j] += delta * next;
            }
        }
    }
    let ratio = new_radius / g.scale;
    let mut f = 1.0;
    for b in c.iter_mut() {
        *b *= f;
        f *= ratio;
    }
    Germ::from_scaled(new_center, new_radius, c, new_radius, Provenance::Recentered)
}

fn mul_truncated(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.norm_sqr() == 0.0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `outer ∘ inner`, re-expanded about the inner center to the shorter order.
///
/// The radius is the largest `r ≤ inner.radius_est` with
/// `|a₀ - outer.center| + Σ_{k≥1} |a_k| r^k ≤ outer.radius_est`, where `a_k`
/// are the inner coefficients: on that disc the inner values stay inside the
/// outer disc of convergence.
pub fn compose(outer: &Germ, inner: &Germ) -> Result<Germ, SeriesError> {
    let offset = inner.value() - outer.center;
    let avail = outer.radius_est - offset.norm();
    if avail <= 0.0 {
        return Err(SeriesError::CompositionOutOfRange {
            distance: offset.norm(),
            radius: outer.radius_est,
        });
    }
    let order = outer.order().min(inner.order());
    let spread = |r: f64| -> f64 {
        let q = r / inner.scale;
        let mut p = 1.0;
        let mut s = 0.0;
        for b in &inner.scaled[1..=order] {
            p *= q;
            s += b.norm() * p;
        }
        s
    };
    let radius = if spread(inner.radius_est) <= avail {
        inner.radius_est
    } else {
        let (mut lo, mut hi) = (0.0, inner.radius_est);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if spread(mid) <= avail {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        lo
    };
    if !(radius > 0.0) {
        return Err(SeriesError::CompositionOutOfRange {
            distance: offset.norm(),
            radius: outer.radius_est,
        });
    }
    // u(σ) = (inner(c + radius·σ) - outer.center) / outer.scale
    let ratio = radius / inner.scale;
    let mut u = Vec::with_capacity(order + 1);
    u.push(offset / outer.scale);
    let mut f = 1.0;
    for b in &inner.scaled[1..=order] {
        f *= ratio;
        u.push(b * (f / outer.scale));
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); order + 1];
    for b in outer.scaled.iter().rev() {
        acc = mul_truncated(&acc, &u, order);
        acc[0] += b;
    }
    Germ::from_scaled(inner.center, radius, acc, radius, Provenance::Composed)
}

/// Cauchy–Hadamard radius estimate `1 / max |a_k|^(1/k)` over the upper half
/// of the indices, skipping zero coefficients; `+∞` when all of them vanish.
pub fn estimate_radius(coeffs: &[Complex64]) -> Result<f64, SeriesError> {
    if coeffs.len() < 8 {
        return Err(SeriesError::TooFewCoefficients(coeffs.len()));
    }
    let inv = top_window(coeffs.len())
        .filter(|&k| k > 0 && coeffs[k].norm() > 0.0)
        .map(|k| (coeffs[k].norm().ln() / k as f64).exp())
        .fold(0.0, f64::max);
    Ok(if inv == 0.0 { f64::INFINITY } else { 1.0 / inv })
}
