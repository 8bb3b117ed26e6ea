//! Volume of the intersection of two hyperbolic balls of equal radius.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::integrate;

/// Constant in the exponential cap bound, calibrated on the `(T, δ)` sweep grid.
pub const CAP_BOUND_CONSTANT: f64 = 8.0 * PI;

const QUAD_TOL: f64 = 1e-10;

pub fn ball_volume(radius: f64) -> f64 {
    PI * ((2.0 * radius).sinh() - 2.0 * radius)
}

/// Volume of `{z : d(z, x) <= T, d(z, y) <= T}` for `d(x, y) = delta`, integrated
/// in polar coordinates around `x`.
pub fn cap_volume(radius: f64, delta: f64) -> Result<f64> {
    if !(radius >= 0.0) || !(delta >= 0.0) || !radius.is_finite() || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "cap_volume needs T, delta >= 0 (got {radius}, {delta})"
        )));
    }
    let r0 = (radius - delta).max(0.0);
    let inner = 4.0 * PI * integrate(|r| r.sinh().powi(2), 0.0, r0, QUAD_TOL);
    if delta == 0.0 || r0 >= radius {
        return Ok(inner);
    }
    let (ch_d, sh_d, ch_t) = (delta.cosh(), delta.sinh(), radius.cosh());
    let slice = |r: f64| {
        let sh = r.sinh();
        if sh == 0.0 {
            return 0.0;
        }
        let q = (r.cosh() * ch_d - ch_t) / (sh * sh_d);
        sh * sh * (1.0 - q).clamp(0.0, 2.0)
    };
    let outer = 2.0 * PI * integrate(slice, r0, radius, QUAD_TOL);
    Ok((inner + outer).max(0.0))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CapBound {
    pub radius: f64,
    pub delta: f64,
    pub volume: f64,
    pub bound: f64,
}

impl CapBound {
    pub fn holds(&self) -> bool {
        self.volume <= self.bound
    }
}

/// Evaluates the cap volume next to `C e^(2T - δ)`. Fails if the bound is violated.
pub fn cap_bound_check(radius: f64, delta: f64) -> Result<CapBound> {
    if delta > 2.0 * radius {
        return Err(Error::Domain(format!(
            "cap_bound_check needs delta <= 2T (got {delta} > {})",
            2.0 * radius
        )));
    }
    let volume = cap_volume(radius, delta)?;
    let bound = CAP_BOUND_CONSTANT * (2.0 * radius - delta).exp();
    let out = CapBound {
        radius,
        delta,
        volume,
        bound,
    };
    if !out.holds() {
        return Err(Error::Invariant(format!(
            "cap volume {volume} exceeds bound {bound} at T={radius}, delta={delta}"
        )));
    }
    Ok(out)
}

/// Monte Carlo estimate of [`cap_volume`]: uniform points of the ball around `x`
/// (radial density `sinh^2 r`) that also lie within `T` of `y`.
pub fn cap_volume_monte_carlo(radius: f64, delta: f64, samples: usize, seed: u64) -> Result<f64> {
    if !(radius > 0.0) || !(delta >= 0.0) || samples == 0 {
        return Err(Error::Domain(format!("Monte Carlo cap needs T > 0, delta >= 0, samples > 0 (got {radius}, {delta}, {samples})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let envelope = radius.sinh().powi(2);
    let (ch_d, sh_d, ch_t) = (delta.cosh(), delta.sinh(), radius.cosh());
    let mut hits = 0usize;
    for _ in 0..samples {
        let r = loop {
            let r = rng.gen_range(0.0..radius);
            if rng.gen::<f64>() * envelope <= r.sinh().powi(2) {
                break r;
            }
        };
        let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
        if r.cosh() * ch_d - r.sinh() * sh_d * cos_theta <= ch_t {
            hits += 1;
        }
    }
    Ok(ball_volume(radius) * hits as f64 / samples as f64)
}

/// `T` in `0.5, 1.0, ..., 6.0` and `δ` in steps of `T/8` over `[0, 2T]`.
pub fn cap_sweep_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::new();
    for i in 1..=12 {
        let t = 0.5 * f64::from(i);
        for j in 0..=16 {
            grid.push((t, t * f64::from(j) / 8.0));
        }
    }
    grid
}

/// Runs [`cap_bound_check`] over `grid`; fails on the first violation.
pub fn cap_sweep(grid: &[(f64, f64)]) -> Result<Vec<CapBound>> {
    grid.iter().map(|&(t, d)| cap_bound_check(t, d)).collect()
}
