//! Cusp decay ratios and the error budget of the flattening construction.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::integrate;

/// `e^x K_s(x) = ∫_0^∞ e^{-x (cosh u - 1)} cosh(s u) du`, truncated where the
/// integrand drops below `1e-30`.
pub fn bessel_k_scaled(s: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() || !s.is_finite() {
        return Err(Error::Domain(format!("K_{s}({x}) needs x > 0")));
    }
    let s = s.abs();
    let f = |u: f64| (-x * (u.cosh() - 1.0) + s * u).exp() * 0.5 * (1.0 + (-2.0 * s * u).exp());
    // the integrand is at most e^{s u - x u^2 / 2}
    let mut upper = 1.0;
    while f(upper) > 1e-30 {
        upper *= 1.5;
    }
    let peak = f(0.0).max(f((s / x).min(upper)));
    Ok(integrate(f, 0.0, upper, 1e-14 * peak))
}

/// Modified Bessel function `K_s(x)` for real order.
pub fn bessel_k(s: f64, x: f64) -> Result<f64> {
    Ok((-x).exp() * bessel_k_scaled(s, x)?)
}

/// Which Fourier mode of a cusp form the decay ratio refers to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum DecayMode {
    /// Constant term, integrand `t^{-1-2s}`.
    Zeroth,
    /// Nonzero frequency `|μ| = w`, integrand `K_s(2π w t)^2 / t`.
    Bessel { w: f64 },
}

/// `∫_R^{2R} g / ∫_{2R}^∞ g` for the mode's integrand `g`.
pub fn cusp_decay_ratio(s: f64, mode: DecayMode, r: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("s = {s} must lie in (0, 1)")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R = {r} must be positive")));
    }
    match mode {
        DecayMode::Zeroth => {
            // antiderivative of t^{-1-2s} is -t^{-2s}/(2s)
            let near = (r.powf(-2.0 * s) - (2.0 * r).powf(-2.0 * s)) / (2.0 * s);
            let tail = (2.0 * r).powf(-2.0 * s) / (2.0 * s);
            Ok(near / tail)
        }
        DecayMode::Bessel { w } => {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::Domain(format!("frequency w = {w} must be positive")));
            }
            let k = 2.0 * PI * w;
            // integrands rescaled by e^{2 k R} and e^{4 k R}
            let scaled = |t: f64, t0: f64| {
                let ks = bessel_k_scaled(s, k * t).unwrap_or(0.0);
                ks * ks * (-2.0 * k * (t - t0)).exp() / t
            };
            let near = integrate(|t| scaled(t, r), r, 2.0 * r, 1e-15 * scaled(r, r));
            let g0 = scaled(2.0 * r, 2.0 * r);
            let mut upper = 2.0 * r + 1.0 / k;
            while scaled(upper, 2.0 * r) > 1e-30 * g0.max(1e-300) && upper < 1e6 * r {
                upper = 2.0 * r + 2.0 * (upper - 2.0 * r);
            }
            let tail = integrate(|t| scaled(t, 2.0 * r), 2.0 * r, upper, 1e-15 * g0);
            Ok(near / tail * (2.0 * k * r).exp())
        }
    }
}

/// The parameters `λ = 1 - s^2`, `λ0`, `ε`, `L`, `T` shared by the bound evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub lambda: f64,
    pub lambda0: f64,
    pub eps: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

impl SpectralParams {
    pub fn new(lambda: f64, lambda0: f64, eps: f64, l: f64, t: f64) -> Result<Self> {
        let p = SpectralParams {
            lambda,
            lambda0,
            eps,
            l,
            t,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(Error::Domain(format!(
                "lambda = {} must lie in (0, 1)",
                self.lambda
            )));
        }
        if !(self.lambda0 > 0.0 && self.lambda0 < 1.0) {
            return Err(Error::Domain(format!(
                "lambda0 = {} must lie in (0, 1)",
                self.lambda0
            )));
        }
        if !(self.eps > 0.0) {
            return Err(Error::Domain(format!(
                "eps = {} must be positive",
                self.eps
            )));
        }
        if !(self.l > 0.0) {
            return Err(Error::Domain(format!("L = {} must be positive", self.l)));
        }
        if !(self.t >= 1.0) {
            return Err(Error::Domain(format!("T = {} must be at least 1", self.t)));
        }
        Ok(())
    }

    /// The spectral parameter `s = sqrt(1 - λ)`.
    pub fn s(&self) -> f64 {
        (1.0 - self.lambda).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceBudget {
    pub areas: [f64; 3],
    pub tau: [f64; 3],
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatteningBudget {
    pub faces: Vec<FaceBudget>,
    pub c_lambda0: f64,
    pub total: f64,
}

/// Default decay exponent `2 sqrt(1 - λ0)`.
pub fn default_c_lambda0(lambda0: f64) -> f64 {
    2.0 * (1.0 - lambda0).sqrt()
}

fn ln_at_least_one(x: f64) -> f64 {
    x.max(1.0).ln()
}

/// Error terms `E1, E2, E3` for every face, with `τ_a = max(sqrt(area_a), e^{sqrt(1-λ0) L})`.
pub fn flattening_budget(
    faces: &[[f64; 3]],
    l: f64,
    lambda: f64,
    lambda0: f64,
    eps: f64,
    c_lambda0: Option<f64>,
) -> Result<FlatteningBudget> {
    if !(lambda > 0.0 && lambda < lambda0 && lambda0 < 1.0) {
        return Err(Error::Domain(format!(
            "need 0 < lambda < lambda0 < 1, got {lambda}, {lambda0}"
        )));
    }
    if !(eps > 0.0) || !(l > 0.0) {
        return Err(Error::Domain("eps and L must be positive".into()));
    }
    let c = c_lambda0.unwrap_or_else(|| default_c_lambda0(lambda0));
    if !(c > 0.0) {
        return Err(Error::Domain(format!("C_lambda0 = {c} must be positive")));
    }
    let s = (1.0 - lambda).sqrt();
    let s0 = (1.0 - lambda0).sqrt();
    let decay = (-2.0 * l * s).exp();
    let growth = (l * (s0 + eps)).exp();
    let sh = (0.5 * l).sinh();
    let floor = (s0 * l).exp();
    let mut out = Vec::with_capacity(faces.len());
    for areas in faces {
        if areas.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
            return Err(Error::Domain(format!(
                "cusp areas {areas:?} must be positive"
            )));
        }
        let tau = areas.map(|a| a.sqrt().max(floor));
        let mut e1 = 0.0;
        let mut cusp_sum = 0.0;
        let mut e3 = 0.0;
        for (a, t) in areas.iter().zip(tau) {
            e1 += decay * (a / (t * t) * growth + ln_at_least_one(t * sh));
            let r = t / a * ln_at_least_one(t * sh / a);
            cusp_sum += r;
            e3 += t.powf(-c) + decay * (growth + r);
        }
        let e2 = decay * (growth + cusp_sum);
        out.push(FaceBudget {
            areas: *areas,
            tau,
            e1,
            e2,
            e3,
        });
    }
    let total = out.iter().map(|f| f.e1 + f.e2 + f.e3).sum();
    Ok(FlatteningBudget {
        faces: out,
        c_lambda0: c,
        total,
    })
}
