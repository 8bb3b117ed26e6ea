//! Critical exponents, bass notes and the two-sided bound on the octa-tree bass note.

use serde::Serialize;

use crate::error::{Error, Result};

/// Critical exponent of the Apollonian group (taken as an input constant).
pub const DELTA_APOLLONIAN: f64 = 1.305_686_728_049_877_2;

/// Degree of the Schreier graph used in the transfer-principle lower bound.
const SCHREIER_DEGREE: f64 = 4.0;

/// Bottom of the spectrum from the critical exponent: 1 when `δ <= 1`, else `δ(2 - δ)`.
pub fn elstrodt_sullivan(delta: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&delta) {
        return Err(Error::Domain(format!(
            "critical exponent {delta} outside [0, 2]"
        )));
    }
    Ok(if delta <= 1.0 {
        1.0
    } else {
        delta * (2.0 - delta)
    })
}

/// Spectral gap `3 - sqrt(5 + 2 sqrt 3)` of the `K4`-replacement of the 4-regular tree.
pub fn replacement_graph_lambda1() -> f64 {
    3.0 - (5.0 + 2.0 * 3f64.sqrt()).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MainBounds {
    pub lower: f64,
    pub upper: f64,
    /// Upper bound from `δ_∞ >= δ_Ap` alone.
    pub naive_upper: f64,
    /// Lower bound on the infilonian critical exponent, `2 - δ_Ap / 2`.
    pub delta_infilonian_lower: f64,
    pub graph_lambda1: f64,
    pub mu: f64,
}

/// Both bounds with the Neumann constant `μ = 1`.
pub fn prop_main_bounds(delta_ap: f64) -> Result<MainBounds> {
    prop_main_bounds_with_mu(delta_ap, 1.0)
}

pub fn prop_main_bounds_with_mu(delta_ap: f64, mu: f64) -> Result<MainBounds> {
    if !(delta_ap > 1.0 && delta_ap < 2.0) {
        return Err(Error::Domain(format!(
            "delta_ap = {delta_ap} must lie in (1, 2)"
        )));
    }
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("mu = {mu} must be positive")));
    }
    let delta_inf = 2.0 - delta_ap / 2.0;
    let upper = elstrodt_sullivan(delta_inf)?;
    let l1 = replacement_graph_lambda1();
    let lower = mu * l1 / (16.0 * SCHREIER_DEGREE + mu * l1);
    Ok(MainBounds {
        lower,
        upper,
        naive_upper: elstrodt_sullivan(delta_ap)?,
        delta_infilonian_lower: delta_inf,
        graph_lambda1: l1,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elstrodt_sullivan_cases() {
        assert_eq!(elstrodt_sullivan(1.0).unwrap(), 1.0);
        assert_eq!(elstrodt_sullivan(0.3).unwrap(), 1.0);
        assert_eq!(elstrodt_sullivan(2.0).unwrap(), 0.0);
        assert_eq!(
            (elstrodt_sullivan(1.305_686_728_0).unwrap() * 1e6).floor(),
            906_555.0
        );
        assert!(elstrodt_sullivan(2.1).is_err());
        assert!(elstrodt_sullivan(-0.1).is_err());
    }

    #[test]
    fn printed_constants() {
        let b = prop_main_bounds(1.305_686_728_0).unwrap();
        assert_eq!((b.lower * 1e5).floor(), 141.0, "{}", b.lower);
        assert_eq!((b.upper * 1e6).floor(), 879_482.0, "{}", b.upper);
        assert!(b.lower < b.upper);
        assert!(b.upper < b.naive_upper);
        assert!((replacement_graph_lambda1() - 0.090_687_1).abs() < 1e-7);
        // closed form of the lower bound
        let s = (5.0 + 2.0 * 3f64.sqrt()).sqrt();
        assert!((b.lower - (3.0 - s) / (67.0 - s)).abs() < 1e-15);
        assert!(prop_main_bounds(0.9).is_err());
    }

    #[test]
    fn larger_mu_raises_lower_bound() {
        let b =
            prop_main_bounds_with_mu(DELTA_APOLLONIAN, std::f64::consts::PI.powi(2) / 6.0).unwrap();
        assert!((b.lower - 0.002_33).abs() < 1e-5, "{}", b.lower);
    }
}
