//! Selberg transform of the normalized ball kernel and pre-trace delocalization bounds.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::OrbitBall;

fn check_lambda(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in (0, 1]"
        )));
    }
    Ok((1.0 - lambda).sqrt())
}

/// `h_T(λ) = 2π/(sinh T · s) ∫_0^T sinh(s r) sinh r dr` with `s = sqrt(1 - λ)`.
pub fn selberg_h(t: f64, lambda: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("T = {t} must be positive")));
    }
    let s = check_lambda(lambda)?;
    if s == 0.0 {
        return Ok(2.0 * PI / t.sinh() * (t * t.cosh() - t.sinh()));
    }
    let inner = (s * (s * t).cosh() * t.sinh() - (s * t).sinh() * t.cosh()) / (s * s - 1.0);
    Ok(2.0 * PI / (t.sinh() * s) * inner)
}

/// `H_T = h_T^2`.
pub fn selberg_big_h(t: f64, lambda: f64) -> Result<f64> {
    Ok(selberg_h(t, lambda)?.powi(2))
}

/// `(1-λ)/sinh^2(T sqrt(1-λ)) · Σ_{d(x, γx) <= T} e^{-d(x, γx)}`.
pub fn deloc_bound(ball: &OrbitBall, t: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in (0, 1)"
        )));
    }
    if t > ball.radius {
        return Err(Error::Truncation {
            requested: t,
            radius: ball.radius,
        });
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("T = {t} must be positive")));
    }
    let s = (1.0 - lambda).sqrt();
    let k = ball.count_within(t);
    let sum: f64 = ball.entries[..k]
        .iter()
        .rev()
        .map(|e| (-e.displacement).exp())
        .sum();
    Ok((1.0 - lambda) / (t * s).sinh().powi(2) * sum)
}

/// Height of a point in one cusp together with the cusp's rank and area or length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspHeight {
    pub rank: u8,
    pub height: f64,
    /// Area for rank 2, length for rank 1, ignored for rank 0.
    pub measure: f64,
}

fn clamped_ln(x: f64) -> f64 {
    x.max(1.0).ln()
}

/// Sum of the cusp terms `R_a(x, T)`: `t^2/A · log(t^2 sinh(T/2)/A)` for rank 2,
/// `t/ℓ · log(t sinh(T/2)/ℓ)` for rank 1, zero otherwise. Cusps with `t < 1` are skipped
/// and log arguments below 1 are raised to 1.
pub fn kernel_growth_terms(cusps: &[CuspHeight], t: f64) -> Result<f64> {
    let sh = (0.5 * t).sinh();
    let mut total = 0.0;
    for c in cusps {
        if c.height < 1.0 || c.rank == 0 {
            continue;
        }
        if !(c.measure > 0.0) {
            return Err(Error::Domain(format!(
                "cusp measure {} must be positive",
                c.measure
            )));
        }
        total += match c.rank {
            2 => c.height.powi(2) / c.measure * clamped_ln(c.height.powi(2) * sh / c.measure),
            1 => c.height / c.measure * clamped_ln(c.height * sh / c.measure),
            r => return Err(Error::Domain(format!("cusp rank {r} is not 0, 1 or 2"))),
        };
    }
    Ok(total)
}

/// The rank-two cusp term of the covering group, `t_b^2/A · log(t_b sinh(L/2)/A)`.
pub fn cover_cusp_term(height: f64, area: f64, l: f64) -> Result<f64> {
    if !(area > 0.0) {
        return Err(Error::Domain(format!("cusp area {area} must be positive")));
    }
    if height < 1.0 {
        return Ok(0.0);
    }
    Ok(height.powi(2) / area * clamped_ln(height * (0.5 * l).sinh() / area))
}

/// `(1-λ) e^{-2L sqrt(1-λ)} (e^{L (sqrt(1-λ0) + ε)} + R_cusp(x, L))`, where `R_cusp`
/// collects [`kernel_growth_terms`] for the base group and the cover's own cusp term.
pub fn tangle_deloc_bound(
    l: f64,
    lambda: f64,
    lambda0: f64,
    eps: f64,
    cusps: &[CuspHeight],
    cover_cusp: Option<(f64, f64)>,
) -> Result<f64> {
    if !(lambda > 0.0 && lambda0 < 1.0) {
        return Err(Error::Domain(format!(
            "need 0 < lambda and lambda0 < 1, got {lambda}, {lambda0}"
        )));
    }
    if lambda >= lambda0 {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must be below lambda0 = {lambda0}"
        )));
    }
    if !(eps > 0.0) || !(l > 0.0) {
        return Err(Error::Domain("eps and L must be positive".into()));
    }
    let s = (1.0 - lambda).sqrt();
    let s0 = (1.0 - lambda0).sqrt();
    let mut r = kernel_growth_terms(cusps, l)?;
    if let Some((h, a)) = cover_cusp {
        r += cover_cusp_term(h, a, l)?;
    }
    Ok((1.0 - lambda) * (-2.0 * l * s).exp() * ((l * (s0 + eps)).exp() + r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{OrbitEntry, Point3};
    use crate::quad::integrate;
    use crate::words::PackedWord;

    #[test]
    fn closed_form_matches_quadrature() {
        for t in [1.0f64, 3.0, 6.0] {
            for lambda in [0.1, 0.5, 0.9] {
                let s = (1.0f64 - lambda).sqrt();
                let q = 2.0 * PI / (t.sinh() * s)
                    * integrate(|r| (s * r).sinh() * r.sinh(), 0.0, t, 1e-13);
                let h = selberg_h(t, lambda).unwrap();
                assert!(
                    (h - q).abs() < 1e-10 * h.max(1.0),
                    "T={t} λ={lambda}: {h} vs {q}"
                );
            }
        }
    }

    #[test]
    fn limit_at_one() {
        let t: f64 = 2.5;
        let lim = 2.0 * PI / t.sinh() * (t * t.cosh() - t.sinh());
        assert!((selberg_h(t, 1.0).unwrap() - lim).abs() < 1e-12);
        assert!((selberg_h(t, 1.0 - 1e-12).unwrap() - lim).abs() < 1e-5);
    }

    #[test]
    fn trivial_ball() {
        let base = Point3::new(0.0, 0.0, 1.0).unwrap();
        let mut ball = OrbitBall::from_entries(
            base,
            vec![OrbitEntry {
                word: PackedWord::EMPTY,
                displacement: 0.0,
            }],
        )
        .unwrap();
        ball.radius = 10.0;
        let b = deloc_bound(&ball, 3.0, 0.5).unwrap();
        let s = 0.5f64.sqrt();
        assert!((b - 0.5 / (3.0 * s).sinh().powi(2)).abs() < 1e-15);
        assert!(matches!(
            deloc_bound(&ball, 11.0, 0.5),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn kernel_terms() {
        assert_eq!(kernel_growth_terms(&[], 4.0).unwrap(), 0.0);
        let one = CuspHeight {
            rank: 2,
            height: 2.0,
            measure: 4.0,
        };
        let v = kernel_growth_terms(&[one], 4.0).unwrap();
        assert!((v - 2f64.sinh().ln()).abs() < 1e-15);
        let r0 = CuspHeight {
            rank: 0,
            height: 5.0,
            measure: 1.0,
        };
        assert_eq!(kernel_growth_terms(&[r0], 4.0).unwrap(), 0.0);
    }

    #[test]
    fn tangle_bound_example() {
        let v = tangle_deloc_bound(10.0, 0.5, 0.9, 0.01, &[], None).unwrap();
        let expected = 0.5 * (-20.0 * 0.5f64.sqrt()).exp() * (10.0 * (0.1f64.sqrt() + 0.01)).exp();
        assert!((v - expected).abs() < 1e-15 * expected.max(1e-300) + 1e-300);
        assert!((v / expected - 1.0).abs() < 1e-12);
        assert!(tangle_deloc_bound(10.0, 0.9, 0.9, 0.01, &[], None).is_err());
        let bigger = tangle_deloc_bound(10.0, 0.5, 0.9, 0.05, &[], None).unwrap();
        assert!(bigger > v);
        let far = tangle_deloc_bound(100.0, 0.5, 0.9, 0.01, &[], None).unwrap();
        assert!(far < v);
    }
}
