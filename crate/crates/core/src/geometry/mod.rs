//! Floating-point geometry of the upper half-space model of hyperbolic 3-space.

mod caps;
mod constants;
mod octahedron;
mod orbit;

pub use caps::{
    ball_volume, cap_bound_check, cap_sweep, cap_sweep_grid, cap_volume, cap_volume_monte_carlo,
    CapBound, CAP_BOUND_CONSTANT,
};
pub use constants::{
    elstrodt_sullivan, prop_main_bounds, prop_main_bounds_with_mu, replacement_graph_lambda1,
    MainBounds, DELTA_APOLLONIAN,
};
pub use octahedron::{
    corner_and_octa_membership, cusp_height_standard, horoball_cover_check, horoball_multiplicity,
    horoball_system, in_corner, octa_center, octa_cusps, CuspDatum, HoroballReport,
};
pub use orbit::{
    default_window, estimate_delta, estimate_delta_default, orbit_ball, DeltaFit, OrbitBall,
    OrbitEntry, OrbitGroup, DELTA_BIN, MAX_ORBIT_ENTRIES,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::ProjIsom;

/// A point `(z, t)` with `t > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub z: Complex64,
    pub t: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !x.is_finite() || !y.is_finite() || !t.is_finite() {
            return Err(Error::Domain(format!(
                "({x}, {y}, {t}) is not in upper half-space"
            )));
        }
        Ok(Point3 {
            z: Complex64::new(x, y),
            t,
        })
    }

    pub fn x(&self) -> f64 {
        self.z.re
    }

    pub fn y(&self) -> f64 {
        self.z.im
    }
}

/// Hyperbolic distance, `cosh d = 1 + (|z1 - z2|^2 + (t1 - t2)^2) / (2 t1 t2)`.
pub fn dist(p: &Point3, q: &Point3) -> f64 {
    let num = (p.z - q.z).norm_sqr() + (p.t - q.t).powi(2);
    let x = num / (2.0 * p.t * q.t);
    // acosh(1 + x), stable for small x
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

/// A [`ProjIsom`] converted to complex floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatIsom {
    pub m: [Complex64; 4],
    pub conj: bool,
    det_abs: f64,
}

impl FloatIsom {
    pub fn new(m: [Complex64; 4], conj: bool) -> Self {
        let det_abs = (m[0] * m[3] - m[1] * m[2]).norm();
        FloatIsom { m, conj, det_abs }
    }

    pub fn from_exact(g: &ProjIsom) -> Self {
        FloatIsom::new(g.matrix().clone().map(|e| e.to_complex()), g.conj())
    }

    /// Applies `ρ` first when the conjugation flag is set, then the Möbius map.
    pub fn apply(&self, p: &Point3) -> Result<Point3> {
        let z = if self.conj { p.z.conj() } else { p.z };
        let [a, b, c, d] = self.m;
        let czd = c * z + d;
        let t2 = p.t * p.t;
        let den = czd.norm_sqr() + c.norm_sqr() * t2;
        if !(den >= f64::MIN_POSITIVE) || !den.is_finite() {
            return Err(Error::Domain(format!(
                "loss of precision applying isometry (denominator {den:e})"
            )));
        }
        let num = (a * z + b) * czd.conj() + a * c.conj() * t2;
        Ok(Point3 {
            z: num / den,
            t: self.det_abs * p.t / den,
        })
    }
}

pub fn apply_isom(g: &ProjIsom, p: &Point3) -> Result<Point3> {
    FloatIsom::from_exact(g).apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{standard_generator, GeneratorName::*};

    fn pt(x: f64, y: f64, t: f64) -> Point3 {
        Point3::new(x, y, t).unwrap()
    }

    #[test]
    fn distances() {
        assert!((dist(&pt(0.0, 0.0, 1.0), &pt(0.0, 0.0, std::f64::consts::E)) - 1.0).abs() < 1e-14);
        assert!((dist(&pt(0.0, 0.0, 1.0), &pt(2.0, 0.0, 1.0)) - 2.0 * 1f64.asinh()).abs() < 1e-14);
        let p = pt(0.3, -0.2, 0.7);
        assert_eq!(dist(&p, &p), 0.0);
    }

    #[test]
    fn rho_conjugates() {
        let p = pt(0.3, 0.4, 0.9);
        let q = apply_isom(&standard_generator(R1p), &p).unwrap();
        assert_eq!(q, pt(0.3, -0.4, 0.9));
        assert_eq!(apply_isom(&ProjIsom::identity(), &p).unwrap(), p);
    }

    #[test]
    fn r2_at_origin_column() {
        // [[1,0],[2,-1]] after conjugation maps (0, 1) to (2/5, 1/5)
        let q = apply_isom(&standard_generator(R2), &pt(0.0, 0.0, 1.0)).unwrap();
        assert!((q.z - Complex64::new(0.4, 0.0)).norm() < 1e-15);
        assert!((q.t - 0.2).abs() < 1e-15);
    }

    #[test]
    fn generators_are_isometric_involutions() {
        let p = pt(0.31, 0.22, 0.8);
        let q = pt(-0.5, 1.3, 2.1);
        for g in crate::group::GeneratorName::ALL {
            let f = FloatIsom::from_exact(&standard_generator(g));
            let (gp, gq) = (f.apply(&p).unwrap(), f.apply(&q).unwrap());
            assert!((dist(&gp, &gq) - dist(&p, &q)).abs() < 1e-12);
            let back = f.apply(&gp).unwrap();
            assert!(dist(&back, &p) < 1e-12);
        }
    }

    #[test]
    fn rejects_lower_half_space() {
        assert!(Point3::new(0.0, 0.0, 0.0).is_err());
        assert!(Point3::new(0.0, 0.0, -1.0).is_err());
    }
}
