//! The right-angled ideal octahedron, its fundamental corner, and the horoball
//! system attached to its six cusps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{dist, FloatIsom, Point3};
use crate::error::{Error, Result};
use crate::group::{octa_symmetry_group, ProjIsom};

/// Lattice data of a cusp: translation generators and the derived area or length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CuspDatum {
    pub w1: Option<Complex64>,
    pub w2: Option<Complex64>,
    pub rank: u8,
    pub area: Option<f64>,
    pub length: Option<f64>,
}

impl CuspDatum {
    pub fn rank0() -> Self {
        CuspDatum {
            w1: None,
            w2: None,
            rank: 0,
            area: None,
            length: None,
        }
    }

    pub fn rank1(w1: Complex64) -> Result<Self> {
        let length = w1.norm();
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Domain(
                "rank-one cusp needs a nonzero translation".into(),
            ));
        }
        Ok(CuspDatum {
            w1: Some(w1),
            w2: None,
            rank: 1,
            area: None,
            length: Some(length),
        })
    }

    pub fn rank2(w1: Complex64, w2: Complex64) -> Result<Self> {
        let area = (w1.conj() * w2).im.abs();
        let scale = w1.norm() * w2.norm();
        if !(area > 1e-12 * scale) || !area.is_finite() {
            return Err(Error::Domain(format!(
                "{w1} and {w2} are not independent over R"
            )));
        }
        Ok(CuspDatum {
            w1: Some(w1),
            w2: Some(w2),
            rank: 2,
            area: Some(area),
            length: None,
        })
    }

    /// Lattice of the cusp at infinity of the octa-tree group, generated by `2` and `2i`.
    pub fn standard() -> Self {
        CuspDatum::rank2(Complex64::new(2.0, 0.0), Complex64::new(0.0, 2.0)).expect("independent")
    }
}

/// `0 <= x, y <= 1/2` and `x^2 + y^2 + t^2 >= 1`.
pub fn in_corner(p: &Point3) -> bool {
    let (x, y) = (p.x(), p.y());
    (0.0..=0.5).contains(&x) && (0.0..=0.5).contains(&y) && x * x + y * y + p.t * p.t >= 1.0
}

/// The point `(1/2, 1/2, 1/sqrt 2)` where all six horoball translates meet.
pub fn octa_center() -> Point3 {
    Point3 {
        z: Complex64::new(0.5, 0.5),
        t: std::f64::consts::FRAC_1_SQRT_2,
    }
}

const MEMBERSHIP_TOL: f64 = 1e-12;

fn in_corner_tol(p: &Point3, tol: f64) -> bool {
    let (x, y) = (p.x(), p.y());
    x >= -tol
        && x <= 0.5 + tol
        && y >= -tol
        && y <= 0.5 + tol
        && x * x + y * y + p.t * p.t >= 1.0 - tol
}

fn float_group() -> Result<Vec<FloatIsom>> {
    Ok(octa_symmetry_group()?
        .iter()
        .map(FloatIsom::from_exact)
        .collect())
}

/// Membership in the corner and in the octahedron (the union of the 24 corner translates).
pub fn corner_and_octa_membership(p: &Point3) -> (bool, bool) {
    let in_c = in_corner(p);
    if in_c {
        return (true, true);
    }
    let in_o = float_group()
        .map(|g| {
            g.iter().any(|f| {
                f.apply(p)
                    .is_ok_and(|q| in_corner_tol(&q, MEMBERSHIP_TOL))
            })
        })
        .unwrap_or(false);
    (in_c, in_o)
}

fn image_of_infinity(g: &ProjIsom) -> Option<Complex64> {
    let [a, _, c, _] = g.matrix();
    if c.is_zero() {
        None
    } else {
        Some(a.to_complex() / c.to_complex())
    }
}

/// The six ideal vertices of the octahedron.
pub fn octa_cusps() -> [Option<Complex64>; 6] {
    [
        None,
        Some(Complex64::new(0.0, 0.0)),
        Some(Complex64::new(1.0, 0.0)),
        Some(Complex64::new(0.0, 1.0)),
        Some(Complex64::new(1.0, 1.0)),
        Some(Complex64::new(0.5, 0.5)),
    ]
}

/// One symmetry of the octahedron per cusp, sending infinity to that cusp.
pub fn horoball_system() -> Result<Vec<ProjIsom>> {
    let group = octa_symmetry_group()?;
    octa_cusps()
        .iter()
        .map(|cusp| {
            group
                .iter()
                .find(|g| match (image_of_infinity(g), cusp) {
                    (None, None) => true,
                    (Some(a), Some(b)) => (a - b).norm() < 1e-12,
                    _ => false,
                })
                .cloned()
                .ok_or_else(|| {
                    Error::Setup(format!("no octahedral symmetry maps infinity to {cusp:?}"))
                })
        })
        .collect()
}

/// `0 <= x, y <= 1` and `t >= 1/sqrt 2`.
fn in_standard_horoball_box(p: &Point3) -> bool {
    let (x, y) = (p.x(), p.y());
    (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y) && p.t >= std::f64::consts::FRAC_1_SQRT_2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HoroballReport {
    pub samples: usize,
    pub max_multiplicity: usize,
    pub coverage_ok: bool,
    pub uncovered: usize,
    /// Samples within the excluded ball around the center.
    pub excluded: usize,
    /// `histogram[k]` counts samples lying in exactly `k` translates.
    pub histogram: [usize; 7],
    pub epsilon: f64,
}

/// Samples the corner from the hyperbolic volume measure.
fn sample_corner(rng: &mut impl Rng) -> Point3 {
    let t0 = std::f64::consts::FRAC_1_SQRT_2;
    loop {
        let x: f64 = rng.gen_range(0.0..=0.5);
        let y: f64 = rng.gen_range(0.0..=0.5);
        let u: f64 = rng.gen();
        // density proportional to t^-3 on [t0, inf)
        let t = t0 / (1.0 - u).sqrt();
        if x * x + y * y + t * t >= 1.0 {
            return Point3 {
                z: Complex64::new(x, y),
                t,
            };
        }
    }
}

/// Samples points of the octahedron and counts how many horoball translates contain each.
pub fn horoball_cover_check(samples: usize, seed: u64, epsilon: f64) -> Result<HoroballReport> {
    let system = horoball_system()?;
    let inverses: Vec<FloatIsom> = system
        .iter()
        .map(|g| FloatIsom::from_exact(&g.inverse()))
        .collect();
    let group = float_group()?;
    let center = octa_center();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = HoroballReport {
        samples,
        max_multiplicity: 0,
        coverage_ok: true,
        uncovered: 0,
        excluded: 0,
        histogram: [0; 7],
        epsilon,
    };
    for _ in 0..samples {
        let c = sample_corner(&mut rng);
        let g = &group[rng.gen_range(0..group.len())];
        let p = g.apply(&c)?;
        let mult = inverses
            .iter()
            .filter(|h| h.apply(&p).is_ok_and(|q| in_standard_horoball_box(&q)))
            .count();
        report.histogram[mult] += 1;
        if mult == 0 {
            report.uncovered += 1;
            report.coverage_ok = false;
        }
        if dist(&p, &center) < epsilon {
            report.excluded += 1;
        } else {
            report.max_multiplicity = report.max_multiplicity.max(mult);
        }
    }
    Ok(report)
}

/// Number of translates `g_i B` whose closure contains `p`, up to `tol`.
pub fn horoball_multiplicity(p: &Point3, tol: f64) -> Result<usize> {
    let system = horoball_system()?;
    let t0 = std::f64::consts::FRAC_1_SQRT_2;
    Ok(system
        .iter()
        .filter_map(|g| FloatIsom::from_exact(&g.inverse()).apply(p).ok())
        .filter(|q| {
            q.x() >= -tol
                && q.x() <= 1.0 + tol
                && q.y() >= -tol
                && q.y() <= 1.0 + tol
                && q.t >= t0 - tol
        })
        .count())
}

/// Height of `p` in the cusp at infinity, maximized over a finite set of group elements.
pub fn cusp_height_standard(p: &Point3, reps: &[ProjIsom]) -> f64 {
    reps.iter()
        .filter_map(|g| FloatIsom::from_exact(g).apply(p).ok())
        .map(|q| q.t)
        .fold(p.t, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64, t: f64) -> Point3 {
        Point3::new(x, y, t).unwrap()
    }

    #[test]
    fn corner_examples() {
        assert_eq!(
            corner_and_octa_membership(&pt(0.25, 0.25, 2.0)),
            (true, true)
        );
        assert!(!corner_and_octa_membership(&pt(0.25, 0.25, 0.5)).0);
        assert_eq!(corner_and_octa_membership(&octa_center()), (true, true));
    }

    #[test]
    fn octahedron_shape() {
        // above a hemisphere over an edge midpoint but outside the corner
        assert_eq!(
            corner_and_octa_membership(&pt(0.75, 0.3, 1.5)),
            (false, true)
        );
        // under the hemisphere of radius 1/2 centered at 1/2
        assert!(!corner_and_octa_membership(&pt(0.5, 0.1, 0.3)).1);
        // outside the unit square
        assert!(!corner_and_octa_membership(&pt(1.5, 0.5, 3.0)).1);
    }

    #[test]
    fn system_hits_every_cusp() {
        let sys = horoball_system().unwrap();
        assert_eq!(sys.len(), 6);
        for (g, cusp) in sys.iter().zip(octa_cusps()) {
            match (image_of_infinity(g), cusp) {
                (None, None) => {}
                (Some(a), Some(b)) => assert!((a - b).norm() < 1e-12),
                _ => panic!("wrong cusp"),
            }
        }
    }

    #[test]
    fn center_lies_in_all_translates() {
        assert_eq!(horoball_multiplicity(&octa_center(), 1e-12).unwrap(), 6);
    }

    #[test]
    fn small_cover_check() {
        let r = horoball_cover_check(5000, 7, 1e-3).unwrap();
        assert!(r.coverage_ok);
        assert!(r.max_multiplicity <= 3);
        assert_eq!(r.histogram.iter().sum::<usize>(), 5000);
    }

    #[test]
    fn cusp_height() {
        let p = pt(0.2, 0.1, 0.6);
        assert_eq!(cusp_height_standard(&p, &[ProjIsom::identity()]), 0.6);
        let high = pt(0.3, 0.4, 10.0);
        let reps: Vec<ProjIsom> = crate::words::enumerate_racg_ball(4)
            .unwrap()
            .iter()
            .map(|w| w.evaluate())
            .collect();
        assert_eq!(cusp_height_standard(&high, &reps), 10.0);
        let small = &reps[..20];
        assert!(cusp_height_standard(&p, small) <= cusp_height_standard(&p, &reps));
    }

    #[test]
    fn standard_cusp_area() {
        let c = CuspDatum::standard();
        assert_eq!(c.area, Some(4.0));
        assert!(CuspDatum::rank2(Complex64::new(1.0, 1.0), Complex64::new(2.0, 2.0)).is_err());
        assert_eq!(
            CuspDatum::rank1(Complex64::new(3.0, 4.0)).unwrap().length,
            Some(5.0)
        );
    }
}
