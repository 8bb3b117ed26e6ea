//! Riemann zeta, the Dirichlet beta function `L(s, χ_{-4})` and the Dedekind zeta of `Q(i)`.

use crate::error::{Error, Result};

/// `B_{2k} / (2k)!` for `k = 1..=10`.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
];

const EM_CUTOFF: usize = 20;

/// Euler–Maclaurin summation of `sum n^-s`, valid for real `s > -15`, `s != 1`.
pub fn riemann_zeta_em(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole(1.0));
    }
    if !(s > -15.0) || !s.is_finite() {
        return Err(Error::Domain(format!(
            "zeta({s}) outside the supported range"
        )));
    }
    let n = EM_CUTOFF as f64;
    let mut sum: f64 = (1..EM_CUTOFF).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // rising factorial s (s+1) ... (s+2k-2)
    let mut rising = s;
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let k = k + 1;
        if k > 1 {
            rising *= (s + 2.0 * k as f64 - 3.0) * (s + 2.0 * k as f64 - 2.0);
        }
        sum += c * rising * n.powf(-s - 2.0 * k as f64 + 1.0);
    }
    Ok(sum)
}

/// Riemann zeta for `s > 1`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("riemann_zeta needs s > 1, got {s}")));
    }
    if s > 60.0 {
        return Ok(1.0 + 2f64.powf(-s) + 3f64.powf(-s));
    }
    riemann_zeta_em(s)
}

/// Accelerated sum of `sum_{k>=0} (-1)^k a(k)` for completely monotone `a`.
fn alternating_sum(a: impl Fn(usize) -> f64) -> f64 {
    const TERMS: usize = 40;
    let n = TERMS as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(n);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..TERMS {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        b *= (kf + n) * (kf - n) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// Dirichlet eta `sum (-1)^(n-1) n^-s`, for `s > 0`.
pub fn dirichlet_eta(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("eta series needs s > 0, got {s}")));
    }
    Ok(alternating_sum(|k| ((k + 1) as f64).powf(-s)))
}

/// Riemann zeta for `s > 0`, `s != 1`, through `zeta = eta / (1 - 2^(1-s))`.
pub fn riemann_zeta_continued(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole(1.0));
    }
    if s > 1.0 {
        return riemann_zeta(s);
    }
    Ok(dirichlet_eta(s)? / (1.0 - 2f64.powf(1.0 - s)))
}

/// `L(s, χ_{-4}) = 1 - 3^-s + 5^-s - ...`, for `s > 0`.
pub fn dirichlet_beta(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("beta series needs s > 0, got {s}")));
    }
    if s > 60.0 {
        return Ok(1.0 - 3f64.powf(-s));
    }
    Ok(alternating_sum(|k| ((2 * k + 1) as f64).powf(-s)))
}

/// `ζ_{Q(i)}(s) = ζ(s) L(s, χ_{-4})` for `s > 1`.
pub fn dedekind_zeta_qi(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!(
            "dedekind_zeta_qi needs s > 1, got {s}"
        )));
    }
    Ok(riemann_zeta(s)? * dirichlet_beta(s)?)
}

/// `ζ_{Q(i)}(s)` for `s > 0`, `s != 1`.
pub fn dedekind_zeta_qi_continued(s: f64) -> Result<f64> {
    Ok(riemann_zeta_continued(s)? * dirichlet_beta(s)?)
}

/// `(1/4) Σ' |m + ni|^{-2s}` over lattice points with `|m + ni| <= R`, the direct
/// lattice form of `ζ_{Q(i)}(s)`.
pub fn gaussian_lattice_zeta(s: f64, radius: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("lattice zeta needs s > 1, got {s}")));
    }
    if !(radius >= 1.0) || radius > 2000.0 {
        return Err(Error::Domain(format!(
            "lattice radius {radius} outside [1, 2000]"
        )));
    }
    let r = radius.floor() as i64;
    let r2 = radius * radius;
    let mut terms = Vec::new();
    for m in -r..=r {
        for n in -r..=r {
            let norm = (m * m + n * n) as f64;
            if norm > 0.0 && norm <= r2 {
                terms.push(norm.powf(-s));
            }
        }
    }
    terms.sort_by(f64::total_cmp);
    Ok(0.25 * terms.iter().sum::<f64>())
}
