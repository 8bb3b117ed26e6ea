//! The diagonal scattering coefficient of the cusp at infinity of `Γ(N)`, and a
//! direct lattice enumeration of the sum it comes from.

use std::f64::consts::PI;

use serde::Serialize;

use super::zeta::{dedekind_zeta_qi, dedekind_zeta_qi_continued};
use crate::error::{Error, Result};

/// Largest truncation radius accepted by [`lattice_sum_oracle`].
pub const MAX_ORACLE_RADIUS: f64 = 500.0;

/// Rational prime factorization by trial division, as `(q, multiplicity)`.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Norms `|p|^2` of the Gaussian primes dividing the rational integer `n`, one per prime.
pub fn gaussian_prime_norms(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for (q, _) in factor_u64(n) {
        match q % 4 {
            2 => out.push(2),
            1 => out.extend([q, q]),
            _ => out.push(q * q),
        }
    }
    out
}

/// `∏_{p | N} (1 - |p|^{-2s})^{-1}` over Gaussian primes.
pub fn euler_factor(s: f64, n: u64) -> f64 {
    gaussian_prime_norms(n)
        .iter()
        .map(|&np| 1.0 / (1.0 - (np as f64).powf(-s)))
        .product()
}

/// A Gaussian prime of norm `q` for a rational prime `q ≡ 1 mod 4`.
fn split_prime(q: i64) -> (i64, i64) {
    let mut a = 1;
    while a * a < q {
        let b2 = q - a * a;
        let b = (b2 as f64).sqrt().round() as i64;
        if b * b == b2 {
            return (a, b);
        }
        a += 1;
    }
    unreachable!("{q} is not a sum of two squares")
}

/// Gaussian totient `φ(c) = |c|^2 ∏_{p | c} (1 - 1/|p|^2)`.
pub fn gaussian_totient(re: i64, im: i64) -> u64 {
    let norm = (re * re + im * im) as u64;
    if norm == 0 {
        return 0;
    }
    let mut phi = norm as f64;
    for (q, _) in factor_u64(norm) {
        let qi = q as i64;
        match q % 4 {
            2 => phi *= 0.5,
            3 => phi *= 1.0 - 1.0 / (q * q) as f64,
            _ => {
                let (a, b) = split_prime(qi);
                // p | c iff c * conj(p) ≡ 0 mod q
                for (pa, pb) in [(a, b), (a, -b)] {
                    let x = re * pa + im * pb;
                    let y = im * pa - re * pb;
                    if x % qi == 0 && y % qi == 0 {
                        phi *= 1.0 - 1.0 / q as f64;
                    }
                }
            }
        }
    }
    phi.round() as u64
}

fn gcd_gauss(mut a: (i64, i64), mut b: (i64, i64)) -> (i64, i64) {
    while b != (0, 0) {
        let n = b.0 * b.0 + b.1 * b.1;
        // a / b = a * conj(b) / n, rounded
        let x = a.0 * b.0 + a.1 * b.1;
        let y = a.1 * b.0 - a.0 * b.1;
        let qx = (x as f64 / n as f64).round() as i64;
        let qy = (y as f64 / n as f64).round() as i64;
        let r = (a.0 - (qx * b.0 - qy * b.1), a.1 - (qx * b.1 + qy * b.0));
        a = b;
        b = r;
    }
    a
}

/// Number of residues `d mod c` with `d ≡ 1 mod N` and `(c, d) = 1`, counted directly.
/// Requires `N | c`.
pub fn coprime_residue_count_brute(c: (i64, i64), n: i64) -> u64 {
    let (cr, ci) = (c.0 / n, c.1 / n);
    let norm = cr * cr + ci * ci;
    // representatives k of Z[i] / (c'), then d = 1 + N k runs over 1 + (N) mod c
    let mut count = 0;
    let bound = norm.max(1);
    let mut seen = std::collections::HashSet::new();
    for x in 0..bound {
        for y in 0..bound {
            // reduce k = x + iy modulo c' to a canonical representative
            let key = reduce_mod((x, y), (cr, ci));
            if !seen.insert(key) {
                continue;
            }
            let d = (1 + n * key.0, n * key.1);
            let g = gcd_gauss(c, d);
            if g.0 * g.0 + g.1 * g.1 == 1 {
                count += 1;
            }
        }
    }
    count
}

fn reduce_mod(a: (i64, i64), m: (i64, i64)) -> (i64, i64) {
    let n = m.0 * m.0 + m.1 * m.1;
    // a = q m + r with r in a fixed fundamental domain: use coordinates in the basis m, i m
    let x = a.0 * m.0 + a.1 * m.1;
    let y = a.1 * m.0 - a.0 * m.1;
    let qx = x.div_euclid(n);
    let qy = y.div_euclid(n);
    (a.0 - (qx * m.0 - qy * m.1), a.1 - (qx * m.1 + qy * m.0))
}

/// `Σ_c |c|^{-2s} #{d ∈ 1 + (N) mod c, (c, d) = 1}` over one generator `c` of each
/// nonzero ideal contained in `(N)` with `|c| <= R`.
pub fn lattice_sum_oracle(s: f64, n: u64, radius: f64) -> Result<f64> {
    lattice_sum(s, n, radius, true)
}

/// The same sum over all nonzero `c ∈ (N)`, which counts each ideal once per unit.
pub fn lattice_sum_all_elements(s: f64, n: u64, radius: f64) -> Result<f64> {
    lattice_sum(s, n, radius, false)
}

fn lattice_sum(s: f64, n: u64, radius: f64, per_ideal: bool) -> Result<f64> {
    if !(s > 2.0) {
        return Err(Error::Domain(format!("lattice sum needs s > 2, got {s}")));
    }
    if n == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    if !(radius >= 1.0) {
        return Err(Error::Domain(format!("radius {radius} too small")));
    }
    if radius > MAX_ORACLE_RADIUS {
        return Err(Error::SizeGuard(format!(
            "radius {radius} exceeds {MAX_ORACLE_RADIUS}"
        )));
    }
    let ni = n as i64;
    let phi_n = gaussian_totient(ni, 0) as f64;
    let r = (radius / n as f64).floor() as i64;
    let r2 = radius * radius;
    let mut terms = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if a == 0 && b == 0 || per_ideal && !(a > 0 && b >= 0) {
                continue;
            }
            let (cr, ci) = (ni * a, ni * b);
            let norm = (cr * cr + ci * ci) as f64;
            if norm > r2 {
                continue;
            }
            let count = gaussian_totient(cr, ci) as f64 / phi_n;
            terms.push(count * norm.powf(-s));
        }
    }
    // small terms first
    terms.sort_by(f64::total_cmp);
    Ok(terms.iter().sum())
}

/// [`lattice_sum_oracle`] with the `R^{4-2s}` tail removed by Richardson extrapolation
/// between radii `R/2` and `R`.
pub fn lattice_sum_extrapolated(s: f64, n: u64, radius: f64) -> Result<f64> {
    let full = lattice_sum_oracle(s, n, radius)?;
    let half = lattice_sum_oracle(s, n, 0.5 * radius)?;
    let w = 2f64.powf(2.0 * s - 4.0);
    Ok((w * full - half) / (w - 1.0))
}

/// Closed form `ζ_K(s-1)/ζ_K(s) · N^{-2s} · ∏_{p|N} (1 - |p|^{-2s})^{-1}` of the lattice sum.
pub fn lattice_sum_closed_form(s: f64, n: u64) -> Result<f64> {
    Ok(zeta_ratio(s)? * (n as f64).powf(-2.0 * s) * euler_factor(s, n))
}

/// `ζ_{Q(i)}(s-1) / ζ_{Q(i)}(s)` for `s > 1`, `s != 2`.
pub fn zeta_ratio(s: f64) -> Result<f64> {
    if (s - 2.0).abs() < 1e-12 {
        return Err(Error::Pole(2.0));
    }
    if !(s > 1.0) {
        return Err(Error::Domain(format!("zeta ratio needs s > 1, got {s}")));
    }
    let num = if s > 2.0 {
        dedekind_zeta_qi(s - 1.0)?
    } else {
        dedekind_zeta_qi_continued(s - 1.0)?
    };
    Ok(num / dedekind_zeta_qi(s)?)
}

/// `φ_aa(s) = π/(4(s-1)) · ζ_K(s-1)/ζ_K(s) · N^{-2s-2} · ∏_{p|N} (1 - |p|^{-2s})^{-1}`.
///
/// Defined for `s > 1`; values on `(1, 2)` use the continued zeta in the numerator.
pub fn phi_aa(s: f64, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    let nf = n as f64;
    Ok(PI / (4.0 * (s - 1.0)) * lattice_sum_closed_form(s, n)? / (nf * nf))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleScan {
    pub level: u64,
    pub interval: (f64, f64),
    pub grid: usize,
    pub poles: Vec<f64>,
}

/// Scans `φ_aa` on an even grid and reports locations of sign changes through
/// infinity, of blow-up beyond `1e8`, and of grid points sitting on a pole.
pub fn pole_scan(n: u64, interval: (f64, f64), grid: usize) -> Result<PoleScan> {
    let (a, b) = interval;
    if !(a > 1.0 && b > a) || grid < 2 {
        return Err(Error::Domain(format!(
            "invalid scan interval ({a}, {b}) or grid {grid}"
        )));
    }
    let mut poles = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..grid {
        let s = a + (b - a) * k as f64 / (grid - 1) as f64;
        match phi_aa(s, n) {
            Err(Error::Pole(p)) => {
                poles.push(p);
                prev = None;
            }
            Err(e) => return Err(e),
            Ok(v) => {
                if v.abs() > 1e8 {
                    poles.push(s);
                } else if let Some((ps, pv)) = prev {
                    if pv.signum() != v.signum() && (pv.abs() > 1e3 || v.abs() > 1e3) {
                        poles.push(0.5 * (ps + s));
                    }
                }
                prev = Some((s, v));
            }
        }
    }
    poles.dedup_by(|x, y| (*x - *y).abs() < 2.0 * (b - a) / grid as f64);
    Ok(PoleScan {
        level: n,
        interval,
        grid,
        poles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_norms() {
        assert_eq!(gaussian_prime_norms(2), vec![2]);
        assert_eq!(gaussian_prime_norms(5), vec![5, 5]);
        assert_eq!(gaussian_prime_norms(3), vec![9]);
        assert_eq!(gaussian_prime_norms(12), vec![2, 9]);
        assert!(gaussian_prime_norms(1).is_empty());
    }

    #[test]
    fn totient_matches_direct_count() {
        for n in [1i64, 2, 3] {
            for a in -6..=6i64 {
                for b in -6..=6i64 {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let c = (n * a, n * b);
                    let expected = gaussian_totient(c.0, c.1) / gaussian_totient(n, 0);
                    assert_eq!(
                        coprime_residue_count_brute(c, n),
                        expected,
                        "c = {c:?}, N = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn totient_small_cases() {
        assert_eq!(gaussian_totient(1, 1), 1);
        assert_eq!(gaussian_totient(2, 0), 2);
        assert_eq!(gaussian_totient(3, 0), 8);
        assert_eq!(gaussian_totient(2, 1), 4);
        assert_eq!(gaussian_totient(5, 0), 16);
    }

    #[test]
    fn pole_at_two() {
        assert!(matches!(phi_aa(2.0, 1), Err(Error::Pole(_))));
        // simple pole with residue (π/4)^2 / ζ_K(2)
        let residue = (PI / 4.0).powi(2) / dedekind_zeta_qi(2.0).unwrap();
        for eps in [1e-3, 1e-4, -1e-4] {
            let v = phi_aa(2.0 + eps, 1).unwrap() * eps;
            assert!(
                (v / residue - 1.0).abs() < 20.0 * eps.abs(),
                "{eps}: {v} vs {residue}"
            );
        }
        assert!(phi_aa(1.9999, 1).unwrap().abs() > 1e3);
    }

    #[test]
    fn monotone_in_radius() {
        let a = lattice_sum_oracle(3.0, 1, 20.0).unwrap();
        let b = lattice_sum_oracle(3.0, 1, 40.0).unwrap();
        assert!(b > a);
        assert!(lattice_sum_oracle(3.0, 1, 600.0).is_err());
    }

    #[test]
    fn element_sum_counts_each_ideal_four_times() {
        let a = lattice_sum_oracle(3.0, 2, 30.0).unwrap();
        let b = lattice_sum_all_elements(3.0, 2, 30.0).unwrap();
        assert!((b / a - 4.0).abs() < 1e-12);
    }
}
