//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use octacover_core::covers::{
    cover_graph, dirichlet_rho, dual_graph, is_connected, replacement_rho_limit, sample_cover,
    spectrum, tangle_free_radius, two_cover_spectra, Matching, Signing,
};
use octacover_core::geometry::{
    ball_volume, cap_sweep, cap_sweep_grid, cap_volume, cap_volume_monte_carlo, elstrodt_sullivan,
    estimate_delta_default, horoball_cover_check, orbit_ball, prop_main_bounds, OrbitGroup,
    DELTA_APOLLONIAN,
};
use octacover_core::group::{standard_generator, standard_table};
use octacover_core::quad::integrate;
use octacover_core::spectral::{
    cusp_decay_ratio, dedekind_zeta_qi, flattening_budget, gaussian_lattice_zeta,
    lattice_sum_closed_form, lattice_sum_extrapolated, pole_scan, selberg_h, DecayMode,
};
use octacover_core::verify::verify_group;
use octacover_core::words::visit_free_ball;
use octacover_core::{Point3, ProjIsom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn group_exactness() -> Outcome {
    let report = verify_group(standard_table());
    if let Some(c) = report.first_failure() {
        return Err(format!("check failed: {}", c.name));
    }
    Ok(format!(
        "{} exact checks, |<R3,R4>| = {}",
        report.checks.len(),
        report.octahedral_order
    ))
}

fn free_product() -> Outcome {
    let gens: Vec<ProjIsom> = octacover_core::group::GeneratorName::APOLLONIAN
        .iter()
        .map(|&g| standard_generator(g))
        .collect();
    let mut words = 0u64;
    let mut trivial = Vec::new();
    visit_free_ball(
        10,
        ProjIsom::identity(),
        &|g: &ProjIsom, l| g.mul(&gens[l as usize]),
        &mut |w, g| {
            if !w.is_empty() {
                words += 1;
                if g.is_identity() {
                    trivial.push(w.to_vec());
                }
            }
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(
        trivial.is_empty(),
        format!("{} nonempty words evaluate to the identity", trivial.len()),
    )?;
    ensure(
        words == 2 * (3u64.pow(10) - 1),
        format!("visited {words} words"),
    )?;
    Ok(format!("{words} reduced words, none trivial"))
}

fn scattering() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in [2.5, 3.0, 4.0] {
        for n in [1, 2] {
            let oracle = lattice_sum_extrapolated(s, n, 120.0).map_err(|e| e.to_string())?;
            let formula = lattice_sum_closed_form(s, n).map_err(|e| e.to_string())?;
            let gap = (oracle / formula - 1.0).abs();
            ensure(
                gap < 1e-3,
                format!("relative gap {gap:.3e} at s = {s}, N = {n}"),
            )?;
            worst = worst.max(gap);
        }
    }
    for n in [1, 2, 3] {
        let scan = pole_scan(n, (1.05, 1.95), 1000).map_err(|e| e.to_string())?;
        ensure(
            scan.poles.is_empty(),
            format!("poles {:?} at N = {n}", scan.poles),
        )?;
    }
    Ok(format!(
        "max relative gap {worst:.2e}, no poles on (1.05, 1.95)"
    ))
}

fn zeta_factorization() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in [2.0, 3.0] {
        let product = dedekind_zeta_qi(s).map_err(|e| e.to_string())?;
        let lattice = gaussian_lattice_zeta(s, 400.0).map_err(|e| e.to_string())?;
        let err = (product - lattice).abs();
        ensure(err < 1e-5, format!("|ζ_K({s}) - lattice| = {err:.3e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("max abs error {worst:.2e}"))
}

fn cap_volume_check() -> Outcome {
    let exact = cap_volume(2.0, 1.0).map_err(|e| e.to_string())?;
    let mc = cap_volume_monte_carlo(2.0, 1.0, 1_000_000, 2024).map_err(|e| e.to_string())?;
    let rel = (mc / exact - 1.0).abs();
    ensure(
        rel < 0.02,
        format!("Monte Carlo {mc:.6} vs formula {exact:.6}"),
    )?;
    for t in [0.5, 1.0, 2.0, 3.0, 5.0] {
        let v = cap_volume(t, 0.0).map_err(|e| e.to_string())?;
        let b = ball_volume(t);
        ensure(
            (v - b).abs() < 1e-8 * b.max(1.0),
            format!("δ = 0 volume {v} vs {b} at T = {t}"),
        )?;
    }
    let grid = cap_sweep_grid();
    cap_sweep(&grid).map_err(|e| e.to_string())?;
    Ok(format!(
        "MC rel. error {rel:.2e}, bound holds on {} grid points",
        grid.len()
    ))
}

fn critical_exponent() -> Outcome {
    let x0 = Point3::new(0.3, 0.4, 0.9).map_err(|e| e.to_string())?;
    let ap = orbit_ball(OrbitGroup::Apollonian, x0, 14).map_err(|e| e.to_string())?;
    let d_ap = estimate_delta_default(&ap)
        .map_err(|e| e.to_string())?
        .slope;
    ensure(
        (1.15..=1.45).contains(&d_ap),
        format!("δ(Ap) estimate {d_ap:.4}"),
    )?;
    drop(ap);
    let sa = orbit_ball(OrbitGroup::SuperApollonian, x0, 10).map_err(|e| e.to_string())?;
    let d_sa = estimate_delta_default(&sa)
        .map_err(|e| e.to_string())?
        .slope;
    ensure(
        (1.6..=2.0).contains(&d_sa),
        format!("δ(SA) estimate {d_sa:.4}"),
    )?;
    Ok(format!("δ(Ap) ≈ {d_ap:.4}, δ(SA) ≈ {d_sa:.4}"))
}

fn truncates_to(x: f64, digits: &str) -> bool {
    format!("{x:.12}").starts_with(digits)
}

fn constants() -> Outcome {
    let b = prop_main_bounds(DELTA_APOLLONIAN).map_err(|e| e.to_string())?;
    let es = elstrodt_sullivan(DELTA_APOLLONIAN).map_err(|e| e.to_string())?;
    let root = (5.0 + 2.0 * 3f64.sqrt()).sqrt();
    let lower_closed = (3.0 - root) / (67.0 - root);
    let upper_closed = DELTA_APOLLONIAN * (1.0 - DELTA_APOLLONIAN / 4.0);
    ensure(
        truncates_to(b.lower, "0.00141"),
        format!("lower bound {:.8}", b.lower),
    )?;
    ensure(
        (b.lower / lower_closed - 1.0).abs() < 5e-6,
        format!("lower bound {:.8} vs {lower_closed:.8}", b.lower),
    )?;
    ensure(
        truncates_to(b.upper, "0.879482"),
        format!("upper bound {:.8}", b.upper),
    )?;
    ensure(
        (b.upper / upper_closed - 1.0).abs() < 5e-6,
        format!("upper bound {:.8} vs {upper_closed:.8}", b.upper),
    )?;
    ensure(
        truncates_to(es, "0.906555"),
        format!("Elstrodt-Sullivan value {es:.8}"),
    )?;
    Ok(format!(
        "lower {:.6e}, upper {:.6}, λ0(Ap) {es:.6}",
        b.lower, b.upper
    ))
}

fn replacement_gap() -> Outcome {
    let limit = replacement_rho_limit();
    let mut prev = f64::NEG_INFINITY;
    let mut rho12 = 0.0;
    for r in 0..=12 {
        let rho = dirichlet_rho(r).map_err(|e| e.to_string())?;
        ensure(
            rho >= prev - 1e-9,
            format!("ρ decreases at radius {r}: {rho} < {prev}"),
        )?;
        prev = rho;
        rho12 = rho;
    }
    ensure(
        rho12 >= 3.80 && rho12 <= limit + 1e-6,
        format!("radius-12 ρ = {rho12:.6}"),
    )?;
    let gap = 3.0 - (5.0 + 2.0 * 3f64.sqrt()).sqrt();
    ensure(
        ((4.0 - limit) - gap).abs() < 1e-12,
        "limit inconsistent with the graph gap",
    )?;
    Ok(format!(
        "ρ(12) = {rho12:.6}, 4 - ρ(12) = {:.6} > λ1 = {gap:.7}",
        4.0 - rho12
    ))
}

fn two_lift() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for k in 0..20u64 {
        let n = 1 + (k as usize * 7) % 30;
        let g = dual_graph(&sample_cover(n, 1000 + k).map_err(|e| e.to_string())?);
        let s = Signing::random(&g, &mut rng);
        let split = two_cover_spectra(&g, &s)
            .map_err(|e| e.to_string())?
            .union();
        let cover = spectrum(&cover_graph(&g, &s).map_err(|e| e.to_string())?.adjacency());
        ensure(split.len() == cover.len(), "spectrum sizes differ")?;
        let err = split
            .iter()
            .zip(&cover)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        ensure(
            err < 1e-8,
            format!("instance {k} (n = {n}): mismatch {err:.3e}"),
        )?;
        worst = worst.max(err);
        let plus = two_cover_spectra(&g, &Signing::all_plus(&g)).map_err(|e| e.to_string())?;
        let l1 = plus.cover_lambda1();
        ensure(l1.abs() < 1e-12, format!("all-plus cover λ1 = {l1:e}"))?;
    }
    Ok(format!("20 instances, max deviation {worst:.2e}"))
}

fn horoball() -> Outcome {
    let r = horoball_cover_check(100_000, 31, 1e-3).map_err(|e| e.to_string())?;
    ensure(r.coverage_ok, format!("{} uncovered samples", r.uncovered))?;
    ensure(
        r.max_multiplicity <= 3,
        format!("multiplicity {}", r.max_multiplicity),
    )?;
    Ok(format!(
        "max multiplicity {}, histogram {:?}",
        r.max_multiplicity, r.histogram
    ))
}

fn selberg_and_decay() -> Outcome {
    let mut worst: f64 = 0.0;
    for t in [1.0, 3.0, 6.0] {
        for lambda in [0.1, 0.5, 0.9] {
            let s = (1.0f64 - lambda).sqrt();
            let integral = integrate(|r| (s * r).sinh() * r.sinh(), 0.0, t, 1e-14);
            let direct = 2.0 * PI / (t.sinh() * s) * integral;
            let closed = selberg_h(t, lambda).map_err(|e| e.to_string())?;
            let err = (closed / direct - 1.0).abs();
            ensure(
                err < 1e-10,
                format!("h_T mismatch {err:.3e} at T = {t}, λ = {lambda}"),
            )?;
            worst = worst.max(err);
        }
    }
    for s in [0.25, 0.5, 0.75] {
        let r = cusp_decay_ratio(s, DecayMode::Zeroth, 1.7).map_err(|e| e.to_string())?;
        let want = 2f64.powf(2.0 * s) - 1.0;
        ensure(
            (r - want).abs() < 1e-12,
            format!("zeroth ratio {r} vs {want} at s = {s}"),
        )?;
    }
    Ok(format!("max relative Selberg error {worst:.2e}"))
}

fn flattening() -> Outcome {
    let faces = [[1.0, 1.0, 1.0]];
    let mut totals = Vec::new();
    for l in [10.0, 15.0, 20.0, 25.0] {
        totals.push(
            flattening_budget(&faces, l, 0.4, 0.8, 0.01, None)
                .map_err(|e| e.to_string())?
                .total,
        );
    }
    ensure(
        totals.windows(2).all(|w| w[1] < w[0]),
        format!("totals not decreasing: {totals:?}"),
    )?;
    let shown: Vec<String> = totals.iter().map(|t| format!("{t:.3e}")).collect();
    Ok(format!("totals {}", shown.join(", ")))
}

fn model_statistics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    let samples = 10_000;
    for _ in 0..samples {
        let m = Matching::sample(6, &mut rng).map_err(|e| e.to_string())?;
        *counts.entry(m.perm().to_vec()).or_default() += 1;
    }
    ensure(
        counts.len() == 15,
        format!("{} distinct matchings", counts.len()),
    )?;
    let expected = samples as f64 / 15.0;
    let chi2: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let p = 1.0 - ChiSquared::new(14.0).map_err(|e| e.to_string())?.cdf(chi2);
    ensure(p > 0.001, format!("χ² = {chi2:.2}, p = {p:.2e}"))?;
    let mut connected = 0;
    for seed in 0..200 {
        connected += usize::from(is_connected(&dual_graph(
            &sample_cover(50, seed).map_err(|e| e.to_string())?,
        )));
    }
    let freq = connected as f64 / 200.0;
    ensure(freq >= 0.95, format!("connected fraction {freq}"))?;
    let mut radii = Vec::new();
    for seed in 0..21 {
        radii.push(tangle_free_radius(&dual_graph(
            &sample_cover(200, 500 + seed).map_err(|e| e.to_string())?,
        )));
    }
    radii.sort_unstable();
    let median = radii[radii.len() / 2];
    ensure(median >= 1, format!("median tangle-free radius {median}"))?;
    Ok(format!(
        "χ² p = {p:.3}, connected {freq:.3}, median tangle-free radius {median}"
    ))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("group exactness", group_exactness, Duration::from_secs(1)),
        ("free-product sanity", free_product, Duration::from_secs(30)),
        (
            "scattering formula vs lattice oracle",
            scattering,
            Duration::from_secs(120),
        ),
        (
            "Dedekind zeta factorization",
            zeta_factorization,
            Duration::from_secs(10),
        ),
        ("cap volume", cap_volume_check, Duration::from_secs(60)),
        (
            "critical exponents",
            critical_exponent,
            Duration::from_secs(300),
        ),
        ("main-bound constants", constants, Duration::from_secs(1)),
        (
            "replacement-product gap",
            replacement_gap,
            Duration::from_secs(120),
        ),
        ("2-lift decomposition", two_lift, Duration::from_secs(60)),
        ("horoball covering", horoball, Duration::from_secs(60)),
        (
            "Selberg transform and cusp decay",
            selberg_and_decay,
            Duration::from_secs(10),
        ),
        ("flattening budget", flattening, Duration::from_secs(1)),
        (
            "cover model statistics",
            model_statistics,
            Duration::from_secs(180),
        ),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:.2?} (limit {limit:?})"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
