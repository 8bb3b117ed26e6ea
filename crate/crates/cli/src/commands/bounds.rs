use octacover_core::geometry::{
    cap_sweep, cap_sweep_grid, horoball_cover_check, prop_main_bounds, prop_main_bounds_with_mu,
    DELTA_APOLLONIAN,
};
use octacover_core::spectral::{flattening_budget, tangle_deloc_bound};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::check;
use crate::config::Context;
use crate::output::{num, Report};
use crate::CliError;

pub const MAX_HOROBALL_SAMPLES: usize = 10_000_000;

#[derive(clap::Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Args {
    /// Critical exponent of the Apollonian group.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Constant in the lower bound (1 if absent).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Values of L for the flattening budget.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_grid: Option<Vec<f64>>,
    /// Cusp areas of a single face, as a,b,c.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub areas: Option<Vec<f64>>,
    /// Cusp areas of several faces (config file only).
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<[f64; 3]>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horoball_samples: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horoball_epsilon: Option<f64>,
}

pub fn run(args: &Args, ctx: &Context) -> Result<Report, CliError> {
    let seed = ctx.require_seed("bounds")?;
    let delta = args.delta.unwrap_or(DELTA_APOLLONIAN);
    let (lambda, lambda0, eps) = (
        args.lambda.unwrap_or(0.4),
        args.lambda0.unwrap_or(0.8),
        args.eps.unwrap_or(0.01),
    );
    let l_grid = args
        .l_grid
        .clone()
        .unwrap_or_else(|| vec![10.0, 15.0, 20.0, 25.0]);
    check(!l_grid.is_empty() && l_grid.len() <= 1000, || {
        "l-grid needs 1 to 1000 values".into()
    })?;
    check(l_grid.iter().all(|l| *l > 0.0 && l.is_finite()), || {
        "l-grid values must be positive".into()
    })?;
    check(args.areas.is_none() || args.faces.is_none(), || {
        "give areas or faces, not both".into()
    })?;
    let faces: Vec<[f64; 3]> = match (&args.areas, &args.faces) {
        (Some(a), _) => {
            check(a.len() == 3, || {
                format!("areas needs 3 values, got {}", a.len())
            })?;
            vec![[a[0], a[1], a[2]]]
        }
        (_, Some(f)) => f.clone(),
        _ => vec![[1.0, 1.0, 1.0]],
    };
    let samples = args.horoball_samples.unwrap_or(100_000);
    check((1..=MAX_HOROBALL_SAMPLES).contains(&samples), || {
        format!("horoball samples {samples} outside 1..={MAX_HOROBALL_SAMPLES}")
    })?;
    let epsilon = args.horoball_epsilon.unwrap_or(1e-3);
    check(epsilon >= 0.0 && epsilon.is_finite(), || {
        format!("horoball epsilon {epsilon} must be nonnegative")
    })?;

    let main = match args.mu {
        Some(mu) => prop_main_bounds_with_mu(delta, mu)?,
        None => prop_main_bounds(delta)?,
    };
    let mut budgets = Vec::new();
    for &l in &l_grid {
        let b = flattening_budget(&faces, l, lambda, lambda0, eps, None)?;
        let deloc = tangle_deloc_bound(l, lambda, lambda0, eps, &[], None)?;
        budgets.push((l, b, deloc));
    }
    let decreasing = budgets
        .windows(2)
        .all(|w| w[0].0 >= w[1].0 || w[1].1.total < w[0].1.total);
    let sweep = cap_sweep(&cap_sweep_grid())?;
    let horoball = horoball_cover_check(samples, seed, epsilon)?;
    let horoball_ok = horoball.coverage_ok && horoball.max_multiplicity <= 3;
    let rows = sweep
        .iter()
        .map(|c| {
            vec![
                num(c.radius),
                num(c.delta),
                num(c.volume),
                num(c.bound),
                c.holds().to_string(),
            ]
        })
        .collect();
    Ok(Report {
        json: json!({
            "seed": seed,
            "main_bounds": main,
            "flattening": budgets.iter().map(|(l, b, d)| json!({ "L": l, "budget": b, "tangle_deloc_bound": d })).collect::<Vec<_>>(),
            "flattening_decreasing": decreasing,
            "cap_sweep": { "points": sweep.len(), "violations": sweep.iter().filter(|c| !c.holds()).count() },
            "horoball": {
                "samples": horoball.samples,
                "max_multiplicity": horoball.max_multiplicity,
                "coverage_ok": horoball.coverage_ok,
                "uncovered": horoball.uncovered,
                "excluded": horoball.excluded,
                "histogram": horoball.histogram,
                "epsilon": horoball.epsilon,
            },
        }),
        csv_header: vec!["T", "delta", "volume", "bound", "holds"],
        csv_rows: rows,
        extra: Vec::new(),
        pass: decreasing && horoball_ok,
    })
}
