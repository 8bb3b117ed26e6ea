use octacover_core::spectral::{
    lattice_sum_closed_form, lattice_sum_extrapolated, phi_aa, pole_scan, MAX_ORACLE_RADIUS,
};
use octacover_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::check;
use crate::config::Context;
use crate::output::{num, Report};
use crate::CliError;

pub const GAP_TOLERANCE: f64 = 1e-3;

#[derive(clap::Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Args {
    /// Congruence level N.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_max: Option<f64>,
    /// Number of grid points on [s-min, s-max].
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_radius: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_grid: Option<usize>,
}

pub fn run(args: &Args, _ctx: &Context) -> Result<Report, CliError> {
    let level = args.level.unwrap_or(1);
    let (s_min, s_max) = (args.s_min.unwrap_or(2.2), args.s_max.unwrap_or(4.0));
    let grid = args.grid.unwrap_or(10);
    let radius = args.oracle_radius.unwrap_or(120.0);
    let scan = (args.scan_min.unwrap_or(1.05), args.scan_max.unwrap_or(1.95));
    let scan_grid = args.scan_grid.unwrap_or(1000);
    check((1..=1000).contains(&level), || {
        format!("level {level} outside 1..=1000")
    })?;
    check(s_min > 1.0 && s_max >= s_min && s_max <= 50.0, || {
        format!("need 1 < s-min <= s-max <= 50, got {s_min}, {s_max}")
    })?;
    check((1..=10_000).contains(&grid), || {
        format!("grid {grid} outside 1..=10000")
    })?;
    check(grid > 1 || s_min == s_max, || {
        "a single grid point needs s-min = s-max".into()
    })?;
    check((2.0..=MAX_ORACLE_RADIUS).contains(&radius), || {
        format!("oracle radius {radius} outside [2, {MAX_ORACLE_RADIUS}]")
    })?;
    check(scan.0 > 1.0 && scan.1 > scan.0 && scan.1 < 2.0, || {
        format!("scan interval ({}, {}) must lie in (1, 2)", scan.0, scan.1)
    })?;
    check((2..=100_000).contains(&scan_grid), || {
        format!("scan grid {scan_grid} outside 2..=100000")
    })?;

    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut max_gap: f64 = 0.0;
    for k in 0..grid {
        let s = if grid == 1 {
            s_min
        } else {
            s_min + (s_max - s_min) * k as f64 / (grid - 1) as f64
        };
        let (phi, formula, oracle, gap, flag) = match phi_aa(s, level) {
            Err(Error::Pole(_)) => (None, None, None, None, "POLE"),
            Err(e) => return Err(e.into()),
            Ok(phi) => {
                let formula = lattice_sum_closed_form(s, level)?;
                if s > 2.0 {
                    let oracle = lattice_sum_extrapolated(s, level, radius)?;
                    let gap = (oracle / formula - 1.0).abs();
                    max_gap = max_gap.max(gap);
                    let flag = if gap < GAP_TOLERANCE { "ok" } else { "GAP" };
                    (Some(phi), Some(formula), Some(oracle), Some(gap), flag)
                } else {
                    (Some(phi), Some(formula), None, None, "no-oracle")
                }
            }
        };
        let cell = |x: Option<f64>| x.map_or(String::new(), num);
        rows.push(vec![
            num(s),
            cell(phi),
            cell(formula),
            cell(oracle),
            cell(gap),
            flag.to_string(),
        ]);
        json_rows.push(json!({ "s": s, "phi": phi, "formula": formula, "oracle": oracle, "relgap": gap, "flag": flag }));
    }
    let poles = pole_scan(level, scan, scan_grid)?;
    let gaps_ok = max_gap < GAP_TOLERANCE;
    let verdict = if poles.poles.is_empty() {
        "no poles"
    } else {
        "poles found"
    };
    Ok(Report {
        json: json!({
            "level": level,
            "oracle_radius": radius,
            "rows": Value::Array(json_rows),
            "max_relgap": max_gap,
            "pole_scan": { "interval": [scan.0, scan.1], "grid": scan_grid, "poles": poles.poles, "verdict": verdict },
        }),
        csv_header: vec!["s", "phi", "formula", "oracle", "relgap", "flag"],
        csv_rows: rows,
        extra: Vec::new(),
        pass: gaps_ok && poles.poles.is_empty(),
    })
}
