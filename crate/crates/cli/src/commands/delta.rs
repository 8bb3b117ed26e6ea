use octacover_core::geometry::{
    estimate_delta, estimate_delta_default, orbit_ball, prop_main_bounds, OrbitGroup,
    DELTA_APOLLONIAN, DELTA_BIN,
};
use octacover_core::Point3;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::check;
use crate::config::{is_false, Context};
use crate::output::{num, Report};
use crate::CliError;

#[derive(clap::Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Args {
    /// ap, sa or inf.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word_len: Option<usize>,
    /// Base point as x,y,t.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    /// Adds the main-bound constants to the report.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "is_false")]
    pub bounds: bool,
}

pub fn run(args: &Args, _ctx: &Context) -> Result<Report, CliError> {
    let group: OrbitGroup = args.group.as_deref().unwrap_or("ap").parse()?;
    let default_len = match group {
        OrbitGroup::Apollonian => 14,
        _ => 10,
    };
    let len = args.word_len.unwrap_or(default_len);
    let base = args.base.clone().unwrap_or_else(|| vec![0.3, 0.4, 0.9]);
    check(base.len() == 3, || {
        format!("base point needs 3 coordinates, got {}", base.len())
    })?;
    let x0 = Point3::new(base[0], base[1], base[2])?;
    check(args.t_min.is_some() == args.t_max.is_some(), || {
        "give both t-min and t-max or neither".into()
    })?;
    let ball = orbit_ball(group, x0, len)?;
    let fit = match (args.t_min, args.t_max) {
        (Some(a), Some(b)) => estimate_delta(&ball, (a, b))?,
        _ => estimate_delta_default(&ball)?,
    };
    let reference = match group {
        OrbitGroup::Apollonian => Some(DELTA_APOLLONIAN),
        OrbitGroup::SuperApollonian => Some(2.0),
        OrbitGroup::Infilonian => None,
    };
    let bounds = if args.bounds {
        Some(prop_main_bounds(DELTA_APOLLONIAN)?)
    } else {
        None
    };
    let steps = (ball.radius / DELTA_BIN).floor() as usize;
    let rows = (0..=steps)
        .map(|k| {
            let t = k as f64 * DELTA_BIN;
            vec![num(t), ball.count_within(t).to_string()]
        })
        .collect();
    Ok(Report {
        json: json!({
            "group": group.as_str(),
            "word_length": len,
            "base": { "x": x0.x(), "y": x0.y(), "t": x0.t },
            "elements": ball.len(),
            "radius": ball.radius,
            "saturation": ball.saturation,
            "fit": fit,
            "estimate": fit.slope,
            "reference": reference,
            "bounds": bounds,
        }),
        csv_header: vec!["t", "count"],
        csv_rows: rows,
        extra: Vec::new(),
        pass: true,
    })
}
