use std::path::PathBuf;

use octacover_core::covers::{
    dual_graph, graph_lambda1, is_connected, sample_cover, switching_walk, tangle_free_radius,
    two_cover_spectra, Signing,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::check;
use crate::config::Context;
use crate::output::{num, Report};
use crate::CliError;

pub const MAX_N: usize = 1000;
pub const MAX_STEPS: usize = 100_000;

#[derive(clap::Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Args {
    /// Half the number of sheets; the cover has degree 2n.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Length of the switching walk (0 skips it).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_steps: Option<usize>,
    /// Starting signing: plus or random.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bin_width: Option<f64>,
    /// Writes the walk histogram as CSV.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram_out: Option<PathBuf>,
    /// Writes the signed edge list as CSV.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges_out: Option<PathBuf>,
}

pub fn run(args: &Args, ctx: &Context) -> Result<Report, CliError> {
    let seed = ctx.require_seed("cover")?;
    let n = args
        .n
        .ok_or_else(|| CliError::Invalid("cover needs --n".into()))?;
    check((1..=MAX_N).contains(&n), || {
        format!("n = {n} outside 1..={MAX_N}")
    })?;
    let steps = args.walk_steps.unwrap_or(0);
    check(steps <= MAX_STEPS, || {
        format!("walk of {steps} steps exceeds {MAX_STEPS}")
    })?;
    let start = args.start.as_deref().unwrap_or("plus");
    check(matches!(start, "plus" | "random"), || {
        format!("start must be plus or random, got '{start}'")
    })?;
    let bin_width = args.bin_width.unwrap_or(0.01);
    check(bin_width > 0.0 && bin_width.is_finite(), || {
        format!("bin width {bin_width} must be positive")
    })?;
    check(args.histogram_out.is_none() || steps > 0, || {
        "histogram-out needs walk-steps > 0".into()
    })?;

    let presentation = sample_cover(n, seed)?;
    let g = dual_graph(&presentation);
    let connected = is_connected(&g);
    let lambda1 = if g.vertices >= 2 {
        Some(graph_lambda1(&g)?)
    } else {
        None
    };
    let signing = match start {
        "plus" => Signing::all_plus(&g),
        _ => Signing::random(&g, &mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(1))),
    };
    let spectra = two_cover_spectra(&g, &signing)?;
    let walk = if steps > 0 {
        Some(switching_walk(&g, &signing, steps, seed, bin_width)?)
    } else {
        None
    };

    let mut extra = Vec::new();
    if let (Some(path), Some(w)) = (&args.histogram_out, &walk) {
        let rows = w
            .histogram
            .iter()
            .map(|(b, c)| vec![num(*b), c.to_string()])
            .collect();
        extra.push((path.clone(), vec!["bin_start", "count"], rows));
    }
    if let Some(path) = &args.edges_out {
        let rows = g
            .edges
            .iter()
            .zip(signing.signs())
            .map(|(e, s)| {
                vec![
                    e.u.to_string(),
                    e.v.to_string(),
                    e.color.to_string(),
                    s.to_string(),
                ]
            })
            .collect();
        extra.push((path.clone(), vec!["u", "v", "color", "sign"], rows));
    }
    let (csv_header, csv_rows) = match &walk {
        Some(w) => (
            vec!["step", "edge", "signing_hash", "lambda1"],
            w.lambda1_series
                .iter()
                .enumerate()
                .map(|(k, l)| {
                    let edge = if k == 0 {
                        String::new()
                    } else {
                        w.edges[k - 1].to_string()
                    };
                    vec![
                        k.to_string(),
                        edge,
                        format!("{:016x}", w.fingerprints[k]),
                        num(*l),
                    ]
                })
                .collect(),
        ),
        None => (
            vec!["u", "v", "color", "sign"],
            g.edges
                .iter()
                .zip(signing.signs())
                .map(|(e, s)| {
                    vec![
                        e.u.to_string(),
                        e.v.to_string(),
                        e.color.to_string(),
                        s.to_string(),
                    ]
                })
                .collect(),
        ),
    };
    let walk_json = walk.as_ref().map(|w| {
        json!({
            "n": w.n,
            "seed": w.seed,
            "steps": w.steps,
            "lambda1_series": w.lambda1_series,
            "signing_hashes": w.fingerprints.iter().map(|h| format!("{h:016x}")).collect::<Vec<_>>(),
            "histogram": w.histogram.iter().map(|(b, c)| json!({ "bin_start": b, "count": c })).collect::<Vec<_>>(),
            "bin_width": w.bin_width,
            "distinct_values": w.distinct_values(),
        })
    });
    Ok(Report {
        json: json!({
            "n": n,
            "seed": seed,
            "vertices": g.vertices,
            "edges": g.edges.len(),
            "connected": connected,
            "tangle_free_radius": tangle_free_radius(&g),
            "lambda1": lambda1,
            "two_cover": {
                "start": start,
                "signing_hash": format!("{:016x}", signing.fingerprint()),
                "new_top": spectra.new.first(),
                "cover_lambda1": spectra.cover_lambda1(),
            },
            "walk": walk_json,
        }),
        csv_header,
        csv_rows,
        extra,
        pass: true,
    })
}
