use octacover_core::group::{standard_table, GeneratorName};
use octacover_core::verify::verify_group;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::Context;
use crate::output::Report;
use crate::CliError;

#[derive(clap::Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Args {
    /// Replaces one generator by the next one in the table before checking.
    #[arg(long, hide = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrupt: Option<String>,
}

pub fn run(args: &Args, _ctx: &Context) -> Result<Report, CliError> {
    let table = match &args.corrupt {
        None => standard_table().clone(),
        Some(name) => {
            let g: GeneratorName = name
                .parse()
                .map_err(|e: octacover_core::Error| CliError::Invalid(e.to_string()))?;
            let other = GeneratorName::ALL[(g.index() + 1) % 8];
            standard_table().with_override(g, standard_table().get(other).clone())
        }
    };
    let report = verify_group(&table);
    let rows = report
        .checks
        .iter()
        .map(|c| {
            let kind = serde_json::to_value(c.kind)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            vec![kind, c.name.clone(), c.passed.to_string()]
        })
        .collect();
    let first_failure = report.first_failure().map(|c| c.name.clone());
    if let Some(name) = &first_failure {
        eprintln!("FAIL: {name}");
    }
    Ok(Report {
        json: json!({
            "checks": report.checks,
            "octahedral_order": report.octahedral_order,
            "first_failure": first_failure,
            "verdict": if report.passed() { "PASS" } else { "FAIL" },
        }),
        csv_header: vec!["kind", "check", "passed"],
        csv_rows: rows,
        extra: Vec::new(),
        pass: report.passed(),
    })
}
