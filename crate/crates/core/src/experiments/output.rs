use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::RNG_ALGORITHM;
use crate::TOOL_VERSION;

use super::runner::SweepResult;

/// Provenance comment lines (without the leading `# `): model, tool version,
/// RNG, seed and the complete spec in TOML form.
pub fn header_comments(result: &SweepResult) -> Vec<String> {
    let spec = &result.spec;
    let mut out = vec![format!(
        "sweep={} model={} tool={} rng={} master_seed={}",
        spec.name,
        spec.model.kind(),
        TOOL_VERSION,
        RNG_ALGORITHM,
        spec.master_seed
    )];
    out.push("spec:".into());
    out.extend(spec.to_toml().lines().map(|l| format!("  {l}")));
    out
}

/// Column names: `series`, the swept parameter, analytic metrics,
/// `<metric>_mean` and `<metric>_sd` per simulated metric, `replicates`,
/// `flags`.
pub fn csv_columns(result: &SweepResult) -> Vec<String> {
    let mut cols = vec!["series".to_string(), result.spec.sweep.param.clone()];
    cols.extend(result.analytic_columns.iter().map(|c| c.to_string()));
    for c in &result.simulated_columns {
        cols.push(format!("{c}_mean"));
        cols.push(format!("{c}_sd"));
    }
    cols.push("replicates".into());
    cols.push("flags".into());
    cols
}

fn number(x: Option<f64>) -> String {
    match x {
        None => String::new(),
        Some(v) if v == f64::INFINITY => "inf".into(),
        Some(v) => format!("{v}"),
    }
}

pub fn to_csv(result: &SweepResult) -> String {
    let mut out: String = header_comments(result).iter().map(|c| format!("# {c}\n")).collect();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(csv_columns(result)).expect("in-memory CSV write");
    for row in &result.rows {
        let mut rec = vec![row.series.clone(), format!("{}", row.x)];
        rec.extend(row.analytic.iter().map(|v| number(*v)));
        for s in &row.simulated {
            rec.push(number(s.mean));
            rec.push(number(s.sd));
        }
        rec.push(row.replicates.to_string());
        rec.push(row.flags.join("; "));
        w.write_record(&rec).expect("in-memory CSV write");
    }
    let bytes = w.into_inner().expect("in-memory CSV flush");
    out.push_str(&String::from_utf8(bytes).expect("CSV fields are UTF-8"));
    out
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    fs::write(path, to_csv(result)).map_err(|e| Error::io(path, e))
}
