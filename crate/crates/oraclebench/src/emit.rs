//! CSV and JSON output.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::ExperimentResult;
use crate::infobounds::BoundReport;

pub const CSV_HEADER: &str =
    "horizon,mean_err,max_err,p_err,p_mismatch,mi_nats,mi_lo,mi_hi,ir_upper_nats,fano_lower_nats";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn csv_string(result: &ExperimentResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &result.rows {
        let fields = [
            r.mean_err,
            r.max_err,
            r.p_err,
            r.p_mismatch,
            r.mi.plugin,
            r.mi_lo,
            r.mi_hi,
            r.ir_upper,
            r.fano_lower,
        ];
        out.push_str(&r.horizon.to_string());
        for f in fields {
            out.push(',');
            out.push_str(&fmt_f64(f));
        }
        out.push('\n');
    }
    out
}

pub fn json_string(reports: &[BoundReport]) -> Result<String> {
    serde_json::to_string_pretty(reports)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Io(format!("serializing bound reports: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

/// Writes `{stem}_{seed}.csv` and/or `{stem}_{seed}.json` under `dir`.
pub fn write_outputs(
    dir: &Path,
    stem: &str,
    seed: u64,
    format: Format,
    result: Option<&ExperimentResult>,
    reports: &[BoundReport],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let mut put = |ext: &str, body: String| -> Result<()> {
        let path = dir.join(format!("{stem}_{seed}.{ext}"));
        fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
        Ok(())
    };
    if format.csv() {
        if let Some(r) = result {
            put("csv", csv_string(r))?;
        }
    }
    if format.json() {
        put("json", json_string(reports)?)?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_result_is_header_only() {
        let r = ExperimentResult {
            hypotheses: 2,
            trials: 30,
            rows: vec![],
        };
        assert_eq!(csv_string(&r), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.426_015_131_959_808_6, 1e-300, 123_456.789] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}
