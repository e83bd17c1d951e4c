//! Report writing: every run produces its task CSV(s), a `summary.json`
//! with the full results block, and a `manifest.json` tying the outputs to
//! the configuration hash and seed. Timestamps appear only in the manifest,
//! so CSV and summary bytes are reproducible run to run.

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::SCHEMA_VERSION;
use crate::tasks::TaskOutput;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_PARTIAL: u8 = 3;

/// Map a finished task to the process exit code: violations dominate,
/// then partial results, then success.
pub fn exit_code(out: &TaskOutput) -> u8 {
    if out.any_violated {
        EXIT_VIOLATION
    } else if out.partial {
        EXIT_PARTIAL
    } else {
        EXIT_OK
    }
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write all report files for one finished run; returns the file names.
pub fn write_reports(
    dir: &Path,
    command: &str,
    config: &Value,
    graph_label: Option<&str>,
    master_seed: u64,
    out: &TaskOutput,
) -> Result<Vec<String>> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let mut written = Vec::new();

    fs::write(dir.join(out.csv.name), out.csv.body())
        .with_context(|| format!("cannot write {}", out.csv.name))?;
    written.push(out.csv.name.to_string());
    if let Some(extra) = &out.extra_csv {
        fs::write(dir.join(extra.name), extra.body())
            .with_context(|| format!("cannot write {}", extra.name))?;
        written.push(extra.name.to_string());
    }

    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "graph": graph_label,
        "config": config,
        "results": out.results,
        "any_violated": out.any_violated,
        "partial": out.partial,
        "exit_code": exit_code(out),
    });
    let mut summary_text =
        serde_json::to_string_pretty(&summary).context("summary serialization")?;
    summary_text.push('\n');
    fs::write(dir.join("summary.json"), summary_text).context("cannot write summary.json")?;
    written.push("summary.json".into());

    let created = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let config_text = serde_json::to_string(config).context("config serialization")?;
    let manifest = json!({
        "schema_version": SCHEMA_VERSION,
        "config_sha256": sha256_hex(&config_text),
        "master_seed": master_seed,
        "tool": {"name": "range-lab", "version": env!("CARGO_PKG_VERSION")},
        "created_unix": created,
    });
    let mut manifest_text =
        serde_json::to_string_pretty(&manifest).context("manifest serialization")?;
    manifest_text.push('\n');
    fs::write(dir.join("manifest.json"), manifest_text).context("cannot write manifest.json")?;
    written.push("manifest.json".into());

    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tasks::CsvFile;

    #[test]
    fn reports_land_in_the_output_directory() {
        let dir = tempfile::tempdir().unwrap();
        let out = TaskOutput {
            csv: CsvFile { name: "verify.csv", header: "a,b", rows: vec!["1,2".into()] },
            extra_csv: None,
            results: json!({"ok": true}),
            any_violated: false,
            partial: false,
        };
        let config = json!({"schema_version": 1});
        let written =
            write_reports(dir.path(), "run", &config, Some("line"), 7, &out).unwrap();
        assert_eq!(written, vec!["verify.csv", "summary.json", "manifest.json"]);

        let csv = fs::read_to_string(dir.path().join("verify.csv")).unwrap();
        assert_eq!(csv, "a,b\n1,2\n");
        let summary: Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
                .unwrap();
        assert_eq!(summary["exit_code"], 0);
        assert_eq!(summary["graph"], "line");
        let manifest: Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap())
                .unwrap();
        assert_eq!(manifest["master_seed"], 7);
        assert_eq!(manifest["config_sha256"].as_str().unwrap().len(), 64);
    }

    #[test]
    fn exit_codes_rank_violation_over_partial() {
        let mut out = TaskOutput {
            csv: CsvFile { name: "x.csv", header: "h", rows: vec![] },
            extra_csv: None,
            results: Value::Null,
            any_violated: false,
            partial: false,
        };
        assert_eq!(exit_code(&out), EXIT_OK);
        out.partial = true;
        assert_eq!(exit_code(&out), EXIT_PARTIAL);
        out.any_violated = true;
        assert_eq!(exit_code(&out), EXIT_VIOLATION);
    }
}
