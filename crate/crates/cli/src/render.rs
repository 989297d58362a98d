//! Report assembly and the three output formats.
//!
//! Every command produces a `Report`: a versioned envelope holding the
//! command echo, timing, engine version and a typed result payload.  JSON
//! output serializes the whole report; human and CSV output render just
//! the payload.

use std::collections::BTreeMap;
use std::io::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use zerosum_core::cache::CacheEntry;
use zerosum_core::constants::{ConstantResult, PartialBounds};
use zerosum_core::engine::Witness;
use zerosum_core::extremal::ExtremalEnumeration;
use zerosum_core::verify::{CheckReport, Verdict};
use zerosum_core::Error;

use crate::Format;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct CommandEcho {
    pub name: &'static str,
    pub args: BTreeMap<String, String>,
}

pub enum Output {
    Check {
        n: u32,
        a: String,
        b: String,
        mode: String,
        sequence: Vec<u32>,
        witness: Option<Witness>,
    },
    ConstantDone {
        result: ConstantResult,
        from_cache: bool,
    },
    ConstantBudget {
        bounds: PartialBounds,
    },
    Extremal(ExtremalEnumeration),
    Verify {
        reports: Vec<CheckReport>,
    },
    CacheList {
        path: String,
        entries: Vec<CacheEntry>,
    },
    CacheCleared {
        path: String,
        removed: usize,
    },
    CachePath {
        path: String,
    },
}

impl Output {
    pub fn exit_code(&self) -> u8 {
        match self {
            Output::ConstantBudget { .. } => 3,
            Output::Verify { reports } => {
                if reports.iter().any(|r| r.verdict == Verdict::Fail) {
                    1
                } else {
                    0
                }
            }
            _ => 0,
        }
    }

    fn to_value(&self) -> Value {
        match self {
            Output::Check {
                n,
                a,
                b,
                mode,
                sequence,
                witness,
            } => {
                let witness_value = witness.as_ref().map(witness_value);
                json!({
                    "type": "check",
                    "n": n,
                    "a": a,
                    "b": b,
                    "mode": mode,
                    "sequence": sequence,
                    "found": witness.is_some(),
                    "witness": witness_value,
                })
            }
            Output::ConstantDone { result, from_cache } => json!({
                "type": "constant",
                "verdict": "COMPLETE",
                "from_cache": from_cache,
                "constant": result,
            }),
            Output::ConstantBudget { bounds } => json!({
                "type": "constant",
                "verdict": "BUDGET",
                "bounds": bounds,
            }),
            Output::Extremal(enumeration) => {
                let mut value = serde_json::to_value(enumeration).expect("serializable");
                value
                    .as_object_mut()
                    .expect("object")
                    .insert("type".to_string(), json!("extremal"));
                value
            }
            Output::Verify { reports } => {
                let (mut pass, mut fail, mut skipped) = (0u32, 0u32, 0u32);
                for report in reports {
                    match report.verdict {
                        Verdict::Pass => pass += 1,
                        Verdict::Fail => fail += 1,
                        Verdict::SkippedBudget => skipped += 1,
                    }
                }
                json!({
                    "type": "verify",
                    "summary": { "pass": pass, "fail": fail, "skipped_budget": skipped },
                    "reports": reports,
                })
            }
            Output::CacheList { path, entries } => json!({
                "type": "cache",
                "action": "list",
                "path": path,
                "entries": entries,
            }),
            Output::CacheCleared { path, removed } => json!({
                "type": "cache",
                "action": "clear",
                "path": path,
                "removed": removed,
            }),
            Output::CachePath { path } => json!({
                "type": "cache",
                "action": "path",
                "path": path,
            }),
        }
    }
}

/// Witness payload with the 1-based positions used in all output.
fn witness_value(witness: &Witness) -> Value {
    let indices: Vec<usize> = witness.indices.iter().map(|i| i + 1).collect();
    json!({
        "indices": indices,
        "a_coeffs": witness.a_coeffs,
        "b_coeffs": witness.b_coeffs,
    })
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub engine: &'static str,
    pub command: CommandEcho,
    pub timing_ms: u64,
    pub result: Value,
    #[serde(skip)]
    output: Output,
}

impl Report {
    pub fn new(command: CommandEcho, output: Output, timing_ms: u64) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            engine: zerosum_core::ENGINE_VERSION,
            command,
            timing_ms,
            result: output.to_value(),
            output,
        }
    }
}

pub fn emit(report: &Report, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report)
                .map_err(|err| Error::Internal(format!("serializing report: {err}")))?;
            println!("{text}");
            Ok(())
        }
        Format::Human => {
            emit_human(report);
            Ok(())
        }
        Format::Csv => emit_csv(report),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn verdict_code(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::SkippedBudget => "SKIPPED_BUDGET",
    }
}

fn method_value(result: &ConstantResult) -> String {
    serde_json::to_value(result.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn emit_human(report: &Report) {
    match &report.output {
        Output::Check {
            n,
            a,
            b,
            mode,
            sequence,
            witness,
        } => {
            println!(
                "sequence ({}) over Z/{n}, A={a}, B={b}, mode {mode}",
                join(sequence)
            );
            match witness {
                Some(w) => {
                    let positions: Vec<usize> = w.indices.iter().map(|i| i + 1).collect();
                    println!("qualifying subsequence: yes");
                    println!("  positions (1-based): {}", join(&positions));
                    println!("  a-coefficients: {}", join(&w.a_coeffs));
                    if w.b_coeffs.is_empty() {
                        println!("  b-coefficients: all zero");
                    } else {
                        println!("  b-coefficients: {}", join(&w.b_coeffs));
                    }
                }
                None => println!("qualifying subsequence: no"),
            }
        }
        Output::ConstantDone { result, from_cache } => {
            let cached = if *from_cache { "  (cached)" } else { "" };
            println!(
                "{}(A={}, B={}) over Z/{} = {}   [{}]{cached}",
                result.kind, result.a, result.b, result.n, result.value,
                method_value(result)
            );
            println!(
                "extremal witness (length {}): {}",
                result.witness_extremal.len(),
                result.witness_extremal
            );
            let examined: u64 = result.checked_lengths.iter().map(|c| c.examined).sum();
            println!(
                "scanned lengths {}..={}, {examined} sequences examined",
                result.checked_lengths.first().map_or(1, |c| c.length),
                result.checked_lengths.last().map_or(1, |c| c.length),
            );
        }
        Output::ConstantBudget { bounds } => {
            println!(
                "{}(A={}, B={}) over Z/{}: BUDGET EXHAUSTED",
                bounds.kind, bounds.a, bounds.b, bounds.n
            );
            println!(
                "certified bounds: {} <= {} <= {}",
                bounds.lower_bound, bounds.kind, bounds.upper_bound
            );
            if let Some(cex) = &bounds.last_counterexample {
                println!("last counterexample (length {}): {}", cex.len(), cex);
            }
        }
        Output::Extremal(e) => {
            println!(
                "{}-extremal sequences over Z/{} (A={}, B={}): value {}, extremal length {}",
                e.kind,
                e.n,
                e.a,
                e.b,
                e.value,
                e.value - 1
            );
            println!(
                "{} class(es) under {}:",
                e.classes.len(),
                e.relation
            );
            for class in &e.classes {
                println!(
                    "  {}  orbit size {}",
                    class.canonical, class.orbit_size
                );
            }
            if let Some(warning) = &e.warning {
                println!("warning: {warning}");
            }
        }
        Output::Verify { reports } => {
            let (mut pass, mut fail, mut skipped) = (0u32, 0u32, 0u32);
            for row in reports {
                match row.verdict {
                    Verdict::Pass => pass += 1,
                    Verdict::Fail => fail += 1,
                    Verdict::SkippedBudget => skipped += 1,
                }
                let mut line = format!(
                    "{:<14} {:<18} n={:<2} {:>6} ms",
                    verdict_code(row.verdict),
                    row.check_id,
                    row.n,
                    row.elapsed_ms
                );
                if let Some(detail) = &row.detail {
                    line.push_str("  ");
                    line.push_str(detail);
                }
                if let Some(evidence) = &row.evidence {
                    line.push_str("  evidence: ");
                    line.push_str(&evidence.to_string());
                }
                println!("{line}");
            }
            println!(
                "{} check rows: {pass} PASS, {fail} FAIL, {skipped} SKIPPED_BUDGET",
                reports.len()
            );
        }
        Output::CacheList { path, entries } => {
            println!("cache: {path} ({} entries)", entries.len());
            for entry in entries {
                println!(
                    "  {} n={} A={} B={} value={} method={} engine={}",
                    entry.result.kind,
                    entry.result.n,
                    entry.result.a,
                    entry.result.b,
                    entry.result.value,
                    method_value(&entry.result),
                    entry.engine
                );
            }
        }
        Output::CacheCleared { path, removed } => {
            println!("removed {removed} entries from {path}");
        }
        Output::CachePath { path } => {
            println!("{path}");
        }
    }
}

fn emit_csv(report: &Report) -> Result<(), Error> {
    let stdout = std::io::stdout();
    let mut writer = csv::Writer::from_writer(stdout.lock());
    let csv_err =
        |err: csv::Error| Error::Internal(format!("writing csv: {err}"));
    match &report.output {
        Output::Check {
            n,
            a,
            b,
            mode,
            sequence,
            witness,
        } => {
            writer
                .write_record(["n", "A", "B", "mode", "seq", "found", "indices", "a_coeffs", "b_coeffs"])
                .map_err(csv_err)?;
            let (found, indices, a_coeffs, b_coeffs) = match witness {
                Some(w) => {
                    let positions: Vec<usize> = w.indices.iter().map(|i| i + 1).collect();
                    (
                        "yes",
                        join(&positions),
                        join(&w.a_coeffs),
                        join(&w.b_coeffs),
                    )
                }
                None => ("no", String::new(), String::new(), String::new()),
            };
            writer
                .write_record([
                    &n.to_string(),
                    a,
                    b,
                    mode,
                    &join(sequence),
                    found,
                    &indices,
                    &a_coeffs,
                    &b_coeffs,
                ])
                .map_err(csv_err)?;
        }
        Output::ConstantDone { result, .. } => {
            writer
                .write_record(["kind", "n", "A", "B", "value", "method"])
                .map_err(csv_err)?;
            writer
                .write_record([
                    result.kind.code(),
                    &result.n.to_string(),
                    &result.a,
                    &result.b,
                    &result.value.to_string(),
                    &method_value(result),
                ])
                .map_err(csv_err)?;
        }
        Output::ConstantBudget { bounds } => {
            writer
                .write_record(["kind", "n", "A", "B", "value", "method"])
                .map_err(csv_err)?;
            writer
                .write_record([
                    bounds.kind.code(),
                    &bounds.n.to_string(),
                    &bounds.a,
                    &bounds.b,
                    &format!("{}..{}", bounds.lower_bound, bounds.upper_bound),
                    "BUDGET",
                ])
                .map_err(csv_err)?;
        }
        Output::Extremal(e) => {
            writer
                .write_record(["kind", "n", "A", "B", "relation", "value", "canonical", "orbit_size"])
                .map_err(csv_err)?;
            for class in &e.classes {
                writer
                    .write_record([
                        e.kind.code(),
                        &e.n.to_string(),
                        &e.a,
                        &e.b,
                        e.relation.code(),
                        &e.value.to_string(),
                        &join(class.canonical.terms()),
                        &class.orbit_size.to_string(),
                    ])
                    .map_err(csv_err)?;
            }
        }
        Output::Verify { reports } => {
            writer
                .write_record(["check_id", "n", "verdict", "elapsed_ms", "detail"])
                .map_err(csv_err)?;
            for row in reports {
                writer
                    .write_record([
                        row.check_id.as_str(),
                        &row.n.to_string(),
                        verdict_code(row.verdict),
                        &row.elapsed_ms.to_string(),
                        row.detail.as_deref().unwrap_or(""),
                    ])
                    .map_err(csv_err)?;
            }
        }
        Output::CacheList { entries, .. } => {
            writer
                .write_record(["engine", "kind", "n", "A", "B", "value", "method"])
                .map_err(csv_err)?;
            for entry in entries {
                writer
                    .write_record([
                        entry.engine.as_str(),
                        entry.result.kind.code(),
                        &entry.result.n.to_string(),
                        &entry.result.a,
                        &entry.result.b,
                        &entry.result.value.to_string(),
                        &method_value(&entry.result),
                    ])
                    .map_err(csv_err)?;
            }
        }
        Output::CacheCleared { path, removed } => {
            writer
                .write_record(["action", "path", "removed"])
                .map_err(csv_err)?;
            writer
                .write_record(["clear", path, &removed.to_string()])
                .map_err(csv_err)?;
        }
        Output::CachePath { path } => {
            writer.write_record(["action", "path"]).map_err(csv_err)?;
            writer.write_record(["path", path]).map_err(csv_err)?;
        }
    }
    writer
        .flush()
        .map_err(|err| Error::Internal(format!("flushing csv: {err}")))?;
    let _ = std::io::stdout().flush();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use zerosum_core::constants::ConstantKind;
    use zerosum_core::residue::Modulus;
    use zerosum_core::sequence::Sequence;

    fn row(verdict: Verdict) -> CheckReport {
        CheckReport {
            check_id: "fabricated".to_string(),
            n: 4,
            verdict,
            evidence: None,
            detail: None,
            elapsed_ms: 0,
        }
    }

    #[test]
    fn verify_exits_1_only_when_a_row_fails() {
        let all_green = Output::Verify {
            reports: vec![row(Verdict::Pass), row(Verdict::SkippedBudget)],
        };
        assert_eq!(all_green.exit_code(), 0);
        let one_red = Output::Verify {
            reports: vec![row(Verdict::Pass), row(Verdict::Fail)],
        };
        assert_eq!(one_red.exit_code(), 1);
    }

    #[test]
    fn budget_exhaustion_exits_3() {
        let m = Modulus::new(6).unwrap();
        let bounds = PartialBounds {
            kind: ConstantKind::C,
            n: 6,
            a: "{1}".to_string(),
            b: "{1}".to_string(),
            lower_bound: 30,
            upper_bound: 36,
            last_counterexample: Some(Sequence::new(m, vec![0, 1])),
            checked_lengths: Vec::new(),
        };
        assert_eq!(Output::ConstantBudget { bounds }.exit_code(), 3);
        assert_eq!(Output::CachePath { path: String::new() }.exit_code(), 0);
    }
}
