//! Rendering findings as human-readable text and machine-readable JSON.
//! Both formats are byte-deterministic for identical input.

use crate::rules::{registry, Category, Finding, ScanStats, Severity};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct RuleInventoryCounts {
    pub total: usize,
    pub traditional: usize,
    pub elixir_specific: usize,
    pub design_related: usize,
    pub low_level: usize,
}

impl RuleInventoryCounts {
    pub fn from_registry() -> RuleInventoryCounts {
        let rules = registry();
        let count = |cat: Category| rules.iter().filter(|r| r.category == cat).count();
        let traditional = count(Category::Traditional) + count(Category::TraditionalHistory);
        let design_related = count(Category::ElixirDesign);
        let low_level = count(Category::ElixirLowlevel);
        RuleInventoryCounts {
            total: rules.len(),
            traditional,
            elixir_specific: design_related + low_level,
            design_related,
            low_level,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub rule_inventory_counts: RuleInventoryCounts,
}

#[derive(Debug)]
pub struct Report {
    pub tool: ToolInfo,
    pub stats: ScanStats,
    pub findings: Vec<Finding>,
}

pub fn build_report(findings: Vec<Finding>, stats: ScanStats) -> Report {
    Report {
        tool: ToolInfo {
            name: "smelter",
            version: env!("CARGO_PKG_VERSION"),
            rule_inventory_counts: RuleInventoryCounts::from_registry(),
        },
        stats,
        findings,
    }
}

const RESET: &str = "\x1b[0m";

fn severity_color(severity: Severity) -> &'static str {
    match severity {
        Severity::Error => "\x1b[31m",
        Severity::Warning => "\x1b[33m",
        Severity::Info => "\x1b[36m",
    }
}

/// One line per finding, then a summary footer with per-severity counts.
pub fn render_text(report: &Report, color: bool) -> String {
    let mut out = String::new();
    for f in &report.findings {
        let sev = if color {
            format!(
                "{}{}{}",
                severity_color(f.severity),
                f.severity.as_str().to_uppercase(),
                RESET
            )
        } else {
            f.severity.as_str().to_uppercase()
        };
        out.push_str(&format!(
            "{}:{}:{}  {}  {}  {}\n",
            f.span.file, f.span.start_line, f.span.start_col, sev, f.rule_id, f.message
        ));
    }
    let errors = report
        .findings
        .iter()
        .filter(|f| f.severity == Severity::Error)
        .count();
    let warnings = report
        .findings
        .iter()
        .filter(|f| f.severity == Severity::Warning)
        .count();
    let infos = report
        .findings
        .iter()
        .filter(|f| f.severity == Severity::Info)
        .count();
    if !report.findings.is_empty() {
        out.push('\n');
    }
    out.push_str(&format!(
        "{} findings ({} errors, {} warnings, {} info), {} suppressed\n",
        report.findings.len(),
        errors,
        warnings,
        infos,
        report.stats.suppressed_count
    ));
    out.push_str(&format!(
        "scanned {} files, {} parse diagnostics\n",
        report.stats.files_scanned, report.stats.parse_diagnostics
    ));
    out
}

/// Fixed-shape JSON: top-level `tool`, `stats`, `findings[]`.
pub fn render_json(report: &Report) -> String {
    let findings: Vec<Value> = report.findings.iter().map(finding_json).collect();
    let value = serde_json::json!({
        "tool": {
            "name": report.tool.name,
            "version": report.tool.version,
            "rule_inventory_counts": {
                "total": report.tool.rule_inventory_counts.total,
                "traditional": report.tool.rule_inventory_counts.traditional,
                "elixir_specific": report.tool.rule_inventory_counts.elixir_specific,
                "design_related": report.tool.rule_inventory_counts.design_related,
                "low_level": report.tool.rule_inventory_counts.low_level,
            },
        },
        "stats": {
            "files_scanned": report.stats.files_scanned,
            "parse_diagnostics": report.stats.parse_diagnostics,
            "io_errors": report.stats.io_errors,
            "suppressed_count": report.stats.suppressed_count,
        },
        "findings": findings,
    });
    let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
    text.push('\n');
    text
}

fn finding_json(f: &Finding) -> Value {
    let mut target = serde_json::Map::new();
    target.insert("module".into(), Value::from(f.primary_target.module.clone()));
    let synthetic = f.primary_target.name.starts_with('(');
    if !synthetic {
        target.insert(
            "function".into(),
            Value::from(f.primary_target.name.clone()),
        );
        target.insert("arity".into(), Value::from(f.primary_target.arity));
    }
    let evidence: serde_json::Map<String, Value> = f
        .evidence
        .iter()
        .map(|(k, v)| {
            let val = match v {
                crate::rules::EvidenceValue::Int(x) => Value::from(*x),
                crate::rules::EvidenceValue::Float(x) => Value::from(*x),
                crate::rules::EvidenceValue::Str(x) => Value::from(x.clone()),
                crate::rules::EvidenceValue::Bool(x) => Value::from(*x),
            };
            (k.clone(), val)
        })
        .collect();
    serde_json::json!({
        "rule_id": f.rule_id,
        "severity": f.severity.as_str(),
        "confidence": match f.confidence {
            crate::rules::Confidence::Certain => "certain",
            crate::rules::Confidence::Heuristic => "heuristic",
        },
        "file": f.span.file,
        "start_line": f.span.start_line,
        "start_col": f.span.start_col,
        "end_line": f.span.end_line,
        "end_col": f.span.end_col,
        "target": Value::Object(target),
        "message": f.message,
        "evidence": Value::Object(evidence),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FunctionId;
    use crate::rules::{Confidence, EvidenceValue};
    use crate::span::SourceSpan;

    fn sample_finding() -> Finding {
        Finding::new(
            "EX1002",
            Severity::Warning,
            Confidence::Certain,
            SourceSpan::new("lib/a.ex", 3, 3, 5, 5),
            FunctionId {
                module: "A".into(),
                name: "f".into(),
                arity: 6,
            },
            "A.f/6 takes 6 parameters (limit 5)",
        )
        .with("param_count", EvidenceValue::Int(6))
    }

    #[test]
    fn empty_report_renders_footer_only() {
        let report = build_report(Vec::new(), ScanStats::default());
        let text = render_text(&report, false);
        assert!(text.starts_with("0 findings"));
        let json = render_json(&report);
        assert!(json.contains("\"findings\": []"));
        assert!(json.contains("\"total\": 29"));
        assert!(json.contains("\"traditional\": 11"));
        assert!(json.contains("\"elixir_specific\": 18"));
        assert!(json.contains("\"design_related\": 10"));
        assert!(json.contains("\"low_level\": 8"));
    }

    #[test]
    fn one_finding_renders_one_body_line() {
        let report = build_report(vec![sample_finding()], ScanStats::default());
        let text = render_text(&report, false);
        let body_lines: Vec<&str> = text.lines().take_while(|l| !l.is_empty()).collect();
        assert_eq!(body_lines.len(), 1);
        assert!(body_lines[0].starts_with("lib/a.ex:3:3  WARNING  EX1002"));
    }

    #[test]
    fn colorless_output_has_no_escapes() {
        let report = build_report(vec![sample_finding()], ScanStats::default());
        let text = render_text(&report, false);
        assert!(!text.contains('\x1b'));
        let colored = render_text(&report, true);
        assert!(colored.contains('\x1b'));
    }

    #[test]
    fn json_roundtrip_preserves_fields() {
        let report = build_report(vec![sample_finding()], ScanStats::default());
        let json = render_json(&report);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let f = &value["findings"][0];
        assert_eq!(f["rule_id"], "EX1002");
        assert_eq!(f["severity"], "warning");
        assert_eq!(f["confidence"], "certain");
        assert_eq!(f["file"], "lib/a.ex");
        assert_eq!(f["start_line"], 3);
        assert_eq!(f["end_col"], 5);
        assert_eq!(f["target"]["module"], "A");
        assert_eq!(f["target"]["function"], "f");
        assert_eq!(f["target"]["arity"], 6);
        assert_eq!(f["evidence"]["param_count"], 6);
        assert!(f["message"].as_str().unwrap().contains("parameters"));
    }

    #[test]
    fn identical_input_renders_identical_bytes() {
        let a = render_json(&build_report(vec![sample_finding()], ScanStats::default()));
        let b = render_json(&build_report(vec![sample_finding()], ScanStats::default()));
        assert_eq!(a, b);
    }
}
