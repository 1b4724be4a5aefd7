use super::*;
use crate::model::tests::project_from;

// ---------------------------------------------------------------------
// Config loading
// ---------------------------------------------------------------------

#[test]
fn absent_config_is_all_defaults() {
    let config = load_config(None).unwrap();
    assert!(RULE_IDS.iter().all(|id| config.is_enabled(id)));
    assert_eq!(config.fail_level, Severity::Warning);
    assert!(config.tolerant);
    assert_eq!(config.int("EX1002", "max_params"), 5);
}

#[test]
fn disabling_one_rule_keeps_the_rest() {
    let config = load_config_str(r#"{"rules":{"EX1101":{"enabled":false}}}"#).unwrap();
    assert!(!config.is_enabled("EX1101"));
    assert!(config.is_enabled("EX1102"));
    assert_eq!(config.int("EX1002", "max_params"), 5);
}

#[test]
fn unknown_rule_is_rejected() {
    let err = load_config_str(r#"{"rules":{"NOPE":{}}}"#).unwrap_err();
    assert!(matches!(err, ConfigError::UnknownRule(id) if id == "NOPE"));
}

#[test]
fn unknown_param_is_rejected() {
    let err =
        load_config_str(r#"{"rules":{"EX1002":{"params":{"max_foo":1}}}}"#).unwrap_err();
    assert!(
        matches!(err, ConfigError::UnknownParam { rule, param } if rule == "EX1002" && param == "max_foo")
    );
}

#[test]
fn param_type_mismatch_is_rejected() {
    let err = load_config_str(r#"{"rules":{"EX1002":{"params":{"max_params":"five"}}}}"#)
        .unwrap_err();
    assert!(matches!(err, ConfigError::TypeMismatch { .. }));
    let err = load_config_str(r#"{"rules":{"EX1002":{"params":{"max_params":5.5}}}}"#)
        .unwrap_err();
    assert!(matches!(err, ConfigError::TypeMismatch { .. }));
}

#[test]
fn unknown_top_level_key_is_rejected() {
    let err = load_config_str(r#"{"fial_level":"warning"}"#).unwrap_err();
    assert!(matches!(err, ConfigError::UnknownKey(k) if k == "fial_level"));
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let err = load_config_str("{\n  \"fail_level\": oops\n}").unwrap_err();
    assert!(matches!(err, ConfigError::Parse { line: 2, .. }));
}

#[test]
fn overrides_apply() {
    let config = load_config_str(
        r#"{"fail_level":"error","rules":{"EX1002":{"severity":"info","params":{"max_params":7}}}}"#,
    )
    .unwrap();
    assert_eq!(config.fail_level, Severity::Error);
    assert_eq!(config.severity("EX1002"), Severity::Info);
    assert_eq!(config.int("EX1002", "max_params"), 7);
}

#[test]
fn materialized_config_reloads_identically() {
    let config = AnalysisConfig::default();
    let json = config.to_json();
    let reloaded = load_config_str(&json).unwrap();
    assert_eq!(reloaded.to_json(), json);
}

// ---------------------------------------------------------------------
// Suppressions
// ---------------------------------------------------------------------

fn finding_at(file: &str, line: u32, rule: &str) -> Finding {
    Finding::new(
        rule,
        Severity::Warning,
        Confidence::Certain,
        crate::span::SourceSpan::new(file, line, 1, line, 10),
        module_target("M"),
        "test finding",
    )
}

#[test]
fn directive_on_previous_line_suppresses() {
    let project = project_from(&[(
        "a.ex",
        "defmodule M do\n  # smelter:disable EX1102\n  def f, do: :ok\nend\n",
    )]);
    let outcome = apply_suppressions(
        vec![finding_at("a.ex", 3, "EX1102")],
        project.files(),
    );
    assert!(outcome.findings.is_empty());
    assert_eq!(outcome.suppressed_count, 1);
}

#[test]
fn no_directives_is_identity() {
    let project = project_from(&[("a.ex", "defmodule M do\n  def f, do: :ok\nend\n")]);
    let outcome = apply_suppressions(vec![finding_at("a.ex", 2, "EX1003")], project.files());
    assert_eq!(outcome.findings.len(), 1);
    assert_eq!(outcome.suppressed_count, 0);
}

#[test]
fn directive_for_other_rule_keeps_finding() {
    let project = project_from(&[(
        "a.ex",
        "defmodule M do\n  # smelter:disable EX1101\n  def f, do: :ok\nend\n",
    )]);
    let outcome = apply_suppressions(vec![finding_at("a.ex", 3, "EX1102")], project.files());
    assert_eq!(outcome.findings.len(), 1);
}

#[test]
fn same_line_directive_suppresses_and_lists_parse() {
    let project = project_from(&[(
        "a.ex",
        "defmodule M do\n  def f, do: :ok # smelter:disable EX1003,EX1002\nend\n",
    )]);
    let outcome = apply_suppressions(
        vec![finding_at("a.ex", 2, "EX1003"), finding_at("a.ex", 2, "EX1002")],
        project.files(),
    );
    assert!(outcome.findings.is_empty());
    assert_eq!(outcome.suppressed_count, 2);
}

#[test]
fn malformed_directive_diagnoses() {
    let project = project_from(&[(
        "a.ex",
        "defmodule M do\n  # smelter:disable\n  def f, do: :ok\nend\n",
    )]);
    let outcome = apply_suppressions(vec![finding_at("a.ex", 3, "EX1003")], project.files());
    assert_eq!(outcome.findings.len(), 1);
    assert_eq!(outcome.diagnostics.len(), 1);
}

// ---------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------

#[test]
fn empty_project_scans_clean() {
    let dir = std::env::temp_dir().join(format!("smelter-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let outcome = run_analysis(
        &[dir.clone()],
        &AnalysisConfig::default(),
        &ScanOptions::default(),
    )
    .unwrap();
    assert_eq!(outcome.stats.files_scanned, 0);
    assert!(outcome.findings.is_empty());
    std::fs::remove_dir_all(&dir).ok();
}
