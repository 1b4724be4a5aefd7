//! The scan pipeline: collect files → tokenize → parse (tolerant) →
//! desugar pipes → build model → metrics → detectors → suppressions.
//! Output ordering is deterministic regardless of input order.

use super::config::AnalysisConfig;
use super::suppress::apply_suppressions;
use super::Finding;
use crate::detect::{self, Ctx};
use crate::globpat::path_matches;
use crate::history::{
    cochange, detect_divergent_change, detect_shotgun_surgery, ChangeLog, DivergentParams,
    ShotgunParams,
};
use crate::metrics::{clone_index, function_metrics, module_metrics, ClumpParams};
use crate::model::{build_model, Project, ProjectFile, ProjectModel};
use crate::syntax::{desugar_pipes_tolerant, parse_file, Mode, ParseDiagnostic};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("path does not exist: {0}")]
    MissingPath(PathBuf),
}

#[derive(Debug, Default)]
pub struct ScanOptions {
    pub history: Option<ChangeLog>,
    /// Fail on the first unparseable construct per file.
    pub strict: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanStats {
    pub files_scanned: usize,
    pub parse_diagnostics: usize,
    pub io_errors: usize,
    pub strict_parse_errors: usize,
    pub suppressed_count: usize,
    /// Wall-clock duration; excluded from serialized reports so that
    /// repeated runs stay byte-identical.
    #[serde(skip)]
    pub duration_ms: u128,
}

#[derive(Debug)]
pub struct ScanOutcome {
    pub findings: Vec<Finding>,
    pub stats: ScanStats,
    pub project: Project,
    pub model: ProjectModel,
    /// Per-file diagnostics (recoveries, encoding problems, IO errors).
    pub diagnostics: Vec<ParseDiagnostic>,
}

/// Run the full analysis over the given paths (files or directories).
pub fn run_analysis(
    roots: &[PathBuf],
    config: &AnalysisConfig,
    options: &ScanOptions,
) -> Result<ScanOutcome, AnalysisError> {
    let started = Instant::now();
    let mut stats = ScanStats::default();
    let mut diagnostics: Vec<ParseDiagnostic> = Vec::new();

    let inputs = collect_files(roots, config)?;
    let mut files = Vec::new();
    for (display, path) in inputs {
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(err) => {
                stats.io_errors += 1;
                diagnostics.push(ParseDiagnostic {
                    span: crate::span::SourceSpan::point(display.clone(), 1, 1),
                    message: format!("io error: {err}"),
                });
                continue;
            }
        };
        let source = match String::from_utf8(bytes) {
            Ok(s) => s,
            Err(_) => {
                diagnostics.push(ParseDiagnostic {
                    span: crate::span::SourceSpan::point(display.clone(), 1, 1),
                    message: "file is not valid UTF-8; skipped".into(),
                });
                continue;
            }
        };
        let mode = if options.strict || !config.tolerant {
            Mode::Strict
        } else {
            Mode::Tolerant
        };
        match parse_file(&display, &source, mode) {
            Ok((tree, mut file_diags)) => {
                let (tree, desugar_diags) = desugar_pipes_tolerant(&tree);
                file_diags.extend(desugar_diags);
                files.push(ProjectFile {
                    path: display,
                    tree,
                    source,
                    diagnostics: file_diags,
                });
            }
            Err(err) => {
                stats.strict_parse_errors += 1;
                diagnostics.push(ParseDiagnostic {
                    span: err.span.clone(),
                    message: format!("parse error: expected {}, found {}", err.expected, err.found),
                });
            }
        }
    }

    let project = Project::new(files);
    stats.files_scanned = project.files().len();
    for f in project.files() {
        diagnostics.extend(f.diagnostics.iter().cloned());
    }

    let model = build_model(&project);
    let clump_params = ClumpParams {
        min_size: config.int("EX1009", "min_clump_size").max(1) as usize,
        min_occurrences: config.int("EX1009", "min_occurrences").max(1) as usize,
    };
    let fn_metrics = function_metrics(&project, &model);
    let mod_metrics = module_metrics(&project, &model, clump_params);
    let clones = if config.is_enabled("EX1005") {
        let window = config.int("EX1005", "window").max(10) as usize;
        let normalize = config.bool("EX1005", "normalize");
        clone_index(project.files(), window, normalize)
    } else {
        Vec::new()
    };

    let ctx = Ctx::new(&project, &model, &fn_metrics, &mod_metrics, &clones, config);
    let mut findings = detect::run_enabled(&ctx);

    if let Some(log) = &options.history {
        let matrix = cochange(log);
        if config.is_enabled("EX1101") {
            findings.extend(detect_shotgun_surgery(
                &matrix,
                &ShotgunParams {
                    min_support: config.int("EX1101", "min_support").max(0) as u32,
                    min_confidence: config.float("EX1101", "min_confidence"),
                    min_fanout: config.int("EX1101", "min_fanout").max(0) as usize,
                    severity: config.severity("EX1101"),
                },
            ));
        }
        if config.is_enabled("EX1102") {
            findings.extend(detect_divergent_change(
                &matrix,
                log,
                &DivergentParams {
                    min_changes: config.int("EX1102", "min_changes").max(0) as u32,
                    min_cluster: config.int("EX1102", "min_cluster").max(1) as usize,
                    severity: config.severity("EX1102"),
                },
            ));
        }
    }

    let outcome = apply_suppressions(findings, project.files());
    stats.suppressed_count = outcome.suppressed_count;
    diagnostics.extend(outcome.diagnostics);
    let mut findings = outcome.findings;

    findings.sort_by(|a, b| {
        (
            &a.span.file,
            a.span.start_line,
            &a.rule_id,
            a.span.start_col,
            &a.message,
        )
            .cmp(&(
                &b.span.file,
                b.span.start_line,
                &b.rule_id,
                b.span.start_col,
                &b.message,
            ))
    });
    diagnostics.sort_by(|a, b| {
        (&a.span.file, a.span.start_line, &a.message).cmp(&(
            &b.span.file,
            b.span.start_line,
            &b.message,
        ))
    });
    stats.parse_diagnostics = diagnostics.len();
    stats.duration_ms = started.elapsed().as_millis();

    Ok(ScanOutcome {
        findings,
        stats,
        project,
        model,
        diagnostics,
    })
}

/// Expand roots into (display path, filesystem path) pairs, applying the
/// include/exclude globs. Display paths are root-relative for a single
/// directory root, root-prefixed otherwise.
fn collect_files(
    roots: &[PathBuf],
    config: &AnalysisConfig,
) -> Result<Vec<(String, PathBuf)>, AnalysisError> {
    let mut out = Vec::new();
    let single_root = roots.len() == 1;
    for root in roots {
        if !root.exists() {
            return Err(AnalysisError::MissingPath(root.clone()));
        }
        if root.is_file() {
            if has_source_ext(root) {
                out.push((normalize(&root.to_string_lossy()), root.clone()));
            }
            continue;
        }
        let mut entries: Vec<PathBuf> = walkdir::WalkDir::new(root)
            .follow_links(false)
            .into_iter()
            .filter_map(Result::ok)
            .filter(|e| e.file_type().is_file())
            .map(|e| e.into_path())
            .filter(|p| has_source_ext(p))
            .collect();
        entries.sort();
        for path in entries {
            let rel = path
                .strip_prefix(root)
                .map(|p| normalize(&p.to_string_lossy()))
                .unwrap_or_else(|_| normalize(&path.to_string_lossy()));
            let included = config.include.iter().any(|g| path_matches(g, &rel));
            let excluded = config.exclude.iter().any(|g| path_matches(g, &rel));
            if !included || excluded {
                continue;
            }
            let display = if single_root {
                rel
            } else {
                normalize(&root.join(&rel).to_string_lossy())
            };
            out.push((display, path));
        }
    }
    Ok(out)
}

fn has_source_ext(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("ex") | Some("exs")
    )
}

fn normalize(path: &str) -> String {
    path.replace('\\', "/")
}
