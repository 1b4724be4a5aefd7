//! smelter — an Elixir code smell analyzer.
//!
//! Exit codes: 0 clean scan, 1 findings at or above the fail level,
//! 2 configuration or usage error, 3 parse errors in strict mode.

mod examples;

use clap::{Parser, Subcommand, ValueEnum};
use smelter_core::history::ingest_change_log;
use smelter_core::report::{build_report, render_json, render_text};
use smelter_core::rules::{
    load_config, registry, rule, run_analysis, AnalysisConfig, ScanOptions,
};
use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "smelter",
    version,
    about = "Detects traditional and Elixir-specific code smells in Elixir source"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Scan paths (files or directories) for code smells.
    Scan {
        /// Files or directories to scan; defaults to the current directory.
        paths: Vec<PathBuf>,
        /// Configuration file (default: ./smelter.json when present).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Change-log file enabling the history rules (EX1101, EX1102).
        #[arg(long)]
        history: Option<PathBuf>,
        /// Fail on the first unparseable construct per file.
        #[arg(long)]
        strict: bool,
        /// Comma-separated rule ids to run (others are disabled).
        #[arg(long, value_delimiter = ',')]
        rules: Vec<String>,
        #[arg(long)]
        no_color: bool,
        /// Print the semantic model as JSON and exit (debugging).
        #[arg(long)]
        dump_model: bool,
    },
    /// List every rule in the registry.
    ListRules {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Explain one rule: description, provenance, parameters, example.
    Explain { rule_id: String },
    /// Write a smelter.json with all defaults materialized.
    InitConfig {
        /// Overwrite an existing smelter.json.
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when piped into `head` and friends.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Scan {
            paths,
            config,
            format,
            output,
            history,
            strict,
            rules,
            no_color,
            dump_model,
        } => cmd_scan(
            paths, config, format, output, history, strict, rules, no_color, dump_model,
        ),
        Command::ListRules { format } => cmd_list_rules(format),
        Command::Explain { rule_id } => cmd_explain(&rule_id),
        Command::InitConfig { force } => cmd_init_config(force),
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("smelter: {message}");
    ExitCode::from(2)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    paths: Vec<PathBuf>,
    config_path: Option<PathBuf>,
    format: Format,
    output: Option<PathBuf>,
    history: Option<PathBuf>,
    strict: bool,
    rules: Vec<String>,
    no_color: bool,
    dump_model: bool,
) -> ExitCode {
    let mut config = match load_scan_config(config_path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    if !rules.is_empty() {
        let known = registry();
        for id in &rules {
            if !known.iter().any(|r| r.id == id) {
                return usage_error(&format!("unknown rule `{id}` in --rules"));
            }
        }
        config.restrict_to(&rules);
    }

    let history_log = match history {
        None => None,
        Some(path) => match ingest_change_log(&path) {
            Ok(log) => Some(log),
            Err(err) => return usage_error(&format!("cannot read history log: {err}")),
        },
    };
    if history_log.is_none() {
        // Without a change log the evolutionary rules cannot run.
        config.set_enabled("EX1101", false);
        config.set_enabled("EX1102", false);
    }

    let paths = if paths.is_empty() {
        vec![PathBuf::from(".")]
    } else {
        paths
    };
    let options = ScanOptions {
        history: history_log.clone(),
        strict,
    };
    let outcome = match run_analysis(&paths, &config, &options) {
        Ok(o) => o,
        Err(err) => return usage_error(&err.to_string()),
    };

    if dump_model {
        let json = serde_json::to_string_pretty(&outcome.model).expect("model serializes");
        println!("{json}");
        return ExitCode::SUCCESS;
    }

    let fail_level = config.fail_level;
    let has_failing = outcome
        .findings
        .iter()
        .any(|f| f.severity >= fail_level);
    let strict_failed = strict && outcome.stats.strict_parse_errors > 0;

    if history_log.is_none() {
        eprintln!("smelter: EX1101/EX1102 skipped (no --history change log)");
    }
    for d in &outcome.diagnostics {
        eprintln!("smelter: {}: {}", d.span, d.message);
    }

    let report = build_report(outcome.findings, outcome.stats);
    let rendered = match format {
        Format::Json => render_json(&report),
        Format::Text => {
            let color = !no_color
                && std::env::var_os("NO_COLOR").is_none()
                && output.is_none()
                && std::io::stdout().is_terminal();
            render_text(&report, color)
        }
    };
    match output {
        Some(path) => {
            if let Err(err) = std::fs::write(&path, rendered) {
                return usage_error(&format!("cannot write {}: {err}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }

    if strict_failed {
        ExitCode::from(3)
    } else if has_failing {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn load_scan_config(explicit: Option<PathBuf>) -> Result<AnalysisConfig, ExitCode> {
    let path = match explicit {
        Some(p) => {
            if !p.exists() {
                return Err(usage_error(&format!(
                    "config file not found: {}",
                    p.display()
                )));
            }
            Some(p)
        }
        None => {
            let default = PathBuf::from("smelter.json");
            default.exists().then_some(default)
        }
    };
    load_config(path.as_deref()).map_err(|err| usage_error(&err.to_string()))
}

fn cmd_list_rules(format: Format) -> ExitCode {
    let rules = registry();
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(&rules).expect("registry serializes");
            println!("{json}");
        }
        Format::Text => {
            println!(
                "{:<8} {:<20} {:<10} {:<18} {}",
                "ID", "CATEGORY", "HEURISTIC", "DOCS", "NAME"
            );
            for r in &rules {
                println!(
                    "{:<8} {:<20} {:<10} {:<18} {}",
                    r.id,
                    r.category.as_str(),
                    if r.heuristic { "yes" } else { "no" },
                    r.source_docs.join(","),
                    r.name
                );
            }
            println!();
            println!(
                "{} rules: {} traditional, {} elixir-specific ({} design-related, {} low-level)",
                rules.len(),
                rules
                    .iter()
                    .filter(|r| matches!(
                        r.category,
                        smelter_core::rules::Category::Traditional
                            | smelter_core::rules::Category::TraditionalHistory
                    ))
                    .count(),
                rules
                    .iter()
                    .filter(|r| matches!(
                        r.category,
                        smelter_core::rules::Category::ElixirDesign
                            | smelter_core::rules::Category::ElixirLowlevel
                    ))
                    .count(),
                rules
                    .iter()
                    .filter(|r| r.category == smelter_core::rules::Category::ElixirDesign)
                    .count(),
                rules
                    .iter()
                    .filter(|r| r.category == smelter_core::rules::Category::ElixirLowlevel)
                    .count(),
            );
        }
    }
    ExitCode::SUCCESS
}

fn cmd_explain(rule_id: &str) -> ExitCode {
    let Some(descriptor) = rule(rule_id) else {
        return usage_error(&format!("unknown rule `{rule_id}`"));
    };
    println!("{} — {}", descriptor.id, descriptor.name);
    println!("category:    {}", descriptor.category.as_str());
    println!("severity:    {}", descriptor.default_severity);
    println!(
        "heuristic:   {}",
        if descriptor.heuristic { "yes" } else { "no" }
    );
    println!("sources:     {}", descriptor.source_docs.join(", "));
    println!();
    println!("{}", descriptor.summary);
    if !descriptor.params.is_empty() {
        println!();
        println!("parameters:");
        for (name, value) in &descriptor.params {
            let rendered = match value {
                smelter_core::rules::ParamValue::Int(v) => v.to_string(),
                smelter_core::rules::ParamValue::Float(v) => v.to_string(),
                smelter_core::rules::ParamValue::Bool(v) => v.to_string(),
                smelter_core::rules::ParamValue::StrList(v) => format!("[{}]", v.join(", ")),
            };
            println!("  {name} (default {rendered})");
        }
    }
    println!();
    println!("example that triggers it:");
    for line in examples::positive_example(rule_id).lines() {
        println!("  {line}");
    }
    ExitCode::SUCCESS
}

fn cmd_init_config(force: bool) -> ExitCode {
    let path = PathBuf::from("smelter.json");
    if path.exists() && !force {
        return usage_error("smelter.json already exists (use --force to overwrite)");
    }
    let json = AnalysisConfig::default().to_json();
    match std::fs::write(&path, json + "\n") {
        Ok(()) => {
            println!("wrote smelter.json");
            ExitCode::SUCCESS
        }
        Err(err) => usage_error(&format!("cannot write smelter.json: {err}")),
    }
}
