//! Rule registry, configuration, suppression handling and the analysis
//! driver.

mod config;
mod driver;
mod registry;
mod suppress;
#[cfg(test)]
mod tests;

pub use config::{load_config, load_config_str, AnalysisConfig, ConfigError, RuleSettings};
pub use driver::{run_analysis, AnalysisError, ScanOptions, ScanStats};
pub use registry::{registry, rule, RULE_IDS};
pub use suppress::apply_suppressions;

use crate::model::FunctionId;
use crate::span::SourceSpan;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }

    pub fn parse(s: &str) -> Option<Severity> {
        match s {
            "info" => Some(Severity::Info),
            "warning" => Some(Severity::Warning),
            "error" => Some(Severity::Error),
            _ => None,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    Certain,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Traditional,
    TraditionalHistory,
    ElixirDesign,
    ElixirLowlevel,
}

impl Category {
    pub fn as_str(&self) -> &'static str {
        match self {
            Category::Traditional => "traditional",
            Category::TraditionalHistory => "traditional-history",
            Category::ElixirDesign => "elixir-design",
            Category::ElixirLowlevel => "elixir-lowlevel",
        }
    }
}

/// Type and default of one rule parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "type", content = "default")]
pub enum ParamValue {
    Int(i64),
    Float(f64),
    Bool(bool),
    StrList(Vec<String>),
}

impl ParamValue {
    pub fn type_name(&self) -> &'static str {
        match self {
            ParamValue::Int(_) => "integer",
            ParamValue::Float(_) => "number",
            ParamValue::Bool(_) => "boolean",
            ParamValue::StrList(_) => "list of strings",
        }
    }

    pub fn as_int(&self) -> i64 {
        match self {
            ParamValue::Int(v) => *v,
            _ => panic!("parameter is not an integer"),
        }
    }

    pub fn as_float(&self) -> f64 {
        match self {
            ParamValue::Float(v) => *v,
            ParamValue::Int(v) => *v as f64,
            _ => panic!("parameter is not a number"),
        }
    }

    pub fn as_bool(&self) -> bool {
        match self {
            ParamValue::Bool(v) => *v,
            _ => panic!("parameter is not a boolean"),
        }
    }

    pub fn as_str_list(&self) -> &[String] {
        match self {
            ParamValue::StrList(v) => v,
            _ => panic!("parameter is not a string list"),
        }
    }
}

/// Static description of one rule.
#[derive(Debug, Clone, Serialize)]
pub struct RuleDescriptor {
    pub id: &'static str,
    pub name: &'static str,
    pub category: Category,
    /// Grey-literature documents the smell was drawn from.
    pub source_docs: &'static [&'static str],
    pub heuristic: bool,
    pub default_severity: Severity,
    pub params: Vec<(&'static str, ParamValue)>,
    pub summary: &'static str,
}

/// Scalar evidence attached to a finding.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EvidenceValue {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
}

impl fmt::Display for EvidenceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvidenceValue::Int(v) => write!(f, "{v}"),
            EvidenceValue::Float(v) => write!(f, "{v}"),
            EvidenceValue::Str(v) => write!(f, "{v}"),
            EvidenceValue::Bool(v) => write!(f, "{v}"),
        }
    }
}

/// One detected smell instance.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub rule_id: String,
    pub severity: Severity,
    pub confidence: Confidence,
    pub span: SourceSpan,
    pub primary_target: FunctionId,
    pub message: String,
    pub evidence: BTreeMap<String, EvidenceValue>,
}

impl Finding {
    pub fn new(
        rule_id: &str,
        severity: Severity,
        confidence: Confidence,
        span: SourceSpan,
        target: FunctionId,
        message: impl Into<String>,
    ) -> Finding {
        Finding {
            rule_id: rule_id.to_string(),
            severity,
            confidence,
            span,
            primary_target: target,
            message: message.into(),
            evidence: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: EvidenceValue) -> Finding {
        self.evidence.insert(key.to_string(), value);
        self
    }

    pub fn with_int(self, key: &str, value: i64) -> Finding {
        self.with(key, EvidenceValue::Int(value))
    }

    pub fn with_str(self, key: &str, value: impl Into<String>) -> Finding {
        self.with(key, EvidenceValue::Str(value.into()))
    }
}

/// Target helper for module-level findings.
pub fn module_target(module: &str) -> FunctionId {
    FunctionId {
        module: module.to_string(),
        name: "(module)".into(),
        arity: 0,
    }
}

/// Target helper for file-level findings (history rules).
pub fn file_target(file: &str) -> FunctionId {
    FunctionId {
        module: file.to_string(),
        name: "(file)".into(),
        arity: 0,
    }
}
