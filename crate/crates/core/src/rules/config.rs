//! `smelter.json` loading with strict validation: unknown rules, unknown
//! parameters and wrong parameter types are load errors, never silently
//! ignored.

use super::registry::registry;
use super::{ParamValue, Severity};
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("config parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unknown key `{0}` in config")]
    UnknownKey(String),
    #[error("unknown rule `{0}` in config")]
    UnknownRule(String),
    #[error("unknown parameter `{param}` for rule {rule}")]
    UnknownParam { rule: String, param: String },
    #[error("type mismatch for {rule}.{param}: expected {expected}")]
    TypeMismatch {
        rule: String,
        param: String,
        expected: &'static str,
    },
    #[error("invalid value for `{key}`: {reason}")]
    BadValue { key: String, reason: String },
}

/// Per-rule effective settings.
#[derive(Debug, Clone)]
pub struct RuleSettings {
    pub enabled: bool,
    pub severity: Severity,
    pub params: BTreeMap<String, ParamValue>,
}

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    rules: BTreeMap<String, RuleSettings>,
    pub fail_level: Severity,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    pub tolerant: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        let mut rules = BTreeMap::new();
        for r in registry() {
            rules.insert(
                r.id.to_string(),
                RuleSettings {
                    enabled: true,
                    severity: r.default_severity,
                    params: r
                        .params
                        .iter()
                        .map(|(k, v)| (k.to_string(), v.clone()))
                        .collect(),
                },
            );
        }
        AnalysisConfig {
            rules,
            fail_level: Severity::Warning,
            include: vec!["**".into()],
            exclude: vec!["deps/**".into(), "_build/**".into(), "test/**".into()],
            tolerant: true,
        }
    }
}

impl AnalysisConfig {
    pub fn is_enabled(&self, rule_id: &str) -> bool {
        self.rules.get(rule_id).map(|r| r.enabled).unwrap_or(false)
    }

    pub fn set_enabled(&mut self, rule_id: &str, enabled: bool) {
        if let Some(r) = self.rules.get_mut(rule_id) {
            r.enabled = enabled;
        }
    }

    /// Keep only the given rules enabled (CLI `--rules`).
    pub fn restrict_to(&mut self, ids: &[String]) {
        for (id, settings) in self.rules.iter_mut() {
            settings.enabled = settings.enabled && ids.iter().any(|x| x == id);
        }
    }

    pub fn severity(&self, rule_id: &str) -> Severity {
        self.rules
            .get(rule_id)
            .map(|r| r.severity)
            .unwrap_or(Severity::Warning)
    }

    pub fn param(&self, rule_id: &str, name: &str) -> &ParamValue {
        self.rules
            .get(rule_id)
            .and_then(|r| r.params.get(name))
            .unwrap_or_else(|| panic!("unknown parameter {rule_id}.{name}"))
    }

    pub fn int(&self, rule_id: &str, name: &str) -> i64 {
        self.param(rule_id, name).as_int()
    }

    pub fn float(&self, rule_id: &str, name: &str) -> f64 {
        self.param(rule_id, name).as_float()
    }

    pub fn bool(&self, rule_id: &str, name: &str) -> bool {
        self.param(rule_id, name).as_bool()
    }

    pub fn str_list(&self, rule_id: &str, name: &str) -> &[String] {
        self.param(rule_id, name).as_str_list()
    }

    pub fn set_param(&mut self, rule_id: &str, name: &str, value: ParamValue) {
        if let Some(r) = self.rules.get_mut(rule_id) {
            r.params.insert(name.to_string(), value);
        }
    }

    /// Materialize the full config as JSON (used by `init-config`).
    pub fn to_json(&self) -> String {
        let mut root = serde_json::Map::new();
        root.insert("fail_level".into(), Value::from(self.fail_level.as_str()));
        root.insert(
            "include".into(),
            Value::from(self.include.iter().map(String::as_str).collect::<Vec<_>>()),
        );
        root.insert(
            "exclude".into(),
            Value::from(self.exclude.iter().map(String::as_str).collect::<Vec<_>>()),
        );
        root.insert("tolerant".into(), Value::from(self.tolerant));
        let mut rules = serde_json::Map::new();
        for (id, settings) in &self.rules {
            let mut obj = serde_json::Map::new();
            obj.insert("enabled".into(), Value::from(settings.enabled));
            obj.insert("severity".into(), Value::from(settings.severity.as_str()));
            if !settings.params.is_empty() {
                let mut params = serde_json::Map::new();
                for (k, v) in &settings.params {
                    params.insert(k.clone(), param_to_json(v));
                }
                obj.insert("params".into(), Value::Object(params));
            }
            rules.insert(id.clone(), Value::Object(obj));
        }
        root.insert("rules".into(), Value::Object(rules));
        serde_json::to_string_pretty(&Value::Object(root)).expect("config serializes")
    }
}

fn param_to_json(v: &ParamValue) -> Value {
    match v {
        ParamValue::Int(x) => Value::from(*x),
        ParamValue::Float(x) => Value::from(*x),
        ParamValue::Bool(x) => Value::from(*x),
        ParamValue::StrList(xs) => {
            Value::from(xs.iter().map(String::as_str).collect::<Vec<_>>())
        }
    }
}

/// Load from a path; `None` (or a missing optional file) means defaults.
pub fn load_config(path: Option<&Path>) -> Result<AnalysisConfig, ConfigError> {
    match path {
        None => Ok(AnalysisConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            load_config_str(&text)
        }
    }
}

pub fn load_config_str(text: &str) -> Result<AnalysisConfig, ConfigError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        reason: e.to_string(),
    })?;
    let mut config = AnalysisConfig::default();
    let Value::Object(root) = value else {
        return Err(ConfigError::BadValue {
            key: "<root>".into(),
            reason: "config must be a JSON object".into(),
        });
    };
    for (key, val) in root {
        match key.as_str() {
            "fail_level" => {
                let s = val.as_str().ok_or_else(|| ConfigError::BadValue {
                    key: key.clone(),
                    reason: "expected a string".into(),
                })?;
                config.fail_level =
                    Severity::parse(s).ok_or_else(|| ConfigError::BadValue {
                        key: key.clone(),
                        reason: format!("unknown severity `{s}`"),
                    })?;
            }
            "include" => config.include = string_list(&key, val)?,
            "exclude" => config.exclude = string_list(&key, val)?,
            "tolerant" => {
                config.tolerant = val.as_bool().ok_or_else(|| ConfigError::BadValue {
                    key: key.clone(),
                    reason: "expected a boolean".into(),
                })?;
            }
            "rules" => apply_rules(&mut config, val)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
    }
    Ok(config)
}

fn string_list(key: &str, val: Value) -> Result<Vec<String>, ConfigError> {
    let arr = val.as_array().ok_or_else(|| ConfigError::BadValue {
        key: key.to_string(),
        reason: "expected an array of strings".into(),
    })?;
    arr.iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| ConfigError::BadValue {
                    key: key.to_string(),
                    reason: "expected an array of strings".into(),
                })
        })
        .collect()
}

fn apply_rules(config: &mut AnalysisConfig, val: Value) -> Result<(), ConfigError> {
    let Value::Object(rules) = val else {
        return Err(ConfigError::BadValue {
            key: "rules".into(),
            reason: "expected an object keyed by rule id".into(),
        });
    };
    let catalog = registry();
    for (rule_id, body) in rules {
        let descriptor = catalog
            .iter()
            .find(|r| r.id == rule_id)
            .ok_or_else(|| ConfigError::UnknownRule(rule_id.clone()))?;
        let Value::Object(body) = body else {
            return Err(ConfigError::BadValue {
                key: rule_id.clone(),
                reason: "expected an object".into(),
            });
        };
        for (key, val) in body {
            match key.as_str() {
                "enabled" => {
                    let enabled = val.as_bool().ok_or_else(|| ConfigError::BadValue {
                        key: format!("{rule_id}.enabled"),
                        reason: "expected a boolean".into(),
                    })?;
                    config.set_enabled(&rule_id, enabled);
                }
                "severity" => {
                    let s = val.as_str().ok_or_else(|| ConfigError::BadValue {
                        key: format!("{rule_id}.severity"),
                        reason: "expected a string".into(),
                    })?;
                    let sev = Severity::parse(s).ok_or_else(|| ConfigError::BadValue {
                        key: format!("{rule_id}.severity"),
                        reason: format!("unknown severity `{s}`"),
                    })?;
                    if let Some(r) = config.rules.get_mut(&rule_id) {
                        r.severity = sev;
                    }
                }
                "params" => {
                    let Value::Object(params) = val else {
                        return Err(ConfigError::BadValue {
                            key: format!("{rule_id}.params"),
                            reason: "expected an object".into(),
                        });
                    };
                    for (pname, pval) in params {
                        let default = descriptor
                            .params
                            .iter()
                            .find(|(n, _)| *n == pname)
                            .map(|(_, v)| v)
                            .ok_or_else(|| ConfigError::UnknownParam {
                                rule: rule_id.clone(),
                                param: pname.clone(),
                            })?;
                        let typed = coerce_param(&rule_id, &pname, default, &pval)?;
                        config.set_param(&rule_id, &pname, typed);
                    }
                }
                other => {
                    return Err(ConfigError::UnknownKey(format!("{rule_id}.{other}")));
                }
            }
        }
    }
    Ok(())
}

fn coerce_param(
    rule: &str,
    param: &str,
    default: &ParamValue,
    val: &Value,
) -> Result<ParamValue, ConfigError> {
    let mismatch = || ConfigError::TypeMismatch {
        rule: rule.to_string(),
        param: param.to_string(),
        expected: default.type_name(),
    };
    match default {
        ParamValue::Int(_) => val
            .as_i64()
            .filter(|_| val.is_i64() || val.is_u64())
            .map(ParamValue::Int)
            .ok_or_else(mismatch),
        ParamValue::Float(_) => val.as_f64().map(ParamValue::Float).ok_or_else(mismatch),
        ParamValue::Bool(_) => val.as_bool().map(ParamValue::Bool).ok_or_else(mismatch),
        ParamValue::StrList(_) => {
            let arr = val.as_array().ok_or_else(mismatch)?;
            let items: Option<Vec<String>> = arr
                .iter()
                .map(|v| v.as_str().map(str::to_string))
                .collect();
            items.map(ParamValue::StrList).ok_or_else(mismatch)
        }
    }
}
