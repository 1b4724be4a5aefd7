//! The static smell detectors. Each detector is a pure function over the
//! shared analysis context and returns findings for one rule.

pub mod design;
pub mod lowlevel;
#[cfg(test)]
mod tests;
pub mod traditional;

use crate::metrics::{CloneFragment, FunctionMetrics, ModuleMetrics};
use crate::model::{FunctionId, ModuleInfo, NodeRef, Project, ProjectModel};
use crate::rules::{registry, AnalysisConfig, Confidence, Finding};
use crate::span::SourceSpan;
use crate::syntax::Node;
use std::collections::HashMap;

pub struct Ctx<'a> {
    pub project: &'a Project,
    pub model: &'a ProjectModel,
    pub index: Vec<Vec<&'a Node>>,
    pub fn_metrics: &'a [FunctionMetrics],
    pub mod_metrics: &'a [ModuleMetrics],
    pub clones: &'a [CloneFragment],
    pub config: &'a AnalysisConfig,
    heuristic: HashMap<&'static str, bool>,
}

impl<'a> Ctx<'a> {
    pub fn new(
        project: &'a Project,
        model: &'a ProjectModel,
        fn_metrics: &'a [FunctionMetrics],
        mod_metrics: &'a [ModuleMetrics],
        clones: &'a [CloneFragment],
        config: &'a AnalysisConfig,
    ) -> Ctx<'a> {
        Ctx {
            project,
            model,
            index: project.node_index(),
            fn_metrics,
            mod_metrics,
            clones,
            config,
            heuristic: registry().iter().map(|r| (r.id, r.heuristic)).collect(),
        }
    }

    pub fn node(&self, r: NodeRef) -> &'a Node {
        self.index[r.file][r.index]
    }

    pub fn module(&self, name: &str) -> Option<&ModuleInfo> {
        self.model.modules.get(name)
    }

    /// Build a finding with the configured severity and the confidence
    /// implied by the rule's heuristic flag.
    pub fn finding(
        &self,
        rule_id: &str,
        span: SourceSpan,
        target: FunctionId,
        message: impl Into<String>,
    ) -> Finding {
        let confidence = if self.heuristic.get(rule_id).copied().unwrap_or(false) {
            Confidence::Heuristic
        } else {
            Confidence::Certain
        };
        Finding::new(
            rule_id,
            self.config.severity(rule_id),
            confidence,
            span,
            target,
            message,
        )
    }

    pub fn enabled(&self, rule_id: &str) -> bool {
        self.config.is_enabled(rule_id)
    }
}

/// Run every enabled static detector.
pub fn run_enabled(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    let detectors: &[(&str, fn(&Ctx) -> Vec<Finding>)] = &[
        ("EX1001", traditional::detect_comments),
        ("EX1002", traditional::detect_long_parameter_list),
        ("EX1003", traditional::detect_long_function),
        ("EX1004", traditional::detect_large_module),
        ("EX1005", traditional::detect_duplicated_code),
        ("EX1006", traditional::detect_feature_envy),
        ("EX1007", traditional::detect_inappropriate_intimacy),
        ("EX1008", traditional::detect_speculative_generalization),
        ("EX1009", traditional::detect_primitive_obsession),
        ("EX1201", design::detect_unsupervised_process),
        ("EX1202", design::detect_genserver_envy),
        ("EX1203", design::detect_agent_obsession),
        ("EX1204", design::detect_large_messages),
        ("EX1205", design::detect_complex_multiclause),
        ("EX1206", design::detect_complex_api_error_handling),
        ("EX1207", design::detect_exceptions_control_flow),
        ("EX1208", design::detect_untested_polymorphism),
        ("EX1209", design::detect_code_by_process),
        ("EX1210", design::detect_data_migration),
        ("EX1301", lowlevel::detect_invalid_data),
        ("EX1302", lowlevel::detect_dynamic_struct_access),
        ("EX1303", lowlevel::detect_unplanned_extraction),
        ("EX1304", lowlevel::detect_duplicate_module_names),
        ("EX1305", lowlevel::detect_unnecessary_macro),
        ("EX1306", lowlevel::detect_app_config_in_lib),
        ("EX1307", lowlevel::detect_compile_time_config),
        ("EX1308", lowlevel::detect_use_vs_import),
    ];
    for (id, detect) in detectors {
        if ctx.enabled(id) {
            findings.extend(detect(ctx));
        }
    }
    findings
}
