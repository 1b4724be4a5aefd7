//! Size, complexity and duplication metrics computed over the model.

mod clones;
#[cfg(test)]
mod tests;

pub use clones::{clone_index, normalized_token_stream, CloneFragment, CloneToken};

use crate::model::{
    FunctionId, FunctionKind, Project, ProjectModel, Visibility,
};
use crate::span::SourceSpan;
use crate::syntax::{Node, NodeKind};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Serialize)]
pub struct FunctionMetrics {
    pub target: FunctionId,
    pub total_lines: u32,
    pub max_clause_lines: u32,
    pub clause_count: u32,
    pub total_guard_count: u32,
    pub param_count: u32,
    pub body_comment_lines: u32,
    /// Syntactically distinct `{:error, ...}` patterns matched in `case`
    /// clauses and `with` else-clauses inside the function.
    pub distinct_error_shapes_handled: u32,
    /// Resolved outbound calls per target module.
    pub outbound_calls_by_module: BTreeMap<String, u32>,
    /// Counts cover only the visible parts; an opaque region was inside.
    pub partial: bool,
    pub span: SourceSpan,
    pub visibility: Visibility,
    pub kind: FunctionKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnusedParam {
    pub function: FunctionId,
    pub clause_index: usize,
    pub param_index: usize,
    pub name: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Serialize)]
pub struct DataClump {
    pub names: Vec<String>,
    pub occurrences: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleMetrics {
    pub module: String,
    pub total_lines: u32,
    pub public_function_count: u32,
    pub private_function_count: u32,
    pub struct_defined: bool,
    pub uncalled_private_functions: BTreeSet<(String, u32)>,
    pub unused_params: Vec<UnusedParam>,
    pub data_clumps: Vec<DataClump>,
    pub span: SourceSpan,
}

/// Thresholds for the data-clump computation.
#[derive(Debug, Clone, Copy)]
pub struct ClumpParams {
    pub min_size: usize,
    pub min_occurrences: usize,
}

impl Default for ClumpParams {
    fn default() -> Self {
        ClumpParams {
            min_size: 3,
            min_occurrences: 2,
        }
    }
}

/// One record per function in the model, in model order.
pub fn function_metrics(project: &Project, model: &ProjectModel) -> Vec<FunctionMetrics> {
    let index = project.node_index();
    let mut out = Vec::new();
    for info in model.modules.values() {
        for f in &info.functions {
            let id = f.id();
            let mut total_lines = 0;
            let mut max_clause_lines = 0;
            let mut guards = 0;
            let mut comments = 0;
            let mut shapes: BTreeSet<String> = BTreeSet::new();
            let mut partial = false;
            for clause in &f.clauses {
                total_lines += clause.line_count;
                max_clause_lines = max_clause_lines.max(clause.line_count);
                guards += clause.guard_count;
                comments += clause.comment_line_count;
                let def = project.resolve(&index, clause.body);
                collect_error_shapes(def, &mut shapes);
                def.walk(&mut |n| {
                    if n.kind == NodeKind::Opaque {
                        partial = true;
                    }
                });
            }
            let mut outbound: BTreeMap<String, u32> = BTreeMap::new();
            for site in model.calls_from(&id) {
                if let Some(m) = &site.target_module {
                    *outbound.entry(m.clone()).or_insert(0) += 1;
                }
            }
            out.push(FunctionMetrics {
                target: id,
                total_lines,
                max_clause_lines,
                clause_count: f.clauses.len() as u32,
                total_guard_count: guards,
                param_count: f.arity,
                body_comment_lines: comments,
                distinct_error_shapes_handled: shapes.len() as u32,
                outbound_calls_by_module: outbound,
                partial,
                span: f.span.clone(),
                visibility: f.visibility,
                kind: f.kind,
            });
        }
    }
    out
}

/// Distinct `{:error, ...}` patterns in case clauses and with-else
/// clauses of a definition.
fn collect_error_shapes(def: &Node, shapes: &mut BTreeSet<String>) {
    def.walk(&mut |n| {
        let sections: Vec<&Node> = match n.kind {
            NodeKind::Case | NodeKind::Receive | NodeKind::TryRescue => {
                n.children
                    .iter()
                    .filter(|c| {
                        c.kind == NodeKind::KeywordList
                            && matches!(c.value.as_deref(), Some("do") | Some("else"))
                    })
                    .collect()
            }
            NodeKind::With => n
                .children
                .iter()
                .filter(|c| {
                    c.kind == NodeKind::KeywordList && c.value.as_deref() == Some("else")
                })
                .collect(),
            _ => return,
        };
        for section in sections {
            for clause in &section.children {
                if clause.kind != NodeKind::Call || clause.value.as_deref() != Some("->") {
                    continue;
                }
                let Some(patterns) = clause.children.first() else {
                    continue;
                };
                for pat in &patterns.children {
                    collect_error_shape_in_pattern(pat, shapes);
                }
            }
        }
    });
}

fn collect_error_shape_in_pattern(pat: &Node, shapes: &mut BTreeSet<String>) {
    pat.walk(&mut |n| {
        if n.kind == NodeKind::Tuple
            && n.children
                .first()
                .is_some_and(|f| f.is_atom_literal("error"))
        {
            shapes.insert(fingerprint(n));
        }
    });
}

/// Canonical structural fingerprint used to compare patterns.
fn fingerprint(node: &Node) -> String {
    let mut s = String::new();
    fn go(n: &Node, s: &mut String) {
        s.push('(');
        s.push_str(&format!("{:?}", n.kind));
        if let Some(v) = &n.value {
            s.push(':');
            s.push_str(v);
        }
        for c in &n.children {
            go(c, s);
        }
        s.push(')');
    }
    go(node, &mut s);
    s
}

pub fn module_metrics(
    project: &Project,
    model: &ProjectModel,
    clumps: ClumpParams,
) -> Vec<ModuleMetrics> {
    let index = project.node_index();
    let mut out = Vec::new();
    for info in model.modules.values() {
        let total_lines = info.span.end_line - info.span.start_line + 1;
        let public_function_count =
            info.functions.iter().filter(|f| f.visibility == Visibility::Public).count() as u32;
        let private_function_count =
            info.functions.iter().filter(|f| f.visibility == Visibility::Private).count() as u32;

        let mut uncalled: BTreeSet<(String, u32)> = BTreeSet::new();
        for f in &info.functions {
            if f.visibility != Visibility::Private {
                continue;
            }
            let called = model.call_sites.iter().any(|c| {
                c.target_module.as_deref() == Some(info.name.as_str())
                    && c.target_name == f.name
                    && c.target_arity == Some(f.arity)
            });
            if !called {
                uncalled.insert((f.name.clone(), f.arity));
            }
        }

        let mut unused_params = Vec::new();
        for f in &info.functions {
            for (ci, clause) in f.clauses.iter().enumerate() {
                if !clause.has_body {
                    continue;
                }
                let def = project.resolve(&index, clause.body);
                for (pi, pattern) in clause.params.iter().enumerate() {
                    let crate::model::ParamPattern::BareVariable(name) = pattern else {
                        continue;
                    };
                    let mut occurrences = 0u32;
                    def.walk(&mut |n| {
                        if n.kind == NodeKind::Variable && n.value_str() == name.as_str() {
                            occurrences += 1;
                        }
                    });
                    // The binding itself is one occurrence.
                    if occurrences <= 1 {
                        unused_params.push(UnusedParam {
                            function: f.id(),
                            clause_index: ci,
                            param_index: pi,
                            name: name.clone(),
                            span: clause.span.clone(),
                        });
                    }
                }
            }
        }

        out.push(ModuleMetrics {
            module: info.name.clone(),
            total_lines,
            public_function_count,
            private_function_count,
            struct_defined: info.struct_def.is_some(),
            uncalled_private_functions: uncalled,
            unused_params,
            data_clumps: data_clumps(info, clumps),
            span: info.span.clone(),
        });
    }
    out
}

/// Groups of parameter names recurring across functions of one module,
/// ignoring order, with no covering struct.
fn data_clumps(info: &crate::model::ModuleInfo, params: ClumpParams) -> Vec<DataClump> {
    let struct_fields: BTreeSet<&str> = info
        .struct_def
        .iter()
        .flatten()
        .map(|s| s.as_str())
        .collect();
    let sets: Vec<BTreeSet<String>> = info
        .functions
        .iter()
        .filter_map(|f| {
            let clause = f.clauses.first()?;
            let names: BTreeSet<String> = clause
                .params
                .iter()
                .filter_map(|p| match p {
                    crate::model::ParamPattern::BareVariable(n) => Some(n.clone()),
                    _ => None,
                })
                .collect();
            Some(names)
        })
        .collect();

    let mut found: BTreeMap<Vec<String>, u32> = BTreeMap::new();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            let inter: BTreeSet<String> = sets[i].intersection(&sets[j]).cloned().collect();
            if inter.len() < params.min_size {
                continue;
            }
            if !struct_fields.is_empty() && inter.iter().all(|n| struct_fields.contains(n.as_str()))
            {
                continue;
            }
            let occurrences = sets.iter().filter(|s| inter.is_subset(s)).count() as u32;
            if occurrences as usize >= params.min_occurrences {
                found.insert(inter.into_iter().collect(), occurrences);
            }
        }
    }
    found
        .into_iter()
        .map(|(names, occurrences)| DataClump { names, occurrences })
        .collect()
}

/// Static proxy for message size: tree nodes in the payload expression.
pub fn message_payload_size(node: &Node) -> usize {
    node.payload_node_count()
}
