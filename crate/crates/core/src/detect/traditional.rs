//! The nine statically detectable traditional smells. The two
//! history-based ones (Shotgun Surgery, Divergent Change) live in the
//! history module.

use super::Ctx;
use crate::model::Visibility;
use crate::rules::{file_target, module_target, EvidenceValue, Finding};
use crate::syntax::CommentKind;
use std::collections::BTreeMap;

/// EX1001: comments doing documentation's job.
pub fn detect_comments(ctx: &Ctx) -> Vec<Finding> {
    let max_body = ctx.config.int("EX1001", "max_body_comment_lines");
    let ratio = ctx.config.float("EX1001", "undocumented_public_ratio");
    let min_module_lines = ctx.config.int("EX1001", "min_module_comment_lines");
    let mut findings = Vec::new();

    for info in ctx.model.modules.values() {
        for f in &info.functions {
            for clause in &f.clauses {
                if i64::from(clause.comment_line_count) >= max_body {
                    findings.push(
                        ctx.finding(
                            "EX1001",
                            clause.span.clone(),
                            f.id(),
                            format!(
                                "clause of {} carries {} comment lines; prefer @doc and doctests",
                                f.id(),
                                clause.comment_line_count
                            ),
                        )
                        .with_int("comment_lines", i64::from(clause.comment_line_count)),
                    );
                }
            }
        }

        let public: Vec<_> = info.public_functions().collect();
        if public.is_empty() {
            continue;
        }
        let undocumented = public.iter().filter(|f| !f.doc_present).count();
        let module_comments = ctx
            .project
            .file(info.file)
            .tree
            .comments
            .iter()
            .filter(|c| {
                c.kind == CommentKind::Line
                    && c.span.start_line >= info.span.start_line
                    && c.span.start_line <= info.span.end_line
            })
            .count();
        if (undocumented as f64) / (public.len() as f64) >= ratio
            && module_comments as i64 >= min_module_lines
        {
            findings.push(
                ctx.finding(
                    "EX1001",
                    info.span.clone(),
                    module_target(&info.name),
                    format!(
                        "module {} relies on {} comment lines while {}/{} public functions lack @doc",
                        info.name,
                        module_comments,
                        undocumented,
                        public.len()
                    ),
                )
                .with_int("comment_lines", module_comments as i64)
                .with_int("undocumented_public_functions", undocumented as i64)
                .with_int("public_functions", public.len() as i64),
            );
        }
    }
    findings
}

/// EX1002: long parameter list.
pub fn detect_long_parameter_list(ctx: &Ctx) -> Vec<Finding> {
    let max_params = ctx.config.int("EX1002", "max_params");
    ctx.fn_metrics
        .iter()
        .filter(|m| i64::from(m.param_count) >= max_params)
        .map(|m| {
            ctx.finding(
                "EX1002",
                m.span.clone(),
                m.target.clone(),
                format!(
                    "{} takes {} parameters (limit {})",
                    m.target, m.param_count, max_params
                ),
            )
            .with_int("param_count", i64::from(m.param_count))
        })
        .collect()
}

/// EX1003: long function.
pub fn detect_long_function(ctx: &Ctx) -> Vec<Finding> {
    let max_lines = ctx.config.int("EX1003", "max_lines");
    ctx.fn_metrics
        .iter()
        .filter(|m| i64::from(m.max_clause_lines) >= max_lines)
        .map(|m| {
            ctx.finding(
                "EX1003",
                m.span.clone(),
                m.target.clone(),
                format!(
                    "{} has a {}-line clause (limit {})",
                    m.target, m.max_clause_lines, max_lines
                ),
            )
            .with_int("max_clause_lines", i64::from(m.max_clause_lines))
        })
        .collect()
}

/// EX1004: large module.
pub fn detect_large_module(ctx: &Ctx) -> Vec<Finding> {
    let max_lines = ctx.config.int("EX1004", "max_module_lines");
    let max_public = ctx.config.int("EX1004", "max_public_functions");
    ctx.mod_metrics
        .iter()
        .filter(|m| {
            i64::from(m.total_lines) >= max_lines
                || i64::from(m.public_function_count) >= max_public
        })
        .map(|m| {
            ctx.finding(
                "EX1004",
                m.span.clone(),
                module_target(&m.module),
                format!(
                    "module {} spans {} lines with {} public functions",
                    m.module, m.total_lines, m.public_function_count
                ),
            )
            .with_int("total_lines", i64::from(m.total_lines))
            .with_int("public_functions", i64::from(m.public_function_count))
        })
        .collect()
}

/// EX1005: duplicated code, one finding per clone fragment.
pub fn detect_duplicated_code(ctx: &Ctx) -> Vec<Finding> {
    ctx.clones
        .iter()
        .map(|frag| {
            let (a_file, a_span) = &frag.a;
            let (b_file, b_span) = &frag.b;
            ctx.finding(
                "EX1005",
                a_span.clone(),
                file_target(a_file),
                format!(
                    "{} tokens duplicated at {}:{}",
                    frag.token_length, b_file, b_span.start_line
                ),
            )
            .with_int("token_length", i64::from(frag.token_length))
            .with_str("duplicate_file", b_file.clone())
            .with_int("duplicate_line", i64::from(b_span.start_line))
            .with("normalized", EvidenceValue::Bool(frag.normalized))
        })
        .collect()
}

/// EX1006: feature envy — more traffic to one foreign module than home.
pub fn detect_feature_envy(ctx: &Ctx) -> Vec<Finding> {
    let min_foreign = ctx.config.int("EX1006", "min_foreign_calls");
    let mut findings = Vec::new();
    for m in ctx.fn_metrics {
        let own = m.target.module.as_str();
        let local_calls = i64::from(*m.outbound_calls_by_module.get(own).unwrap_or(&0));
        let foreign = m
            .outbound_calls_by_module
            .iter()
            .filter(|(module, _)| module.as_str() != own)
            .max_by_key(|(module, count)| (**count, std::cmp::Reverse(module.as_str())));
        let Some((foreign_module, &count)) = foreign else {
            continue;
        };
        let count = i64::from(count);
        if count >= min_foreign && count > local_calls {
            findings.push(
                ctx.finding(
                    "EX1006",
                    m.span.clone(),
                    m.target.clone(),
                    format!(
                        "{} calls {} {} times but its own module only {} times",
                        m.target, foreign_module, count, local_calls
                    ),
                )
                .with_str("foreign_module", foreign_module.clone())
                .with_int("foreign_calls", count)
                .with_int("local_calls", local_calls),
            );
        }
    }
    findings
}

/// EX1007: inappropriate intimacy between a module pair.
pub fn detect_inappropriate_intimacy(ctx: &Ctx) -> Vec<Finding> {
    let min_mutual = ctx.config.int("EX1007", "min_mutual_calls");
    let mut counts: BTreeMap<(String, String), i64> = BTreeMap::new();
    for site in &ctx.model.call_sites {
        let from = &site.caller.module;
        if from.is_empty() {
            continue;
        }
        let Some(to) = &site.target_module else {
            continue;
        };
        if to == from || !ctx.model.is_project_module(to) {
            continue;
        }
        *counts.entry((from.clone(), to.clone())).or_insert(0) += 1;
    }
    let mut findings = Vec::new();
    for ((a, b), &ab) in &counts {
        if a >= b {
            continue;
        }
        let ba = *counts.get(&(b.clone(), a.clone())).unwrap_or(&0);
        if ab >= min_mutual && ba >= min_mutual {
            let span = ctx
                .module(a)
                .map(|m| m.span.clone())
                .unwrap_or_else(|| crate::span::SourceSpan::point("", 1, 1));
            findings.push(
                ctx.finding(
                    "EX1007",
                    span,
                    module_target(a),
                    format!("{a} and {b} call each other {ab}/{ba} times"),
                )
                .with_str("other_module", b.clone())
                .with_int("calls_out", ab)
                .with_int("calls_in", ba),
            );
        }
    }
    findings
}

/// EX1008: speculative generalization — dead private functions and
/// parameters nobody reads.
pub fn detect_speculative_generalization(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for mm in ctx.mod_metrics {
        let Some(info) = ctx.module(&mm.module) else {
            continue;
        };
        for (name, arity) in &mm.uncalled_private_functions {
            let span = info
                .functions
                .iter()
                .find(|f| {
                    f.visibility == Visibility::Private && &f.name == name && f.arity == *arity
                })
                .map(|f| f.span.clone())
                .unwrap_or_else(|| info.span.clone());
            findings.push(
                ctx.finding(
                    "EX1008",
                    span,
                    crate::model::FunctionId {
                        module: mm.module.clone(),
                        name: name.clone(),
                        arity: *arity,
                    },
                    format!("private function {}.{}/{} is never called", mm.module, name, arity),
                )
                .with_str("kind", "uncalled_private"),
            );
        }
        for unused in &mm.unused_params {
            findings.push(
                ctx.finding(
                    "EX1008",
                    unused.span.clone(),
                    unused.function.clone(),
                    format!(
                        "parameter `{}` of {} is never read",
                        unused.name, unused.function
                    ),
                )
                .with_str("kind", "unused_param")
                .with_str("param", unused.name.clone())
                .with_int("clause_index", unused.clause_index as i64)
                .with_int("param_index", unused.param_index as i64),
            );
        }
    }
    findings
}

/// EX1009: primitive obsession via recurring parameter clumps.
pub fn detect_primitive_obsession(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for mm in ctx.mod_metrics {
        for clump in &mm.data_clumps {
            findings.push(
                ctx.finding(
                    "EX1009",
                    mm.span.clone(),
                    module_target(&mm.module),
                    format!(
                        "parameters ({}) travel together through {} functions of {}; consider a struct",
                        clump.names.join(", "),
                        clump.occurrences,
                        mm.module
                    ),
                )
                .with_str("params", clump.names.join(","))
                .with_int("occurrences", i64::from(clump.occurrences)),
            );
        }
    }
    findings
}
