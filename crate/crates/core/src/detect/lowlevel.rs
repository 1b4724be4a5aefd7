//! The eight low-level-concern Elixir-specific smells.

use super::Ctx;
use crate::globpat::any_boundary_match;
use crate::model::{expand_alias, FunctionId, ParamPattern, Visibility};
use crate::rules::{module_target, Finding};
use crate::syntax::{Node, NodeKind};
use std::collections::BTreeMap;

/// A bracket access node `v[...]` (parsed as `Access.get(v, ...)`).
fn access_receiver(node: &Node) -> Option<&Node> {
    if node.kind == NodeKind::QualifiedCall
        && node.value.as_deref() == Some("get")
        && node
            .children
            .first()
            .is_some_and(|r| r.kind == NodeKind::AliasRef && r.value_str() == "Access")
    {
        node.children.get(1)
    } else {
        None
    }
}

/// EX1301: boundary function consuming parameters unvalidated.
pub fn detect_invalid_data(ctx: &Ctx) -> Vec<Finding> {
    let globs = ctx.config.str_list("EX1301", "boundary_globs").to_vec();
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        if !any_boundary_match(&globs, &info.name, &info.file_path) {
            continue;
        }
        for f in &info.functions {
            if f.visibility != Visibility::Public {
                continue;
            }
            for clause in &f.clauses {
                if !clause.has_body {
                    continue;
                }
                let mut hit: Option<(String, String)> = None;
                for (pi, pattern) in clause.params.iter().enumerate() {
                    let ParamPattern::BareVariable(name) = pattern else {
                        continue;
                    };
                    if clause.guarded_params.contains(&pi) {
                        continue;
                    }
                    let def = ctx.node(clause.body);
                    let mut usage: Option<&'static str> = None;
                    def.walk(&mut |n| {
                        if usage.is_some() {
                            return;
                        }
                        let operand = n
                            .children
                            .iter()
                            .any(|c| c.kind == NodeKind::Variable && c.value_str() == name);
                        usage = match (n.kind, n.value.as_deref()) {
                            (NodeKind::Call, Some("+" | "-" | "*" | "/" | "**")) if operand => {
                                Some("arithmetic")
                            }
                            (NodeKind::Call, Some("<>" | "++")) if operand => {
                                Some("concatenation")
                            }
                            _ => access_receiver(n).and_then(|recv| {
                                (recv.kind == NodeKind::Variable && recv.value_str() == name)
                                    .then_some("indexed access")
                            }),
                        };
                    });
                    if let Some(kind) = usage {
                        hit = Some((name.clone(), kind.to_string()));
                        break;
                    }
                }
                if let Some((param, kind)) = hit {
                    findings.push(
                        ctx.finding(
                            "EX1301",
                            clause.span.clone(),
                            f.id(),
                            format!(
                                "{} uses unvalidated parameter `{param}` in {kind}",
                                f.id()
                            ),
                        )
                        .with_str("param", param)
                        .with_str("usage", kind),
                    );
                }
            }
        }
    }
    findings
}

/// EX1302: dynamic access on struct-bound values, and access to fields a
/// project struct never defines.
pub fn detect_dynamic_struct_access(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        for f in &info.functions {
            for clause in &f.clauses {
                let def = ctx.node(clause.body);
                let bound = struct_bindings(ctx, def, &info.aliases);
                if bound.is_empty() {
                    continue;
                }
                def.walk(&mut |n| {
                    // `v[:k]` where v is struct-bound.
                    if let Some(recv) = access_receiver(n) {
                        if recv.kind == NodeKind::Variable {
                            if let Some(struct_name) = bound.get(recv.value_str()) {
                                findings.push(
                                    ctx.finding(
                                        "EX1302",
                                        n.span.clone(),
                                        f.id(),
                                        format!(
                                            "dynamic access on %{}{{}} value `{}`; use static `.field`",
                                            struct_name,
                                            recv.value_str()
                                        ),
                                    )
                                    .with_str("struct", struct_name.clone())
                                    .with_str("variable", recv.value_str()),
                                );
                            }
                        }
                        return;
                    }
                    // `v.k` where k is not a field of v's project struct.
                    if n.kind == NodeKind::QualifiedCall && n.children.len() == 1 {
                        let recv = &n.children[0];
                        if recv.kind != NodeKind::Variable {
                            return;
                        }
                        let Some(struct_name) = bound.get(recv.value_str()) else {
                            return;
                        };
                        let Some(module) = ctx.module(struct_name) else {
                            return;
                        };
                        let Some(fields) = &module.struct_def else {
                            return;
                        };
                        let field = n.value_str();
                        if !fields.iter().any(|fld| fld == field)
                            && field != "__struct__"
                        {
                            findings.push(
                                ctx.finding(
                                    "EX1302",
                                    n.span.clone(),
                                    f.id(),
                                    format!(
                                        "struct {struct_name} has no field `{field}`"
                                    ),
                                )
                                .with_str("struct", struct_name.clone())
                                .with_str("field", field),
                            );
                        }
                    }
                });
            }
        }
    }
    findings
}

/// Variables bound to struct patterns within a definition, mapped to the
/// (alias-expanded) struct name.
fn struct_bindings(
    _ctx: &Ctx,
    def: &Node,
    aliases: &BTreeMap<String, String>,
) -> BTreeMap<String, String> {
    let mut bound = BTreeMap::new();
    def.walk(&mut |n| {
        if n.kind != NodeKind::Match {
            return;
        }
        let [a, b] = n.children.as_slice() else { return };
        let pair = match (a.kind, b.kind) {
            (NodeKind::StructLiteral, NodeKind::Variable) => Some((a, b)),
            (NodeKind::Variable, NodeKind::StructLiteral) => Some((b, a)),
            _ => None,
        };
        if let Some((s, v)) = pair {
            let name = expand_alias(s.value_str(), aliases);
            bound.insert(v.value_str().to_string(), name);
        }
    });
    bound
}

/// EX1303: parse results silently defaulted instead of crashed/handled.
pub fn detect_unplanned_extraction(ctx: &Ctx) -> Vec<Finding> {
    let parse_fns = ctx.config.str_list("EX1303", "parse_functions").to_vec();
    let is_parse_call = |n: &Node| -> bool {
        if n.kind != NodeKind::QualifiedCall {
            return false;
        }
        let Some(recv) = n.children.first() else { return false };
        if recv.kind != NodeKind::AliasRef {
            return false;
        }
        let full = format!("{}.{}", recv.value_str(), n.value_str());
        parse_fns.iter().any(|p| p == &full)
    };

    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        for f in &info.functions {
            for clause in &f.clauses {
                let def = ctx.node(clause.body);
                def.walk(&mut |n| {
                    // `Integer.parse(q) || default`
                    if n.kind == NodeKind::Call && n.value.as_deref() == Some("||") {
                        if n.children.first().is_some_and(&is_parse_call) {
                            findings.push(
                                ctx.finding(
                                    "EX1303",
                                    n.span.clone(),
                                    f.id(),
                                    "parse failure silently replaced by `||` default",
                                )
                                .with_str("kind", "or_default"),
                            );
                        }
                        return;
                    }
                    // `case Integer.parse(q) do ... _ -> default end` with
                    // no explicit :error clause.
                    if n.kind == NodeKind::Case
                        && n.args().next().is_some_and(&is_parse_call)
                    {
                        let Some(body) = n.section("do") else { return };
                        let mut has_catch_all = false;
                        let mut handles_error = false;
                        for clause_node in &body.children {
                            if clause_node.value.as_deref() != Some("->") {
                                continue;
                            }
                            let Some(patterns) = clause_node.children.first() else {
                                continue;
                            };
                            for pat in &patterns.children {
                                if pat.kind == NodeKind::Variable {
                                    has_catch_all = true;
                                }
                                pat.walk(&mut |p| {
                                    if p.is_atom_literal("error") {
                                        handles_error = true;
                                    }
                                });
                            }
                        }
                        if has_catch_all && !handles_error {
                            findings.push(
                                ctx.finding(
                                    "EX1303",
                                    n.span.clone(),
                                    f.id(),
                                    "case over a parse call substitutes a default via catch-all instead of handling :error",
                                )
                                .with_str("kind", "catch_all_default"),
                            );
                        }
                    }
                });
            }
        }
    }
    findings
}

/// EX1304: modules with identical names.
pub fn detect_duplicate_module_names(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for (name, spans) in &ctx.model.duplicate_module_names {
        let mut sorted = spans.clone();
        sorted.sort_by(|a, b| {
            (&a.file, a.start_line, a.start_col).cmp(&(&b.file, b.start_line, b.start_col))
        });
        let locations: Vec<String> = sorted
            .iter()
            .map(|s| format!("{}:{}", s.file, s.start_line))
            .collect();
        findings.push(
            ctx.finding(
                "EX1304",
                sorted[0].clone(),
                module_target(name),
                format!(
                    "module {name} is defined {} times ({}); the definitions cannot load together",
                    sorted.len(),
                    locations.join(", ")
                ),
            )
            .with_int("definitions", sorted.len() as i64)
            .with_str("locations", locations.join(",")),
        );
    }
    findings
}

/// EX1305: a macro that only splices plain values.
pub fn detect_unnecessary_macro(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        for f in &info.functions {
            if f.kind != crate::model::FunctionKind::Macro || f.name.starts_with("__") {
                continue;
            }
            for clause in &f.clauses {
                let def = ctx.node(clause.body);
                let Some(body) = def.section("do") else { continue };
                let [quote] = body.children.as_slice() else { continue };
                if quote.kind != NodeKind::Call || quote.value.as_deref() != Some("quote") {
                    continue;
                }
                let Some(quoted) = quote.section("do") else { continue };
                let mut injects_definitions = false;
                let mut non_value_unquote = false;
                let param_names: Vec<&String> = clause.param_names.iter().flatten().collect();
                for stmt in &quoted.children {
                    stmt.walk(&mut |n| {
                        if matches!(
                            n.kind,
                            NodeKind::FunctionDef
                                | NodeKind::MacroDef
                                | NodeKind::ModuleDef
                                | NodeKind::StructDef
                                | NodeKind::ProtocolDef
                                | NodeKind::ProtocolImpl
                        ) {
                            injects_definitions = true;
                        }
                        if n.kind == NodeKind::Call && n.value.as_deref() == Some("unquote") {
                            let plain = n.args().next().is_some_and(|arg| {
                                arg.kind == NodeKind::Variable
                                    && param_names.iter().any(|p| p.as_str() == arg.value_str())
                            });
                            if !plain {
                                non_value_unquote = true;
                            }
                        }
                    });
                }
                if !injects_definitions && !non_value_unquote {
                    findings.push(
                        ctx.finding(
                            "EX1305",
                            def.span.clone(),
                            f.id(),
                            format!(
                                "macro {} only quotes plain values; a function would do",
                                f.id()
                            ),
                        )
                        .with_str("macro", f.name.clone()),
                    );
                    break;
                }
            }
        }
    }
    findings
}

/// EX1306: library code reading global application config.
pub fn detect_app_config_in_lib(ctx: &Ctx) -> Vec<Finding> {
    let lib_globs = ctx.config.str_list("EX1306", "lib_globs").to_vec();
    const GETTERS: &[&str] = &["get_env", "fetch_env", "fetch_env!"];
    let mut findings = Vec::new();
    for site in &ctx.model.call_sites {
        if site.target_module.as_deref() != Some("Application")
            || !GETTERS.contains(&site.target_name.as_str())
        {
            continue;
        }
        if site.caller.name == "(module)" || site.caller.module.is_empty() {
            continue;
        }
        let Some(info) = ctx.module(&site.caller.module) else {
            continue;
        };
        if info.has_directive(crate::model::DirectiveKind::Use, "Application") {
            continue;
        }
        if !lib_globs
            .iter()
            .any(|g| crate::globpat::path_matches(g, &info.file_path))
        {
            continue;
        }
        findings.push(
            ctx.finding(
                "EX1306",
                site.span.clone(),
                site.caller.clone(),
                format!(
                    "library function {} reads global config via Application.{}",
                    site.caller, site.target_name
                ),
            )
            .with_str("getter", site.target_name.clone()),
        );
    }
    findings
}

/// EX1307: module attributes frozen from app config at compile time.
pub fn detect_compile_time_config(ctx: &Ctx) -> Vec<Finding> {
    const EXCLUDED: &[&str] = &["doc", "moduledoc", "typedoc", "shortdoc"];
    const GETTERS: &[&str] = &[
        "get_env",
        "fetch_env",
        "fetch_env!",
        "compile_env",
        "compile_env!",
    ];
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        let module_node = ctx.node(info.node);
        let Some(body) = module_node.section("do") else { continue };
        for stmt in &body.children {
            if stmt.kind != NodeKind::Attribute || stmt.children.is_empty() {
                continue;
            }
            let attr = stmt.value_str();
            if EXCLUDED.contains(&attr) {
                continue;
            }
            let mut getter: Option<String> = None;
            for value in &stmt.children {
                value.walk(&mut |n| {
                    if getter.is_some() {
                        return;
                    }
                    if n.kind == NodeKind::QualifiedCall
                        && n.children.first().is_some_and(|r| {
                            r.kind == NodeKind::AliasRef && r.value_str() == "Application"
                        })
                        && GETTERS.contains(&n.value_str())
                    {
                        getter = Some(n.value_str().to_string());
                    }
                });
            }
            if let Some(getter) = getter {
                findings.push(
                    ctx.finding(
                        "EX1307",
                        stmt.span.clone(),
                        module_target(&info.name),
                        format!(
                            "@{attr} in {} is frozen from Application.{getter} at compile time",
                            info.name
                        ),
                    )
                    .with_str("attribute", attr)
                    .with_str("getter", getter),
                );
            }
        }
    }
    findings
}

/// EX1308: `use` where the used module's __using__ only imports.
pub fn detect_use_vs_import(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        for d in &info.directives {
            if d.kind != crate::model::DirectiveKind::Use {
                continue;
            }
            let Some(used) = ctx.module(&d.target) else {
                continue;
            };
            if used.using_summary == crate::model::UsingMacroSummary::OnlyImportsAliases {
                findings.push(
                    ctx.finding(
                        "EX1308",
                        d.span.clone(),
                        FunctionId {
                            module: info.name.clone(),
                            name: "(module)".into(),
                            arity: 0,
                        },
                        format!(
                            "use {} only gains imports; `import {}` says the same thing plainly",
                            d.target, d.target
                        ),
                    )
                    .with_str("used_module", d.target.clone()),
                );
            }
        }
    }
    findings
}
