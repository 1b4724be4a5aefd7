//! The ten design-related Elixir-specific smells.

use super::Ctx;
use crate::metrics::message_payload_size;
use crate::model::{
    expand_alias, CallSite, DirectiveKind, FunctionId, FunctionKind, ModuleInfo, ParamPattern,
    Visibility,
};
use crate::rules::{module_target, Confidence, Finding};
use crate::syntax::{Node, NodeKind};
use std::collections::{BTreeMap, BTreeSet};

/// First non-receiver argument of a call site's node.
fn first_arg<'a>(ctx: &Ctx<'a>, site: &CallSite) -> Option<&'a Node> {
    let node = ctx.node(site.node);
    let skip = usize::from(node.kind == NodeKind::QualifiedCall);
    node.args().nth(skip)
}

fn nth_arg<'a>(ctx: &Ctx<'a>, site: &CallSite, n: usize) -> Option<&'a Node> {
    let node = ctx.node(site.node);
    let skip = usize::from(node.kind == NodeKind::QualifiedCall);
    node.args().nth(skip + n)
}

/// Resolve a module-naming argument: an alias or `__MODULE__`.
fn module_arg(ctx: &Ctx, site: &CallSite, arg: &Node) -> Option<String> {
    match arg.kind {
        NodeKind::AliasRef => {
            let aliases = ctx
                .module(&site.caller.module)
                .map(|m| &m.aliases)
                .cloned()
                .unwrap_or_default();
            Some(expand_alias(arg.value_str(), &aliases))
        }
        NodeKind::Variable if arg.value_str() == "__MODULE__" => {
            Some(site.caller.module.clone())
        }
        _ => None,
    }
}

/// EX1201: process started outside any supervision tree.
pub fn detect_unsupervised_process(ctx: &Ctx) -> Vec<Finding> {
    let apis = ctx.config.str_list("EX1201", "start_functions").to_vec();
    let specs = &ctx.model.supervised_child_specs;
    let mut findings = Vec::new();
    for site in &ctx.model.call_sites {
        let api = apis.iter().find(|entry| match entry.split_once('.') {
            Some((module, name)) => {
                site.target_module.as_deref() == Some(module) && site.target_name == name
            }
            None => site.target_module.is_none() && site.target_name == entry.as_str(),
        });
        let Some(api) = api else { continue };
        let bare_spawn = !api.contains('.');
        let started = first_arg(ctx, site).and_then(|arg| module_arg(ctx, site, arg));

        let exempt = !bare_spawn
            && (started
                .as_deref()
                .is_some_and(|m| specs.contains(m))
                || specs.contains(&site.caller.module));
        if exempt {
            continue;
        }
        let mut finding = ctx.finding(
            "EX1201",
            site.span.clone(),
            site.caller.clone(),
            match &started {
                Some(m) => format!("{api} starts {m} outside any supervision tree"),
                None => format!("{api} starts a process outside any supervision tree"),
            },
        );
        if ctx.model.dynamic_children {
            finding.confidence = Confidence::Heuristic;
        }
        finding = finding.with_str("api", api.clone());
        if let Some(m) = started {
            finding = finding.with_str("started_module", m);
        }
        findings.push(finding);
    }
    findings
}

fn defines_callback(info: &ModuleInfo, name: &str, arity: u32) -> bool {
    info.functions
        .iter()
        .any(|f| f.name == name && f.arity == arity && f.kind == FunctionKind::Function)
}

/// EX1202: Task/Agent handled like a GenServer.
pub fn detect_genserver_envy(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        if info.has_directive(DirectiveKind::Use, "GenServer") {
            continue;
        }
        let task_agent_apis: Vec<&CallSite> = ctx
            .model
            .call_sites
            .iter()
            .filter(|s| {
                s.caller.module == info.name
                    && matches!(s.target_module.as_deref(), Some("Task") | Some("Agent"))
            })
            .collect();
        if task_agent_apis.is_empty() {
            continue;
        }
        let callbacks: Vec<&str> = [
            ("handle_call", 3),
            ("handle_cast", 2),
            ("handle_info", 2),
        ]
        .iter()
        .filter(|(name, arity)| defines_callback(info, name, *arity))
        .map(|(name, _)| *name)
        .collect();

        let manual_receive = info.functions.iter().any(|f| {
            f.clauses.iter().any(|clause| {
                let def = ctx.node(clause.body);
                let mut has_receive = false;
                let mut has_agent_call = false;
                def.walk(&mut |n| {
                    if n.kind == NodeKind::Receive {
                        has_receive = true;
                    }
                    if n.kind == NodeKind::QualifiedCall
                        && n.children
                            .first()
                            .is_some_and(|r| r.value.as_deref() == Some("Agent"))
                    {
                        has_agent_call = true;
                    }
                });
                has_receive && has_agent_call
            })
        });

        if !callbacks.is_empty() || manual_receive {
            let reason = if callbacks.is_empty() {
                "wraps Agent calls in a manual receive loop".to_string()
            } else {
                format!(
                    "uses Task/Agent but defines GenServer callbacks ({})",
                    callbacks.join(", ")
                )
            };
            findings.push(
                ctx.finding(
                    "EX1202",
                    info.span.clone(),
                    module_target(&info.name),
                    format!("module {} {}", info.name, reason),
                )
                .with_str("callbacks", callbacks.join(",")),
            );
        }
    }
    findings
}

/// EX1203: one named Agent poked from many modules.
pub fn detect_agent_obsession(ctx: &Ctx) -> Vec<Finding> {
    let min_clients = ctx.config.int("EX1203", "min_client_modules");
    const ACCESSORS: &[&str] = &["get", "update", "get_and_update", "cast"];
    let mut clients: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut first_access: BTreeMap<String, &CallSite> = BTreeMap::new();

    for site in &ctx.model.call_sites {
        if site.target_module.as_deref() != Some("Agent")
            || !ACCESSORS.contains(&site.target_name.as_str())
        {
            continue;
        }
        let Some(arg) = first_arg(ctx, site) else { continue };
        let key = match arg.kind {
            NodeKind::Literal if arg.value_str().starts_with(':') => {
                Some(arg.value_str().to_string())
            }
            _ => module_arg(ctx, site, arg),
        };
        let Some(key) = key else { continue };
        if !site.caller.module.is_empty() {
            clients
                .entry(key.clone())
                .or_default()
                .insert(site.caller.module.clone());
        }
        first_access.entry(key).or_insert(site);
    }

    let mut findings = Vec::new();
    for (key, modules) in &clients {
        if (modules.len() as i64) < min_clients {
            continue;
        }
        // Anchor at the agent's start site when it can be located.
        let start_site = ctx.model.call_sites.iter().find(|s| {
            s.target_module.as_deref() == Some("Agent")
                && matches!(s.target_name.as_str(), "start" | "start_link")
                && agent_start_names(ctx, s).contains(key)
        });
        let anchor = start_site.or_else(|| first_access.get(key).copied());
        let Some(anchor) = anchor else { continue };
        findings.push(
            ctx.finding(
                "EX1203",
                anchor.span.clone(),
                anchor.caller.clone(),
                format!(
                    "agent {} is accessed from {} modules ({})",
                    key,
                    modules.len(),
                    modules.iter().cloned().collect::<Vec<_>>().join(", ")
                ),
            )
            .with_str("agent", key.clone())
            .with_int("client_modules", modules.len() as i64),
        );
    }
    findings
}

/// Names under which an `Agent.start_link` site registers itself.
fn agent_start_names(ctx: &Ctx, site: &CallSite) -> Vec<String> {
    let node = ctx.node(site.node);
    let mut names = Vec::new();
    for child in node.args() {
        if child.kind == NodeKind::KeywordList {
            for pair in &child.children {
                if pair.pair_key() == Some("name") {
                    if let Some(v) = pair.pair_value() {
                        match v.kind {
                            NodeKind::Literal if v.value_str().starts_with(':') => {
                                names.push(v.value_str().to_string());
                            }
                            _ => {
                                if let Some(m) = module_arg(ctx, site, v) {
                                    names.push(m);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // An agent started inside module M and registered as __MODULE__
    // resolves to M; accessing it by module alias also hits M.
    names.push(site.caller.module.clone());
    names
}

/// EX1204: oversized message payloads.
pub fn detect_large_messages(ctx: &Ctx) -> Vec<Finding> {
    let max_nodes = ctx.config.int("EX1204", "max_payload_nodes");
    let mut findings = Vec::new();
    for site in &ctx.model.call_sites {
        let payload = match (site.target_module.as_deref(), site.target_name.as_str()) {
            (None, "send") if site.target_arity == Some(2) => nth_arg(ctx, site, 1),
            (Some("Kernel"), "send") => nth_arg(ctx, site, 1),
            (Some("GenServer"), "call" | "cast") => nth_arg(ctx, site, 1),
            _ => None,
        };
        let Some(payload) = payload else { continue };
        let size = message_payload_size(payload) as i64;
        if size >= max_nodes {
            findings.push(
                ctx.finding(
                    "EX1204",
                    site.span.clone(),
                    site.caller.clone(),
                    format!(
                        "message payload spans {size} syntax nodes (limit {max_nodes})"
                    ),
                )
                .with_int("payload_nodes", size),
            );
        }
    }
    findings
}

/// EX1205: complex multi-clause function.
pub fn detect_complex_multiclause(ctx: &Ctx) -> Vec<Finding> {
    let max_clauses = ctx.config.int("EX1205", "max_clauses");
    let min_guards = ctx.config.int("EX1205", "min_guards");
    let min_pattern_clauses = ctx.config.int("EX1205", "min_pattern_clauses");
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        for f in &info.functions {
            if (f.clauses.len() as i64) < max_clauses {
                continue;
            }
            let guards: i64 = f.clauses.iter().map(|c| i64::from(c.guard_count)).sum();
            let pattern_clauses = f
                .clauses
                .iter()
                .filter(|c| c.params.iter().any(ParamPattern::is_structural))
                .count() as i64;
            if guards >= min_guards || pattern_clauses >= min_pattern_clauses {
                findings.push(
                    ctx.finding(
                        "EX1205",
                        f.span.clone(),
                        f.id(),
                        format!(
                            "{} has {} clauses with {} guards and {} pattern-matching clauses",
                            f.id(),
                            f.clauses.len(),
                            guards,
                            pattern_clauses
                        ),
                    )
                    .with_int("clauses", f.clauses.len() as i64)
                    .with_int("guards", guards)
                    .with_int("pattern_clauses", pattern_clauses),
                );
            }
        }
    }
    findings
}

/// EX1206: too many distinct error shapes handled in one function.
pub fn detect_complex_api_error_handling(ctx: &Ctx) -> Vec<Finding> {
    let max_shapes = ctx.config.int("EX1206", "max_error_shapes");
    ctx.fn_metrics
        .iter()
        .filter(|m| i64::from(m.distinct_error_shapes_handled) >= max_shapes)
        .map(|m| {
            ctx.finding(
                "EX1206",
                m.span.clone(),
                m.target.clone(),
                format!(
                    "{} handles {} distinct error shapes",
                    m.target, m.distinct_error_shapes_handled
                ),
            )
            .with_int(
                "error_shapes",
                i64::from(m.distinct_error_shapes_handled),
            )
        })
        .collect()
}

/// EX1207: exceptions steering ordinary control flow.
pub fn detect_exceptions_control_flow(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        for f in &info.functions {
            if f.visibility != Visibility::Public || f.name.ends_with('!') {
                continue;
            }
            'clauses: for clause in &f.clauses {
                let def = ctx.node(clause.body);
                let mut raise_site: Option<crate::span::SourceSpan> = None;
                def.walk(&mut |n| {
                    if raise_site.is_some() {
                        return;
                    }
                    if matches!(
                        n.kind,
                        NodeKind::Case
                            | NodeKind::Cond
                            | NodeKind::With
                            | NodeKind::If
                            | NodeKind::Unless
                    ) {
                        n.walk(&mut |inner| {
                            if raise_site.is_none()
                                && inner.kind == NodeKind::Call
                                && matches!(inner.value.as_deref(), Some("raise" | "throw"))
                                && !inner.children.is_empty()
                            {
                                raise_site = Some(inner.span.clone());
                            }
                        });
                    }
                });
                if let Some(span) = raise_site {
                    findings.push(
                        ctx.finding(
                            "EX1207",
                            span,
                            f.id(),
                            format!(
                                "{} raises inside a branch without the ! naming convention",
                                f.id()
                            ),
                        )
                        .with_str("kind", "branch_raise"),
                    );
                    break 'clauses;
                }
            }
        }
    }

    // try/rescue around calls into this same project.
    let mut try_nodes: Vec<(usize, &Node, FunctionId)> = Vec::new();
    for info in ctx.model.modules.values() {
        for f in &info.functions {
            for clause in &f.clauses {
                let def = ctx.node(clause.body);
                def.walk(&mut |n| {
                    if n.kind == NodeKind::TryRescue && n.section("rescue").is_some() {
                        try_nodes.push((clause.body.file, n, f.id()));
                    }
                });
            }
        }
    }
    for (_file, try_node, owner) in try_nodes {
        let Some(body) = try_node.section("do") else { continue };
        let in_project = ctx.model.call_sites.iter().any(|site| {
            site.target_module
                .as_deref()
                .is_some_and(|m| ctx.model.is_project_module(m))
                && span_within(&site.span, &body.span)
        });
        if in_project {
            findings.push(
                ctx.finding(
                    "EX1207",
                    try_node.span.clone(),
                    owner,
                    "rescue around a call into this project uses exceptions for control flow",
                )
                .with_str("kind", "project_rescue"),
            );
        }
    }
    findings
}

fn span_within(inner: &crate::span::SourceSpan, outer: &crate::span::SourceSpan) -> bool {
    inner.file == outer.file && outer.contains(inner)
}

/// EX1208: unguarded parameter dispatched through a project protocol.
pub fn detect_untested_polymorphism(ctx: &Ctx) -> Vec<Finding> {
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        if info.is_protocol {
            continue;
        }
        for f in &info.functions {
            if f.visibility != Visibility::Public {
                continue;
            }
            for clause in &f.clauses {
                for (pi, pattern) in clause.params.iter().enumerate() {
                    let ParamPattern::BareVariable(pname) = pattern else {
                        continue;
                    };
                    if clause.guarded_params.contains(&pi) {
                        continue;
                    }
                    let dispatched = ctx.model.calls_from(&f.id()).any(|site| {
                        let Some(target) = site.target_module.as_deref() else {
                            return false;
                        };
                        let Some(proto_fns) = ctx.model.protocols.get(target) else {
                            return false;
                        };
                        if !proto_fns.contains(&site.target_name) {
                            return false;
                        }
                        if !span_within(&site.span, &clause.span) {
                            return false;
                        }
                        first_arg(ctx, site).is_some_and(|arg| {
                            arg.kind == NodeKind::Variable && arg.value_str() == pname
                        })
                    });
                    if dispatched {
                        findings.push(
                            ctx.finding(
                                "EX1208",
                                clause.span.clone(),
                                f.id(),
                                format!(
                                    "parameter `{pname}` of {} reaches a protocol dispatch with no guard",
                                    f.id()
                                ),
                            )
                            .with_str("param", pname.clone())
                            .with_int("param_index", pi as i64),
                        );
                    }
                }
            }
        }
    }
    findings
}

/// EX1209: a GenServer that never uses its state.
pub fn detect_code_by_process(ctx: &Ctx) -> Vec<Finding> {
    const CALLBACKS: &[(&str, u32)] =
        &[("handle_call", 3), ("handle_cast", 2), ("handle_info", 2)];
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        if !info.has_directive(DirectiveKind::Use, "GenServer") {
            continue;
        }
        let callbacks: Vec<&crate::model::FunctionInfo> = info
            .functions
            .iter()
            .filter(|f| {
                CALLBACKS
                    .iter()
                    .any(|(n, a)| f.name == *n && f.arity == *a)
            })
            .collect();
        if !callbacks.iter().any(|f| f.name == "handle_call") {
            continue;
        }
        let all_stateless = callbacks.iter().all(|f| {
            f.clauses.iter().all(|clause| {
                let Some(ParamPattern::BareVariable(state)) = clause.params.last() else {
                    // Pattern-matching the state is a use of it.
                    return false;
                };
                clause_state_unused(ctx.node(clause.body), state)
            })
        });
        if all_stateless {
            findings.push(
                ctx.finding(
                    "EX1209",
                    info.span.clone(),
                    module_target(&info.name),
                    format!(
                        "GenServer {} never reads or updates its state; plain functions would do",
                        info.name
                    ),
                )
                .with_int("callbacks", callbacks.len() as i64),
            );
        }
    }
    findings
}

/// True when the state variable only flows through unchanged as the
/// final slot of `{:reply, ...}`/`{:noreply, ...}`/`{:stop, ...}` tuples.
fn clause_state_unused(def: &Node, state: &str) -> bool {
    let mut total = 0i64;
    def.walk(&mut |n| {
        if n.kind == NodeKind::Variable && n.value_str() == state {
            total += 1;
        }
    });
    let mut benign = 1i64; // the pattern binding itself
    def.walk(&mut |n| {
        if n.kind != NodeKind::Tuple {
            return;
        }
        let Some(first) = n.children.first() else { return };
        let benign_from = match first.value.as_deref() {
            Some(":reply") => 2,
            Some(":noreply") => 1,
            Some(":stop") => 2,
            _ => return,
        };
        for (i, child) in n.children.iter().enumerate() {
            if i >= benign_from && child.kind == NodeKind::Variable && child.value_str() == state
            {
                benign += 1;
            }
        }
    });
    total <= benign
}

/// EX1210: migration mixing DDL with data manipulation.
pub fn detect_data_migration(ctx: &Ctx) -> Vec<Finding> {
    const DDL: &[&str] = &["create", "alter", "drop", "table", "index"];
    let mut findings = Vec::new();
    for info in ctx.model.modules.values() {
        if !info.is_migration {
            continue;
        }
        let module_node = ctx.node(info.node);
        let mut has_ddl = false;
        let mut dml: Option<String> = None;
        module_node.walk(&mut |n| {
            match n.kind {
                NodeKind::Call => {
                    if let Some(name) = n.value.as_deref() {
                        if DDL.contains(&name) {
                            has_ddl = true;
                        }
                        if name == "execute" {
                            if let Some(arg) = n.args().next() {
                                if let Some(sql) = arg.string_content() {
                                    let upper = sql.to_uppercase();
                                    if upper.contains("INSERT")
                                        || upper.contains("UPDATE")
                                        || upper.contains("DELETE")
                                    {
                                        dml.get_or_insert_with(|| "execute".to_string());
                                    }
                                }
                            }
                        }
                    }
                }
                NodeKind::QualifiedCall => {
                    let repo = n.children.first().is_some_and(|r| {
                        r.kind == NodeKind::AliasRef
                            && r.value_str()
                                .rsplit('.')
                                .next()
                                .is_some_and(|seg| seg.ends_with("Repo"))
                    });
                    if repo {
                        let name = n.value_str();
                        if name == "all"
                            || name.starts_with("insert")
                            || name.starts_with("update")
                            || name.starts_with("delete")
                        {
                            dml.get_or_insert_with(|| format!("Repo.{name}"));
                        }
                    }
                }
                _ => {}
            }
        });
        if has_ddl {
            if let Some(dml_kind) = dml {
                findings.push(
                    ctx.finding(
                        "EX1210",
                        info.span.clone(),
                        module_target(&info.name),
                        format!(
                            "migration {} performs both schema changes and data manipulation ({})",
                            info.name, dml_kind
                        ),
                    )
                    .with_str("dml", dml_kind),
                );
            }
        }
    }
    findings
}
