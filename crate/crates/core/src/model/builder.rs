//! Two-pass model construction: structure first (modules, functions,
//! aliases, structs, protocols), then call sites resolved against that
//! structure.

use super::*;
use crate::syntax::{CommentKind, Node, NodeKind};
use std::collections::HashMap;

pub fn build_model(project: &Project) -> ProjectModel {
    let mut model = ProjectModel {
        files: project.files().iter().map(|f| f.path.clone()).collect(),
        ..ProjectModel::default()
    };
    let mut duplicates: BTreeMap<String, Vec<SourceSpan>> = BTreeMap::new();

    // Pass 1: structure.
    for (file_idx, file) in project.files().iter().enumerate() {
        let mut ptr_index = HashMap::new();
        let mut idx = 0usize;
        file.tree.walk(&mut |n| {
            ptr_index.insert(n as *const Node as usize, idx);
            idx += 1;
        });
        let mut walker = StructureWalker {
            file_idx,
            file,
            model: &mut model,
            duplicates: &mut duplicates,
            ptr_index,
        };
        let roots: Vec<&Node> = file.tree.root.iter().collect();
        walker.walk_scope(&roots, "");
    }

    model.duplicate_module_names = duplicates
        .into_iter()
        .filter(|(_, spans)| spans.len() > 1)
        .collect();

    // Pass 2: call sites and child specs, resolved against pass 1.
    let resolution = ResolutionTables::new(&model);
    for (file_idx, file) in project.files().iter().enumerate() {
        let mut walker = CallWalker {
            file_idx,
            model_calls: Vec::new(),
            resolution: &resolution,
            node_counter: 0,
            child_specs: BTreeSet::new(),
            dynamic_children: false,
            head_ptrs: std::collections::HashSet::new(),
        };
        for root in &file.tree.root {
            walker.visit(root, &CallContext::top_level());
        }
        model.call_sites.extend(walker.model_calls);
        model.supervised_child_specs.extend(walker.child_specs);
        model.dynamic_children |= walker.dynamic_children;
    }

    model
}

// ---------------------------------------------------------------------
// Pass 1: structure
// ---------------------------------------------------------------------

struct StructureWalker<'a> {
    file_idx: usize,
    file: &'a ProjectFile,
    model: &'a mut ProjectModel,
    duplicates: &'a mut BTreeMap<String, Vec<SourceSpan>>,
    /// Node address → preorder index, for O(1) `NodeRef` construction.
    ptr_index: HashMap<usize, usize>,
}

impl<'a> StructureWalker<'a> {
    /// Walk statements at one nesting level, tracking the module prefix.
    fn walk_scope(&mut self, stmts: &[&'a Node], prefix: &str) {
        for stmt in stmts {
            match stmt.kind {
                NodeKind::ModuleDef | NodeKind::ProtocolDef => {
                    let name = join_module(prefix, stmt.value_str());
                    self.register_module(stmt, &name, stmt.kind == NodeKind::ProtocolDef);
                    if let Some(body) = stmt.section("do") {
                        let children: Vec<&Node> = body.children.iter().collect();
                        self.walk_scope(&children, &name);
                    }
                }
                NodeKind::ProtocolImpl => {
                    self.register_impl(stmt, prefix, &AliasMap::new());
                }
                _ => {}
            }
        }
    }

    fn register_module(&mut self, node: &'a Node, name: &str, is_protocol: bool) {
        self.duplicates
            .entry(name.to_string())
            .or_default()
            .push(node.span.clone());

        let node_ref = self.node_ref_of(node);
        let body: Vec<&Node> = node
            .section("do")
            .map(|s| s.children.iter().collect())
            .unwrap_or_default();

        // Alias map for this module, needed to expand directive targets.
        let aliases = collect_aliases(&body);

        let mut info = ModuleInfo {
            name: name.to_string(),
            file: self.file_idx,
            file_path: self.file.path.clone(),
            span: node.span.clone(),
            node: node_ref,
            functions: Vec::new(),
            struct_def: None,
            attributes: BTreeMap::new(),
            directives: Vec::new(),
            aliases: aliases.clone(),
            is_migration: false,
            defines_using_macro: false,
            using_macro_body: None,
            using_summary: UsingMacroSummary::NoUsing,
            is_protocol,
        };

        let mut grouped: Vec<FunctionInfo> = Vec::new();
        let mut pending_doc = false;
        for stmt in &body {
            match stmt.kind {
                NodeKind::FunctionDef | NodeKind::MacroDef => {
                    if let Some(clause) = self.extract_clause(stmt, name) {
                        let kind = if stmt.kind == NodeKind::MacroDef {
                            FunctionKind::Macro
                        } else {
                            FunctionKind::Function
                        };
                        let visibility = if stmt.value_str().ends_with('p') {
                            Visibility::Private
                        } else {
                            Visibility::Public
                        };
                        let (fname, arity, info_clause) = clause;
                        if kind == FunctionKind::Macro && fname == "__using__" {
                            info.defines_using_macro = true;
                            info.using_macro_body = Some(self.node_ref_of(stmt));
                            info.using_summary = classify_using(stmt);
                        }
                        let existing = grouped.iter_mut().find(|f| {
                            f.name == fname && f.arity == arity && f.kind == kind
                        });
                        match existing {
                            Some(f) => {
                                f.doc_present |= pending_doc;
                                f.span = f.span.cover(&stmt.span);
                                f.clauses.push(info_clause);
                            }
                            None => grouped.push(FunctionInfo {
                                module: name.to_string(),
                                name: fname,
                                arity,
                                visibility,
                                kind,
                                clauses: vec![info_clause],
                                span: stmt.span.clone(),
                                doc_present: pending_doc,
                            }),
                        }
                    }
                    pending_doc = false;
                }
                NodeKind::StructDef => {
                    info.struct_def = Some(struct_fields(stmt));
                }
                NodeKind::Attribute => {
                    if stmt.value_str() == "doc" {
                        pending_doc = stmt
                            .children
                            .first()
                            .is_some_and(|c| c.string_content().is_some());
                    }
                    if !stmt.children.is_empty() {
                        info.attributes
                            .insert(stmt.value_str().to_string(), self.node_ref_of(stmt));
                    }
                }
                NodeKind::Directive => {
                    for target in directive_targets(stmt, &aliases) {
                        let kind = match stmt.value_str() {
                            "use" => DirectiveKind::Use,
                            "import" => DirectiveKind::Import,
                            "require" => DirectiveKind::Require,
                            _ => DirectiveKind::Alias,
                        };
                        if kind == DirectiveKind::Use && target == "Ecto.Migration" {
                            info.is_migration = true;
                        }
                        info.directives.push(DirectiveInfo {
                            kind,
                            target,
                            span: stmt.span.clone(),
                            node: self.node_ref_of(stmt),
                        });
                    }
                }
                NodeKind::ProtocolImpl => {
                    self.register_impl(stmt, name, &aliases);
                }
                _ => {}
            }
        }
        info.functions = grouped;

        if is_protocol {
            let fns: BTreeSet<String> =
                info.functions.iter().map(|f| f.name.clone()).collect();
            self.model.protocols.insert(name.to_string(), fns);
        }

        self.model
            .modules
            .entry(name.to_string())
            .or_insert(info);
    }

    fn register_impl(&mut self, node: &'a Node, enclosing: &str, aliases: &AliasMap) {
        let protocol = expand_alias(node.value_str(), aliases);
        let targets: Vec<String> = match node.section("for") {
            Some(section) => section
                .children
                .iter()
                .flat_map(|t| match t.kind {
                    NodeKind::AliasRef => vec![expand_alias(t.value_str(), aliases)],
                    NodeKind::List => t
                        .children
                        .iter()
                        .filter(|c| c.kind == NodeKind::AliasRef)
                        .map(|c| expand_alias(c.value_str(), aliases))
                        .collect(),
                    _ => Vec::new(),
                })
                .collect(),
            None => vec![enclosing.to_string()],
        };
        let entry = self.model.protocol_impls.entry(protocol).or_default();
        entry.extend(targets);
    }

    fn extract_clause(
        &self,
        def: &'a Node,
        _module: &str,
    ) -> Option<(String, u32, ClauseInfo)> {
        let head = def.args().next()?;
        let (head, guards) = peel_guards(head);
        let (name, params) = match head.kind {
            NodeKind::Call => (
                head.value_str().to_string(),
                head.args().collect::<Vec<_>>(),
            ),
            NodeKind::Variable => (head.value_str().to_string(), Vec::new()),
            NodeKind::QualifiedCall => {
                // `def unquote(name)(args)` and similar dynamic heads.
                ("(dynamic)".to_string(), head.args().skip(1).collect())
            }
            _ => ("(dynamic)".to_string(), Vec::new()),
        };

        let mut patterns = Vec::new();
        let mut param_names = Vec::new();
        for p in &params {
            patterns.push(classify_param(p));
            param_names.push(bound_names(p));
        }

        let mut guard_count = 0u32;
        let mut guard_vars: BTreeSet<String> = BTreeSet::new();
        for g in &guards {
            guard_count += count_guard_conditions(g);
            collect_variable_reads(g, &mut guard_vars);
        }
        let guarded_params: BTreeSet<usize> = param_names
            .iter()
            .enumerate()
            .filter(|(_, names)| names.iter().any(|n| guard_vars.contains(n)))
            .map(|(i, _)| i)
            .collect();

        let has_body = def.section("do").is_some();
        let line_count = def.span.end_line - def.span.start_line + 1;
        let comment_line_count = self
            .file
            .tree
            .comments
            .iter()
            .filter(|c| {
                c.kind == CommentKind::Line
                    && c.span.start_line >= def.span.start_line
                    && c.span.start_line <= def.span.end_line
            })
            .count() as u32;

        Some((
            name,
            patterns.len() as u32,
            ClauseInfo {
                params: patterns,
                param_names,
                guard_count,
                guarded_params,
                body: self.node_ref_of(def),
                line_count,
                comment_line_count,
                span: def.span.clone(),
                has_body,
            },
        ))
    }

    /// Preorder index of `node` within its file.
    fn node_ref_of(&self, node: &Node) -> NodeRef {
        let index = self
            .ptr_index
            .get(&(node as *const Node as usize))
            .copied()
            .unwrap_or(0);
        NodeRef {
            file: self.file_idx,
            index,
        }
    }
}

// ---------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------

type AliasMap = BTreeMap<String, String>;

fn join_module(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

/// Aliases declared anywhere in a module body. `alias Foo.Bar` maps
/// `Bar` to `Foo.Bar`; `as:` renames are honored.
fn collect_aliases(stmts: &[&Node]) -> AliasMap {
    let mut map = AliasMap::new();
    fn visit(node: &Node, map: &mut AliasMap) {
        if node.kind == NodeKind::Directive && node.value_str() == "alias" {
            let targets: Vec<&Node> = node
                .children
                .iter()
                .filter(|c| c.kind == NodeKind::AliasRef)
                .collect();
            let as_name = node
                .children
                .iter()
                .filter(|c| c.kind == NodeKind::KeywordList)
                .flat_map(|kw| kw.children.iter())
                .find(|p| p.pair_key() == Some("as"))
                .and_then(|p| p.pair_value())
                .filter(|v| v.kind == NodeKind::AliasRef)
                .map(|v| v.value_str().to_string());
            for t in &targets {
                let full = t.value_str().to_string();
                let short = match (&as_name, targets.len()) {
                    (Some(name), 1) => name.clone(),
                    _ => full.rsplit('.').next().unwrap_or(&full).to_string(),
                };
                map.insert(short, full);
            }
        }
        // Do not descend into nested modules; they keep their own scope.
        if matches!(node.kind, NodeKind::ModuleDef | NodeKind::ProtocolDef) {
            return;
        }
        for c in &node.children {
            visit(c, map);
        }
    }
    for s in stmts {
        visit(s, &mut map);
    }
    map
}

fn directive_targets(node: &Node, aliases: &AliasMap) -> Vec<String> {
    let expand = node.value_str() != "alias";
    node.children
        .iter()
        .filter(|c| c.kind == NodeKind::AliasRef)
        .map(|c| {
            if expand {
                expand_alias(c.value_str(), aliases)
            } else {
                c.value_str().to_string()
            }
        })
        .collect()
}

/// Split a definition head from its `when` guards.
fn peel_guards(head: &Node) -> (&Node, Vec<&Node>) {
    let mut guards = Vec::new();
    let mut current = head;
    while current.kind == NodeKind::Call
        && current.value.as_deref() == Some("when")
        && current.children.len() == 2
    {
        guards.push(&current.children[1]);
        current = &current.children[0];
    }
    (current, guards)
}

fn count_guard_conditions(guard: &Node) -> u32 {
    match (guard.kind, guard.value.as_deref()) {
        (NodeKind::Call, Some("and" | "or" | "when")) if guard.children.len() == 2 => {
            count_guard_conditions(&guard.children[0]) + count_guard_conditions(&guard.children[1])
        }
        _ => 1,
    }
}

pub(crate) fn classify_param(p: &Node) -> ParamPattern {
    match p.kind {
        NodeKind::Variable => {
            let name = p.value_str();
            if name.starts_with('_') {
                ParamPattern::Ignored
            } else {
                ParamPattern::BareVariable(name.to_string())
            }
        }
        NodeKind::StructLiteral => ParamPattern::StructPattern(p.value_str().to_string()),
        NodeKind::MapLiteral => ParamPattern::MapPattern,
        NodeKind::Tuple => ParamPattern::TuplePattern,
        NodeKind::List | NodeKind::KeywordList => ParamPattern::ListPattern,
        NodeKind::Match => {
            // `%S{} = p` or `p = %S{}`: take the structural side.
            let sides = &p.children;
            for side in sides {
                let classified = classify_param(side);
                if classified.is_structural() {
                    return classified;
                }
            }
            sides
                .first()
                .map(classify_param)
                .unwrap_or(ParamPattern::Literal)
        }
        NodeKind::Call if p.value.as_deref() == Some("\\\\") => p
            .children
            .first()
            .map(classify_param)
            .unwrap_or(ParamPattern::Literal),
        _ => ParamPattern::Literal,
    }
}

/// Variable names bound by a pattern (underscore names excluded).
pub(crate) fn bound_names(p: &Node) -> Vec<String> {
    let mut names = Vec::new();
    p.walk(&mut |n| {
        if n.kind == NodeKind::Variable {
            let name = n.value_str();
            if !name.starts_with('_') && !name.is_empty() {
                names.push(name.to_string());
            }
        }
    });
    names.sort();
    names.dedup();
    names
}

pub(crate) fn collect_variable_reads(node: &Node, out: &mut BTreeSet<String>) {
    node.walk(&mut |n| {
        if n.kind == NodeKind::Variable {
            out.insert(n.value_str().to_string());
        }
    });
}

fn struct_fields(def: &Node) -> Vec<String> {
    let mut fields = Vec::new();
    for arg in def.args() {
        match arg.kind {
            NodeKind::KeywordList | NodeKind::List => {
                for item in &arg.children {
                    if let Some(key) = item.pair_key() {
                        fields.push(key.to_string());
                    } else if item.kind == NodeKind::Literal {
                        if let Some(atom) = item.value_str().strip_prefix(':') {
                            fields.push(atom.to_string());
                        }
                    }
                }
            }
            _ => {}
        }
    }
    fields
}

/// Classify a `__using__` macro body by what its quote block contains.
fn classify_using(def: &Node) -> UsingMacroSummary {
    let Some(body) = def.section("do") else {
        return UsingMacroSummary::DefinesOtherForms;
    };
    let quote = body
        .children
        .iter()
        .find(|n| n.kind == NodeKind::Call && n.value.as_deref() == Some("quote"));
    let Some(quote) = quote else {
        return UsingMacroSummary::DefinesOtherForms;
    };
    let Some(quoted) = quote.section("do") else {
        return UsingMacroSummary::DefinesOtherForms;
    };
    let mut has_opaque = false;
    for stmt in &quoted.children {
        stmt.walk(&mut |n| {
            if n.kind == NodeKind::Opaque {
                has_opaque = true;
            }
        });
    }
    if has_opaque {
        return UsingMacroSummary::Opaque;
    }
    let all_imports = quoted.children.iter().all(|stmt| {
        stmt.kind == NodeKind::Directive
            && matches!(stmt.value_str(), "import" | "alias" | "require")
    });
    if all_imports && !quoted.children.is_empty() {
        UsingMacroSummary::OnlyImportsAliases
    } else {
        UsingMacroSummary::DefinesOtherForms
    }
}

// ---------------------------------------------------------------------
// Pass 2: call sites
// ---------------------------------------------------------------------

struct ResolutionTables {
    /// module → set of (name, arity) it defines (functions and macros).
    locals: HashMap<String, BTreeSet<(String, u32)>>,
    /// module → public (name, arity) pairs.
    publics: HashMap<String, BTreeSet<(String, u32)>>,
    /// module → alias map.
    aliases: HashMap<String, AliasMap>,
    /// module → imported project modules.
    imports: HashMap<String, Vec<String>>,
}

impl ResolutionTables {
    fn new(model: &ProjectModel) -> ResolutionTables {
        let mut locals = HashMap::new();
        let mut publics = HashMap::new();
        let mut aliases = HashMap::new();
        let mut imports = HashMap::new();
        for (name, info) in &model.modules {
            let mut local_set = BTreeSet::new();
            let mut public_set = BTreeSet::new();
            for f in &info.functions {
                local_set.insert((f.name.clone(), f.arity));
                if f.visibility == Visibility::Public {
                    public_set.insert((f.name.clone(), f.arity));
                }
            }
            locals.insert(name.clone(), local_set);
            publics.insert(name.clone(), public_set);
            let amap: AliasMap = info
                .aliases
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            let imp: Vec<String> = info
                .directives
                .iter()
                .filter(|d| d.kind == DirectiveKind::Import)
                .map(|d| d.target.clone())
                .collect();
            aliases.insert(name.clone(), amap);
            imports.insert(name.clone(), imp);
        }
        ResolutionTables {
            locals,
            publics,
            aliases,
            imports,
        }
    }

    fn resolve_unqualified(&self, module: &str, name: &str, arity: u32) -> Option<String> {
        let key = (name.to_string(), arity);
        if let Some(locals) = self.locals.get(module) {
            if locals.contains(&key) {
                return Some(module.to_string());
            }
        }
        for imported in self.imports.get(module).into_iter().flatten() {
            if let Some(publics) = self.publics.get(imported) {
                if publics.contains(&key) {
                    return Some(imported.clone());
                }
            }
        }
        None
    }

    fn expand(&self, module: &str, name: &str) -> String {
        match self.aliases.get(module) {
            Some(map) => expand_alias(name, map),
            None => name.to_string(),
        }
    }
}

#[derive(Clone)]
struct CallContext {
    module: String,
    function: FunctionId,
}

impl CallContext {
    fn top_level() -> CallContext {
        CallContext {
            module: String::new(),
            function: FunctionId {
                module: String::new(),
                name: "(top)".into(),
                arity: 0,
            },
        }
    }

    fn module_level(module: &str) -> CallContext {
        CallContext {
            module: module.to_string(),
            function: FunctionId {
                module: module.to_string(),
                name: "(module)".into(),
                arity: 0,
            },
        }
    }
}

struct CallWalker<'a> {
    file_idx: usize,
    model_calls: Vec<CallSite>,
    resolution: &'a ResolutionTables,
    node_counter: usize,
    child_specs: BTreeSet<String>,
    dynamic_children: bool,
    /// Definition heads look like calls but are signatures, not call
    /// sites; their top nodes are excluded from emission.
    head_ptrs: std::collections::HashSet<usize>,
}

impl<'a> CallWalker<'a> {
    fn visit(&mut self, node: &Node, ctx: &CallContext) {
        let this_index = self.node_counter;
        self.node_counter += 1;
        match node.kind {
            NodeKind::ModuleDef | NodeKind::ProtocolDef => {
                let name = join_module(&ctx.module, node.value_str());
                let inner = CallContext::module_level(&name);
                for c in &node.children {
                    self.visit(c, &inner);
                }
                return;
            }
            NodeKind::FunctionDef | NodeKind::MacroDef => {
                let id = def_identity(node, &ctx.module);
                let inner = CallContext {
                    module: ctx.module.clone(),
                    function: id,
                };
                if let Some(head) = node.args().next() {
                    let (peeled, _) = peel_guards(head);
                    self.head_ptrs.insert(peeled as *const Node as usize);
                }
                // Track supervisor child lists bound inside this body.
                self.scan_child_specs(node, &inner);
                for c in &node.children {
                    self.visit(c, &inner);
                }
                return;
            }
            NodeKind::Capture => {
                // `&f/2`: the inner call node carries the name; arity
                // comes from the capture.
                if let (Some(arity_text), Some(inner)) = (&node.value, node.children.first()) {
                    if let Ok(arity) = arity_text.parse::<u32>() {
                        // Count the skipped inner node(s) to keep the
                        // preorder indices aligned.
                        let inner_index = self.node_counter;
                        let mut count = 0usize;
                        inner.walk(&mut |_| count += 1);
                        self.node_counter += count;
                        self.emit(inner, inner_index, ctx, Some(arity), true);
                        return;
                    }
                }
                for c in &node.children {
                    self.visit(c, ctx);
                }
                return;
            }
            NodeKind::Call | NodeKind::QualifiedCall => {
                if !self.head_ptrs.contains(&(node as *const Node as usize)) {
                    self.emit(node, this_index, ctx, None, false);
                }
            }
            _ => {}
        }
        for c in &node.children {
            self.visit(c, ctx);
        }
    }

    fn emit(
        &mut self,
        node: &Node,
        index: usize,
        ctx: &CallContext,
        arity_override: Option<u32>,
        is_capture: bool,
    ) {
        let site = match node.kind {
            NodeKind::Call => {
                let name = node.value_str().to_string();
                let arity = arity_override.unwrap_or(node.args().count() as u32);
                let target_module = self
                    .resolution
                    .resolve_unqualified(&ctx.module, &name, arity);
                CallSite {
                    caller: ctx.function.clone(),
                    target_module,
                    target_name: name,
                    target_arity: Some(arity),
                    span: node.span.clone(),
                    node: NodeRef {
                        file: self.file_idx,
                        index,
                    },
                    is_capture,
                }
            }
            NodeKind::QualifiedCall => {
                let name = node
                    .value
                    .clone()
                    .unwrap_or_else(|| "(anonymous)".to_string());
                let arity =
                    arity_override.unwrap_or((node.args().count() as u32).saturating_sub(1));
                let target_module = node.children.first().and_then(|recv| match recv.kind {
                    NodeKind::AliasRef => {
                        Some(self.resolution.expand(&ctx.module, recv.value_str()))
                    }
                    NodeKind::Variable if recv.value_str() == "__MODULE__" => {
                        Some(ctx.module.clone())
                    }
                    NodeKind::Literal => recv
                        .value
                        .as_deref()
                        .filter(|v| v.starts_with(':'))
                        .map(|v| v.to_string()),
                    _ => None,
                });
                CallSite {
                    caller: ctx.function.clone(),
                    target_module,
                    target_name: name,
                    target_arity: Some(arity),
                    span: node.span.clone(),
                    node: NodeRef {
                        file: self.file_idx,
                        index,
                    },
                    is_capture,
                }
            }
            _ => return,
        };
        self.model_calls.push(site);
    }

    /// Find `Supervisor.start_link(children, ...)`/`Supervisor.init` and
    /// record the modules in literal child lists, following one level of
    /// local variable binding.
    fn scan_child_specs(&mut self, def: &Node, ctx: &CallContext) {
        let Some(body) = def.section("do") else { return };
        let mut bindings: HashMap<String, &Node> = HashMap::new();
        let mut stmts: Vec<&Node> = Vec::new();
        for stmt in &body.children {
            flatten_stmts(stmt, &mut stmts);
        }
        for stmt in stmts {
            if stmt.kind == NodeKind::Match {
                if let [lhs, rhs] = stmt.children.as_slice() {
                    if lhs.kind == NodeKind::Variable {
                        bindings.insert(lhs.value_str().to_string(), rhs);
                    }
                }
            }
            let mut calls: Vec<&Node> = Vec::new();
            stmt.walk(&mut |n| {
                if n.kind == NodeKind::QualifiedCall
                    && matches!(n.value.as_deref(), Some("start_link" | "init"))
                    && n.children.first().is_some_and(|r| {
                        r.kind == NodeKind::AliasRef && r.value_str() == "Supervisor"
                    })
                {
                    calls.push(n);
                }
            });
            for call in calls {
                let Some(first) = call.args().nth(1) else { continue };
                let list = match first.kind {
                    NodeKind::List | NodeKind::KeywordList => Some(first),
                    NodeKind::Variable => match bindings.get(first.value_str()) {
                        Some(bound)
                            if matches!(bound.kind, NodeKind::List | NodeKind::KeywordList) =>
                        {
                            Some(*bound)
                        }
                        Some(_) => {
                            self.dynamic_children = true;
                            None
                        }
                        None => {
                            self.dynamic_children = true;
                            None
                        }
                    },
                    NodeKind::AliasRef => None,
                    _ => {
                        self.dynamic_children = true;
                        None
                    }
                };
                if let Some(list) = list {
                    for item in &list.children {
                        if let Some(name) = child_spec_module(item, &ctx.module) {
                            self.child_specs.insert(name);
                        }
                    }
                }
            }
        }
    }
}

/// `{Module, arg}`, bare `Module`, or `%{start: {Module, ...}}`.
fn child_spec_module(item: &Node, enclosing: &str) -> Option<String> {
    match item.kind {
        NodeKind::AliasRef => Some(item.value_str().to_string()),
        NodeKind::Variable if item.value_str() == "__MODULE__" => Some(enclosing.to_string()),
        NodeKind::Tuple => item.children.first().and_then(|first| {
            if first.kind == NodeKind::AliasRef {
                Some(first.value_str().to_string())
            } else {
                None
            }
        }),
        NodeKind::MapLiteral => item
            .children
            .iter()
            .find(|p| p.pair_key() == Some("start"))
            .and_then(|p| p.pair_value())
            .and_then(|v| child_spec_module(v, enclosing)),
        _ => None,
    }
}

/// Consider statements inside block constructs too (`if` branches that
/// build child lists, etc.) without crossing function boundaries.
fn flatten_stmts<'n>(stmt: &'n Node, out: &mut Vec<&'n Node>) {
    out.push(stmt);
    match stmt.kind {
        NodeKind::If | NodeKind::Unless | NodeKind::Case | NodeKind::Cond | NodeKind::With => {
            for section in stmt
                .children
                .iter()
                .filter(|c| c.kind == NodeKind::KeywordList && c.value.is_some())
            {
                for inner in &section.children {
                    flatten_stmts(inner, out);
                }
            }
        }
        _ => {}
    }
}

/// Identity of a definition from its head.
fn def_identity(def: &Node, module: &str) -> FunctionId {
    let head = def.args().next();
    let (name, arity) = match head {
        Some(h) => {
            let (h, _) = peel_guards(h);
            match h.kind {
                NodeKind::Call => (h.value_str().to_string(), h.args().count() as u32),
                NodeKind::Variable => (h.value_str().to_string(), 0),
                _ => ("(dynamic)".to_string(), 0),
            }
        }
        None => ("(dynamic)".to_string(), 0),
    };
    FunctionId {
        module: module.to_string(),
        name,
        arity,
    }
}
