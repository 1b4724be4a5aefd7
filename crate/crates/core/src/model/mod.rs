//! Cross-file semantic model: module and function inventory, best-effort
//! call resolution, and the registries the detectors consume.

mod builder;
#[cfg(test)]
pub(crate) mod tests;

pub use builder::build_model;

use crate::span::SourceSpan;
use crate::syntax::{Node, ParseDiagnostic, SyntaxTree};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// One parsed source file, already pipe-desugared.
#[derive(Debug, Clone)]
pub struct ProjectFile {
    pub path: String,
    pub tree: SyntaxTree,
    pub source: String,
    pub diagnostics: Vec<ParseDiagnostic>,
}

/// A set of parsed files in canonical (path-sorted) order, so every
/// derived artifact is independent of scan order.
#[derive(Debug, Clone, Default)]
pub struct Project {
    files: Vec<ProjectFile>,
}

impl Project {
    pub fn new(mut files: Vec<ProjectFile>) -> Project {
        files.sort_by(|a, b| a.path.cmp(&b.path));
        Project { files }
    }

    pub fn files(&self) -> &[ProjectFile] {
        &self.files
    }

    pub fn file(&self, idx: usize) -> &ProjectFile {
        &self.files[idx]
    }

    /// Preorder node list for one file; `NodeRef.index` indexes into it.
    pub fn preorder(&self, file: usize) -> Vec<&Node> {
        let mut out = Vec::new();
        self.files[file].tree.walk(&mut |n| out.push(n));
        out
    }

    pub fn resolve<'a>(&'a self, index: &[Vec<&'a Node>], r: NodeRef) -> &'a Node {
        index[r.file][r.index]
    }

    /// Build the full node index once for repeated `NodeRef` lookups.
    pub fn node_index(&self) -> Vec<Vec<&Node>> {
        (0..self.files.len()).map(|i| self.preorder(i)).collect()
    }
}

/// Stable reference to a node: file index (in project order) plus the
/// node's preorder position within that file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NodeRef {
    pub file: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FunctionId {
    pub module: String,
    pub name: String,
    pub arity: u32,
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.module.is_empty() {
            write!(f, "{}/{}", self.name, self.arity)
        } else {
            write!(f, "{}.{}/{}", self.module, self.name, self.arity)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Public,
    Private,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionKind {
    Function,
    Macro,
}

/// Shape of one parameter pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamPattern {
    BareVariable(String),
    Literal,
    StructPattern(String),
    MapPattern,
    TuplePattern,
    ListPattern,
    Ignored,
}

impl ParamPattern {
    pub fn is_bare_variable(&self) -> bool {
        matches!(self, ParamPattern::BareVariable(_))
    }

    /// Non-trivial pattern: anything that constrains the argument shape.
    pub fn is_structural(&self) -> bool {
        !matches!(self, ParamPattern::BareVariable(_) | ParamPattern::Ignored)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClauseInfo {
    pub params: Vec<ParamPattern>,
    /// Variable names bound by each parameter pattern.
    pub param_names: Vec<Vec<String>>,
    pub guard_count: u32,
    pub guarded_params: BTreeSet<usize>,
    /// The `FunctionDef` node for this clause.
    pub body: NodeRef,
    pub line_count: u32,
    pub comment_line_count: u32,
    pub span: SourceSpan,
    pub has_body: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionInfo {
    pub module: String,
    pub name: String,
    pub arity: u32,
    pub visibility: Visibility,
    pub kind: FunctionKind,
    pub clauses: Vec<ClauseInfo>,
    pub span: SourceSpan,
    pub doc_present: bool,
}

impl FunctionInfo {
    pub fn id(&self) -> FunctionId {
        FunctionId {
            module: self.module.clone(),
            name: self.name.clone(),
            arity: self.arity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectiveKind {
    Use,
    Import,
    Alias,
    Require,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectiveInfo {
    pub kind: DirectiveKind,
    /// Alias-expanded target module name.
    pub target: String,
    pub span: SourceSpan,
    pub node: NodeRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UsingMacroSummary {
    NoUsing,
    OnlyImportsAliases,
    DefinesOtherForms,
    Opaque,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleInfo {
    pub name: String,
    pub file: usize,
    pub file_path: String,
    pub span: SourceSpan,
    pub node: NodeRef,
    pub functions: Vec<FunctionInfo>,
    /// Struct field names when the module declares `defstruct`.
    pub struct_def: Option<Vec<String>>,
    /// Module attribute definitions (last definition wins).
    pub attributes: BTreeMap<String, NodeRef>,
    pub directives: Vec<DirectiveInfo>,
    /// Short alias → full module name (`alias Foo.Bar` maps `Bar`).
    pub aliases: BTreeMap<String, String>,
    /// The module `use`s the migration framework (`Ecto.Migration`).
    pub is_migration: bool,
    pub defines_using_macro: bool,
    pub using_macro_body: Option<NodeRef>,
    pub using_summary: UsingMacroSummary,
    pub is_protocol: bool,
}

impl ModuleInfo {
    pub fn public_functions(&self) -> impl Iterator<Item = &FunctionInfo> {
        self.functions
            .iter()
            .filter(|f| f.visibility == Visibility::Public)
    }

    pub fn has_directive(&self, kind: DirectiveKind, target: &str) -> bool {
        self.directives
            .iter()
            .any(|d| d.kind == kind && d.target == target)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CallSite {
    pub caller: FunctionId,
    /// Resolved module, `None` when unresolved. External modules are
    /// carried by name (resolution soundness marks them external).
    pub target_module: Option<String>,
    pub target_name: String,
    pub target_arity: Option<u32>,
    pub span: SourceSpan,
    /// The call (or captured call) node.
    pub node: NodeRef,
    pub is_capture: bool,
}

impl CallSite {
    pub fn targets(&self, module: &str, name: &str) -> bool {
        self.target_module.as_deref() == Some(module) && self.target_name == name
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ProjectModel {
    /// File paths in model order; `NodeRef.file` indexes into this.
    pub files: Vec<String>,
    pub modules: BTreeMap<String, ModuleInfo>,
    /// Protocol name → declared function names.
    pub protocols: BTreeMap<String, BTreeSet<String>>,
    /// Protocol name → implementing type names.
    pub protocol_impls: BTreeMap<String, BTreeSet<String>>,
    pub duplicate_module_names: Vec<(String, Vec<SourceSpan>)>,
    pub call_sites: Vec<CallSite>,
    pub supervised_child_specs: BTreeSet<String>,
    /// Some supervisor child list was computed rather than literal, so
    /// `supervised_child_specs` may be incomplete.
    pub dynamic_children: bool,
}

impl ProjectModel {
    pub fn is_project_module(&self, name: &str) -> bool {
        self.modules.contains_key(name)
    }

    /// Call sites whose caller is the given function.
    pub fn calls_from<'a>(&'a self, id: &'a FunctionId) -> impl Iterator<Item = &'a CallSite> {
        self.call_sites.iter().filter(move |c| &c.caller == id)
    }
}

/// Module names in supervisor child lists across the whole project.
pub fn collect_child_specs(files: &[ProjectFile]) -> BTreeSet<String> {
    let project = Project::new(files.to_vec());
    build_model(&project).supervised_child_specs
}

/// Classification of a module's `__using__` macro.
pub fn using_macro_summary(module: &ModuleInfo) -> UsingMacroSummary {
    module.using_summary
}

/// Expand the first segment of a dotted name through an alias map.
pub fn expand_alias(name: &str, aliases: &BTreeMap<String, String>) -> String {
    let mut parts = name.splitn(2, '.');
    let first = parts.next().unwrap_or("");
    let rest = parts.next();
    match (aliases.get(first), rest) {
        (Some(full), Some(rest)) => format!("{full}.{rest}"),
        (Some(full), None) => full.clone(),
        _ => name.to_string(),
    }
}
