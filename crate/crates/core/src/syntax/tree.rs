//! Span-annotated syntax tree.
//!
//! Nodes mirror Elixir's quoted-form triple (form, metadata, arguments):
//! `kind` + `value` carry the form, `children` the arguments, and we add
//! the spans and comment trivia the quoted form lacks. Structured forms
//! (`defmodule`, `def`, `case`, ...) are classified into dedicated kinds;
//! anything unrecognized survives as an `Opaque` node with a correct span.

use crate::span::SourceSpan;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    ModuleDef,
    FunctionDef,
    MacroDef,
    StructDef,
    ProtocolDef,
    ProtocolImpl,
    Attribute,
    Call,
    QualifiedCall,
    Pipe,
    Match,
    Case,
    Cond,
    With,
    If,
    Unless,
    TryRescue,
    Receive,
    Fn,
    Capture,
    MapLiteral,
    StructLiteral,
    List,
    Tuple,
    KeywordList,
    Literal,
    Variable,
    AliasRef,
    Directive,
    Opaque,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommentKind {
    /// A `#` comment.
    Line,
    /// Content of a `@doc`/`@moduledoc` attribute.
    DocAttribute,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comment {
    /// Comment text without the leading `#` (or the doc string content).
    pub text: String,
    pub span: SourceSpan,
    pub kind: CommentKind,
}

/// Conventions for `value` by kind:
/// - `ModuleDef`/`ProtocolDef`: module name as written (`Foo.Bar`)
/// - `FunctionDef`/`MacroDef`: the defining keyword (`def`, `defp`, ...)
/// - `ProtocolImpl`: protocol name as written
/// - `Attribute`: attribute name (`doc`, `timeout`)
/// - `Call`: function name or operator symbol (`send`, `+`, `__block__`)
/// - `QualifiedCall`: called name; `None` for anonymous `expr.(args)`
/// - `Directive`: `use` | `import` | `alias` | `require`
/// - `Capture`: arity text for `&f/2` named captures, else `None`
/// - `Literal`/`Variable`: exact source text
/// - `AliasRef`: dotted name as written
/// - `Tuple` with value `"pair"`: a key/value pair inside a map,
///   keyword list or struct literal
/// - `KeywordList` with a value: a do-block section wrapper (`do`,
///   `else`, `rescue`, `catch`, `after`, `for`)
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Node {
    pub kind: NodeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub children: Vec<Node>,
    pub span: SourceSpan,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub leading_comments: Vec<Comment>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trailing_comments: Vec<Comment>,
}

impl Node {
    pub fn new(kind: NodeKind, span: SourceSpan) -> Node {
        Node {
            kind,
            value: None,
            children: Vec::new(),
            span,
            leading_comments: Vec::new(),
            trailing_comments: Vec::new(),
        }
    }

    pub fn with_value(kind: NodeKind, value: impl Into<String>, span: SourceSpan) -> Node {
        let mut n = Node::new(kind, span);
        n.value = Some(value.into());
        n
    }

    pub fn value_str(&self) -> &str {
        self.value.as_deref().unwrap_or("")
    }

    /// The `do`/`else`/... section wrapper with the given name, if any.
    pub fn section(&self, name: &str) -> Option<&Node> {
        self.children
            .iter()
            .find(|c| c.kind == NodeKind::KeywordList && c.value.as_deref() == Some(name))
    }

    /// Children that are not section wrappers (the plain arguments).
    pub fn args(&self) -> impl Iterator<Item = &Node> {
        self.children
            .iter()
            .filter(|c| !(c.kind == NodeKind::KeywordList && c.value.is_some()))
    }

    pub fn is_pair(&self) -> bool {
        self.kind == NodeKind::Tuple && self.value.as_deref() == Some("pair")
    }

    /// For a pair node, the key when it is an atom or keyword key.
    pub fn pair_key(&self) -> Option<&str> {
        if !self.is_pair() {
            return None;
        }
        let key = self.children.first()?;
        if key.kind == NodeKind::Literal {
            key.value.as_deref().map(|v| v.trim_start_matches(':'))
        } else {
            None
        }
    }

    pub fn pair_value(&self) -> Option<&Node> {
        if self.is_pair() {
            self.children.get(1)
        } else {
            None
        }
    }

    pub fn is_atom_literal(&self, name: &str) -> bool {
        self.kind == NodeKind::Literal
            && self
                .value
                .as_deref()
                .is_some_and(|v| v.strip_prefix(':') == Some(name))
    }

    pub fn is_string_literal(&self) -> bool {
        self.kind == NodeKind::Literal
            && self
                .value
                .as_deref()
                .is_some_and(|v| v.starts_with('"') || v.starts_with('\''))
    }

    /// Content of a string literal without its delimiters (best effort;
    /// escape sequences are left as written).
    pub fn string_content(&self) -> Option<&str> {
        let v = self.value.as_deref()?;
        if let Some(inner) = v.strip_prefix("\"\"\"").and_then(|s| s.strip_suffix("\"\"\"")) {
            return Some(inner);
        }
        if let Some(inner) = v.strip_prefix('"').and_then(|s| s.strip_suffix('"')) {
            return Some(inner);
        }
        if let Some(inner) = v.strip_prefix('\'').and_then(|s| s.strip_suffix('\'')) {
            return Some(inner);
        }
        None
    }

    /// Depth-first walk over this node and all descendants.
    pub fn walk<'a>(&'a self, visit: &mut dyn FnMut(&'a Node)) {
        visit(self);
        for c in &self.children {
            c.walk(visit);
        }
    }

    /// Count of nodes in this subtree, with pair wrappers counting as
    /// zero (a map of three literal entries counts 1 + 6).
    pub fn payload_node_count(&self) -> usize {
        let own = usize::from(!self.is_pair());
        own + self
            .children
            .iter()
            .map(Node::payload_node_count)
            .sum::<usize>()
    }
}

/// Parse result for one source file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyntaxTree {
    pub file: String,
    pub root: Vec<Node>,
    /// Every comment in the file in document order, including doc
    /// attributes, independent of trivia attachment.
    pub comments: Vec<Comment>,
}

impl SyntaxTree {
    pub fn walk<'a>(&'a self, visit: &mut dyn FnMut(&'a Node)) {
        for n in &self.root {
            n.walk(visit);
        }
    }
}

/// A recovery or encoding problem noted while parsing tolerantly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub message: String,
}
