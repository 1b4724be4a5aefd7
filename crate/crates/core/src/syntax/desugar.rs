//! Pipe desugaring: `f() |> g(p)` becomes `g(f(), p)`.
//!
//! The rewritten call keeps the pipe node's span, so downstream spans
//! still cover the full piped expression. Desugaring is idempotent: the
//! output contains no pipe nodes.

use super::tree::{Node, NodeKind, ParseDiagnostic, SyntaxTree};
use crate::span::SourceSpan;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
#[error("{span}: right side of |> is not a call or capture")]
pub struct MalformedPipeRhs {
    pub span: SourceSpan,
}

/// Rewrite every pipe in the tree. Fails on the first pipe whose right
/// side cannot receive an argument.
pub fn desugar_pipes(tree: &SyntaxTree) -> Result<SyntaxTree, MalformedPipeRhs> {
    let mut out = tree.clone();
    let mut err = None;
    for node in &mut out.root {
        rewrite(node, &mut |bad, _| {
            if err.is_none() {
                err = Some(MalformedPipeRhs { span: bad.clone() });
            }
        });
    }
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Like [`desugar_pipes`] but converts malformed pipes into opaque nodes
/// with diagnostics, for the tolerant scan pipeline.
pub fn desugar_pipes_tolerant(tree: &SyntaxTree) -> (SyntaxTree, Vec<ParseDiagnostic>) {
    let mut out = tree.clone();
    let mut diags = Vec::new();
    for node in &mut out.root {
        rewrite(node, &mut |bad, node| {
            diags.push(ParseDiagnostic {
                span: bad.clone(),
                message: "right side of |> is not a call or capture".into(),
            });
            *node = Node::new(NodeKind::Opaque, node.span.clone());
        });
    }
    (out, diags)
}

fn rewrite(node: &mut Node, on_malformed: &mut dyn FnMut(&SourceSpan, &mut Node)) {
    for child in &mut node.children {
        rewrite(child, on_malformed);
    }
    if node.kind != NodeKind::Pipe {
        return;
    }
    debug_assert_eq!(node.children.len(), 2);
    let rhs = node.children.pop().unwrap();
    let lhs = node.children.pop().unwrap();
    let span = node.span.clone();
    match rhs.kind {
        NodeKind::Call if rhs.value.is_some() => {
            let mut call = Node::with_value(NodeKind::Call, rhs.value_str(), span);
            call.children = std::iter::once(lhs).chain(rhs.children).collect();
            call.leading_comments = std::mem::take(&mut node.leading_comments);
            call.trailing_comments = std::mem::take(&mut node.trailing_comments);
            *node = call;
        }
        NodeKind::QualifiedCall => {
            // Insert the piped value after the receiver.
            let mut children = rhs.children;
            let receiver = if children.is_empty() {
                None
            } else {
                Some(children.remove(0))
            };
            let mut call = Node::new(NodeKind::QualifiedCall, span);
            call.value = rhs.value;
            if let Some(r) = receiver {
                call.children.push(r);
            }
            call.children.push(lhs);
            call.children.extend(children);
            call.leading_comments = std::mem::take(&mut node.leading_comments);
            call.trailing_comments = std::mem::take(&mut node.trailing_comments);
            *node = call;
        }
        // `x |> f` means `f(x)`; a bare name on the right is a call.
        NodeKind::Variable => {
            let mut call = Node::with_value(NodeKind::Call, rhs.value_str(), span);
            call.children = vec![lhs];
            call.leading_comments = std::mem::take(&mut node.leading_comments);
            call.trailing_comments = std::mem::take(&mut node.trailing_comments);
            *node = call;
        }
        // `x |> &f/1` pipes into an anonymous invocation of the capture.
        NodeKind::Capture => {
            let mut call = Node::new(NodeKind::QualifiedCall, span);
            call.children = vec![rhs, lhs];
            call.leading_comments = std::mem::take(&mut node.leading_comments);
            call.trailing_comments = std::mem::take(&mut node.trailing_comments);
            *node = call;
        }
        _ => {
            node.children.push(lhs);
            node.children.push(rhs);
            let span = node.span.clone();
            on_malformed(&span, node);
        }
    }
}

/// Count pipe nodes remaining in a tree (zero after desugaring).
pub fn count_pipes(tree: &SyntaxTree) -> usize {
    let mut n = 0;
    tree.walk(&mut |node| {
        if node.kind == NodeKind::Pipe {
            n += 1;
        }
    });
    n
}
