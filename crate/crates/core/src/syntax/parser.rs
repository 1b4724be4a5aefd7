//! Tolerant Pratt parser for the Elixir subset the detectors need.
//!
//! The operator table mirrors Elixir's published precedence levels and
//! associativity (`|>` is left-associative). Newlines terminate
//! expressions unless the previous token cannot end one (operator,
//! comma, open bracket, keyword key) or the next line starts with a
//! binary-only operator such as `|>`.
//!
//! In tolerant mode any unparseable region becomes an `Opaque` node with
//! a diagnostic and parsing continues; in strict mode the first failure
//! is returned as a `ParseError`.

use super::lexer::tokenize_file;
use super::token::{is_binary_only_word, Token, TokenKind, BINARY_ONLY_OPERATORS};
use super::tree::{Comment, CommentKind, Node, NodeKind, ParseDiagnostic, SyntaxTree};
use crate::span::SourceSpan;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Tolerant,
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("{span}: expected {expected}, found {found}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

type PResult<T> = Result<T, ParseError>;

/// Section keywords that split a `do` block.
const SECTION_KEYWORDS: &[&str] = &["else", "rescue", "catch", "after"];

/// Identifiers that never start a no-parens argument.
const NON_ARG_IDENTS: &[&str] = &[
    "do", "end", "else", "rescue", "catch", "after", "when", "and", "or", "in",
];

pub fn parse_source(source: &str, mode: Mode) -> PResult<(SyntaxTree, Vec<ParseDiagnostic>)> {
    parse_file("", source, mode)
}

pub fn parse_file(
    file: &str,
    source: &str,
    mode: Mode,
) -> PResult<(SyntaxTree, Vec<ParseDiagnostic>)> {
    let (tokens, lex_errors) = tokenize_file(file, source);
    if mode == Mode::Strict {
        if let Some(err) = lex_errors.first() {
            return Err(ParseError {
                span: err.span.clone(),
                expected: "a legal token".into(),
                found: err.message.clone(),
            });
        }
    }
    let mut comments = Vec::new();
    let stream = prepare_stream(&tokens, &mut comments);
    let mut parser = Parser {
        toks: stream,
        pos: 0,
        file: file.to_string(),
        mode,
        diags: Vec::new(),
        eof_recovered: false,
        in_no_parens: false,
    };
    for err in &lex_errors {
        parser.diags.push(ParseDiagnostic {
            span: err.span.clone(),
            message: err.message.clone(),
        });
    }
    let root = parser.parse_program()?;
    let mut diags = parser.diags;
    let mut tree = SyntaxTree {
        file: file.to_string(),
        root,
        comments,
    };
    collect_doc_comments(&mut tree);
    attach_comments(&mut tree);
    if mode == Mode::Strict && !diags.is_empty() {
        let d = diags.remove(0);
        return Err(ParseError {
            span: d.span,
            expected: "a parseable construct".into(),
            found: d.message,
        });
    }
    Ok((tree, diags))
}

/// Drop comments, collect them on the side, and remove "soft" breaks —
/// newlines that continue the surrounding expression.
fn prepare_stream(tokens: &[Token], comments: &mut Vec<Comment>) -> Vec<Token> {
    let significant: Vec<&Token> = tokens
        .iter()
        .filter(|t| {
            if t.kind == TokenKind::Comment {
                comments.push(Comment {
                    text: t.text.trim_start_matches('#').to_string(),
                    span: t.span.clone(),
                    kind: CommentKind::Line,
                });
                false
            } else {
                true
            }
        })
        .collect();

    let mut out: Vec<Token> = Vec::with_capacity(significant.len());
    for (i, tok) in significant.iter().enumerate() {
        if tok.kind != TokenKind::Break {
            out.push((*tok).clone());
            continue;
        }
        if matches!(out.last(), Some(t) if t.kind == TokenKind::Break) {
            continue;
        }
        let prev_continues = out.last().is_some_and(token_cannot_end_expression);
        let next_continues = significant[i + 1..]
            .iter()
            .find(|t| t.kind != TokenKind::Break)
            .is_some_and(|t| starts_with_binary_only_op(t));
        if prev_continues || next_continues {
            continue;
        }
        out.push((*tok).clone());
    }
    out
}

fn token_cannot_end_expression(t: &Token) -> bool {
    match t.kind {
        TokenKind::Operator => true,
        TokenKind::KeywordKey => true,
        TokenKind::Punct => matches!(t.text.as_str(), "(" | "[" | "{" | "," | ";"),
        TokenKind::Identifier => matches!(
            t.text.as_str(),
            "and" | "or" | "not" | "in" | "when" | "do" | "else" | "rescue" | "catch" | "after"
        ),
        _ => false,
    }
}

fn starts_with_binary_only_op(t: &Token) -> bool {
    match t.kind {
        TokenKind::Operator => BINARY_ONLY_OPERATORS.contains(&t.text.as_str()),
        TokenKind::Identifier => is_binary_only_word(&t.text),
        _ => false,
    }
}

/// Infix binding powers following Elixir's operator table; returns
/// (left bp, right bp). Right-associative operators have equal powers.
fn infix_bp(t: &Token) -> Option<(u16, u16)> {
    let left = |n: u16| Some((n, n + 1));
    let right = |n: u16| Some((n, n));
    match t.kind {
        TokenKind::Operator => match t.text.as_str() {
            "<-" | "\\\\" => left(40),
            "::" => right(60),
            "|" => right(70),
            "=>" => right(80),
            "=" => right(100),
            "||" | "|||" => left(120),
            "&&" | "&&&" => left(130),
            "==" | "!=" | "=~" | "===" | "!==" => left(140),
            "<" | ">" | "<=" | ">=" => left(150),
            "|>" | "<<<" | ">>>" | "<<~" | "~>>" | "<~" | "~>" | "<~>" | "<|>" => left(160),
            "^^^" => left(180),
            "++" | "--" | "+++" | "---" | "<>" | ".." => right(200),
            "+" | "-" => left(210),
            "*" | "/" | "//" => left(220),
            "**" => left(230),
            "." => left(310),
            _ => None,
        },
        TokenKind::Identifier => match t.text.as_str() {
            "when" => right(50),
            "or" => left(120),
            "and" => left(130),
            "in" => left(170),
            "not" => left(170), // only as the head of `not in`
            _ => None,
        },
        _ => None,
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    file: String,
    mode: Mode,
    diags: Vec<ParseDiagnostic>,
    eof_recovered: bool,
    in_no_parens: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, off: usize) -> Option<&Token> {
        self.toks.get(self.pos + off)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eof_span(&self) -> SourceSpan {
        match self.toks.last() {
            Some(t) => SourceSpan::point(self.file.clone(), t.span.end_line, t.span.end_col),
            None => SourceSpan::point(self.file.clone(), 1, 1),
        }
    }

    fn here_span(&self) -> SourceSpan {
        match self.peek() {
            Some(t) => t.span.clone(),
            None => self.eof_span(),
        }
    }

    fn fail<T>(&self, expected: &str) -> PResult<T> {
        let (span, found) = match self.peek() {
            Some(t) => (t.span.clone(), format!("`{}`", t.text)),
            None => (self.eof_span(), "end of input".to_string()),
        };
        Err(ParseError {
            span,
            expected: expected.to_string(),
            found,
        })
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(t) if t.kind == TokenKind::Break || t.is_sym(";")) {
            self.pos += 1;
        }
    }

    fn at_ident(&self, text: &str) -> bool {
        matches!(self.peek(), Some(t) if t.is_ident(text))
    }

    fn at_sym(&self, text: &str) -> bool {
        matches!(self.peek(), Some(t) if t.is_sym(text))
    }

    // ------------------------------------------------------------------
    // Program / statements
    // ------------------------------------------------------------------

    fn parse_program(&mut self) -> PResult<Vec<Node>> {
        let entries = self.parse_entries(&StopSet::TopLevel)?;
        Ok(group_entries(entries, &mut self.diags))
    }

    /// Parse and group the contents of one block section (or the top
    /// level): a run of statements, or stab clauses when `->` occurs.
    fn parse_section_body(&mut self, stop: &StopSet) -> PResult<Vec<Node>> {
        let entries = self.parse_entries(stop)?;
        Ok(group_entries(entries, &mut self.diags))
    }

    fn parse_entries(&mut self, stop: &StopSet) -> PResult<Vec<Entry>> {
        let mut entries = Vec::new();
        loop {
            self.skip_separators();
            if self.at_end() || stop.matches(self.peek()) {
                return Ok(entries);
            }
            let start_pos = self.pos;
            match self.parse_entry(stop) {
                Ok(entry) => {
                    entries.push(entry);
                    // A stuck parser consumes nothing; force progress.
                    if self.pos == start_pos {
                        self.pos += 1;
                    }
                }
                Err(err) => {
                    if self.mode == Mode::Strict {
                        return Err(err);
                    }
                    let node = self.recover(start_pos, &err);
                    entries.push(Entry {
                        exprs: vec![node],
                        arrow: None,
                    });
                }
            }
        }
    }

    fn parse_entry(&mut self, stop: &StopSet) -> PResult<Entry> {
        // `fn -> body end`: a clause may have no patterns at all.
        if self.at_sym("->") {
            let arrow = self.bump();
            return Ok(Entry {
                exprs: Vec::new(),
                arrow: Some(arrow.span),
            });
        }
        let mut exprs = vec![self.parse_expr(0)?];
        loop {
            if self.at_sym(",") {
                self.bump();
                self.skip_separators();
                if self.at_end() || stop.matches(self.peek()) {
                    break;
                }
                exprs.push(self.parse_expr(0)?);
                continue;
            }
            break;
        }
        let arrow = if self.at_sym("->") {
            Some(self.bump().span)
        } else {
            None
        };
        Ok(Entry { exprs, arrow })
    }

    /// Skip to a safe synchronization point and wrap the region in an
    /// opaque node, recording one diagnostic.
    fn recover(&mut self, start_pos: usize, err: &ParseError) -> Node {
        let start_span = self
            .toks
            .get(start_pos)
            .map(|t| t.span.clone())
            .unwrap_or_else(|| err.span.clone());
        // Consume at least one token so that the loop always advances.
        if self.pos == start_pos && !self.at_end() {
            self.pos += 1;
        }
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            match (t.kind, t.text.as_str()) {
                (TokenKind::Punct, "(" | "[" | "{") => depth += 1,
                (TokenKind::Operator, "<<" | "%") => {}
                (TokenKind::Punct, ")" | "]" | "}") => {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                }
                (TokenKind::Break, _) if depth == 0 => break,
                (TokenKind::Identifier, "end") if depth == 0 => break,
                (TokenKind::Identifier, kw)
                    if depth == 0 && SECTION_KEYWORDS.contains(&kw) =>
                {
                    break
                }
                _ => {}
            }
            self.pos += 1;
        }
        if self.at_end() {
            self.eof_recovered = true;
        }
        let end_span = if self.pos > start_pos {
            self.toks[self.pos - 1].span.clone()
        } else {
            start_span.clone()
        };
        let span = start_span.cover(&end_span);
        self.diags.push(ParseDiagnostic {
            span: span.clone(),
            message: format!("expected {}, found {}", err.expected, err.found),
        });
        Node::new(NodeKind::Opaque, span)
    }

    // ------------------------------------------------------------------
    // Expressions
    // ------------------------------------------------------------------

    fn parse_expr(&mut self, min_bp: u16) -> PResult<Node> {
        let mut lhs = self.parse_prefix()?;
        loop {
            // Immediate application of a call result: `unquote(name)()`.
            if matches!(lhs.kind, NodeKind::Call | NodeKind::QualifiedCall)
                && self.at_sym("(")
                && self.pos > 0
                && self.toks[self.pos].byte_start == self.toks[self.pos - 1].byte_end
            {
                let (args, close) = self.parse_paren_args()?;
                let span = lhs.span.cover(&close);
                let mut node = Node::new(NodeKind::QualifiedCall, span);
                node.children = std::iter::once(lhs).chain(args).collect();
                lhs = node;
                continue;
            }
            // `not in` is a single two-word operator.
            if self.at_ident("not") {
                if matches!(self.peek_at(1), Some(t) if t.is_ident("in")) {
                    let (l_bp, r_bp) = (170, 171);
                    if l_bp < min_bp {
                        break;
                    }
                    self.bump();
                    self.bump();
                    let rhs = self.parse_expr(r_bp)?;
                    let span = lhs.span.cover(&rhs.span);
                    let mut node = Node::with_value(NodeKind::Call, "not in", span);
                    node.children = vec![lhs, rhs];
                    lhs = node;
                    continue;
                }
                break;
            }
            let Some(tok) = self.peek() else { break };
            let Some((l_bp, r_bp)) = infix_bp(tok) else {
                break;
            };
            if l_bp < min_bp {
                break;
            }
            let op = self.bump();
            if op.is_sym(".") {
                lhs = self.parse_dot_suffix(lhs)?;
                continue;
            }
            let rhs = self.parse_expr(r_bp)?;
            let span = lhs.span.cover(&rhs.span);
            lhs = match op.text.as_str() {
                "|>" => {
                    let mut node = Node::new(NodeKind::Pipe, span);
                    node.children = vec![lhs, rhs];
                    node
                }
                "=" => {
                    let mut node = Node::new(NodeKind::Match, span);
                    node.children = vec![lhs, rhs];
                    node
                }
                text => {
                    let mut node = Node::with_value(NodeKind::Call, text, span);
                    node.children = vec![lhs, rhs];
                    node
                }
            };
        }
        Ok(lhs)
    }

    fn parse_prefix(&mut self) -> PResult<Node> {
        let Some(tok) = self.peek() else {
            return self.fail("an expression");
        };
        match tok.kind {
            TokenKind::Integer
            | TokenKind::Float
            | TokenKind::String
            | TokenKind::Heredoc
            | TokenKind::CharList
            | TokenKind::Sigil
            | TokenKind::Atom => {
                let t = self.bump();
                Ok(Node::with_value(NodeKind::Literal, t.text, t.span))
            }
            TokenKind::Opaque => {
                let t = self.bump();
                Ok(Node::new(NodeKind::Opaque, t.span))
            }
            TokenKind::KeywordKey => self.parse_keyword_run(),
            TokenKind::Alias => {
                let t = self.bump();
                Ok(Node::with_value(NodeKind::AliasRef, t.text, t.span))
            }
            TokenKind::Identifier => self.parse_identifier_expr(),
            TokenKind::Punct => match tok.text.as_str() {
                "(" => self.parse_paren_group(),
                "[" => self.parse_list(),
                "{" => self.parse_tuple(),
                _ => self.fail("an expression"),
            },
            TokenKind::Operator => match tok.text.as_str() {
                "%" => self.parse_percent(),
                "<<" => self.parse_binary_literal(),
                "&" => self.parse_capture(),
                "@" => self.parse_attribute(),
                "+" | "-" | "!" | "^" | "~~~" => {
                    let op = self.bump();
                    let operand = self.parse_expr(300)?;
                    let span = op.span.cover(&operand.span);
                    let mut node = Node::with_value(NodeKind::Call, op.text, span);
                    node.children = vec![operand];
                    Ok(node)
                }
                _ => self.fail("an expression"),
            },
            TokenKind::Break | TokenKind::Comment => self.fail("an expression"),
        }
    }

    fn parse_identifier_expr(&mut self) -> PResult<Node> {
        let tok = self.peek().unwrap().clone();
        match tok.text.as_str() {
            "true" | "false" | "nil" => {
                let t = self.bump();
                return Ok(Node::with_value(NodeKind::Literal, t.text, t.span));
            }
            "fn" => return self.parse_fn(),
            "not" => {
                let op = self.bump();
                let operand = self.parse_expr(300)?;
                let span = op.span.cover(&operand.span);
                let mut node = Node::with_value(NodeKind::Call, "not", span);
                node.children = vec![operand];
                return Ok(node);
            }
            "end" | "do" | "else" | "rescue" | "catch" | "after" | "when" | "and" | "or"
            | "in" => return self.fail("an expression"),
            _ => {}
        }
        let name_tok = self.bump();
        // Parenthesized call: `foo(args)`.
        if self.at_sym("(") {
            let (args, close_span) = self.parse_paren_args()?;
            let span = name_tok.span.cover(&close_span);
            let mut call = Node::with_value(NodeKind::Call, name_tok.text.clone(), span);
            call.children = args;
            if !self.in_no_parens {
                self.try_attach_do_block(&mut call)?;
            }
            return Ok(self.classify_call(call));
        }
        // Bracket access: `opts[:key]` (no space before `[`).
        if let Some(next) = self.peek() {
            if next.is_sym("[") && next.byte_start == name_tok.byte_end {
                let recv = Node::with_value(
                    NodeKind::Variable,
                    name_tok.text.clone(),
                    name_tok.span.clone(),
                );
                return self.parse_access_suffix(recv);
            }
        }
        // No-parens call: `def f(x) do`, `raise "boom"`, `send pid, msg`.
        if self.peek().is_some_and(|t| self.starts_no_parens_arg(t)) {
            let args = self.parse_no_parens_args()?;
            let last_span = args.last().map(|a| a.span.clone()).unwrap_or_default_span();
            let span = name_tok.span.cover(&last_span);
            let mut call = Node::with_value(NodeKind::Call, name_tok.text.clone(), span);
            call.children = args;
            if !self.in_no_parens {
                self.try_attach_do_block(&mut call)?;
            }
            return Ok(self.classify_call(call));
        }
        // Block-only call: `cond do ... end`.
        if self.at_ident("do") && !self.in_no_parens {
            let mut call =
                Node::with_value(NodeKind::Call, name_tok.text.clone(), name_tok.span.clone());
            self.try_attach_do_block(&mut call)?;
            return Ok(self.classify_call(call));
        }
        Ok(Node::with_value(
            NodeKind::Variable,
            name_tok.text,
            name_tok.span,
        ))
    }

    fn starts_no_parens_arg(&self, t: &Token) -> bool {
        match t.kind {
            TokenKind::Integer
            | TokenKind::Float
            | TokenKind::String
            | TokenKind::Heredoc
            | TokenKind::CharList
            | TokenKind::Sigil
            | TokenKind::Atom
            | TokenKind::Alias
            | TokenKind::KeywordKey => true,
            TokenKind::Identifier => !NON_ARG_IDENTS.contains(&t.text.as_str()),
            TokenKind::Punct => matches!(t.text.as_str(), "(" | "[" | "{"),
            TokenKind::Operator => match t.text.as_str() {
                "%" | "<<" | "&" | "@" | "!" | "^" | "~~~" => true,
                // `f -1` is a call of -1; `f - 1` is subtraction.
                "+" | "-" => self
                    .peek_at(1)
                    .is_some_and(|n| n.byte_start == t.byte_end && n.kind != TokenKind::Break),
                _ => false,
            },
            _ => false,
        }
    }

    fn parse_no_parens_args(&mut self) -> PResult<Vec<Node>> {
        let saved = self.in_no_parens;
        self.in_no_parens = true;
        let result = self.parse_no_parens_args_inner();
        self.in_no_parens = saved;
        result
    }

    fn parse_no_parens_args_inner(&mut self) -> PResult<Vec<Node>> {
        let mut args = Vec::new();
        loop {
            if matches!(self.peek(), Some(t) if t.kind == TokenKind::KeywordKey) {
                args.push(self.parse_keyword_run()?);
                return Ok(args);
            }
            args.push(self.parse_expr(0)?);
            if self.at_sym(",") {
                self.bump();
                self.skip_separators();
                continue;
            }
            return Ok(args);
        }
    }

    /// Keyword pairs without brackets: `do: :ok, else: :err`.
    fn parse_keyword_run(&mut self) -> PResult<Node> {
        let mut pairs = Vec::new();
        let start = self.here_span();
        loop {
            let key_tok = self.bump();
            debug_assert_eq!(key_tok.kind, TokenKind::KeywordKey);
            let key_name = key_tok.text.trim_end_matches(':');
            let key = Node::with_value(
                NodeKind::Literal,
                format!(":{}", key_name.trim_matches('"').trim_matches('\'')),
                key_tok.span.clone(),
            );
            self.skip_separators();
            let value = self.parse_expr(0)?;
            let span = key_tok.span.cover(&value.span);
            let mut pair = Node::with_value(NodeKind::Tuple, "pair", span);
            pair.children = vec![key, value];
            pairs.push(pair);
            if self.at_sym(",")
                && matches!(self.next_significant(1), Some(t) if t.kind == TokenKind::KeywordKey)
            {
                self.bump();
                self.skip_separators();
                continue;
            }
            break;
        }
        let span = pairs
            .iter()
            .fold(start, |acc, p| acc.cover(&p.span));
        let mut list = Node::new(NodeKind::KeywordList, span);
        list.children = pairs;
        Ok(list)
    }

    /// The next non-break token at or after `self.pos + off`.
    fn next_significant(&self, off: usize) -> Option<&Token> {
        self.toks[self.pos + off..]
            .iter()
            .find(|t| t.kind != TokenKind::Break)
    }

    fn parse_paren_args(&mut self) -> PResult<(Vec<Node>, SourceSpan)> {
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let result = self.parse_paren_args_inner();
        self.in_no_parens = saved;
        result
    }

    fn parse_paren_args_inner(&mut self) -> PResult<(Vec<Node>, SourceSpan)> {
        let open = self.bump(); // (
        debug_assert!(open.is_sym("("));
        let mut args = Vec::new();
        loop {
            self.skip_separators();
            if self.at_sym(")") {
                let close = self.bump();
                return Ok((args, close.span));
            }
            if self.at_end() {
                return self.fail("`)`");
            }
            if matches!(self.peek(), Some(t) if t.kind == TokenKind::KeywordKey) {
                args.push(self.parse_keyword_run()?);
            } else {
                args.push(self.parse_expr(0)?);
            }
            self.skip_separators();
            if self.at_sym(",") {
                self.bump();
            } else if !self.at_sym(")") {
                return self.fail("`,` or `)`");
            }
        }
    }

    fn parse_paren_group(&mut self) -> PResult<Node> {
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let result = self.parse_paren_group_inner();
        self.in_no_parens = saved;
        result
    }

    fn parse_paren_group_inner(&mut self) -> PResult<Node> {
        let open = self.bump(); // (
        self.skip_separators();
        if self.at_sym(")") {
            let close = self.bump();
            return Ok(Node::with_value(
                NodeKind::Literal,
                "()",
                open.span.cover(&close.span),
            ));
        }
        let stmts = self.parse_section_body(&StopSet::CloseParen)?;
        if !self.at_sym(")") {
            return self.fail("`)`");
        }
        let close = self.bump();
        let span = open.span.cover(&close.span);
        if stmts.len() == 1 {
            let mut only = stmts.into_iter().next().unwrap();
            only.span = span;
            Ok(only)
        } else {
            let mut block = Node::with_value(NodeKind::Call, "__block__", span);
            block.children = stmts;
            Ok(block)
        }
    }

    fn parse_list(&mut self) -> PResult<Node> {
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let result = self.parse_list_inner();
        self.in_no_parens = saved;
        result
    }

    fn parse_list_inner(&mut self) -> PResult<Node> {
        let open = self.bump(); // [
        let mut items: Vec<Node> = Vec::new();
        let mut kw_only = true;
        loop {
            self.skip_separators();
            if self.at_sym("]") {
                let close = self.bump();
                let span = open.span.cover(&close.span);
                let kind = if kw_only && !items.is_empty() {
                    NodeKind::KeywordList
                } else {
                    NodeKind::List
                };
                let mut node = Node::new(kind, span);
                node.children = items;
                return Ok(node);
            }
            if self.at_end() {
                return self.fail("`]`");
            }
            if matches!(self.peek(), Some(t) if t.kind == TokenKind::KeywordKey) {
                let run = self.parse_keyword_run()?;
                items.extend(run.children);
            } else {
                kw_only = false;
                items.push(self.parse_expr(0)?);
            }
            self.skip_separators();
            if self.at_sym(",") {
                self.bump();
            } else if !self.at_sym("]") {
                return self.fail("`,` or `]`");
            }
        }
    }

    fn parse_tuple(&mut self) -> PResult<Node> {
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let result = self.parse_tuple_inner();
        self.in_no_parens = saved;
        result
    }

    fn parse_tuple_inner(&mut self) -> PResult<Node> {
        let open = self.bump(); // {
        let mut items = Vec::new();
        loop {
            self.skip_separators();
            if self.at_sym("}") {
                let close = self.bump();
                let mut node = Node::new(NodeKind::Tuple, open.span.cover(&close.span));
                node.children = items;
                return Ok(node);
            }
            if self.at_end() {
                return self.fail("`}`");
            }
            if matches!(self.peek(), Some(t) if t.kind == TokenKind::KeywordKey) {
                let run = self.parse_keyword_run()?;
                items.extend(run.children);
            } else {
                items.push(self.parse_expr(0)?);
            }
            self.skip_separators();
            if self.at_sym(",") {
                self.bump();
            } else if !self.at_sym("}") {
                return self.fail("`,` or `}`");
            }
        }
    }

    /// `%{...}` maps and `%Alias{...}` structs.
    fn parse_percent(&mut self) -> PResult<Node> {
        let pct = self.bump(); // %
        if self.at_sym("{") {
            let (pairs, close) = self.parse_map_body()?;
            let mut node = Node::new(NodeKind::MapLiteral, pct.span.cover(&close));
            node.children = pairs;
            return Ok(node);
        }
        // Struct name: dotted aliases, a variable, `__MODULE__`, or `^var`.
        let name = match self.peek() {
            Some(t) if t.kind == TokenKind::Alias => {
                let mut text = self.bump().text;
                while self.at_sym(".")
                    && matches!(self.peek_at(1), Some(n) if n.kind == TokenKind::Alias)
                {
                    self.bump();
                    text.push('.');
                    text.push_str(&self.bump().text);
                }
                text
            }
            Some(t) if t.kind == TokenKind::Identifier => self.bump().text,
            Some(t) if t.is_sym("^") => {
                self.bump();
                match self.peek() {
                    Some(v) if v.kind == TokenKind::Identifier => format!("^{}", self.bump().text),
                    _ => return self.fail("a struct name"),
                }
            }
            _ => return self.fail("a struct name"),
        };
        if !self.at_sym("{") {
            return self.fail("`{`");
        }
        let (pairs, close) = self.parse_map_body()?;
        let mut node = Node::with_value(NodeKind::StructLiteral, name, pct.span.cover(&close));
        node.children = pairs;
        Ok(node)
    }

    fn parse_map_body(&mut self) -> PResult<(Vec<Node>, SourceSpan)> {
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let result = self.parse_map_body_inner();
        self.in_no_parens = saved;
        result
    }

    fn parse_map_body_inner(&mut self) -> PResult<(Vec<Node>, SourceSpan)> {
        let open = self.bump(); // {
        debug_assert!(open.is_sym("{"));
        let mut items = Vec::new();
        loop {
            self.skip_separators();
            if self.at_sym("}") {
                let close = self.bump();
                return Ok((items, close.span));
            }
            if self.at_end() {
                return self.fail("`}`");
            }
            if matches!(self.peek(), Some(t) if t.kind == TokenKind::KeywordKey) {
                let run = self.parse_keyword_run()?;
                items.extend(run.children);
            } else {
                let expr = self.parse_expr(0)?;
                items.push(arrow_pair_to_pair(expr));
            }
            self.skip_separators();
            if self.at_sym(",") {
                self.bump();
            } else if !self.at_sym("}") {
                return self.fail("`,` or `}`");
            }
        }
    }

    fn parse_binary_literal(&mut self) -> PResult<Node> {
        let open = self.bump(); // <<
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let mut items = Vec::new();
        let result = loop {
            self.skip_separators();
            if self.at_sym(">>") {
                let close = self.bump();
                let mut node = Node::with_value(NodeKind::Call, "<<>>", open.span.cover(&close.span));
                node.children = items;
                break Ok(node);
            }
            if self.at_end() {
                break self.fail("`>>`");
            }
            if matches!(self.peek(), Some(t) if t.kind == TokenKind::KeywordKey) {
                let run = self.parse_keyword_run()?;
                items.extend(run.children);
            } else {
                items.push(self.parse_expr(0)?);
            }
            self.skip_separators();
            if self.at_sym(",") {
                self.bump();
            } else if !self.at_sym(">>") {
                break self.fail("`,` or `>>`");
            }
        };
        self.in_no_parens = saved;
        result
    }

    fn parse_capture(&mut self) -> PResult<Node> {
        let amp = self.bump(); // &
        let operand = self.parse_expr(90)?;
        let span = amp.span.cover(&operand.span);
        // `&1` capture argument.
        if operand.kind == NodeKind::Literal
            && operand
                .value
                .as_deref()
                .is_some_and(|v| v.chars().all(|c| c.is_ascii_digit()))
        {
            return Ok(Node::with_value(
                NodeKind::Capture,
                format!("&{}", operand.value_str()),
                span,
            ));
        }
        // `&f/2` and `&Mod.f/2` name captures.
        if operand.kind == NodeKind::Call && operand.value.as_deref() == Some("/") {
            if let [callee, arity] = operand.children.as_slice() {
                let arity_text = arity.value.as_deref().unwrap_or("");
                let arity_ok = arity.kind == NodeKind::Literal
                    && arity_text.chars().all(|c| c.is_ascii_digit());
                if arity_ok {
                    let call = match callee.kind {
                        NodeKind::Variable => Some(Node::with_value(
                            NodeKind::Call,
                            callee.value_str(),
                            callee.span.clone(),
                        )),
                        NodeKind::QualifiedCall if callee.children.len() == 1 => {
                            Some(callee.clone())
                        }
                        _ => None,
                    };
                    if let Some(call) = call {
                        let mut node =
                            Node::with_value(NodeKind::Capture, arity_text.to_string(), span);
                        node.children = vec![call];
                        return Ok(node);
                    }
                }
            }
        }
        let mut node = Node::new(NodeKind::Capture, span);
        node.children = vec![operand];
        Ok(node)
    }

    fn parse_attribute(&mut self) -> PResult<Node> {
        let at = self.bump(); // @
        let operand = self.parse_expr(320)?;
        let span = at.span.cover(&operand.span);
        let node = match operand.kind {
            NodeKind::Variable => Node::with_value(NodeKind::Attribute, operand.value_str(), span),
            NodeKind::Call if operand.value.is_some() => {
                let mut n = Node::with_value(NodeKind::Attribute, operand.value_str(), span);
                n.children = operand.children;
                n
            }
            _ => {
                let mut n = Node::with_value(NodeKind::Attribute, "?", span);
                n.children = vec![operand];
                n
            }
        };
        Ok(node)
    }

    fn parse_fn(&mut self) -> PResult<Node> {
        let fn_tok = self.bump();
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let clauses = self.parse_section_body(&StopSet::BlockBody);
        self.in_no_parens = saved;
        let clauses = clauses?;
        let end_span = if self.at_ident("end") {
            self.bump().span
        } else {
            self.missing_end(&fn_tok.span);
            self.eof_span()
        };
        let mut node = Node::new(NodeKind::Fn, fn_tok.span.cover(&end_span));
        node.children = clauses;
        Ok(node)
    }

    fn missing_end(&mut self, opened_at: &SourceSpan) {
        if self.mode == Mode::Tolerant && self.eof_recovered {
            return;
        }
        self.diags.push(ParseDiagnostic {
            span: opened_at.clone(),
            message: "missing `end` for block".into(),
        });
        if self.at_end() {
            self.eof_recovered = true;
        }
    }

    // ------------------------------------------------------------------
    // Dot suffixes, access, do-blocks
    // ------------------------------------------------------------------

    fn parse_dot_suffix(&mut self, recv: Node) -> PResult<Node> {
        let Some(next) = self.peek() else {
            return self.fail("a name after `.`");
        };
        match next.kind {
            TokenKind::Alias => {
                let seg = self.bump();
                if recv.kind == NodeKind::AliasRef {
                    let span = recv.span.cover(&seg.span);
                    let name = format!("{}.{}", recv.value_str(), seg.text);
                    return Ok(Node::with_value(NodeKind::AliasRef, name, span));
                }
                // `expr.Alias` — unusual; keep it as a qualified call.
                let span = recv.span.cover(&seg.span);
                let mut node = Node::with_value(NodeKind::QualifiedCall, seg.text, span);
                node.children = vec![recv];
                Ok(node)
            }
            TokenKind::Identifier => {
                let name_tok = self.bump();
                if self.at_sym("(") {
                    let (args, close) = self.parse_paren_args()?;
                    let span = recv.span.cover(&close);
                    let mut node =
                        Node::with_value(NodeKind::QualifiedCall, name_tok.text.clone(), span);
                    node.children = std::iter::once(recv).chain(args).collect();
                    if !self.in_no_parens {
                        self.try_attach_do_block(&mut node)?;
                    }
                    return Ok(node);
                }
                // Bracket access directly after the name: `map.field[key]`.
                let span = recv.span.cover(&name_tok.span);
                let mut node =
                    Node::with_value(NodeKind::QualifiedCall, name_tok.text.clone(), span);
                node.children = vec![recv];
                if let Some(next) = self.peek() {
                    if next.is_sym("[") && next.byte_start == name_tok.byte_end {
                        return self.parse_access_suffix(node);
                    }
                }
                // No-parens qualified call: `IO.puts "hi"`.
                if self.peek().is_some_and(|t| self.starts_no_parens_arg(t)) {
                    let args = self.parse_no_parens_args()?;
                    let last = args.last().map(|a| a.span.clone()).unwrap_or_default_span();
                    node.span = node.span.cover(&last);
                    node.children.extend(args);
                    if !self.in_no_parens {
                        self.try_attach_do_block(&mut node)?;
                    }
                    return Ok(node);
                }
                if self.at_ident("do") && !self.in_no_parens {
                    self.try_attach_do_block(&mut node)?;
                }
                Ok(node)
            }
            TokenKind::Punct if next.text == "(" => {
                // Anonymous call: `f.(x)`.
                let (args, close) = self.parse_paren_args()?;
                let span = recv.span.cover(&close);
                let mut node = Node::new(NodeKind::QualifiedCall, span);
                node.children = std::iter::once(recv).chain(args).collect();
                Ok(node)
            }
            TokenKind::Punct if next.text == "{" => {
                // Multi-alias group: `alias Foo.{Bar, Baz}`.
                let (items, close) = {
                    let open = self.bump();
                    let mut items = Vec::new();
                    loop {
                        self.skip_separators();
                        if self.at_sym("}") {
                            break (items, self.bump().span);
                        }
                        if self.at_end() {
                            return self.fail("`}`");
                        }
                        items.push(self.parse_expr(0)?);
                        self.skip_separators();
                        if self.at_sym(",") {
                            self.bump();
                        } else if !self.at_sym("}") {
                            let _ = open;
                            return self.fail("`,` or `}`");
                        }
                    }
                };
                let span = recv.span.cover(&close);
                let mut node = Node::with_value(NodeKind::Tuple, "alias-group", span);
                node.children = std::iter::once(recv).chain(items).collect();
                Ok(node)
            }
            _ => self.fail("a name after `.`"),
        }
    }

    /// Rewrite `expr[key]` as `Access.get(expr, key)`, matching the
    /// quoted form the compiler produces.
    fn parse_access_suffix(&mut self, recv: Node) -> PResult<Node> {
        let open = self.bump(); // [
        debug_assert!(open.is_sym("["));
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        self.skip_separators();
        let key = self.parse_expr(0);
        self.in_no_parens = saved;
        let key = key?;
        self.skip_separators();
        if !self.at_sym("]") {
            return self.fail("`]`");
        }
        let close = self.bump();
        let span = recv.span.cover(&close.span);
        let access = Node::with_value(
            NodeKind::AliasRef,
            "Access",
            SourceSpan::point(self.file.clone(), recv.span.start_line, recv.span.start_col),
        );
        let mut node = Node::with_value(NodeKind::QualifiedCall, "get", span);
        node.children = vec![access, recv, key];
        // Chained access: `m[:a][:b]`.
        if let Some(next) = self.peek() {
            if next.is_sym("[") && next.byte_start == close.byte_end {
                return self.parse_access_suffix(node);
            }
        }
        Ok(node)
    }

    fn try_attach_do_block(&mut self, call: &mut Node) -> PResult<()> {
        if !self.at_ident("do") {
            return Ok(());
        }
        let do_tok = self.bump();
        let saved = self.in_no_parens;
        self.in_no_parens = false;
        let result = self.parse_do_sections(call, &do_tok);
        self.in_no_parens = saved;
        result
    }

    fn parse_do_sections(&mut self, call: &mut Node, do_tok: &Token) -> PResult<()> {
        let mut section_name = "do".to_string();
        let mut section_start = do_tok.span.clone();
        loop {
            let body = self.parse_section_body(&StopSet::BlockBody)?;
            let mut span = section_start.clone();
            if let Some(last) = body.last() {
                span = span.cover(&last.span);
            }
            let mut wrapper = Node::with_value(NodeKind::KeywordList, section_name.clone(), span);
            wrapper.children = body;
            call.children.push(wrapper);
            match self.peek() {
                Some(t) if t.is_ident("end") => {
                    let end = self.bump();
                    call.span = call.span.cover(&end.span);
                    return Ok(());
                }
                Some(t) if t.kind == TokenKind::Identifier
                    && SECTION_KEYWORDS.contains(&t.text.as_str()) =>
                {
                    let kw = self.bump();
                    section_name = kw.text;
                    section_start = kw.span;
                }
                _ => {
                    if self.mode == Mode::Strict {
                        return self.fail("`end`");
                    }
                    self.missing_end(&do_tok.span);
                    call.span = call.span.cover(&self.eof_span());
                    return Ok(());
                }
            }
        }
    }

    // ------------------------------------------------------------------
    // Classification of known call forms
    // ------------------------------------------------------------------

    fn classify_call(&mut self, mut call: Node) -> Node {
        normalize_do_keywords(&mut call);
        let name = call.value.clone().unwrap_or_default();
        match name.as_str() {
            "defmodule" => {
                let alias = call.args().find(|a| a.kind == NodeKind::AliasRef);
                if let Some(alias) = alias {
                    let module_name = alias.value_str().to_string();
                    let mut node = Node::with_value(NodeKind::ModuleDef, module_name, call.span);
                    node.children = call
                        .children
                        .into_iter()
                        .filter(|c| c.kind == NodeKind::KeywordList && c.value.is_some())
                        .collect();
                    return node;
                }
                call
            }
            "def" | "defp" | "defmacro" | "defmacrop" | "defdelegate" => {
                if call.args().next().is_none() {
                    return call;
                }
                let kind = if name.starts_with("defmacro") {
                    NodeKind::MacroDef
                } else {
                    NodeKind::FunctionDef
                };
                let mut node = Node::with_value(kind, name, call.span);
                node.children = call.children;
                node
            }
            "defstruct" if call.args().next().is_some() => {
                let mut node = Node::new(NodeKind::StructDef, call.span);
                node.children = call.children;
                node
            }
            "defprotocol" => {
                let alias_name = call
                    .args()
                    .find(|a| a.kind == NodeKind::AliasRef)
                    .map(|a| a.value_str().to_string());
                if let Some(alias_name) = alias_name {
                    let mut node =
                        Node::with_value(NodeKind::ProtocolDef, alias_name, call.span);
                    node.children = call
                        .children
                        .into_iter()
                        .filter(|c| c.kind == NodeKind::KeywordList && c.value.is_some())
                        .collect();
                    return node;
                }
                call
            }
            "defimpl" => {
                let alias_name = call
                    .args()
                    .find(|a| a.kind == NodeKind::AliasRef)
                    .map(|a| a.value_str().to_string());
                if let Some(alias_name) = alias_name {
                    let span = call.span.clone();
                    let mut for_target = Vec::new();
                    let mut sections = Vec::new();
                    for child in call.children {
                        match child.kind {
                            NodeKind::KeywordList if child.value.is_some() => sections.push(child),
                            NodeKind::KeywordList => {
                                for pair in child.children {
                                    if pair.pair_key() == Some("for") {
                                        if let Some(v) = pair.pair_value() {
                                            for_target.push(v.clone());
                                        }
                                    }
                                }
                            }
                            _ => {}
                        }
                    }
                    let mut node = Node::with_value(NodeKind::ProtocolImpl, alias_name, span);
                    if !for_target.is_empty() {
                        let span = for_target[0].span.clone();
                        let mut wrap = Node::with_value(NodeKind::KeywordList, "for", span);
                        wrap.children = for_target;
                        node.children.push(wrap);
                    }
                    node.children.extend(sections);
                    return node;
                }
                call
            }
            "case" => retag(call, NodeKind::Case),
            "cond" => retag(call, NodeKind::Cond),
            "with" => retag(call, NodeKind::With),
            "if" => retag(call, NodeKind::If),
            "unless" => retag(call, NodeKind::Unless),
            "try" => retag(call, NodeKind::TryRescue),
            "receive" => retag(call, NodeKind::Receive),
            "use" | "import" | "alias" | "require" => {
                if call.args().next().is_none() {
                    return call;
                }
                let mut node = Node::with_value(NodeKind::Directive, name, call.span);
                let mut children = Vec::new();
                for child in call.children {
                    if child.kind == NodeKind::Tuple
                        && child.value.as_deref() == Some("alias-group")
                    {
                        expand_alias_group(child, &mut children);
                    } else {
                        children.push(child);
                    }
                }
                node.children = children;
                node
            }
            _ => call,
        }
    }
}

enum StopSet {
    TopLevel,
    BlockBody,
    CloseParen,
}

impl StopSet {
    fn matches(&self, tok: Option<&Token>) -> bool {
        let Some(t) = tok else { return true };
        match self {
            StopSet::TopLevel => false,
            StopSet::BlockBody => {
                t.is_ident("end")
                    || (t.kind == TokenKind::Identifier
                        && SECTION_KEYWORDS.contains(&t.text.as_str()))
            }
            StopSet::CloseParen => t.is_sym(")"),
        }
    }
}

struct Entry {
    exprs: Vec<Node>,
    /// Span of the `->` token when this entry heads a clause.
    arrow: Option<SourceSpan>,
}

/// Group flat entries into plain statements and `->` clauses.
fn group_entries(entries: Vec<Entry>, diags: &mut Vec<ParseDiagnostic>) -> Vec<Node> {
    let has_clauses = entries.iter().any(|e| e.arrow.is_some());
    if !has_clauses {
        let mut out = Vec::new();
        for e in entries {
            if e.exprs.len() > 1 {
                diags.push(ParseDiagnostic {
                    span: e.exprs[0].span.clone(),
                    message: "unexpected `,` between expressions".into(),
                });
            }
            out.extend(e.exprs);
        }
        return out;
    }
    let mut out: Vec<Node> = Vec::new();
    let mut current: Option<Node> = None;
    for e in entries {
        if let Some(arrow_span) = e.arrow {
            if let Some(clause) = current.take() {
                out.push(clause);
            }
            let span = e
                .exprs
                .iter()
                .map(|n| n.span.clone())
                .fold(arrow_span, |a, b| a.cover(&b));
            let mut patterns = Node::new(NodeKind::List, span.clone());
            patterns.children = e.exprs;
            let mut clause = Node::with_value(NodeKind::Call, "->", span);
            clause.children = vec![patterns];
            current = Some(clause);
        } else if let Some(clause) = current.as_mut() {
            for x in e.exprs {
                clause.span = clause.span.cover(&x.span);
                clause.children.push(x);
            }
        } else {
            // Statements before the first clause; keep them as-is.
            out.extend(e.exprs);
        }
    }
    if let Some(clause) = current.take() {
        out.push(clause);
    }
    out
}

/// Convert `k => v` calls produced by the pratt loop into pair nodes.
fn arrow_pair_to_pair(node: Node) -> Node {
    if node.kind == NodeKind::Call && node.value.as_deref() == Some("=>") {
        let mut pair = Node::with_value(NodeKind::Tuple, "pair", node.span);
        pair.children = node.children;
        return pair;
    }
    node
}

/// Move `do:`/`else:`-style keyword arguments into section wrappers so
/// `def f, do: x` and `def f do x end` have the same shape.
fn normalize_do_keywords(call: &mut Node) {
    let has_do_section = call.section("do").is_some();
    let Some(last) = call.children.last() else {
        return;
    };
    if last.kind != NodeKind::KeywordList || last.value.is_some() {
        return;
    }
    let section_keys = ["do", "else", "rescue", "catch", "after"];
    let has_block_keys = last
        .children
        .iter()
        .any(|p| p.pair_key().is_some_and(|k| section_keys.contains(&k)));
    if !has_block_keys || has_do_section {
        return;
    }
    let kwlist = call.children.pop().unwrap();
    let mut rest = Vec::new();
    for pair in kwlist.children {
        let key = pair.pair_key().unwrap_or("").to_string();
        if section_keys.contains(&key.as_str()) {
            let value = pair.pair_value().cloned();
            let span = value
                .as_ref()
                .map(|v| v.span.clone())
                .unwrap_or_else(|| pair.span.clone());
            let mut wrap = Node::with_value(NodeKind::KeywordList, key, span);
            if let Some(v) = value {
                wrap.children.push(v);
            }
            call.children.push(wrap);
        } else {
            rest.push(pair);
        }
    }
    if !rest.is_empty() {
        let span = rest
            .iter()
            .map(|p| p.span.clone())
            .reduce(|a, b| a.cover(&b))
            .unwrap();
        let mut kw = Node::new(NodeKind::KeywordList, span);
        kw.children = rest;
        // Keep plain keyword args ahead of section wrappers.
        let insert_at = call
            .children
            .iter()
            .position(|c| c.kind == NodeKind::KeywordList && c.value.is_some())
            .unwrap_or(call.children.len());
        call.children.insert(insert_at, kw);
    }
}

/// `alias Foo.{Bar, Baz}` expands to individual alias refs.
fn expand_alias_group(group: Node, out: &mut Vec<Node>) {
    let mut children = group.children.into_iter();
    let Some(prefix) = children.next() else { return };
    let prefix_name = prefix.value_str().to_string();
    for item in children {
        if item.kind == NodeKind::AliasRef {
            let name = format!("{}.{}", prefix_name, item.value_str());
            out.push(Node::with_value(NodeKind::AliasRef, name, item.span));
        } else {
            out.push(item);
        }
    }
}

fn retag(call: Node, kind: NodeKind) -> Node {
    let mut node = Node::new(kind, call.span);
    node.children = call.children;
    node
}

/// Emit doc-attribute comments for `@doc`/`@moduledoc` string values.
fn collect_doc_comments(tree: &mut SyntaxTree) {
    let mut found: Vec<Comment> = Vec::new();
    tree.walk(&mut |node| {
        if node.kind == NodeKind::Attribute
            && matches!(node.value.as_deref(), Some("doc") | Some("moduledoc"))
        {
            if let Some(text) = node.children.first().and_then(|c| c.string_content()) {
                found.push(Comment {
                    text: text.to_string(),
                    span: node.span.clone(),
                    kind: CommentKind::DocAttribute,
                });
            }
        }
    });
    tree.comments.extend(found);
    tree.comments
        .sort_by_key(|c| (c.span.start_line, c.span.start_col));
}

/// Attach line comments as trivia: leading comments go to the next node
/// that starts after them; a comment on the same line as a node's end
/// attaches to that (outermost) node as trailing trivia.
fn attach_comments(tree: &mut SyntaxTree) {
    let comments: Vec<Comment> = tree
        .comments
        .iter()
        .filter(|c| c.kind == CommentKind::Line)
        .cloned()
        .collect();
    for comment in comments {
        attach_one(&mut tree.root, &comment);
    }
}

fn attach_one(roots: &mut [Node], comment: &Comment) -> bool {
    // Leading: the outermost node starting after the comment.
    fn try_leading(nodes: &mut [Node], c: &Comment) -> bool {
        for n in nodes.iter_mut() {
            if n.span.start() > c.span.end() {
                n.leading_comments.push(c.clone());
                return true;
            }
            if n.span.contains(&c.span) && try_leading(&mut n.children, c) {
                return true;
            }
        }
        false
    }
    // Trailing: the outermost node ending on the comment's line.
    fn try_trailing(nodes: &mut [Node], c: &Comment) -> bool {
        for n in nodes.iter_mut() {
            if n.span.end_line == c.span.start_line && n.span.end() <= c.span.start() {
                n.trailing_comments.push(c.clone());
                return true;
            }
            if n.span.contains(&c.span) && try_trailing(&mut n.children, c) {
                return true;
            }
        }
        false
    }
    try_leading(roots, comment) || try_trailing(roots, comment)
}

trait SpanDefault {
    fn unwrap_or_default_span(self) -> SourceSpan;
}

impl SpanDefault for Option<SourceSpan> {
    fn unwrap_or_default_span(self) -> SourceSpan {
        self.unwrap_or_else(|| SourceSpan::point("", 1, 1))
    }
}
