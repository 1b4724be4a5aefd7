//! Hand-written lossless lexer for Elixir source.
//!
//! Every token keeps its exact source slice; the bytes between tokens are
//! always whitespace. Comments and newline runs are tokens too, so the
//! stream can be reassembled byte-for-byte. Unknown byte runs become
//! `Opaque` tokens with an error recorded on the side, which keeps the
//! lexer total over arbitrary input.

use super::token::{Token, TokenKind};
use crate::span::SourceSpan;

/// A lexical error recorded while tolerantly scanning.
#[derive(Debug, Clone, PartialEq)]
pub struct LexError {
    pub span: SourceSpan,
    pub message: String,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    file: String,
    pos: usize,
    line: u32,
    col: u32,
    tokens: Vec<Token>,
    errors: Vec<LexError>,
}

/// Tokenize with an anonymous file name.
pub fn tokenize(source: &str) -> (Vec<Token>, Vec<LexError>) {
    tokenize_file("", source)
}

/// Tokenize, stamping `file` into every span.
pub fn tokenize_file(file: &str, source: &str) -> (Vec<Token>, Vec<LexError>) {
    let mut lx = Lexer {
        src: source,
        bytes: source.as_bytes(),
        file: file.to_string(),
        pos: 0,
        line: 1,
        col: 1,
        tokens: Vec::new(),
        errors: Vec::new(),
    };
    lx.run();
    (lx.tokens, lx.errors)
}

// Multi-character operators, longest first. `...` is handled separately
// because Elixir treats it as an identifier.
const OPERATORS: &[&str] = &[
    "<<~", "~>>", "<~>", "<|>", "|||", "&&&", "<<<", ">>>", "~~~", "!==", "===", "+++", "---",
    "^^^", "\\\\", "|>", "||", "&&", "==", "!=", "=~", "<=", ">=", "<>", "++", "--", "**", "..",
    "::", "->", "<-", "=>", "<<", ">>", "//", "<~", "~>", "+", "-", "*", "/", "=", "<", ">", "!",
    "^", "&", "|", ".", "@", "%",
];

impl<'a> Lexer<'a> {
    fn run(&mut self) {
        while self.pos < self.bytes.len() {
            self.next_token();
        }
    }

    fn peek(&self) -> u8 {
        *self.bytes.get(self.pos).unwrap_or(&0)
    }

    fn peek_at(&self, off: usize) -> u8 {
        *self.bytes.get(self.pos + off).unwrap_or(&0)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    /// Advance over one char, maintaining line/col.
    fn bump(&mut self) {
        let ch = self.rest().chars().next().unwrap();
        if ch == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        self.pos += ch.len_utf8();
    }

    fn bump_n_ascii(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn mark(&self) -> (usize, u32, u32) {
        (self.pos, self.line, self.col)
    }

    fn emit_from(&mut self, mark: (usize, u32, u32), kind: TokenKind) {
        self.emit_with_interp(mark, kind, Vec::new());
    }

    fn emit_with_interp(
        &mut self,
        mark: (usize, u32, u32),
        kind: TokenKind,
        interpolations: Vec<(usize, usize)>,
    ) {
        let (start, sl, sc) = mark;
        debug_assert!(self.pos > start);
        // End position is the column of the last character in the token.
        let (el, ec) = if self.col > 1 {
            (self.line, self.col - 1)
        } else {
            // Token ended exactly at a line boundary; recompute from text.
            last_position(&self.src[start..self.pos], sl, sc)
        };
        self.tokens.push(Token {
            kind,
            text: self.src[start..self.pos].to_string(),
            span: SourceSpan::new(self.file.clone(), sl, sc, el, ec),
            byte_start: start,
            byte_end: self.pos,
            interpolations,
        });
    }

    fn error_at(&mut self, mark: (usize, u32, u32), message: impl Into<String>) {
        let (_, sl, sc) = mark;
        self.errors.push(LexError {
            span: SourceSpan::new(self.file.clone(), sl, sc, self.line, self.col.max(1)),
            message: message.into(),
        });
    }

    fn next_token(&mut self) {
        let c = self.peek();
        match c {
            b' ' | b'\t' | b'\r' => {
                // Look ahead: a whitespace run containing a newline is a
                // Break token; purely horizontal whitespace is skipped.
                let mark = self.mark();
                let mut has_newline = false;
                while matches!(self.peek(), b' ' | b'\t' | b'\r' | b'\n') {
                    if self.peek() == b'\n' {
                        has_newline = true;
                    }
                    self.bump();
                }
                if has_newline {
                    self.emit_from(mark, TokenKind::Break);
                }
            }
            b'\n' => {
                let mark = self.mark();
                while matches!(self.peek(), b' ' | b'\t' | b'\r' | b'\n') {
                    self.bump();
                }
                self.emit_from(mark, TokenKind::Break);
            }
            b'#' => self.lex_comment(),
            b'"' | b'\'' => self.lex_quoted(c),
            b'0'..=b'9' => self.lex_number(),
            b':' => self.lex_colon(),
            b'?' => self.lex_char_literal(),
            b'~' => self.lex_tilde(),
            b'(' | b')' | b'[' | b']' | b'{' | b'}' | b',' | b';' => {
                let mark = self.mark();
                self.bump();
                self.emit_from(mark, TokenKind::Punct);
            }
            _ => {
                if c == b'.' && self.peek_at(1) == b'.' && self.peek_at(2) == b'.' {
                    // `...` is an identifier in Elixir.
                    let mark = self.mark();
                    self.bump_n_ascii(3);
                    self.emit_from(mark, TokenKind::Identifier);
                    return;
                }
                let ch = self.rest().chars().next().unwrap();
                if is_ident_start(ch) {
                    self.lex_identifier();
                } else if ch.is_ascii_uppercase() {
                    self.lex_alias();
                } else if let Some(op) = self.match_operator() {
                    let mark = self.mark();
                    self.bump_n_ascii(op.len());
                    self.emit_from(mark, TokenKind::Operator);
                } else {
                    // Unknown character run: group consecutive unknowns
                    // into one opaque token.
                    let mark = self.mark();
                    while self.pos < self.bytes.len() && !self.known_start() {
                        self.bump();
                    }
                    self.emit_from(mark, TokenKind::Opaque);
                    self.error_at(mark, format!("unexpected character `{ch}`"));
                }
            }
        }
    }

    /// Whether the current position begins something the lexer knows.
    fn known_start(&self) -> bool {
        let c = self.peek();
        if matches!(
            c,
            b' ' | b'\t'
                | b'\r'
                | b'\n'
                | b'#'
                | b'"'
                | b'\''
                | b'0'..=b'9'
                | b':'
                | b'?'
                | b'~'
                | b'('
                | b')'
                | b'['
                | b']'
                | b'{'
                | b'}'
                | b','
                | b';'
        ) {
            return true;
        }
        let ch = match self.rest().chars().next() {
            Some(ch) => ch,
            None => return true,
        };
        is_ident_start(ch) || ch.is_ascii_uppercase() || self.match_operator().is_some()
    }

    fn match_operator(&self) -> Option<&'static str> {
        let rest = self.rest();
        OPERATORS.iter().copied().find(|op| rest.starts_with(op))
    }

    fn lex_comment(&mut self) {
        let mark = self.mark();
        while self.pos < self.bytes.len() && self.peek() != b'\n' {
            self.bump();
        }
        self.emit_from(mark, TokenKind::Comment);
    }

    fn lex_identifier(&mut self) {
        let mark = self.mark();
        self.bump();
        while let Some(ch) = self.rest().chars().next() {
            if is_ident_continue(ch) {
                self.bump();
            } else {
                break;
            }
        }
        if matches!(self.peek(), b'?' | b'!') {
            self.bump();
        }
        self.finish_name(mark, TokenKind::Identifier);
    }

    fn lex_alias(&mut self) {
        let mark = self.mark();
        self.bump();
        while matches!(self.peek(), b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_') {
            self.bump();
        }
        self.finish_name(mark, TokenKind::Alias);
    }

    /// Merge a trailing `:` into a keyword key when followed by
    /// whitespace or end of input (`foo: 1`, `do: :ok`). A double colon
    /// is the `::` operator and never a key.
    fn finish_name(&mut self, mark: (usize, u32, u32), kind: TokenKind) {
        if self.peek() == b':'
            && self.peek_at(1) != b':'
            && matches!(self.peek_at(1), b' ' | b'\t' | b'\r' | b'\n' | 0)
        {
            self.bump();
            self.emit_from(mark, TokenKind::KeywordKey);
        } else {
            self.emit_from(mark, kind);
        }
    }

    fn lex_number(&mut self) {
        let mark = self.mark();
        if self.peek() == b'0' && matches!(self.peek_at(1), b'x' | b'b' | b'o') {
            let base = self.peek_at(1);
            self.bump_n_ascii(2);
            let digits_ok: fn(u8) -> bool = match base {
                b'x' => |b| b.is_ascii_hexdigit() || b == b'_',
                b'b' => |b| matches!(b, b'0' | b'1' | b'_'),
                _ => |b| matches!(b, b'0'..=b'7' | b'_'),
            };
            while digits_ok(self.peek()) {
                self.bump();
            }
            self.emit_from(mark, TokenKind::Integer);
            return;
        }
        while matches!(self.peek(), b'0'..=b'9' | b'_') {
            self.bump();
        }
        let mut is_float = false;
        if self.peek() == b'.' && self.peek_at(1).is_ascii_digit() {
            is_float = true;
            self.bump();
            while matches!(self.peek(), b'0'..=b'9' | b'_') {
                self.bump();
            }
        }
        if matches!(self.peek(), b'e' | b'E')
            && (self.peek_at(1).is_ascii_digit()
                || (matches!(self.peek_at(1), b'+' | b'-') && self.peek_at(2).is_ascii_digit()))
        {
            is_float = true;
            self.bump();
            if matches!(self.peek(), b'+' | b'-') {
                self.bump();
            }
            while matches!(self.peek(), b'0'..=b'9' | b'_') {
                self.bump();
            }
        }
        self.emit_from(
            mark,
            if is_float {
                TokenKind::Float
            } else {
                TokenKind::Integer
            },
        );
    }

    /// `?a`, `?\n`, `?\\` — character code literals.
    fn lex_char_literal(&mut self) {
        let mark = self.mark();
        self.bump();
        if self.peek() == b'\\' {
            self.bump();
            if self.pos < self.bytes.len() {
                self.bump();
            }
        } else if self.pos < self.bytes.len() {
            self.bump();
        }
        self.emit_from(mark, TokenKind::Integer);
    }

    fn lex_colon(&mut self) {
        let mark = self.mark();
        if self.peek_at(1) == b':' {
            self.bump_n_ascii(2);
            self.emit_from(mark, TokenKind::Operator);
            return;
        }
        self.bump();
        let next = self.peek();
        if next == b'"' || next == b'\'' {
            // Quoted atom `:"some name"`.
            let interp = self.scan_delimited(next as char, next as char, true, false);
            self.emit_with_interp(mark, TokenKind::Atom, interp);
            return;
        }
        let ch = self.rest().chars().next().unwrap_or(' ');
        if is_ident_start(ch) || ch.is_ascii_uppercase() {
            self.bump();
            while let Some(c2) = self.rest().chars().next() {
                if is_ident_continue(c2) {
                    self.bump();
                } else {
                    break;
                }
            }
            if matches!(self.peek(), b'?' | b'!') {
                self.bump();
            }
            // `@` may end an atom (`:queue@local` is Erlang-ish); keep simple.
            self.emit_from(mark, TokenKind::Atom);
            return;
        }
        // Operator atom such as `:+` or `:<>`.
        if let Some(op) = self.match_operator() {
            self.bump_n_ascii(op.len());
            self.emit_from(mark, TokenKind::Atom);
            return;
        }
        self.emit_from(mark, TokenKind::Opaque);
        self.error_at(mark, "lone `:` is not a valid token");
    }

    /// `~` starts a sigil: `~r/.../`, `~w(a b c)s`, `~S"""...`.
    fn lex_tilde(&mut self) {
        let mark = self.mark();
        let rest = self.rest();
        let mut chars = rest.chars();
        chars.next(); // ~
        let letter = chars.next().unwrap_or(' ');
        if !letter.is_ascii_alphabetic() {
            // `~~~` and friends are matched by the operator table.
            if let Some(op) = self.match_operator() {
                self.bump_n_ascii(op.len());
                self.emit_from(mark, TokenKind::Operator);
            } else {
                self.bump();
                self.emit_from(mark, TokenKind::Opaque);
                self.error_at(mark, "stray `~`");
            }
            return;
        }
        self.bump(); // ~
        let interpolates = letter.is_ascii_lowercase();
        if interpolates {
            self.bump();
        } else {
            while self
                .rest()
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_uppercase())
            {
                self.bump();
            }
        }
        let open = self.rest().chars().next().unwrap_or(' ');
        let close = match open {
            '(' => ')',
            '[' => ']',
            '{' => '}',
            '<' => '>',
            '/' | '|' | '"' | '\'' => open,
            _ => {
                self.emit_from(mark, TokenKind::Opaque);
                self.error_at(mark, "sigil without delimiter");
                return;
            }
        };
        let interp = self.scan_delimited(open, close, interpolates, interpolates);
        // Modifiers: `~r/x/iu`.
        while self.rest().chars().next().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.bump();
        }
        self.emit_with_interp(mark, TokenKind::Sigil, interp);
    }

    fn lex_quoted(&mut self, quote: u8) {
        let mark = self.mark();
        let q = quote as char;
        let heredoc = self.peek_at(1) == quote && self.peek_at(2) == quote;
        let interp = if heredoc {
            self.scan_heredoc(q)
        } else {
            self.scan_delimited(q, q, true, true)
        };
        let kind = match (quote, heredoc) {
            (b'"', false) => TokenKind::String,
            (b'"', true) => TokenKind::Heredoc,
            (_, false) => TokenKind::CharList,
            (_, true) => TokenKind::Heredoc,
        };
        // A quoted keyword key: `"some key": value`.
        if !heredoc
            && self.peek() == b':'
            && self.peek_at(1) != b':'
            && matches!(self.peek_at(1), b' ' | b'\t' | b'\r' | b'\n' | 0)
        {
            self.bump();
            self.emit_with_interp(mark, TokenKind::KeywordKey, interp);
            return;
        }
        self.emit_with_interp(mark, kind, interp);
    }

    /// Scan from an opening delimiter (current position) to its matching
    /// closer. Returns interpolation byte ranges. Handles `\` escapes and
    /// nested delimiters for bracket-like pairs.
    fn scan_delimited(
        &mut self,
        open: char,
        close: char,
        interpolates: bool,
        escapes: bool,
    ) -> Vec<(usize, usize)> {
        let mark = self.mark();
        let mut interp = Vec::new();
        let nests = open != close;
        let mut depth = 0usize;
        self.bump(); // opening delimiter
        while self.pos < self.bytes.len() {
            let ch = self.rest().chars().next().unwrap();
            if escapes && ch == '\\' {
                self.bump();
                if self.pos < self.bytes.len() {
                    self.bump();
                }
                continue;
            }
            if interpolates && ch == '#' && self.peek_at(1) == b'{' {
                self.bump();
                self.bump();
                let body_start = self.pos;
                self.skip_interpolation_body();
                interp.push((body_start, self.pos));
                if self.peek() == b'}' {
                    self.bump();
                }
                continue;
            }
            if nests && ch == open {
                depth += 1;
                self.bump();
                continue;
            }
            if ch == close {
                if depth == 0 {
                    self.bump();
                    return interp;
                }
                depth -= 1;
                self.bump();
                continue;
            }
            self.bump();
        }
        self.error_at(mark, format!("unterminated `{open}` literal"));
        interp
    }

    fn scan_heredoc(&mut self, q: char) -> Vec<(usize, usize)> {
        let mark = self.mark();
        let mut interp = Vec::new();
        self.bump_n_ascii(3);
        while self.pos < self.bytes.len() {
            let ch = self.rest().chars().next().unwrap();
            if ch == '\\' {
                self.bump();
                if self.pos < self.bytes.len() {
                    self.bump();
                }
                continue;
            }
            if ch == '#' && self.peek_at(1) == b'{' {
                self.bump();
                self.bump();
                let body_start = self.pos;
                self.skip_interpolation_body();
                interp.push((body_start, self.pos));
                if self.peek() == b'}' {
                    self.bump();
                }
                continue;
            }
            if ch == q && self.peek_at(1) == q as u8 && self.peek_at(2) == q as u8 {
                self.bump_n_ascii(3);
                return interp;
            }
            self.bump();
        }
        self.error_at(mark, "unterminated heredoc");
        interp
    }

    /// Advance past the body of `#{...}`, balancing braces and skipping
    /// over nested string literals.
    fn skip_interpolation_body(&mut self) {
        let mut depth = 0usize;
        while self.pos < self.bytes.len() {
            match self.peek() {
                b'\\' => {
                    self.bump();
                    if self.pos < self.bytes.len() {
                        self.bump();
                    }
                }
                b'"' | b'\'' => {
                    let q = self.peek() as char;
                    self.scan_delimited(q, q, false, true);
                }
                b'{' => {
                    depth += 1;
                    self.bump();
                }
                b'}' => {
                    if depth == 0 {
                        return;
                    }
                    depth -= 1;
                    self.bump();
                }
                _ => self.bump(),
            }
        }
    }
}

fn is_ident_start(ch: char) -> bool {
    ch == '_' || ch.is_lowercase() && ch.is_alphabetic()
}

fn is_ident_continue(ch: char) -> bool {
    ch == '_' || ch.is_alphanumeric()
}

/// Line/col of the last character of `text` given its start position.
fn last_position(text: &str, start_line: u32, start_col: u32) -> (u32, u32) {
    let mut line = start_line;
    let mut col = start_col;
    let mut last = (start_line, start_col);
    for ch in text.chars() {
        last = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    last
}
