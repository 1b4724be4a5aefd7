//! Token model for the Elixir lexer.

use crate::span::SourceSpan;
use serde::Serialize;

/// Lexical class of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    /// Lowercase/underscore-led name, possibly ending in `?` or `!`.
    /// Reserved words (`do`, `end`, `def`, ...) also lex as identifiers;
    /// the parser gives them meaning.
    Identifier,
    /// Capitalized module alias segment (`Circle`, `GenServer`).
    Alias,
    Integer,
    Float,
    String,
    Heredoc,
    CharList,
    Sigil,
    Atom,
    /// `name:` (or `"name":`) immediately followed by whitespace —
    /// a keyword-list key including its trailing colon.
    KeywordKey,
    Operator,
    Punct,
    Comment,
    /// A whitespace run containing at least one newline. Statement
    /// separator unless suppressed by continuation rules.
    Break,
    /// Byte run the lexer could not classify (tolerant mode only).
    Opaque,
}

/// One lexed token. `text` is the exact source slice, so concatenating
/// token texts with the skipped whitespace between them reproduces the
/// input byte-for-byte.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: SourceSpan,
    /// Byte range of `text` within the source.
    pub byte_start: usize,
    pub byte_end: usize,
    /// For string/heredoc/charlist/sigil tokens: byte ranges (absolute,
    /// within the source) of each `#{...}` interpolation body, so the
    /// enclosed expression can be re-lexed on its own.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub interpolations: Vec<(usize, usize)>,
}

impl Token {
    pub fn is_kind(&self, kind: TokenKind) -> bool {
        self.kind == kind
    }

    /// Identifier with exactly this text.
    pub fn is_ident(&self, text: &str) -> bool {
        self.kind == TokenKind::Identifier && self.text == text
    }

    /// Operator or punct with exactly this text.
    pub fn is_sym(&self, text: &str) -> bool {
        matches!(self.kind, TokenKind::Operator | TokenKind::Punct) && self.text == text
    }
}

/// Operators that only ever appear in binary (infix) position. A line
/// starting with one of these continues the previous expression.
pub const BINARY_ONLY_OPERATORS: &[&str] = &[
    "|>", "<>", "++", "--", "+++", "---", "..", "*", "/", "//", "<", ">", "<=", ">=", "==", "!=",
    "===", "!==", "=~", "&&", "&&&", "||", "|||", "=", "::", "|", "=>", "->", "<-", "\\\\", "**",
    "<<<", ">>>", "<<~", "~>>", "<~", "~>", "<~>", "<|>", ".", "^^^",
];

pub fn is_binary_only_word(text: &str) -> bool {
    matches!(text, "and" | "or" | "in" | "when")
}
