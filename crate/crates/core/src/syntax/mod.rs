//! Lexing and tolerant parsing of Elixir source into span-annotated
//! syntax trees, plus pipe desugaring.

mod desugar;
mod lexer;
mod parser;
mod token;
mod tree;

pub use desugar::{count_pipes, desugar_pipes, desugar_pipes_tolerant, MalformedPipeRhs};
pub use lexer::{tokenize, tokenize_file, LexError};
pub use parser::{parse_file, parse_source, Mode, ParseError};
pub use token::{Token, TokenKind};
pub use tree::{Comment, CommentKind, Node, NodeKind, ParseDiagnostic, SyntaxTree};
