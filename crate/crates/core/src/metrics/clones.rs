//! Token-based clone detection.
//!
//! The token stream excludes comments and whitespace. Under
//! normalization, identifiers and aliases collapse to `I`, numeric
//! literals to `N` and string-like literals to `S`, while keywords,
//! atoms, keyword keys and operators keep their text, so renamed copies
//! still match. Matching uses a rolling fingerprint over windows of
//! `window_tokens` tokens with exact-match confirmation, then extends
//! each leftmost window match to its maximal run. No probabilistic
//! reporting: every fragment is confirmed token-for-token.

use crate::model::ProjectFile;
use crate::span::SourceSpan;
use crate::syntax::{tokenize_file, TokenKind};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CloneFragment {
    pub a: (String, SourceSpan),
    pub b: (String, SourceSpan),
    pub token_length: u32,
    pub normalized: bool,
}

/// One comparable token in a file's clone stream.
#[derive(Debug, Clone)]
pub struct CloneToken {
    pub text: String,
    pub span: SourceSpan,
}

/// Words that keep their text under normalization.
const KEYWORDS: &[&str] = &[
    "def", "defp", "defmacro", "defmacrop", "defmodule", "defstruct", "defprotocol", "defimpl",
    "defdelegate", "defguard", "defguardp", "defexception", "do", "end", "fn", "case", "cond",
    "with", "if", "unless", "try", "receive", "rescue", "catch", "after", "else", "when", "and",
    "or", "not", "in", "use", "import", "alias", "require", "quote", "unquote", "raise", "throw",
    "send", "spawn", "true", "false", "nil", "__MODULE__",
];

/// Tokenize one file into its (optionally normalized) clone stream.
pub fn normalized_token_stream(path: &str, source: &str, normalize: bool) -> Vec<CloneToken> {
    let (tokens, _) = tokenize_file(path, source);
    let mut out = Vec::new();
    for t in tokens {
        let text = match t.kind {
            TokenKind::Comment | TokenKind::Break => continue,
            TokenKind::Identifier => {
                if !normalize || KEYWORDS.contains(&t.text.as_str()) {
                    t.text
                } else {
                    "I".to_string()
                }
            }
            TokenKind::Alias => {
                if normalize {
                    "I".to_string()
                } else {
                    t.text
                }
            }
            TokenKind::Integer | TokenKind::Float => {
                if normalize {
                    "N".to_string()
                } else {
                    t.text
                }
            }
            TokenKind::String | TokenKind::Heredoc | TokenKind::CharList | TokenKind::Sigil => {
                if normalize {
                    "S".to_string()
                } else {
                    t.text
                }
            }
            _ => t.text,
        };
        out.push(CloneToken { text, span: t.span });
    }
    out
}

/// All maximal inter- and intra-file clone pairs of at least
/// `window_tokens` tokens. Pairs are reported in canonical order (first
/// fragment before the second by file, then offset).
pub fn clone_index(
    files: &[ProjectFile],
    window_tokens: usize,
    normalize: bool,
) -> Vec<CloneFragment> {
    assert!(window_tokens >= 10, "clone window must be at least 10");
    let streams: Vec<Vec<CloneToken>> = files
        .iter()
        .map(|f| normalized_token_stream(&f.path, &f.source, normalize))
        .collect();

    let hashes: Vec<Vec<u64>> = streams
        .iter()
        .map(|s| s.iter().map(|t| fnv1a(t.text.as_bytes())).collect())
        .collect();

    // Rolling window fingerprints, bucketed.
    const BASE: u64 = 1_099_511_628_211;
    let mut top_power: u64 = 1;
    for _ in 0..window_tokens.saturating_sub(1) {
        top_power = top_power.wrapping_mul(BASE);
    }
    let mut buckets: std::collections::HashMap<u64, Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    for (fi, h) in hashes.iter().enumerate() {
        if h.len() < window_tokens {
            continue;
        }
        let mut acc: u64 = 0;
        for &x in &h[..window_tokens] {
            acc = acc.wrapping_mul(BASE).wrapping_add(x);
        }
        buckets.entry(acc).or_default().push((fi, 0));
        for i in 1..=(h.len() - window_tokens) {
            acc = acc
                .wrapping_sub(h[i - 1].wrapping_mul(top_power))
                .wrapping_mul(BASE)
                .wrapping_add(h[i + window_tokens - 1]);
            buckets.entry(acc).or_default().push((fi, i));
        }
    }

    let eq = |a: (usize, usize), b: (usize, usize)| -> bool {
        streams[a.0][a.1].text == streams[b.0][b.1].text
    };
    let window_eq = |a: (usize, usize), b: (usize, usize)| -> bool {
        (0..window_tokens).all(|k| eq((a.0, a.1 + k), (b.0, b.1 + k)))
    };

    let mut fragments = Vec::new();
    let mut bucket_list: Vec<(&u64, &Vec<(usize, usize)>)> = buckets.iter().collect();
    bucket_list.sort_by_key(|(h, _)| **h);
    for (_, positions) in bucket_list {
        for pi in 0..positions.len() {
            for qi in (pi + 1)..positions.len() {
                let (p, q) = (positions[pi], positions[qi]);
                if p == q || !window_eq(p, q) {
                    continue;
                }
                // Only report from the leftmost window of a run.
                if p.1 > 0 && q.1 > 0 && eq((p.0, p.1 - 1), (q.0, q.1 - 1)) {
                    continue;
                }
                let mut len = window_tokens;
                while p.1 + len < streams[p.0].len()
                    && q.1 + len < streams[q.0].len()
                    && eq((p.0, p.1 + len), (q.0, q.1 + len))
                {
                    len += 1;
                }
                fragments.push(make_fragment(files, &streams, p, q, len, normalize));
            }
        }
    }
    fragments.sort();
    fragments.dedup();
    fragments
}

fn make_fragment(
    files: &[ProjectFile],
    streams: &[Vec<CloneToken>],
    p: (usize, usize),
    q: (usize, usize),
    len: usize,
    normalized: bool,
) -> CloneFragment {
    let span_of = |(fi, i): (usize, usize)| -> SourceSpan {
        let first = &streams[fi][i].span;
        let last = &streams[fi][i + len - 1].span;
        first.cover(last)
    };
    CloneFragment {
        a: (files[p.0].path.clone(), span_of(p)),
        b: (files[q.0].path.clone(), span_of(q)),
        token_length: len as u32,
        normalized,
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100_0000_01b3);
    }
    hash
}
