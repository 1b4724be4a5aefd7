//! Independent reference implementations used only by tests.
//!
//! These deliberately avoid the production algorithms: the clone oracle
//! compares every pair of token positions quadratically, and the
//! co-change oracle counts commit pairs directly from the raw log.

use crate::history::{ChangeLog, CoChangeMatrix};
use crate::metrics::{normalized_token_stream, CloneFragment, CloneToken};
use crate::model::ProjectFile;
use crate::span::SourceSpan;
use std::collections::BTreeMap;

/// Quadratic reference for `metrics::clone_index`: every pair of global
/// token positions is checked for a maximal common run.
pub fn clone_index_bruteforce(
    files: &[ProjectFile],
    window_tokens: usize,
    normalize: bool,
) -> Vec<CloneFragment> {
    let streams: Vec<Vec<CloneToken>> = files
        .iter()
        .map(|f| normalized_token_stream(&f.path, &f.source, normalize))
        .collect();
    let mut positions = Vec::new();
    for (fi, s) in streams.iter().enumerate() {
        for i in 0..s.len() {
            positions.push((fi, i));
        }
    }
    let eq = |a: (usize, usize), b: (usize, usize)| -> bool {
        streams[a.0][a.1].text == streams[b.0][b.1].text
    };
    let mut fragments = Vec::new();
    for pi in 0..positions.len() {
        for qi in (pi + 1)..positions.len() {
            let (p, q) = (positions[pi], positions[qi]);
            // Skip pairs that extend left: only maximal runs count.
            if p.1 > 0 && q.1 > 0 && eq((p.0, p.1 - 1), (q.0, q.1 - 1)) {
                continue;
            }
            let mut len = 0;
            while p.1 + len < streams[p.0].len()
                && q.1 + len < streams[q.0].len()
                && eq((p.0, p.1 + len), (q.0, q.1 + len))
            {
                len += 1;
            }
            if len >= window_tokens {
                let span_of = |(fi, i): (usize, usize)| -> SourceSpan {
                    streams[fi][i].span.cover(&streams[fi][i + len - 1].span)
                };
                fragments.push(CloneFragment {
                    a: (files[p.0].path.clone(), span_of(p)),
                    b: (files[q.0].path.clone(), span_of(q)),
                    token_length: len as u32,
                    normalized: normalize,
                });
            }
        }
    }
    fragments.sort();
    fragments.dedup();
    fragments
}

/// Direct pair counting over the raw log, the reference for
/// `history::cochange`.
pub fn cochange_bruteforce(log: &ChangeLog) -> CoChangeMatrix {
    let mut support: BTreeMap<(String, String), u32> = BTreeMap::new();
    let mut changes: BTreeMap<String, u32> = BTreeMap::new();
    for commit in &log.commits {
        let files: Vec<&String> = commit.files.iter().collect();
        for f in &files {
            *changes.entry((*f).clone()).or_insert(0) += 1;
        }
        for i in 0..files.len() {
            for j in (i + 1)..files.len() {
                let (a, b) = if files[i] <= files[j] {
                    (files[i].clone(), files[j].clone())
                } else {
                    (files[j].clone(), files[i].clone())
                };
                *support.entry((a, b)).or_insert(0) += 1;
            }
        }
    }
    CoChangeMatrix { support, changes }
}
