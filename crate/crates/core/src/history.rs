//! Change-history ingestion and the two evolutionary smells: Shotgun
//! Surgery (EX1101) and Divergent Change (EX1102).
//!
//! The input is a pre-exported change log, not a live repository:
//! records separated by blank lines, first line `commit <id>`, then one
//! file path per line. `git log --name-only --pretty=format:"commit %H"`
//! produces it.

use crate::rules::{file_target, Confidence, Finding, Severity};
use crate::span::SourceSpan;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Commit {
    pub id: String,
    pub files: BTreeSet<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ChangeLog {
    pub commits: Vec<Commit>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoChangeMatrix {
    /// Unordered file pair → number of commits touching both.
    pub support: BTreeMap<(String, String), u32>,
    /// File → number of commits touching it.
    pub changes: BTreeMap<String, u32>,
}

impl CoChangeMatrix {
    pub fn support_of(&self, a: &str, b: &str) -> u32 {
        let key = if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        *self.support.get(&key).unwrap_or(&0)
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("change log line {line}: {reason}")]
pub struct LogParseError {
    pub line: usize,
    pub reason: String,
}

pub fn ingest_change_log(path: &Path) -> Result<ChangeLog, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    parse_change_log(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

pub fn parse_change_log(text: &str) -> Result<ChangeLog, LogParseError> {
    let mut commits = Vec::new();
    let mut seen_ids: BTreeSet<String> = BTreeSet::new();
    let mut current: Option<Commit> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            if let Some(commit) = current.take() {
                if !commit.files.is_empty() {
                    commits.push(commit);
                }
            }
            continue;
        }
        match &mut current {
            None => {
                let id = line
                    .strip_prefix("commit ")
                    .map(str::trim)
                    .filter(|id| !id.is_empty())
                    .ok_or_else(|| LogParseError {
                        line: line_no,
                        reason: format!("expected `commit <id>`, found `{line}`"),
                    })?;
                if !seen_ids.insert(id.to_string()) {
                    return Err(LogParseError {
                        line: line_no,
                        reason: format!("duplicate commit id `{id}`"),
                    });
                }
                current = Some(Commit {
                    id: id.to_string(),
                    files: BTreeSet::new(),
                });
            }
            Some(commit) => {
                if line.starts_with("commit ") {
                    return Err(LogParseError {
                        line: line_no,
                        reason: "commit header without preceding blank line".into(),
                    });
                }
                if line.ends_with(".ex") || line.ends_with(".exs") {
                    commit.files.insert(line.to_string());
                }
            }
        }
    }
    if let Some(commit) = current.take() {
        if !commit.files.is_empty() {
            commits.push(commit);
        }
    }
    Ok(ChangeLog { commits })
}

/// Pairwise co-change counts over the log.
pub fn cochange(log: &ChangeLog) -> CoChangeMatrix {
    let mut support: BTreeMap<(String, String), u32> = BTreeMap::new();
    let mut changes: BTreeMap<String, u32> = BTreeMap::new();
    for commit in &log.commits {
        let files: Vec<&String> = commit.files.iter().collect();
        for f in &files {
            *changes.entry((*f).clone()).or_insert(0) += 1;
        }
        for i in 0..files.len() {
            for j in (i + 1)..files.len() {
                // BTreeSet iteration is sorted, so (i, j) is ordered.
                *support
                    .entry((files[i].clone(), files[j].clone()))
                    .or_insert(0) += 1;
            }
        }
    }
    CoChangeMatrix { support, changes }
}

pub struct ShotgunParams {
    pub min_support: u32,
    pub min_confidence: f64,
    pub min_fanout: usize,
    pub severity: Severity,
}

/// EX1101: editing one file habitually forces edits elsewhere.
pub fn detect_shotgun_surgery(matrix: &CoChangeMatrix, params: &ShotgunParams) -> Vec<Finding> {
    let mut findings = Vec::new();
    for file in matrix.changes.keys() {
        let partners: Vec<&String> = matrix
            .changes
            .keys()
            .filter(|g| *g != file)
            .filter(|g| {
                let support = matrix.support_of(file, g);
                if support < params.min_support {
                    return false;
                }
                let their_changes = *matrix.changes.get(*g).unwrap_or(&0);
                their_changes > 0
                    && (f64::from(support) / f64::from(their_changes)) >= params.min_confidence
            })
            .collect();
        if partners.len() >= params.min_fanout {
            let mut finding = Finding::new(
                "EX1101",
                params.severity,
                Confidence::Certain,
                SourceSpan::point(file.clone(), 1, 1),
                file_target(file),
                format!(
                    "changes to {} regularly drag along {} other files ({})",
                    file,
                    partners.len(),
                    partners
                        .iter()
                        .map(|s| s.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
            finding = finding.with_int("fanout", partners.len() as i64).with_str(
                "partners",
                partners
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            findings.push(finding);
        }
    }
    findings
}

pub struct DivergentParams {
    pub min_changes: u32,
    pub min_cluster: usize,
    pub severity: Severity,
}

/// EX1102: one file changing for several unrelated reasons, detected as
/// multiple disconnected clusters among its co-change partners.
pub fn detect_divergent_change(
    matrix: &CoChangeMatrix,
    log: &ChangeLog,
    params: &DivergentParams,
) -> Vec<Finding> {
    let mut findings = Vec::new();
    for (file, &changes) in &matrix.changes {
        if changes < params.min_changes {
            continue;
        }
        let partners: Vec<String> = matrix
            .changes
            .keys()
            .filter(|g| *g != file && matrix.support_of(file, g) >= 1)
            .cloned()
            .collect();
        if partners.is_empty() {
            continue;
        }
        // Single-link clustering: partners are linked when they ever
        // appear in the same commit together with `file`.
        let index: BTreeMap<&str, usize> = partners
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let mut dsu = Dsu::new(partners.len());
        for commit in &log.commits {
            if !commit.files.contains(file) {
                continue;
            }
            let present: Vec<usize> = commit
                .files
                .iter()
                .filter_map(|f| index.get(f.as_str()).copied())
                .collect();
            for pair in present.windows(2) {
                dsu.union(pair[0], pair[1]);
            }
        }
        let mut cluster_sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..partners.len() {
            *cluster_sizes.entry(dsu.find(i)).or_insert(0) += 1;
        }
        let big_clusters = cluster_sizes
            .values()
            .filter(|size| **size >= params.min_cluster)
            .count();
        if big_clusters >= 2 {
            findings.push(
                Finding::new(
                    "EX1102",
                    params.severity,
                    Confidence::Heuristic,
                    SourceSpan::point(file.clone(), 1, 1),
                    file_target(file),
                    format!(
                        "{file} changed {changes} times for {big_clusters} unrelated reasons"
                    ),
                )
                .with_int("changes", i64::from(changes))
                .with_int("clusters", big_clusters as i64),
            );
        }
    }
    findings
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_commit_log_parses() {
        let log = parse_change_log(
            "commit aaa\nlib/a.ex\nlib/b.ex\n\ncommit bbb\nlib/a.ex\n",
        )
        .unwrap();
        assert_eq!(log.commits.len(), 2);
        assert_eq!(log.commits[0].files.len(), 2);
    }

    #[test]
    fn empty_log_is_empty() {
        assert_eq!(parse_change_log("").unwrap().commits.len(), 0);
    }

    #[test]
    fn malformed_header_is_an_error() {
        let err = parse_change_log("not-a-commit\nlib/a.ex\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn duplicate_ids_are_an_error() {
        let err =
            parse_change_log("commit aaa\nlib/a.ex\n\ncommit aaa\nlib/b.ex\n").unwrap_err();
        assert!(err.reason.contains("duplicate"));
    }

    #[test]
    fn non_source_files_are_dropped_and_empty_commits_vanish() {
        let log = parse_change_log(
            "commit aaa\nREADME.md\nmix.lock\n\ncommit bbb\nlib/a.ex\ndocs/x.md\n",
        )
        .unwrap();
        assert_eq!(log.commits.len(), 1);
        assert_eq!(log.commits[0].files.len(), 1);
    }

    #[test]
    fn cochange_counts_pairs() {
        // commits {A,B}, {A,B}, {A} → support[(A,B)] = 2, changes[A] = 3.
        let log = parse_change_log(
            "commit 1\na.ex\nb.ex\n\ncommit 2\na.ex\nb.ex\n\ncommit 3\na.ex\n",
        )
        .unwrap();
        let m = cochange(&log);
        assert_eq!(m.support_of("a.ex", "b.ex"), 2);
        assert_eq!(m.changes["a.ex"], 3);
        assert_eq!(m.changes["b.ex"], 2);
    }

    #[test]
    fn single_file_commits_have_no_support() {
        let log = parse_change_log("commit 1\na.ex\n\ncommit 2\nb.ex\n").unwrap();
        let m = cochange(&log);
        assert!(m.support.is_empty());
    }

    #[test]
    fn three_file_commit_adds_three_pairs() {
        let log = parse_change_log("commit 1\na.ex\nb.ex\nc.ex\n").unwrap();
        let m = cochange(&log);
        assert_eq!(m.support.len(), 3);
        assert!(m.support.values().all(|&v| v == 1));
    }

    /// 20 commits: hub co-changes with s1/s2/s3 six times, then appears
    /// alone with one-off phantom files. Expected by hand: hub has three
    /// partners at support 6, confidence 1.0 → EX1101 on hub only; its
    /// partners form a single cluster → no EX1102.
    pub(crate) fn hub_log() -> String {
        let mut log = String::new();
        for i in 0..6 {
            log.push_str(&format!(
                "commit hub{i}\nlib/hub.ex\nlib/s1.ex\nlib/s2.ex\nlib/s3.ex\n\n"
            ));
        }
        for i in 0..14 {
            log.push_str(&format!("commit one{i}\nlib/hub.ex\nlib/only{i}.ex\n\n"));
        }
        log
    }

    /// 20 commits: core changes with {a,b} four times and {c,d} six
    /// times (two unrelated reasons → EX1102 on core); negfile always
    /// changes with the same {x,y} pair (one reason → clean). Supports
    /// stay below the EX1101 fanout everywhere.
    pub(crate) fn divergent_log() -> String {
        let mut log = String::new();
        for i in 0..4 {
            log.push_str(&format!("commit ab{i}\nlib/core.ex\nlib/a.ex\nlib/b.ex\n\n"));
        }
        for i in 0..6 {
            log.push_str(&format!("commit cd{i}\nlib/core.ex\nlib/c.ex\nlib/d.ex\n\n"));
        }
        for i in 0..10 {
            log.push_str(&format!("commit xy{i}\nlib/neg.ex\nlib/x.ex\nlib/y.ex\n\n"));
        }
        log
    }

    fn shotgun_defaults() -> ShotgunParams {
        ShotgunParams {
            min_support: 5,
            min_confidence: 0.6,
            min_fanout: 3,
            severity: Severity::Warning,
        }
    }

    fn divergent_defaults() -> DivergentParams {
        DivergentParams {
            min_changes: 10,
            min_cluster: 2,
            severity: Severity::Info,
        }
    }

    #[test]
    fn shotgun_surgery_matches_hand_computation() {
        let log = parse_change_log(&hub_log()).unwrap();
        assert_eq!(log.commits.len(), 20);
        let matrix = cochange(&log);
        let findings = detect_shotgun_surgery(&matrix, &shotgun_defaults());
        let files: Vec<&str> = findings.iter().map(|f| f.span.file.as_str()).collect();
        assert_eq!(files, vec!["lib/hub.ex"]);
        assert!(detect_divergent_change(&matrix, &log, &divergent_defaults()).is_empty());
    }

    #[test]
    fn divergent_change_matches_hand_computation() {
        let log = parse_change_log(&divergent_log()).unwrap();
        assert_eq!(log.commits.len(), 20);
        let matrix = cochange(&log);
        let findings = detect_divergent_change(&matrix, &log, &divergent_defaults());
        let files: Vec<&str> = findings.iter().map(|f| f.span.file.as_str()).collect();
        assert_eq!(files, vec!["lib/core.ex"]);
        assert!(detect_shotgun_surgery(&matrix, &shotgun_defaults()).is_empty());
    }

    #[test]
    fn file_always_changed_alone_is_clean() {
        let mut text = String::new();
        for i in 0..12 {
            text.push_str(&format!("commit c{i}\nlib/solo.ex\n\n"));
        }
        let log = parse_change_log(&text).unwrap();
        let matrix = cochange(&log);
        assert!(detect_shotgun_surgery(&matrix, &shotgun_defaults()).is_empty());
        assert!(detect_divergent_change(&matrix, &log, &divergent_defaults()).is_empty());
    }

    #[test]
    fn cochange_matches_bruteforce_oracle() {
        for text in [hub_log(), divergent_log()] {
            let log = parse_change_log(&text).unwrap();
            let fast = cochange(&log);
            let brute = crate::oracle::cochange_bruteforce(&log);
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn commit_order_never_changes_findings() {
        let log = parse_change_log(&divergent_log()).unwrap();
        let mut reversed = log.clone();
        reversed.commits.reverse();
        let (m1, m2) = (cochange(&log), cochange(&reversed));
        assert_eq!(m1, m2);
        let f1 = detect_divergent_change(&m1, &log, &divergent_defaults());
        let f2 = detect_divergent_change(&m2, &reversed, &divergent_defaults());
        assert_eq!(f1.len(), f2.len());
        let s1 = detect_shotgun_surgery(&m1, &shotgun_defaults());
        let s2 = detect_shotgun_surgery(&m2, &shotgun_defaults());
        assert_eq!(s1.len(), s2.len());
    }

    #[test]
    fn raising_min_support_never_increases_findings() {
        let log = parse_change_log(&hub_log()).unwrap();
        let matrix = cochange(&log);
        let mut last = usize::MAX;
        for min_support in [1, 3, 5, 7, 9] {
            let params = ShotgunParams {
                min_support,
                ..shotgun_defaults()
            };
            let n = detect_shotgun_surgery(&matrix, &params).len();
            assert!(n <= last);
            last = n;
        }
    }
}
