//! Inline suppression directives.
//!
//! Grammar (exact): `#` `smelter:disable` SP RULE_ID (`,` RULE_ID)*.
//! A directive on a finding's first line, or on the line directly above
//! it, suppresses that finding for the listed rules.

use super::registry::RULE_IDS;
use super::Finding;
use crate::model::ProjectFile;
use crate::syntax::{CommentKind, ParseDiagnostic};
use std::collections::HashMap;

#[derive(Debug, Default)]
pub struct SuppressionOutcome {
    pub findings: Vec<Finding>,
    pub suppressed_count: usize,
    pub diagnostics: Vec<ParseDiagnostic>,
}

pub fn apply_suppressions(findings: Vec<Finding>, files: &[ProjectFile]) -> SuppressionOutcome {
    let mut directives: HashMap<(String, u32), Vec<String>> = HashMap::new();
    let mut diagnostics = Vec::new();

    for file in files {
        for comment in &file.tree.comments {
            if comment.kind != CommentKind::Line {
                continue;
            }
            if !comment.text.contains("smelter:disable") {
                continue;
            }
            match parse_directive(&comment.text) {
                Some(ids) => {
                    for id in &ids {
                        if !RULE_IDS.contains(&id.as_str()) {
                            diagnostics.push(ParseDiagnostic {
                                span: comment.span.clone(),
                                message: format!(
                                    "suppression names unknown rule `{id}`"
                                ),
                            });
                        }
                    }
                    directives
                        .entry((file.path.clone(), comment.span.start_line))
                        .or_default()
                        .extend(ids);
                }
                None => diagnostics.push(ParseDiagnostic {
                    span: comment.span.clone(),
                    message: "malformed smelter:disable directive".into(),
                }),
            }
        }
    }

    let mut kept = Vec::new();
    let mut suppressed = 0usize;
    for finding in findings {
        let line = finding.span.start_line;
        let file = &finding.span.file;
        let hit = [line, line.saturating_sub(1)]
            .iter()
            .filter(|l| **l >= 1)
            .any(|l| {
                directives
                    .get(&(file.clone(), *l))
                    .is_some_and(|ids| ids.iter().any(|id| *id == finding.rule_id))
            });
        if hit {
            suppressed += 1;
        } else {
            kept.push(finding);
        }
    }

    SuppressionOutcome {
        findings: kept,
        suppressed_count: suppressed,
        diagnostics,
    }
}

/// Parse the directive body from a comment's text (leading `#` already
/// stripped). Returns the listed rule ids, or `None` when malformed.
fn parse_directive(text: &str) -> Option<Vec<String>> {
    let rest = text.trim_start();
    let rest = rest.strip_prefix("smelter:disable")?;
    // At least one space between the keyword and the first id.
    if !rest.starts_with(' ') && !rest.starts_with('\t') {
        return None;
    }
    let body = rest.trim();
    if body.is_empty() {
        return None;
    }
    let mut ids = Vec::new();
    for part in body.split(',') {
        let id = part.trim();
        if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric()) {
            return None;
        }
        ids.push(id.to_string());
    }
    Some(ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directive_parsing() {
        assert_eq!(
            parse_directive(" smelter:disable EX1102"),
            Some(vec!["EX1102".to_string()])
        );
        assert_eq!(
            parse_directive(" smelter:disable EX1101, EX1102"),
            Some(vec!["EX1101".to_string(), "EX1102".to_string()])
        );
        assert_eq!(parse_directive(" smelter:disable"), None);
        assert_eq!(parse_directive(" smelter:disable "), None);
        assert_eq!(parse_directive(" smelter:disable EX1101,"), None);
        assert_eq!(parse_directive("smelter:disable EX1101"), Some(vec!["EX1101".to_string()]));
    }
}
