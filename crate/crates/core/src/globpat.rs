//! Minimal glob matching for include/exclude paths and module names.
//!
//! Path patterns match `/`-separated segments; `**` spans any number of
//! segments, `*` matches within one segment, `?` matches one character.
//! Name patterns (no `/`) match whole module names with `*` crossing
//! dots, so `*Controller` matches `MyApp.UserController`.

pub fn path_matches(pattern: &str, path: &str) -> bool {
    let pat: Vec<&str> = pattern.split('/').collect();
    let segs: Vec<&str> = path.split('/').collect();
    match_segments(&pat, &segs)
}

fn match_segments(pat: &[&str], segs: &[&str]) -> bool {
    match pat.first() {
        None => segs.is_empty(),
        Some(&"**") => {
            // `**` absorbs zero or more path segments.
            (0..=segs.len()).any(|skip| match_segments(&pat[1..], &segs[skip..]))
        }
        Some(p) => match segs.first() {
            Some(s) if wildcard_matches(p, s) => match_segments(&pat[1..], &segs[1..]),
            _ => false,
        },
    }
}

/// Single-segment wildcard match (`*`, `?`; no separators).
fn wildcard_matches(pattern: &str, text: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = text.chars().collect();
    wc(&p, &t)
}

fn wc(p: &[char], t: &[char]) -> bool {
    match p.first() {
        None => t.is_empty(),
        Some('*') => (0..=t.len()).any(|skip| wc(&p[1..], &t[skip..])),
        Some('?') => !t.is_empty() && wc(&p[1..], &t[1..]),
        Some(c) => t.first() == Some(c) && wc(&p[1..], &t[1..]),
    }
}

/// Module-name glob: `*` may cross dots.
pub fn name_matches(pattern: &str, name: &str) -> bool {
    wildcard_matches(pattern, name)
}

/// Apply a mixed glob list: patterns containing `/` test the file path,
/// others test the module name.
pub fn any_boundary_match(patterns: &[String], module_name: &str, file_path: &str) -> bool {
    patterns.iter().any(|p| {
        if p.contains('/') {
            path_matches(p, file_path)
        } else {
            name_matches(p, module_name)
        }
    })
}
