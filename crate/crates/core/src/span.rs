//! Source locations.
//!
//! Lines and columns are 1-based and inclusive on both ends, so a
//! single-character token has `start_col == end_col`. Byte offsets are
//! kept alongside for lossless reassembly and sub-range re-lexing.

use serde::Serialize;
use std::fmt;

/// A contiguous region of one source file.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SourceSpan {
    pub file: String,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, sl: u32, sc: u32, el: u32, ec: u32) -> Self {
        SourceSpan {
            file: file.into(),
            start_line: sl,
            start_col: sc,
            end_line: el,
            end_col: ec,
        }
    }

    /// Zero-extent span at a point, used for synthetic nodes.
    pub fn point(file: impl Into<String>, line: u32, col: u32) -> Self {
        SourceSpan::new(file, line, col, line, col)
    }

    pub fn start(&self) -> (u32, u32) {
        (self.start_line, self.start_col)
    }

    pub fn end(&self) -> (u32, u32) {
        (self.end_line, self.end_col)
    }

    /// True when `other` lies entirely within `self` (document order).
    pub fn contains(&self, other: &SourceSpan) -> bool {
        self.start() <= other.start() && other.end() <= self.end()
    }

    /// Smallest span covering both inputs. Files are assumed equal.
    pub fn cover(&self, other: &SourceSpan) -> SourceSpan {
        let (sl, sc) = self.start().min(other.start());
        let (el, ec) = self.end().max(other.end());
        SourceSpan::new(self.file.clone(), sl, sc, el, ec)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start_line, self.start_col)
    }
}
