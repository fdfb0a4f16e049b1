//! Text and JSON encodings of a quiver.
//!
//! The text form has one arrow per line (`tail -> head`). `#` starts a
//! comment, blank lines are ignored, and an optional `vertices: N` line fixes
//! the vertex count; otherwise it is one more than the largest id used.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Arrow, Quiver};
use crate::error::{Error, Result};

impl Quiver {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut arrows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            if let Some(rest) = line.strip_prefix("vertices:") {
                if declared.is_some() {
                    return Err(parse_err("duplicate vertices header".into()));
                }
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| parse_err(format!("bad vertex count: {e}")))?;
                declared = Some(n);
                continue;
            }
            let (t, h) = line
                .split_once("->")
                .ok_or_else(|| parse_err(format!("expected `tail -> head`, got `{line}`")))?;
            let tail = t
                .trim()
                .parse::<usize>()
                .map_err(|e| parse_err(format!("bad tail `{}`: {e}", t.trim())))?;
            let head = h
                .trim()
                .parse::<usize>()
                .map_err(|e| parse_err(format!("bad head `{}`: {e}", h.trim())))?;
            arrows.push(Arrow { tail, head });
        }
        let inferred = arrows
            .iter()
            .map(|a| a.tail.max(a.head) + 1)
            .max()
            .unwrap_or(0);
        let n = declared.unwrap_or(inferred);
        Quiver::new(n, arrows)
    }

    /// Text encoding. Always writes the `vertices:` header so isolated
    /// trailing vertices survive a round trip.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.vertex_count());
        for a in self.arrows() {
            let _ = writeln!(out, "{} -> {}", a.tail, a.head);
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Parses either encoding, picking JSON when the first non-blank
    /// character is `{`.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}

impl FromStr for Quiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quiver::parse_any(s)
    }
}
