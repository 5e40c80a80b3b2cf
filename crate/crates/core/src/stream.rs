//! Line-oriented edge streams.
//!
//! ```text
//! mode outerplanar
//! # comment
//! edge a b 0 0
//! edge a c 1 0 hint b left
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::outerplanar_draw::{Hint, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Tree,
    TreeMap,
    Outerplanar,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Tree => "tree",
            Mode::TreeMap => "treemap",
            Mode::Outerplanar => "outerplanar",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tree" => Ok(Mode::Tree),
            "treemap" => Ok(Mode::TreeMap),
            "outerplanar" => Ok(Mode::Outerplanar),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StreamEvent {
    pub u: String,
    pub v: String,
    pub pos_u: usize,
    pub pos_v: usize,
    pub hint: Option<Hint>,
}

impl StreamEvent {
    pub fn new(u: impl Into<String>, v: impl Into<String>, pos_u: usize, pos_v: usize) -> Self {
        StreamEvent { u: u.into(), v: v.into(), pos_u, pos_v, hint: None }
    }

    pub fn with_hint(mut self, reference: impl Into<String>, side: Side) -> Self {
        self.hint = Some(Hint { reference: reference.into(), side });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stream {
    pub mode: Mode,
    pub events: Vec<StreamEvent>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn index(tok: &str, what: &str) -> Result<usize, String> {
    tok.parse().map_err(|_| format!("{what} must be a non-negative integer, got {tok:?}"))
}

fn parse_edge(toks: &[&str]) -> Result<StreamEvent, String> {
    let [u, v, pu, pv, rest @ ..] = toks else {
        return Err("edge needs <u> <v> <pos_u> <pos_v>".into());
    };
    let mut e = StreamEvent::new(*u, *v, index(pu, "pos_u")?, index(pv, "pos_v")?);
    match rest {
        [] => {}
        ["hint", r, side] => {
            let side = match *side {
                "left" => Side::Left,
                "right" => Side::Right,
                s => return Err(format!("hint side must be left or right, got {s:?}")),
            };
            e = e.with_hint(*r, side);
        }
        _ => return Err("trailing tokens after edge; expected `hint <ref> <left|right>`".into()),
    }
    Ok(e)
}

/// Parses a stream; a missing `mode` line defaults to `tree`.
pub fn parse_stream(text: &str) -> Result<Stream, ParseError> {
    let mut mode = None;
    let mut events = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |reason: String| ParseError { line: i + 1, reason };
        match toks[0] {
            "mode" => {
                if mode.is_some() || !events.is_empty() {
                    return Err(err("mode must appear once, before any edge".into()));
                }
                let [_, m] = toks[..] else {
                    return Err(err("mode needs exactly one argument".into()));
                };
                mode = Some(m.parse().map_err(err)?);
            }
            "edge" => events.push(parse_edge(&toks[1..]).map_err(err)?),
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }
    Ok(Stream { mode: mode.unwrap_or(Mode::Tree), events })
}

/// Writes a stream in the format `parse_stream` reads.
pub fn format_stream(s: &Stream) -> String {
    let mut out = format!("mode {}\n", s.mode);
    for e in &s.events {
        out.push_str(&format!("edge {} {} {} {}", e.u, e.v, e.pos_u, e.pos_v));
        if let Some(h) = &e.hint {
            let side = match h.side {
                Side::Left => "left",
                Side::Right => "right",
            };
            out.push_str(&format!(" hint {} {side}", h.reference));
        }
        out.push('\n');
    }
    out
}
