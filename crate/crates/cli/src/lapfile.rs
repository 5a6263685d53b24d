//! A small text format for single LAP / ILAP instances.
//!
//! ```text
//! c <comment>
//! p lap <vertices> <labels> <entries>
//! p ilap <vertices> <labels> <entries>
//! a <vertex> <label> <cost>
//! d <vertex> <cost>            (ilap only, dummy cost, default 0)
//! ```
//!
//! A `lap` needs as many labels as vertices.

use qapbound_core::{IlapInstance, LapInstance};

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub enum LapFile {
    Lap(LapInstance),
    Ilap(IlapInstance),
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| ParseError::new(line, format!("bad {what} `{tok}`")))
}

fn cost(tok: Option<&str>, line: usize) -> Result<f64, ParseError> {
    let c: f64 = number(tok, line, "cost")?;
    if !c.is_finite() {
        return Err(ParseError::new(line, "cost must be finite"));
    }
    Ok(c)
}

pub fn parse_lap_file(text: &str) -> Result<LapFile, ParseError> {
    let mut header: Option<(bool, usize, usize, usize)> = None;
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut dummy: Vec<f64> = Vec::new();
    let mut entries = 0;
    let mut last = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let mut t = raw.split_whitespace();
        let Some(kind) = t.next() else { continue };
        match (kind, header) {
            ("c", _) => continue,
            ("p", None) => {
                let incomplete = match t.next() {
                    Some("lap") => false,
                    Some("ilap") => true,
                    other => return Err(ParseError::new(line, format!("unknown problem kind {other:?}"))),
                };
                let nv = number(t.next(), line, "vertex count")?;
                let nl = number(t.next(), line, "label count")?;
                let ne = number(t.next(), line, "entry count")?;
                if !incomplete && nv != nl {
                    return Err(ParseError::new(line, "a complete LAP needs as many labels as vertices"));
                }
                rows = vec![Vec::new(); nv];
                dummy = vec![0.0; nv];
                header = Some((incomplete, nv, nl, ne));
            }
            ("p", Some(_)) => return Err(ParseError::new(line, "second `p` line")),
            (_, None) => return Err(ParseError::new(line, "record before the `p` line")),
            ("a", Some((_, nv, nl, _))) => {
                let v: usize = number(t.next(), line, "vertex")?;
                let l: usize = number(t.next(), line, "label")?;
                let c = cost(t.next(), line)?;
                if v >= nv || l >= nl {
                    return Err(ParseError::new(line, format!("pair ({v}, {l}) out of range")));
                }
                if rows[v].iter().any(|e| e.0 == l) {
                    return Err(ParseError::new(line, format!("duplicate pair ({v}, {l})")));
                }
                rows[v].push((l, c));
                entries += 1;
            }
            ("d", Some((true, nv, _, _))) => {
                let v: usize = number(t.next(), line, "vertex")?;
                if v >= nv {
                    return Err(ParseError::new(line, format!("vertex {v} out of range")));
                }
                dummy[v] = cost(t.next(), line)?;
            }
            ("d", Some((false, ..))) => return Err(ParseError::new(line, "dummy costs need `p ilap`")),
            (other, _) => return Err(ParseError::new(line, format!("unknown record `{other}`"))),
        }
        if let Some(extra) = t.next() {
            return Err(ParseError::new(line, format!("unexpected trailing `{extra}`")));
        }
    }
    let Some((incomplete, _, nl, ne)) = header else {
        return Err(ParseError::new(last, "missing `p` line"));
    };
    if entries != ne {
        return Err(ParseError::new(last, format!("header announces {ne} entries, found {entries}")));
    }
    let built = if incomplete {
        IlapInstance::new(nl, rows, dummy).map(LapFile::Ilap)
    } else {
        LapInstance::new(rows).map(LapFile::Lap)
    };
    built.map_err(|e| ParseError::new(last, e.to_string()))
}
