//! The `.dd` graph-matching format.
//!
//! ```text
//! c <comment>
//! p <N0> <N1> <A> <E>
//! a <id> <vertex> <label> <cost>
//! e <id1> <id2> <cost>
//! ```
//!
//! Assignment ids must be exactly `0..A`. Each `(vertex, label)` pair may
//! appear once. An edge joins two assignments of distinct vertices; repeated
//! edges between the same two assignments are summed. `n0` / `n1` point
//! records are skipped. Every vertex also gets the dummy label at a fixed
//! cost (0 unless told otherwise).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qapbound_core::instance::EdgeCosts;
use qapbound_core::{IlapInstance, IqapInstance, DUMMY};

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub struct DdAssignment {
    pub id: usize,
    pub vertex: usize,
    pub label: usize,
    pub cost: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DdEdge {
    pub first: usize,
    pub second: usize,
    pub cost: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DdFile {
    pub num_left: usize,
    pub num_right: usize,
    /// Sorted by id, so `assignments[i].id == i`.
    pub assignments: Vec<DdAssignment>,
    pub edges: Vec<DdEdge>,
    pub comments: Vec<String>,
}

struct Fields<'a> {
    line: usize,
    tokens: std::str::SplitWhitespace<'a>,
}

impl<'a> Fields<'a> {
    fn index(&mut self, what: &str) -> Result<usize, ParseError> {
        let tok = self.tokens.next().ok_or_else(|| ParseError::new(self.line, format!("missing {what}")))?;
        tok.parse().map_err(|_| ParseError::new(self.line, format!("bad {what} `{tok}`")))
    }

    fn cost(&mut self) -> Result<f64, ParseError> {
        let tok = self.tokens.next().ok_or_else(|| ParseError::new(self.line, "missing cost"))?;
        match tok.parse::<f64>() {
            Ok(c) if c.is_finite() => Ok(c),
            _ => Err(ParseError::new(self.line, format!("bad cost `{tok}`"))),
        }
    }

    fn end(mut self) -> Result<(), ParseError> {
        match self.tokens.next() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(self.line, format!("unexpected trailing `{t}`"))),
        }
    }
}

pub fn parse_dd_file(text: &str) -> Result<DdFile, ParseError> {
    let mut file = DdFile::default();
    let mut header: Option<(usize, usize)> = None;
    let mut by_id: Vec<Option<DdAssignment>> = Vec::new();
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edge_lines = Vec::new();
    let mut last = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let trimmed = raw.trim();
        let mut tokens = trimmed.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        let mut f = Fields { line, tokens };
        match kind {
            "c" => file.comments.push(trimmed[1..].trim_start().to_string()),
            "n0" | "n1" => {}
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(line, "second `p` line"));
                }
                file.num_left = f.index("left count")?;
                file.num_right = f.index("right count")?;
                let a = f.index("assignment count")?;
                let e = f.index("edge count")?;
                f.end()?;
                by_id = vec![None; a];
                header = Some((a, e));
            }
            "a" | "e" if header.is_none() => {
                return Err(ParseError::new(line, format!("`{kind}` record before the `p` line")));
            }
            "a" => {
                let id = f.index("assignment id")?;
                let vertex = f.index("vertex")?;
                let label = f.index("label")?;
                let cost = f.cost()?;
                f.end()?;
                if id >= by_id.len() {
                    return Err(ParseError::new(line, format!("assignment id {id} exceeds the header count")));
                }
                if by_id[id].is_some() {
                    return Err(ParseError::new(line, format!("duplicate assignment id {id}")));
                }
                if vertex >= file.num_left {
                    return Err(ParseError::new(line, format!("vertex {vertex} out of range")));
                }
                if label >= file.num_right {
                    return Err(ParseError::new(line, format!("label {label} out of range")));
                }
                if let Some(prev) = pairs.insert((vertex, label), id) {
                    return Err(ParseError::new(
                        line,
                        format!("vertex {vertex} and label {label} already paired by assignment {prev}"),
                    ));
                }
                by_id[id] = Some(DdAssignment { id, vertex, label, cost });
            }
            "e" => {
                let first = f.index("assignment id")?;
                let second = f.index("assignment id")?;
                let cost = f.cost()?;
                f.end()?;
                edge_lines.push(line);
                file.edges.push(DdEdge { first, second, cost });
            }
            other => return Err(ParseError::new(line, format!("unknown record `{other}`"))),
        }
    }

    let Some((a, e)) = header else {
        return Err(ParseError::new(last.max(1), "missing `p` line"));
    };
    let found = by_id.iter().filter(|x| x.is_some()).count();
    if found != a {
        return Err(ParseError::new(last, format!("header announces {a} assignments, found {found}")));
    }
    if file.edges.len() != e {
        return Err(ParseError::new(last, format!("header announces {e} edges, found {}", file.edges.len())));
    }
    file.assignments = by_id.into_iter().flatten().collect();
    for (edge, &line) in file.edges.iter().zip(&edge_lines) {
        for id in [edge.first, edge.second] {
            if id >= a {
                return Err(ParseError::new(line, format!("edge refers to unknown assignment {id}")));
            }
        }
        if file.assignments[edge.first].vertex == file.assignments[edge.second].vertex {
            return Err(ParseError::new(line, "edge joins two assignments of the same vertex"));
        }
    }
    Ok(file)
}

impl DdFile {
    /// Builds the IQAP; every vertex gets the dummy label at `dummy_cost`.
    pub fn to_iqap(&self, dummy_cost: f64) -> Result<IqapInstance, qapbound_core::Error> {
        let mut rows = vec![Vec::new(); self.num_left];
        for a in &self.assignments {
            rows[a.vertex].push((a.label, a.cost));
        }
        let unary = IlapInstance::new(self.num_right, rows, vec![dummy_cost; self.num_left])?;
        let mut blocks: BTreeMap<(usize, usize), BTreeMap<(usize, usize), f64>> = BTreeMap::new();
        for e in &self.edges {
            let mut p = &self.assignments[e.first];
            let mut q = &self.assignments[e.second];
            if p.vertex > q.vertex {
                std::mem::swap(&mut p, &mut q);
            }
            *blocks.entry((p.vertex, q.vertex)).or_default().entry((p.label, q.label)).or_insert(0.0) += e.cost;
        }
        let edges = blocks
            .into_iter()
            .map(|((u, v), entries)| EdgeCosts {
                u,
                v,
                entries: entries.into_iter().map(|((k, l), c)| (k, l, c)).collect(),
            })
            .collect();
        IqapInstance::new(unary, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p {} {} {} {}", self.num_left, self.num_right, self.assignments.len(), self.edges.len());
        for a in &self.assignments {
            let _ = writeln!(out, "a {} {} {} {}", a.id, a.vertex, a.label, a.cost);
        }
        for e in &self.edges {
            let _ = writeln!(out, "e {} {} {}", e.first, e.second, e.cost);
        }
        out
    }

    /// The `.dd` view of an IQAP. Fails if the instance has a nonzero dummy
    /// cost or a pairwise entry on the dummy label, neither of which the
    /// format can express.
    pub fn from_iqap(inst: &IqapInstance) -> Result<DdFile, String> {
        let unary = inst.unary();
        let mut file = DdFile { num_left: inst.num_vertices(), num_right: inst.num_labels(), ..DdFile::default() };
        let mut ids = Vec::with_capacity(inst.num_vertices());
        for v in 0..inst.num_vertices() {
            if unary.dummy_cost(v) != 0.0 {
                return Err(format!("vertex {v} has a nonzero dummy cost"));
            }
            let mut row = Vec::new();
            for (&label, &cost) in unary.labels(v).iter().zip(unary.costs(v)) {
                if label == DUMMY {
                    row.push(usize::MAX);
                    continue;
                }
                row.push(file.assignments.len());
                file.assignments.push(DdAssignment { id: file.assignments.len(), vertex: v, label, cost });
            }
            ids.push(row);
        }
        for b in inst.edges() {
            for &(k, l, cost) in b.entries() {
                let (first, second) = (ids[b.u][k], ids[b.v][l]);
                if first == usize::MAX || second == usize::MAX {
                    return Err(format!("edge {}-{} has a cost on the dummy label", b.u, b.v));
                }
                file.edges.push(DdEdge { first, second, cost });
            }
        }
        Ok(file)
    }
}

/// Parses `.dd` text straight into an IQAP.
pub fn parse_dd(text: &str, dummy_cost: f64) -> Result<IqapInstance, ParseError> {
    let file = parse_dd_file(text)?;
    file.to_iqap(dummy_cost).map_err(|e| ParseError::new(0, e.to_string()))
}

/// `.dd` text for an IQAP, see [`DdFile::from_iqap`].
pub fn write_dd(inst: &IqapInstance) -> Result<String, String> {
    DdFile::from_iqap(inst).map(|f| f.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "c toy\np 2 2 2 1\na 0 0 0 1.5\na 1 1 1 -2\ne 0 1 3\n";

    #[test]
    fn toy_file() {
        let inst = parse_dd(TOY, 0.0).unwrap();
        assert_eq!(inst.num_vertices(), 2);
        assert_eq!(inst.unary().labels(0), &[0, DUMMY]);
        assert_eq!(inst.unary().costs(1), &[-2.0, 0.0]);
        assert_eq!(inst.edges().len(), 1);
        assert_eq!(inst.edges()[0].cost(0, 0), 3.0);
    }

    #[test]
    fn no_assignments_is_all_dummy() {
        let inst = parse_dd("p 3 2 0 0\n", 0.0).unwrap();
        for v in 0..3 {
            assert_eq!(inst.unary().labels(v), &[DUMMY]);
        }
    }

    #[test]
    fn duplicate_edges_are_summed() {
        let text = "p 2 2 2 2\na 0 0 0 0\na 1 1 1 0\ne 0 1 3\ne 1 0 -1\n";
        assert_eq!(parse_dd(text, 0.0).unwrap().edges()[0].cost(0, 0), 2.0);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let cases = [
            ("p 1 1 1 0\na 0 0 0 x\n", 2, "bad cost"),
            ("a 0 0 0 1\n", 1, "before"),
            ("p 1 1 2 0\na 0 0 0 1\na 1 0 0 2\n", 3, "already paired"),
            ("p 2 1 2 1\na 0 0 0 1\na 1 1 0 1\ne 0 5 1\n", 4, "unknown assignment"),
            ("p 2 2 2 1\na 0 0 0 1\na 1 0 1 1\ne 0 1 1\n", 4, "same vertex"),
            ("p 1 1 2 0\na 0 0 0 1\n", 2, "announces 2 assignments"),
            ("p 1 1 1 0\nq\n", 2, "unknown record"),
            ("p 1 1 0 0 7\n", 1, "trailing"),
            ("", 1, "missing `p`"),
        ];
        for (text, line, needle) in cases {
            let err = parse_dd_file(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
            assert!(err.message.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn point_records_are_skipped() {
        let text = "p 1 1 1 0\nn0 0 1.0 2.0\nn1 0 3.0 4.0\na 0 0 0 1\n";
        assert_eq!(parse_dd_file(text).unwrap().assignments.len(), 1);
    }

    #[test]
    fn write_then_parse() {
        let inst = parse_dd(TOY, 0.0).unwrap();
        let again = parse_dd(&write_dd(&inst).unwrap(), 0.0).unwrap();
        assert_eq!(inst, again);
        assert!(write_dd(&parse_dd(TOY, 1.0).unwrap()).is_err());
    }
}
