//! QAPLIB instances: `n`, then two `n x n` matrices, whitespace separated.
//!
//! The first matrix is read as flows `F`, the second as distances `D`; the
//! objective of a permutation `p` is `sum_{u,v} F[u][v] * D[p(u)][p(v)]`.

use qapbound_core::instance::EdgeCosts;
use qapbound_core::{IlapInstance, IqapInstance};

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub struct Qaplib {
    pub n: usize,
    pub flow: Vec<Vec<f64>>,
    pub dist: Vec<Vec<f64>>,
}

pub fn parse_qaplib(text: &str) -> Result<Qaplib, ParseError> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
    let last = text.lines().count().max(1);
    let (line, tok) = tokens.next().ok_or_else(|| ParseError::new(1, "empty file"))?;
    let n: usize = tok.parse().map_err(|_| ParseError::new(line, format!("bad size `{tok}`")))?;
    if n == 0 {
        return Err(ParseError::new(line, "size must be positive"));
    }
    let mut matrix = |name: &str| -> Result<Vec<Vec<f64>>, ParseError> {
        let mut m = vec![vec![0.0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let (line, tok) = tokens.next().ok_or_else(|| {
                    ParseError::new(last, format!("{name} matrix ends early at entry ({i}, {j}) of size {n}"))
                })?;
                *x = match tok.parse::<f64>() {
                    Ok(v) if v.is_finite() => v,
                    _ => return Err(ParseError::new(line, format!("bad number `{tok}`"))),
                };
            }
        }
        Ok(m)
    };
    let flow = matrix("flow")?;
    let dist = matrix("distance")?;
    if let Some((line, tok)) = tokens.next() {
        return Err(ParseError::new(line, format!("trailing token `{tok}` after two {n}x{n} matrices")));
    }
    Ok(Qaplib { n, flow, dist })
}

/// How much to subtract from every real unary cost.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shift {
    /// Large enough that every optimum assigns all vertices.
    Auto,
    Value(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Converted {
    pub instance: IqapInstance,
    /// The constant subtracted per vertex.
    pub shift: f64,
    /// Add this to a bound of `instance` to get a bound on the QAP.
    pub offset: f64,
}

impl Qaplib {
    pub fn objective(&self, perm: &[usize]) -> f64 {
        let mut total = 0.0;
        for u in 0..self.n {
            for v in 0..self.n {
                total += self.flow[u][v] * self.dist[perm[u]][perm[v]];
            }
        }
        total
    }

    /// IQAP with all labels allowed, pairwise blocks
    /// `F[u][v] * D[k][l] + F[v][u] * D[l][k]` on every pair with a nonzero
    /// block, unaries `F[v][v] * D[l][l] - C` and the dummy at 0.
    pub fn to_iqap(&self, shift: Shift) -> Converted {
        let n = self.n;
        let mut edges = Vec::new();
        let mut pair_total = 0.0;
        for u in 0..n {
            for v in u + 1..n {
                if self.flow[u][v] == 0.0 && self.flow[v][u] == 0.0 {
                    continue;
                }
                let mut entries = Vec::new();
                let mut peak: f64 = 0.0;
                for k in 0..n {
                    for l in 0..n {
                        let c = self.flow[u][v] * self.dist[k][l] + self.flow[v][u] * self.dist[l][k];
                        if c != 0.0 {
                            peak = peak.max(c.abs());
                            entries.push((k, l, c));
                        }
                    }
                }
                if !entries.is_empty() {
                    pair_total += peak;
                    edges.push(EdgeCosts { u, v, entries });
                }
            }
        }
        let diag = |v: usize, l: usize| self.flow[v][v] * self.dist[l][l];
        let diag_peak = (0..n).flat_map(|v| (0..n).map(move |l| (v, l))).fold(0.0f64, |m, (v, l)| m.max(diag(v, l).abs()));
        let c = match shift {
            Shift::Auto => 1.0 + pair_total + diag_peak,
            Shift::Value(c) => c,
        };
        let rows = (0..n).map(|v| (0..n).map(|l| (l, diag(v, l) - c)).collect()).collect();
        let unary = IlapInstance::new(n, rows, vec![0.0; n]).expect("dense unary block is valid");
        let instance = IqapInstance::new(unary, edges).expect("converted edges are valid");
        Converted { instance, shift: c, offset: n as f64 * c }
    }
}
