//! Problem classes, assignments, dual vectors and their evaluation.
//!
//! Vertices and labels are dense indices. Allowed labels are stored as a
//! compressed row structure: one sorted label list per vertex with a parallel
//! cost array. For incomplete problems the dummy label [`DUMMY`] is the last
//! entry of every row.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};

/// The dummy label `#` of incomplete problems. It sorts after every real label.
pub const DUMMY: usize = usize::MAX;

/// Absolute activity tolerance, scaled by `1 + max |theta|` of an instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    pub fn scaled(self, max_abs_cost: f64) -> f64 {
        self.0 * (1.0 + max_abs_cost)
    }
}

/// Compressed per-vertex label lists with costs, plus the transposed index
/// (for each label, the CSR positions of the vertices allowing it).
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SparseCosts {
    pub(crate) offsets: Vec<usize>,
    pub(crate) labels: Vec<usize>,
    pub(crate) costs: Vec<f64>,
    /// `users[user_offsets[l]..user_offsets[l + 1]]` are CSR positions `(v, l)`.
    pub(crate) user_offsets: Vec<usize>,
    pub(crate) users: Vec<usize>,
    pub(crate) row_of: Vec<usize>,
}

impl SparseCosts {
    /// `rows[v]` lists `(label, cost)`; `num_labels` bounds real labels.
    /// `DUMMY` entries are accepted only when `allow_dummy`.
    fn build(rows: Vec<Vec<(usize, f64)>>, num_labels: usize, allow_dummy: bool) -> Result<Self> {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        let mut labels = Vec::new();
        let mut costs = Vec::new();
        let mut row_of = Vec::new();
        offsets.push(0);
        for (v, mut row) in rows.into_iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidInstance(format!("vertex {v} has no allowed label")));
            }
            row.sort_by_key(|a| a.0);
            for (i, &(l, c)) in row.iter().enumerate() {
                if l == DUMMY {
                    if !allow_dummy {
                        return Err(Error::InvalidInstance(format!(
                            "vertex {v}: dummy label in a complete LAP"
                        )));
                    }
                } else if l >= num_labels {
                    return Err(Error::InvalidInstance(format!(
                        "vertex {v}: label {l} out of range 0..{num_labels}"
                    )));
                }
                if i > 0 && row[i - 1].0 == l {
                    return Err(Error::InvalidInstance(format!("vertex {v}: duplicate label {l}")));
                }
                if !c.is_finite() {
                    return Err(Error::InvalidInstance(format!(
                        "vertex {v}: non-finite cost for label {l}"
                    )));
                }
                labels.push(l);
                costs.push(c);
                row_of.push(v);
            }
            offsets.push(labels.len());
        }
        let mut counts = vec![0usize; num_labels + 1];
        for &l in &labels {
            if l != DUMMY {
                counts[l + 1] += 1;
            }
        }
        for l in 0..num_labels {
            counts[l + 1] += counts[l];
        }
        let user_offsets = counts.clone();
        let mut fill = counts;
        let mut users = vec![0usize; *user_offsets.last().unwrap_or(&0)];
        for (pos, &l) in labels.iter().enumerate() {
            if l != DUMMY {
                users[fill[l]] = pos;
                fill[l] += 1;
            }
        }
        Ok(SparseCosts { offsets, labels, costs, user_offsets, users, row_of })
    }

    pub(crate) fn num_rows(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn range(&self, v: usize) -> core::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub(crate) fn position(&self, v: usize, l: usize) -> Option<usize> {
        let r = self.range(v);
        self.labels[r.clone()].binary_search(&l).ok().map(|i| r.start + i)
    }

    pub(crate) fn users(&self, l: usize) -> &[usize] {
        &self.users[self.user_offsets[l]..self.user_offsets[l + 1]]
    }

    fn max_abs(&self) -> f64 {
        self.costs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

/// A complete linear assignment problem over `n` vertices and `n` labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LapInstance {
    pub(crate) data: SparseCosts,
}

impl LapInstance {
    /// `rows[v]` lists the allowed `(label, cost)` pairs of vertex `v`.
    pub fn new(rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let n = rows.len();
        Ok(LapInstance { data: SparseCosts::build(rows, n, false)? })
    }

    /// All labels allowed; `costs[v][l]`.
    pub fn from_dense(costs: &[Vec<f64>]) -> Result<Self> {
        let rows = costs
            .iter()
            .map(|r| r.iter().copied().enumerate().collect())
            .collect();
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.data.num_rows()
    }

    pub fn num_entries(&self) -> usize {
        self.data.labels.len()
    }

    pub fn labels(&self, v: usize) -> &[usize] {
        &self.data.labels[self.data.range(v)]
    }

    pub fn costs(&self, v: usize) -> &[f64] {
        &self.data.costs[self.data.range(v)]
    }

    pub fn cost(&self, v: usize, l: usize) -> Option<f64> {
        self.data.position(v, l).map(|p| self.data.costs[p])
    }

    /// Offset of vertex `v`'s row in the flat entry arrays.
    pub fn row_offset(&self, v: usize) -> usize {
        self.data.offsets[v]
    }

    /// Flat entry index of `(v, l)`, if allowed.
    pub fn position(&self, v: usize, l: usize) -> Option<usize> {
        self.data.position(v, l)
    }

    /// Vertices allowing label `l`.
    pub fn vertices_allowing(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        self.data.users(l).iter().map(move |&p| self.data.row_of[p])
    }

    pub fn max_abs_cost(&self) -> f64 {
        self.data.max_abs()
    }

    pub fn eps(&self, tol: Tolerance) -> f64 {
        tol.scaled(self.max_abs_cost())
    }

    pub fn check_feasible(&self, x: &Assignment) -> core::result::Result<(), Violation> {
        let n = self.size();
        if x.len() != n {
            return Err(Violation::Length { expected: n, found: x.len() });
        }
        let mut owner = vec![usize::MAX; n];
        for (v, &l) in x.0.iter().enumerate() {
            if l == DUMMY || self.data.position(v, l).is_none() {
                return Err(Violation::Disallowed { vertex: v, label: l });
            }
            if owner[l] != usize::MAX {
                return Err(Violation::Duplicate { label: l, first: owner[l], second: v });
            }
            owner[l] = v;
        }
        // n vertices with distinct labels out of n labels always cover all of
        // them; kept for assignments checked against a truncated label range.
        if let Some(l) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Violation::NotBijection { label: l });
        }
        Ok(())
    }

    pub fn objective(&self, x: &Assignment) -> Result<f64> {
        self.check_feasible(x).map_err(Error::Infeasible)?;
        Ok(x.0.iter().enumerate().map(|(v, &l)| self.cost(v, l).unwrap()).sum())
    }

    fn check_dims(&self, dual: &LapDual) -> Result<()> {
        let n = self.size();
        if dual.alpha.len() != n {
            return Err(Error::DimensionMismatch { what: "alpha", expected: n, found: dual.alpha.len() });
        }
        if dual.beta.len() != n {
            return Err(Error::DimensionMismatch { what: "beta", expected: n, found: dual.beta.len() });
        }
        Ok(())
    }

    /// Checks `alpha_v + beta_l <= theta_v(l) + eps` on every allowed pair.
    pub fn dual_feasible(&self, dual: &LapDual, eps: f64) -> Result<()> {
        self.check_dims(dual)?;
        for v in 0..self.size() {
            for p in self.data.range(v) {
                let l = self.data.labels[p];
                let excess = dual.alpha[v] + dual.beta[l] - self.data.costs[p];
                if excess > eps {
                    return Err(Error::DualInfeasible { vertex: Some(v), label: Some(l), excess });
                }
            }
        }
        Ok(())
    }

    pub fn dual_objective(&self, dual: &LapDual) -> Result<f64> {
        self.check_dims(dual)?;
        Ok(dual.alpha.iter().sum::<f64>() + dual.beta.iter().sum::<f64>())
    }

    /// Slack `theta_v(l) - alpha_v - beta_l` at flat position `p`.
    pub(crate) fn slack(&self, dual: &LapDual, p: usize) -> f64 {
        self.data.costs[p] - dual.alpha[self.data.row_of[p]] - dual.beta[self.data.labels[p]]
    }

    /// Row sums equal 1, column sums equal 1, entries non-negative.
    pub fn primal_feasible(&self, mu: &PrimalVector, eps: f64) -> Result<()> {
        primal_feasible(&self.data, self.size(), mu, eps, true)
    }

    pub fn primal_objective(&self, mu: &PrimalVector) -> Result<f64> {
        primal_objective(&self.data, mu)
    }

    /// Indicator vector of a feasible assignment.
    pub fn indicator(&self, x: &Assignment) -> Result<PrimalVector> {
        self.check_feasible(x).map_err(Error::Infeasible)?;
        Ok(indicator(&self.data, x))
    }
}

fn indicator(data: &SparseCosts, x: &Assignment) -> PrimalVector {
    let mut values = vec![0.0; data.labels.len()];
    for (v, &l) in x.0.iter().enumerate() {
        values[data.position(v, l).unwrap()] = 1.0;
    }
    PrimalVector { values }
}

fn primal_objective(data: &SparseCosts, mu: &PrimalVector) -> Result<f64> {
    if mu.values.len() != data.labels.len() {
        return Err(Error::DimensionMismatch { what: "mu", expected: data.labels.len(), found: mu.values.len() });
    }
    Ok(mu.values.iter().zip(&data.costs).map(|(m, c)| m * c).sum())
}

fn primal_feasible(data: &SparseCosts, num_labels: usize, mu: &PrimalVector, eps: f64, complete: bool) -> Result<()> {
    if mu.values.len() != data.labels.len() {
        return Err(Error::DimensionMismatch { what: "mu", expected: data.labels.len(), found: mu.values.len() });
    }
    if mu.values.iter().any(|&m| m < -eps || !m.is_finite()) {
        return Err(Error::Precondition("primal vector has a negative entry"));
    }
    for v in 0..data.num_rows() {
        let s: f64 = mu.values[data.range(v)].iter().sum();
        if (s - 1.0).abs() > eps {
            return Err(Error::Precondition("primal row sum differs from 1"));
        }
    }
    for l in 0..num_labels {
        let s: f64 = data.users(l).iter().map(|&p| mu.values[p]).sum();
        if s > 1.0 + eps || (complete && s < 1.0 - eps) {
            return Err(Error::Precondition("primal column sum violates its constraint"));
        }
    }
    Ok(())
}

/// An incomplete LAP: labels `0..num_labels` plus [`DUMMY`], which every vertex
/// allows and which may be used any number of times.
#[derive(Clone, Debug, PartialEq)]
pub struct IlapInstance {
    pub(crate) data: SparseCosts,
    pub(crate) num_labels: usize,
}

impl IlapInstance {
    /// `rows[v]` lists real `(label, cost)` pairs; `dummy_costs[v]` is `theta_v(#)`.
    pub fn new(num_labels: usize, rows: Vec<Vec<(usize, f64)>>, dummy_costs: Vec<f64>) -> Result<Self> {
        if rows.len() != dummy_costs.len() {
            return Err(Error::DimensionMismatch { what: "dummy costs", expected: rows.len(), found: dummy_costs.len() });
        }
        let mut full = Vec::with_capacity(rows.len());
        for (v, (mut row, d)) in rows.into_iter().zip(dummy_costs).enumerate() {
            if row.iter().any(|&(l, _)| l == DUMMY) {
                return Err(Error::InvalidInstance(format!("vertex {v}: dummy label listed as a real label")));
            }
            row.push((DUMMY, d));
            full.push(row);
        }
        Ok(IlapInstance { data: SparseCosts::build(full, num_labels, true)?, num_labels })
    }

    pub fn num_vertices(&self) -> usize {
        self.data.num_rows()
    }

    /// Number of real (non-dummy) labels.
    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    pub fn num_entries(&self) -> usize {
        self.data.labels.len()
    }

    /// Allowed labels of `v`, ending with [`DUMMY`].
    pub fn labels(&self, v: usize) -> &[usize] {
        &self.data.labels[self.data.range(v)]
    }

    pub fn costs(&self, v: usize) -> &[f64] {
        &self.data.costs[self.data.range(v)]
    }

    pub fn cost(&self, v: usize, l: usize) -> Option<f64> {
        self.data.position(v, l).map(|p| self.data.costs[p])
    }

    pub fn dummy_cost(&self, v: usize) -> f64 {
        self.data.costs[self.data.offsets[v + 1] - 1]
    }

    pub fn row_offset(&self, v: usize) -> usize {
        self.data.offsets[v]
    }

    pub fn position(&self, v: usize, l: usize) -> Option<usize> {
        self.data.position(v, l)
    }

    /// Vertices allowing the real label `l`.
    pub fn vertices_allowing(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        self.data.users(l).iter().map(move |&p| self.data.row_of[p])
    }

    pub fn max_abs_cost(&self) -> f64 {
        self.data.max_abs()
    }

    pub fn eps(&self, tol: Tolerance) -> f64 {
        tol.scaled(self.max_abs_cost())
    }

    /// Same structure, costs replaced entry by entry (flat order).
    pub fn with_costs(&self, costs: Vec<f64>) -> Result<Self> {
        if costs.len() != self.data.costs.len() {
            return Err(Error::DimensionMismatch { what: "costs", expected: self.data.costs.len(), found: costs.len() });
        }
        if costs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInstance("non-finite cost".into()));
        }
        let mut data = self.data.clone();
        data.costs = costs;
        Ok(IlapInstance { data, num_labels: self.num_labels })
    }

    pub fn check_feasible(&self, x: &Assignment) -> core::result::Result<(), Violation> {
        let n = self.num_vertices();
        if x.len() != n {
            return Err(Violation::Length { expected: n, found: x.len() });
        }
        let mut owner = vec![usize::MAX; self.num_labels];
        for (v, &l) in x.0.iter().enumerate() {
            if self.data.position(v, l).is_none() {
                return Err(Violation::Disallowed { vertex: v, label: l });
            }
            if l == DUMMY {
                continue;
            }
            if owner[l] != usize::MAX {
                return Err(Violation::Duplicate { label: l, first: owner[l], second: v });
            }
            owner[l] = v;
        }
        Ok(())
    }

    pub fn objective(&self, x: &Assignment) -> Result<f64> {
        self.check_feasible(x).map_err(Error::Infeasible)?;
        Ok(x.0.iter().enumerate().map(|(v, &l)| self.cost(v, l).unwrap()).sum())
    }

    fn check_dims(&self, dual: &IlapDual) -> Result<()> {
        if dual.alpha.len() != self.num_vertices() {
            return Err(Error::DimensionMismatch { what: "alpha", expected: self.num_vertices(), found: dual.alpha.len() });
        }
        if dual.beta.len() != self.num_labels {
            return Err(Error::DimensionMismatch { what: "beta", expected: self.num_labels, found: dual.beta.len() });
        }
        Ok(())
    }

    /// Checks `alpha_v + [l != #] beta_l <= theta_v(l) + eps` and `beta <= eps`.
    pub fn dual_feasible(&self, dual: &IlapDual, eps: f64) -> Result<()> {
        self.check_dims(dual)?;
        for (l, &b) in dual.beta.iter().enumerate() {
            if b > eps {
                return Err(Error::DualInfeasible { vertex: None, label: Some(l), excess: b });
            }
        }
        for v in 0..self.num_vertices() {
            for p in self.data.range(v) {
                let excess = -self.slack(dual, p);
                if excess > eps {
                    return Err(Error::DualInfeasible { vertex: Some(v), label: Some(self.data.labels[p]), excess });
                }
            }
        }
        Ok(())
    }

    pub fn dual_objective(&self, dual: &IlapDual) -> Result<f64> {
        self.check_dims(dual)?;
        Ok(dual.alpha.iter().sum::<f64>() + dual.beta.iter().sum::<f64>())
    }

    pub(crate) fn slack(&self, dual: &IlapDual, p: usize) -> f64 {
        let l = self.data.labels[p];
        let b = if l == DUMMY { 0.0 } else { dual.beta[l] };
        self.data.costs[p] - dual.alpha[self.data.row_of[p]] - b
    }

    /// Row sums equal 1, real-label column sums at most 1, entries non-negative.
    pub fn primal_feasible(&self, mu: &PrimalVector, eps: f64) -> Result<()> {
        primal_feasible(&self.data, self.num_labels, mu, eps, false)
    }

    pub fn primal_objective(&self, mu: &PrimalVector) -> Result<f64> {
        primal_objective(&self.data, mu)
    }

    pub fn indicator(&self, x: &Assignment) -> Result<PrimalVector> {
        self.check_feasible(x).map_err(Error::Infeasible)?;
        Ok(indicator(&self.data, x))
    }
}

/// Pairwise costs of one edge `uv` (`u < v`), indexed by positions in the
/// allowed lists of `u` (rows) and `v` (columns). Missing entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseBlock {
    pub u: usize,
    pub v: usize,
    rows: usize,
    cols: usize,
    /// `(k, l, cost)` sorted by `(k, l)`.
    entries: Vec<(usize, usize, f64)>,
    row_ptr: Vec<usize>,
    /// `(l, k, cost)` sorted by `(l, k)`.
    transposed: Vec<(usize, usize, f64)>,
    col_ptr: Vec<usize>,
}

fn compress(entries: &[(usize, usize, f64)], n: usize) -> Vec<usize> {
    let mut ptr = vec![0usize; n + 1];
    for &(k, _, _) in entries {
        ptr[k + 1] += 1;
    }
    for i in 0..n {
        ptr[i + 1] += ptr[i];
    }
    ptr
}

impl PairwiseBlock {
    fn new(u: usize, v: usize, rows: usize, cols: usize, mut entries: Vec<(usize, usize, f64)>) -> Result<Self> {
        entries.sort_by_key(|a| (a.0, a.1));
        for w in entries.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::InvalidInstance(format!("edge {u}-{v}: duplicate pairwise entry")));
            }
        }
        let mut transposed: Vec<_> = entries.iter().map(|&(k, l, c)| (l, k, c)).collect();
        transposed.sort_by_key(|a| (a.0, a.1));
        let row_ptr = compress(&entries, rows);
        let col_ptr = compress(&transposed, cols);
        Ok(PairwiseBlock { u, v, rows, cols, entries, row_ptr, transposed, col_ptr })
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Stored `(k, l, cost)` triples sorted by `(k, l)`.
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn row(&self, k: usize) -> &[(usize, usize, f64)] {
        &self.entries[self.row_ptr[k]..self.row_ptr[k + 1]]
    }

    /// Stored entries of column `l` as `(l, k, cost)`, sorted by `k`.
    pub fn col(&self, l: usize) -> &[(usize, usize, f64)] {
        &self.transposed[self.col_ptr[l]..self.col_ptr[l + 1]]
    }

    pub fn cost(&self, k: usize, l: usize) -> f64 {
        let row = self.row(k);
        match row.binary_search_by(|e| e.1.cmp(&l)) {
            Ok(i) => row[i].2,
            Err(_) => 0.0,
        }
    }

    fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, e| m.max(e.2.abs()))
    }
}

/// Pairwise costs of one edge given by label ids, as accepted by
/// [`IqapInstance::new`]. Endpoint order is free; entries are `(label of u,
/// label of v, cost)` and may mention [`DUMMY`].
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeCosts {
    pub u: usize,
    pub v: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

/// An incomplete QAP: an ILAP plus pairwise costs on a loopless graph.
#[derive(Clone, Debug, PartialEq)]
pub struct IqapInstance {
    pub(crate) unary: IlapInstance,
    pub(crate) edges: Vec<PairwiseBlock>,
    /// For each vertex, `(edge index, vertex is the first endpoint)`.
    pub(crate) incident: Vec<Vec<(usize, bool)>>,
}

impl IqapInstance {
    pub fn new(unary: IlapInstance, edges: Vec<EdgeCosts>) -> Result<Self> {
        let n = unary.num_vertices();
        let mut blocks: Vec<PairwiseBlock> = Vec::with_capacity(edges.len());
        for e in edges {
            if e.u == e.v {
                return Err(Error::InvalidInstance(format!("loop at vertex {}", e.u)));
            }
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidInstance(format!("edge {}-{} out of range", e.u, e.v)));
            }
            let (u, v, flip) = if e.u < e.v { (e.u, e.v, false) } else { (e.v, e.u, true) };
            let mut local = Vec::with_capacity(e.entries.len());
            for (a, b, c) in e.entries {
                let (lu, lv) = if flip { (b, a) } else { (a, b) };
                if !c.is_finite() {
                    return Err(Error::InvalidInstance(format!("edge {u}-{v}: non-finite cost")));
                }
                let k = unary.position(u, lu).ok_or_else(|| {
                    Error::InvalidInstance(format!("edge {u}-{v}: label {lu} not allowed for vertex {u}"))
                })? - unary.row_offset(u);
                let l = unary.position(v, lv).ok_or_else(|| {
                    Error::InvalidInstance(format!("edge {u}-{v}: label {lv} not allowed for vertex {v}"))
                })? - unary.row_offset(v);
                local.push((k, l, c));
            }
            blocks.push(PairwiseBlock::new(u, v, unary.labels(u).len(), unary.labels(v).len(), local)?);
        }
        blocks.sort_by_key(|a| (a.u, a.v));
        for w in blocks.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(Error::InvalidInstance(format!("duplicate edge {}-{}", w[0].u, w[0].v)));
            }
        }
        let mut incident = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            incident[b.u].push((i, true));
            incident[b.v].push((i, false));
        }
        Ok(IqapInstance { unary, edges: blocks, incident })
    }

    pub fn unary(&self) -> &IlapInstance {
        &self.unary
    }

    pub fn edges(&self) -> &[PairwiseBlock] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.unary.num_vertices()
    }

    pub fn num_labels(&self) -> usize {
        self.unary.num_labels()
    }

    /// Neighbours of `v` in edge order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(move |&(e, first)| {
            let b = &self.edges[e];
            if first {
                b.v
            } else {
                b.u
            }
        })
    }

    pub fn max_abs_cost(&self) -> f64 {
        self.edges.iter().fold(self.unary.max_abs_cost(), |m, e| m.max(e.max_abs()))
    }

    pub fn eps(&self, tol: Tolerance) -> f64 {
        tol.scaled(self.max_abs_cost())
    }

    /// Edges again as label-keyed [`EdgeCosts`].
    pub fn edge_costs(&self) -> Vec<EdgeCosts> {
        self.edges
            .iter()
            .map(|b| EdgeCosts {
                u: b.u,
                v: b.v,
                entries: b
                    .entries
                    .iter()
                    .map(|&(k, l, c)| (self.unary.labels(b.u)[k], self.unary.labels(b.v)[l], c))
                    .collect(),
            })
            .collect()
    }

    pub fn check_feasible(&self, x: &Assignment) -> core::result::Result<(), Violation> {
        self.unary.check_feasible(x)
    }

    pub fn objective(&self, x: &Assignment) -> Result<f64> {
        let mut total = self.unary.objective(x)?;
        for b in &self.edges {
            let k = self.unary.position(b.u, x.0[b.u]).unwrap() - self.unary.row_offset(b.u);
            let l = self.unary.position(b.v, x.0[b.v]).unwrap() - self.unary.row_offset(b.v);
            total += b.cost(k, l);
        }
        Ok(total)
    }
}

/// A vertex-to-label map. [`DUMMY`] marks an unassigned vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<usize>);

impl Assignment {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_dummy(n: usize) -> Self {
        Assignment(vec![DUMMY; n])
    }

    pub fn label(&self, v: usize) -> usize {
        self.0[v]
    }
}

/// Dual of the LAP linear program: one `alpha` per vertex, one `beta` per label.
#[derive(Clone, Debug, PartialEq)]
pub struct LapDual {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// Dual of the ILAP linear program; `beta` is indexed by real labels only.
#[derive(Clone, Debug, PartialEq)]
pub struct IlapDual {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// Primal LP vector `mu_v(l)`, stored in the flat entry order of its instance.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimalVector {
    pub values: Vec<f64>,
}
