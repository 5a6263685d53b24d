//! Moving an optimal LAP dual into the relative interior of the dual optimal
//! face.
//!
//! Given an optimal dual and an optimal assignment `x`, every equality edge
//! `{u, l}` with `l != x_u` induces the exchange arc `u -> owner(l)`. An edge
//! lies on a perfect matching of the equality subgraph iff it is a matching
//! edge or its arc stays inside one strongly connected component. Components
//! are visited sinks first; each one with incoming arcs raises its `alpha`
//! and lowers the `beta` of its matched labels by `delta / 2`, which keeps the
//! objective, keeps feasibility, and makes every arc entering it slack.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Assignment, LapDual, LapInstance};
use crate::lap::{equality_subgraph, EqualitySubgraph};

const NONE: usize = usize::MAX;

/// Exchange digraph of a matching inside a bipartite graph, with its strongly
/// connected components numbered in a topological order of the condensation
/// (component 0 has no incoming arcs from other components).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeDigraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    component: Vec<usize>,
    num_components: usize,
    has_incoming: Vec<bool>,
}

impl ExchangeDigraph {
    pub fn num_vertices(&self) -> usize {
        self.component.len()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_vertices()).flat_map(move |u| self.successors(u).iter().map(move |&v| (u, v)))
    }

    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    /// Whether the condensation has an arc into component `c`.
    pub fn has_incoming(&self, c: usize) -> bool {
        self.has_incoming[c]
    }

    /// Vertex sets of the components, in topological order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_components];
        for (v, &c) in self.component.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Validates that `x` is a perfect matching inside `sub` and returns the
/// owner of every label.
fn matching_owners(sub: &EqualitySubgraph, x: &Assignment) -> Result<Vec<usize>> {
    let n = sub.num_vertices();
    if x.len() != n {
        return Err(Error::DimensionMismatch { what: "assignment", expected: n, found: x.len() });
    }
    let mut owner = vec![NONE; n];
    for (v, &l) in x.0.iter().enumerate() {
        if l >= n || owner[l] != NONE {
            return Err(Error::Precondition("assignment is not a bijection"));
        }
        if !sub.contains(v, l) {
            return Err(Error::Precondition("assignment edge is not in the equality subgraph"));
        }
        owner[l] = v;
    }
    Ok(owner)
}

/// Tarjan's algorithm over the implicit exchange digraph. Returns component
/// ids in topological order and the component count.
fn exchange_components(sub: &EqualitySubgraph, x: &[usize], owner: &[usize]) -> (Vec<usize>, usize) {
    let n = sub.num_vertices();
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut emitted = vec![NONE; n];
    let mut count = 0usize;
    let mut next_index = 0usize;
    // (vertex, next neighbour position)
    let mut calls: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != NONE {
            continue;
        }
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;
        calls.push((start, 0));

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            let nbrs = sub.neighbors(v);
            if *pos < nbrs.len() {
                let l = nbrs[*pos];
                *pos += 1;
                if l == x[v] {
                    continue;
                }
                let w = owner[l];
                if index[w] == NONE {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        emitted[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    // Tarjan emits sink components first.
    let component = emitted.into_iter().map(|e| count - 1 - e).collect();
    (component, count)
}

fn incoming_flags(sub: &EqualitySubgraph, x: &[usize], owner: &[usize], component: &[usize], count: usize) -> Vec<bool> {
    let mut has_incoming = vec![false; count];
    for (u, l) in sub.edges() {
        if l != x[u] {
            let cv = component[owner[l]];
            if component[u] != cv {
                has_incoming[cv] = true;
            }
        }
    }
    has_incoming
}

/// Exchange digraph of `x` inside `sub`, with components and a topological
/// numbering of the condensation.
pub fn build_exchange_digraph(sub: &EqualitySubgraph, x: &Assignment) -> Result<ExchangeDigraph> {
    let owner = matching_owners(sub, x)?;
    let n = sub.num_vertices();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::new();
    offsets.push(0);
    for u in 0..n {
        let mut row: Vec<usize> = sub.neighbors(u).iter().filter(|&&l| l != x.0[u]).map(|&l| owner[l]).collect();
        row.sort_unstable();
        targets.extend(row);
        offsets.push(targets.len());
    }
    let (component, num_components) = exchange_components(sub, &x.0, &owner);
    let has_incoming = incoming_flags(sub, &x.0, &owner, &component, num_components);
    Ok(ExchangeDigraph { offsets, targets, component, num_components, has_incoming })
}

/// Edges of `sub` that belong to some perfect matching, given one perfect
/// matching `x`.
pub fn perfectly_matchable_edges(sub: &EqualitySubgraph, x: &Assignment) -> Result<EqualitySubgraph> {
    let owner = matching_owners(sub, x)?;
    let (component, _) = exchange_components(sub, &x.0, &owner);
    let lists = (0..sub.num_vertices())
        .map(|v| {
            sub.neighbors(v)
                .iter()
                .copied()
                .filter(|&l| l == x.0[v] || component[owner[l]] == component[v])
                .collect()
        })
        .collect();
    Ok(EqualitySubgraph::from_lists(lists))
}

/// One processed component of the shift.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftStep {
    pub vertices: Vec<usize>,
    pub delta: f64,
}

/// Returns a dual optimum in the relative interior of the dual optimal face.
///
/// `dual` must be optimal and `x` an optimal assignment; this is checked as
/// "`x` is a perfect matching of the `eps`-equality subgraph of `dual`".
/// Runs in time linear in the number of allowed pairs.
pub fn shift_to_relative_interior(inst: &LapInstance, dual: &LapDual, x: &Assignment, eps: f64) -> Result<LapDual> {
    shift_to_relative_interior_traced(inst, dual, x, eps).map(|(d, _)| d)
}

/// [`shift_to_relative_interior`] that also reports each processed component
/// with its step size, in processing order.
pub fn shift_to_relative_interior_traced(
    inst: &LapInstance,
    dual: &LapDual,
    x: &Assignment,
    eps: f64,
) -> Result<(LapDual, Vec<ShiftStep>)> {
    let sub = equality_subgraph(inst, dual, eps)?;
    let owner = matching_owners(&sub, x)?;
    let (component, count) = exchange_components(&sub, &x.0, &owner);
    let has_incoming = incoming_flags(&sub, &x.0, &owner, &component, count);

    let mut members = vec![Vec::new(); count];
    for (v, &c) in component.iter().enumerate() {
        members[c].push(v);
    }

    let mut out = dual.clone();
    let mut steps = Vec::new();
    for c in (0..count).rev() {
        if !has_incoming[c] {
            continue;
        }
        let mut delta = f64::INFINITY;
        for &v in &members[c] {
            for p in inst.data.range(v) {
                let l = inst.data.labels[p];
                if component[owner[l]] != c {
                    delta = delta.min(inst.slack(&out, p));
                }
            }
        }
        if delta == f64::INFINITY {
            delta = 1.0;
        }
        // Removed edges must end up strictly outside the activity band.
        delta = delta.max(2.0 * eps);
        let half = delta / 2.0;
        for &v in &members[c] {
            out.alpha[v] += half;
            out.beta[x.0[v]] -= half;
        }
        steps.push(ShiftStep { vertices: members[c].clone(), delta });
    }
    Ok((out, steps))
}
