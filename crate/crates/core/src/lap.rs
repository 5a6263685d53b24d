//! Exact sparse LAP solver and equality subgraphs.
//!
//! The solver is a shortest-augmenting-path Hungarian method with vertex and
//! label potentials. Each phase runs Dijkstra over the labels with reduced
//! costs `theta_v(l) - alpha_v - beta_l >= 0`, then updates the potentials so
//! that the path becomes tight, and augments. Potentials start at
//! `alpha_v = min_l theta_v(l)`, `beta = 0`.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::instance::{Assignment, LapDual, LapInstance};

const NONE: usize = usize::MAX;

/// Optimal assignment, optimal dual, and the optimal value.
#[derive(Clone, Debug, PartialEq)]
pub struct LapSolution {
    pub assignment: Assignment,
    pub dual: LapDual,
    pub value: f64,
}

trait Cost: Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> {
    const ZERO: Self;
    fn to_f64(self) -> f64;
}

impl Cost for i64 {
    const ZERO: Self = 0;
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Cost for f64 {
    const ZERO: Self = 0.0;
    fn to_f64(self) -> f64 {
        self
    }
}

#[derive(Clone, Copy)]
struct Item<T> {
    dist: T,
    label: usize,
}

impl<T: PartialOrd> PartialEq for Item<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: PartialOrd> Eq for Item<T> {}

impl<T: PartialOrd> PartialOrd for Item<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: PartialOrd> Ord for Item<T> {
    // Reversed: BinaryHeap is a max-heap and we want the smallest
    // (distance, label) pair on top.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.label.cmp(&self.label))
    }
}

/// Largest magnitude for which the integer path is used; keeps every
/// potential exactly representable when converted back to `f64`.
const EXACT_LIMIT: f64 = 9.0e15;

/// Scale `s` in {1, 2} such that every cost times `s` is an integer, if any.
fn integer_scale(inst: &LapInstance) -> Option<f64> {
    let n = inst.size().max(1) as f64;
    let bound = inst.max_abs_cost() * 2.0 * (n + 1.0);
    if bound >= EXACT_LIMIT {
        return None;
    }
    [1.0, 2.0].into_iter().find(|&s| inst.data.costs.iter().all(|&c| (c * s) as i64 as f64 == c * s))
}

/// Solves the LAP exactly.
///
/// Integral (or half-integral) costs are solved in `i64` arithmetic and the
/// potentials are scaled back, so the returned dual is exact for them.
/// Returns [`Error::NoPerfectMatching`] when the allowed-label graph has no
/// perfect matching.
pub fn solve_lap(inst: &LapInstance) -> Result<LapSolution> {
    let (matching, alpha, beta) = match integer_scale(inst) {
        Some(s) => {
            let costs: Vec<i64> = inst.data.costs.iter().map(|&c| (c * s) as i64).collect();
            let (m, a, b) = shortest_augmenting_paths(inst, &costs)?;
            let unscale = |v: Vec<i64>| v.into_iter().map(|x| x as f64 / s).collect::<Vec<_>>();
            (m, unscale(a), unscale(b))
        }
        None => {
            let (m, a, b) = shortest_augmenting_paths(inst, &inst.data.costs)?;
            (m, a.into_iter().map(Cost::to_f64).collect(), b.into_iter().map(Cost::to_f64).collect())
        }
    };
    let assignment = Assignment(matching);
    let value = assignment.0.iter().enumerate().map(|(v, &l)| inst.cost(v, l).unwrap()).sum();
    Ok(LapSolution { assignment, dual: LapDual { alpha, beta }, value })
}

#[allow(clippy::type_complexity)]
fn shortest_augmenting_paths<T: Cost>(inst: &LapInstance, costs: &[T]) -> Result<(Vec<usize>, Vec<T>, Vec<T>)> {
    let n = inst.size();
    let data = &inst.data;
    let mut alpha: Vec<T> = (0..n)
        .map(|v| {
            let r = data.range(v);
            costs[r.clone()]
                .iter()
                .copied()
                .fold(costs[r.start], |m, c| if c < m { c } else { m })
        })
        .collect();
    let mut beta = vec![T::ZERO; n];
    let mut row_match = vec![NONE; n];
    let mut col_match = vec![NONE; n];

    // Greedy start on tight edges.
    for v in 0..n {
        for p in data.range(v) {
            let l = data.labels[p];
            if col_match[l] == NONE && costs[p] - alpha[v] == T::ZERO {
                row_match[v] = l;
                col_match[l] = v;
                break;
            }
        }
    }

    let mut dist = vec![T::ZERO; n];
    let mut pred = vec![NONE; n];
    let mut seen = vec![false; n];
    let mut settled = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut settled_list: Vec<usize> = Vec::new();
    let mut heap: BinaryHeap<Item<T>> = BinaryHeap::new();

    for root in 0..n {
        if row_match[root] != NONE {
            continue;
        }
        heap.clear();
        settled_list.clear();
        let relax = |w: usize,
                     base: T,
                     alpha: &[T],
                     beta: &[T],
                     dist: &mut [T],
                     pred: &mut [usize],
                     seen: &mut [bool],
                     settled: &[bool],
                     touched: &mut Vec<usize>,
                     heap: &mut BinaryHeap<Item<T>>| {
            for p in data.range(w) {
                let l = data.labels[p];
                if settled[l] {
                    continue;
                }
                let nd = base + (costs[p] - alpha[w] - beta[l]);
                if !seen[l] || nd < dist[l] {
                    if !seen[l] {
                        seen[l] = true;
                        touched.push(l);
                    }
                    dist[l] = nd;
                    pred[l] = w;
                    heap.push(Item { dist: nd, label: l });
                }
            }
        };
        relax(root, T::ZERO, &alpha, &beta, &mut dist, &mut pred, &mut seen, &settled, &mut touched, &mut heap);

        let mut free = NONE;
        while let Some(Item { dist: d, label: l }) = heap.pop() {
            if settled[l] || d > dist[l] {
                continue;
            }
            settled[l] = true;
            if col_match[l] == NONE {
                free = l;
                break;
            }
            settled_list.push(l);
            let w = col_match[l];
            relax(w, d, &alpha, &beta, &mut dist, &mut pred, &mut seen, &settled, &mut touched, &mut heap);
        }
        if free == NONE {
            return Err(Error::NoPerfectMatching);
        }

        let total = dist[free];
        alpha[root] = alpha[root] + total;
        for &l in &settled_list {
            let delta = total - dist[l];
            let w = col_match[l];
            alpha[w] = alpha[w] + delta;
            beta[l] = beta[l] - delta;
        }

        let mut l = free;
        loop {
            let w = pred[l];
            let prev = row_match[w];
            row_match[w] = l;
            col_match[l] = w;
            if w == root {
                break;
            }
            l = prev;
        }

        for &l in &touched {
            seen[l] = false;
            settled[l] = false;
        }
        touched.clear();
    }
    Ok((row_match, alpha, beta))
}

/// Bipartite graph of the dual constraints that hold with equality (within
/// `eps`), stored as sorted label lists per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualitySubgraph {
    offsets: Vec<usize>,
    labels: Vec<usize>,
}

impl EqualitySubgraph {
    /// Builds a subgraph directly from per-vertex label lists.
    pub fn from_lists(lists: Vec<Vec<usize>>) -> Self {
        let mut offsets = vec![0];
        let mut labels = Vec::new();
        for mut row in lists {
            row.sort_unstable();
            row.dedup();
            labels.extend(row);
            offsets.push(labels.len());
        }
        EqualitySubgraph { offsets, labels }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.labels.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.labels[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn contains(&self, v: usize, l: usize) -> bool {
        self.neighbors(v).binary_search(&l).is_ok()
    }

    /// All edges as `(vertex, label)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_vertices()).flat_map(move |v| self.neighbors(v).iter().map(move |&l| (v, l)))
    }
}

/// Active constraints `|theta_v(l) - alpha_v - beta_l| <= eps` of a feasible dual.
pub fn equality_subgraph(inst: &LapInstance, dual: &LapDual, eps: f64) -> Result<EqualitySubgraph> {
    inst.dual_feasible(dual, eps)?;
    let mut offsets = Vec::with_capacity(inst.size() + 1);
    let mut labels = Vec::new();
    offsets.push(0);
    for v in 0..inst.size() {
        for p in inst.data.range(v) {
            if inst.slack(dual, p) <= eps {
                labels.push(inst.data.labels[p]);
            }
        }
        offsets.push(labels.len());
    }
    Ok(EqualitySubgraph { offsets, labels })
}
