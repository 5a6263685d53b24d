//! Dual state of the IQAP relaxation and the MPLP++ step on its messages.
//!
//! Messages `phi[v -> u](l)` move cost between unary and pairwise terms:
//! the reparametrized unary is `theta_v(l) + sum_u phi[v -> u](l)` and the
//! reparametrized pairwise cost is `theta_uv(k, l) - phi[v -> u](l) -
//! phi[u -> v](k)`. Every assignment keeps its total cost.
//!
//! One edge update ("handshake") adds both endpoint unaries (with the label
//! duals subtracted) into the edge and hands half of each min-marginal back
//! to its endpoint.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::instance::{Assignment, IqapInstance, DUMMY};

/// Messages `phi`, label duals `beta <= 0`, and cached reparametrized unaries.
#[derive(Clone, Debug, PartialEq)]
pub struct IqapDualState {
    /// Slot `2e` holds `phi[u -> v]`, slot `2e + 1` holds `phi[v -> u]`.
    phi_offsets: Vec<usize>,
    phi: Vec<f64>,
    pub(crate) beta: Vec<f64>,
    /// `theta^phi_v(l)` in the flat entry order of the unary instance.
    pub(crate) unary: Vec<f64>,
}

impl IqapDualState {
    /// `phi = 0`, `beta = 0`.
    pub fn new(inst: &IqapInstance) -> Self {
        let mut phi_offsets = Vec::with_capacity(2 * inst.edges.len() + 1);
        phi_offsets.push(0);
        let mut total = 0;
        for b in &inst.edges {
            total += b.num_rows();
            phi_offsets.push(total);
            total += b.num_cols();
            phi_offsets.push(total);
        }
        IqapDualState {
            phi_offsets,
            phi: vec![0.0; total],
            beta: vec![0.0; inst.num_labels()],
            unary: inst.unary.data.costs.clone(),
        }
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Replaces the label duals. Values must be `<= 0` up to rounding.
    pub fn set_beta(&mut self, beta: Vec<f64>) -> Result<()> {
        if beta.len() != self.beta.len() {
            return Err(Error::DimensionMismatch { what: "beta", expected: self.beta.len(), found: beta.len() });
        }
        self.beta = beta;
        Ok(())
    }

    /// Messages of edge `e` sent from its first (`true`) or second endpoint.
    pub fn phi(&self, e: usize, first: bool) -> &[f64] {
        let s = 2 * e + usize::from(!first);
        &self.phi[self.phi_offsets[s]..self.phi_offsets[s + 1]]
    }

    fn phi_mut(&mut self, e: usize, first: bool) -> &mut [f64] {
        let s = 2 * e + usize::from(!first);
        &mut self.phi[self.phi_offsets[s]..self.phi_offsets[s + 1]]
    }

    /// Reparametrized unaries `theta^phi_v` of vertex `v`.
    pub fn reparam_unary(&self, inst: &IqapInstance, v: usize) -> &[f64] {
        &self.unary[inst.unary.data.range(v)]
    }

    /// `theta^phi_v(l) - [l != #] beta_l` at flat position `p`.
    pub(crate) fn shifted_unary(&self, inst: &IqapInstance, p: usize) -> f64 {
        let l = inst.unary.data.labels[p];
        if l == DUMMY {
            self.unary[p]
        } else {
            self.unary[p] - self.beta[l]
        }
    }

    /// Reparametrized pairwise cost of edge `e` at local label positions
    /// `(k, l)`; unstored costs count as zero.
    pub fn reparam_pairwise(&self, inst: &IqapInstance, e: usize, k: usize, l: usize) -> Result<f64> {
        let b = inst.edges.get(e).ok_or(Error::IndexOutOfRange { what: "edge", index: e })?;
        if k >= b.num_rows() {
            return Err(Error::IndexOutOfRange { what: "row label", index: k });
        }
        if l >= b.num_cols() {
            return Err(Error::IndexOutOfRange { what: "column label", index: l });
        }
        Ok(b.cost(k, l) - self.phi(e, false)[l] - self.phi(e, true)[k])
    }

    /// `min_{k,l} theta^phi_uv(k, l)` over all label pairs of edge `e`.
    pub fn pairwise_minimum(&self, inst: &IqapInstance, e: usize) -> f64 {
        let b = &inst.edges[e];
        let a: Vec<f64> = self.phi(e, true).iter().map(|x| -x).collect();
        let c: Vec<f64> = self.phi(e, false).iter().map(|x| -x).collect();
        let order = ascending_order(&c);
        min_plus(&a, &c, &order, |k| b.row(k))
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Total cost of `x` under the reparametrized costs.
    pub fn reparam_objective(&self, inst: &IqapInstance, x: &Assignment) -> Result<f64> {
        inst.check_feasible(x).map_err(Error::Infeasible)?;
        let u = &inst.unary;
        let local = |v: usize| u.position(v, x.0[v]).unwrap() - u.row_offset(v);
        let mut total: f64 = (0..u.num_vertices()).map(|v| self.unary[u.position(v, x.0[v]).unwrap()]).sum();
        for (e, b) in inst.edges.iter().enumerate() {
            total += self.reparam_pairwise(inst, e, local(b.u), local(b.v))?;
        }
        Ok(total)
    }

    /// Largest deviation of the cached unaries from `theta + sum phi`.
    pub fn cache_error(&self, inst: &IqapInstance) -> f64 {
        let mut fresh = inst.unary.data.costs.clone();
        for (e, b) in inst.edges.iter().enumerate() {
            for (side, vtx) in [(true, b.u), (false, b.v)] {
                let off = inst.unary.row_offset(vtx);
                for (i, m) in self.phi(e, side).iter().enumerate() {
                    fresh[off + i] += m;
                }
            }
        }
        fresh.iter().zip(&self.unary).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// MPLP++ handshake on edge `e`. Afterwards each endpoint's shifted unary
    /// equals half of the edge's min-marginal and the reparametrized
    /// pairwise cost is non-negative with minimum zero.
    pub fn mplp_pp_edge_update(&mut self, inst: &IqapInstance, e: usize) {
        let b = &inst.edges[e];
        let ru = inst.unary.data.range(b.u);
        let rv = inst.unary.data.range(b.v);
        let tu: Vec<f64> = ru.clone().map(|p| self.shifted_unary(inst, p)).collect();
        let tv: Vec<f64> = rv.clone().map(|p| self.shifted_unary(inst, p)).collect();
        let a: Vec<f64> = tu.iter().zip(self.phi(e, true)).map(|(t, m)| t - m).collect();
        let c: Vec<f64> = tv.iter().zip(self.phi(e, false)).map(|(t, m)| t - m).collect();

        let row_min = min_plus(&a, &c, &ascending_order(&c), |k| b.row(k));
        let col_min = min_plus(&c, &a, &ascending_order(&a), |l| b.col(l));

        for (side, range, current, marginal) in [(true, ru, tu, row_min), (false, rv, tv, col_min)] {
            let start = range.start;
            let msgs = self.phi_mut(e, side);
            let mut deltas = Vec::with_capacity(msgs.len());
            for (i, m) in msgs.iter_mut().enumerate() {
                let delta = 0.5 * marginal[i] - current[i];
                *m += delta;
                deltas.push(delta);
            }
            for (i, d) in deltas.into_iter().enumerate() {
                self.unary[start + i] += d;
            }
        }
    }

    /// One MPLP++ sweep over all edges in canonical order, optionally
    /// followed by the reverse sweep.
    pub fn mplp_pp_pass(&mut self, inst: &IqapInstance, backward: bool) {
        for e in 0..inst.edges.len() {
            self.mplp_pp_edge_update(inst, e);
        }
        if backward {
            for e in (0..inst.edges.len()).rev() {
                self.mplp_pp_edge_update(inst, e);
            }
        }
    }
}

/// Indices of `values` sorted ascending (ties by index).
fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(Ordering::Equal).then(i.cmp(&j)));
    order
}

/// `out[i] = a[i] + min_j (b[j] + cost(i, j))` where `stored(i)` lists the
/// stored costs of line `i` as triples whose second field is `j`, sorted by
/// `j`, and every other cost is zero. `order` sorts `b` ascending.
fn min_plus<'a, F>(a: &[f64], b: &[f64], order: &[usize], stored: F) -> Vec<f64>
where
    F: Fn(usize) -> &'a [(usize, usize, f64)],
{
    a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            let line = stored(i);
            let mut best = f64::INFINITY;
            for &(_, j, c) in line {
                best = best.min(b[j] + c);
            }
            if line.len() < b.len() {
                for &j in order {
                    if line.binary_search_by(|t| t.1.cmp(&j)).is_err() {
                        best = best.min(b[j]);
                        break;
                    }
                }
            }
            ai + best
        })
        .collect()
}
