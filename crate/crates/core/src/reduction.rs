//! Incomplete LAP solved through a symmetric complete LAP.
//!
//! The reduced instance has one row and one column for every vertex and every
//! real label. Row `v` may take its real labels at half cost or itself at the
//! dummy cost; row `l` may take the vertices allowing it at half cost or
//! itself at zero cost. Index layout on both sides: `0..|V|` are vertices,
//! `|V|..|V| + |L|` are real labels.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Assignment, IlapDual, IlapInstance, LapDual, LapInstance, PrimalVector, Tolerance, DUMMY};
use crate::lap::solve_lap;
use crate::relative_interior::shift_to_relative_interior;

/// The complete LAP built from an ILAP, with its index layout.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedLap {
    pub lap: LapInstance,
    num_vertices: usize,
    num_labels: usize,
}

impl ReducedLap {
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    /// Reduced index of ILAP vertex `v`.
    pub fn vertex_index(&self, v: usize) -> usize {
        v
    }

    /// Reduced index of real ILAP label `l`.
    pub fn label_index(&self, l: usize) -> usize {
        self.num_vertices + l
    }

    /// Reduced index back to a vertex (`Ok`) or a real label (`Err`).
    pub fn origin(&self, i: usize) -> core::result::Result<usize, usize> {
        if i < self.num_vertices {
            Ok(i)
        } else {
            Err(i - self.num_vertices)
        }
    }

    fn check_source(&self, inst: &IlapInstance) -> Result<()> {
        if inst.num_vertices() != self.num_vertices || inst.num_labels() != self.num_labels {
            return Err(Error::Precondition("ILAP instance does not match the reduced LAP"));
        }
        Ok(())
    }

    /// Lifts a feasible ILAP assignment to an involutive LAP assignment of
    /// equal cost.
    pub fn lift_assignment(&self, inst: &IlapInstance, x: &Assignment) -> Result<Assignment> {
        self.check_source(inst)?;
        inst.check_feasible(x).map_err(Error::Infeasible)?;
        let nv = self.num_vertices;
        let mut lifted: Vec<usize> = (0..nv + self.num_labels).collect();
        for (v, &l) in x.0.iter().enumerate() {
            if l != DUMMY {
                lifted[v] = nv + l;
                lifted[nv + l] = v;
            }
        }
        Ok(Assignment(lifted))
    }

    /// Splits a feasible LAP assignment into the ILAP assignment read from
    /// the vertex rows and the one read from the vertex columns. Twice the
    /// LAP cost equals the sum of their ILAP costs.
    pub fn decompose_assignment(&self, inst: &IlapInstance, x: &Assignment) -> Result<(Assignment, Assignment)> {
        self.check_source(inst)?;
        self.lap.check_feasible(x).map_err(Error::Infeasible)?;
        let nv = self.num_vertices;
        let mut inverse = vec![0usize; x.len()];
        for (i, &j) in x.0.iter().enumerate() {
            inverse[j] = i;
        }
        let read = |i: usize| if i >= nv { i - nv } else { DUMMY };
        let first = (0..nv).map(|v| read(x.0[v])).collect();
        let second = (0..nv).map(|v| read(inverse[v])).collect();
        Ok((Assignment(first), Assignment(second)))
    }

    /// Maps a feasible dual of the reduced LAP to a feasible ILAP dual with
    /// the same objective: `alpha_v = a_v + b_v`, `beta_l = a_l + b_l`.
    /// Optimality and relative-interior membership carry over.
    pub fn map_dual(&self, inst: &IlapInstance, dual: &LapDual, eps: f64) -> Result<IlapDual> {
        self.check_source(inst)?;
        self.lap.dual_feasible(dual, eps)?;
        let nv = self.num_vertices;
        let alpha = (0..nv).map(|v| dual.alpha[v] + dual.beta[v]).collect();
        let beta = (0..self.num_labels).map(|l| dual.alpha[nv + l] + dual.beta[nv + l]).collect();
        Ok(IlapDual { alpha, beta })
    }

    /// Maps a feasible primal vector of the reduced LAP to one of the ILAP:
    /// `mu_v(l) = (mu'_v(l) + mu'_l(v)) / 2`, `mu_v(#) = mu'_v(v)`.
    pub fn map_primal(&self, inst: &IlapInstance, mu: &PrimalVector, eps: f64) -> Result<PrimalVector> {
        self.check_source(inst)?;
        self.lap.primal_feasible(mu, eps)?;
        let nv = self.num_vertices;
        let at = |row: usize, col: usize| mu.values[self.lap.position(row, col).expect("reduced entry")];
        let mut values = Vec::with_capacity(inst.num_entries());
        for v in 0..nv {
            for &l in inst.labels(v) {
                values.push(if l == DUMMY { at(v, v) } else { (at(v, nv + l) + at(nv + l, v)) / 2.0 });
            }
        }
        Ok(PrimalVector { values })
    }
}

/// Builds the reduced LAP. Its size is linear in the number of allowed pairs.
pub fn reduce_ilap_to_lap(inst: &IlapInstance) -> ReducedLap {
    let nv = inst.num_vertices();
    let nl = inst.num_labels();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(nv + nl);
    for v in 0..nv {
        let row = inst
            .labels(v)
            .iter()
            .zip(inst.costs(v))
            .map(|(&l, &c)| if l == DUMMY { (v, c) } else { (nv + l, c / 2.0) })
            .collect();
        rows.push(row);
    }
    for l in 0..nl {
        let mut row: Vec<(usize, f64)> = inst.data.users(l).iter().map(|&p| (inst.data.row_of[p], inst.data.costs[p] / 2.0)).collect();
        row.push((nv + l, 0.0));
        rows.push(row);
    }
    let lap = LapInstance::new(rows).expect("reduction of a valid ILAP is a valid LAP");
    ReducedLap { lap, num_vertices: nv, num_labels: nl }
}

/// Which optimal dual [`solve_ilap`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IlapMode {
    /// Whatever optimal dual the LAP solver produces.
    Optimal,
    /// A dual in the relative interior of the dual optimal face.
    RelativeInterior,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IlapSolution {
    pub assignment: Assignment,
    pub dual: IlapDual,
    pub value: f64,
}

/// Solves an ILAP exactly via the reduced LAP.
pub fn solve_ilap(inst: &IlapInstance, mode: IlapMode, tol: Tolerance) -> Result<IlapSolution> {
    let red = reduce_ilap_to_lap(inst);
    let sol = solve_lap(&red.lap)?;
    let eps = red.lap.eps(tol);
    let lap_dual = match mode {
        IlapMode::Optimal => sol.dual,
        IlapMode::RelativeInterior => shift_to_relative_interior(&red.lap, &sol.dual, &sol.assignment, eps)?,
    };
    let dual = red.map_dual(inst, &lap_dual, eps)?;
    let (first, second) = red.decompose_assignment(inst, &sol.assignment)?;
    let v1 = inst.objective(&first)?;
    let v2 = inst.objective(&second)?;
    let (assignment, value) = if v2 < v1 { (second, v2) } else { (first, v1) };
    Ok(IlapSolution { assignment, dual, value })
}
