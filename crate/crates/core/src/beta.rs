//! Updates of the label duals `beta` with the messages held fixed.
//!
//! With `alpha` eliminated the objective in `beta` reads
//! `sum_v min_l (theta^phi_v(l) - [l != #] beta_l) + sum_l beta_l`,
//! subject to `beta <= 0`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{IqapInstance, Tolerance, DUMMY};
use crate::reduction::{solve_ilap, IlapMode};
use crate::wcsp::IqapDualState;

impl IqapDualState {
    /// Smallest and second smallest of `theta^phi_v(l) - Phi_v(l)` over the
    /// vertices allowing `l`, where `Phi_v(l)` is the best shifted unary of
    /// `v` among its other labels. Missing values count as zero.
    pub fn beta_breakpoints(&self, inst: &IqapInstance, l: usize) -> Result<(f64, f64)> {
        if l == DUMMY {
            return Err(Error::Precondition("the dummy label has no dual"));
        }
        if l >= inst.num_labels() {
            return Err(Error::IndexOutOfRange { what: "label", index: l });
        }
        let data = &inst.unary.data;
        let mut b1 = f64::INFINITY;
        let mut b2 = f64::INFINITY;
        for &p in data.users(l) {
            let v = data.row_of[p];
            let phi_v = data
                .range(v)
                .filter(|&q| q != p)
                .map(|q| self.shifted_unary(inst, q))
                .fold(f64::INFINITY, f64::min);
            let b = self.unary[p] - phi_v;
            if b < b1 {
                b2 = b1;
                b1 = b;
            } else if b < b2 {
                b2 = b;
            }
        }
        if b1 == f64::INFINITY {
            b1 = 0.0;
        }
        if b2 == f64::INFINITY {
            b2 = 0.0;
        }
        Ok((b1, b2))
    }

    /// Sets `beta_l` to the midpoint of its optimal interval.
    pub fn beta_coordinate_update(&mut self, inst: &IqapInstance, l: usize) -> Result<()> {
        let (b1, b2) = self.beta_breakpoints(inst, l)?;
        self.beta[l] = (b1.min(0.0) + b2.min(0.0)) / 2.0;
        Ok(())
    }

    /// One coordinate sweep over all real labels, ascending.
    pub fn beta_bca_pass(&mut self, inst: &IqapInstance) {
        for l in 0..inst.num_labels() {
            self.beta_coordinate_update(inst, l).expect("label in range");
        }
    }

    /// Replaces `beta` by an optimal dual of the ILAP with unaries
    /// `theta^phi`, optionally shifted into the relative interior.
    pub fn beta_exact_update(&mut self, inst: &IqapInstance, relative_interior: bool, tol: Tolerance) -> Result<()> {
        let sub = inst.unary.with_costs(self.unary.clone())?;
        let mode = if relative_interior { IlapMode::RelativeInterior } else { IlapMode::Optimal };
        let sol = solve_ilap(&sub, mode, tol)?;
        self.beta = sol.dual.beta.iter().map(|&b| b.min(0.0)).collect::<Vec<_>>();
        Ok(())
    }

    /// Objective in `beta` for the current messages.
    pub fn beta_objective(&self, inst: &IqapInstance) -> f64 {
        let data = &inst.unary.data;
        let rows: f64 = (0..data.num_rows())
            .map(|v| data.range(v).map(|p| self.shifted_unary(inst, p)).fold(f64::INFINITY, f64::min))
            .sum();
        rows + self.beta.iter().sum::<f64>()
    }
}
