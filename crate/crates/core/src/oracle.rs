//! Exhaustive reference routines. They share nothing with the solvers except
//! the instance types and are only meant for small instances.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{
    Assignment, IlapDual, IlapInstance, IqapInstance, LapDual, LapInstance, PrimalVector, Tolerance, DUMMY,
};

/// Largest search space the oracle agrees to enumerate.
pub const GUARD: f64 = 1e6;

/// Anything the oracle can enumerate: one label per vertex, real labels used
/// at most once, the dummy label unrestricted.
pub trait Enumerable {
    fn domains(&self) -> Vec<Vec<usize>>;
    fn label_count(&self) -> usize;
    /// Upper estimate of the number of feasible assignments.
    fn search_space(&self) -> f64;
    fn value(&self, x: &Assignment) -> Result<f64>;
    fn tolerance(&self, tol: Tolerance) -> f64;
}

fn product(sizes: impl Iterator<Item = usize>) -> f64 {
    sizes.fold(1.0, |p, s| p * s as f64)
}

impl Enumerable for LapInstance {
    fn domains(&self) -> Vec<Vec<usize>> {
        (0..self.size()).map(|v| self.labels(v).to_vec()).collect()
    }
    fn label_count(&self) -> usize {
        self.size()
    }
    fn search_space(&self) -> f64 {
        let n = self.size();
        let factorial = product(1..=n);
        product((0..n).map(|v| self.labels(v).len())).min(factorial)
    }
    fn value(&self, x: &Assignment) -> Result<f64> {
        self.objective(x)
    }
    fn tolerance(&self, tol: Tolerance) -> f64 {
        self.eps(tol)
    }
}

impl Enumerable for IlapInstance {
    fn domains(&self) -> Vec<Vec<usize>> {
        (0..self.num_vertices()).map(|v| self.labels(v).to_vec()).collect()
    }
    fn label_count(&self) -> usize {
        self.num_labels()
    }
    fn search_space(&self) -> f64 {
        product((0..self.num_vertices()).map(|v| self.labels(v).len()))
    }
    fn value(&self, x: &Assignment) -> Result<f64> {
        self.objective(x)
    }
    fn tolerance(&self, tol: Tolerance) -> f64 {
        self.eps(tol)
    }
}

impl Enumerable for IqapInstance {
    fn domains(&self) -> Vec<Vec<usize>> {
        self.unary().domains()
    }
    fn label_count(&self) -> usize {
        self.num_labels()
    }
    fn search_space(&self) -> f64 {
        self.unary().search_space()
    }
    fn value(&self, x: &Assignment) -> Result<f64> {
        self.objective(x)
    }
    fn tolerance(&self, tol: Tolerance) -> f64 {
        self.eps(tol)
    }
}

/// Optimal value and every optimal assignment, in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    pub value: f64,
    pub assignments: Vec<Assignment>,
}

pub fn check_guard<I: Enumerable>(inst: &I) -> Result<()> {
    let estimate = inst.search_space();
    if estimate > GUARD {
        return Err(Error::GuardExceeded { estimate, limit: GUARD });
    }
    Ok(())
}

/// Calls `visit` on every feasible assignment.
pub fn for_each_assignment<I: Enumerable>(inst: &I, mut visit: impl FnMut(&Assignment)) -> Result<()> {
    check_guard(inst)?;
    let domains = inst.domains();
    let mut used = vec![false; inst.label_count()];
    let mut x = Assignment(vec![DUMMY; domains.len()]);
    descend(&domains, 0, &mut used, &mut x, &mut visit);
    Ok(())
}

fn descend(
    domains: &[Vec<usize>],
    v: usize,
    used: &mut [bool],
    x: &mut Assignment,
    visit: &mut impl FnMut(&Assignment),
) {
    if v == domains.len() {
        visit(x);
        return;
    }
    for &l in &domains[v] {
        if l != DUMMY {
            if used[l] {
                continue;
            }
            used[l] = true;
        }
        x.0[v] = l;
        descend(domains, v + 1, used, x, visit);
        if l != DUMMY {
            used[l] = false;
        }
    }
}

/// Optimal value and all assignments within `eps` of it.
pub fn brute_force_optimum<I: Enumerable>(inst: &I, tol: Tolerance) -> Result<Optimum> {
    let eps = inst.tolerance(tol);
    let mut scored = Vec::new();
    let mut failure = None;
    for_each_assignment(inst, |x| match inst.value(x) {
        Ok(v) => scored.push((v, x.clone())),
        Err(e) => failure = Some(e),
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let best = scored.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    if best == f64::INFINITY {
        return Err(Error::NoPerfectMatching);
    }
    let assignments = scored.into_iter().filter(|s| s.0 <= best + eps).map(|s| s.1).collect();
    Ok(Optimum { value: best, assignments })
}

/// Pairs `(v, l)` with `x_v = l` in some optimal assignment, sorted.
pub fn minimally_assignable_pairs<I: Enumerable>(inst: &I, tol: Tolerance) -> Result<Vec<(usize, usize)>> {
    let opt = brute_force_optimum(inst, tol)?;
    Ok(pairs_of(&opt).into_iter().collect())
}

fn pairs_of(opt: &Optimum) -> BTreeSet<(usize, usize)> {
    opt.assignments.iter().flat_map(|x| x.0.iter().enumerate().map(|(v, &l)| (v, l))).collect()
}

/// Labels left unused by at least one optimal assignment.
fn sometimes_free(opt: &Optimum, num_labels: usize) -> Vec<bool> {
    let mut free = vec![false; num_labels];
    for x in &opt.assignments {
        let mut hit = vec![false; num_labels];
        for &l in &x.0 {
            if l != DUMMY {
                hit[l] = true;
            }
        }
        for (f, h) in free.iter_mut().zip(hit) {
            *f |= !h;
        }
    }
    free
}

/// Whether a feasible LAP dual lies in the relative interior of the optimal
/// dual face: its active pairs are exactly the minimally assignable ones.
pub fn check_dual_relative_interior_lap(inst: &LapInstance, dual: &LapDual, tol: Tolerance) -> Result<bool> {
    let eps = inst.eps(tol);
    inst.dual_feasible(dual, eps)?;
    let ma = pairs_of(&brute_force_optimum(inst, tol)?);
    let mut active = BTreeSet::new();
    for v in 0..inst.size() {
        for (&l, &c) in inst.labels(v).iter().zip(inst.costs(v)) {
            if c - dual.alpha[v] - dual.beta[l] <= eps {
                active.insert((v, l));
            }
        }
    }
    Ok(active == ma)
}

/// ILAP analogue: active pairs are the minimally assignable ones and
/// `beta_l` is zero exactly for labels some optimum leaves unused.
pub fn check_dual_relative_interior_ilap(inst: &IlapInstance, dual: &IlapDual, tol: Tolerance) -> Result<bool> {
    let eps = inst.eps(tol);
    inst.dual_feasible(dual, eps)?;
    let opt = brute_force_optimum(inst, tol)?;
    let ma = pairs_of(&opt);
    let mut active = BTreeSet::new();
    for v in 0..inst.num_vertices() {
        for (&l, &c) in inst.labels(v).iter().zip(inst.costs(v)) {
            let b = if l == DUMMY { 0.0 } else { dual.beta[l] };
            if c - dual.alpha[v] - b <= eps {
                active.insert((v, l));
            }
        }
    }
    let free = sometimes_free(&opt, inst.num_labels());
    let beta_ok = dual.beta.iter().zip(&free).all(|(&b, &f)| (b.abs() <= eps) == f);
    Ok(active == ma && beta_ok)
}

fn support(values: &[f64], eps: f64, pairs: impl Iterator<Item = (usize, usize)>) -> BTreeSet<(usize, usize)> {
    pairs.zip(values).filter(|(_, &m)| m > eps).map(|(p, _)| p).collect()
}

/// Whether a feasible LAP primal point is optimal with support equal to the
/// minimally assignable pairs.
pub fn check_primal_relative_interior_lap(inst: &LapInstance, mu: &PrimalVector, tol: Tolerance) -> Result<bool> {
    let eps = inst.eps(tol);
    inst.primal_feasible(mu, eps)?;
    let opt = brute_force_optimum(inst, tol)?;
    let slack = eps * (1 + inst.size()) as f64;
    if (inst.primal_objective(mu)? - opt.value).abs() > slack {
        return Ok(false);
    }
    let pairs = (0..inst.size()).flat_map(|v| inst.labels(v).iter().map(move |&l| (v, l)));
    Ok(support(&mu.values, eps, pairs) == pairs_of(&opt))
}

/// ILAP analogue; additionally a label column must have slack exactly when
/// some optimum leaves the label unused.
pub fn check_primal_relative_interior_ilap(inst: &IlapInstance, mu: &PrimalVector, tol: Tolerance) -> Result<bool> {
    let eps = inst.eps(tol);
    inst.primal_feasible(mu, eps)?;
    let opt = brute_force_optimum(inst, tol)?;
    let slack = eps * (1 + inst.num_vertices()) as f64;
    if (inst.primal_objective(mu)? - opt.value).abs() > slack {
        return Ok(false);
    }
    let pairs = (0..inst.num_vertices()).flat_map(|v| inst.labels(v).iter().map(move |&l| (v, l)));
    if support(&mu.values, eps, pairs) != pairs_of(&opt) {
        return Ok(false);
    }
    let mut column = vec![0.0; inst.num_labels()];
    for v in 0..inst.num_vertices() {
        let off = inst.row_offset(v);
        for (i, &l) in inst.labels(v).iter().enumerate() {
            if l != DUMMY {
                column[l] += mu.values[off + i];
            }
        }
    }
    let free = sometimes_free(&opt, inst.num_labels());
    Ok(column.iter().zip(&free).all(|(&c, &f)| (c < 1.0 - eps) == f))
}
