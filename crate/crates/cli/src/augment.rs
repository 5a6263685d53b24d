//! Discourages two neighbours from taking the same label.

use std::collections::BTreeMap;

use qapbound_core::{IqapInstance, DUMMY};

/// Cost placed on a shared label of an edge's endpoints.
pub const AUGMENT_COST: f64 = 1e7;

/// Replaces `theta_uv(l, l) = 0` by [`AUGMENT_COST`] on every edge and every
/// real label allowed at both endpoints. Stored nonzero entries are kept.
/// No feasible assignment can use such a pair, so optima are unchanged.
pub fn augment_instance(inst: &IqapInstance) -> IqapInstance {
    let unary = inst.unary();
    let mut edges = inst.edge_costs();
    for e in &mut edges {
        let mut entries: BTreeMap<(usize, usize), f64> = e.entries.iter().map(|&(k, l, c)| ((k, l), c)).collect();
        for &l in unary.labels(e.u) {
            if l != DUMMY && unary.labels(e.v).binary_search(&l).is_ok() {
                let c = entries.entry((l, l)).or_insert(0.0);
                if *c == 0.0 {
                    *c = AUGMENT_COST;
                }
            }
        }
        e.entries = entries.into_iter().map(|((k, l), c)| (k, l, c)).collect();
    }
    IqapInstance::new(unary.clone(), edges).expect("augmenting keeps the instance valid")
}
