#![allow(dead_code)]

use qapbound_core::instance::EdgeCosts;
use qapbound_core::{IlapInstance, IqapInstance, LapInstance};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random LAP with integer costs in `0..=9`. A hidden permutation keeps it
/// feasible; every other pair is allowed with a random density.
pub fn lap<R: Rng>(rng: &mut R, n: usize) -> LapInstance {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let density = rng.gen_range(0.2..=1.0);
    let mut rows = vec![Vec::new(); n];
    for (v, row) in rows.iter_mut().enumerate() {
        for l in 0..n {
            if l == perm[v] || rng.gen_bool(density) {
                row.push((l, rng.gen_range(0..=9) as f64));
            }
        }
    }
    LapInstance::new(rows).unwrap()
}

/// Random ILAP with up to `max_v` vertices and `max_l` real labels, integer
/// costs in `-5..=5`.
pub fn ilap<R: Rng>(rng: &mut R, max_v: usize, max_l: usize) -> IlapInstance {
    let nv = rng.gen_range(1..=max_v);
    let nl = rng.gen_range(0..=max_l);
    let density = rng.gen_range(0.2..=1.0);
    let mut rows = vec![Vec::new(); nv];
    for row in rows.iter_mut() {
        for l in 0..nl {
            if rng.gen_bool(density) {
                row.push((l, rng.gen_range(-5..=5) as f64));
            }
        }
    }
    let dummy = (0..nv).map(|_| rng.gen_range(-5..=5) as f64).collect();
    IlapInstance::new(nl, rows, dummy).unwrap()
}

/// Random IQAP: `n <= max_v` vertices, at most 4 real labels per vertex, at
/// most 6 edges, integer costs in `-5..=5`.
pub fn iqap<R: Rng>(rng: &mut R, max_v: usize) -> IqapInstance {
    let n = rng.gen_range(1..=max_v);
    let nl = rng.gen_range(1..=5);
    let rows: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|_| {
            let mut labels: Vec<usize> = (0..nl).collect();
            labels.shuffle(rng);
            labels.truncate(rng.gen_range(0..=nl.min(4)));
            labels.sort_unstable();
            labels.into_iter().map(|l| (l, rng.gen_range(-5..=5) as f64)).collect()
        })
        .collect();
    let dummy = (0..n).map(|_| rng.gen_range(-5..=5) as f64).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(rng.gen_range(0..=6));
    let domain = |v: usize| -> Vec<usize> {
        let mut d: Vec<usize> = rows[v].iter().map(|e| e.0).collect();
        d.push(qapbound_core::DUMMY);
        d
    };
    let edges = pairs
        .into_iter()
        .map(|(u, v)| {
            let density = rng.gen_range(0.0..=1.0);
            let mut entries = Vec::new();
            for &k in &domain(u) {
                for &l in &domain(v) {
                    if rng.gen_bool(density) {
                        entries.push((k, l, rng.gen_range(-5..=5) as f64));
                    }
                }
            }
            EdgeCosts { u, v, entries }
        })
        .collect();
    IqapInstance::new(IlapInstance::new(nl, rows, dummy).unwrap(), edges).unwrap()
}
