//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use qapbound::augment::augment_instance;
use qapbound::batch::run_manifest_file;
use qapbound::qaplib::{parse_qaplib, Shift};
use qapbound_core::oracle::{
    brute_force_optimum, check_dual_relative_interior_ilap, check_guard, check_primal_relative_interior_ilap,
    minimally_assignable_pairs,
};
use qapbound_core::reduction::reduce_ilap_to_lap;
use qapbound_core::relative_interior::shift_to_relative_interior_traced;
use qapbound_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn scale(inst: &IqapInstance) -> f64 {
    1.0 + inst.max_abs_cost()
}

fn example1() -> Outcome {
    let inst = LapInstance::from_dense(&[
        vec![3.0, 3.0, 3.0, 7.0, 6.0],
        vec![3.0, 3.0, 9.0, 9.0, 8.0],
        vec![9.0, 10.0, 4.0, 7.0, 11.0],
        vec![4.0, 4.0, 4.0, 8.0, 11.0],
        vec![8.0, 9.0, 4.0, 7.0, 13.0],
    ])
    .unwrap();
    let dual = LapDual { alpha: vec![2.0, 2.0, 3.0, 3.0, 3.0], beta: vec![1.0, 1.0, 1.0, 4.0, 4.0] };
    let x = Assignment(vec![4, 0, 3, 1, 2]);
    let start = Instant::now();
    let (out, steps) = shift_to_relative_interior_traced(&inst, &dual, &x, inst.eps(Tolerance::default()))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.alpha == [2.0, 3.0, 5.0, 4.0, 5.0], || format!("alpha {:?}", out.alpha))?;
    ensure(out.beta == [0.0, 0.0, -1.0, 2.0, 4.0], || format!("beta {:?}", out.beta))?;
    let deltas: Vec<f64> = steps.iter().map(|s| s.delta).collect();
    ensure(deltas == [4.0, 2.0], || format!("deltas {deltas:?}"))?;
    let order: Vec<Vec<usize>> = steps.iter().map(|s| s.vertices.clone()).collect();
    ensure(order == [vec![2, 4], vec![1, 3]], || format!("component order {order:?}"))?;
    let before = inst.dual_objective(&dual).unwrap();
    let after = inst.dual_objective(&out).unwrap();
    ensure(before == 24.0 && after == 24.0, || format!("objective {before} -> {after}"))?;
    ensure(elapsed.as_secs_f64() < 1e-3, || format!("took {elapsed:?}"))?;
    Ok(format!("deltas 4, 2; objective 24; {elapsed:?}"))
}

fn lap_relative_interior() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let start = Instant::now();
    for case in 0..1000 {
        let n = rng.gen_range(2..=7);
        let inst = common::lap(&mut rng, n);
        let eps = inst.eps(tol);
        let sol = solve_lap(&inst).map_err(|e| e.to_string())?;
        let shifted = shift_to_relative_interior(&inst, &sol.dual, &sol.assignment, eps).map_err(|e| e.to_string())?;
        let active: Vec<(usize, usize)> = equality_subgraph(&inst, &shifted, eps).unwrap().edges().collect();
        let ma = minimally_assignable_pairs(&inst, tol).unwrap();
        ensure(active == ma, || format!("case {case}: active set differs from the oracle"))?;
        let (a, b) = (inst.dual_objective(&sol.dual).unwrap(), inst.dual_objective(&shifted).unwrap());
        ensure(a == b, || format!("case {case}: objective {a} -> {b}"))?;
        let again = shift_to_relative_interior(&inst, &shifted, &sol.assignment, eps).unwrap();
        let active2: Vec<(usize, usize)> = equality_subgraph(&inst, &again, eps).unwrap().edges().collect();
        ensure(active2 == active, || format!("case {case}: second shift changed the active set"))?;
    }
    let t = start.elapsed();
    ensure(t.as_secs() < 60, || format!("took {t:?}"))?;
    Ok(format!("1000 instances in {t:.2?}"))
}

fn random_matching<R: Rng>(rng: &mut R, lap: &LapInstance) -> Assignment {
    let rows = (0..lap.size()).map(|v| lap.labels(v).iter().map(|&l| (l, rng.gen_range(0..1000) as f64)).collect());
    let shuffled = LapInstance::new(rows.collect()).unwrap();
    solve_lap(&shuffled).unwrap().assignment
}

fn reduction() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    for case in 0..1000 {
        let inst = common::ilap(&mut rng, 6, 6);
        let red = reduce_ilap_to_lap(&inst);
        let opt = brute_force_optimum(&inst, tol).map_err(|e| e.to_string())?;
        let lap = solve_lap(&red.lap).map_err(|e| e.to_string())?;
        ensure(lap.value == opt.value, || format!("case {case}: LAP {} ILAP {}", lap.value, opt.value))?;
        for _ in 0..100 {
            let x = random_matching(&mut rng, &red.lap);
            let (x1, x2) = red.decompose_assignment(&inst, &x).unwrap();
            let lhs = 2.0 * red.lap.objective(&x).unwrap();
            let rhs = inst.objective(&x1).unwrap() + inst.objective(&x2).unwrap();
            ensure(lhs == rhs, || format!("case {case}: 2*{} != {rhs}", lhs / 2.0))?;
        }
        let eps = red.lap.eps(tol);
        let ri = shift_to_relative_interior(&red.lap, &lap.dual, &lap.assignment, eps).unwrap();
        let dual = red.map_dual(&inst, &ri, eps).unwrap();
        ensure(check_dual_relative_interior_ilap(&inst, &dual, tol).unwrap(), || {
            format!("case {case}: mapped dual not in the relative interior")
        })?;
    }
    Ok("1000 instances, 100 matchings each".into())
}

fn theorem5_primal() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut done = 0;
    while done < 200 {
        let inst = common::ilap(&mut rng, 4, 4);
        let red = reduce_ilap_to_lap(&inst);
        if check_guard(&red.lap).is_err() {
            continue;
        }
        let opt = brute_force_optimum(&red.lap, tol).unwrap();
        let k = opt.assignments.len() as f64;
        let mut mix = vec![0.0; red.lap.num_entries()];
        for y in &opt.assignments {
            for (m, i) in mix.iter_mut().zip(red.lap.indicator(y).unwrap().values) {
                *m += i / k;
            }
        }
        let eps = red.lap.eps(tol);
        let mut support = BTreeSet::new();
        for i in 0..red.lap.size() {
            let off = red.lap.row_offset(i);
            for (j, &l) in red.lap.labels(i).iter().enumerate() {
                if mix[off + j] > eps {
                    support.insert((i, l));
                }
            }
        }
        let nv = red.num_vertices();
        for &(i, l) in &support {
            let cross = (i < nv) != (l < nv);
            ensure(!cross || support.contains(&(l, i)), || format!("case {done}: support not symmetric at ({i}, {l})"))?;
        }
        let mu = red.map_primal(&inst, &PrimalVector { values: mix }, eps).unwrap();
        ensure(check_primal_relative_interior_ilap(&inst, &mu, tol).unwrap(), || {
            format!("case {done}: mapped mixture not in the relative interior")
        })?;
        done += 1;
    }
    Ok("200 instances".into())
}

fn iqap_corpus() -> Vec<IqapInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD00D);
    (0..500).map(|_| common::iqap(&mut rng, 5)).collect()
}

fn soundness(corpus: &[IqapInstance]) -> Outcome {
    let start = Instant::now();
    for (case, inst) in corpus.iter().enumerate() {
        let slack = 1e-8 * scale(inst);
        let opt = brute_force_optimum(inst, Tolerance::default()).map_err(|e| e.to_string())?.value;
        for m in Method::ALL {
            let r = run(inst, &SolverConfig::new(m, 20)).map_err(|e| e.to_string())?;
            let mut prev = r.initial_bound;
            for (it, &b) in r.trajectory.iter().enumerate() {
                ensure(b >= prev - slack, || format!("case {case} {m}: iteration {it} fell {prev} -> {b}"))?;
                prev = b;
            }
            ensure(r.final_bound <= opt + slack, || format!("case {case} {m}: bound {} > optimum {opt}", r.final_bound))?;
        }
    }
    let t = start.elapsed();
    ensure(t.as_secs() < 300, || format!("took {t:?}"))?;
    Ok(format!("500 instances x 3 methods x 20 iterations in {t:.2?}"))
}

fn dominance(corpus: &[IqapInstance]) -> Outcome {
    let tol = Tolerance::default();
    let mut trials = 0;
    for (case, inst) in corpus.iter().enumerate() {
        let slack = 1e-8 * scale(inst);
        let mut state = IqapDualState::new(inst);
        for it in 0..5 {
            state.mplp_pp_pass(inst, false);
            let mut bca = state.clone();
            bca.beta_bca_pass(inst);
            let mut exact = state.clone();
            exact.beta_exact_update(inst, it % 2 == 1, tol).map_err(|e| e.to_string())?;
            let (b, e) = (dual_bound(inst, &bca, tol).unwrap(), dual_bound(inst, &exact, tol).unwrap());
            ensure(e >= b - slack, || format!("case {case} iteration {it}: exact {e} < bca {b}"))?;
            trials += 1;
            state = if it % 2 == 0 { bca } else { exact };
        }
    }
    Ok(format!("{trials} paired trials"))
}

fn augmentation(corpus: &[IqapInstance]) -> Outcome {
    let tol = Tolerance::default();
    let mut count = 0;
    for (case, inst) in corpus.iter().enumerate() {
        let a = brute_force_optimum(inst, tol).unwrap().value;
        let b = brute_force_optimum(&augment_instance(inst), tol).unwrap().value;
        ensure(a == b, || format!("case {case}: {a} -> {b}"))?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xE11);
    for case in 0..100 {
        let n = rng.gen_range(1..=4);
        let mut text = format!("{n}\n");
        for _ in 0..2 * n * n {
            text.push_str(&format!("{} ", rng.gen_range(0..=6)));
        }
        let inst = parse_qaplib(&text).unwrap().to_iqap(Shift::Auto).instance;
        let a = brute_force_optimum(&inst, tol).unwrap().value;
        let b = brute_force_optimum(&augment_instance(&inst), tol).unwrap().value;
        ensure(a == b, || format!("qaplib case {case}: {a} -> {b}"))?;
        count += 1;
    }
    Ok(format!("{count} instances"))
}

fn batch() -> Outcome {
    let manifest = fixtures().join("synthetic").join("manifest.toml");
    let start = Instant::now();
    let table = run_manifest_file(&manifest).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let instances: BTreeSet<(&str, &str)> = table.rows.iter().map(|r| (r.group.as_str(), r.instance.as_str())).collect();
    ensure(instances.len() == 5, || format!("{} instances", instances.len()))?;
    ensure(table.rows.len() == 15, || format!("{} rows", table.rows.len()))?;
    for &(g, i) in &instances {
        let mine: Vec<_> = table.rows.iter().filter(|r| r.group == g && r.instance == i).collect();
        let max = mine.iter().map(|r| r.final_bound).fold(f64::NEG_INFINITY, f64::max);
        for r in mine {
            let expect = if max <= 0.0 { r.final_bound >= (1.0 + 1e-10) * max } else { r.final_bound >= (1.0 - 1e-10) * max };
            ensure(r.best == expect, || format!("{i} {}: best mark {}", r.method, r.best))?;
            ensure(r.wall_time <= 2.0 + 1.0, || format!("{i} {}: ran {}s past its limit", r.method, r.wall_time))?;
        }
    }
    ensure(table.groups.len() == 6, || format!("{} group summaries", table.groups.len()))?;
    ensure(t.as_secs() < 60, || format!("took {t:?}"))?;
    Ok(format!("5 instances, 2 groups in {t:.2?}"))
}

fn strip_timing(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"wall_time\"")).collect::<Vec<_>>().join("\n")
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qapbound");
    let f = fixtures();
    let cases: [(PathBuf, &[&str]); 3] = [
        (f.join("toy.dd"), &["--method", "hung-ri"]),
        (f.join("synthetic").join("s1.dd"), &["--method", "bca"]),
        (f.join("tiny.dat"), &["--method", "hung", "--qaplib", "--augment"]),
    ];
    for (path, extra) in &cases {
        let mut first: Option<String> = None;
        for rep in 0..10 {
            let out = Command::new(bin)
                .args(["solve", "--max-iters", "25", "--trajectory", "--input"])
                .arg(path)
                .args(*extra)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || format!("{}: exit {:?}", path.display(), out.status))?;
            let body = strip_timing(&String::from_utf8_lossy(&out.stdout));
            match &first {
                None => first = Some(body),
                Some(f) => ensure(f == &body, || format!("{}: repetition {rep} differs", path.display()))?,
            }
        }
    }
    Ok("3 fixtures x 10 runs identical".into())
}

fn main() {
    let corpus = iqap_corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 example-1 golden", Box::new(example1)),
        ("2 LAP relative interior", Box::new(lap_relative_interior)),
        ("3 ILAP reduction", Box::new(reduction)),
        ("4 Theorem-5 primal mapping", Box::new(theorem5_primal)),
        ("5 bound soundness and monotonicity", Box::new(|| soundness(&corpus))),
        ("6 exact beta dominance", Box::new(|| dominance(&corpus))),
        ("7 augmentation preserves optimum", Box::new(|| augmentation(&corpus))),
        ("8 batch harness", Box::new(batch)),
        ("9 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
