//! Result rows, the best-bound rule and the per-group tables.

use std::fmt::Write as _;

use qapbound_core::BoundReport;
use serde::Serialize;

/// Relative slack of the best-bound rule.
pub const BEST_TOLERANCE: f64 = 1e-10;

/// Smallest bound still counted as best when the best one is `max`:
/// `(1 + 1e-10) * max` for non-positive `max`, `(1 - 1e-10) * max` otherwise.
pub fn best_threshold(max: f64) -> f64 {
    if max <= 0.0 {
        (1.0 + BEST_TOLERANCE) * max
    } else {
        (1.0 - BEST_TOLERANCE) * max
    }
}

pub fn is_best(bound: f64, max: f64) -> bool {
    bound >= best_threshold(max)
}

/// One solver run, as printed by `solve`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveRecord {
    pub instance: String,
    pub method: String,
    pub iterations: usize,
    pub initial_bound: f64,
    pub final_bound: f64,
    /// Constant to add to the bounds for QAPLIB input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
    pub wall_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Vec<f64>>,
}

impl SolveRecord {
    pub fn new(instance: &str, report: &BoundReport, offset: Option<f64>, trajectory: bool) -> Self {
        SolveRecord {
            instance: instance.to_string(),
            method: report.method.name().to_string(),
            iterations: report.iterations,
            initial_bound: report.initial_bound,
            final_bound: report.final_bound,
            offset,
            wall_time: report.wall_time,
            trajectory: trajectory.then(|| report.trajectory.clone()),
        }
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        #[derive(Serialize)]
        struct Flat<'a> {
            instance: &'a str,
            method: &'a str,
            iterations: usize,
            initial_bound: f64,
            final_bound: f64,
            offset: Option<f64>,
            wall_time: f64,
            trajectory: String,
        }
        let trajectory = self
            .trajectory
            .as_ref()
            .map(|t| t.iter().map(f64::to_string).collect::<Vec<_>>().join(";"))
            .unwrap_or_default();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(Flat {
            instance: &self.instance,
            method: &self.method,
            iterations: self.iterations,
            initial_bound: self.initial_bound,
            final_bound: self.final_bound,
            offset: self.offset,
            wall_time: self.wall_time,
            trajectory,
        })?;
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub group: String,
    pub instance: String,
    pub method: String,
    pub final_bound: f64,
    pub initial_bound: f64,
    pub iterations: usize,
    pub wall_time: f64,
    /// Set by [`ResultTable::new`].
    pub best: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupSummary {
    pub group: String,
    pub method: String,
    pub instances: usize,
    pub best_count: usize,
    pub average_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultTable {
    pub methods: Vec<String>,
    pub rows: Vec<ResultRow>,
    pub groups: Vec<GroupSummary>,
}

impl ResultTable {
    /// Marks best bounds per (group, instance) and aggregates per group and
    /// method. Groups keep their order of first appearance.
    pub fn new(methods: Vec<String>, mut rows: Vec<ResultRow>) -> Self {
        let mut max: std::collections::HashMap<(String, String), f64> = Default::default();
        for r in &rows {
            let m = max.entry((r.group.clone(), r.instance.clone())).or_insert(f64::NEG_INFINITY);
            *m = m.max(r.final_bound);
        }
        for r in &mut rows {
            r.best = is_best(r.final_bound, max[&(r.group.clone(), r.instance.clone())]);
        }
        let mut order: Vec<String> = Vec::new();
        for r in &rows {
            if !order.contains(&r.group) {
                order.push(r.group.clone());
            }
        }
        let mut groups = Vec::new();
        for g in &order {
            for m in &methods {
                let mine: Vec<&ResultRow> = rows.iter().filter(|r| &r.group == g && &r.method == m).collect();
                if mine.is_empty() {
                    continue;
                }
                groups.push(GroupSummary {
                    group: g.clone(),
                    method: m.clone(),
                    instances: mine.len(),
                    best_count: mine.iter().filter(|r| r.best).count(),
                    average_bound: mine.iter().map(|r| r.final_bound).sum::<f64>() / mine.len() as f64,
                });
            }
        }
        ResultTable { methods, rows, groups }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// One CSV line per run.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
    }

    /// Groups as rows, `#best` and average bound per method as columns.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:<20} {:>5}", "group", "n");
        for m in &self.methods {
            let _ = write!(out, " | {:>7} {:>16}", format!("{m} #"), "avg");
        }
        out.push('\n');
        let mut seen: Vec<&str> = Vec::new();
        for s in &self.groups {
            if seen.contains(&s.group.as_str()) {
                continue;
            }
            seen.push(&s.group);
            let n = self.groups.iter().filter(|x| x.group == s.group).map(|x| x.instances).max().unwrap_or(0);
            let _ = write!(out, "{:<20} {:>5}", s.group, n);
            for m in &self.methods {
                match self.groups.iter().find(|x| x.group == s.group && &x.method == m) {
                    Some(x) => {
                        let _ = write!(out, " | {:>7} {:>16.6}", x.best_count, x.average_bound);
                    }
                    None => {
                        let _ = write!(out, " | {:>7} {:>16}", "-", "-");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}
