//! Multi-run solving and run reports.

use std::time::Instant;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wil_core::aco::{solve_with, AcoParams, CircleDecoder, Decoder, Executor, MmasDeposit, RectDecoder, Variant};

use crate::instance::{Instance, Items};
use crate::layout_file::LayoutFile;

/// Runs ants (or oracle chunks) on the current rayon pool. Results come
/// back in index order, so output does not depend on the thread count.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rayon;

impl Executor for Rayon {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).into_par_iter().map(f).collect()
    }
}

pub fn algorithm_name(v: Variant) -> &'static str {
    match v {
        Variant::As => "as",
        Variant::Mmas => "mmas",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub ants: usize,
    pub iters: usize,
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deposit: Option<String>,
}

impl ParamsRecord {
    pub fn from_params(p: &AcoParams) -> Self {
        ParamsRecord {
            ants: p.ants,
            iters: p.iterations,
            alpha: p.alpha,
            beta: p.beta,
            rho: p.rho,
            seed: p.seed,
            deposit: (p.variant == Variant::Mmas).then(|| {
                match p.mmas_deposit {
                    MmasDeposit::GlobalBest => "global-best",
                    MmasDeposit::IterationBest => "iteration-best",
                }
                .to_string()
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub envelope: f64,
    /// Placement order, as 1-based item ids.
    pub order: Vec<usize>,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub kind: String,
    pub n: usize,
    pub algorithm: String,
    pub runs: usize,
    pub r_best: f64,
    pub r_average: f64,
    pub t_average: f64,
    pub params: ParamsRecord,
    pub per_run: Vec<RunRecord>,
}

impl RunReport {
    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub struct Outcome {
    pub report: RunReport,
    /// Layout of the first run reaching `r_best`.
    pub best_layout: LayoutFile,
}

fn run_all<D: Decoder>(
    decoder: &D,
    params: &AcoParams,
    runs: usize,
    mut to_file: impl FnMut(&wil_core::Layout<D::Placement>) -> LayoutFile,
) -> Result<(Vec<RunRecord>, LayoutFile)> {
    let mut records = Vec::with_capacity(runs);
    let mut best: Option<(f64, LayoutFile)> = None;
    for k in 0..runs {
        let seed = params.seed.wrapping_add(k as u64);
        let p = AcoParams { seed, ..*params };
        let start = Instant::now();
        let res = solve_with(decoder, &p, &Rayon, &mut ())?;
        let wall_time = start.elapsed().as_secs_f64();
        if best.as_ref().is_none_or(|(b, _)| res.best_envelope < *b) {
            best = Some((res.best_envelope, to_file(&res.best_layout)));
        }
        records.push(RunRecord {
            seed,
            envelope: res.best_envelope,
            order: res.best_order.iter().map(|i| i + 1).collect(),
            wall_time,
        });
    }
    let (_, layout) = best.ok_or_else(|| anyhow::anyhow!("runs must be at least 1"))?;
    Ok((records, layout))
}

/// Runs the colony `runs` times with seeds `seed, seed + 1, ...`.
pub fn solve_instance(instance: &Instance, name: &str, params: &AcoParams, runs: usize) -> Result<Outcome> {
    params.validate()?;
    if runs == 0 {
        anyhow::bail!("runs must be at least 1");
    }
    let label = Some(name.to_string());
    let (per_run, best_layout) = match &instance.items {
        Items::Circles(items) => run_all(&CircleDecoder(items), params, runs, |l| {
            LayoutFile::from_circles(label.clone(), items, l)
        })?,
        Items::Rects(items) => run_all(&RectDecoder(items), params, runs, |l| {
            LayoutFile::from_rects(label.clone(), items, l)
        })?,
    };
    let r_best = per_run.iter().map(|r| r.envelope).fold(f64::INFINITY, f64::min);
    let r_average = per_run.iter().map(|r| r.envelope).sum::<f64>() / runs as f64;
    let t_average = per_run.iter().map(|r| r.wall_time).sum::<f64>() / runs as f64;
    let report = RunReport {
        instance: name.to_string(),
        kind: instance.items.kind().to_string(),
        n: instance.items.len(),
        algorithm: algorithm_name(params.variant).to_string(),
        runs,
        r_best,
        r_average,
        t_average,
        params: ParamsRecord::from_params(params),
        per_run,
    };
    Ok(Outcome { report, best_layout })
}

#[cfg(test)]
mod tests {
    use super::*;
    use wil_core::CircleItem;

    #[test]
    fn report_statistics() {
        let inst = Instance {
            name: None,
            seed: None,
            items: Items::Circles(
                (1..=6)
                    .map(|i| CircleItem::new(i as f64, 7.0 - i as f64).unwrap())
                    .collect(),
            ),
        };
        let params = AcoParams {
            ants: 5,
            iterations: 8,
            seed: 1,
            ..AcoParams::default()
        };
        let out = solve_instance(&inst, "six", &params, 4).unwrap();
        let r = &out.report;
        assert_eq!(r.per_run.len(), 4);
        assert_eq!(r.per_run.iter().map(|p| p.seed).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert!(r.r_best <= r.r_average);
        assert_eq!(r.r_best, out.best_layout.envelope_radius);
        out.best_layout.verify().unwrap();
    }

    #[test]
    fn zero_runs_rejected() {
        let inst = Instance {
            name: None,
            seed: None,
            items: Items::Circles(vec![CircleItem::new(1.0, 1.0).unwrap()]),
        };
        assert!(solve_instance(&inst, "x", &AcoParams::default(), 0).is_err());
    }
}
