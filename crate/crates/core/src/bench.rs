//! Move-count curves over doubling `n`.

use serde::Serialize;

use crate::order::LabelError;
use crate::strategy::Strategy;
use crate::workloads::{run_workload, workload_ops, Workload};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchPoint {
    pub n: usize,
    pub singles_per_insert: f64,
    pub bulks_per_insert: f64,
    pub max_bulk: usize,
    pub max_label: u64,
    pub label_bound: u64,
    pub bulk_limit: Option<usize>,
    pub singles_per_log: f64,
    pub singles_per_log2: f64,
    pub bulks_per_log: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub strategy: Strategy,
    pub workload: Workload,
    pub points: Vec<BenchPoint>,
    /// Least-squares slope of amortized bulks against `log2 n`.
    pub bulks_vs_log_slope: f64,
    /// Least-squares slope of amortized singles against `log2 n`.
    pub singles_vs_log_slope: f64,
    /// Least-squares slope of amortized singles against `log2^2 n`.
    pub singles_vs_log2_slope: f64,
}

/// Slope of the least-squares line through `(x, y)`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

pub fn bench_point(strategy: Strategy, workload: Workload, n: usize, seed: u64, exponent: u32) -> Result<BenchPoint, LabelError> {
    let mut l = strategy.build(exponent);
    let ops = workload_ops(workload, n, seed);
    let (_, stats) = run_workload(l.as_mut(), &ops)?;
    let lg = (n as f64).log2().max(1.0);
    let (s, b) = (stats.amortized_singles(), stats.amortized_bulks());
    Ok(BenchPoint {
        n,
        singles_per_insert: s,
        bulks_per_insert: b,
        max_bulk: stats.max_bulk_size,
        max_label: stats.max_label,
        label_bound: l.label_bound(),
        bulk_limit: l.bulk_limit(),
        singles_per_log: s / lg,
        singles_per_log2: s / (lg * lg),
        bulks_per_log: b / lg,
    })
}

/// Runs `n = 2^lo .. 2^hi` (inclusive).
pub fn bench(strategy: Strategy, workload: Workload, lo: u32, hi: u32, seed: u64, exponent: u32) -> Result<BenchReport, LabelError> {
    let points = (lo..=hi)
        .map(|k| bench_point(strategy, workload, 1 << k, seed, exponent))
        .collect::<Result<Vec<_>, _>>()?;
    let lg: Vec<f64> = points.iter().map(|p| (p.n as f64).log2()).collect();
    let lg2: Vec<f64> = lg.iter().map(|x| x * x).collect();
    let bulks: Vec<f64> = points.iter().map(|p| p.bulks_per_insert).collect();
    let singles: Vec<f64> = points.iter().map(|p| p.singles_per_insert).collect();
    Ok(BenchReport {
        strategy,
        workload,
        bulks_vs_log_slope: slope(&lg, &bulks),
        singles_vs_log_slope: slope(&lg, &singles),
        singles_vs_log2_slope: slope(&lg2, &singles),
        points,
    })
}
