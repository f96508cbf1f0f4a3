//! Runs an [`ExperimentConfig`] and produces result rows.
//!
//! Channel draws come from `RealizationStream::new(seed)`: replicate `r` of
//! every sweep point and every method sees the same draw (truncated to the
//! point's `N`), so method columns are directly comparable. Replicates run in
//! parallel on the current rayon pool; rows are always emitted in
//! (sweep point, method, replicate) order.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use risopt_core::optimize::search_size;
use risopt_core::sample::{ChannelSpec, RealizationStream};
use risopt_core::select::{
    average_capacity, binomial, deterministic_argmax, enumerate_options, evenly_spaced_set,
    imb_select, integral_s, mcsb_cost, omega_grid, DEFAULT_IMB_CAP,
};
use risopt_core::{
    cpp_optimize, exhaustive_optimize, improved_cpp_optimize, optimize, ChannelRealization,
    ConfigurationSet, LinkParams, OptimizationResult,
};

use crate::config::{magnitude_from_db, ExperimentConfig, Kind, Method, SweepPoint};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Replicate {
    Index(u64),
    /// An aggregate over all replicates, or a per-point quantity.
    All,
}

impl fmt::Display for Replicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Index(i) => write!(f, "{i}"),
            Self::All => f.write_str("all"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    CapacityBitsPerS,
    MeanCapacityBitsPerS,
    /// `∫S` of the configuration set in use.
    Integral,
    OptionsExamined,
    ElapsedNs,
    MeanElapsedNs,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Self::CapacityBitsPerS => "capacity_bits_per_s",
            Self::MeanCapacityBitsPerS => "mean_capacity_bits_per_s",
            Self::Integral => "integral",
            Self::OptionsExamined => "options_examined",
            Self::ElapsedNs => "elapsed_ns",
            Self::MeanElapsedNs => "mean_elapsed_ns",
        }
    }

    /// Wall-clock measurements, which differ between runs.
    pub fn is_timing(self) -> bool {
        matches!(self, Self::ElapsedNs | Self::MeanElapsedNs)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Count(u128),
}

impl Value {
    pub fn as_f64(self) -> f64 {
        match self {
            Self::Real(x) => x,
            Self::Count(c) => c as f64,
        }
    }
}

impl fmt::Display for Value {
    /// Reals with 17 significant digits, so values round-trip exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Real(x) => write!(f, "{x:.16e}"),
            Self::Count(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub experiment: String,
    pub method: Method,
    pub n: Option<usize>,
    pub k: usize,
    pub m: Option<usize>,
    pub seed: u64,
    pub replicate: Replicate,
    pub metric: Metric,
    pub value: Value,
}

/// Fills in the columns shared by every row of one (point, method) block.
struct RowSink<'a> {
    rows: &'a mut Vec<ResultRow>,
    experiment: String,
    method: Method,
    point: SweepPoint,
    seed: u64,
}

impl RowSink<'_> {
    fn push(&mut self, replicate: Replicate, metric: Metric, value: Value) {
        self.rows.push(ResultRow {
            experiment: self.experiment.clone(),
            method: self.method,
            n: self.point.n,
            k: self.point.k,
            m: self.point.m,
            seed: self.seed,
            replicate,
            metric,
            value,
        });
    }

    fn per_replicate(&mut self, metric: Metric, mean: Metric, values: &[f64]) {
        for (r, &v) in values.iter().enumerate() {
            self.push(Replicate::Index(r as u64), metric, Value::Real(v));
        }
        let total: f64 = values.iter().sum();
        self.push(
            Replicate::All,
            mean,
            Value::Real(total / values.len() as f64),
        );
    }
}

fn draws(cfg: &ExperimentConfig, point: &SweepPoint) -> Result<Vec<ChannelRealization>> {
    let spec = ChannelSpec {
        elements: point
            .n
            .expect("experiments with draws have an element count"),
        v_magnitude: cfg.v_magnitude(),
        h0_magnitude: magnitude_from_db(point.h0_db),
        h0_phase: cfg.h0_phase,
    };
    let stream = RealizationStream::new(cfg.seed);
    (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| Ok(stream.realization(r, &spec)?))
        .collect()
}

fn capacities(set: &ConfigurationSet, link: &LinkParams, draws: &[ChannelRealization]) -> Vec<f64> {
    draws
        .par_iter()
        .map(|r| optimize(r, set, link).capacity_bits_per_s)
        .collect()
}

/// Runs every sweep point and method of `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let link = cfg.link()?;
    let mut rows = Vec::new();
    for point in cfg.sweep() {
        log::info!("{} {:?}", cfg.name, point);
        let draws = match cfg.kind {
            Kind::SearchCost => Vec::new(),
            _ => draws(cfg, &point)?,
        };
        for &method in &cfg.methods {
            let mut sink = RowSink {
                rows: &mut rows,
                experiment: cfg.label(&point),
                method,
                point,
                seed: cfg.seed,
            };
            match cfg.kind {
                Kind::Capacity => run_capacity(cfg, &point, method, &link, &draws, &mut sink)?,
                Kind::Selection => run_selection(cfg, &point, method, &link, &draws, &mut sink)?,
                Kind::SearchCost => run_search_cost(cfg, &point, method, &mut sink)?,
            }
        }
    }
    Ok(rows)
}

fn run_capacity(
    cfg: &ExperimentConfig,
    point: &SweepPoint,
    method: Method,
    link: &LinkParams,
    draws: &[ChannelRealization],
    sink: &mut RowSink<'_>,
) -> Result<()> {
    let n = point.n.expect("capacity experiments sweep n");
    let set = evenly_spaced_set(point.k, &cfg.coupling(point)?)?;
    if method == Method::Exhaustive && search_size(point.k, n) > cfg.exhaustive_cap {
        log::warn!(
            "skipping exhaustive at N={n}, K={}: K^N exceeds the cap of {}",
            point.k,
            cfg.exhaustive_cap
        );
        return Ok(());
    }
    let solve = |r: &ChannelRealization| -> risopt_core::Result<OptimizationResult> {
        match method {
            Method::Optimize => Ok(optimize(r, &set, link)),
            Method::Exhaustive => exhaustive_optimize(r, &set, link, cfg.exhaustive_cap),
            Method::Cpp => cpp_optimize(r, &set, link),
            Method::ImprovedCpp => improved_cpp_optimize(r, &set, link),
            _ => unreachable!("validated: {method} is not an optimizer"),
        }
    };
    let caps = draws
        .par_iter()
        .map(|r| solve(r).map(|res| res.capacity_bits_per_s))
        .collect::<risopt_core::Result<Vec<f64>>>()?;
    sink.per_replicate(
        Metric::CapacityBitsPerS,
        Metric::MeanCapacityBitsPerS,
        &caps,
    );
    Ok(())
}

fn run_selection(
    cfg: &ExperimentConfig,
    point: &SweepPoint,
    method: Method,
    link: &LinkParams,
    draws: &[ChannelRealization],
    sink: &mut RowSink<'_>,
) -> Result<()> {
    let params = cfg.coupling(point)?;
    let m = point.m.expect("selection experiments sweep m");
    let start = Instant::now();
    let (set, examined) = match method {
        Method::Imb | Method::ImbSsc => {
            let report = imb_select(
                m,
                point.k,
                &params,
                method == Method::ImbSsc,
                DEFAULT_IMB_CAP,
            )?;
            (
                omega_grid(m, &params)?.config_set(&report.best_option),
                Some(report.options_examined),
            )
        }
        Method::Mcsb => {
            let required = mcsb_cost(m, point.k, draws.len(), point.n.unwrap_or(1));
            if required > cfg.mcsb_budget {
                return Err(risopt_core::Error::BudgetExceeded {
                    required,
                    budget: cfg.mcsb_budget,
                }
                .into());
            }
            let grid = omega_grid(m, &params)?;
            let options: Vec<_> = enumerate_options(m, point.k, false)?.collect();
            let scores: Vec<f64> = options
                .par_iter()
                .map(|o| average_capacity(&grid.config_set(o), link, draws))
                .collect();
            let best = deterministic_argmax(&scores).expect("at least one option");
            debug_assert_eq!(options.len() as u128, binomial(m, point.k));
            (grid.config_set(&options[best]), Some(options.len()))
        }
        Method::EvenlySpaced => (evenly_spaced_set(point.k, &params)?, None),
        _ => unreachable!("validated: {method} is not a selection method"),
    };
    let elapsed = start.elapsed().as_nanos();
    sink.push(
        Replicate::All,
        Metric::Integral,
        Value::Real(integral_s(&set)),
    );
    if let Some(examined) = examined {
        sink.push(
            Replicate::All,
            Metric::OptionsExamined,
            Value::Count(examined as u128),
        );
        sink.push(
            Replicate::All,
            Metric::ElapsedNs,
            Value::Real(elapsed as f64),
        );
    }
    sink.per_replicate(
        Metric::CapacityBitsPerS,
        Metric::MeanCapacityBitsPerS,
        &capacities(&set, link, draws),
    );
    Ok(())
}

fn run_search_cost(
    cfg: &ExperimentConfig,
    point: &SweepPoint,
    method: Method,
    sink: &mut RowSink<'_>,
) -> Result<()> {
    let params = cfg.coupling(point)?;
    let m = point.m.expect("search-cost experiments sweep m");
    let ssc = method == Method::ImbSsc;
    // timed serially: parallel runs would contend with each other
    let mut times = Vec::with_capacity(cfg.replicates);
    let mut report = None;
    for _ in 0..cfg.replicates {
        let start = Instant::now();
        let r = imb_select(m, point.k, &params, ssc, DEFAULT_IMB_CAP)?;
        times.push(start.elapsed().as_nanos() as f64);
        report = Some(r);
    }
    let report = report.expect("at least one replicate");
    sink.push(
        Replicate::All,
        Metric::OptionsExamined,
        Value::Count(report.options_examined as u128),
    );
    sink.push(
        Replicate::All,
        Metric::Integral,
        Value::Real(report.best_score),
    );
    sink.per_replicate(Metric::ElapsedNs, Metric::MeanElapsedNs, &times);
    Ok(())
}

/// Pulls `(method, value)` pairs for one metric, in row order.
pub fn select_metric<'a>(
    rows: &'a [ResultRow],
    metric: Metric,
) -> impl Iterator<Item = &'a ResultRow> + 'a {
    rows.iter().filter(move |r| r.metric == metric)
}
