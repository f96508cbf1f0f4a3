//! Configuration-set selection.
//!
//! With equal `|v_n|` and a weak direct path, the optimal `|h|` is close to
//! `c·N/(2π)·∫S`, where `S(x) = max_i β̂_i·cos(x − α̂_i)` is the envelope of
//! the set's curves. Ranking candidate sets by that integral (IMB) replaces a
//! Monte Carlo search (MCSB) over channel draws.
//!
//! Candidates are `K`-subsets of a grid `Ω` of `M` phases placed
//! symmetrically about the coupling law's peak `φ′ = φ + π/2`. Mirroring an
//! option about `φ′` keeps its integral, so only one option of each mirror
//! pair needs scoring (SSC).

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::angle::{self, normalize, PI, TWO_PI};
use crate::channel::{ChannelRealization, ConfigurationSet, CouplingParams, LinkParams};
use crate::interval::{active_intervals, ActiveInterval};
use crate::optimize::optimize;
use crate::sample::{ChannelSpec, RealizationStream};
use crate::{Error, Result};

/// Largest `C(M, K)` the IMB search accepts by default.
pub const DEFAULT_IMB_CAP: u128 = 10_000_000;

/// Largest `C(M, K)·R·N·K` the MCSB search accepts by default.
pub const DEFAULT_MCSB_BUDGET: u128 = 10_000_000_000;

/// Scores closer than this (relative to the incumbent) count as ties.
const TIE_TOL: f64 = 1e-12;

/// `max_i β̂_i·cos(x − α̂_i)`.
pub fn s_value(x: f64, set: &ConfigurationSet) -> f64 {
    set.iter()
        .map(|c| c.beta() * angle::cos(x - c.alpha()))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `∫₀^{2π} S(x) dx`, exactly: each curve's antiderivative
/// `β̂·sin(x − α̂)` is evaluated across its active interval.
pub fn integral_s(set: &ConfigurationSet) -> f64 {
    active_intervals(set, 0.0)
        .into_iter()
        .map(|(i, active)| match active {
            // a lone sinusoid integrates to zero over a period
            ActiveInterval::FullCircle => 0.0,
            ActiveInterval::Arc(arc) => {
                let c = &set[i];
                // also right for wrapping arcs: sin(2π − α̂) = sin(−α̂)
                c.beta()
                    * (angle::sin(arc.right() - c.alpha()) - angle::sin(arc.left() - c.alpha()))
            }
        })
        .sum()
}

/// The `M` candidate phases `φ′ − π + (2j − 1)π/M`, `j = 1..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaGrid {
    phases: Vec<f64>,
    phi_prime: f64,
    params: CouplingParams,
}

pub fn omega_grid(m: usize, params: &CouplingParams) -> Result<OmegaGrid> {
    if m < 2 {
        return Err(Error::GridTooSmall(m));
    }
    let phi_prime = params.phi() + PI / 2.0;
    let phases = (1..=m)
        .map(|j| normalize(phi_prime - PI + (2 * j - 1) as f64 * PI / m as f64))
        .collect();
    Ok(OmegaGrid {
        phases,
        phi_prime: normalize(phi_prime),
        params: *params,
    })
}

impl OmegaGrid {
    pub fn new(m: usize, params: &CouplingParams) -> Result<Self> {
        omega_grid(m, params)
    }

    pub fn m(&self) -> usize {
        self.phases.len()
    }

    /// Phases in index order (`j = 1` first), normalized to `[0, 2π)`.
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Phase of 1-based grid index `j`.
    pub fn phase(&self, j: usize) -> f64 {
        self.phases[j - 1]
    }

    pub fn phi_prime(&self) -> f64 {
        self.phi_prime
    }

    pub fn params(&self) -> &CouplingParams {
        &self.params
    }

    /// The coupled configuration set an option stands for.
    pub fn config_set(&self, option: &OptionIndexSet) -> ConfigurationSet {
        let phases: Vec<f64> = option.indices.iter().map(|&j| self.phase(j)).collect();
        ConfigurationSet::from_phases(&phases, &self.params)
            .expect("options are non-empty and grid phases are distinct")
    }
}

/// `K` distinct 1-based grid indices in increasing order. Ordering is
/// lexicographic on the index list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OptionIndexSet {
    indices: Vec<usize>,
}

impl OptionIndexSet {
    pub fn new(indices: Vec<usize>, m: usize) -> Result<Self> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        let in_range = indices.iter().all(|&j| (1..=m).contains(&j));
        if indices.is_empty() || !increasing || !in_range {
            return Err(Error::InvalidOption(indices));
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_self_mirrored(&self, m: usize) -> bool {
        mirror_option(self, m) == *self
    }
}

/// Reflects every index about the grid's axis, `j ↦ M + 1 − j`. In phase
/// terms `∠ψ† = 2φ′ − ∠ψ`, so amplitudes are unchanged.
pub fn mirror_option(option: &OptionIndexSet, m: usize) -> OptionIndexSet {
    let mut indices: Vec<usize> = option.indices.iter().rev().map(|&j| m + 1 - j).collect();
    indices.sort_unstable();
    OptionIndexSet { indices }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n − i) is divisible by (i + 1) at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic `K`-subsets of `1..=M`.
#[derive(Debug, Clone)]
pub struct Combinations {
    m: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(m: usize, k: usize) -> Self {
        let next = (k >= 1 && k <= m).then(|| (1..=k).collect());
        Self { m, next }
    }
}

impl Iterator for Combinations {
    type Item = OptionIndexSet;

    fn next(&mut self) -> Option<OptionIndexSet> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        // rightmost slot that can still move up
        let mut pos = k;
        while pos > 0 && succ[pos - 1] == self.m - k + pos {
            pos -= 1;
        }
        if pos > 0 {
            succ[pos - 1] += 1;
            for t in pos..k {
                succ[t] = succ[t - 1] + 1;
            }
            self.next = Some(succ);
        }
        Some(OptionIndexSet { indices: current })
    }
}

fn check_sizes(m: usize, k: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::InvalidOptionSize { k, m });
    }
    Ok(())
}

/// Every option, or with `use_ssc` only the lexicographically smaller member
/// of each mirror pair (self-mirrored options once).
pub fn enumerate_options(
    m: usize,
    k: usize,
    use_ssc: bool,
) -> Result<impl Iterator<Item = OptionIndexSet>> {
    check_sizes(m, k)?;
    Ok(Combinations::new(m, k).filter(move |opt| !use_ssc || *opt <= mirror_option(opt, m)))
}

/// Canonical mirror-pair representatives.
pub fn ssc_enumerate(m: usize, k: usize) -> Result<impl Iterator<Item = OptionIndexSet>> {
    enumerate_options(m, k, true)
}

/// Number of options that are their own mirror image.
pub fn self_mirrored_count(m: usize, k: usize) -> u128 {
    match (m % 2, k % 2) {
        (_, 0) => binomial(m / 2, k / 2),
        // the axial grid point must be in, the rest comes in pairs
        (1, 1) => binomial((m - 1) / 2, (k - 1) / 2),
        _ => 0,
    }
}

/// Options left after mirror compression, in closed form.
pub fn ssc_count(m: usize, k: usize) -> u128 {
    let sym = self_mirrored_count(m, k);
    sym + (binomial(m, k) - sym) / 2
}

/// Outcome of a selection run.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    pub best_option: OptionIndexSet,
    /// `∫S` for IMB, average optimal capacity (bits/s) for MCSB.
    pub best_score: f64,
    pub options_examined: usize,
    /// Score of every examined option, in enumeration order.
    pub scores: Vec<f64>,
}

/// Index of the best score; near-ties keep the earliest entry. Callers list
/// options lexicographically, so ties go to the smallest option no matter
/// how the scores were computed.
pub fn deterministic_argmax(scores: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &s) in scores.iter().enumerate() {
        match best {
            Some((_, b)) if s <= b + TIE_TOL * b.abs().max(1.0) => {}
            _ => best = Some((i, s)),
        }
    }
    best.map(|(i, _)| i)
}

fn report(options: Vec<OptionIndexSet>, scores: Vec<f64>) -> SelectionReport {
    let best = deterministic_argmax(&scores).expect("at least one option");
    SelectionReport {
        best_option: options[best].clone(),
        best_score: scores[best],
        options_examined: options.len(),
        scores,
    }
}

/// Integral-maximization selection over the `M`-point grid.
pub fn imb_select(
    m: usize,
    k: usize,
    params: &CouplingParams,
    use_ssc: bool,
    cap: u128,
) -> Result<SelectionReport> {
    let grid = omega_grid(m, params)?;
    check_sizes(m, k)?;
    let required = if use_ssc {
        ssc_count(m, k)
    } else {
        binomial(m, k)
    };
    if required > cap {
        return Err(Error::BudgetExceeded {
            required,
            budget: cap,
        });
    }
    let options: Vec<OptionIndexSet> = enumerate_options(m, k, use_ssc)?.collect();
    let scores = options
        .iter()
        .map(|o| integral_s(&grid.config_set(o)))
        .collect();
    Ok(report(options, scores))
}

/// Mean optimal capacity of `set` over the given draws.
pub fn average_capacity(
    set: &ConfigurationSet,
    link: &LinkParams,
    realizations: &[ChannelRealization],
) -> f64 {
    let total: f64 = realizations
        .iter()
        .map(|r| optimize(r, set, link).capacity_bits_per_s)
        .sum();
    total / realizations.len() as f64
}

/// Work units of an MCSB run: `C(M, K)·R·N·K`.
pub fn mcsb_cost(m: usize, k: usize, replicates: usize, elements: usize) -> u128 {
    binomial(m, k)
        .saturating_mul(replicates as u128)
        .saturating_mul(elements as u128)
        .saturating_mul(k as u128)
}

/// Monte Carlo selection: every option is scored by its average optimal
/// capacity over the same `R` draws.
#[allow(clippy::too_many_arguments)]
pub fn mcsb_select(
    m: usize,
    k: usize,
    params: &CouplingParams,
    link: &LinkParams,
    spec: &ChannelSpec,
    replicates: usize,
    seed: u64,
    budget: u128,
) -> Result<SelectionReport> {
    let grid = omega_grid(m, params)?;
    check_sizes(m, k)?;
    spec.validate()?;
    let required = mcsb_cost(m, k, replicates.max(1), spec.elements);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let draws = RealizationStream::new(seed).realizations(replicates.max(1), spec)?;
    mcsb_select_over(&grid, k, link, &draws)
}

/// MCSB against caller-supplied draws.
pub fn mcsb_select_over(
    grid: &OmegaGrid,
    k: usize,
    link: &LinkParams,
    realizations: &[ChannelRealization],
) -> Result<SelectionReport> {
    if realizations.is_empty() {
        return Err(Error::NoElements);
    }
    let options: Vec<OptionIndexSet> = enumerate_options(grid.m(), k, false)?.collect();
    let scores = options
        .iter()
        .map(|o| average_capacity(&grid.config_set(o), link, realizations))
        .collect();
    Ok(report(options, scores))
}

/// Phases `0, 2π/K, …, 2π(K−1)/K` with coupled amplitudes.
pub fn evenly_spaced_set(k: usize, params: &CouplingParams) -> Result<ConfigurationSet> {
    if k == 0 {
        return Err(Error::EmptyConfigurationSet);
    }
    let phases: Vec<f64> = (0..k).map(|i| i as f64 * TWO_PI / k as f64).collect();
    ConfigurationSet::from_phases(&phases, params)
}

/// Closed-form expected capacity for equal `|v_n| = c` and a negligible
/// direct path: `B·log₂(1 + snr·(c·N·∫S / 2π)²)`.
pub fn expected_capacity_estimate(
    set: &ConfigurationSet,
    c: f64,
    n: usize,
    link: &LinkParams,
) -> f64 {
    let h = c * n as f64 / TWO_PI * integral_s(set);
    link.bandwidth_hz() * libm::log1p(link.snr_scale() * h * h) / LN_2
}
