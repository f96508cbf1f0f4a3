//! Per-realization capacity maximization.
//!
//! For a fixed phase `x` of the optimal channel, every element independently
//! picks the choice with the largest projection `β̂_i·cos(x − ∠v_n − α̂_i)`.
//! Those picks only change at the envelope breakpoints, so sweeping one
//! representative phase per region between consecutive breakpoints of all
//! elements visits every candidate that can be optimal: at most `N·K`
//! regions instead of `K^N` combinations.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::angle::{self, normalize, DEDUP_TOL, PI, TWO_PI};
use crate::channel::{
    capacity, cascaded_gain, magnitude, phase_of, polar, ChannelRealization, ConfigurationSet,
    LinkParams,
};
use crate::interval::{
    active_intersections, curve_value, ActiveIntersection, ActiveIntersectionList,
};
use crate::{Error, Result};

/// Largest `K^N` the exhaustive search accepts by default.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    /// Choice index per element.
    pub picks: Vec<usize>,
    pub h_opt: Complex64,
    pub capacity_bits_per_s: f64,
    /// Regions swept by [`optimize`], candidates enumerated by
    /// [`exhaustive_optimize`], elements visited by the projection baselines.
    pub regions_examined: usize,
}

impl OptimizationResult {
    fn new(picks: Vec<usize>, h_opt: Complex64, link: &LinkParams, examined: usize) -> Self {
        Self {
            picks,
            h_opt,
            capacity_bits_per_s: capacity(h_opt, link),
            regions_examined: examined,
        }
    }

    pub fn magnitude(&self) -> f64 {
        magnitude(self.h_opt)
    }
}

/// The choice whose curve is highest at `h_star_phase`; ties go to the lowest
/// index.
pub fn best_choice_for_phase(h_star_phase: f64, v_phase: f64, set: &ConfigurationSet) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, c) in set.iter().enumerate() {
        let val = curve_value(h_star_phase, c, v_phase);
        if val > best_val {
            best = i;
            best_val = val;
        }
    }
    best
}

/// Moves every breakpoint of `list` by `shift` radians and re-sorts.
pub fn shifted_intersections(list: &ActiveIntersectionList, shift: f64) -> ActiveIntersectionList {
    match list {
        ActiveIntersectionList::FullCircle { choice } => {
            ActiveIntersectionList::FullCircle { choice: *choice }
        }
        ActiveIntersectionList::Boundaries(entries) => {
            let mut moved: Vec<ActiveIntersection> = entries
                .iter()
                .map(|e| ActiveIntersection {
                    choice: e.choice,
                    right: normalize(e.right + shift),
                })
                .collect();
            moved.sort_by(|a, b| a.right.total_cmp(&b.right));
            ActiveIntersectionList::Boundaries(moved)
        }
    }
}

/// Breakpoint lists of every element. Only the first element is computed
/// from scratch; element `m` is the first one shifted by `∠v_m − ∠v_1`.
pub fn element_intersections(
    r: &ChannelRealization,
    set: &ConfigurationSet,
) -> Vec<ActiveIntersectionList> {
    let phases = r.v_phases();
    let base = active_intersections(set, phases[0]);
    phases
        .iter()
        .map(|&p| shifted_intersections(&base, p - phases[0]))
        .collect()
}

/// All breakpoints of all elements, merged and sorted (at most `N·K`).
pub fn all_element_intersections(r: &ChannelRealization, set: &ConfigurationSet) -> Vec<f64> {
    let mut all: Vec<f64> = element_intersections(r, set)
        .iter()
        .flat_map(|list| list.boundaries().collect::<Vec<_>>())
        .collect();
    all.sort_by(f64::total_cmp);
    all
}

/// Per-element projection table: `u[n][i] = e^{j∠v_n}·β̂_i·e^{jα̂_i}`, so the
/// curve value at `x` is `Re(u·e^{−jx})`.
struct Projector {
    units: Vec<Complex64>,
    k: usize,
}

impl Projector {
    fn new(r: &ChannelRealization, set: &ConfigurationSet) -> Self {
        let units = r
            .v_phases()
            .iter()
            .flat_map(|&p| set.iter().map(move |c| polar(c.beta(), p + c.alpha())))
            .collect();
        Self {
            units,
            k: set.len(),
        }
    }

    fn picks_into(&self, x: f64, picks: &mut [usize]) {
        let (s, c) = (angle::sin(x), angle::cos(x));
        for (n, pick) in picks.iter_mut().enumerate() {
            *pick = self.pick(n, s, c);
        }
    }

    /// Best choice of element `n` at the phase whose sine and cosine are given.
    fn pick(&self, n: usize, s: f64, c: f64) -> usize {
        let row = &self.units[n * self.k..(n + 1) * self.k];
        let mut best = 0;
        let mut best_val = f64::NEG_INFINITY;
        for (i, u) in row.iter().enumerate() {
            let val = u.re * c + u.im * s;
            if val > best_val {
                best = i;
                best_val = val;
            }
        }
        best
    }
}

fn gain_table(r: &ChannelRealization, set: &ConfigurationSet) -> Vec<Complex64> {
    r.v()
        .iter()
        .flat_map(|&v| set.iter().map(move |c| cascaded_gain(v, c)))
        .collect()
}

fn sum_gains(h0: Complex64, gains: &[Complex64], k: usize, picks: &[usize]) -> Complex64 {
    picks
        .iter()
        .enumerate()
        .fold(h0, |h, (n, &p)| h + gains[n * k + p])
}

/// Representative phases, one per region between consecutive distinct
/// breakpoints, in ascending order. The last one may exceed `2π` when its
/// region wraps through zero.
fn region_midpoints(mut boundaries: Vec<f64>) -> Vec<f64> {
    boundaries.dedup_by(|b, a| *b - *a < DEDUP_TOL);
    if boundaries.len() > 1 && boundaries[0] + TWO_PI - boundaries[boundaries.len() - 1] < DEDUP_TOL
    {
        boundaries.pop();
    }
    match boundaries.len() {
        0 => vec![0.0],
        1 => vec![boundaries[0] + PI],
        n => (0..n)
            .map(|j| {
                let a = boundaries[j];
                let b = if j + 1 < n {
                    boundaries[j + 1]
                } else {
                    boundaries[0] + TWO_PI
                };
                0.5 * (a + b)
            })
            .collect(),
    }
}

/// Every breakpoint tagged with the element it belongs to, sorted by phase.
fn tagged_breakpoints(r: &ChannelRealization, set: &ConfigurationSet) -> Vec<(f64, usize)> {
    let mut all: Vec<(f64, usize)> = element_intersections(r, set)
        .iter()
        .enumerate()
        .flat_map(|(n, list)| list.boundaries().map(move |b| (b, n)).collect::<Vec<_>>())
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    all
}

/// Globally optimal picks for one realization.
///
/// Regions are visited in ascending phase order. Only the elements whose
/// breakpoints lie between two consecutive region midpoints change their
/// pick, so the sweep costs `O(NK log NK)`. `h₀` adds no breakpoints but is
/// part of every candidate `|h|`. Ties between regions keep the one reached
/// first.
pub fn optimize(
    r: &ChannelRealization,
    set: &ConfigurationSet,
    link: &LinkParams,
) -> OptimizationResult {
    let k = set.len();
    let n = r.num_elements();
    let gains = gain_table(r, set);
    let projector = Projector::new(r, set);
    let events = tagged_breakpoints(r, set);
    let mids = region_midpoints(events.iter().map(|e| e.0).collect());

    let mut picks = vec![0; n];
    projector.picks_into(mids[0], &mut picks);
    let mut h = sum_gains(r.h0(), &gains, k, &picks);
    let mut best_picks = picks.clone();
    let mut best_norm = h.norm_sqr();
    let mut next = events.partition_point(|e| e.0 < mids[0]);
    for &x in &mids[1..] {
        let (s, c) = (angle::sin(x), angle::cos(x));
        while next < events.len() && events[next].0 < x {
            let e = events[next].1;
            let p = projector.pick(e, s, c);
            h += gains[e * k + p] - gains[e * k + picks[e]];
            picks[e] = p;
            next += 1;
        }
        if h.norm_sqr() > best_norm {
            best_norm = h.norm_sqr();
            best_picks.copy_from_slice(&picks);
        }
    }
    // the running sum drifts by a few ulps; report the exact one
    let best_h = sum_gains(r.h0(), &gains, k, &best_picks);
    OptimizationResult::new(best_picks, best_h, link, mids.len())
}

/// `K^N`, saturating.
pub fn search_size(k: usize, n: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(k as u128);
    }
    total
}

/// True optimum by enumerating all `K^N` pick vectors. The first maximum in
/// lexicographic pick order wins ties.
pub fn exhaustive_optimize(
    r: &ChannelRealization,
    set: &ConfigurationSet,
    link: &LinkParams,
    cap: u128,
) -> Result<OptimizationResult> {
    let k = set.len();
    let n = r.num_elements();
    let required = search_size(k, n);
    if required > cap {
        return Err(Error::BudgetExceeded {
            required,
            budget: cap,
        });
    }
    let gains = gain_table(r, set);

    // partial[j] = h₀ + gains of elements 0..j under the current picks
    let mut picks = vec![0usize; n];
    let mut partial = vec![r.h0(); n + 1];
    for j in 0..n {
        partial[j + 1] = partial[j] + gains[j * k];
    }
    let mut best_picks = picks.clone();
    let mut best_h = partial[n];
    let mut best_norm = best_h.norm_sqr();
    let mut examined = 1usize;

    'outer: loop {
        let mut p = n;
        loop {
            if p == 0 {
                break 'outer;
            }
            p -= 1;
            picks[p] += 1;
            if picks[p] < k {
                break;
            }
            picks[p] = 0;
        }
        for j in p..n {
            partial[j + 1] = partial[j] + gains[j * k + picks[j]];
        }
        examined += 1;
        let norm = partial[n].norm_sqr();
        if norm > best_norm {
            best_norm = norm;
            best_h = partial[n];
            best_picks.copy_from_slice(&picks);
        }
    }
    Ok(OptimizationResult::new(best_picks, best_h, link, examined))
}

fn project_onto(
    r: &ChannelRealization,
    set: &ConfigurationSet,
    link: &LinkParams,
    weighted: bool,
) -> Result<OptimizationResult> {
    if r.h0().norm_sqr() == 0.0 {
        return Err(Error::ZeroDirectChannel);
    }
    let target = phase_of(r.h0());
    let picks: Vec<usize> = r
        .v_phases()
        .iter()
        .map(|&vp| {
            let mut best = 0;
            let mut best_val = f64::NEG_INFINITY;
            for (i, c) in set.iter().enumerate() {
                let val = angle::cos(target - vp - c.alpha());
                let val = if weighted { c.beta() * val } else { val };
                if val > best_val {
                    best = i;
                    best_val = val;
                }
            }
            best
        })
        .collect();
    let h = sum_gains(r.h0(), &gain_table(r, set), set.len(), &picks);
    Ok(OptimizationResult::new(picks, h, link, r.num_elements()))
}

/// Closest-point projection: aligns every element's phase with `∠h₀`,
/// ignoring amplitudes.
pub fn cpp_optimize(
    r: &ChannelRealization,
    set: &ConfigurationSet,
    link: &LinkParams,
) -> Result<OptimizationResult> {
    project_onto(r, set, link, false)
}

/// Maximizes each element's projection onto the direct channel, amplitude
/// included.
pub fn improved_cpp_optimize(
    r: &ChannelRealization,
    set: &ConfigurationSet,
    link: &LinkParams,
) -> Result<OptimizationResult> {
    project_onto(r, set, link, true)
}
