//! Circular-interval algebra on the phase of the optimal channel.
//!
//! Every choice `i` of element `n` contributes a projection curve
//! `β̂_i·cos(x − ∠v_n − α̂_i)` over `x ∈ [0, 2π)`. The optimal choice at `x` is
//! the curve on top of the upper envelope. Each curve is on top over at most
//! one arc (its *active interval*), so the envelope is described by at most
//! `K` breakpoints per element.

use alloc::vec::Vec;

use crate::angle::{self, circular_distance, normalize, DEDUP_TOL, PI, TWO_PI};
use crate::channel::{ConfigurationSet, ReflectionChoice};

/// Amplitudes below this make two curves indistinguishable.
const COINCIDENT_TOL: f64 = 1e-12;

/// A closed arc `[left, right]` on `[0, 2π)`.
///
/// With `left < right` it is the plain interval; with `left > right` it wraps
/// through zero and means `[left, 2π) ∪ [0, right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularInterval {
    left: f64,
    right: f64,
}

impl AngularInterval {
    /// Normalizes both ends. Returns `None` when they coincide (within
    /// 1e-12 around the circle); a full circle is not an `AngularInterval`.
    pub fn new(left: f64, right: f64) -> Option<Self> {
        let (left, right) = (normalize(left), normalize(right));
        if circular_distance(left, right) < DEDUP_TOL {
            None
        } else {
            Some(Self { left, right })
        }
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    pub fn is_wrapping(&self) -> bool {
        self.left > self.right
    }

    pub fn length(&self) -> f64 {
        if self.is_wrapping() {
            TWO_PI - self.left + self.right
        } else {
            self.right - self.left
        }
    }

    /// Closed-arc membership for an angle on `[0, 2π)`.
    pub fn contains(&self, x: f64) -> bool {
        let x = normalize(x);
        if self.is_wrapping() {
            x >= self.left || x <= self.right
        } else {
            x >= self.left && x <= self.right
        }
    }

    /// The point halfway along the arc.
    pub fn midpoint(&self) -> f64 {
        normalize(self.left + self.length() / 2.0)
    }

    /// The other arc sharing both endpoints.
    pub fn complement(&self) -> Self {
        Self {
            left: self.right,
            right: self.left,
        }
    }
}

/// Element and choice behind one projection curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveId {
    pub element: usize,
    pub choice: usize,
}

/// `β̂·cos(x − ∠v − α̂)`.
pub fn curve_value(x: f64, choice: &ReflectionChoice, v_phase: f64) -> f64 {
    choice.beta() * angle::cos(x - v_phase - choice.alpha())
}

/// Where two projection curves of the same element cross.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Intersections {
    /// Both crossings in ascending order, exactly π apart.
    Points(f64, f64),
    /// The curves are the same sinusoid.
    Coincident,
}

/// Crossings of `β̂_i·cos(x − ∠g_i)` and `β̂_l·cos(x − ∠g_l)` with
/// `∠g = v_phase + α̂`.
///
/// The difference of the curves is `A·cos x + B·sin x`; its zeros are found
/// with `atan2(−A, B)` so vertical-tangent configurations need no division.
pub fn curve_intersections(
    choice_i: &ReflectionChoice,
    choice_l: &ReflectionChoice,
    v_phase: f64,
) -> Intersections {
    let gi = v_phase + choice_i.alpha();
    let gl = v_phase + choice_l.alpha();
    let y = choice_l.beta() * angle::cos(gl) - choice_i.beta() * angle::cos(gi);
    let x = choice_i.beta() * angle::sin(gi) - choice_l.beta() * angle::sin(gl);
    if y.abs() < COINCIDENT_TOL && x.abs() < COINCIDENT_TOL {
        return Intersections::Coincident;
    }
    let root = normalize(angle::atan2(y, x));
    let first = if root >= PI { root - PI } else { root };
    Intersections::Points(first, first + PI)
}

/// Which of the nine rows of the common-range table a pair of intervals
/// falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrcCase {
    /// Both plain, overlapping.
    I,
    /// Both plain, disjoint.
    II,
    /// Both wrapping.
    III,
    /// First wraps, second plain, disjoint.
    IV,
    /// First wraps, second plain, second reaches into the upper piece.
    V,
    /// First wraps, second plain, second starts inside the lower piece.
    VI,
    /// First plain, second wraps, disjoint.
    VII,
    /// First plain, second wraps, first starts inside the lower piece.
    VIII,
    /// First plain, second wraps, first reaches into the upper piece.
    IX,
    /// Boundary contact only (an endpoint equality no row covers).
    Touching,
}

/// Classifies a pair of intervals against the common-range table.
///
/// When both mixed-type conditions hold at once the two arcs overlap at both
/// ends; that happens only when their lengths sum past 2π and is resolved to
/// the row that keeps the overlap reaching the higher angles (V, or its
/// mirror IX) so the result stays symmetric.
pub fn crc_case(a: &AngularInterval, b: &AngularInterval) -> CrcCase {
    let (l1, r1, l2, r2) = (a.left, a.right, b.left, b.right);
    match (a.is_wrapping(), b.is_wrapping()) {
        (false, false) => {
            if l1.max(l2) < r1.min(r2) {
                CrcCase::I
            } else if l1.max(l2) > r1.min(r2) {
                CrcCase::II
            } else {
                CrcCase::Touching
            }
        }
        (true, true) => CrcCase::III,
        (true, false) => {
            if r2 < l1 && r1 < l2 {
                CrcCase::IV
            } else if r2 > l1 {
                CrcCase::V
            } else if l2 < r1 {
                CrcCase::VI
            } else {
                CrcCase::Touching
            }
        }
        (false, true) => {
            if r2 < l1 && r1 < l2 {
                CrcCase::VII
            } else if l2 < r1 {
                CrcCase::IX
            } else if r2 > l1 {
                CrcCase::VIII
            } else {
                CrcCase::Touching
            }
        }
    }
}

/// The common range of two arcs, or `None` when they share no arc.
pub fn common_range(a: &AngularInterval, b: &AngularInterval) -> Option<AngularInterval> {
    let (l1, r1, l2, r2) = (a.left, a.right, b.left, b.right);
    let (left, right) = match crc_case(a, b) {
        CrcCase::I | CrcCase::III => (l1.max(l2), r1.min(r2)),
        CrcCase::V | CrcCase::IX => (l1.max(l2), r1.max(r2)),
        CrcCase::VI | CrcCase::VIII => (l1.min(l2), r1.min(r2)),
        CrcCase::II | CrcCase::IV | CrcCase::VII | CrcCase::Touching => return None,
    };
    AngularInterval::new(left, right)
}

/// Arc on which one curve beats another.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dominance {
    Arc(AngularInterval),
    EverywhereTied,
}

/// The arc where curve `i` lies strictly above curve `l`.
///
/// # Panics
///
/// If either index is out of range for `set`.
pub fn dominance_interval(i: usize, l: usize, set: &ConfigurationSet, v_phase: f64) -> Dominance {
    dominance_between(&set[i], &set[l], v_phase)
}

fn dominance_between(ci: &ReflectionChoice, cl: &ReflectionChoice, v_phase: f64) -> Dominance {
    match curve_intersections(ci, cl, v_phase) {
        Intersections::Coincident => Dominance::EverywhereTied,
        Intersections::Points(q, q_pi) => {
            let mid = q + PI / 2.0;
            let arc = AngularInterval {
                left: q,
                right: q_pi,
            };
            if curve_value(mid, ci, v_phase) > curve_value(mid, cl, v_phase) {
                Dominance::Arc(arc)
            } else {
                Dominance::Arc(arc.complement())
            }
        }
    }
}

/// Where a curve sits on top of the envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActiveInterval {
    /// On top everywhere (a single curve, or all others coincide with it).
    FullCircle,
    Arc(AngularInterval),
}

/// The active interval of curve `i`: the common range of its dominance arcs
/// against every other curve. `None` when the curve is never on top.
///
/// A curve that coincides with another is kept only for the lower of the two
/// indices.
pub fn active_interval(i: usize, set: &ConfigurationSet, v_phase: f64) -> Option<ActiveInterval> {
    let ci = &set[i];
    let mut acc: Option<AngularInterval> = None;
    for (l, cl) in set.iter().enumerate() {
        if l == i {
            continue;
        }
        match dominance_between(ci, cl, v_phase) {
            Dominance::EverywhereTied if i < l => {}
            Dominance::EverywhereTied => return None,
            Dominance::Arc(arc) => {
                acc = Some(match acc {
                    None => arc,
                    Some(prev) => common_range(&prev, &arc)?,
                });
            }
        }
    }
    Some(match acc {
        None => ActiveInterval::FullCircle,
        Some(arc) => ActiveInterval::Arc(arc),
    })
}

/// A breakpoint of the envelope: `choice` is on top up to and including
/// `right`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveIntersection {
    pub choice: usize,
    pub right: f64,
}

/// All breakpoints of one element's envelope.
#[derive(Debug, Clone, PartialEq)]
pub enum ActiveIntersectionList {
    /// No breakpoints: `choice` is optimal for every phase.
    FullCircle { choice: usize },
    /// Sorted by `right`; choice `entries[j]` owns `(entries[j-1].right, entries[j].right]`
    /// and the first entry also owns the wrap from the last boundary.
    Boundaries(Vec<ActiveIntersection>),
}

impl ActiveIntersectionList {
    pub fn len(&self) -> usize {
        match self {
            Self::FullCircle { .. } => 1,
            Self::Boundaries(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full_circle(&self) -> bool {
        matches!(self, Self::FullCircle { .. })
    }

    pub fn boundaries(&self) -> impl Iterator<Item = f64> + '_ {
        let slice: &[ActiveIntersection] = match self {
            Self::FullCircle { .. } => &[],
            Self::Boundaries(b) => b,
        };
        slice.iter().map(|e| e.right)
    }

    /// The choice on top at phase `x` according to the breakpoints.
    pub fn choice_at(&self, x: f64) -> usize {
        match self {
            Self::FullCircle { choice } => *choice,
            Self::Boundaries(b) => {
                let x = normalize(x);
                b.iter().find(|e| x <= e.right).unwrap_or(&b[0]).choice
            }
        }
    }
}

/// Breakpoints of the envelope of `set` for an element with phase `v_phase`.
pub fn active_intersections(set: &ConfigurationSet, v_phase: f64) -> ActiveIntersectionList {
    if set.len() == 1 {
        return ActiveIntersectionList::FullCircle { choice: 0 };
    }
    let mut entries = Vec::with_capacity(set.len());
    for i in 0..set.len() {
        match active_interval(i, set, v_phase) {
            Some(ActiveInterval::FullCircle) => {
                return ActiveIntersectionList::FullCircle { choice: i };
            }
            Some(ActiveInterval::Arc(arc)) => entries.push(ActiveIntersection {
                choice: i,
                right: arc.right,
            }),
            None => {}
        }
    }
    entries.sort_by(|a, b| a.right.total_cmp(&b.right));
    ActiveIntersectionList::Boundaries(entries)
}

/// Active intervals of every curve, for callers that need the arcs
/// themselves rather than just their right ends.
pub fn active_intervals(set: &ConfigurationSet, v_phase: f64) -> Vec<(usize, ActiveInterval)> {
    if set.len() == 1 {
        return alloc::vec![(0, ActiveInterval::FullCircle)];
    }
    (0..set.len())
        .filter_map(|i| active_interval(i, set, v_phase).map(|a| (i, a)))
        .collect()
}
