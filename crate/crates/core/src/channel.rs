//! Physical model: the amplitude/phase coupling law, configuration sets,
//! channel composition and capacity.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use num_complex::Complex64;

use crate::angle::{self, normalize, DEDUP_TOL, PI};
use crate::{Error, Result};

/// Constants of the practical amplitude law
/// `β(α) = (1 − β_min)·((sin(α − φ) + 1) / 2)^κ + β_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    beta_min: f64,
    phi: f64,
    kappa: f64,
}

impl CouplingParams {
    pub fn new(beta_min: f64, phi: f64, kappa: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta_min) {
            return Err(Error::InvalidCoupling("beta_min must lie in [0, 1]"));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidCoupling("phi must be finite"));
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidCoupling(
                "kappa must be finite and non-negative",
            ));
        }
        Ok(Self {
            beta_min,
            phi,
            kappa,
        })
    }

    /// β_min = 0.2, φ = 0.43π, κ = 1.6: the measured element used throughout
    /// the reference experiments.
    pub fn practical() -> Self {
        Self {
            beta_min: 0.2,
            phi: 0.43 * PI,
            kappa: 1.6,
        }
    }

    /// Amplitude fixed at one for every phase.
    pub fn uncoupled() -> Self {
        Self {
            beta_min: 1.0,
            phi: 0.0,
            kappa: 0.0,
        }
    }

    pub fn beta_min(&self) -> f64 {
        self.beta_min
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `φ + π/2`, the phase of peak amplitude. The law is mirror-symmetric
    /// about it.
    pub fn symmetry_axis(&self) -> f64 {
        normalize(self.phi + PI / 2.0)
    }

    pub fn amplitude(&self, alpha: f64) -> f64 {
        coupled_amplitude(alpha, self)
    }
}

/// Amplitude of an element whose phase shift is `alpha`, in `[β_min, 1]`.
pub fn coupled_amplitude(alpha: f64, params: &CouplingParams) -> f64 {
    let alpha = normalize(alpha);
    let base = ((angle::sin(alpha - params.phi) + 1.0) / 2.0).clamp(0.0, 1.0);
    let beta = (1.0 - params.beta_min) * libm::pow(base, params.kappa) + params.beta_min;
    beta.clamp(params.beta_min, 1.0)
}

/// One discrete reflection coefficient `β̂·e^{jα̂}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionChoice {
    alpha: f64,
    beta: f64,
}

impl ReflectionChoice {
    /// A choice on the coupling curve.
    pub fn coupled(alpha: f64, params: &CouplingParams) -> Self {
        let alpha = normalize(alpha);
        Self {
            alpha,
            beta: coupled_amplitude(alpha, params),
        }
    }

    /// A choice with an arbitrary amplitude, not tied to any coupling law.
    ///
    /// # Panics
    ///
    /// If `beta` is outside `[0, 1]` or `alpha` is not finite.
    pub fn raw(alpha: f64, beta: f64) -> Self {
        assert!(alpha.is_finite(), "phase must be finite");
        assert!(
            (0.0..=1.0).contains(&beta),
            "amplitude {beta} outside [0, 1]"
        );
        Self {
            alpha: normalize(alpha),
            beta,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn coefficient(&self) -> Complex64 {
        polar(self.beta, self.alpha)
    }

    fn same_as(&self, other: &Self) -> bool {
        angle::circular_distance(self.alpha, other.alpha) < DEDUP_TOL
            && (self.beta - other.beta).abs() < DEDUP_TOL
    }
}

/// The `K` reflection coefficients available to every element, sorted by
/// phase with duplicates removed.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationSet {
    choices: Vec<ReflectionChoice>,
}

impl ConfigurationSet {
    /// Pairs every phase with its coupled amplitude.
    pub fn from_phases(phases: &[f64], params: &CouplingParams) -> Result<Self> {
        build_config_set(phases, params)
    }

    /// Builds a set from arbitrary choices, e.g. off-curve amplitudes.
    pub fn from_choices(choices: impl IntoIterator<Item = ReflectionChoice>) -> Result<Self> {
        let mut choices: Vec<ReflectionChoice> = choices.into_iter().collect();
        if choices.is_empty() {
            return Err(Error::EmptyConfigurationSet);
        }
        choices.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.beta.total_cmp(&b.beta)));
        let mut unique: Vec<ReflectionChoice> = Vec::with_capacity(choices.len());
        for c in choices {
            if !unique.iter().any(|u| u.same_as(&c)) {
                unique.push(c);
            }
        }
        Ok(Self { choices: unique })
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    /// Always false; a set holds at least one choice.
    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn choices(&self) -> &[ReflectionChoice] {
        &self.choices
    }

    pub fn get(&self, index: usize) -> Option<&ReflectionChoice> {
        self.choices.get(index)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, ReflectionChoice> {
        self.choices.iter()
    }
}

impl core::ops::Index<usize> for ConfigurationSet {
    type Output = ReflectionChoice;

    fn index(&self, index: usize) -> &ReflectionChoice {
        &self.choices[index]
    }
}

impl<'a> IntoIterator for &'a ConfigurationSet {
    type Item = &'a ReflectionChoice;
    type IntoIter = core::slice::Iter<'a, ReflectionChoice>;

    fn into_iter(self) -> Self::IntoIter {
        self.choices.iter()
    }
}

/// Builds a configuration set on the coupling curve from a list of phases.
pub fn build_config_set(phases: &[f64], params: &CouplingParams) -> Result<ConfigurationSet> {
    if phases.is_empty() {
        return Err(Error::EmptyConfigurationSet);
    }
    ConfigurationSet::from_choices(phases.iter().map(|&a| ReflectionChoice::coupled(a, params)))
}

/// Direct channel `h₀` and cascaded coefficients `v₁..v_N` of one draw.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    h0: Complex64,
    v: Vec<Complex64>,
    v_phase: Vec<f64>,
}

impl ChannelRealization {
    pub fn new(h0: Complex64, v: Vec<Complex64>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::NoElements);
        }
        if !(h0.re.is_finite() && h0.im.is_finite())
            || v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidMagnitude);
        }
        let v_phase = v.iter().map(|&z| phase_of(z)).collect();
        Ok(Self { h0, v, v_phase })
    }

    /// Builds a realization from `(magnitude, phase)` pairs. Phases are kept
    /// exactly as given (after normalization) instead of being recovered
    /// from the complex value.
    pub fn from_polar(h0: (f64, f64), v: &[(f64, f64)]) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::NoElements);
        }
        let valid = |(m, p): (f64, f64)| m >= 0.0 && m.is_finite() && p.is_finite();
        if !valid(h0) || !v.iter().all(|&e| valid(e)) {
            return Err(Error::InvalidMagnitude);
        }
        Ok(Self {
            h0: polar(h0.0, h0.1),
            v: v.iter().map(|&(m, p)| polar(m, p)).collect(),
            v_phase: v.iter().map(|&(_, p)| normalize(p)).collect(),
        })
    }

    pub fn h0(&self) -> Complex64 {
        self.h0
    }

    pub fn v(&self) -> &[Complex64] {
        &self.v
    }

    /// `∠v_n` for every element, on `[0, 2π)`.
    pub fn v_phases(&self) -> &[f64] {
        &self.v_phase
    }

    pub fn num_elements(&self) -> usize {
        self.v.len()
    }
}

/// Bandwidth and the combined power ratio `P / (B·N₀)`, both linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    bandwidth_hz: f64,
    snr_scale: f64,
}

impl LinkParams {
    pub fn new(bandwidth_hz: f64, snr_scale: f64) -> Result<Self> {
        if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
            return Err(Error::InvalidLink("bandwidth must be positive"));
        }
        if !(snr_scale > 0.0 && snr_scale.is_finite()) {
            return Err(Error::InvalidLink("snr scale must be positive"));
        }
        Ok(Self {
            bandwidth_hz,
            snr_scale,
        })
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_hz
    }

    pub fn snr_scale(&self) -> f64 {
        self.snr_scale
    }
}

impl Default for LinkParams {
    /// 1 MHz and a 100 dB power ratio.
    fn default() -> Self {
        Self {
            bandwidth_hz: 1e6,
            snr_scale: 1e10,
        }
    }
}

/// `g = v·β̂·e^{jα̂}`.
pub fn cascaded_gain(v: Complex64, choice: &ReflectionChoice) -> Complex64 {
    v * choice.coefficient()
}

/// `h = h₀ + Σ_n v_n·θ_{picks[n]}`.
pub fn overall_channel(
    r: &ChannelRealization,
    set: &ConfigurationSet,
    picks: &[usize],
) -> Result<Complex64> {
    if picks.len() != r.num_elements() {
        return Err(Error::PickCountMismatch {
            expected: r.num_elements(),
            got: picks.len(),
        });
    }
    let mut h = r.h0;
    for (&v, &p) in r.v.iter().zip(picks) {
        let choice = set.get(p).ok_or(Error::ChoiceOutOfRange {
            index: p,
            len: set.len(),
        })?;
        h += cascaded_gain(v, choice);
    }
    Ok(h)
}

/// Shannon capacity `B·log₂(1 + snr_scale·|h|²)` in bits/s.
pub fn capacity(h: Complex64, link: &LinkParams) -> f64 {
    link.bandwidth_hz * libm::log1p(link.snr_scale * h.norm_sqr()) / LN_2
}

pub(crate) fn polar(mag: f64, phase: f64) -> Complex64 {
    Complex64::new(mag * angle::cos(phase), mag * angle::sin(phase))
}

pub(crate) fn phase_of(z: Complex64) -> f64 {
    normalize(angle::atan2(z.im, z.re))
}

pub(crate) fn magnitude(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}
