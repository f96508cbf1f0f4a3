//! Seeded channel draws.
//!
//! Generator: ChaCha8 (`rand_chacha` 0.9), seeded with `seed_from_u64(seed)`.
//! Replicate `r` reads from ChaCha stream `r`; element `n` takes the `n`-th
//! 64-bit word of that stream. Channel draws therefore depend only on
//! `(seed, replicate, element)`, never on which methods run or how many
//! elements a sweep point uses.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::angle::{normalize, TWO_PI};
use crate::channel::ChannelRealization;
use crate::{Error, Result};

/// Name and version of the draw scheme above, recorded alongside results.
pub const GENERATOR_ID: &str = "chacha8-stream-per-replicate-v1";

/// Uniform on `[0, 1)` from the top 53 bits.
pub fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform phase on `[0, 2π)`.
pub fn uniform_phase<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    normalize(unit_f64(rng) * TWO_PI)
}

/// Magnitudes and direct-path phase shared by every draw. Linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub elements: usize,
    pub v_magnitude: f64,
    pub h0_magnitude: f64,
    pub h0_phase: f64,
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        if self.elements == 0 {
            return Err(Error::NoElements);
        }
        let ok = |m: f64| m >= 0.0 && m.is_finite();
        if !ok(self.v_magnitude) || !ok(self.h0_magnitude) || !self.h0_phase.is_finite() {
            return Err(Error::InvalidMagnitude);
        }
        Ok(())
    }
}

/// One realization: equal `|v_n|`, i.i.d. uniform `∠v_n`, fixed `h₀`.
pub fn gen_realization<R: RngCore + ?Sized>(
    rng: &mut R,
    n: usize,
    v_magnitude: f64,
    h0_magnitude: f64,
    h0_phase: f64,
) -> Result<ChannelRealization> {
    let v: Vec<(f64, f64)> = (0..n).map(|_| (v_magnitude, uniform_phase(rng))).collect();
    ChannelRealization::from_polar((h0_magnitude, h0_phase), &v)
}

/// Replicate-indexed realizations from one master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizationStream {
    seed: u64,
}

impl RealizationStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The generator positioned at the start of replicate `replicate`.
    pub fn rng(&self, replicate: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(replicate);
        rng
    }

    pub fn realization(&self, replicate: u64, spec: &ChannelSpec) -> Result<ChannelRealization> {
        spec.validate()?;
        gen_realization(
            &mut self.rng(replicate),
            spec.elements,
            spec.v_magnitude,
            spec.h0_magnitude,
            spec.h0_phase,
        )
    }

    /// Replicates `0..count`.
    pub fn realizations(
        &self,
        count: usize,
        spec: &ChannelSpec,
    ) -> Result<Vec<ChannelRealization>> {
        (0..count as u64)
            .map(|r| self.realization(r, spec))
            .collect()
    }
}
