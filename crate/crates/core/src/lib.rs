#![no_std]

//! Globally optimal discrete reflection coefficients for a reconfigurable
//! intelligent surface (RIS) whose amplitude is coupled to its phase shift,
//! and selection of the discrete configuration set itself.
//!
//! The crate only needs [`core`] and [`alloc`]. Everything is linear scale;
//! dB conversion belongs to callers.
//!
//! The pieces, bottom up:
//!
//! * [`channel`]: the coupling law, configuration sets, channel composition
//!   and Shannon capacity.
//! * [`interval`]: wraparound angular intervals, curve intersections, the
//!   nine-case common-range rule and per-curve active intervals.
//! * [`optimize`]: the region sweep that finds the optimum in at most `N·K`
//!   regions, plus the exhaustive oracle and the projection baselines.
//! * [`select`]: the max-cosine envelope integral, grid-based set selection
//!   with mirror compression, and the Monte Carlo baseline.
//! * [`sample`]: seeded channel realizations.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod angle;
pub mod channel;
mod error;
pub mod interval;
pub mod optimize;
pub mod sample;
pub mod select;

pub use channel::{
    capacity, cascaded_gain, coupled_amplitude, overall_channel, ChannelRealization,
    ConfigurationSet, CouplingParams, LinkParams, ReflectionChoice,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use optimize::{
    cpp_optimize, exhaustive_optimize, improved_cpp_optimize, optimize, OptimizationResult,
};
pub use select::{imb_select, mcsb_select, OmegaGrid, OptionIndexSet, SelectionReport};
