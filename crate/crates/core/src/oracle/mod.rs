//! Slow, independent ground truth for the integrator.

mod phase;
mod reference;
mod sums;

pub use phase::{phase_integral, PhaseFunction};
pub use reference::{reference_evolve, ReferenceMethod};
pub use sums::{oracle_i, oracle_p, oracle_t, Interaction, Remainder, ResonancePiece};
