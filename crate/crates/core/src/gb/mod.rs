//! The "good" Boussinesq pipeline.
//!
//! The equation `z_tt + z_xxxx - z_xx - (z^2)_xx = 0` is split into its
//! mean, which evolves exactly as `a t + b`, and a zero-mean part carried by
//! the complex unknown `u = z - b - a t - i <d_xx>^{-1} (z_t - a)`. The
//! first-order integrator advances `u` with every interaction integral
//! evaluated in closed form through FFT products.

mod regularity;
mod state;
mod stepper;
mod terms;

pub use regularity::{regularity_requirement, RegularityRequirement};
pub use state::{homogenize, recover_state, EvolutionState, GbState};
pub use stepper::{evolve, step, Observer};
pub use terms::{eval_i1, eval_i2, eval_l_terms, eval_t0, LTerms, LreiKernel, StepTerms};

use crate::error::{Error, Result};
use crate::spectral::Spectrum;

/// Mode-0 threshold for the zero-mean precondition of the closed forms.
pub const ZERO_MEAN_TOL: f64 = 1e-12;

/// Rejects spectra whose mean exceeds [`ZERO_MEAN_TOL`] (relative to the
/// spectrum's size when that exceeds one).
pub fn check_zero_mean(f: &Spectrum) -> Result<()> {
    let mean = f.mean().norm();
    if mean > ZERO_MEAN_TOL * f.l2_norm().max(1.0) {
        return Err(Error::Precondition(format!(
            "mode 0 must vanish, found |f_0| = {mean:e}"
        )));
    }
    Ok(())
}
