use super::state::EvolutionState;
use super::terms::LreiKernel;
use crate::error::{Error, Result};

/// Callback receiving `(step index, state after that step)`.
pub type Observer<'a> = &'a mut dyn FnMut(usize, &EvolutionState);

/// One step of the first-order integrator.
pub fn step(s: &EvolutionState, tau: f64) -> Result<EvolutionState> {
    LreiKernel::new(s.grid(), tau)?.step(s)
}

/// `n_steps` applications of [`step`].
///
/// Times are set to `s0.t + n tau` rather than accumulated, so the source
/// term `a t_n + b` does not drift over long runs. The observer, if any, sees
/// every intermediate state (indices `1..=n_steps`).
pub fn evolve(
    s0: &EvolutionState,
    tau: f64,
    n_steps: usize,
    mut observer: Option<Observer<'_>>,
) -> Result<EvolutionState> {
    if n_steps == 0 {
        return Ok(s0.clone());
    }
    let kernel = LreiKernel::new(s0.grid(), tau)?;
    let mut state = s0.clone();
    for n in 1..=n_steps {
        state = kernel.step(&state).map_err(|err| match err {
            // a blown-up state fails the zero-mean check before it is caught below
            Error::Precondition(_) if !state.is_finite() => Error::Divergence { step: n - 1 },
            other => other,
        })?;
        state.t = s0.t + n as f64 * tau;
        if !state.is_finite() {
            return Err(Error::Divergence { step: n });
        }
        if let Some(obs) = observer.as_mut() {
            obs(n, &state);
        }
    }
    Ok(state)
}
