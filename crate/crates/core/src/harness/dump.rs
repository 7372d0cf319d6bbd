use std::fmt::Write as _;

use super::config::ExperimentConfig;
use super::study::build_initial;
use crate::error::Result;
use crate::gb::LreiKernel;

/// One step from the configured initial state, term by term.
///
/// Output is CSV `term,k,re,im` over every mode of `u`, each closed-form
/// term of the step and the updated unknown `u_next`.
pub fn step_dump(cfg: &ExperimentConfig, tau: f64) -> Result<String> {
    let s0 = build_initial(cfg)?;
    let kernel = LreiKernel::new(s0.grid(), tau)?;
    let terms = kernel.terms(&s0.u)?;
    let next = kernel.step(&s0)?;

    let mut out = String::new();
    let _ = writeln!(out, "# tau = {tau}");
    for (k, v) in cfg.metadata() {
        let _ = writeln!(out, "# {k} = {v}");
    }
    out.push_str("term,k,re,im\n");
    let mut emit = |name: &str, spec: &crate::spectral::Spectrum| {
        let mut modes: Vec<_> = spec.modes().collect();
        modes.sort_by_key(|(k, _)| *k);
        for (k, c) in modes {
            let _ = writeln!(out, "{name},{k},{:.15e},{:.15e}", c.re, c.im);
        }
    };
    emit("u", &s0.u);
    for (name, spec) in terms.named() {
        emit(name, spec);
    }
    emit("u_next", &next.u);
    Ok(out)
}
