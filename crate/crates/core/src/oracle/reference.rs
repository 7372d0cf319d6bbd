use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gb::{evolve, EvolutionState};
use crate::spectral::{apply_table, conjugate, square, Spectrum, Symbol};

/// Time integrator used to produce reference solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceMethod {
    /// Classical RK4 on the twisted variable `e^{-it<d_xx>} u`.
    IntegratingFactorRk4,
    /// The first-order integrator itself with a tiny step.
    FineStep,
}

/// Advances `s0` to `s0.t + t_final` with steps of `tau_ref`.
///
/// `tau_ref` must divide `t_final` to within `1e-9` relative.
pub fn reference_evolve(
    s0: &EvolutionState,
    t_final: f64,
    tau_ref: f64,
    method: ReferenceMethod,
) -> Result<EvolutionState> {
    if !(tau_ref.is_finite() && tau_ref > 0.0) {
        return Err(Error::InvalidInput(format!(
            "reference step must be positive, got {tau_ref}"
        )));
    }
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "final time must be non-negative, got {t_final}"
        )));
    }
    let n_steps = (t_final / tau_ref).round();
    if (n_steps * tau_ref - t_final).abs() > 1e-9 * t_final.max(tau_ref) {
        return Err(Error::InvalidInput(format!(
            "reference step {tau_ref} does not divide {t_final}"
        )));
    }
    let n_steps = n_steps as usize;
    match method {
        ReferenceMethod::FineStep => evolve(s0, tau_ref, n_steps, None),
        ReferenceMethod::IntegratingFactorRk4 => lawson_rk4(s0, tau_ref, n_steps),
    }
}

/// `u_t - i<d_xx> u = -i B [ z^2 + 2 m(t) z ]` with `z = (u + conj u)/2`.
struct Rhs {
    op_b: Vec<Complex64>,
    a: f64,
    b: f64,
}

impl Rhs {
    fn eval(&self, u: &Spectrum, t: f64) -> Spectrum {
        let z = (u + &conjugate(u)).scale_real(0.5);
        let mean = self.a * t + self.b;
        let forcing = &square(&z) + &z.scale_real(2.0 * mean);
        let mut out = apply_table(&forcing, &self.op_b);
        for c in out.coefficients_mut() {
            *c *= Complex64::new(0.0, -1.0);
        }
        out
    }
}

fn lawson_rk4(s0: &EvolutionState, h: f64, n_steps: usize) -> Result<EvolutionState> {
    let grid = s0.grid();
    let half = Symbol::ExpItBracket(0.5 * h).table(grid)?;
    let full = Symbol::ExpItBracket(h).table(grid)?;
    let rhs = Rhs {
        op_b: Symbol::OpB.table(grid)?,
        a: s0.a,
        b: s0.b,
    };
    let axpy = |x: &Spectrum, alpha: f64, y: &Spectrum| x + &y.scale_real(alpha);

    let mut u = s0.u.clone();
    for n in 0..n_steps {
        let t = s0.t + n as f64 * h;
        let k1 = rhs.eval(&u, t);
        let k2 = rhs.eval(&apply_table(&axpy(&u, 0.5 * h, &k1), &half), t + 0.5 * h);
        let u_half = apply_table(&u, &half);
        let k3 = rhs.eval(&axpy(&u_half, 0.5 * h, &k2), t + 0.5 * h);
        let k4 = rhs.eval(
            &axpy(&apply_table(&u, &full), h, &apply_table(&k3, &half)),
            t + h,
        );
        let mid = apply_table(&(&k2 + &k3), &half).scale_real(2.0);
        let incr = &(&apply_table(&k1, &full) + &mid) + &k4;
        u = axpy(&apply_table(&u, &full), h / 6.0, &incr);
        u.zero_mean();
        if !u.is_finite() {
            return Err(Error::Divergence { step: n + 1 });
        }
    }
    Ok(EvolutionState::new(
        u,
        s0.a,
        s0.b,
        s0.t + n_steps as f64 * h,
    ))
}
