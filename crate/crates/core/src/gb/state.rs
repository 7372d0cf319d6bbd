use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{conjugate, fourier_multiplier, GridField, Spectrum, Symbol, TorusGrid};

/// State advanced by the integrator: the zero-mean complex unknown `u`,
/// the mean velocity `a`, the initial mean `b` and the current time.
#[derive(Clone, Debug)]
pub struct EvolutionState {
    pub u: Spectrum,
    pub a: f64,
    pub b: f64,
    pub t: f64,
}

impl EvolutionState {
    /// Mode 0 of `u` is zeroed.
    pub fn new(mut u: Spectrum, a: f64, b: f64, t: f64) -> Self {
        u.zero_mean();
        Self { u, a, b, t }
    }

    pub fn grid(&self) -> &TorusGrid {
        self.u.grid()
    }

    /// `a t + b`, the mean of `z` at the current time.
    pub fn mean_height(&self) -> f64 {
        self.a * self.t + self.b
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.t.is_finite()
    }
}

/// Physical pair `(z, z_t)` sampled on the grid at time `t`.
#[derive(Clone, Debug)]
pub struct GbState {
    pub z: GridField,
    pub z_t: GridField,
    pub t: f64,
}

impl GbState {
    pub fn new(z: GridField, z_t: GridField, t: f64) -> Result<Self> {
        if !z.grid().same_as(z_t.grid()) {
            return Err(Error::InvalidInput(
                "z and z_t live on different grids".into(),
            ));
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "time must be non-negative, got {t}"
            )));
        }
        Ok(Self { z, z_t, t })
    }

    pub fn from_real(grid: &TorusGrid, z: &[f64], z_t: &[f64], t: f64) -> Result<Self> {
        Self::new(
            GridField::from_real(grid, z)?,
            GridField::from_real(grid, z_t)?,
            t,
        )
    }

    pub fn grid(&self) -> &TorusGrid {
        self.z.grid()
    }

    /// Largest imaginary part over both fields.
    pub fn max_imag(&self) -> f64 {
        self.z.max_imag().max(self.z_t.max_imag())
    }
}

const REALNESS_TOL: f64 = 1e-10;

fn require_real(field: &GridField, name: &str) -> Result<()> {
    let imag = field.max_imag();
    if imag > REALNESS_TOL * field.max_abs().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "{name} must be real-valued, imaginary part reaches {imag:e}"
        )));
    }
    Ok(())
}

/// Splits off the mean and builds `u = z_check - i <d_xx>^{-1} z_t_check`.
///
/// `a` is the mean of `z_t` and `b = mean(z) - a t`, so at `t = 0` `b` is
/// the mean of `z`.
pub fn homogenize(initial: &GbState) -> Result<EvolutionState> {
    require_real(&initial.z, "z")?;
    require_real(&initial.z_t, "z_t")?;
    let mut z_hat = initial.z.to_spectrum();
    let mut zt_hat = initial.z_t.to_spectrum();
    let a = zt_hat.mean().re;
    let b = z_hat.mean().re - a * initial.t;
    z_hat.zero_mean();
    zt_hat.zero_mean();
    let velocity_part = fourier_multiplier(&zt_hat, Symbol::BracketInv)?;
    let u = &z_hat - &velocity_part.scale(Complex64::new(0.0, 1.0));
    Ok(EvolutionState::new(u, a, b, initial.t))
}

/// `z = (u + conj u)/2 + a t + b`, `z_t = (i/2) <d_xx> (u - conj u) + a`.
pub fn recover_state(s: &EvolutionState) -> GbState {
    let ubar = conjugate(&s.u);
    let mut z_hat = (&s.u + &ubar).scale_real(0.5);
    let diff = &s.u - &ubar;
    let mut zt_hat = fourier_multiplier(&diff, Symbol::Bracket)
        .expect("bracket symbol is finite everywhere")
        .scale(Complex64::new(0.0, 0.5));
    z_hat.coefficients_mut()[0] += Complex64::new(s.mean_height(), 0.0);
    zt_hat.coefficients_mut()[0] += Complex64::new(s.a, 0.0);
    GbState {
        z: z_hat.to_field(),
        z_t: zt_hat.to_field(),
        t: s.t,
    }
}
