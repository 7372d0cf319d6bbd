//! Initial states for the two experiment families: the exact soliton and
//! seeded random data of prescribed regularity.
//!
//! Rough data is drawn from ChaCha20 seeded with `seed`; stream 0 feeds `z`
//! and stream 1 feeds `z_t`. Each stream yields the `M` node samples in node
//! order followed by the shift `c`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::gb::GbState;
use crate::spectral::{GridField, TorusGrid};

/// Largest soliton magnitude tolerated at `x = +-half_length`.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolitonParams {
    pub omega: f64,
    pub zeta0: f64,
    /// `+1` or `-1`.
    pub velocity_sign: f64,
}

impl SolitonParams {
    pub fn new(omega: f64, zeta0: f64, velocity_sign: f64) -> Result<Self> {
        if !(omega > 0.0 && omega <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "omega must lie in (0, 1], got {omega}"
            )));
        }
        if !zeta0.is_finite() {
            return Err(Error::InvalidInput("zeta0 must be finite".into()));
        }
        if velocity_sign != 1.0 && velocity_sign != -1.0 {
            return Err(Error::InvalidInput(format!(
                "velocity sign must be +1 or -1, got {velocity_sign}"
            )));
        }
        Ok(Self {
            omega,
            zeta0,
            velocity_sign,
        })
    }

    /// `A = 3 omega^2 / 2`.
    pub fn amplitude(&self) -> f64 {
        1.5 * self.omega * self.omega
    }

    /// `v = +-sqrt(1 - omega^2)`.
    pub fn speed(&self) -> f64 {
        self.velocity_sign * (1.0 - self.omega * self.omega).sqrt()
    }

    fn phase(&self, x: f64, t: f64) -> f64 {
        0.5 * self.omega * (x - self.speed() * t + self.zeta0)
    }

    /// `z(x, t) = -A sech^2((omega/2)(x - v t + zeta0))`.
    pub fn height(&self, x: f64, t: f64) -> f64 {
        let s = 1.0 / self.phase(x, t).cosh();
        -self.amplitude() * s * s
    }

    /// Exact time derivative of [`Self::height`].
    pub fn velocity(&self, x: f64, t: f64) -> f64 {
        let th = self.phase(x, t);
        let s = 1.0 / th.cosh();
        -self.amplitude() * self.omega * self.speed() * s * s * th.tanh()
    }
}

/// Soliton sampled on `grid` at time `t`, without the boundary check.
pub fn soliton_state_unchecked(p: &SolitonParams, t: f64, grid: &TorusGrid) -> Result<GbState> {
    GbState::new(
        GridField::from_fn(grid, |x| p.height(x, t)),
        GridField::from_fn(grid, |x| p.velocity(x, t)),
        t,
    )
}

/// Soliton sampled on `grid` at time `t`.
///
/// Fails with [`Error::BoundaryDecay`] when the profile has not decayed below
/// [`BOUNDARY_TOL`] at the ends of the domain, since the periodic grid would
/// then wrap a visible jump.
pub fn soliton_state(p: &SolitonParams, t: f64, grid: &TorusGrid) -> Result<GbState> {
    let l = grid.half_length();
    let magnitude = p.height(-l, t).abs().max(p.height(l, t).abs());
    if magnitude >= BOUNDARY_TOL {
        return Err(Error::BoundaryDecay { magnitude });
    }
    soliton_state_unchecked(p, t, grid)
}

/// Regularity of the generated velocity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RoughVelocity {
    /// Same recipe as `z` with exponent `theta_velocity`.
    Sobolev(f64),
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoughParams {
    pub theta: f64,
    pub seed: u64,
    pub velocity: RoughVelocity,
}

impl RoughParams {
    /// Velocity exponent defaults to `theta - 2`.
    pub fn new(theta: f64, seed: u64) -> Result<Self> {
        Self::with_velocity(theta, seed, RoughVelocity::Sobolev(theta - 2.0))
    }

    pub fn with_velocity(theta: f64, seed: u64, velocity: RoughVelocity) -> Result<Self> {
        if theta.is_nan() || theta <= 0.5 || theta.is_infinite() {
            return Err(Error::InvalidInput(format!(
                "theta must exceed 1/2, got {theta}"
            )));
        }
        if let RoughVelocity::Sobolev(s) = velocity {
            if !s.is_finite() {
                return Err(Error::InvalidInput(
                    "velocity exponent must be finite".into(),
                ));
            }
        }
        Ok(Self {
            theta,
            seed,
            velocity,
        })
    }
}

fn rough_field(grid: &TorusGrid, exponent: f64, seed: u64, stream: u64) -> GridField {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let samples: Vec<f64> = (0..grid.num_points())
        .map(|_| rng.random::<f64>())
        .collect();
    let c: f64 = rng.random();

    let mut z1 = GridField::from_real(grid, &samples)
        .expect("grid-sized")
        .to_spectrum();
    for (idx, coeff) in z1.coefficients_mut().iter_mut().enumerate() {
        let k = grid.mode_of_index(idx);
        *coeff = if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            *coeff * (k.unsigned_abs() as f64).powf(-exponent)
        };
    }
    let z1: Vec<f64> = z1.to_field().real_parts();
    let shift = c * z1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let shifted: Vec<f64> = z1.iter().map(|v| v + shift).collect();
    let norm = GridField::from_real(grid, &shifted)
        .expect("grid-sized")
        .to_spectrum()
        .l2_norm();
    let scaled: Vec<f64> = shifted.iter().map(|v| v / norm).collect();
    GridField::from_real(grid, &scaled).expect("grid-sized")
}

/// Seeded random state on the standard torus.
///
/// `Z` is uniform on `[0, 1)` at each node, `Z1 = |d_x|^{-theta} Z` with the
/// zero mode removed, and `z = (Z1 + c max|Z1|) / ||Z1 + c max|Z1|||` in the
/// coefficient `L^2` norm.
pub fn rough_state(p: &RoughParams, grid: &TorusGrid) -> Result<GbState> {
    if grid.half_length() != std::f64::consts::PI {
        return Err(Error::InvalidInput(format!(
            "rough data lives on [-pi, pi], grid half-length is {}",
            grid.half_length()
        )));
    }
    let z = rough_field(grid, p.theta, p.seed, 0);
    let z_t = match p.velocity {
        RoughVelocity::Sobolev(s) => rough_field(grid, s, p.seed, 1),
        RoughVelocity::Zero => GridField::constant(grid, 0.0),
    };
    GbState::new(z, z_t, 0.0)
}
