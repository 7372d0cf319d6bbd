//! Periodic grids, Fourier transforms and Fourier-multiplier operators.
//!
//! Everything here is value-semantic. FFT plans are shared through the
//! grid and scratch space is allocated per call, so spectra and fields can be
//! moved freely between threads.

mod field;
mod grid;
mod ops;
mod symbol;

pub use field::{from_spectrum, to_spectrum, GridField, Spectrum};
pub use grid::TorusGrid;
pub use ops::{
    apply_table, apply_table_in_place, conjugate, fourier_multiplier, pointwise_product,
    sobolev_norm, square,
};
pub use symbol::{Symbol, ZeroMode};

pub(crate) use symbol::unit_phase_average;
