//! Convolution-free evaluation of the interaction integrals.
//!
//! Every output mode is an explicit double sum over the mode pairs
//! `k1 + k2 = k` of the exact time integral of its phase. Pairs whose sum
//! falls outside the grid, and the unpaired output mode `-M/2`, are dropped.
//! Cost is O(M^2); these routines exist only to validate the fast closed forms.

use num_complex::Complex64;
use rayon::prelude::*;

use super::phase::{phase_integral, PhaseFunction};
use crate::error::{Error, Result};
use crate::gb::check_zero_mean;
use crate::spectral::{conjugate, Spectrum, TorusGrid};

/// Which of the three quadratic interaction integrals to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interaction {
    /// `int_0^tau e^{is d_xx} (e^{is d_xx} conj f)^2 ds`
    ConjugateSquare,
    /// `int_0^tau e^{is d_xx} (e^{-is d_xx} f)^2 ds`
    Square,
    /// `int_0^tau e^{is d_xx} |e^{-is d_xx} f|^2 ds`
    Modulus,
}

/// Pieces of the resonance decomposition of the conjugate-square integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResonancePiece {
    /// Mean value (mode 0) of the conjugate-square integral.
    Mean,
    /// Weight `k1^2/k^2`, phase `2 k2^2 + 2 k k1`.
    First,
    /// Weight `k2^2/k^2`, phase `2 k1^2 + 2 k k2`.
    Second,
    /// Weight `2 k1 k2/k^2`, phase `2 k^2 - 2 k1 k2`.
    Mixed,
}

/// Remainders left after integrating the dominant parts of the
/// [`ResonancePiece::First`] and [`ResonancePiece::Mixed`] pieces exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Remainder {
    /// `(k1^2/k^2) int (e^{-2is k2^2} - 1)(e^{-2is k k1} - 1) ds`
    First,
    /// `(2 k1 k2/k^2) int (e^{-2is k^2} - 1)(e^{2is k1 k2} - 1) ds`
    Mixed,
}

/// `out_k = sum_{k1 + k2 = k} w(kappa, kappa1, kappa2) a_{k1} b_{k2}`.
fn double_sum<W>(
    a: &Spectrum,
    b: &Spectrum,
    keep_output: impl Fn(i64) -> bool + Sync,
    weight: W,
) -> Spectrum
where
    W: Fn(f64, f64, f64) -> Complex64 + Sync,
{
    let grid: &TorusGrid = a.grid();
    let m = grid.num_points();
    let nyquist = grid.nyquist_mode();
    let coeffs: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|idx| {
            let k = grid.mode_of_index(idx);
            if k == nyquist || !keep_output(k) {
                return Complex64::new(0.0, 0.0);
            }
            let kappa = grid.wavenumber(k);
            let mut acc = Complex64::new(0.0, 0.0);
            // fixed summation order: k1 ascending
            for k1 in nyquist..=grid.max_mode() {
                let k2 = k - k1;
                let Some(idx2) = grid.index_of_mode(k2) else {
                    continue;
                };
                let idx1 = grid.index_of_mode(k1).expect("k1 in range");
                let (a1, b2) = (a.coefficients()[idx1], b.coefficients()[idx2]);
                if a1.norm_sqr() == 0.0 || b2.norm_sqr() == 0.0 {
                    continue;
                }
                acc += weight(kappa, grid.wavenumber(k1), grid.wavenumber(k2)) * a1 * b2;
            }
            acc
        })
        .collect();
    Spectrum::from_coefficients(grid, coeffs).expect("grid-sized")
}

/// Brute-force evaluation of an interaction integral for any `f`.
pub fn oracle_i(which: Interaction, f: &Spectrum, tau: f64) -> Spectrum {
    let fbar = conjugate(f);
    match which {
        Interaction::ConjugateSquare => double_sum(
            &fbar,
            &fbar,
            |_| true,
            |k, k1, k2| phase_integral(PhaseFunction::ConjugateSquare.eval(k, k1, k2), tau),
        ),
        Interaction::Square => double_sum(
            f,
            f,
            |_| true,
            |k, k1, k2| phase_integral(PhaseFunction::Square.eval(k, k1, k2), tau),
        ),
        Interaction::Modulus => double_sum(
            f,
            &fbar,
            |_| true,
            |k, k1, k2| phase_integral(PhaseFunction::Modulus.eval(k, k1, k2), tau),
        ),
    }
}

/// Brute-force evaluation of one piece of the resonance decomposition.
/// `f` must have zero mean.
pub fn oracle_t(which: ResonancePiece, f: &Spectrum, tau: f64) -> Result<Spectrum> {
    check_zero_mean(f)?;
    let fbar = conjugate(f);
    let nonzero = |k: i64| k != 0;
    Ok(match which {
        ResonancePiece::Mean => double_sum(
            &fbar,
            &fbar,
            |k| k == 0,
            |k, k1, k2| phase_integral(PhaseFunction::ConjugateSquare.eval(k, k1, k2), tau),
        ),
        ResonancePiece::First => double_sum(&fbar, &fbar, nonzero, |k, k1, k2| {
            phase_integral(PhaseFunction::ViaFirst.eval(k, k1, k2), tau) * (k1 * k1 / (k * k))
        }),
        ResonancePiece::Second => double_sum(&fbar, &fbar, nonzero, |k, k1, k2| {
            phase_integral(PhaseFunction::ViaSecond.eval(k, k1, k2), tau) * (k2 * k2 / (k * k))
        }),
        ResonancePiece::Mixed => double_sum(&fbar, &fbar, nonzero, |k, k1, k2| {
            phase_integral(PhaseFunction::ViaProduct.eval(k, k1, k2), tau)
                * (2.0 * k1 * k2 / (k * k))
        }),
    })
}

/// Brute-force evaluation of a decomposition remainder. `f` must have zero mean.
pub fn oracle_p(which: Remainder, f: &Spectrum, tau: f64) -> Result<Spectrum> {
    check_zero_mean(f)?;
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::InvalidInput(format!(
            "tau must be non-negative, got {tau}"
        )));
    }
    let fbar = conjugate(f);
    let nonzero = |k: i64| k != 0;
    let width = Complex64::new(tau, 0.0);
    Ok(match which {
        Remainder::First => double_sum(&fbar, &fbar, nonzero, |k, k1, k2| {
            let integral = phase_integral(2.0 * k2 * k2 + 2.0 * k * k1, tau)
                - phase_integral(2.0 * k2 * k2, tau)
                - phase_integral(2.0 * k * k1, tau)
                + width;
            integral * (k1 * k1 / (k * k))
        }),
        Remainder::Mixed => double_sum(&fbar, &fbar, nonzero, |k, k1, k2| {
            let integral = phase_integral(2.0 * k * k - 2.0 * k1 * k2, tau)
                - phase_integral(2.0 * k * k, tau)
                - phase_integral(-2.0 * k1 * k2, tau)
                + width;
            integral * (2.0 * k1 * k2 / (k * k))
        }),
    })
}
