use num_complex::Complex64;

use crate::spectral::unit_phase_average;

/// Real phase attached to a mode triple `(k, k1, k2)` with `k = k1 + k2`,
/// evaluated on physical wavenumbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseFunction {
    /// `k^2 + k1^2 + k2^2`: both factors conjugated.
    ConjugateSquare,
    /// `k^2 - k1^2 - k2^2`: square of the unconjugated function.
    Square,
    /// `k^2 - k1^2 + k2^2`: `k1` from the function, `k2` from its conjugate.
    Modulus,
    /// `2 k2^2 + 2 k k1`.
    ViaFirst,
    /// `2 k1^2 + 2 k k2`.
    ViaSecond,
    /// `2 k^2 - 2 k1 k2`.
    ViaProduct,
}

impl PhaseFunction {
    pub fn eval(&self, kappa: f64, kappa1: f64, kappa2: f64) -> f64 {
        match self {
            PhaseFunction::ConjugateSquare => kappa * kappa + kappa1 * kappa1 + kappa2 * kappa2,
            PhaseFunction::Square => kappa * kappa - kappa1 * kappa1 - kappa2 * kappa2,
            PhaseFunction::Modulus => kappa * kappa - kappa1 * kappa1 + kappa2 * kappa2,
            PhaseFunction::ViaFirst => 2.0 * kappa2 * kappa2 + 2.0 * kappa * kappa1,
            PhaseFunction::ViaSecond => 2.0 * kappa1 * kappa1 + 2.0 * kappa * kappa2,
            PhaseFunction::ViaProduct => 2.0 * kappa * kappa - 2.0 * kappa1 * kappa2,
        }
    }
}

/// `int_0^tau e^{-i s phi} ds`.
///
/// Returns exactly `tau` when `|phi * tau| < 1e-12`; otherwise the closed
/// antiderivative in the cancellation-free form
/// `tau e^{-i phi tau / 2} sin(phi tau / 2) / (phi tau / 2)`.
pub fn phase_integral(phi: f64, tau: f64) -> Complex64 {
    if (phi * tau).abs() < 1e-12 {
        return Complex64::new(tau, 0.0);
    }
    unit_phase_average(phi * tau) * tau
}
