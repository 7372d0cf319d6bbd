use num_complex::Complex64;

use super::grid::TorusGrid;
use crate::error::{Error, Result};

/// What a symbol does at mode `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMode {
    Evaluate,
    ForceZero,
    ForceOne,
}

/// Fourier multipliers used by the integrator.
///
/// Every symbol is a function of the physical wavenumber `kappa`; the sign
/// conventions follow `d/dx <-> i kappa`, hence `d_xx <-> -kappa^2` and
/// `exp(i t d_xx) <-> exp(-i t kappa^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Symbol {
    /// `(i kappa)^n`; negative powers drop the zero mode.
    DxPow(i32),
    /// `|kappa|^alpha`, zero mode dropped.
    AbsDxPow(f64),
    /// `(1 + kappa^2)^{alpha/2}`.
    JPow(f64),
    /// `<d_xx> = sqrt(kappa^2 + kappa^4)`.
    Bracket,
    /// `<d_xx>^{-1}`, zero mode dropped.
    BracketInv,
    /// `exp(i t d_xx) = exp(-i t kappa^2)`.
    ExpItDx2(f64),
    /// `exp(i t <d_xx>)`.
    ExpItBracket(f64),
    /// `A = <d_xx> + d_xx`.
    OpA,
    /// `B = <d_xx>^{-1} d_xx`, zero mode dropped.
    OpB,
    /// `B exp(i t <d_xx>)`, zero mode dropped.
    OpBPropagated(f64),
    /// `psi_1(2 i tau d_xx)` with `psi_1(y) = int_0^1 e^{ys} ds`; equals one at the zero mode.
    Psi1TwoITau(f64),
}

impl Symbol {
    /// Looks a symbol up by name. Parametrised symbols need `param`.
    pub fn named(name: &str, param: Option<f64>) -> Result<Symbol> {
        let need = |p: Option<f64>| {
            p.ok_or_else(|| Error::InvalidInput(format!("symbol `{name}` needs a parameter")))
        };
        let int_power = |p: f64| -> Result<i32> {
            if p.fract() != 0.0 || p.abs() > 64.0 {
                return Err(Error::InvalidInput(format!(
                    "symbol `{name}` needs an integer power, got {p}"
                )));
            }
            Ok(p as i32)
        };
        Ok(match name {
            "inv_dx_pow" => Symbol::DxPow(-int_power(need(param)?)?),
            "dx_pow" => Symbol::DxPow(int_power(need(param)?)?),
            "abs_dx_pow" => Symbol::AbsDxPow(need(param)?),
            "J_pow" => Symbol::JPow(need(param)?),
            "bracket" => Symbol::Bracket,
            "bracket_inv" => Symbol::BracketInv,
            "exp_i_t_dx2" => Symbol::ExpItDx2(need(param)?),
            "exp_i_t_bracket" => Symbol::ExpItBracket(need(param)?),
            "op_A" => Symbol::OpA,
            "op_B" => Symbol::OpB,
            "op_B_tau" => Symbol::OpBPropagated(need(param)?),
            "psi1_two_i_tau" => Symbol::Psi1TwoITau(need(param)?),
            other => {
                return Err(Error::InvalidInput(format!("unknown symbol `{other}`")));
            }
        })
    }

    pub fn zero_mode(&self) -> ZeroMode {
        match self {
            Symbol::DxPow(n) if *n < 0 => ZeroMode::ForceZero,
            Symbol::AbsDxPow(_) | Symbol::BracketInv | Symbol::OpB | Symbol::OpBPropagated(_) => {
                ZeroMode::ForceZero
            }
            Symbol::Psi1TwoITau(_) => ZeroMode::ForceOne,
            _ => ZeroMode::Evaluate,
        }
    }

    /// Multiplier at wavenumber `kappa`, before the zero-mode rule.
    pub fn raw(&self, kappa: f64) -> Complex64 {
        let k2 = kappa * kappa;
        let bracket = (k2 + k2 * k2).sqrt();
        match *self {
            Symbol::DxPow(n) => i_pow(n) * kappa.powi(n),
            Symbol::AbsDxPow(alpha) => Complex64::new(kappa.abs().powf(alpha), 0.0),
            Symbol::JPow(alpha) => Complex64::new((1.0 + k2).powf(alpha / 2.0), 0.0),
            Symbol::Bracket => Complex64::new(bracket, 0.0),
            Symbol::BracketInv => Complex64::new(1.0 / bracket, 0.0),
            Symbol::ExpItDx2(t) => Complex64::from_polar(1.0, -t * k2),
            Symbol::ExpItBracket(t) => Complex64::from_polar(1.0, t * bracket),
            Symbol::OpA => Complex64::new(bracket - k2, 0.0),
            Symbol::OpB => Complex64::new(-k2 / bracket, 0.0),
            Symbol::OpBPropagated(t) => Complex64::from_polar(-k2 / bracket, t * bracket),
            Symbol::Psi1TwoITau(tau) => unit_phase_average(2.0 * tau * k2),
        }
    }

    /// Multiplier at wavenumber `kappa` with the zero-mode rule applied.
    pub fn value_at(&self, kappa: f64) -> Complex64 {
        if kappa == 0.0 {
            match self.zero_mode() {
                ZeroMode::ForceZero => return Complex64::new(0.0, 0.0),
                ZeroMode::ForceOne => return Complex64::new(1.0, 0.0),
                ZeroMode::Evaluate => {}
            }
        }
        self.raw(kappa)
    }

    /// Multipliers for every mode of `grid`, in storage order.
    pub fn table(&self, grid: &TorusGrid) -> Result<Vec<Complex64>> {
        grid.modes()
            .map(|k| {
                let v = self.value_at(grid.wavenumber(k));
                if v.re.is_finite() && v.im.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NumericDomain(format!(
                        "symbol {self:?} is not finite at mode {k}"
                    )))
                }
            })
            .collect()
    }
}

fn i_pow(n: i32) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(1 - e^{-ix}) / (ix) = e^{-ix/2} sin(x/2) / (x/2)`, the mean of
/// `e^{-isx}` over `s in [0, 1]`. The sinc form has no cancellation near 0.
pub(crate) fn unit_phase_average(x: f64) -> Complex64 {
    let half = 0.5 * x;
    let sinc = if half.abs() < 1e-8 {
        1.0 - half * half / 6.0
    } else {
        half.sin() / half
    };
    Complex64::from_polar(sinc, -half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn op_b_at_first_mode() {
        let v = Symbol::OpB.value_at(1.0);
        assert!((v.re + 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn op_a_vanishes_at_zero() {
        assert_eq!(Symbol::OpA.value_at(0.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn unit_modulus_propagators() {
        for i in 0..200 {
            let kappa = -50.0 + 0.5 * i as f64;
            for t in [1e-3, 0.37, 12.0] {
                assert!((Symbol::ExpItBracket(t).value_at(kappa).norm() - 1.0).abs() < 1e-14);
                assert!((Symbol::ExpItDx2(t).value_at(kappa).norm() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn psi1_is_one_at_zero_and_matches_integral() {
        assert_eq!(
            Symbol::Psi1TwoITau(0.1).value_at(0.0),
            Complex64::new(1.0, 0.0)
        );
        let tau = 0.1;
        let kappa = 3.0;
        let y = Complex64::new(0.0, -2.0 * tau * kappa * kappa);
        let direct = (y.exp() - 1.0) / y;
        assert!((Symbol::Psi1TwoITau(tau).value_at(kappa) - direct).norm() < 1e-15);
        // tiny argument stays at 1 without cancellation
        let tiny = Symbol::Psi1TwoITau(1e-20).value_at(1.0);
        assert!((tiny - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn inverse_derivatives_drop_zero_mode() {
        for n in 1..=4 {
            let s = Symbol::named("inv_dx_pow", Some(n as f64)).unwrap();
            assert_eq!(s.value_at(0.0), Complex64::new(0.0, 0.0));
            let v = s.value_at(2.0) * Symbol::DxPow(n).value_at(2.0);
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        assert_eq!(
            Symbol::DxPow(-1).value_at(1.0),
            Complex64::new(0.0, -1.0),
            "1/(i k) at k=1"
        );
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(Symbol::named("bracket", None).unwrap(), Symbol::Bracket);
        assert_eq!(
            Symbol::named("exp_i_t_bracket", Some(0.5)).unwrap(),
            Symbol::ExpItBracket(0.5)
        );
        assert!(Symbol::named("laplacian", None).is_err());
        assert!(Symbol::named("J_pow", None).is_err());
        assert!(Symbol::named("inv_dx_pow", Some(1.5)).is_err());
    }

    #[test]
    fn evaluated_singularity_is_reported() {
        let grid = TorusGrid::torus(8).unwrap();
        assert!(Symbol::AbsDxPow(-2.0).table(&grid).is_ok());
        assert!(Symbol::JPow(-1e6).table(&grid).is_ok());
        // J_pow stays finite; a huge positive exponent overflows
        assert!(matches!(
            Symbol::JPow(1e6).table(&grid),
            Err(Error::NumericDomain(_))
        ));
    }

    #[test]
    fn bracket_bounds() {
        // |B| <= 1 and (1 + kappa^2) / <d_xx> stays bounded away from zero
        for k in 1..2000 {
            let kappa = k as f64 * PI / 80.0;
            assert!(Symbol::OpB.value_at(kappa).norm() <= 1.0);
            let weighted = Symbol::BracketInv.value_at(kappa).re * (1.0 + kappa * kappa);
            assert!(weighted >= 1.0 && weighted.is_finite());
        }
    }
}
