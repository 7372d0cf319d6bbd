use num_complex::Complex64;

use super::check_zero_mean;
use super::state::EvolutionState;
use crate::error::{Error, Result};
use crate::spectral::{
    apply_table, conjugate, pointwise_product, square, Spectrum, Symbol, TorusGrid,
};

const I: Complex64 = Complex64::new(0.0, 1.0);
const HALF_I: Complex64 = Complex64::new(0.0, 0.5);

/// Closed-form interaction terms for one step of width `tau`.
#[derive(Clone, Debug)]
pub struct StepTerms {
    pub i1: Spectrum,
    pub i2: Spectrum,
    pub t0: Spectrum,
    pub l1: Spectrum,
    pub l2: Spectrum,
    pub l3: Spectrum,
    pub l4: Spectrum,
}

impl StepTerms {
    /// `2 L1 + 2 L2 + L3 + L4 + I1 + 2 I2`, the bracket fed to `B^tau`.
    pub fn nonlinear_sum(&self) -> Spectrum {
        let two = |s: &Spectrum| s.scale_real(2.0);
        let mut out = two(&self.l1);
        for part in [&two(&self.l2), &self.l3, &self.l4, &self.i1, &two(&self.i2)] {
            out = &out + part;
        }
        out
    }

    /// Named terms in a fixed order.
    pub fn named(&self) -> [(&'static str, &Spectrum); 7] {
        [
            ("I1", &self.i1),
            ("I2", &self.i2),
            ("T0", &self.t0),
            ("L1", &self.l1),
            ("L2", &self.l2),
            ("L3", &self.l3),
            ("L4", &self.l4),
        ]
    }
}

/// The four exactly integrable parts of the resonance decomposition.
#[derive(Clone, Debug)]
pub struct LTerms {
    pub l1: Spectrum,
    pub l2: Spectrum,
    pub l3: Spectrum,
    pub l4: Spectrum,
}

/// Multiplier tables for a fixed grid and step width, shared by every step
/// of a trajectory.
#[derive(Clone, Debug)]
pub struct LreiKernel {
    grid: TorusGrid,
    tau: f64,
    dx: Vec<Complex64>,
    dx2: Vec<Complex64>,
    inv_dx: Vec<Complex64>,
    inv_dx2: Vec<Complex64>,
    inv_dx3: Vec<Complex64>,
    inv_dx4: Vec<Complex64>,
    /// `exp(i tau d_xx)`
    fwd: Vec<Complex64>,
    /// `exp(-i tau d_xx)`
    bwd: Vec<Complex64>,
    /// `exp(2 i tau d_xx)`
    fwd2: Vec<Complex64>,
    /// `exp(i tau <d_xx>)`
    propagator: Vec<Complex64>,
    /// `B exp(i tau <d_xx>)`
    b_tau: Vec<Complex64>,
    psi1: Vec<Complex64>,
}

impl LreiKernel {
    pub fn new(grid: &TorusGrid, tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidInput(format!(
                "step size must be positive, got {tau}"
            )));
        }
        let table = |s: Symbol| s.table(grid);
        Ok(Self {
            grid: grid.clone(),
            tau,
            dx: table(Symbol::DxPow(1))?,
            dx2: table(Symbol::DxPow(2))?,
            inv_dx: table(Symbol::DxPow(-1))?,
            inv_dx2: table(Symbol::DxPow(-2))?,
            inv_dx3: table(Symbol::DxPow(-3))?,
            inv_dx4: table(Symbol::DxPow(-4))?,
            fwd: table(Symbol::ExpItDx2(tau))?,
            bwd: table(Symbol::ExpItDx2(-tau))?,
            fwd2: table(Symbol::ExpItDx2(2.0 * tau))?,
            propagator: table(Symbol::ExpItBracket(tau))?,
            b_tau: table(Symbol::OpBPropagated(tau))?,
            psi1: table(Symbol::Psi1TwoITau(tau))?,
        })
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn check(&self, f: &Spectrum) -> Result<()> {
        if !f.grid().same_as(&self.grid) {
            return Err(Error::InvalidInput(
                "spectrum is not on the kernel grid".into(),
            ));
        }
        check_zero_mean(f)
    }

    fn i1_unchecked(&self, f: &Spectrum) -> Spectrum {
        let w = apply_table(f, &self.inv_dx);
        let shifted = apply_table(&w, &self.bwd);
        let twisted = apply_table(&square(&shifted), &self.fwd);
        (&square(&w) - &twisted).scale(HALF_I)
    }

    fn i2_unchecked(&self, f: &Spectrum, fbar: &Spectrum) -> Result<Spectrum> {
        let w_bar = apply_table(fbar, &self.inv_dx);
        let shifted =
            pointwise_product(&apply_table(f, &self.bwd), &apply_table(&w_bar, &self.fwd))?;
        let shifted = apply_table(&apply_table(&shifted, &self.inv_dx), &self.fwd);
        let plain = apply_table(&pointwise_product(f, &w_bar)?, &self.inv_dx);
        let mut out = (&plain - &shifted).scale(HALF_I);
        out.coefficients_mut()[0] += Complex64::new(self.tau * f.l2_norm().powi(2), 0.0);
        Ok(out)
    }

    fn t0_unchecked(&self, fbar: &Spectrum) -> Spectrum {
        let w_bar = apply_table(fbar, &self.inv_dx);
        let shifted = square(&apply_table(&w_bar, &self.fwd)).mean();
        let plain = square(&w_bar).mean();
        let mean_sq = fbar.mean() * fbar.mean();
        let mut out = Spectrum::zeros(&self.grid);
        out.coefficients_mut()[0] = HALF_I * (shifted - plain) + mean_sq * self.tau;
        out
    }

    fn l_terms_unchecked(&self, fbar: &Spectrum) -> Result<LTerms> {
        let tau = self.tau;
        let d2 = apply_table(fbar, &self.dx2);
        let d1 = apply_table(fbar, &self.dx);
        let inv2 = apply_table(fbar, &self.inv_dx2);

        // L1
        let shifted = pointwise_product(&apply_table(&inv2, &self.fwd2), &d2)?;
        let plain = pointwise_product(&d2, &inv2)?;
        let l1 = apply_table(&(&plain - &shifted), &self.inv_dx2).scale(HALF_I);

        // L2
        let shifted =
            pointwise_product(&apply_table(&d1, &self.fwd), &apply_table(fbar, &self.bwd))?;
        let shifted = apply_table(&apply_table(&shifted, &self.inv_dx3), &self.fwd);
        let plain = apply_table(&pointwise_product(&d1, fbar)?, &self.inv_dx3);
        let width = apply_table(&pointwise_product(&d2, fbar)?, &self.inv_dx2).scale_real(tau);
        let l2 = &(&plain - &shifted).scale(HALF_I) - &width;

        // L3 and L4 share (d_x conj f)^2
        let grad_sq = square(&d1);
        let mut l3 = apply_table(&grad_sq, &self.inv_dx4);
        for (c, e) in l3.coefficients_mut().iter_mut().zip(&self.fwd2) {
            *c *= -I * (e - 1.0);
        }

        let shifted = apply_table(&square(&apply_table(fbar, &self.fwd)), &self.bwd);
        let l4 = &(&shifted - &square(fbar)).scale(I) - &grad_sq.scale_real(2.0 * tau);
        let l4 = apply_table(&l4, &self.inv_dx2);

        Ok(LTerms { l1, l2, l3, l4 })
    }

    /// All closed-form terms for a zero-mean `f`.
    pub fn terms(&self, f: &Spectrum) -> Result<StepTerms> {
        self.check(f)?;
        let fbar = conjugate(f);
        let LTerms { l1, l2, l3, l4 } = self.l_terms_unchecked(&fbar)?;
        Ok(StepTerms {
            i1: self.i1_unchecked(f),
            i2: self.i2_unchecked(f, &fbar)?,
            t0: self.t0_unchecked(&fbar),
            l1,
            l2,
            l3,
            l4,
        })
    }

    pub fn i1(&self, f: &Spectrum) -> Result<Spectrum> {
        self.check(f)?;
        Ok(self.i1_unchecked(f))
    }

    pub fn i2(&self, f: &Spectrum) -> Result<Spectrum> {
        self.check(f)?;
        self.i2_unchecked(f, &conjugate(f))
    }

    pub fn t0(&self, f: &Spectrum) -> Result<Spectrum> {
        self.check(f)?;
        Ok(self.t0_unchecked(&conjugate(f)))
    }

    pub fn l_terms(&self, f: &Spectrum) -> Result<LTerms> {
        self.check(f)?;
        self.l_terms_unchecked(&conjugate(f))
    }

    /// Applies the first-order integrator to `s`, returning the state at
    /// `s.t + tau`. Mode 0 of the result is zeroed.
    pub fn step(&self, s: &EvolutionState) -> Result<EvolutionState> {
        self.check(&s.u)?;
        let u = &s.u;
        let ubar = conjugate(u);
        let LTerms { l1, l2, l3, l4 } = self.l_terms_unchecked(&ubar)?;
        let terms = StepTerms {
            i1: self.i1_unchecked(u),
            i2: self.i2_unchecked(u, &ubar)?,
            // killed by B^tau
            t0: Spectrum::zeros(&self.grid),
            l1,
            l2,
            l3,
            l4,
        };
        let nonlinear = terms.nonlinear_sum();
        let linear = u + &apply_table(&ubar, &self.psi1);
        let source = Complex64::new(0.0, -self.tau * s.mean_height());

        let mut next = apply_table(u, &self.propagator);
        let coeffs = next.coefficients_mut();
        for (idx, c) in coeffs.iter_mut().enumerate() {
            let b = self.b_tau[idx];
            *c += b
                * (Complex64::new(0.0, -0.25) * nonlinear.coefficients()[idx]
                    + source * linear.coefficients()[idx]);
        }
        Ok(EvolutionState::new(next, s.a, s.b, s.t + self.tau))
    }
}

/// `I1 = (i/2) [ (d^{-1} f)^2 - e^{i tau d_xx} (e^{-i tau d_xx} d^{-1} f)^2 ]`.
pub fn eval_i1(f: &Spectrum, tau: f64) -> Result<Spectrum> {
    LreiKernel::new(f.grid(), tau)?.i1(f)
}

/// `I2`, including the constant `tau ||f||^2` contribution at mode 0.
pub fn eval_i2(f: &Spectrum, tau: f64) -> Result<Spectrum> {
    LreiKernel::new(f.grid(), tau)?.i2(f)
}

/// Mean-value term `T0`, returned as a spectrum supported on mode 0.
pub fn eval_t0(f: &Spectrum, tau: f64) -> Result<Spectrum> {
    LreiKernel::new(f.grid(), tau)?.t0(f)
}

pub fn eval_l_terms(f: &Spectrum, tau: f64) -> Result<LTerms> {
    LreiKernel::new(f.grid(), tau)?.l_terms(f)
}
