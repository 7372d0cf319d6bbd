//! Closed forms against the brute-force oracle on seeded random spectra.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::Result;
use crate::gb::LreiKernel;
use crate::oracle::{oracle_i, oracle_p, oracle_t, Interaction, Remainder, ResonancePiece};
use crate::spectral::{Spectrum, TorusGrid};

pub const GRID_SIZES: [usize; 3] = [16, 32, 64];
pub const STEP_SIZES: [f64; 3] = [1e-1, 1e-2, 1e-3];
pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const DECOMPOSITION_TOL: f64 = 1e-11;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOutcome {
    pub name: &'static str,
    /// Worst relative `L^2` discrepancy over all cases.
    pub worst: f64,
    pub tolerance: f64,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

/// Zero-mean spectrum with uniform random coefficients on `0 < |k| <= band`.
///
/// `band = (M/2 - 1) / 2` keeps every pair sum on the grid, so FFT products
/// carry no aliasing and agree with the truncated double sums.
pub fn random_band_limited(grid: &TorusGrid, rng: &mut impl Rng) -> Spectrum {
    let band = (grid.num_points() as i64 / 2 - 1) / 2;
    let mut f = Spectrum::zeros(grid);
    for k in -band..=band {
        if k != 0 {
            let re = rng.random_range(-1.0..1.0);
            let im = rng.random_range(-1.0..1.0);
            f.set_mode(k, Complex64::new(re, im)).expect("in band");
        }
    }
    f
}

/// `||a - b|| / ||b||`, or `||a - b||` when `b` vanishes.
pub fn relative_gap(a: &Spectrum, b: &Spectrum) -> f64 {
    let diff = (a - b).l2_norm();
    let scale = b.l2_norm();
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Runs every identity over `seeds` random spectra per grid size and step.
pub fn run_verification(seeds: u64) -> Result<Vec<VerifyOutcome>> {
    let names: [(&'static str, f64); 7] = [
        ("I1 = oracle I(1)", CLOSED_FORM_TOL),
        ("I2 = oracle I(2)", CLOSED_FORM_TOL),
        ("T0 = oracle T(0)", CLOSED_FORM_TOL),
        ("L1 + L2 = oracle T(1) - P(1)", CLOSED_FORM_TOL),
        ("L3 + L4 = oracle T(3) - P(2)", CLOSED_FORM_TOL),
        ("oracle T(1) = T(2)", DECOMPOSITION_TOL),
        ("oracle T(0..3) sum = I(0)", DECOMPOSITION_TOL),
    ];
    let mut worst = [0.0f64; 7];
    for m in GRID_SIZES {
        let grid = TorusGrid::torus(m)?;
        for seed in 0..seeds {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(m as u64);
            let f = random_band_limited(&grid, &mut rng);
            for tau in STEP_SIZES {
                let kernel = LreiKernel::new(&grid, tau)?;
                let terms = kernel.terms(&f)?;
                let t = |p| oracle_t(p, &f, tau);
                let t0 = t(ResonancePiece::Mean)?;
                let t1 = t(ResonancePiece::First)?;
                let t2 = t(ResonancePiece::Second)?;
                let t3 = t(ResonancePiece::Mixed)?;
                let p1 = oracle_p(Remainder::First, &f, tau)?;
                let p2 = oracle_p(Remainder::Mixed, &f, tau)?;
                let i0 = oracle_i(Interaction::ConjugateSquare, &f, tau);

                let gaps = [
                    relative_gap(&terms.i1, &oracle_i(Interaction::Square, &f, tau)),
                    relative_gap(&terms.i2, &oracle_i(Interaction::Modulus, &f, tau)),
                    relative_gap(&terms.t0, &t0),
                    relative_gap(&(&terms.l1 + &terms.l2), &(&t1 - &p1)),
                    relative_gap(&(&terms.l3 + &terms.l4), &(&t3 - &p2)),
                    relative_gap(&t1, &t2),
                    relative_gap(&(&(&(&t0 + &t1) + &t2) + &t3), &i0),
                ];
                for (w, g) in worst.iter_mut().zip(gaps) {
                    *w = w.max(g);
                }
            }
        }
    }
    Ok(names
        .iter()
        .zip(worst)
        .map(|(&(name, tolerance), worst)| VerifyOutcome {
            name,
            worst,
            tolerance,
        })
        .collect())
}
