use num_complex::Complex64;

use super::field::{GridField, Spectrum};
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// Multiplies each mode by the symbol's multiplier.
pub fn fourier_multiplier(spec: &Spectrum, sym: Symbol) -> Result<Spectrum> {
    let table = sym.table(spec.grid())?;
    Ok(apply_table(spec, &table))
}

/// Multiplies each mode by a precomputed multiplier table (storage order).
pub fn apply_table(spec: &Spectrum, table: &[Complex64]) -> Spectrum {
    let mut out = spec.clone();
    apply_table_in_place(&mut out, table);
    out
}

pub fn apply_table_in_place(spec: &mut Spectrum, table: &[Complex64]) {
    assert_eq!(spec.coefficients().len(), table.len());
    for (c, m) in spec.coefficients_mut().iter_mut().zip(table) {
        *c *= m;
    }
}

fn truncate_two_thirds(spec: &Spectrum) -> Spectrum {
    let mut out = spec.clone();
    let cutoff = spec.grid().num_points() as f64 / 3.0;
    let grid = spec.grid().clone();
    for (idx, c) in out.coefficients_mut().iter_mut().enumerate() {
        if grid.mode_of_index(idx).abs() as f64 > cutoff {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    out
}

fn physical(spec: &Spectrum) -> GridField {
    if spec.grid().dealias() {
        truncate_two_thirds(spec).to_field()
    } else {
        spec.to_field()
    }
}

fn finish_product(field: GridField) -> Spectrum {
    let mut out = field.to_spectrum();
    out.zero_nyquist();
    out
}

/// Spectrum of the pointwise product of two grid functions.
///
/// The unpaired mode `-M/2` of the result is set to zero. With dealiasing
/// enabled on the grid, inputs are first truncated to `|k| <= M/3`.
pub fn pointwise_product(f: &Spectrum, g: &Spectrum) -> Result<Spectrum> {
    if !f.grid().same_as(g.grid()) {
        return Err(Error::InvalidInput(
            "pointwise product of spectra on different grids".into(),
        ));
    }
    Ok(finish_product(physical(f).pointwise_mul(&physical(g))))
}

/// `pointwise_product(f, f)` with one inverse transform.
pub fn square(f: &Spectrum) -> Spectrum {
    let field = physical(f);
    finish_product(field.pointwise_mul(&field))
}

/// `(sum_k (1 + kappa_k^2)^r |f_k|^2)^{1/2}` over the represented modes.
pub fn sobolev_norm(f: &Spectrum, r: f64) -> f64 {
    let grid = f.grid();
    f.modes()
        .map(|(k, c)| {
            let kappa = grid.wavenumber(k);
            (1.0 + kappa * kappa).powf(r) * c.norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// Spectrum of the complex conjugate function: mode `k` becomes
/// `conj(f_{-k})`. The unpaired mode `-M/2` is conjugated in place, which is
/// exactly what conjugating the grid samples does.
pub fn conjugate(f: &Spectrum) -> Spectrum {
    let grid = f.grid();
    let m = grid.num_points();
    let src = f.coefficients();
    let coeffs = (0..m)
        .map(|idx| {
            let partner = if idx == 0 || idx == m / 2 {
                idx
            } else {
                m - idx
            };
            src[partner].conj()
        })
        .collect();
    Spectrum::from_coefficients(grid, coeffs).expect("same length as source")
}

#[cfg(test)]
mod tests {
    use super::super::grid::TorusGrid;
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_spectrum(grid: &TorusGrid, values: &[(f64, f64)]) -> Spectrum {
        Spectrum::from_coefficients(grid, values.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn bracket_on_first_mode() {
        let grid = TorusGrid::torus(16).unwrap();
        let e1 = Spectrum::single_mode(&grid, 1).unwrap();
        let out = fourier_multiplier(&e1, Symbol::Bracket).unwrap();
        assert!((out.mode(1) - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!(out.l2_norm() - 2f64.sqrt() < 1e-15);
    }

    #[test]
    fn antiderivative_kills_constant() {
        let grid = TorusGrid::torus(16).unwrap();
        let one = GridField::constant(&grid, 1.0).to_spectrum();
        let out = fourier_multiplier(&one, Symbol::DxPow(-1)).unwrap();
        assert_eq!(out.l2_norm(), 0.0);
    }

    #[test]
    fn antiderivative_inverts_derivative_on_zero_mean() {
        let grid = TorusGrid::new(5.0, 32).unwrap();
        let f = GridField::from_fn(&grid, |x| {
            (PI * x / 5.0).sin() + 0.3 * (3.0 * PI * x / 5.0).cos()
        })
        .to_spectrum();
        let back = fourier_multiplier(
            &fourier_multiplier(&f, Symbol::DxPow(1)).unwrap(),
            Symbol::DxPow(-1),
        )
        .unwrap();
        assert!((&back - &f).l2_norm() < 1e-14);
        assert_eq!(back.mean(), c(0.0, 0.0));
    }

    #[test]
    fn single_mode_product() {
        let grid = TorusGrid::torus(16).unwrap();
        let e1 = Spectrum::single_mode(&grid, 1).unwrap();
        let out = pointwise_product(&e1, &e1).unwrap();
        let e2 = Spectrum::single_mode(&grid, 2).unwrap();
        assert!((&out - &e2).l2_norm() < 1e-14);
    }

    #[test]
    fn product_with_one_is_identity() {
        let grid = TorusGrid::torus(16).unwrap();
        let mut f = Spectrum::zeros(&grid);
        for k in -7..=7 {
            f.set_mode(k, c(0.1 * k as f64, 1.0 / (1.0 + (k * k) as f64)))
                .unwrap();
        }
        let one = GridField::constant(&grid, 1.0).to_spectrum();
        let out = pointwise_product(&f, &one).unwrap();
        assert!((&out - &f).l2_norm() < 1e-14);
    }

    #[test]
    fn product_rejects_foreign_grid() {
        let a = Spectrum::zeros(&TorusGrid::torus(16).unwrap());
        let b = Spectrum::zeros(&TorusGrid::new(1.0, 16).unwrap());
        assert!(matches!(
            pointwise_product(&a, &b),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn product_matches_direct_convolution() {
        // O(M^2) convolution with wrap-around, Nyquist output dropped.
        let grid = TorusGrid::torus(8).unwrap();
        let f = Spectrum::from_modes(&grid, [(1, c(0.3, -0.2)), (3, c(1.1, 0.4))]).unwrap();
        let g = Spectrum::from_modes(&grid, [(-2, c(-0.7, 0.5)), (2, c(0.25, 0.0))]).unwrap();
        let mut expected = Spectrum::zeros(&grid);
        for (k1, a) in f.modes() {
            for (k2, b) in g.modes() {
                let k = (k1 + k2 + 4).rem_euclid(8) - 4;
                let prev = expected.mode(k);
                expected.set_mode(k, prev + a * b).unwrap();
            }
        }
        expected.zero_nyquist();
        let got = pointwise_product(&f, &g).unwrap();
        assert!((&got - &expected).l2_norm() <= 1e-12 * expected.l2_norm());
    }

    #[test]
    fn dealiasing_drops_high_modes() {
        let grid = TorusGrid::torus(12).unwrap().with_dealiasing(true);
        let f = Spectrum::from_modes(&grid, [(1, c(1.0, 0.0)), (5, c(1.0, 0.0))]).unwrap();
        let out = square(&f);
        let e2 = Spectrum::single_mode(&grid, 2).unwrap();
        assert!((&out - &e2).l2_norm() < 1e-14);
    }

    #[test]
    fn sobolev_norm_of_single_mode() {
        let grid = TorusGrid::torus(16).unwrap();
        let e1 = Spectrum::single_mode(&grid, 1).unwrap();
        for r in [-1.0, 0.0, 0.5, 2.0, 3.7] {
            assert!((sobolev_norm(&e1, r) - 2f64.powf(r / 2.0)).abs() < 1e-14);
        }
        assert_eq!(sobolev_norm(&Spectrum::zeros(&grid), 2.0), 0.0);
    }

    #[test]
    fn conjugate_of_exponential() {
        let grid = TorusGrid::torus(16).unwrap();
        let e1 = Spectrum::single_mode(&grid, 1).unwrap();
        let em1 = Spectrum::single_mode(&grid, -1).unwrap();
        assert!((&conjugate(&e1) - &em1).l2_norm() < 1e-15);
    }

    #[test]
    fn conjugate_fixes_real_spectra() {
        let grid = TorusGrid::torus(16).unwrap();
        let f = GridField::from_fn(&grid, |x| x.sin() * (2.0 * x).cos() + 0.25).to_spectrum();
        assert!((&conjugate(&f) - &f).l2_norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn conjugate_is_involution_and_matches_samples(
            values in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16)
        ) {
            let grid = TorusGrid::new(2.5, 16).unwrap();
            let f = random_spectrum(&grid, &values);
            let twice = conjugate(&conjugate(&f));
            prop_assert!((&twice - &f).l2_norm() == 0.0);
            let conj_samples: Vec<Complex64> = f.to_field().samples().iter().map(|s| s.conj()).collect();
            let via_field = GridField::new(&grid, conj_samples).unwrap().to_spectrum();
            prop_assert!((&via_field - &conjugate(&f)).l2_norm() < 1e-14);
        }

        #[test]
        fn multiplier_is_linear(
            f in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
            g in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
            alpha in -3.0f64..3.0,
            beta in -3.0f64..3.0,
            t in 0.0f64..2.0,
        ) {
            let grid = TorusGrid::torus(16).unwrap();
            let f = random_spectrum(&grid, &f);
            let g = random_spectrum(&grid, &g);
            for sym in [Symbol::ExpItBracket(t), Symbol::OpB, Symbol::DxPow(-3), Symbol::Psi1TwoITau(t)] {
                let lhs = fourier_multiplier(&(&(&f * alpha) + &(&g * beta)), sym).unwrap();
                let rhs = &(&fourier_multiplier(&f, sym).unwrap() * alpha)
                    + &(&fourier_multiplier(&g, sym).unwrap() * beta);
                prop_assert!((&lhs - &rhs).l2_norm() <= 1e-14 * (1.0 + rhs.l2_norm()));
            }
        }

        #[test]
        fn propagator_preserves_sobolev_norms(
            values in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 32),
            t in -5.0f64..5.0,
            r in -2.0f64..4.0,
        ) {
            let grid = TorusGrid::new(7.0, 32).unwrap();
            let f = random_spectrum(&grid, &values);
            let g = fourier_multiplier(&f, Symbol::ExpItBracket(t)).unwrap();
            let (a, b) = (sobolev_norm(&f, r), sobolev_norm(&g, r));
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }

        #[test]
        fn parseval_for_complex_fields(
            values in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 32),
        ) {
            let grid = TorusGrid::torus(32).unwrap();
            let f = random_spectrum(&grid, &values);
            let field = f.to_field();
            let mean_square = field.samples().iter().map(|s| s.norm_sqr()).sum::<f64>() / 32.0;
            let energy = sobolev_norm(&f, 0.0).powi(2);
            prop_assert!((mean_square - energy).abs() <= 1e-12 * energy);
        }
    }
}
