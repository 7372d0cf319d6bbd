use gb_lrei::gb::{eval_i1, eval_i2, eval_l_terms, eval_t0, step, EvolutionState};
use gb_lrei::harness::relative_gap;
use gb_lrei::oracle::{
    oracle_i, oracle_p, oracle_t, phase_integral, Interaction, Remainder, ResonancePiece,
};
use gb_lrei::spectral::{apply_table, conjugate, sobolev_norm, Spectrum, Symbol, TorusGrid};
use num_complex::Complex64;
use proptest::prelude::*;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn band(m: usize) -> i64 {
    (m as i64 / 2 - 1) / 2
}

fn spectrum_from(grid: &TorusGrid, values: &[(f64, f64)]) -> Spectrum {
    let b = band(grid.num_points());
    let mut f = Spectrum::zeros(grid);
    let ks = (-b..=b).filter(|k| *k != 0);
    for (k, (re, im)) in ks.zip(values.iter().cycle()) {
        f.set_mode(k, Complex64::new(*re, *im)).unwrap();
    }
    f
}

fn band_limited() -> impl Strategy<Value = (usize, f64, Vec<(f64, f64)>)> {
    (
        prop::sample::select(vec![16usize, 32, 64]),
        prop::sample::select(vec![1e-1, 1e-2, 1e-3]),
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 30),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_forms_match_oracle((m, tau, values) in band_limited()) {
        let grid = TorusGrid::torus(m).unwrap();
        let f = spectrum_from(&grid, &values);
        let tol = 1e-10;
        prop_assert!(relative_gap(&eval_i1(&f, tau).unwrap(), &oracle_i(Interaction::Square, &f, tau)) < tol);
        prop_assert!(relative_gap(&eval_i2(&f, tau).unwrap(), &oracle_i(Interaction::Modulus, &f, tau)) < tol);
        prop_assert!(relative_gap(&eval_t0(&f, tau).unwrap(), &oracle_t(ResonancePiece::Mean, &f, tau).unwrap()) < tol);
        let l = eval_l_terms(&f, tau).unwrap();
        let t1 = oracle_t(ResonancePiece::First, &f, tau).unwrap();
        let t3 = oracle_t(ResonancePiece::Mixed, &f, tau).unwrap();
        let p1 = oracle_p(Remainder::First, &f, tau).unwrap();
        let p2 = oracle_p(Remainder::Mixed, &f, tau).unwrap();
        prop_assert!(relative_gap(&(&l.l1 + &l.l2), &(&t1 - &p1)) < tol);
        prop_assert!(relative_gap(&(&l.l3 + &l.l4), &(&t3 - &p2)) < tol);
    }

    #[test]
    fn conjugate_square_integral_splits_into_exact_parts_and_remainders(
        (m, tau, values) in band_limited()
    ) {
        // I0 = T0 + 2 (L1 + L2 + P1) + L3 + L4 + P2
        let grid = TorusGrid::torus(m).unwrap();
        let f = spectrum_from(&grid, &values);
        let l = eval_l_terms(&f, tau).unwrap();
        let exact = &(&(&l.l1 + &l.l2).scale_real(2.0) + &l.l3) + &l.l4;
        let rem = &oracle_p(Remainder::First, &f, tau).unwrap().scale_real(2.0)
            + &oracle_p(Remainder::Mixed, &f, tau).unwrap();
        let assembled = &(&eval_t0(&f, tau).unwrap() + &exact) + &rem;
        let i0 = oracle_i(Interaction::ConjugateSquare, &f, tau);
        prop_assert!(relative_gap(&assembled, &i0) < 1e-10);
    }

    #[test]
    fn propagated_b_annihilates_mean_term((m, tau, values) in band_limited()) {
        let grid = TorusGrid::torus(m).unwrap();
        let f = spectrum_from(&grid, &values);
        let t0 = eval_t0(&f, tau).unwrap();
        let killed = apply_table(&t0, &Symbol::OpBPropagated(tau).table(&grid).unwrap());
        prop_assert_eq!(killed.l2_norm(), 0.0);
    }
}

/// The step rebuilt from oracle sums and per-mode phase integrals.
fn oracle_step(s: &EvolutionState, tau: f64) -> Spectrum {
    let grid = s.grid();
    let u = &s.u;
    let t1 = oracle_t(ResonancePiece::First, u, tau).unwrap();
    let t3 = oracle_t(ResonancePiece::Mixed, u, tau).unwrap();
    let p1 = oracle_p(Remainder::First, u, tau).unwrap();
    let p2 = oracle_p(Remainder::Mixed, u, tau).unwrap();
    let bracket = &(&(&t1 - &p1).scale_real(2.0) + &(&t3 - &p2))
        + &(&oracle_i(Interaction::Square, u, tau)
            + &oracle_i(Interaction::Modulus, u, tau).scale_real(2.0));

    // tau psi1(2 i tau d_xx) conj u = int_0^tau e^{2 i s d_xx} conj u ds
    let ubar = conjugate(u);
    let mut averaged = Spectrum::zeros(grid);
    for (k, c) in ubar.modes() {
        let kappa = grid.wavenumber(k);
        averaged
            .set_mode(k, phase_integral(2.0 * kappa * kappa, tau) * c)
            .unwrap();
    }
    let linear = &u.scale_real(tau) + &averaged;

    let mut out = Spectrum::zeros(grid);
    for (k, c) in u.modes() {
        let kappa = grid.wavenumber(k);
        let br = (kappa * kappa + kappa.powi(4)).sqrt();
        let prop = Complex64::from_polar(1.0, tau * br);
        let b = if k == 0 { 0.0 } else { -kappa * kappa / br };
        let value = prop * c
            + prop * b * (-0.25 * I * bracket.mode(k) - I * s.mean_height() * linear.mode(k));
        out.set_mode(k, value).unwrap();
    }
    out
}

#[test]
fn single_mode_step_matches_oracle_assembly() {
    let grid = TorusGrid::torus(16).unwrap();
    let s = EvolutionState::new(Spectrum::single_mode(&grid, 1).unwrap(), 0.0, 0.0, 0.0);
    let next = step(&s, 0.1).unwrap();
    let expected = oracle_step(&s, 0.1);
    assert!((&next.u - &expected).l2_norm() < 1e-11);
}

#[test]
fn random_step_with_mean_matches_oracle_assembly() {
    let grid = TorusGrid::torus(32).unwrap();
    let values: Vec<(f64, f64)> = (0..14)
        .map(|j| ((0.3 * j as f64).sin() * 0.4, (0.7 * j as f64).cos() * 0.3))
        .collect();
    let u = spectrum_from(&grid, &values);
    let s = EvolutionState::new(u, 0.4, -0.3, 0.7);
    for tau in [0.1, 0.01] {
        let next = step(&s, tau).unwrap();
        let expected = oracle_step(&s, tau);
        assert!(relative_gap(&next.u, &expected) < 1e-11);
    }
}

fn analytic_spectrum(grid: &TorusGrid) -> Spectrum {
    let mut f = Spectrum::zeros(grid);
    for k in grid.modes() {
        if k != 0 && k != grid.nyquist_mode() {
            let c = Complex64::from_polar((-(k.abs() as f64)).exp(), 0.7 * k as f64);
            f.set_mode(k, c).unwrap();
        }
    }
    f
}

#[test]
fn remainders_are_third_order_for_analytic_data() {
    // both factors of the remainder integrand vanish linearly in s, so for
    // tau k^2 << 1 over the dominant modes the integral is O(tau^3)
    let grid = TorusGrid::torus(64).unwrap();
    let f = analytic_spectrum(&grid);
    for which in [Remainder::First, Remainder::Mixed] {
        let norm = |tau| sobolev_norm(&oracle_p(which, &f, tau).unwrap(), 1.0);
        let ratio = norm(1e-2) / norm(5e-3);
        assert!((7.5..=8.5).contains(&ratio), "{which:?}: ratio {ratio}");
        let ratio_small = norm(1e-3) / norm(5e-4);
        assert!((ratio_small - 8.0).abs() < (ratio - 8.0).abs() + 1e-3);
    }
}

#[test]
fn remainders_are_at_least_second_order_for_smooth_data() {
    let grid = TorusGrid::torus(128).unwrap();
    let mut f = Spectrum::zeros(&grid);
    for k in grid.modes() {
        if k != 0 && k != grid.nyquist_mode() {
            f.set_mode(
                k,
                Complex64::from_polar((k.abs() as f64).powi(-3), k as f64),
            )
            .unwrap();
        }
    }
    for which in [Remainder::First, Remainder::Mixed] {
        let norm = |tau| sobolev_norm(&oracle_p(which, &f, tau).unwrap(), 1.0);
        let ratio = norm(1e-2) / norm(5e-3);
        assert!(ratio >= 3.5, "{which:?}: ratio {ratio}");
    }
}
