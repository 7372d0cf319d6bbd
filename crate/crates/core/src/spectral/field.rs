use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::grid::TorusGrid;
use crate::error::{Error, Result};

/// Fourier coefficients of a grid function, one per represented mode.
///
/// Coefficients are kept in FFT storage order (`0, 1, .., M/2-1, -M/2, .., -1`);
/// use [`Spectrum::mode`] and [`Spectrum::set_mode`] to address them by
/// integer mode. The forward transform carries the `1/M` factor, so mode 0 is
/// the mean value of the field.
#[derive(Clone, Debug)]
pub struct Spectrum {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
}

/// Samples of a (possibly complex) function at the grid nodes.
#[derive(Clone, Debug)]
pub struct GridField {
    grid: TorusGrid,
    samples: Vec<Complex64>,
}

impl Spectrum {
    pub fn zeros(grid: &TorusGrid) -> Self {
        Self {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.num_points()],
        }
    }

    /// Wraps coefficients given in storage order.
    pub fn from_coefficients(grid: &TorusGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.num_points() {
            return Err(Error::InvalidInput(format!(
                "spectrum has {} coefficients but the grid has {} points",
                coeffs.len(),
                grid.num_points()
            )));
        }
        Ok(Self {
            grid: grid.clone(),
            coeffs,
        })
    }

    /// Builds a spectrum from `(mode, coefficient)` pairs; unlisted modes are zero.
    pub fn from_modes<I>(grid: &TorusGrid, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut out = Self::zeros(grid);
        for (k, c) in modes {
            let idx = grid.index_of_mode(k).ok_or_else(|| {
                Error::InvalidInput(format!("mode {k} is not represented on the grid"))
            })?;
            out.coeffs[idx] += c;
        }
        Ok(out)
    }

    /// Single Fourier mode `e^{i kappa(k) x}`.
    pub fn single_mode(grid: &TorusGrid, k: i64) -> Result<Self> {
        Self::from_modes(grid, [(k, Complex64::new(1.0, 0.0))])
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of mode `k`; zero for modes outside the grid.
    pub fn mode(&self, k: i64) -> Complex64 {
        self.grid
            .index_of_mode(k)
            .map_or(Complex64::new(0.0, 0.0), |idx| self.coeffs[idx])
    }

    pub fn set_mode(&mut self, k: i64, value: Complex64) -> Result<()> {
        let idx = self.grid.index_of_mode(k).ok_or_else(|| {
            Error::InvalidInput(format!("mode {k} is not represented on the grid"))
        })?;
        self.coeffs[idx] = value;
        Ok(())
    }

    /// `(mode, coefficient)` pairs in storage order.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(idx, c)| (self.grid.mode_of_index(idx), *c))
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn zero_mean(&mut self) {
        self.coeffs[0] = Complex64::new(0.0, 0.0);
    }

    pub fn zero_nyquist(&mut self) {
        let idx = self.grid.num_points() / 2;
        self.coeffs[idx] = Complex64::new(0.0, 0.0);
    }

    /// Plain coefficient norm `(sum |c_k|^2)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// True when `conj(c_k) = c_{-k}` for every represented pair, to the
    /// given tolerance relative to the largest coefficient.
    pub fn is_conjugate_symmetric(&self, rel_tol: f64) -> bool {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let half = self.grid.num_points() as i64 / 2;
        (0..half).all(|k| (self.mode(k).conj() - self.mode(-k)).norm() <= rel_tol * scale)
    }

    /// Inverse transform to grid samples.
    pub fn to_field(&self) -> GridField {
        let m = self.grid.num_points();
        let mut buf: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                // node 0 sits at -L, so mode k picks up e^{-i pi k} = (-1)^k
                if self.grid.mode_of_index(idx) % 2 == 0 {
                    *c
                } else {
                    -*c
                }
            })
            .collect();
        debug_assert_eq!(buf.len(), m);
        self.grid.inverse_plan().process(&mut buf);
        GridField {
            grid: self.grid.clone(),
            samples: buf,
        }
    }

    fn check_same_grid(&self, other: &Spectrum) {
        assert!(
            self.grid.same_as(&other.grid),
            "spectra live on different grids"
        );
    }

    pub fn scale(&self, factor: Complex64) -> Spectrum {
        Spectrum {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Spectrum {
        self.scale(Complex64::new(factor, 0.0))
    }
}

impl Add for &Spectrum {
    type Output = Spectrum;

    fn add(self, rhs: &Spectrum) -> Spectrum {
        self.check_same_grid(rhs);
        Spectrum {
            grid: self.grid.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Spectrum {
    type Output = Spectrum;

    fn sub(self, rhs: &Spectrum) -> Spectrum {
        self.check_same_grid(rhs);
        Spectrum {
            grid: self.grid.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Add for Spectrum {
    type Output = Spectrum;

    fn add(self, rhs: Spectrum) -> Spectrum {
        &self + &rhs
    }
}

impl Sub for Spectrum {
    type Output = Spectrum;

    fn sub(self, rhs: Spectrum) -> Spectrum {
        &self - &rhs
    }
}

impl Mul<Complex64> for &Spectrum {
    type Output = Spectrum;

    fn mul(self, rhs: Complex64) -> Spectrum {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Spectrum {
    type Output = Spectrum;

    fn mul(self, rhs: f64) -> Spectrum {
        self.scale_real(rhs)
    }
}

impl Neg for &Spectrum {
    type Output = Spectrum;

    fn neg(self) -> Spectrum {
        self.scale_real(-1.0)
    }
}

impl GridField {
    pub fn new(grid: &TorusGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.num_points() {
            return Err(Error::InvalidInput(format!(
                "field has {} samples but the grid has {} points",
                samples.len(),
                grid.num_points()
            )));
        }
        Ok(Self {
            grid: grid.clone(),
            samples,
        })
    }

    pub fn from_real(grid: &TorusGrid, values: &[f64]) -> Result<Self> {
        Self::new(
            grid,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Samples a real function at every node.
    pub fn from_fn(grid: &TorusGrid, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: grid.clone(),
            samples: grid
                .nodes()
                .into_iter()
                .map(|x| Complex64::new(f(x), 0.0))
                .collect(),
        }
    }

    pub fn constant(grid: &TorusGrid, value: f64) -> Self {
        Self::from_fn(grid, |_| value)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.samples.iter().map(|c| c.re).collect()
    }

    /// Largest imaginary part in absolute value.
    pub fn max_imag(&self) -> f64 {
        self.samples.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Forward transform with the `1/M` normalization.
    pub fn to_spectrum(&self) -> Spectrum {
        let m = self.grid.num_points();
        let mut buf = self.samples.clone();
        self.grid.forward_plan().process(&mut buf);
        let norm = 1.0 / m as f64;
        for (idx, c) in buf.iter_mut().enumerate() {
            let sign = if self.grid.mode_of_index(idx) % 2 == 0 {
                norm
            } else {
                -norm
            };
            *c *= sign;
        }
        Spectrum {
            grid: self.grid.clone(),
            coeffs: buf,
        }
    }

    pub(crate) fn pointwise_mul(&self, other: &GridField) -> GridField {
        GridField {
            grid: self.grid.clone(),
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// Forward transform; see [`GridField::to_spectrum`].
pub fn to_spectrum(field: &GridField) -> Spectrum {
    field.to_spectrum()
}

/// Inverse transform; see [`Spectrum::to_field`].
pub fn from_spectrum(spec: &Spectrum) -> GridField {
    spec.to_field()
}
