use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform periodic grid on `[-half_length, half_length)`.
///
/// Node `j` sits at `-half_length + j * 2 * half_length / M`; the right
/// endpoint is identified with the left one. Integer mode `k` has physical
/// wavenumber `k * pi / half_length`, so `half_length = pi` gives the
/// standard torus with integer wavenumbers.
///
/// Cloning is cheap: the FFT plans are shared behind an `Arc`.
#[derive(Clone)]
pub struct TorusGrid {
    inner: Arc<GridInner>,
}

struct GridInner {
    half_length: f64,
    num_points: usize,
    dealias: bool,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl TorusGrid {
    pub fn new(half_length: f64, num_points: usize) -> Result<Self> {
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::InvalidInput(format!(
                "half_length must be positive and finite, got {half_length}"
            )));
        }
        if num_points < 4 || !num_points.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "num_points must be even and at least 4, got {num_points}"
            )));
        }
        Ok(Self::build(half_length, num_points, false))
    }

    /// Grid on `[-pi, pi)`.
    pub fn torus(num_points: usize) -> Result<Self> {
        Self::new(PI, num_points)
    }

    /// Same grid with the 2/3-rule switched on or off for pointwise products.
    pub fn with_dealiasing(&self, dealias: bool) -> Self {
        if dealias == self.inner.dealias {
            return self.clone();
        }
        Self {
            inner: Arc::new(GridInner {
                dealias,
                forward: Arc::clone(&self.inner.forward),
                inverse: Arc::clone(&self.inner.inverse),
                ..*self.inner
            }),
        }
    }

    fn build(half_length: f64, num_points: usize, dealias: bool) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(num_points);
        let inverse = planner.plan_fft_inverse(num_points);
        Self {
            inner: Arc::new(GridInner {
                half_length,
                num_points,
                dealias,
                forward,
                inverse,
            }),
        }
    }

    pub fn half_length(&self) -> f64 {
        self.inner.half_length
    }

    pub fn num_points(&self) -> usize {
        self.inner.num_points
    }

    pub fn dealias(&self) -> bool {
        self.inner.dealias
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.inner.half_length / self.inner.num_points as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.inner.half_length + j as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.num_points()).map(|j| self.node(j)).collect()
    }

    /// Physical wavenumber of integer mode `k`.
    #[inline]
    pub fn wavenumber(&self, k: i64) -> f64 {
        if self.inner.half_length == PI {
            // keep integer wavenumbers exact on the standard torus
            k as f64
        } else {
            k as f64 * PI / self.inner.half_length
        }
    }

    /// Smallest represented mode, `-M/2`. It has no partner `+M/2`.
    pub fn nyquist_mode(&self) -> i64 {
        -(self.num_points() as i64) / 2
    }

    pub fn max_mode(&self) -> i64 {
        self.num_points() as i64 / 2 - 1
    }

    /// Integer mode stored at FFT index `idx`.
    #[inline]
    pub fn mode_of_index(&self, idx: usize) -> i64 {
        let m = self.num_points();
        if idx < m / 2 {
            idx as i64
        } else {
            idx as i64 - m as i64
        }
    }

    /// FFT index holding mode `k`, if it is represented.
    #[inline]
    pub fn index_of_mode(&self, k: i64) -> Option<usize> {
        if k < self.nyquist_mode() || k > self.max_mode() {
            return None;
        }
        let m = self.num_points() as i64;
        Some(if k >= 0 { k as usize } else { (k + m) as usize })
    }

    /// Represented modes in storage order.
    pub fn modes(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.num_points()).map(move |idx| self.mode_of_index(idx))
    }

    /// Wavenumbers in storage order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        self.modes().map(|k| self.wavenumber(k)).collect()
    }

    pub fn same_as(&self, other: &TorusGrid) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.num_points == other.inner.num_points
                && self.inner.half_length == other.inner.half_length
                && self.inner.dealias == other.inner.dealias)
    }

    pub(crate) fn forward_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.inner.forward
    }

    pub(crate) fn inverse_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.inner.inverse
    }
}

impl fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGrid")
            .field("half_length", &self.inner.half_length)
            .field("num_points", &self.inner.num_points)
            .field("dealias", &self.inner.dealias)
            .finish()
    }
}

impl PartialEq for TorusGrid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}
