use crate::error::{Error, Result};
use crate::gb::GbState;
use crate::spectral::sobolev_norm;

/// `||z_num - z_ref||_r + ||z_t,num - z_t,ref||_{r-2}`.
pub fn error_metric(num: &GbState, reference: &GbState, r: f64) -> Result<f64> {
    if !num.grid().same_as(reference.grid()) {
        return Err(Error::InvalidInput("states live on different grids".into()));
    }
    if (num.t - reference.t).abs() > 1e-9 * num.t.abs().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "states are at different times {} and {}",
            num.t, reference.t
        )));
    }
    let dz = &num.z.to_spectrum() - &reference.z.to_spectrum();
    let dzt = &num.z_t.to_spectrum() - &reference.z_t.to_spectrum();
    Ok(sobolev_norm(&dz, r) + sobolev_norm(&dzt, r - 2.0))
}

/// Observed convergence order.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderEstimate {
    /// Least-squares slope of `log(error)` against `log(tau)`.
    pub slope: f64,
    /// `log(e_i / e_{i+1}) / log(tau_i / tau_{i+1})` for consecutive pairs.
    pub pairwise: Vec<f64>,
}

pub fn estimate_order(taus: &[f64], errors: &[f64]) -> Result<OrderEstimate> {
    if taus.len() != errors.len() {
        return Err(Error::InvalidInput(format!(
            "{} step sizes but {} errors",
            taus.len(),
            errors.len()
        )));
    }
    if taus.len() < 2 {
        return Err(Error::InvalidInput(
            "an order fit needs at least two points".into(),
        ));
    }
    if taus
        .iter()
        .chain(errors)
        .any(|v| !(v.is_finite() && *v > 0.0))
    {
        return Err(Error::InvalidInput(
            "step sizes and errors must be positive and finite".into(),
        ));
    }
    let increasing = taus.windows(2).all(|w| w[0] < w[1]);
    let decreasing = taus.windows(2).all(|w| w[0] > w[1]);
    if !(increasing || decreasing) {
        return Err(Error::InvalidInput(
            "step sizes must be strictly monotone".into(),
        ));
    }

    let xs: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let pairwise = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (y[0] - y[1]) / (x[0] - x[1]))
        .collect();
    Ok(OrderEstimate {
        slope: sxy / sxx,
        pairwise,
    })
}
