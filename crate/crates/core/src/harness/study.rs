use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::{ExperimentConfig, InitialKind, ReferenceSpec};
use super::metric::{error_metric, estimate_order};
use crate::error::{Error, Result};
use crate::gb::{evolve, homogenize, recover_state, regularity_requirement, GbState};
use crate::initial_data::{rough_state, soliton_state};
use crate::oracle::{reference_evolve, ReferenceMethod};
use crate::spectral::TorusGrid;

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub tau: f64,
    /// `Err` holds the failure message of a run that did not finish.
    pub error: std::result::Result<f64, String>,
    /// Order against the previous row, when both runs succeeded.
    pub pairwise_order: Option<f64>,
}

/// Rows in strictly decreasing `tau`, plus `#` metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorTable {
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<ErrorRow>,
    /// Least-squares order over the successful rows, when there are two.
    pub slope: Option<f64>,
}

impl ErrorTable {
    /// Builds a table from per-step results, filling in the orders.
    pub fn from_results(
        metadata: Vec<(String, String)>,
        taus: &[f64],
        errors: Vec<std::result::Result<f64, String>>,
    ) -> Self {
        let mut rows: Vec<ErrorRow> = taus
            .iter()
            .zip(errors)
            .map(|(&tau, error)| ErrorRow {
                tau,
                error,
                pairwise_order: None,
            })
            .collect();
        for i in 1..rows.len() {
            if let (Ok(prev), Ok(cur)) = (&rows[i - 1].error, &rows[i].error) {
                if *prev > 0.0 && *cur > 0.0 {
                    rows[i].pairwise_order =
                        Some((prev / cur).ln() / (rows[i - 1].tau / rows[i].tau).ln());
                }
            }
        }
        let (ok_taus, ok_errors): (Vec<f64>, Vec<f64>) = rows
            .iter()
            .filter_map(|r| r.error.as_ref().ok().map(|e| (r.tau, *e)))
            .unzip();
        let slope = estimate_order(&ok_taus, &ok_errors).ok().map(|o| o.slope);
        Self {
            metadata,
            rows,
            slope,
        }
    }

    pub fn all_failed(&self) -> bool {
        self.rows.iter().all(|r| r.error.is_err())
    }

    /// Header lines, `tau,error_hr,pairwise_order`, one line per row.
    ///
    /// Numbers use 16 significant digits. A failed row carries `nan` and is
    /// explained in a trailing `#` line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        match self.slope {
            Some(s) => {
                let _ = writeln!(out, "# slope = {s:.15e}");
            }
            None => out.push_str("# slope = none\n"),
        }
        out.push_str("tau,error_hr,pairwise_order\n");
        for row in &self.rows {
            let error = match &row.error {
                Ok(e) => format!("{e:.15e}"),
                Err(_) => "nan".into(),
            };
            let order = row
                .pairwise_order
                .map_or(String::new(), |p| format!("{p:.15e}"));
            let _ = writeln!(out, "{:.15e},{error},{order}", row.tau);
        }
        for row in &self.rows {
            if let Err(msg) = &row.error {
                let _ = writeln!(out, "# failed tau = {:.15e}: {msg}", row.tau);
            }
        }
        out
    }
}

fn initial_state(cfg: &ExperimentConfig, grid: &TorusGrid) -> Result<GbState> {
    match cfg.initial {
        InitialKind::Soliton(p) => soliton_state(&p, 0.0, grid),
        InitialKind::Rough(p) => rough_state(&p, grid),
    }
}

/// Grid described by the configuration.
pub fn build_grid(cfg: &ExperimentConfig) -> Result<TorusGrid> {
    Ok(TorusGrid::new(cfg.half_length, cfg.num_points)?.with_dealiasing(cfg.dealias))
}

/// Homogenized initial state described by the configuration.
pub fn build_initial(cfg: &ExperimentConfig) -> Result<crate::gb::EvolutionState> {
    let grid = build_grid(cfg)?;
    homogenize(&initial_state(cfg, &grid)?)
}

fn reference_state(cfg: &ExperimentConfig, grid: &TorusGrid) -> Result<GbState> {
    let s0 = homogenize(&initial_state(cfg, grid)?)?;
    match (cfg.reference, cfg.initial) {
        (ReferenceSpec::Exact, InitialKind::Soliton(p)) => soliton_state(&p, cfg.t_final, grid),
        (ReferenceSpec::Exact, InitialKind::Rough(_)) => Err(Error::Config(
            "the exact reference exists only for the soliton".into(),
        )),
        (ReferenceSpec::FineStep { tau_ref }, _) => Ok(recover_state(&reference_evolve(
            &s0,
            cfg.t_final,
            tau_ref,
            ReferenceMethod::FineStep,
        )?)),
        (ReferenceSpec::IntegratingFactor { tau_ref }, _) => Ok(recover_state(&reference_evolve(
            &s0,
            cfg.t_final,
            tau_ref,
            ReferenceMethod::IntegratingFactorRk4,
        )?)),
    }
}

/// Runs the study: one trajectory per step size, each compared with the
/// reference at the final time.
///
/// Step sizes run concurrently; row order follows the configuration. A run
/// that diverges marks its row as failed without stopping the others. Errors
/// in building the initial data or the reference abort the study.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ErrorTable> {
    cfg.validate()?;
    let grid = build_grid(cfg)?;
    let s0 = homogenize(&initial_state(cfg, &grid)?)?;
    let reference = reference_state(cfg, &grid)?;

    let errors: Vec<std::result::Result<f64, String>> = cfg
        .taus
        .par_iter()
        .map(|&tau| {
            let n = (cfg.t_final / tau).round() as usize;
            evolve(&s0, tau, n, None)
                .and_then(|s| error_metric(&recover_state(&s), &reference, cfg.r))
                .map_err(|e| e.to_string())
                .and_then(|e| {
                    if e.is_finite() {
                        Ok(e)
                    } else {
                        Err("error is not finite".into())
                    }
                })
        })
        .collect();

    let mut metadata = cfg.metadata();
    if let Ok(p) = regularity_requirement(cfg.r) {
        let plus = if p.strict_plus { "+" } else { "" };
        metadata.push(("p(r)".into(), format!("{}{plus}", p.value)));
    }
    Ok(ErrorTable::from_results(metadata, &cfg.taus, errors))
}
