//! Flat `key = value` experiment configuration.
//!
//! Keys are the long CLI flag names. Real values accept plain decimals plus
//! `pi`, `a/b` and `b^e`; the step list `taus` is comma separated. Anything
//! after `#` on a line is ignored.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::initial_data::{RoughParams, RoughVelocity, SolitonParams, BOUNDARY_TOL};

pub const KEYS: &[&str] = &[
    "init",
    "omega",
    "zeta0",
    "vsign",
    "theta",
    "theta-velocity",
    "seed",
    "half-length",
    "M",
    "T",
    "r",
    "taus",
    "reference",
    "tau-ref",
    "dealias",
    "out",
];

/// Raw key/value pairs, later entries overriding earlier ones.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = Self::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected key = value, got {line:?}",
                    lineno + 1
                ))
            })?;
            map.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(map)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = canonical_key(key)?;
        self.entries.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Applies every entry of `other` on top of `self`.
    pub fn merge(&mut self, other: &ConfigMap) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
    }
}

fn canonical_key(key: &str) -> Result<&'static str> {
    let normalized = key.replace('_', "-");
    KEYS.iter()
        .find(|k| **k == normalized || (k.len() > 1 && k.eq_ignore_ascii_case(&normalized)))
        .copied()
        .ok_or_else(|| Error::Config(format!("unknown key {key:?}")))
}

/// Parses a real number, also accepting `pi`, `a/b` and `b^e`.
pub fn parse_real(text: &str) -> Result<f64> {
    let text = text.trim();
    let bad = || Error::Config(format!("cannot parse {text:?} as a number"));
    let value = if let Some((num, den)) = text.split_once('/') {
        parse_real(num)? / parse_real(den)?
    } else if let Some((base, exp)) = text.split_once('^') {
        parse_real(base)?.powf(parse_real(exp)?)
    } else if text.eq_ignore_ascii_case("pi") {
        PI
    } else {
        text.parse::<f64>().map_err(|_| bad())?
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

fn parse_bool(text: &str) -> Result<bool> {
    match text.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!("cannot parse {text:?} as a boolean"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialKind {
    Soliton(SolitonParams),
    Rough(RoughParams),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReferenceSpec {
    /// The soliton formula evaluated at the final time.
    Exact,
    /// The integrator under test with a small step.
    FineStep { tau_ref: f64 },
    /// Integrating-factor RK4.
    IntegratingFactor { tau_ref: f64 },
}

impl ReferenceSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ReferenceSpec::Exact => "exact",
            ReferenceSpec::FineStep { .. } => "fine-psi1",
            ReferenceSpec::IntegratingFactor { .. } => "if-rk",
        }
    }

    pub fn tau_ref(&self) -> Option<f64> {
        match self {
            ReferenceSpec::Exact => None,
            ReferenceSpec::FineStep { tau_ref } | ReferenceSpec::IntegratingFactor { tau_ref } => {
                Some(*tau_ref)
            }
        }
    }
}

/// A validated convergence study.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub initial: InitialKind,
    pub half_length: f64,
    pub num_points: usize,
    pub t_final: f64,
    pub r: f64,
    /// Strictly decreasing.
    pub taus: Vec<f64>,
    pub reference: ReferenceSpec,
    pub dealias: bool,
    pub out: Option<PathBuf>,
}

/// `2^-4, 2^-5, ..., 2^-10`.
pub fn default_taus() -> Vec<f64> {
    (4..=10).map(|e| 2f64.powi(-e)).collect()
}

fn divides(tau: f64, t: f64) -> bool {
    let n = (t / tau).round();
    n >= 1.0 && (n * tau - t).abs() <= 1e-9 * t
}

impl ExperimentConfig {
    pub fn from_map(map: &ConfigMap) -> Result<Self> {
        let real = |key: &str, default: f64| -> Result<f64> {
            map.get(key).map_or(Ok(default), |v| {
                parse_real(v).map_err(|e| Error::Config(format!("{key}: {e}")))
            })
        };

        let kind = map.get("init").unwrap_or("soliton");
        let (initial, default_half_length, default_m) = match kind {
            "soliton" => {
                let p = SolitonParams::new(
                    real("omega", 0.5)?,
                    real("zeta0", 0.0)?,
                    real("vsign", 1.0)?,
                )
                .map_err(|e| Error::Config(e.to_string()))?;
                // dx = 1/64 on [-80, 80]
                (InitialKind::Soliton(p), 80.0, 10240)
            }
            "rough" => {
                let theta = real("theta", 2.0)?;
                let seed = match map.get("seed") {
                    None => 0,
                    Some(v) => v
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Config(format!("seed: cannot parse {v:?}")))?,
                };
                let velocity = match map.get("theta-velocity") {
                    Some(v) if v.trim().eq_ignore_ascii_case("zero") => RoughVelocity::Zero,
                    Some(_) => RoughVelocity::Sobolev(real("theta-velocity", 0.0)?),
                    None => RoughVelocity::Sobolev(theta - 2.0),
                };
                let p = RoughParams::with_velocity(theta, seed, velocity)
                    .map_err(|e| Error::Config(e.to_string()))?;
                (InitialKind::Rough(p), PI, 4096)
            }
            other => {
                return Err(Error::Config(format!(
                    "init must be soliton or rough, got {other:?}"
                )))
            }
        };

        let half_length = real("half-length", default_half_length)?;
        let num_points = match map.get("M") {
            None => default_m,
            Some(v) => {
                let m = parse_real(v).map_err(|e| Error::Config(format!("M: {e}")))?;
                if m.fract() != 0.0 || m < 4.0 {
                    return Err(Error::Config(format!("M must be an integer >= 4, got {v}")));
                }
                m as usize
            }
        };

        let mut taus = match map.get("taus") {
            None => default_taus(),
            Some(list) => list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_real(s).map_err(|e| Error::Config(format!("taus: {e}"))))
                .collect::<Result<Vec<f64>>>()?,
        };
        taus.sort_by(|a, b| b.total_cmp(a));

        let default_reference = match initial {
            InitialKind::Soliton(_) => "exact",
            InitialKind::Rough(_) => "fine-psi1",
        };
        let min_tau = taus.last().copied().unwrap_or(f64::NAN);
        let tau_ref = real("tau-ref", min_tau / 20.0)?;
        let reference = match map.get("reference").unwrap_or(default_reference) {
            "exact" => ReferenceSpec::Exact,
            "fine-psi1" => ReferenceSpec::FineStep { tau_ref },
            "if-rk" => ReferenceSpec::IntegratingFactor { tau_ref },
            other => {
                return Err(Error::Config(format!(
                    "reference must be exact, fine-psi1 or if-rk, got {other:?}"
                )))
            }
        };

        let cfg = Self {
            initial,
            half_length,
            num_points,
            t_final: real("T", 1.0)?,
            r: real("r", 2.0)?,
            taus,
            reference,
            dealias: map.get("dealias").map_or(Ok(false), parse_bool)?,
            out: map.get("out").map(PathBuf::from),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.half_length.is_nan() || self.half_length <= 0.0 {
            return fail(format!(
                "half-length must be positive, got {}",
                self.half_length
            ));
        }
        if !self.num_points.is_multiple_of(2) || self.num_points < 4 {
            return fail(format!("M must be even and >= 4, got {}", self.num_points));
        }
        if self.t_final.is_nan() || self.t_final <= 0.0 {
            return fail(format!("T must be positive, got {}", self.t_final));
        }
        if !self.r.is_finite() {
            return fail("r must be finite".into());
        }
        if self.taus.is_empty() {
            return fail("taus must not be empty".into());
        }
        if self.taus.windows(2).any(|w| w[0] <= w[1]) {
            return fail("taus must be distinct".into());
        }
        for &tau in &self.taus {
            if tau.is_nan() || tau <= 0.0 || !divides(tau, self.t_final) {
                return fail(format!("tau = {tau} does not divide T = {}", self.t_final));
            }
        }
        let min_tau = *self.taus.last().expect("non-empty");
        if let Some(tau_ref) = self.reference.tau_ref() {
            if !(tau_ref > 0.0 && tau_ref < min_tau / 10.0) {
                return fail(format!(
                    "tau-ref = {tau_ref} must be positive and below min(taus)/10 = {}",
                    min_tau / 10.0
                ));
            }
            if !divides(tau_ref, self.t_final) {
                return fail(format!(
                    "tau-ref = {tau_ref} does not divide T = {}",
                    self.t_final
                ));
            }
        }
        match self.initial {
            InitialKind::Soliton(p) => {
                for t in [0.0, self.t_final] {
                    let l = self.half_length;
                    let edge = p.height(-l, t).abs().max(p.height(l, t).abs());
                    if edge >= BOUNDARY_TOL {
                        return fail(format!(
                            "soliton reaches {edge:e} at the boundary at t = {t}; enlarge half-length"
                        ));
                    }
                }
            }
            InitialKind::Rough(_) => {
                if self.reference == ReferenceSpec::Exact {
                    return fail("the exact reference exists only for the soliton".into());
                }
                if self.half_length != PI {
                    return fail("rough data requires half-length = pi".into());
                }
            }
        }
        Ok(())
    }

    /// `# key = value` lines describing the study, excluding the output path.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        match self.initial {
            InitialKind::Soliton(p) => {
                push("init", "soliton".into());
                push("omega", p.omega.to_string());
                push("zeta0", p.zeta0.to_string());
                push("vsign", p.velocity_sign.to_string());
            }
            InitialKind::Rough(p) => {
                push("init", "rough".into());
                push("theta", p.theta.to_string());
                push(
                    "theta-velocity",
                    match p.velocity {
                        RoughVelocity::Sobolev(s) => s.to_string(),
                        RoughVelocity::Zero => "zero".into(),
                    },
                );
                push("seed", p.seed.to_string());
            }
        }
        push("half-length", self.half_length.to_string());
        push("M", self.num_points.to_string());
        push("T", self.t_final.to_string());
        push("r", self.r.to_string());
        let mut taus = String::new();
        for (i, t) in self.taus.iter().enumerate() {
            let _ = write!(taus, "{}{t}", if i > 0 { "," } else { "" });
        }
        push("taus", taus);
        push("reference", self.reference.name().into());
        if let Some(tau_ref) = self.reference.tau_ref() {
            push("tau-ref", tau_ref.to_string());
        }
        push("dealias", self.dealias.to_string());
        out
    }
}
