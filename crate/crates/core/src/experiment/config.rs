use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::beamformers::{MaxSrSlnrConfig, MrtVariant};
use crate::channel::{NetworkGeometry, PathLossModel, SteeringConfig};
use crate::error::{Error, Result};
use crate::metrics::PowerBudget;

/// A beamforming scheme or benchmark that a sweep can evaluate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Method {
    MaxSrSlnr,
    /// MRT-NSP-PA. `suffixed` records whether the config named the variant
    /// (`mrt-nsp-pa-ai`) or relied on the default (`mrt-nsp-pa`), so the CSV
    /// echoes the same spelling.
    MrtNspPa {
        variant: MrtVariant,
        suffixed: bool,
    },
    RandomPhase,
    NoIrs,
}

impl Method {
    pub const NAMES: [&'static str; 7] =
        ["max-sr-slnr", "mrt-nsp-pa", "mrt-nsp-pa-ab", "mrt-nsp-pa-sum", "mrt-nsp-pa-ai", "random-phase", "no-irs"];

    pub fn name(&self) -> &'static str {
        match self {
            Method::MaxSrSlnr => "max-sr-slnr",
            Method::MrtNspPa { suffixed: false, .. } => "mrt-nsp-pa",
            Method::MrtNspPa { variant: MrtVariant::TowardAb, .. } => "mrt-nsp-pa-ab",
            Method::MrtNspPa { variant: MrtVariant::TowardSum, .. } => "mrt-nsp-pa-sum",
            Method::MrtNspPa { .. } => "mrt-nsp-pa-ai",
            Method::RandomPhase => "random-phase",
            Method::NoIrs => "no-irs",
        }
    }

    /// True when the outcome does not depend on the trial seed.
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Method::MrtNspPa { .. } | Method::NoIrs)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mrt = |variant, suffixed| Ok(Method::MrtNspPa { variant, suffixed });
        match s {
            "max-sr-slnr" => Ok(Method::MaxSrSlnr),
            "mrt-nsp-pa" => mrt(MrtVariant::TowardAi, false),
            "mrt-nsp-pa-ab" => mrt(MrtVariant::TowardAb, true),
            "mrt-nsp-pa-sum" => mrt(MrtVariant::TowardSum, true),
            "mrt-nsp-pa-ai" => mrt(MrtVariant::TowardAi, true),
            "random-phase" => Ok(Method::RandomPhase),
            "no-irs" => Ok(Method::NoIrs),
            _ => Err(Error::Config(format!("unknown method '{s}' (expected one of {})", Method::NAMES.join(", ")))),
        }
    }
}

impl TryFrom<String> for Method {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Method> for String {
    fn from(m: Method) -> Self {
        m.name().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// IRS element count.
    Ns,
    /// `P_t / sigma_b^2` in dB; the transmit power follows the axis.
    SnrDb,
    /// Alice-Bob distance in metres; Bob moves along his departure ray.
    DAb,
    /// Steering angle of the MRT confidential-message beam, in degrees.
    ThetaCmDeg,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Ns => "ns",
            SweepAxis::SnrDb => "snr_db",
            SweepAxis::DAb => "d_ab",
            SweepAxis::ThetaCmDeg => "theta_cm_deg",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Axis values, either listed or as `points` evenly spaced values from
/// `start` to `stop` inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub start: Option<f64>,
    #[serde(default)]
    pub stop: Option<f64>,
    #[serde(default)]
    pub points: Option<usize>,
}

impl SweepConfig {
    pub fn values(&self) -> Result<Vec<f64>> {
        let values = match (&self.values, self.start, self.stop, self.points) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(start), Some(stop), Some(points)) => {
                if points == 0 {
                    return Err(Error::Config("sweep.points must be >= 1".into()));
                }
                if points == 1 {
                    vec![start]
                } else {
                    let step = (stop - start) / (points - 1) as f64;
                    (0..points).map(|i| if i == points - 1 { stop } else { start + i as f64 * step }).collect()
                }
            }
            _ => return Err(Error::Config("sweep needs either `values` or all of `start`, `stop`, `points`".into())),
        };
        if values.is_empty() {
            return Err(Error::Config("sweep has no values".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Config(format!("sweep value {bad} is not finite")));
        }
        for &v in &values {
            match self.axis {
                SweepAxis::Ns if v < 1.0 || v.fract() != 0.0 => {
                    return Err(Error::Config(format!("ns sweep value {v} is not a positive integer")))
                }
                SweepAxis::DAb if v <= 0.0 => {
                    return Err(Error::Config(format!("d_ab sweep value {v} must be positive")))
                }
                SweepAxis::ThetaCmDeg if !(0.0..=180.0).contains(&v) => {
                    return Err(Error::Config(format!("theta_cm_deg sweep value {v} is outside [0, 180]")))
                }
                _ => {}
            }
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrayConfig {
    pub n_alice: usize,
    /// IRS size when the sweep axis is not `ns`.
    pub n_irs: usize,
    /// Repeat the sweep for each IRS size; method labels gain `@ns=<n>`.
    pub ns_list: Option<Vec<usize>>,
    pub spacing_over_wavelength: f64,
}

impl Default for ArrayConfig {
    fn default() -> Self {
        Self { n_alice: 16, n_irs: 128, ns_list: None, spacing_over_wavelength: 0.5 }
    }
}

impl ArrayConfig {
    pub fn alice(&self) -> SteeringConfig {
        SteeringConfig { element_count: self.n_alice, spacing_over_wavelength: self.spacing_over_wavelength }
    }

    pub fn irs(&self, ns: usize) -> SteeringConfig {
        SteeringConfig { element_count: ns, spacing_over_wavelength: self.spacing_over_wavelength }
    }
}

/// Power settings in dBm, converted to watts once at load time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerConfig {
    pub total_dbm: f64,
    pub noise_bob_dbm: f64,
    pub noise_eve_dbm: f64,
    /// Fraction of the transmit power on the confidential message.
    pub beta_cm: f64,
}

impl Default for PowerConfig {
    fn default() -> Self {
        Self { total_dbm: 30.0, noise_bob_dbm: -40.0, noise_eve_dbm: -40.0, beta_cm: 0.8 }
    }
}

impl PowerConfig {
    pub fn budget(&self) -> Result<PowerBudget> {
        PowerBudget::from_dbm(self.total_dbm, self.beta_cm, self.noise_bob_dbm, self.noise_eve_dbm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub epsilon: f64,
    pub max_iterations: usize,
    pub restarts: usize,
    pub align_global_phase: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let d = MaxSrSlnrConfig::default();
        Self {
            epsilon: d.epsilon,
            max_iterations: d.max_iterations,
            restarts: d.restarts,
            align_global_phase: d.align_global_phase,
        }
    }
}

fn default_trials() -> usize {
    100
}

/// One sweep, usually loaded from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub seed: u64,
    /// Monte-Carlo trials per seeded method; deterministic methods run once.
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub methods: Vec<Method>,
    #[serde(default)]
    pub array: ArrayConfig,
    #[serde(default)]
    pub power: PowerConfig,
    #[serde(default)]
    pub path_loss: PathLossModel,
    #[serde(default)]
    pub geometry: NetworkGeometry,
    #[serde(default)]
    pub solver: SolverConfig,
    pub sweep: SweepConfig,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Every check that can fail before any channel is built.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods list is empty".into()));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(Error::Config(format!("method '{m}' listed twice")));
            }
        }
        self.sweep.values()?;
        if self.sweep.axis == SweepAxis::ThetaCmDeg {
            let fixed = self
                .methods
                .iter()
                .find(|m| matches!(m, Method::MaxSrSlnr) || matches!(m, Method::MrtNspPa { suffixed: true, .. }));
            if let Some(m) = fixed {
                return Err(Error::Config(format!("method '{m}' has no steerable CM beam for a theta_cm_deg sweep")));
            }
        }
        match &self.array.ns_list {
            Some(_) if self.sweep.axis == SweepAxis::Ns => {
                return Err(Error::Config("array.ns_list conflicts with an ns sweep".into()))
            }
            Some(list) if list.is_empty() || list.contains(&0) => {
                return Err(Error::Config("array.ns_list must hold positive sizes".into()))
            }
            _ => {}
        }
        self.array.alice().validate()?;
        self.array.irs(self.array.n_irs).validate()?;
        self.power.budget()?;
        self.path_loss.validate()?;
        self.geometry.resolve()?;
        self.max_sr_config(0).validate()?;
        Ok(())
    }

    pub fn max_sr_config(&self, seed: u64) -> MaxSrSlnrConfig {
        MaxSrSlnrConfig {
            epsilon: self.solver.epsilon,
            max_iterations: self.solver.max_iterations,
            initial_phase: crate::beamformers::InitialPhase::Random { seed },
            restarts: self.solver.restarts,
            align_global_phase: self.solver.align_global_phase,
        }
    }
}
