use rayon::prelude::*;

use super::config::{ExperimentConfig, Method, SweepAxis};
use crate::beamformers::{
    an_beamformer, benchmark_phase, flops_max_sr_slnr, flops_mrt_nsp_pa, max_sr_slnr, mrt_cm, mrt_nsp_pa,
    BenchmarkKind, MrtVariant,
};
use crate::channel::{build_channels, ChannelSet};
use crate::error::Result;
use crate::metrics::{evaluate, BeamformingSolution, PowerBudget};

/// One aggregated (axis value, method) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    /// Method name, suffixed with `@ns=<n>` when the config repeats the
    /// sweep over several IRS sizes.
    pub method: String,
    pub mean_sr: f64,
    /// Sample standard deviation across trials (0 for a single trial).
    pub std_sr: f64,
    pub mean_iters: f64,
    /// Operation count of the method at this point; 0 for benchmarks.
    pub flops: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn rows_for<'a>(&'a self, method: &'a str) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |r| r.method == method)
    }
}

/// Seed of one trial. Mixing the method label rather than its position
/// means adding or reordering methods leaves every other draw unchanged.
pub fn trial_seed(master: u64, axis_index: usize, method: &str, trial: usize) -> u64 {
    let mut h = splitmix(master ^ 0x6a09_e667_f3bc_c908);
    for word in [axis_index as u64, fnv1a(method.as_bytes()), trial as u64] {
        h = splitmix(h ^ word);
    }
    h
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// A fully specified network at one axis value.
struct Point {
    axis_index: usize,
    axis_value: f64,
    ns: usize,
    label_suffix: String,
    channels: ChannelSet,
    power: PowerBudget,
    steer: Option<f64>,
}

struct Series<'a> {
    point: &'a Point,
    method: &'a Method,
    label: String,
    trials: usize,
}

struct Trial {
    secrecy_rate: f64,
    iterations: usize,
}

fn build_points(cfg: &ExperimentConfig) -> Result<Vec<Point>> {
    let values = cfg.sweep.values()?;
    let base_power = cfg.power.budget()?;
    let sizes: Vec<(usize, String)> = match &cfg.array.ns_list {
        Some(list) => list.iter().map(|&n| (n, format!("@ns={n}"))).collect(),
        None => vec![(cfg.array.n_irs, String::new())],
    };
    let mut specs = Vec::new();
    for (axis_index, &value) in values.iter().enumerate() {
        for (ns, suffix) in &sizes {
            specs.push((axis_index, value, *ns, suffix.clone()));
        }
    }
    specs
        .into_par_iter()
        .map(|(axis_index, axis_value, ns, label_suffix)| {
            let mut geometry = cfg.geometry.clone();
            let mut power = base_power;
            let mut ns = ns;
            let mut steer = None;
            match cfg.sweep.axis {
                SweepAxis::Ns => ns = axis_value as usize,
                SweepAxis::SnrDb => {
                    power.total_power = power.noise_bob * 10f64.powf(axis_value / 10.0);
                }
                SweepAxis::DAb => geometry = geometry.with_bob_distance(axis_value)?,
                SweepAxis::ThetaCmDeg => steer = Some(axis_value.to_radians()),
            }
            let channels = build_channels(&geometry, &cfg.array.alice(), &cfg.array.irs(ns), &cfg.path_loss)?;
            Ok(Point { axis_index, axis_value, ns, label_suffix, channels, power, steer })
        })
        .collect()
}

fn run_trial(cfg: &ExperimentConfig, series: &Series, seed: u64) -> Result<Trial> {
    let p = series.point;
    let ch = &p.channels;
    let steered = |fallback: MrtVariant| p.steer.map(MrtVariant::TowardAngle).unwrap_or(fallback);
    let benchmark = |kind| -> Result<BeamformingSolution> {
        Ok(BeamformingSolution {
            v_cm: mrt_cm(ch, steered(MrtVariant::TowardAi))?,
            v_an: an_beamformer(ch)?,
            theta: benchmark_phase(kind, ch.n_irs(), seed),
        })
    };
    let (solution, iterations) = match series.method {
        Method::MaxSrSlnr => {
            let out = max_sr_slnr(ch, &p.power, &cfg.max_sr_config(seed))?;
            return Ok(Trial { secrecy_rate: out.secrecy_rate, iterations: out.iterations });
        }
        Method::MrtNspPa { variant, .. } => (mrt_nsp_pa(ch, steered(*variant))?, 0),
        Method::RandomPhase => (benchmark(BenchmarkKind::RandomPhase)?, 0),
        Method::NoIrs => (benchmark(BenchmarkKind::NoIrs)?, 0),
    };
    Ok(Trial { secrecy_rate: evaluate(ch, &solution, &p.power)?.secrecy_rate, iterations })
}

fn aggregate(cfg: &ExperimentConfig, series: &Series, trials: &[Trial]) -> SweepRow {
    let n = trials.len() as f64;
    let mean_sr = trials.iter().map(|t| t.secrecy_rate).sum::<f64>() / n;
    let std_sr = if trials.len() > 1 {
        (trials.iter().map(|t| (t.secrecy_rate - mean_sr).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let mean_iters = trials.iter().map(|t| t.iterations as f64).sum::<f64>() / n;
    let (na, ns) = (cfg.array.n_alice as u64, series.point.ns as u64);
    let flops = match series.method {
        Method::MaxSrSlnr => {
            let d = (mean_iters.round() as u64).max(1);
            flops_max_sr_slnr(na, ns, d, d).total()
        }
        Method::MrtNspPa { .. } => flops_mrt_nsp_pa(na, ns).total(),
        Method::RandomPhase | Method::NoIrs => 0,
    };
    SweepRow { axis_value: series.point.axis_value, method: series.label.clone(), mean_sr, std_sr, mean_iters, flops }
}

/// Runs every (axis value, method, trial) combination on the current rayon
/// pool. Rows come out ordered by axis value, then IRS size, then method in
/// config order, whatever order the trials finish in.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let points = build_points(cfg)?;
    let series: Vec<Series> = points
        .iter()
        .flat_map(|point| {
            cfg.methods.iter().map(move |method| Series {
                point,
                method,
                label: format!("{}{}", method.name(), point.label_suffix),
                trials: if method.is_deterministic() { 1 } else { cfg.trials },
            })
        })
        .collect();
    let jobs: Vec<(usize, usize)> =
        series.iter().enumerate().flat_map(|(s, sr)| (0..sr.trials).map(move |t| (s, t))).collect();
    let outcomes: Vec<Trial> = jobs
        .par_iter()
        .map(|&(s, t)| {
            let sr = &series[s];
            run_trial(cfg, sr, trial_seed(cfg.seed, sr.point.axis_index, &sr.label, t))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(series.len());
    let mut offset = 0;
    for sr in &series {
        rows.push(aggregate(cfg, sr, &outcomes[offset..offset + sr.trials]));
        offset += sr.trials;
    }
    Ok(SweepResult { axis: cfg.sweep.axis, rows })
}
