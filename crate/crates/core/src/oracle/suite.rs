//! Property suite run by `dmsec verify` and by the acceptance tests.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    grid_max_cascaded_power, random_channel_set, random_phase_vector, random_unit_vector, sample_max_quotient,
    scalar_sinr, GridSpec,
};
use crate::beamformers::{
    an_beamformer, benchmark_solution, constraint_matrix, max_sr_slnr, mrt_cm, mrt_nsp_pa, pa_phase, BenchmarkKind,
    InitialPhase, MaxSrSlnrConfig, MrtVariant,
};
use crate::channel::{build_channels, ChannelSet, NetworkGeometry, PathLossModel, SteeringConfig};
use crate::error::Result;
use crate::linalg::{dominant_gen_eigvec, CMatrix, CVector};
use crate::metrics::{cascaded_power_bob, evaluate, sinr_bob, sinr_eve, BeamformingSolution, PowerBudget, Receiver};

pub const NSP_TOL: f64 = 1e-10;
pub const UNIT_TOL: f64 = 1e-10;
pub const GRID_TOL: f64 = 1e-9;
pub const SINR_TOL: f64 = 1e-10;
pub const EIG_SAMPLES: usize = 100_000;
pub const EIG_INSTANCES: usize = 50;
pub const SINR_INSTANCES: usize = 50;
pub const KEEP_BEST_SEEDS: u64 = 20;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

type Check = fn() -> Result<CheckOutcome>;

const CHECKS: [(&str, Check); 6] = [
    ("nsp_orthogonality", nsp_orthogonality),
    ("unit_norm_and_modulus", unit_invariants),
    ("gen_eigvec_beats_sampling", gen_eigvec_vs_sampling),
    ("pa_beats_phase_grid", pa_vs_grid),
    ("metrics_match_scalar_sinr", metrics_vs_scalar),
    ("max_sr_slnr_keep_best", keep_best),
];

/// Runs every check (in parallel); results keep the fixed check order.
pub fn run_property_suite() -> Vec<CheckOutcome> {
    CHECKS
        .par_iter()
        .map(|(name, check)| {
            check().unwrap_or_else(|e| CheckOutcome { name, passed: false, detail: format!("error: {e}") })
        })
        .collect()
}

fn reference(ns: usize) -> Result<ChannelSet> {
    build_channels(
        &NetworkGeometry::default(),
        &SteeringConfig::new(16),
        &SteeringConfig::new(ns),
        &PathLossModel::default(),
    )
}

fn outcome(name: &'static str, worst: f64, tol: f64, what: &str) -> CheckOutcome {
    CheckOutcome { name, passed: worst <= tol, detail: format!("worst {what} {worst:.3e} (tolerance {tol:.0e})") }
}

fn nsp_orthogonality() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for ns in [4, 16, 64, 256, 1024] {
        let ch = reference(ns)?;
        let v = an_beamformer(&ch)?;
        worst = worst.max((constraint_matrix(&ch) * &v).norm());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..20 {
        let na = rng.random_range(3..=8);
        let ns = rng.random_range(1..=6);
        let ch = random_channel_set(&mut rng, na, ns);
        let v = an_beamformer(&ch)?;
        worst = worst.max((constraint_matrix(&ch) * &v).norm());
    }
    Ok(outcome("nsp_orthogonality", worst, NSP_TOL, "|P v_an|"))
}

fn unit_violation(sol: &BeamformingSolution, allow_zero_theta: bool) -> f64 {
    let mut worst = (sol.v_cm.norm() - 1.0).abs().max((sol.v_an.norm() - 1.0).abs());
    for t in sol.theta.iter() {
        let m = t.norm();
        let dev = if allow_zero_theta { m.min((m - 1.0).abs()) } else { (m - 1.0).abs() };
        worst = worst.max(dev);
    }
    worst
}

fn unit_invariants() -> Result<CheckOutcome> {
    let pw = PowerBudget::reference();
    let mut worst = 0.0f64;
    for ns in [1, 16, 128] {
        let ch = reference(ns)?;
        for variant in [MrtVariant::TowardAb, MrtVariant::TowardSum, MrtVariant::TowardAi, MrtVariant::TowardAngle(1.2)]
        {
            worst = worst.max(unit_violation(&mrt_nsp_pa(&ch, variant)?, false));
        }
        let cfg = MaxSrSlnrConfig { initial_phase: InitialPhase::Random { seed: ns as u64 }, ..Default::default() };
        worst = worst.max(unit_violation(&max_sr_slnr(&ch, &pw, &cfg)?.solution, false));
        worst = worst.max(unit_violation(&benchmark_solution(&ch, BenchmarkKind::RandomPhase, 5)?, false));
        let off = benchmark_solution(&ch, BenchmarkKind::NoIrs, 5)?;
        worst = worst.max(unit_violation(&off, true));
        worst = worst.max(off.theta.norm());
    }
    Ok(outcome("unit_norm_and_modulus", worst, UNIT_TOL, "deviation"))
}

fn random_hermitian_pair(rng: &mut ChaCha8Rng, n: usize) -> (CMatrix, CMatrix) {
    let rank = rng.random_range(1..=n);
    let g = CMatrix::from_fn(n, rank, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let k = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let ridge = 10f64.powf(-2.0 + 2.0 * rng.random::<f64>());
    let a = &g * g.adjoint();
    let b = &k * k.adjoint() + CMatrix::identity(n, n) * Complex64::from(ridge);
    (a, b)
}

fn gen_eigvec_vs_sampling() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let instances: Vec<(CMatrix, CMatrix, u64)> = (0..EIG_INSTANCES)
        .map(|i| {
            let n = rng.random_range(2..=8);
            let (a, b) = random_hermitian_pair(&mut rng, n);
            (a, b, 1000 + i as u64)
        })
        .collect();
    // worst relative excess of the sampled maximum over the eigen solution
    let excesses: Vec<f64> = instances
        .par_iter()
        .map(|(a, b, seed)| -> Result<f64> {
            let exact = dominant_gen_eigvec(a, b)?.quotient;
            let sampled = sample_max_quotient(a, b, EIG_SAMPLES, *seed)?;
            Ok((sampled - exact) / exact.abs())
        })
        .collect::<Result<_>>()?;
    let worst = excesses.into_iter().fold(f64::MIN, f64::max);
    Ok(CheckOutcome {
        name: "gen_eigvec_beats_sampling",
        passed: worst <= 1e-12,
        detail: format!("{EIG_INSTANCES} instances x {EIG_SAMPLES} samples, worst (sampled - exact)/exact {worst:.3e}"),
    })
}

fn pa_vs_grid() -> Result<CheckOutcome> {
    let pw = PowerBudget::reference();
    let grid = GridSpec::new(360, 2)?;
    let mut cases: Vec<(ChannelSet, CVector)> = Vec::new();
    let ch = reference(2)?;
    for variant in [MrtVariant::TowardAb, MrtVariant::TowardSum, MrtVariant::TowardAi] {
        cases.push((ch.clone(), mrt_cm(&ch, variant)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..5 {
        let ch = random_channel_set(&mut rng, 4, 2);
        let v = random_unit_vector(&mut rng, 4);
        cases.push((ch, v));
    }
    let ratios: Vec<f64> = cases
        .par_iter()
        .map(|(ch, v)| -> Result<f64> {
            let pa = cascaded_power_bob(ch, v, &pa_phase(ch, v).theta, &pw);
            let (_, best) = grid_max_cascaded_power(ch, v, &pw, grid)?;
            Ok((best - pa) / pa)
        })
        .collect::<Result<_>>()?;
    let worst = ratios.into_iter().fold(f64::MIN, f64::max);
    Ok(CheckOutcome {
        name: "pa_beats_phase_grid",
        passed: worst <= GRID_TOL,
        detail: format!("360^2 grid, worst (grid - pa)/pa {worst:.3e} (tolerance {GRID_TOL:.0e})"),
    })
}

fn metrics_vs_scalar() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    for _ in 0..SINR_INSTANCES {
        let na = rng.random_range(1..=4);
        let ns = rng.random_range(1..=4);
        let ch = random_channel_set(&mut rng, na, ns);
        let pw = PowerBudget::new(
            10f64.powf(rng.random_range(-3.0..1.0)),
            rng.random_range(0.1..0.9),
            1e-7,
            10f64.powf(rng.random_range(-9.0..-6.0)),
        )?;
        let sol = BeamformingSolution {
            v_cm: random_unit_vector(&mut rng, na),
            v_an: random_unit_vector(&mut rng, na),
            theta: random_phase_vector(&mut rng, ns),
        };
        let pairs = [
            (sinr_bob(&ch, &sol, &pw)?, scalar_sinr(&ch, &sol, &pw, Receiver::Bob)),
            (sinr_eve(&ch, &sol, &pw)?, scalar_sinr(&ch, &sol, &pw, Receiver::Eve)),
        ];
        for (fast, slow) in pairs {
            worst = worst.max((fast - slow).abs() / slow.abs().max(f64::MIN_POSITIVE));
        }
    }
    Ok(outcome("metrics_match_scalar_sinr", worst, SINR_TOL, "relative SINR gap"))
}

fn keep_best() -> Result<CheckOutcome> {
    let pw = PowerBudget::reference();
    let ch = reference(64)?;
    let mut failures = Vec::new();
    for seed in 0..KEEP_BEST_SEEDS {
        let cfg = MaxSrSlnrConfig { initial_phase: InitialPhase::Random { seed }, ..Default::default() };
        let out = max_sr_slnr(&ch, &pw, &cfg)?;
        let max = out.trace.iter().copied().fold(f64::MIN, f64::max);
        let recomputed = evaluate(&ch, &out.solution, &pw)?.secrecy_rate;
        let ok = out.secrecy_rate == max
            && out.secrecy_rate >= out.trace[0]
            && (recomputed - out.secrecy_rate).abs() <= 1e-12 * out.secrecy_rate.max(1.0);
        if !ok {
            failures.push(seed);
        }
    }
    Ok(CheckOutcome {
        name: "max_sr_slnr_keep_best",
        passed: failures.is_empty(),
        detail: format!("{KEEP_BEST_SEEDS} seeds, violations: {failures:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks_pass() {
        for check in [nsp_orthogonality, unit_invariants, metrics_vs_scalar, keep_best] {
            let out = check().unwrap();
            assert!(out.passed, "{out}");
        }
    }
}
