use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{an_beamformer, random_phases};
use crate::channel::{steering_vector, ChannelSet};
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::metrics::{irs_incident, BeamformingSolution};

/// Direction the MRT confidential-message beam points at.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MrtVariant {
    /// Bob's direct channel.
    TowardAb,
    /// Normalized sum of the Bob and IRS directions.
    TowardSum,
    /// The Alice-to-IRS direction.
    #[default]
    TowardAi,
    /// An arbitrary steering angle in radians.
    TowardAngle(f64),
}

impl fmt::Display for MrtVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MrtVariant::TowardAb => f.write_str("ab"),
            MrtVariant::TowardSum => f.write_str("sum"),
            MrtVariant::TowardAi => f.write_str("ai"),
            MrtVariant::TowardAngle(t) => write!(f, "angle:{t}"),
        }
    }
}

impl FromStr for MrtVariant {
    type Err = Error;

    /// `ab`, `sum`, `ai`, or `angle:<radians>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ab" => Ok(MrtVariant::TowardAb),
            "sum" => Ok(MrtVariant::TowardSum),
            "ai" => Ok(MrtVariant::TowardAi),
            other => other
                .strip_prefix("angle:")
                .and_then(|t| t.parse::<f64>().ok())
                .filter(|t| (0.0..=std::f64::consts::PI).contains(t))
                .map(MrtVariant::TowardAngle)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown MRT variant '{s}'"))),
        }
    }
}

fn normalized(v: CVector) -> Result<CVector> {
    let n = v.norm();
    if !(n > 1e-12) {
        return Err(Error::DegenerateMrt);
    }
    Ok(v / Complex64::from(n))
}

/// Unit-norm MRT beamformer for `variant`.
pub fn mrt_cm(ch: &ChannelSet, variant: MrtVariant) -> Result<CVector> {
    match variant {
        MrtVariant::TowardAb => normalized(ch.h_ab.clone()),
        MrtVariant::TowardAi => normalized(ch.h_ai.clone()),
        MrtVariant::TowardSum => normalized(&ch.h_ai + &ch.h_ab),
        MrtVariant::TowardAngle(theta) => normalized(steering_vector(theta, &ch.alice_array)?),
    }
}

/// Phase-alignment output.
#[derive(Debug, Clone, PartialEq)]
pub struct PaPhase {
    pub theta: CVector,
    /// Elements whose cascade term was exactly zero and got phase 0.
    pub zero_entries: usize,
}

/// IRS phases that make every term of `h_ib^H Theta H_ai v_cm` real and
/// nonnegative, which maximizes the reflected CM power at Bob.
pub fn pa_phase(ch: &ChannelSet, v_cm: &CVector) -> PaPhase {
    let q = irs_incident(ch, v_cm);
    let mut zero_entries = 0;
    let theta = CVector::from_iterator(
        q.len(),
        q.iter().zip(ch.h_ib.iter()).map(|(q, h)| {
            let term = h.conj() * q;
            if term == Complex64::new(0.0, 0.0) {
                zero_entries += 1;
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, -term.arg())
            }
        }),
    );
    PaPhase { theta, zero_entries }
}

/// Closed-form MRT CM beam, null-space AN beam and phase-aligned IRS.
pub fn mrt_nsp_pa(ch: &ChannelSet, variant: MrtVariant) -> Result<BeamformingSolution> {
    let v_cm = mrt_cm(ch, variant)?;
    let v_an = an_beamformer(ch)?;
    let theta = pa_phase(ch, &v_cm).theta;
    Ok(BeamformingSolution { v_cm, v_an, theta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkKind {
    /// Reflection switched off (`Theta = 0`).
    NoIrs,
    /// Uniform random phases.
    RandomPhase,
}

pub fn benchmark_phase(kind: BenchmarkKind, ns: usize, seed: u64) -> CVector {
    match kind {
        BenchmarkKind::NoIrs => CVector::zeros(ns),
        BenchmarkKind::RandomPhase => random_phases(ns, seed),
    }
}

/// Benchmark solution: the MRT-NSP-PA beams (CM toward the IRS, null-space
/// AN) with the IRS phases replaced by `kind`.
pub fn benchmark_solution(ch: &ChannelSet, kind: BenchmarkKind, seed: u64) -> Result<BeamformingSolution> {
    Ok(BeamformingSolution {
        v_cm: mrt_cm(ch, MrtVariant::TowardAi)?,
        v_an: an_beamformer(ch)?,
        theta: benchmark_phase(kind, ch.n_irs(), seed),
    })
}
