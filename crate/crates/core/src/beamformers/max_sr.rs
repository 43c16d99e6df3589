use num_complex::Complex64;

use super::{an_beamformer, mrt_cm, random_phases, unit_modulus, MrtVariant};
use crate::channel::ChannelSet;
use crate::error::{Error, Result};
use crate::linalg::{dominant_gen_eigvec, normalize_global_phase, CMatrix, CVector};
use crate::metrics::{evaluate, irs_incident, receiver_channel, BeamformingSolution, PowerBudget, Receiver};

#[derive(Debug, Clone, PartialEq)]
pub enum InitialPhase {
    Explicit(CVector),
    /// Uniform random phases; restart `r` draws from `seed + r`.
    Random {
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxSrSlnrConfig {
    /// Stop once consecutive secrecy rates differ by at most this (bits/s/Hz).
    pub epsilon: f64,
    pub max_iterations: usize,
    pub initial_phase: InitialPhase,
    /// Independent random starts; the best run wins. Ignored for an
    /// explicit initial phase.
    pub restarts: usize,
    /// Rotate each SLNR phase vector so the reflected CM adds in phase with
    /// Bob's direct path. The SLNR is blind to this global phase; the
    /// secrecy rate is not.
    pub align_global_phase: bool,
}

impl Default for MaxSrSlnrConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            max_iterations: 100,
            initial_phase: InitialPhase::Random { seed: 0 },
            restarts: 1,
            align_global_phase: true,
        }
    }
}

impl MaxSrSlnrConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        if self.max_iterations == 0 || self.restarts == 0 {
            return Err(Error::InvalidParameter("max_iterations and restarts must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MaxSrSlnrOutcome {
    /// Highest-rate iterate of the winning run.
    pub solution: BeamformingSolution,
    pub secrecy_rate: f64,
    /// Secrecy rate of the initial point followed by one entry per iteration.
    pub trace: Vec<f64>,
    /// Iterations performed by the winning run.
    pub iterations: usize,
    /// Iterations summed over all restarts.
    pub total_iterations: usize,
    /// False when the winning run hit `max_iterations` before the stop test.
    pub converged: bool,
}

/// CM beamformer maximizing `(1 + gamma_b) / (1 + gamma_e)` for fixed IRS
/// phases and AN beam: the dominant generalized eigenvector of
/// `((a + sigma_b^2) I + h_b1 h_b1^H, (b + sigma_e^2) I + h_e1 h_e1^H)`,
/// with `a`, `b` the AN powers leaking to Bob and Eve.
pub fn max_sr_cm(ch: &ChannelSet, theta: &CVector, v_an: &CVector, pw: &PowerBudget) -> Result<CVector> {
    let na = ch.n_alice();
    if v_an.len() != na {
        return Err(Error::dims("max_sr_cm AN beam", na, v_an.len()));
    }
    let h_b1 = receiver_channel(ch, Receiver::Bob, theta, pw.beta_cm, pw.total_power)?;
    let h_b2 = receiver_channel(ch, Receiver::Bob, theta, pw.beta_an, pw.total_power)?;
    let h_e1 = receiver_channel(ch, Receiver::Eve, theta, pw.beta_cm, pw.total_power)?;
    let h_e2 = receiver_channel(ch, Receiver::Eve, theta, pw.beta_an, pw.total_power)?;
    let a = h_b2.dotc(v_an).norm_sqr();
    let b = h_e2.dotc(v_an).norm_sqr();

    let eye = CMatrix::identity(na, na);
    let num = &eye * Complex64::from(a + pw.noise_bob) + &h_b1 * h_b1.adjoint();
    let den = &eye * Complex64::from(b + pw.noise_eve) + &h_e1 * h_e1.adjoint();
    Ok(dominant_gen_eigvec(&num, &den)?.vector)
}

/// Explicit SLNR quadratic forms `A = a a^H`, `B = e e^H + (sigma_e^2 / N_s) I`
/// with `a = diag(H_ai v)^H h_ib`, `e = diag(H_ai v)^H h_ie`, so that the
/// SLNR of a unit-modulus `theta` is `theta^H A theta / theta^H B theta`.
pub fn slnr_matrices(ch: &ChannelSet, v_cm: &CVector, pw: &PowerBudget) -> (CMatrix, CMatrix) {
    let (a, e) = slnr_factors(ch, v_cm);
    let ns = a.len();
    let big_a = &a * a.adjoint();
    let big_b = &e * e.adjoint() + CMatrix::identity(ns, ns) * Complex64::from(pw.noise_eve / ns as f64);
    (big_a, big_b)
}

fn slnr_factors(ch: &ChannelSet, v_cm: &CVector) -> (CVector, CVector) {
    let q = irs_incident(ch, v_cm);
    let a = q.zip_map(&ch.h_ib, |q, h| q.conj() * h);
    let e = q.zip_map(&ch.h_ie, |q, h| q.conj() * h);
    (a, e)
}

/// Unit-norm maximizer `u` of the SLNR Rayleigh quotient before the
/// unit-modulus projection, phase-normalized like `dominant_gen_eigvec`.
///
/// `A` is rank one, so `u` is proportional to `B^{-1} a`; `B` is a rank-one
/// update of a scaled identity and is inverted with Sherman-Morrison. This
/// keeps the step linear in `N_s`.
pub fn slnr_direction(ch: &ChannelSet, v_cm: &CVector, pw: &PowerBudget) -> CVector {
    let (a, e) = slnr_factors(ch, v_cm);
    let ridge = pw.noise_eve / a.len() as f64;
    // B^{-1} a = (a - e (e^H a) / (ridge + |e|^2)) / ridge; the 1/ridge factor
    // drops out after normalization.
    let coupling = e.dotc(&a) / Complex64::from(ridge + e.norm_squared());
    let mut u = &a - &e * coupling;
    let n = u.norm();
    if n > 0.0 {
        u /= Complex64::from(n);
        normalize_global_phase(&mut u);
    }
    u
}

/// IRS phases from the SLNR criterion: `theta = exp(j arg u)`.
pub fn slnr_phase(ch: &ChannelSet, v_cm: &CVector, pw: &PowerBudget) -> CVector {
    unit_modulus(&slnr_direction(ch, v_cm, pw))
}

/// Rotates `theta` by a common phase so Bob's reflected CM term lines up
/// with his direct term.
pub fn align_with_direct_path(ch: &ChannelSet, v_cm: &CVector, theta: &CVector) -> CVector {
    let direct = ch.h_ab.dotc(v_cm) * Complex64::from(ch.g_ab.sqrt());
    let q = irs_incident(ch, v_cm);
    let reflected: Complex64 = ch.h_ib.iter().zip(theta.iter()).zip(q.iter()).map(|((h, t), q)| h.conj() * t * q).sum();
    if direct.norm() == 0.0 || reflected.norm() == 0.0 {
        return theta.clone();
    }
    let rot = Complex64::from_polar(1.0, direct.arg() - reflected.arg());
    theta * rot
}

/// Alternating Max-SR (CM beam) / SLNR (IRS phase) optimization.
///
/// Each run starts from MRT toward the IRS and the configured initial
/// phases, then alternates [`max_sr_cm`] and [`slnr_phase`] until the secrecy
/// rate moves by at most `epsilon` or `max_iterations` is reached. The SLNR
/// step does not guarantee ascent, so the best iterate seen is returned.
pub fn max_sr_slnr(ch: &ChannelSet, pw: &PowerBudget, cfg: &MaxSrSlnrConfig) -> Result<MaxSrSlnrOutcome> {
    cfg.validate()?;
    let v_an = an_beamformer(ch)?;
    let v_init = mrt_cm(ch, MrtVariant::TowardAi)?;
    let ns = ch.n_irs();

    let starts: Vec<CVector> = match &cfg.initial_phase {
        InitialPhase::Explicit(theta) => {
            if theta.len() != ns {
                return Err(Error::dims("initial IRS phases", ns, theta.len()));
            }
            vec![theta.clone()]
        }
        InitialPhase::Random { seed } => {
            (0..cfg.restarts as u64).map(|r| random_phases(ns, seed.wrapping_add(r))).collect()
        }
    };

    let mut best: Option<MaxSrSlnrOutcome> = None;
    let mut total_iterations = 0;
    for theta0 in starts {
        let run = single_run(ch, pw, cfg, &v_an, v_init.clone(), theta0)?;
        total_iterations += run.iterations;
        if best.as_ref().is_none_or(|b| run.secrecy_rate > b.secrecy_rate) {
            best = Some(run);
        }
    }
    let mut out = best.expect("at least one start");
    out.total_iterations = total_iterations;
    Ok(out)
}

fn single_run(
    ch: &ChannelSet,
    pw: &PowerBudget,
    cfg: &MaxSrSlnrConfig,
    v_an: &CVector,
    v_cm: CVector,
    theta: CVector,
) -> Result<MaxSrSlnrOutcome> {
    let mut current = BeamformingSolution { v_cm, v_an: v_an.clone(), theta };
    let initial = evaluate(ch, &current, pw)?.secrecy_rate;
    let mut trace = vec![initial];
    let mut best = (initial, current.clone());
    let mut previous = initial;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iterations {
        iterations += 1;
        let v_cm = max_sr_cm(ch, &current.theta, v_an, pw)?;
        let mut theta = slnr_phase(ch, &v_cm, pw);
        if cfg.align_global_phase {
            theta = align_with_direct_path(ch, &v_cm, &theta);
        }
        current = BeamformingSolution { v_cm, v_an: v_an.clone(), theta };
        let rate = evaluate(ch, &current, pw)?.secrecy_rate;
        trace.push(rate);
        if rate > best.0 {
            best = (rate, current.clone());
        }
        if (rate - previous).abs() <= cfg.epsilon {
            converged = true;
            break;
        }
        previous = rate;
    }

    Ok(MaxSrSlnrOutcome {
        solution: best.1,
        secrecy_rate: best.0,
        trace,
        iterations,
        total_iterations: iterations,
        converged,
    })
}
