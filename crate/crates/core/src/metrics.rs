//! SINR, rate and secrecy-rate evaluation for a beamforming solution.
//!
//! The IRS reflection matrix is `Theta = diag(theta)`; a zero `theta`
//! switches the reflected path off.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelSet;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};

/// Transmit power split and receiver noise, all linear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBudget {
    /// Total transmit power (W).
    pub total_power: f64,
    /// Fraction of power on the confidential message.
    pub beta_cm: f64,
    /// Fraction of power on artificial noise.
    pub beta_an: f64,
    pub noise_bob: f64,
    pub noise_eve: f64,
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

impl PowerBudget {
    pub fn new(total_power: f64, beta_cm: f64, noise_bob: f64, noise_eve: f64) -> Result<Self> {
        let pw = Self { total_power, beta_cm, beta_an: 1.0 - beta_cm, noise_bob, noise_eve };
        pw.validate()?;
        Ok(pw)
    }

    pub fn from_dbm(total_dbm: f64, beta_cm: f64, noise_bob_dbm: f64, noise_eve_dbm: f64) -> Result<Self> {
        Self::new(dbm_to_watts(total_dbm), beta_cm, dbm_to_watts(noise_bob_dbm), dbm_to_watts(noise_eve_dbm))
    }

    /// 30 dBm transmit power, -40 dBm noise at both receivers, 80% of the
    /// power on the confidential message.
    pub fn reference() -> Self {
        Self::from_dbm(30.0, 0.8, -40.0, -40.0).expect("reference budget is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [self.total_power, self.noise_bob, self.noise_eve];
        if positive.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidParameter("transmit power and noise powers must be positive".into()));
        }
        let fractions = [self.beta_cm, self.beta_an];
        if fractions.iter().any(|b| !(0.0..=1.0).contains(b)) {
            return Err(Error::InvalidParameter("power fractions must lie in [0, 1]".into()));
        }
        if (self.beta_cm + self.beta_an - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("power fractions must sum to 1".into()));
        }
        Ok(())
    }
}

/// CM and AN transmit beamformers plus the IRS phase vector.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamformingSolution {
    pub v_cm: CVector,
    pub v_an: CVector,
    pub theta: CVector,
}

impl BeamformingSolution {
    /// Checks unit norms and that each IRS coefficient has modulus 0 or 1.
    pub fn validate(&self, ch: &ChannelSet) -> Result<()> {
        let (na, ns) = (ch.n_alice(), ch.n_irs());
        if self.v_cm.len() != na || self.v_an.len() != na {
            return Err(Error::dims("beamformer", na, format!("{}/{}", self.v_cm.len(), self.v_an.len())));
        }
        if self.theta.len() != ns {
            return Err(Error::dims("IRS phase vector", ns, self.theta.len()));
        }
        for (name, v) in [("v_cm", &self.v_cm), ("v_an", &self.v_an)] {
            if (v.norm() - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidParameter(format!("{name} must have unit norm")));
            }
        }
        let ok = self.theta.iter().all(|t| {
            let m = t.norm();
            m < 1e-10 || (m - 1.0).abs() < 1e-10
        });
        if !ok {
            return Err(Error::InvalidParameter("IRS coefficients must have modulus 0 or 1".into()));
        }
        Ok(())
    }
}

/// Per-receiver SINRs and rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrEvaluation {
    pub sinr_bob: f64,
    pub sinr_eve: f64,
    /// bits/s/Hz
    pub rate_bob: f64,
    pub rate_eve: f64,
    pub secrecy_rate: f64,
}

/// Composite channel `h` such that `h^H v` equals
/// `sqrt(s g_d) direct^H v + sqrt(s g_c) cascade_rx^H Theta H_ai v`.
#[allow(clippy::too_many_arguments)]
pub fn effective_channel(
    direct: &CVector,
    cascade_rx: &CVector,
    theta: &CVector,
    h_ai_mat: &CMatrix,
    g_direct: f64,
    g_cascade: f64,
    power_share: f64,
) -> Result<CVector> {
    let (ns, na) = h_ai_mat.shape();
    if direct.len() != na {
        return Err(Error::dims("effective_channel direct path", na, direct.len()));
    }
    if cascade_rx.len() != ns || theta.len() != ns {
        return Err(Error::dims("effective_channel cascade", ns, format!("{}/{}", cascade_rx.len(), theta.len())));
    }
    // Theta^H cascade_rx, elementwise
    let reflected = theta.zip_map(cascade_rx, |t, c| t.conj() * c);
    let cascade = h_ai_mat.ad_mul(&reflected);
    Ok(direct * Complex64::from((power_share * g_direct).sqrt())
        + cascade * Complex64::from((power_share * g_cascade).sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Receiver {
    Bob,
    Eve,
}

/// Composite channel at `rx` with power share `share` folded in.
pub fn receiver_channel(
    ch: &ChannelSet,
    rx: Receiver,
    theta: &CVector,
    share: f64,
    total_power: f64,
) -> Result<CVector> {
    let (direct, cascade, gd, gc) = match rx {
        Receiver::Bob => (&ch.h_ab, &ch.h_ib, ch.g_ab, ch.g_aib),
        Receiver::Eve => (&ch.h_ae, &ch.h_ie, ch.g_ae, ch.g_aie),
    };
    effective_channel(direct, cascade, theta, &ch.h_ai_mat, gd, gc, share * total_power)
}

fn sinr(ch: &ChannelSet, sol: &BeamformingSolution, pw: &PowerBudget, rx: Receiver) -> Result<f64> {
    let h_cm = receiver_channel(ch, rx, &sol.theta, pw.beta_cm, pw.total_power)?;
    let h_an = receiver_channel(ch, rx, &sol.theta, pw.beta_an, pw.total_power)?;
    let noise = match rx {
        Receiver::Bob => pw.noise_bob,
        Receiver::Eve => pw.noise_eve,
    };
    let signal = h_cm.dotc(&sol.v_cm).norm_sqr();
    let jamming = h_an.dotc(&sol.v_an).norm_sqr();
    Ok(signal / (jamming + noise))
}

pub fn sinr_bob(ch: &ChannelSet, sol: &BeamformingSolution, pw: &PowerBudget) -> Result<f64> {
    sinr(ch, sol, pw, Receiver::Bob)
}

pub fn sinr_eve(ch: &ChannelSet, sol: &BeamformingSolution, pw: &PowerBudget) -> Result<f64> {
    sinr(ch, sol, pw, Receiver::Eve)
}

pub fn secrecy_rate(sinr_bob: f64, sinr_eve: f64) -> Result<SrEvaluation> {
    for g in [sinr_bob, sinr_eve] {
        if g < 0.0 || g.is_nan() {
            return Err(Error::NegativeSinr(g));
        }
    }
    let rate_bob = sinr_bob.ln_1p() / std::f64::consts::LN_2;
    let rate_eve = sinr_eve.ln_1p() / std::f64::consts::LN_2;
    Ok(SrEvaluation { sinr_bob, sinr_eve, rate_bob, rate_eve, secrecy_rate: (rate_bob - rate_eve).max(0.0) })
}

/// SINRs, rates and secrecy rate of `sol`.
pub fn evaluate(ch: &ChannelSet, sol: &BeamformingSolution, pw: &PowerBudget) -> Result<SrEvaluation> {
    secrecy_rate(sinr_bob(ch, sol, pw)?, sinr_eve(ch, sol, pw)?)
}

/// `H_ai v_cm`, the CM signal arriving at each IRS element.
pub fn irs_incident(ch: &ChannelSet, v_cm: &CVector) -> CVector {
    &ch.h_ai_mat * v_cm
}

/// Unweighted cascaded gain `|rx^H Theta H_ai v|^2`.
fn cascade_gain(rx: &CVector, theta: &CVector, incident: &CVector) -> f64 {
    rx.iter().zip(theta.iter()).zip(incident.iter()).map(|((r, t), q)| r.conj() * t * q).sum::<Complex64>().norm_sqr()
}

/// Signal-to-leakage-noise ratio of the reflected CM path:
/// `|h_ib^H Theta H_ai v|^2 / (|h_ie^H Theta H_ai v|^2 + sigma_e^2)`.
pub fn slnr(ch: &ChannelSet, v_cm: &CVector, theta: &CVector, pw: &PowerBudget) -> f64 {
    let q = irs_incident(ch, v_cm);
    cascade_gain(&ch.h_ib, theta, &q) / (cascade_gain(&ch.h_ie, theta, &q) + pw.noise_eve)
}

/// CM power Bob receives over the reflected path alone (W).
pub fn cascaded_power_bob(ch: &ChannelSet, v_cm: &CVector, theta: &CVector, pw: &PowerBudget) -> f64 {
    let q = irs_incident(ch, v_cm);
    pw.beta_cm * pw.total_power * ch.g_aib * cascade_gain(&ch.h_ib, theta, &q)
}
