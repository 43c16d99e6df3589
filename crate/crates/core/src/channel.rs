//! Line-of-sight channel construction for the Alice / IRS / Bob / Eve link.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};

pub type Point = [f64; 3];

/// Uniform linear array description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeringConfig {
    pub element_count: usize,
    #[serde(default = "default_spacing")]
    pub spacing_over_wavelength: f64,
}

fn default_spacing() -> f64 {
    0.5
}

impl SteeringConfig {
    pub fn new(element_count: usize) -> Self {
        Self { element_count, spacing_over_wavelength: default_spacing() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.element_count == 0 {
            return Err(Error::InvalidParameter("array needs at least one element".into()));
        }
        if !(self.spacing_over_wavelength > 0.0) || !self.spacing_over_wavelength.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "element spacing must be positive, got {}",
                self.spacing_over_wavelength
            )));
        }
        Ok(())
    }
}

/// `g(d) = g0 * d^-alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathLossModel {
    /// Linear power gain at 1 m.
    pub reference_gain: f64,
    pub exponent: f64,
    /// Multiply each IRS link gain (Alice-IRS, IRS-Bob, IRS-Eve) by the
    /// element count, so the cascaded power through a phase-aligned surface
    /// grows as `N_s^2`. Without it the unit-norm IRS steering vectors make
    /// the reflected power independent of the surface size.
    #[serde(default = "default_true")]
    pub irs_aperture_gain: bool,
}

fn default_true() -> bool {
    true
}

impl Default for PathLossModel {
    fn default() -> Self {
        Self { reference_gain: 1e-2, exponent: 2.0, irs_aperture_gain: true }
    }
}

impl PathLossModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.reference_gain > 0.0) || !self.reference_gain.is_finite() {
            return Err(Error::InvalidParameter("path-loss reference gain must be > 0".into()));
        }
        if !(self.exponent >= 0.0) || !self.exponent.is_finite() {
            return Err(Error::InvalidParameter("path-loss exponent must be >= 0".into()));
        }
        Ok(())
    }
}

/// Node positions plus the angles that parameterize each steering vector.
///
/// Alice's departure angles are given explicitly. The IRS-side angles and
/// every distance default to values derived from the coordinates, but each
/// can be pinned with an override.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkGeometry {
    pub alice: Point,
    pub irs: Point,
    pub bob: Point,
    pub eve: Point,
    /// Departure angle from Alice toward the IRS (radians).
    pub theta_ai: f64,
    pub theta_ab: f64,
    pub theta_ae: f64,
    /// Axis of the IRS array; angles at the IRS are measured from it.
    #[serde(default = "default_axis")]
    pub irs_axis: Point,
    #[serde(default)]
    pub theta_ai_arrival: Option<f64>,
    #[serde(default)]
    pub theta_ib: Option<f64>,
    #[serde(default)]
    pub theta_ie: Option<f64>,
    #[serde(default)]
    pub d_ai: Option<f64>,
    #[serde(default)]
    pub d_ab: Option<f64>,
    #[serde(default)]
    pub d_ae: Option<f64>,
    #[serde(default)]
    pub d_ib: Option<f64>,
    #[serde(default)]
    pub d_ie: Option<f64>,
}

fn default_axis() -> Point {
    [0.0, 0.0, 1.0]
}

impl Default for NetworkGeometry {
    /// The reference scenario: Alice at the origin, the UAV-mounted IRS at
    /// (0, 39.9, 3.5), Bob at (0, 90, 0) and Eve at (0, 96.6, 29.4), with the
    /// nominal Alice-side distances 40 / 90 / 100 m.
    fn default() -> Self {
        Self {
            alice: [0.0, 0.0, 0.0],
            irs: [0.0, 39.9, 3.5],
            bob: [0.0, 90.0, 0.0],
            eve: [0.0, 96.6, 29.4],
            theta_ai: 17.0 * PI / 36.0,
            theta_ab: PI / 2.0,
            theta_ae: 7.0 * PI / 12.0,
            irs_axis: default_axis(),
            theta_ai_arrival: None,
            theta_ib: None,
            theta_ie: None,
            d_ai: Some(40.0),
            d_ab: Some(90.0),
            d_ae: Some(100.0),
            d_ib: None,
            d_ie: None,
        }
    }
}

/// Distances and angles after applying overrides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedGeometry {
    pub d_ai: f64,
    pub d_ab: f64,
    pub d_ae: f64,
    pub d_ib: f64,
    pub d_ie: f64,
    pub theta_ai: f64,
    pub theta_ab: f64,
    pub theta_ae: f64,
    pub theta_ai_arrival: f64,
    pub theta_ib: f64,
    pub theta_ie: f64,
}

impl NetworkGeometry {
    pub fn resolve(&self) -> Result<ResolvedGeometry> {
        let axis_norm = norm(self.irs_axis);
        if !(axis_norm > 0.0) {
            return Err(Error::InvalidParameter("IRS axis must be nonzero".into()));
        }
        let axis = self.irs_axis.map(|x| x / axis_norm);
        let angle_at_irs = |to: Point| -> Result<f64> {
            let v = sub(to, self.irs);
            let n = norm(v);
            if !(n > 0.0) {
                return Err(Error::NonPositiveDistance(n));
            }
            Ok((dot(v, axis) / n).clamp(-1.0, 1.0).acos())
        };
        let r = ResolvedGeometry {
            d_ai: self.d_ai.unwrap_or_else(|| norm(sub(self.irs, self.alice))),
            d_ab: self.d_ab.unwrap_or_else(|| norm(sub(self.bob, self.alice))),
            d_ae: self.d_ae.unwrap_or_else(|| norm(sub(self.eve, self.alice))),
            d_ib: self.d_ib.unwrap_or_else(|| norm(sub(self.bob, self.irs))),
            d_ie: self.d_ie.unwrap_or_else(|| norm(sub(self.eve, self.irs))),
            theta_ai: self.theta_ai,
            theta_ab: self.theta_ab,
            theta_ae: self.theta_ae,
            theta_ai_arrival: match self.theta_ai_arrival {
                Some(t) => t,
                None => angle_at_irs(self.alice)?,
            },
            theta_ib: match self.theta_ib {
                Some(t) => t,
                None => angle_at_irs(self.bob)?,
            },
            theta_ie: match self.theta_ie {
                Some(t) => t,
                None => angle_at_irs(self.eve)?,
            },
        };
        for d in [r.d_ai, r.d_ab, r.d_ae, r.d_ib, r.d_ie] {
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::NonPositiveDistance(d));
            }
        }
        for t in [r.theta_ai, r.theta_ab, r.theta_ae, r.theta_ai_arrival, r.theta_ib, r.theta_ie] {
            check_angle(t)?;
        }
        Ok(r)
    }

    /// Moves Bob along the ray from Alice so the direct distance becomes
    /// `d_ab`. The departure angle toward Bob is unchanged.
    pub fn with_bob_distance(&self, d_ab: f64) -> Result<Self> {
        if !(d_ab > 0.0) {
            return Err(Error::NonPositiveDistance(d_ab));
        }
        let ray = sub(self.bob, self.alice);
        let n = norm(ray);
        if !(n > 0.0) {
            return Err(Error::NonPositiveDistance(n));
        }
        let mut out = self.clone();
        out.bob = [0, 1, 2].map(|i| self.alice[i] + ray[i] * d_ab / n);
        out.d_ab = Some(d_ab);
        out.d_ib = None;
        out.theta_ib = None;
        Ok(out)
    }
}

/// All channel vectors and gains for one network realization. Immutable
/// once built.
#[derive(Debug, Clone)]
pub struct ChannelSet {
    pub h_ab: CVector,
    pub h_ae: CVector,
    /// Alice's steering vector toward the IRS (the transmit factor of `H_ai`).
    pub h_ai: CVector,
    /// `h(theta_ai_arrival) h(theta_ai)^H`, `N_s x N_a`.
    pub h_ai_mat: CMatrix,
    pub h_ib: CVector,
    pub h_ie: CVector,
    pub g_ab: f64,
    pub g_ae: f64,
    pub g_ai: f64,
    pub g_ib: f64,
    pub g_ie: f64,
    pub g_aib: f64,
    pub g_aie: f64,
    pub alice_array: SteeringConfig,
}

impl ChannelSet {
    pub fn n_alice(&self) -> usize {
        self.h_ab.len()
    }

    pub fn n_irs(&self) -> usize {
        self.h_ib.len()
    }
}

/// Entry `n` is `exp(-j 2 pi Phi_n) / sqrt(N)` with
/// `Phi_n = -(d/lambda) (n - (N+1)/2) cos(theta)`, `n = 1..=N`.
pub fn steering_vector(theta: f64, cfg: &SteeringConfig) -> Result<CVector> {
    cfg.validate()?;
    check_angle(theta)?;
    let n = cfg.element_count;
    let center = (n as f64 + 1.0) / 2.0;
    let amp = 1.0 / (n as f64).sqrt();
    let cos = theta.cos();
    Ok(CVector::from_fn(n, |i, _| {
        let phi = -cfg.spacing_over_wavelength * ((i + 1) as f64 - center) * cos;
        Complex64::from_polar(amp, -2.0 * PI * phi)
    }))
}

pub fn path_loss(distance: f64, model: &PathLossModel) -> Result<f64> {
    if !(distance > 0.0) || !distance.is_finite() {
        return Err(Error::NonPositiveDistance(distance));
    }
    Ok(model.reference_gain * distance.powf(-model.exponent))
}

pub fn build_channels(
    geom: &NetworkGeometry,
    cfg_alice: &SteeringConfig,
    cfg_irs: &SteeringConfig,
    model: &PathLossModel,
) -> Result<ChannelSet> {
    model.validate()?;
    let g = geom.resolve()?;

    let h_ab = steering_vector(g.theta_ab, cfg_alice)?;
    let h_ae = steering_vector(g.theta_ae, cfg_alice)?;
    let h_ai = steering_vector(g.theta_ai, cfg_alice)?;
    let h_arrival = steering_vector(g.theta_ai_arrival, cfg_irs)?;
    let h_ai_mat = &h_arrival * h_ai.adjoint();
    let h_ib = steering_vector(g.theta_ib, cfg_irs)?;
    let h_ie = steering_vector(g.theta_ie, cfg_irs)?;

    let aperture = if model.irs_aperture_gain { cfg_irs.element_count as f64 } else { 1.0 };
    let g_ab = path_loss(g.d_ab, model)?;
    let g_ae = path_loss(g.d_ae, model)?;
    let g_ai = path_loss(g.d_ai, model)? * aperture;
    let g_ib = path_loss(g.d_ib, model)? * aperture;
    let g_ie = path_loss(g.d_ie, model)? * aperture;

    Ok(ChannelSet {
        h_ab,
        h_ae,
        h_ai,
        h_ai_mat,
        h_ib,
        h_ie,
        g_ab,
        g_ae,
        g_ai,
        g_ib,
        g_ie,
        g_aib: g_ai * g_ib,
        g_aie: g_ai * g_ie,
        alice_array: *cfg_alice,
    })
}

fn check_angle(theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::InvalidParameter(format!("angle {theta} outside [0, pi]")));
    }
    Ok(())
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}
