//! Brute-force verifiers.
//!
//! These are deliberately slow and written with plain scalar loops over the
//! raw entries. They do not call into `linalg`, `metrics` or `beamformers`,
//! so a bug there cannot hide in a matching bug here.

pub mod suite;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{ChannelSet, SteeringConfig};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::metrics::{BeamformingSolution, PowerBudget, Receiver};

/// Largest number of grid evaluations an oracle will attempt.
pub const GRID_GUARD: f64 = 1e8;

/// Uniform phase grid over `[0, 2pi)^dimensions`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub points_per_dimension: usize,
    pub dimensions: usize,
}

impl GridSpec {
    pub fn new(points_per_dimension: usize, dimensions: usize) -> Result<Self> {
        let spec = Self { points_per_dimension, dimensions };
        if points_per_dimension == 0 || dimensions == 0 {
            return Err(Error::InvalidParameter("grid needs at least one point and one dimension".into()));
        }
        if (points_per_dimension as f64).powi(dimensions as i32) > GRID_GUARD {
            return Err(Error::GridTooLarge { points: points_per_dimension, dimensions });
        }
        Ok(spec)
    }
}

/// Exhaustive search for the IRS phases maximizing Bob's reflected CM power.
/// Returns the best phase vector and its power in watts.
pub fn grid_max_cascaded_power(
    ch: &ChannelSet,
    v_cm: &CVector,
    pw: &PowerBudget,
    grid: GridSpec,
) -> Result<(CVector, f64)> {
    let grid = GridSpec::new(grid.points_per_dimension, grid.dimensions)?;
    let ns = ch.h_ib.len();
    if ns != grid.dimensions {
        return Err(Error::dims("grid dimensions", ns, grid.dimensions));
    }
    let na = v_cm.len();
    // per-element term conj(h_ib[m]) * (H_ai v)[m]
    let mut terms = vec![Complex64::new(0.0, 0.0); ns];
    for (m, term) in terms.iter_mut().enumerate() {
        let mut incident = Complex64::new(0.0, 0.0);
        for n in 0..na {
            incident += ch.h_ai_mat[(m, n)] * v_cm[n];
        }
        *term = ch.h_ib[m].conj() * incident;
    }
    let steps: Vec<Complex64> = (0..grid.points_per_dimension)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / grid.points_per_dimension as f64))
        .collect();

    let scale = pw.beta_cm * pw.total_power * ch.g_aib;
    let mut index = vec![0usize; ns];
    let mut best_power = f64::MIN;
    let mut best_index = index.clone();
    loop {
        let mut sum = Complex64::new(0.0, 0.0);
        for m in 0..ns {
            sum += terms[m] * steps[index[m]];
        }
        let power = scale * sum.norm_sqr();
        if power > best_power {
            best_power = power;
            best_index.clone_from(&index);
        }
        // odometer increment
        let mut d = 0;
        loop {
            if d == ns {
                let theta = CVector::from_iterator(ns, best_index.iter().map(|&k| steps[k]));
                return Ok((theta, best_power));
            }
            index[d] += 1;
            if index[d] < grid.points_per_dimension {
                break;
            }
            index[d] = 0;
            d += 1;
        }
    }
}

/// Largest `x^H A x / x^H B x` over `samples` seeded random unit vectors.
pub fn sample_max_quotient(a: &CMatrix, b: &CMatrix, samples: usize, seed: u64) -> Result<f64> {
    let n = a.nrows();
    if a.ncols() != n || b.shape() != (n, n) {
        return Err(Error::dims("sample_max_quotient", format!("{n}x{n}"), format!("{}x{}", b.nrows(), b.ncols())));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("at least one sample is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut best = f64::MIN;
    for _ in 0..samples {
        let mut norm = 0.0;
        for z in x.iter_mut() {
            *z = Complex64::new(gaussian(&mut rng), gaussian(&mut rng));
            norm += z.norm_sqr();
        }
        let norm = norm.sqrt();
        for z in x.iter_mut() {
            *z /= norm;
        }
        let q = scalar_form(a, &x) / scalar_form(b, &x);
        if q > best {
            best = q;
        }
    }
    Ok(best)
}

fn scalar_form(m: &CMatrix, x: &[Complex64]) -> f64 {
    let n = x.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += x[i].conj() * m[(i, j)] * x[j];
        }
    }
    acc.re
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; u1 in (0, 1]
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// SINR at `target`, expanded into scalar sums term by term.
pub fn scalar_sinr(ch: &ChannelSet, sol: &BeamformingSolution, pw: &PowerBudget, target: Receiver) -> f64 {
    let (direct, cascade, g_direct, g_cascade, noise) = match target {
        Receiver::Bob => (&ch.h_ab, &ch.h_ib, ch.g_ab, ch.g_aib, pw.noise_bob),
        Receiver::Eve => (&ch.h_ae, &ch.h_ie, ch.g_ae, ch.g_aie, pw.noise_eve),
    };
    let received = |v: &CVector| -> Complex64 {
        let mut direct_sum = Complex64::new(0.0, 0.0);
        for n in 0..v.len() {
            direct_sum += direct[n].conj() * v[n];
        }
        let mut cascade_sum = Complex64::new(0.0, 0.0);
        for m in 0..cascade.len() {
            let mut incident = Complex64::new(0.0, 0.0);
            for n in 0..v.len() {
                incident += ch.h_ai_mat[(m, n)] * v[n];
            }
            cascade_sum += cascade[m].conj() * sol.theta[m] * incident;
        }
        direct_sum * g_direct.sqrt() + cascade_sum * g_cascade.sqrt()
    };
    let signal = pw.beta_cm * pw.total_power * received(&sol.v_cm).norm_sqr();
    let jamming = pw.beta_an * pw.total_power * received(&sol.v_an).norm_sqr();
    signal / (jamming + noise)
}

/// Random channel set with unit-norm Gaussian directions, a random rank-one
/// `H_ai` and random positive gains. Useful for stress-testing the
/// evaluators away from the steering-vector structure.
pub fn random_channel_set(rng: &mut ChaCha8Rng, na: usize, ns: usize) -> ChannelSet {
    let mut unit = |n: usize| -> CVector {
        let v = CVector::from_fn(n, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
        let norm = v.norm();
        v / Complex64::from(norm)
    };
    let h_ab = unit(na);
    let h_ae = unit(na);
    let h_ai = unit(na);
    let arrival = unit(ns);
    let h_ib = unit(ns);
    let h_ie = unit(ns);
    let h_ai_mat = &arrival * h_ai.adjoint();
    let mut gain = || 10f64.powf(-6.0 + 2.0 * rng.random::<f64>());
    let (g_ab, g_ae, g_ai, g_ib, g_ie) = (gain(), gain(), gain(), gain(), gain());
    ChannelSet {
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
        alice_array: SteeringConfig::new(na),
    }
}

/// Random unit vector from an independent Gaussian draw.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let norm = v.norm();
    v / Complex64::from(norm)
}

pub fn random_phase_vector(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| Complex64::from_polar(1.0, TAU * rng.random::<f64>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beamformers::{mrt_cm, pa_phase, MrtVariant};
    use crate::channel::{build_channels, NetworkGeometry, PathLossModel};
    use crate::linalg::dominant_gen_eigvec;
    use crate::metrics::{cascaded_power_bob, sinr_bob, sinr_eve};
    use approx::assert_relative_eq;

    fn reference(na: usize, ns: usize) -> ChannelSet {
        build_channels(
            &NetworkGeometry::default(),
            &SteeringConfig::new(na),
            &SteeringConfig::new(ns),
            &PathLossModel::default(),
        )
        .unwrap()
    }

    #[test]
    fn grid_guard() {
        assert!(matches!(GridSpec::new(360, 4), Err(Error::GridTooLarge { .. })));
        assert!(GridSpec::new(360, 3).is_ok());
        assert!(GridSpec::new(0, 1).is_err());
    }

    #[test]
    fn single_element_grid_tracks_pa() {
        // 360 points: worst-case phase error 0.5 deg, power loss
        // 1 - cos^2(pi/360) ~ 7.6e-5 < 1e-4
        let ch = reference(8, 1);
        let pw = PowerBudget::reference();
        let v = mrt_cm(&ch, MrtVariant::TowardAb).unwrap();
        let pa = cascaded_power_bob(&ch, &v, &pa_phase(&ch, &v).theta, &pw);
        let (_, best) = grid_max_cascaded_power(&ch, &v, &pw, GridSpec::new(360, 1).unwrap()).unwrap();
        assert!(best <= pa * (1.0 + 1e-12));
        assert_relative_eq!(best, pa, max_relative = 1e-4);
    }

    #[test]
    fn one_point_grid_is_all_ones() {
        let ch = reference(4, 3);
        let pw = PowerBudget::reference();
        let v = mrt_cm(&ch, MrtVariant::TowardAi).unwrap();
        let (theta, power) = grid_max_cascaded_power(&ch, &v, &pw, GridSpec::new(1, 3).unwrap()).unwrap();
        let ones = CVector::from_element(3, Complex64::new(1.0, 0.0));
        assert_eq!(theta, ones);
        assert_relative_eq!(power, cascaded_power_bob(&ch, &v, &ones, &pw), max_relative = 1e-12);
    }

    #[test]
    fn grid_dimension_mismatch() {
        let ch = reference(4, 3);
        let v = mrt_cm(&ch, MrtVariant::TowardAi).unwrap();
        let pw = PowerBudget::reference();
        assert!(grid_max_cascaded_power(&ch, &v, &pw, GridSpec::new(4, 2).unwrap()).is_err());
    }

    #[test]
    fn quotient_sampling_examples() {
        let eye = CMatrix::identity(3, 3);
        assert_relative_eq!(sample_max_quotient(&eye, &eye, 50, 1).unwrap(), 1.0, epsilon = 1e-12);
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]));
        let eye2 = CMatrix::identity(2, 2);
        let best = sample_max_quotient(&a, &eye2, 100_000, 2).unwrap();
        assert!((1.9..=2.0).contains(&best), "{best}");
        assert_eq!(best, sample_max_quotient(&a, &eye2, 100_000, 2).unwrap());
        let exact = dominant_gen_eigvec(&a, &eye2).unwrap().quotient;
        assert!(best <= exact + 1e-12);
        assert!(sample_max_quotient(&a, &eye2, 0, 2).is_err());
    }

    #[test]
    fn scalar_sinr_agrees_with_metrics() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let pw = PowerBudget::reference();
        for (na, ns) in [(2, 2), (3, 4), (4, 3)] {
            let ch = random_channel_set(&mut rng, na, ns);
            let sol = BeamformingSolution {
                v_cm: random_unit_vector(&mut rng, na),
                v_an: random_unit_vector(&mut rng, na),
                theta: random_phase_vector(&mut rng, ns),
            };
            assert_relative_eq!(
                scalar_sinr(&ch, &sol, &pw, Receiver::Bob),
                sinr_bob(&ch, &sol, &pw).unwrap(),
                max_relative = 1e-10
            );
            assert_relative_eq!(
                scalar_sinr(&ch, &sol, &pw, Receiver::Eve),
                sinr_eve(&ch, &sol, &pw).unwrap(),
                max_relative = 1e-10
            );
        }
    }
}
