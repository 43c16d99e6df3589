//! The two secrecy-rate beamforming schemes and their benchmarks.
//!
//! * [`max_sr_slnr`] alternates a generalized-eigenvector CM beamformer with
//!   an SLNR-derived IRS phase vector.
//! * [`mrt_nsp_pa`] designs CM (maximum ratio transmission), AN (null-space
//!   projection) and IRS phases (phase alignment) independently in closed
//!   form.
//!
//! Both share the AN beamformer from [`an_beamformer`].

mod an;
mod flops;
mod max_sr;
mod mrt;

pub use an::{an_beamformer, constraint_matrix};
pub use flops::{flops_max_sr_slnr, flops_mrt_nsp_pa, FlopCount};
pub use max_sr::{
    align_with_direct_path, max_sr_cm, max_sr_slnr, slnr_direction, slnr_matrices, slnr_phase, InitialPhase,
    MaxSrSlnrConfig, MaxSrSlnrOutcome,
};
pub use mrt::{benchmark_phase, benchmark_solution, mrt_cm, mrt_nsp_pa, pa_phase, BenchmarkKind, MrtVariant, PaPhase};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::CVector;

/// I.i.d. uniform phases on `[0, 2pi)`, deterministic in `seed`.
pub fn random_phases(n: usize, seed: u64) -> CVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CVector::from_fn(n, |_, _| Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU))
}

/// `exp(j arg(u))` elementwise; zero entries map to phase 0.
pub(crate) fn unit_modulus(u: &CVector) -> CVector {
    u.map(|z| if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) })
}
