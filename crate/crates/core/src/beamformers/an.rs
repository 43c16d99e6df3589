use num_complex::Complex64;

use crate::channel::ChannelSet;
use crate::error::{Error, Result};
use crate::linalg::{null_space_projector, CMatrix, CVector};

/// Stacked constraint rows `[h_ab^H; H_ai]`, `(1 + N_s) x N_a`.
pub fn constraint_matrix(ch: &ChannelSet) -> CMatrix {
    let (ns, na) = ch.h_ai_mat.shape();
    let mut p = CMatrix::zeros(1 + ns, na);
    p.row_mut(0).copy_from(&ch.h_ab.adjoint());
    p.rows_mut(1, ns).copy_from(&ch.h_ai_mat);
    p
}

/// Artificial-noise beamformer: the unit vector in the null space of Bob's
/// direct channel and the Alice-IRS channel that puts the most power on
/// Eve's direct channel, `T h_ae / |T h_ae|`.
pub fn an_beamformer(ch: &ChannelSet) -> Result<CVector> {
    let t = null_space_projector(&constraint_matrix(ch))?;
    let dof: f64 = t.diagonal().iter().map(|z| z.re).sum();
    if dof < 0.5 {
        return Err(Error::NoAnDegreesOfFreedom(ch.n_alice()));
    }
    let w = &t * &ch.h_ae;
    let norm = w.norm();
    if norm <= 1e-10 * ch.h_ae.norm() {
        return Err(Error::AnCannotReachEve);
    }
    Ok(w / Complex64::from(norm))
}
