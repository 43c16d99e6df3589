//! Dense complex linear algebra used by the beamformers.
//!
//! Everything here works on small Hermitian problems (transmit-side
//! dimensions of a few dozen); the IRS-side rank-one problems are solved in
//! closed form by the beamformers and only cross-checked against these
//! routines.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CVector = DVector<Complex64>;
pub type CMatrix = DMatrix<Complex64>;

/// Relative cutoff applied to Gram-matrix eigenvalues when forming a
/// pseudo-inverse.
pub const PINV_CUTOFF: f64 = 1e-12;

/// Tolerance for the Hermitian-input check of [`dominant_gen_eigvec`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Relative floor on the smallest eigenvalue of a denominator matrix.
pub const PD_TOL: f64 = 1e-13;

/// Result of a generalized Rayleigh-quotient maximization.
#[derive(Debug, Clone)]
pub struct GenEigen {
    /// Unit-norm maximizer, phase-normalized (see [`normalize_global_phase`]).
    pub vector: CVector,
    /// `x^H A x / x^H B x` at the maximizer.
    pub quotient: f64,
}

/// Returns `T = I - P^H (P P^H)^† P`, the orthogonal projector onto the null
/// space of `P`.
///
/// The projector onto the row space is built from whichever Gram matrix
/// (`P P^H` or `P^H P`) is smaller, so a tall `P` with thousands of rows
/// still costs one `n x n` eigendecomposition. Rank deficiency is handled by
/// dropping Gram eigenvalues below `PINV_CUTOFF` times the largest.
pub fn null_space_projector(p: &CMatrix) -> Result<CMatrix> {
    let (r, n) = p.shape();
    if r == 0 || n == 0 {
        return Err(Error::dims("null_space_projector", "r >= 1, n >= 1", format!("{r}x{n}")));
    }
    let p_h = p.adjoint();
    let row_projector = if r <= n {
        let gram = hermitian_part(&(p * &p_h));
        let pinv = hermitian_pinv(gram);
        &p_h * pinv * p
    } else {
        let gram = hermitian_part(&(&p_h * p));
        let eig = SymmetricEigen::new(gram);
        let cut = cutoff(&eig.eigenvalues);
        let mut proj = CMatrix::zeros(n, n);
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda > cut {
                let v = eig.eigenvectors.column(k);
                proj += v * v.adjoint();
            }
        }
        proj
    };
    let t = CMatrix::identity(n, n) - row_projector;
    Ok(hermitian_part(&t))
}

/// Maximizes the generalized Rayleigh quotient `x^H A x / x^H B x`.
///
/// Solved as the standard Hermitian problem on `B^{-1/2} A B^{-1/2}` and
/// mapped back with `x = B^{-1/2} y`. `B` must be positive definite: its
/// smallest eigenvalue has to exceed `PD_TOL` times its largest.
pub fn dominant_gen_eigvec(a: &CMatrix, b: &CMatrix) -> Result<GenEigen> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n || b.shape() != (n, n) {
        return Err(Error::dims(
            "dominant_gen_eigvec",
            format!("square A and B of equal size, A is {}x{}", a.nrows(), a.ncols()),
            format!("B is {}x{}", b.nrows(), b.ncols()),
        ));
    }
    check_hermitian(a, "numerator")?;
    check_hermitian(b, "denominator")?;

    let b_inv_sqrt = inverse_sqrt_pd(hermitian_part(b))?;
    let c = hermitian_part(&(&b_inv_sqrt * hermitian_part(a) * &b_inv_sqrt));
    let eig = SymmetricEigen::new(c);
    let top = eig.eigenvalues.imax();

    let mut x = &b_inv_sqrt * eig.eigenvectors.column(top);
    x /= Complex64::from(x.norm());
    normalize_global_phase(&mut x);
    let quotient = rayleigh_quotient(a, b, &x);
    Ok(GenEigen { vector: x, quotient })
}

/// `x^H A x / x^H B x`, real parts only (both forms are real for Hermitian
/// inputs).
pub fn rayleigh_quotient(a: &CMatrix, b: &CMatrix, x: &CVector) -> f64 {
    quadratic_form(a, x) / quadratic_form(b, x)
}

pub fn quadratic_form(m: &CMatrix, x: &CVector) -> f64 {
    x.dotc(&(m * x)).re
}

/// Rotates `x` so its largest-magnitude entry is real and nonnegative.
pub fn normalize_global_phase(x: &mut CVector) {
    let Some((_, pivot)) = x.iter().enumerate().max_by(|(_, p), (_, q)| p.norm().total_cmp(&q.norm())) else {
        return;
    };
    let mag = pivot.norm();
    if mag > 0.0 {
        let rot = pivot.conj() / mag;
        x.apply(|z| *z *= rot);
    }
}

/// `(M + M^H) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::from(0.5)
}

/// `diag(v)` as a dense matrix.
pub fn diag(v: &CVector) -> CMatrix {
    CMatrix::from_diagonal(v)
}

fn check_hermitian(m: &CMatrix, which: &'static str) -> Result<()> {
    let scale = m.norm().max(1.0);
    if (m - m.adjoint()).norm() > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(which));
    }
    Ok(())
}

fn cutoff(eigenvalues: &DVector<f64>) -> f64 {
    let largest = eigenvalues.iter().copied().fold(0.0_f64, f64::max);
    PINV_CUTOFF * largest
}

fn hermitian_pinv(gram: CMatrix) -> CMatrix {
    let n = gram.nrows();
    let eig = SymmetricEigen::new(gram);
    let cut = cutoff(&eig.eigenvalues);
    let mut pinv = CMatrix::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > cut {
            let v = eig.eigenvectors.column(k);
            pinv += (v * v.adjoint()) * Complex64::from(1.0 / lambda);
        }
    }
    pinv
}

fn inverse_sqrt_pd(b: CMatrix) -> Result<CMatrix> {
    let n = b.nrows();
    let eig = SymmetricEigen::new(b);
    let largest = eig.eigenvalues.max();
    let smallest = eig.eigenvalues.min();
    if !(largest > 0.0) || smallest <= PD_TOL * largest {
        return Err(Error::IndefiniteDenominator { min_eigenvalue: smallest });
    }
    let mut out = CMatrix::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        out += (v * v.adjoint()) * Complex64::from(lambda.powf(-0.5));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, n: usize) -> CMatrix {
        CMatrix::from_fn(r, n, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
    }

    /// Orthonormal basis of the row space of `p` by modified Gram-Schmidt on
    /// the conjugated rows. Independent of the eigendecomposition route.
    fn row_space_basis(p: &CMatrix) -> Vec<CVector> {
        let mut basis: Vec<CVector> = Vec::new();
        for i in 0..p.nrows() {
            let mut v: CVector = p.row(i).adjoint();
            for q in &basis {
                let proj = q.dotc(&v);
                v -= q * proj;
            }
            let norm = v.norm();
            if norm > 1e-9 {
                basis.push(v / Complex64::from(norm));
            }
        }
        basis
    }

    #[test]
    fn projector_of_unit_row_is_complement() {
        let p = CMatrix::from_row_slice(1, 2, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let t = null_space_projector(&p).unwrap();
        let expected = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]));
        assert!((t - expected).norm() < 1e-15);
    }

    #[test]
    fn projector_of_zero_map_is_identity() {
        let t = null_space_projector(&CMatrix::zeros(2, 4)).unwrap();
        assert!((t - CMatrix::identity(4, 4)).norm() < 1e-15);
    }

    #[test]
    fn projector_rejects_empty_input() {
        assert!(matches!(null_space_projector(&CMatrix::zeros(0, 3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn random_projector_matches_gram_schmidt() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = random_matrix(&mut rng, 3, 8);
        let t = null_space_projector(&p).unwrap();

        assert!((&t * p.adjoint()).norm() <= 1e-10);
        assert!((&t * &t - &t).norm() <= 1e-10);
        assert!((&t - t.adjoint()).norm() <= 1e-10);

        let basis = row_space_basis(&p);
        assert_eq!(basis.len(), 3);
        let mut oracle = CMatrix::identity(8, 8);
        for q in &basis {
            oracle -= q * q.adjoint();
        }
        assert!((t - oracle).norm() <= 1e-10);
    }

    #[test]
    fn tall_rank_deficient_projector() {
        // 40 rows, all multiples of one vector: the projector must remove a
        // single direction.
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let base = random_matrix(&mut rng, 1, 6);
        let p = CMatrix::from_fn(40, 6, |i, j| base[(0, j)] * c(1.0 + i as f64, 0.3 * i as f64));
        let t = null_space_projector(&p).unwrap();
        let trace: f64 = t.diagonal().iter().map(|z| z.re).sum();
        assert_relative_eq!(trace, 5.0, epsilon = 1e-10);
        assert!((&t * p.adjoint()).norm() <= 1e-10 * p.norm());
    }

    #[test]
    fn gen_eig_diagonal_case() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![c(2.0, 0.0), c(1.0, 0.0)]));
        let b = CMatrix::identity(2, 2);
        let sol = dominant_gen_eigvec(&a, &b).unwrap();
        assert_relative_eq!(sol.quotient, 2.0, epsilon = 1e-12);
        assert_relative_eq!(sol.vector[0].re, 1.0, epsilon = 1e-12);
        assert!(sol.vector[1].norm() < 1e-12);
    }

    #[test]
    fn gen_eig_rank_one_is_mrt() {
        let h = CVector::from_vec(vec![c(0.3, -0.2), c(-1.0, 0.5), c(0.1, 0.9)]);
        let a = &h * h.adjoint();
        let sol = dominant_gen_eigvec(&a, &CMatrix::identity(3, 3)).unwrap();
        let align = h.dotc(&sol.vector).norm() / h.norm();
        assert_relative_eq!(align, 1.0, epsilon = 1e-12);
        assert_relative_eq!(sol.quotient, h.norm_squared(), epsilon = 1e-12);
    }

    #[test]
    fn gen_eig_rejects_indefinite_denominator() {
        let a = CMatrix::identity(2, 2);
        let b = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]));
        assert!(matches!(dominant_gen_eigvec(&a, &b), Err(Error::IndefiniteDenominator { .. })));
        let singular = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        assert!(dominant_gen_eigvec(&a, &singular).is_err());
    }

    #[test]
    fn gen_eig_rejects_non_hermitian() {
        let a = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(dominant_gen_eigvec(&a, &CMatrix::identity(2, 2)), Err(Error::NotHermitian("numerator"))));
    }

    #[test]
    fn gen_eig_scaling_and_phase_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_matrix(&mut rng, 4, 4);
        let a = &g * g.adjoint();
        let k = random_matrix(&mut rng, 4, 4);
        let b = &k * k.adjoint() + CMatrix::identity(4, 4);

        let sol = dominant_gen_eigvec(&a, &b).unwrap();
        let scaled = dominant_gen_eigvec(&(&a * Complex64::from(3.5)), &b).unwrap();
        assert_relative_eq!(scaled.quotient, 3.5 * sol.quotient, max_relative = 1e-10);
        assert!(sol.vector.dotc(&scaled.vector).norm() > 1.0 - 1e-10);

        let rotated = &sol.vector * Complex64::from_polar(1.0, 1.234);
        assert_relative_eq!(rayleigh_quotient(&a, &b, &rotated), sol.quotient, max_relative = 1e-10);
        // phase convention: largest entry real nonnegative
        let pivot = sol.vector.iter().max_by(|p, q| p.norm().total_cmp(&q.norm())).unwrap();
        assert!(pivot.im.abs() < 1e-14 && pivot.re >= 0.0);
    }

    #[test]
    fn diag_swap_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 5, 1).column(0).into_owned();
            let b = random_matrix(&mut rng, 5, 1).column(0).into_owned();
            assert!((diag(&a) * &b - diag(&b) * &a).norm() < 1e-12);
        }
    }
}
