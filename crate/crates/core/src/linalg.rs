//! Dense determinants for the small matrices used throughout the crate.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Determinant of a square complex matrix given row-major; the empty matrix has determinant 1.
pub fn det(n: usize, entries: &[Complex64]) -> Complex64 {
    assert_eq!(entries.len(), n * n, "matrix is not {n}x{n}");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    DMatrix::from_row_slice(n, n, entries).lu().determinant()
}

/// Determinant of the `n x n` matrix whose `(i, j)` entry is `f(i, j)`.
pub fn det_from_fn<F>(n: usize, mut f: F) -> Complex64
where
    F: FnMut(usize, usize) -> Complex64,
{
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(f(i, j));
        }
    }
    det(n, &entries)
}

/// Real counterpart of [`det`].
pub fn det_real(n: usize, entries: &[f64]) -> f64 {
    assert_eq!(entries.len(), n * n, "matrix is not {n}x{n}");
    if n == 0 {
        return 1.0;
    }
    DMatrix::from_row_slice(n, n, entries).lu().determinant()
}

/// `det(I - K)` for a row-major complex matrix.
pub fn det_identity_minus(n: usize, k: &[Complex64]) -> Complex64 {
    det_from_fn(n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex64::new(delta, 0.0) - k[i * n + j]
    })
}
