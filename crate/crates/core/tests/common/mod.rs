//! Shared independent oracles for the integration suites. These stay
//! deliberately naive: their value is being a different route to the same
//! numbers.

use braidforge::linalg::dense::DenseMatrix;
use num_complex::Complex64;

/// Truncated power series Σ_{j<=order} A^j / j! of the matrix exponential.
pub fn series_expm(a: &DenseMatrix, order: usize) -> DenseMatrix {
    assert!(a.is_square());
    let dim = a.rows();
    let mut sum = DenseMatrix::identity(dim);
    let mut term = DenseMatrix::identity(dim);
    for j in 1..=order {
        term = term.matmul(a).scale(Complex64::new(1.0 / j as f64, 0.0));
        sum = sum.add(&term);
    }
    sum
}

#[allow(dead_code)]
pub fn max_err(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.max_abs_diff(b).unwrap().max_error
}
