//! Dense complex matrices with the Kronecker convention
//! `(A ⊗ B)[ik, jl] = A[i, j] · B[k, l]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::Witness;

/// Default cap on the dimension of any dense square matrix produced by
/// `kron` or by densifying a structured operator. Structured operators
/// themselves have no cap below memory limits.
pub const DEFAULT_DENSE_CAP: usize = 1 << 13;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

/// Max entrywise error together with the worst entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorStat {
    pub max_error: f64,
    pub witness: Option<Witness>,
}

impl ErrorStat {
    pub fn zero() -> Self {
        ErrorStat {
            max_error: 0.0,
            witness: None,
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max_error <= tol
    }

    /// Merge by keeping the larger error.
    pub fn merge(&mut self, other: ErrorStat) {
        if other.max_error > self.max_error {
            *self = other;
        }
    }

    pub fn observe(&mut self, err: f64, mk_witness: impl FnOnce() -> Witness) {
        if err > self.max_error {
            self.max_error = err;
            self.witness = Some(mk_witness());
        }
    }
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                left_rows: rows,
                left_cols: cols,
                right_rows: entries.len(),
                right_cols: 1,
            });
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from real entries, row-major.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix product. Panics on inner-dimension mismatch.
    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul: inner dimensions {} and {} differ",
            self.cols, other.rows
        );
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        // i-k-j order keeps the inner loop contiguous in both inputs.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let brow = &other.entries[k * other.cols..(k + 1) * other.cols];
                let crow = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                for (c, b) in crow.iter_mut().zip(brow.iter()) {
                    *c += a * b;
                }
            }
        }
        out
    }

    /// Matrix-vector product. Panics on dimension mismatch.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec: dimension mismatch");
        if self.cols == 0 {
            return vec![Complex64::new(0.0, 0.0); self.rows];
        }
        self.entries
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, factor: Complex64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Max |A - B| over entries plus the worst entry; errors on shape mismatch.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Result<ErrorStat> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut stat = ErrorStat::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                let b = other.get(i, j);
                let err = (a - b).norm();
                if err > stat.max_error {
                    stat.max_error = err;
                    stat.witness = Some(Witness::entry(i, j, a, b));
                }
            }
        }
        Ok(stat)
    }

    /// True iff max entrywise |A - B| <= tol; also reports the max error.
    pub fn approx_eq(&self, other: &DenseMatrix, tol: f64) -> Result<(bool, f64)> {
        let stat = self.max_abs_diff(other)?;
        Ok((stat.within(tol), stat.max_error))
    }
}

fn ensure_dense_dims(rows: usize, cols: usize, cap: usize) -> Result<()> {
    if rows > cap || cols > cap {
        return Err(Error::DenseCapExceeded {
            dim: rows.max(cols),
            cap,
        });
    }
    Ok(())
}

/// Kronecker product under the default dense cap.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    kron_with_cap(a, b, DEFAULT_DENSE_CAP)
}

/// Kronecker product with an explicit cap on the resulting dimensions.
pub fn kron_with_cap(a: &DenseMatrix, b: &DenseMatrix, cap: usize) -> Result<DenseMatrix> {
    let rows = a
        .rows()
        .checked_mul(b.rows())
        .ok_or(Error::DenseCapExceeded {
            dim: usize::MAX,
            cap,
        })?;
    let cols = a
        .cols()
        .checked_mul(b.cols())
        .ok_or(Error::DenseCapExceeded {
            dim: usize::MAX,
            cap,
        })?;
    ensure_dense_dims(rows, cols, cap)?;
    let mut out = DenseMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// σ_x = [[0, 1], [1, 0]]
pub fn sigma_x() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

/// σ_y = [[0, -i], [i, 0]]
pub fn sigma_y() -> DenseMatrix {
    DenseMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .unwrap()
}

/// σ_z = [[1, 0], [0, -1]]
pub fn sigma_z() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

/// √-1 σ_y = [[0, 1], [-1, 0]]
pub fn i_sigma_y() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap()
}
