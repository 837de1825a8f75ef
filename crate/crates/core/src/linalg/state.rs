//! Dense complex state vectors over the tensor-product basis, 1-indexed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::Witness;

use super::dense::ErrorStat;

/// Complex amplitude vector. Basis indices are 1-based in the public API;
/// storage is 0-based internally.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(dim: usize) -> Self {
        StateVector {
            amplitudes: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        StateVector { amplitudes }
    }

    /// The basis vector with a 1 at (1-based) index `k`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k < 1 || k > dim {
            return Err(Error::BasisIndexOutOfRange { index: k, max: dim });
        }
        let mut v = Self::zeros(dim);
        v.amplitudes[k - 1] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitude at 1-based index `k`.
    pub fn amp(&self, k: usize) -> Result<Complex64> {
        if k < 1 || k > self.dim() {
            return Err(Error::BasisIndexOutOfRange {
                index: k,
                max: self.dim(),
            });
        }
        Ok(self.amplitudes[k - 1])
    }

    pub fn set_amp(&mut self, k: usize, value: Complex64) -> Result<()> {
        if k < 1 || k > self.dim() {
            return Err(Error::BasisIndexOutOfRange {
                index: k,
                max: self.dim(),
            });
        }
        self.amplitudes[k - 1] = value;
        Ok(())
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn scale(&self, factor: Complex64) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> StateVector {
        assert_eq!(self.dim(), other.dim());
        StateVector {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &StateVector) -> StateVector {
        assert_eq!(self.dim(), other.dim());
        StateVector {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// 1-based indices of entries with |amplitude| above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > threshold)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> Result<ErrorStat> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
                context: "state max_abs_diff",
            });
        }
        let mut stat = ErrorStat::zero();
        for (i, (a, b)) in self.amplitudes.iter().zip(&other.amplitudes).enumerate() {
            let err = (a - b).norm();
            stat.observe(err, || Witness {
                location: vec![i + 1],
                lhs: *a,
                rhs: *b,
            });
        }
        Ok(stat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_vector_is_one_indexed() {
        let v = StateVector::basis(4, 1).unwrap();
        assert_eq!(v.amp(1).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(v.amp(2).unwrap(), Complex64::new(0.0, 0.0));
        assert!(StateVector::basis(4, 0).is_err());
        assert!(StateVector::basis(4, 5).is_err());
    }

    #[test]
    fn norm_and_support() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = StateVector::zeros(8);
        v.set_amp(1, Complex64::new(s, 0.0)).unwrap();
        v.set_amp(8, Complex64::new(-s, 0.0)).unwrap();
        assert!(v.is_normalized(1e-14));
        assert_eq!(v.support(1e-12), vec![1, 8]);
    }
}
