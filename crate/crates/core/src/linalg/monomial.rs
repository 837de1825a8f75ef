//! Signed-permutation-with-phase (monomial) operators and the two-band
//! operators `a·1 + b·M` built on them.
//!
//! A monomial operator has exactly one nonzero per column, of modulus 1.
//! Composition, application, and Kronecker products are index-and-phase
//! bookkeeping, linear in the dimension, with no dense arithmetic. All the
//! group-generator images in this crate are carried this way; dense matrices
//! exist only as oracles below the dense cap.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::dense::{DenseMatrix, ErrorStat, DEFAULT_DENSE_CAP};
use crate::linalg::state::StateVector;
use crate::report::Witness;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Operator with exactly one unimodular nonzero per column.
///
/// Column `j` (0-based internally) has its nonzero at row `target[j]` with
/// coefficient `phase[j]`; `target` is a permutation and `|phase[j]| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialOperator {
    dim: usize,
    target: Vec<usize>,
    phase: Vec<Complex64>,
}

impl MonomialOperator {
    /// Validates that `target` is a permutation of `0..dim` and that every
    /// phase is unimodular (within 1e-12).
    pub fn new(target: Vec<usize>, phase: Vec<Complex64>) -> Result<Self> {
        let dim = target.len();
        if phase.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: phase.len(),
                context: "monomial target/phase lengths",
            });
        }
        let mut seen = vec![false; dim];
        for &t in &target {
            if t >= dim || seen[t] {
                return Err(Error::NotAPermutation { dim });
            }
            seen[t] = true;
        }
        for (j, p) in phase.iter().enumerate() {
            if (p.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::NotUnimodular {
                    index: j,
                    modulus: p.norm(),
                });
            }
        }
        Ok(MonomialOperator { dim, target, phase })
    }

    pub fn identity(dim: usize) -> Self {
        MonomialOperator {
            dim,
            target: (0..dim).collect(),
            phase: vec![ONE; dim],
        }
    }

    /// The signed index reversal M of dimension 2n: column j maps to row
    /// 2n-1-j with sign -1 on the first half and +1 on the second, so that
    /// M² = -1 and M† = -M. For dim = 2^N this equals √-1 σ_y ⊗ σ_x^(N-1).
    pub fn signed_reversal(dim: usize) -> Self {
        assert!(dim >= 2 && dim % 2 == 0, "signed reversal needs even dim");
        let target = (0..dim).map(|j| dim - 1 - j).collect();
        let phase = (0..dim)
            .map(|j| if j < dim / 2 { -ONE } else { ONE })
            .collect();
        MonomialOperator { dim, target, phase }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row of the unique nonzero in column `j` (0-based).
    pub fn target(&self, j: usize) -> usize {
        self.target[j]
    }

    pub fn phase(&self, j: usize) -> Complex64 {
        self.phase[j]
    }

    /// `self ∘ other` (matrix product, self applied second).
    pub fn compose(&self, other: &MonomialOperator) -> Result<MonomialOperator> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
                context: "monomial compose",
            });
        }
        let mut target = Vec::with_capacity(self.dim);
        let mut phase = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mid = other.target[j];
            target.push(self.target[mid]);
            phase.push(self.phase[mid] * other.phase[j]);
        }
        Ok(MonomialOperator {
            dim: self.dim,
            target,
            phase,
        })
    }

    /// Kronecker product of monomials; agrees entrywise with the dense
    /// Kronecker product of the dense forms.
    pub fn kron(&self, other: &MonomialOperator) -> MonomialOperator {
        let dim = self.dim * other.dim;
        let mut target = Vec::with_capacity(dim);
        let mut phase = Vec::with_capacity(dim);
        for jp in 0..self.dim {
            for jq in 0..other.dim {
                target.push(self.target[jp] * other.dim + other.target[jq]);
                phase.push(self.phase[jp] * other.phase[jq]);
            }
        }
        MonomialOperator { dim, target, phase }
    }

    /// Apply to a state vector in time linear in the dimension.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
                context: "monomial apply",
            });
        }
        let mut out = vec![ZERO; self.dim];
        for (j, &amp) in v.amplitudes().iter().enumerate() {
            out[self.target[j]] = self.phase[j] * amp;
        }
        Ok(StateVector::from_amplitudes(out))
    }

    /// Inverse (= adjoint, since the operator is unitary).
    pub fn inverse(&self) -> MonomialOperator {
        let mut target = vec![0usize; self.dim];
        let mut phase = vec![ONE; self.dim];
        for j in 0..self.dim {
            target[self.target[j]] = j;
            phase[self.target[j]] = self.phase[j].conj();
        }
        MonomialOperator {
            dim: self.dim,
            target,
            phase,
        }
    }

    /// Conjugate transpose; equal to `inverse` for unimodular phases.
    pub fn adjoint(&self) -> MonomialOperator {
        self.inverse()
    }

    /// Multiply every phase by a unimodular scalar.
    pub fn scaled(&self, factor: Complex64) -> MonomialOperator {
        MonomialOperator {
            dim: self.dim,
            target: self.target.clone(),
            phase: self.phase.iter().map(|p| p * factor).collect(),
        }
    }

    pub fn negated(&self) -> MonomialOperator {
        self.scaled(-ONE)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim)
            .filter(|&j| self.target[j] == j)
            .map(|j| self.phase[j])
            .sum()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.target.iter().enumerate().all(|(j, &t)| t != j)
    }

    /// Max entrywise |P - Q| with worst-entry witness, computed without
    /// densifying: if two columns target the same row the error is the phase
    /// difference, otherwise both unimodular entries count in full.
    pub fn max_abs_diff(&self, other: &MonomialOperator) -> Result<ErrorStat> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
                context: "monomial max_abs_diff",
            });
        }
        let mut stat = ErrorStat::zero();
        for j in 0..self.dim {
            if self.target[j] == other.target[j] {
                let err = (self.phase[j] - other.phase[j]).norm();
                stat.observe(err, || {
                    Witness::entry(self.target[j], j, self.phase[j], other.phase[j])
                });
            } else {
                let e1 = self.phase[j].norm();
                stat.observe(e1, || Witness::entry(self.target[j], j, self.phase[j], ZERO));
                let e2 = other.phase[j].norm();
                stat.observe(e2, || {
                    Witness::entry(other.target[j], j, ZERO, other.phase[j])
                });
            }
        }
        Ok(stat)
    }

    /// Max entrywise |P - c·1|.
    pub fn max_abs_diff_scaled_identity(&self, c: Complex64) -> ErrorStat {
        let mut stat = ErrorStat::zero();
        for j in 0..self.dim {
            if self.target[j] == j {
                let err = (self.phase[j] - c).norm();
                stat.observe(err, || Witness::entry(j, j, self.phase[j], c));
            } else {
                stat.observe(self.phase[j].norm(), || {
                    Witness::entry(self.target[j], j, self.phase[j], ZERO)
                });
                stat.observe(c.norm(), || Witness::entry(j, j, ZERO, c));
            }
        }
        stat
    }

    /// Max entrywise |P - (-P†)|; zero iff the operator is anti-Hermitian.
    pub fn anti_hermiticity_error(&self) -> ErrorStat {
        let neg_adj = self.adjoint().negated();
        self.max_abs_diff(&neg_adj).expect("same dim")
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        self.to_dense_with_cap(DEFAULT_DENSE_CAP)
    }

    pub fn to_dense_with_cap(&self, cap: usize) -> Result<DenseMatrix> {
        if self.dim > cap {
            return Err(Error::DenseCapExceeded {
                dim: self.dim,
                cap,
            });
        }
        let mut m = DenseMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            m.set(self.target[j], j, self.phase[j]);
        }
        Ok(m)
    }
}

/// Operator of the form `a·1 + b·M` with `M` monomial: at most two nonzeros
/// per column. Braid-generator images, Yang-Baxterized families and the
/// evolution operators all have this shape.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBandOperator {
    id_coeff: Complex64,
    mono_coeff: Complex64,
    mono: MonomialOperator,
}

impl TwoBandOperator {
    pub fn new(id_coeff: Complex64, mono_coeff: Complex64, mono: MonomialOperator) -> Self {
        TwoBandOperator {
            id_coeff,
            mono_coeff,
            mono,
        }
    }

    /// `(1/√2)(1 + M)`.
    pub fn bell_from(mono: MonomialOperator) -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        TwoBandOperator::new(s, s, mono)
    }

    /// `(1/√2)(1 - M)`, the inverse of `bell_from` when M² = -1.
    pub fn bell_inverse_from(mono: MonomialOperator) -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        TwoBandOperator::new(s, -s, mono)
    }

    pub fn dim(&self) -> usize {
        self.mono.dim()
    }

    pub fn id_coeff(&self) -> Complex64 {
        self.id_coeff
    }

    pub fn mono_coeff(&self) -> Complex64 {
        self.mono_coeff
    }

    pub fn monomial(&self) -> &MonomialOperator {
        &self.mono
    }

    /// The up-to-two (row, coefficient) pairs of column `j`.
    pub fn column(&self, j: usize) -> Vec<(usize, Complex64)> {
        let t = self.mono.target(j);
        let band = self.mono_coeff * self.mono.phase(j);
        if t == j {
            vec![(j, self.id_coeff + band)]
        } else {
            vec![(j, self.id_coeff), (t, band)]
        }
    }

    /// Apply to a state vector in time linear in the dimension.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: v.dim(),
                context: "two-band apply",
            });
        }
        let dim = self.dim();
        let mut out = vec![ZERO; dim];
        let amps = v.amplitudes();
        for (j, &amp) in amps.iter().enumerate() {
            out[j] += self.id_coeff * amp;
            out[self.mono.target(j)] += self.mono_coeff * self.mono.phase(j) * amp;
        }
        Ok(StateVector::from_amplitudes(out))
    }

    /// Adjoint `conj(a)·1 + conj(b)·M†`.
    pub fn adjoint(&self) -> TwoBandOperator {
        TwoBandOperator {
            id_coeff: self.id_coeff.conj(),
            mono_coeff: self.mono_coeff.conj(),
            mono: self.mono.adjoint(),
        }
    }

    /// Closed-form inverse `(a - bM) / (a² + b²)`, valid when M² = -1.
    pub fn inverse(&self) -> Result<TwoBandOperator> {
        let mm = self.mono.compose(&self.mono)?;
        if mm.max_abs_diff_scaled_identity(-ONE).max_error > 1e-12 {
            return Err(Error::NotAlmostComplex {
                reason: "two-band inverse requires M² = -1",
            });
        }
        let denom = self.id_coeff * self.id_coeff + self.mono_coeff * self.mono_coeff;
        if denom.norm() < 1e-300 {
            return Err(Error::NotAlmostComplex {
                reason: "two-band operator is singular (a² + b² = 0)",
            });
        }
        Ok(TwoBandOperator {
            id_coeff: self.id_coeff / denom,
            mono_coeff: -self.mono_coeff / denom,
            mono: self.mono.clone(),
        })
    }

    pub fn trace(&self) -> Complex64 {
        Complex64::new(self.dim() as f64, 0.0) * self.id_coeff
            + self.mono_coeff * self.mono.trace()
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        self.to_dense_with_cap(DEFAULT_DENSE_CAP)
    }

    pub fn to_dense_with_cap(&self, cap: usize) -> Result<DenseMatrix> {
        if self.dim() > cap {
            return Err(Error::DenseCapExceeded {
                dim: self.dim(),
                cap,
            });
        }
        let dim = self.dim();
        let mut m = DenseMatrix::zeros(dim, dim);
        for j in 0..dim {
            for (row, coeff) in self.column(j) {
                m.set(row, j, m.get(row, j) + coeff);
            }
        }
        Ok(m)
    }
}
