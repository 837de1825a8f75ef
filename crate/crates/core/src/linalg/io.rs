//! JSON wire formats.
//!
//! ```text
//! Matrix:   {"rows": R, "cols": C, "entries": [[re, im], …]}  (row-major)
//! Monomial: {"dim": d, "target": […], "phase": [[re, im], …]} (1-based targets)
//! State:    {"dim": d, "amplitudes": [[re, im], …]}           (1-based basis)
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::dense::DenseMatrix;
use crate::linalg::monomial::MonomialOperator;
use crate::linalg::state::StateVector;

fn to_pairs(entries: &[Complex64]) -> Vec<(f64, f64)> {
    entries.iter().map(|c| (c.re, c.im)).collect()
}

fn from_pairs(pairs: &[(f64, f64)]) -> Vec<Complex64> {
    pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
}

#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(f64, f64)>,
}

impl From<&DenseMatrix> for MatrixJson {
    fn from(m: &DenseMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: to_pairs(m.entries()),
        }
    }
}

impl TryFrom<MatrixJson> for DenseMatrix {
    type Error = crate::error::Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        DenseMatrix::new(j.rows, j.cols, from_pairs(&j.entries))
    }
}

#[derive(Serialize, Deserialize)]
pub struct MonomialJson {
    pub dim: usize,
    /// 1-based row index of the unique nonzero in each column.
    pub target: Vec<usize>,
    pub phase: Vec<(f64, f64)>,
}

impl From<&MonomialOperator> for MonomialJson {
    fn from(m: &MonomialOperator) -> Self {
        MonomialJson {
            dim: m.dim(),
            target: (0..m.dim()).map(|j| m.target(j) + 1).collect(),
            phase: (0..m.dim()).map(|j| (m.phase(j).re, m.phase(j).im)).collect(),
        }
    }
}

impl TryFrom<MonomialJson> for MonomialOperator {
    type Error = crate::error::Error;
    fn try_from(j: MonomialJson) -> Result<Self> {
        let target = j
            .target
            .iter()
            .map(|&t| t.wrapping_sub(1))
            .collect::<Vec<_>>();
        MonomialOperator::new(target, from_pairs(&j.phase))
    }
}

#[derive(Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub amplitudes: Vec<(f64, f64)>,
}

impl From<&StateVector> for StateJson {
    fn from(v: &StateVector) -> Self {
        StateJson {
            dim: v.dim(),
            amplitudes: to_pairs(v.amplitudes()),
        }
    }
}

impl From<StateJson> for StateVector {
    fn from(j: StateJson) -> Self {
        StateVector::from_amplitudes(from_pairs(&j.amplitudes))
    }
}

pub fn matrix_to_json(m: &DenseMatrix) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("matrix serialization")
}

pub fn matrix_from_json(s: &str) -> Result<DenseMatrix> {
    let j: MatrixJson = serde_json::from_str(s)?;
    j.try_into()
}

pub fn monomial_to_json(m: &MonomialOperator) -> String {
    serde_json::to_string(&MonomialJson::from(m)).expect("monomial serialization")
}

pub fn monomial_from_json(s: &str) -> Result<MonomialOperator> {
    let j: MonomialJson = serde_json::from_str(s)?;
    j.try_into()
}

pub fn state_to_json(v: &StateVector) -> String {
    serde_json::to_string(&StateJson::from(v)).expect("state serialization")
}

pub fn state_from_json(s: &str) -> Result<StateVector> {
    let j: StateJson = serde_json::from_str(s)?;
    Ok(j.into())
}
