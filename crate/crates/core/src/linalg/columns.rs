//! Column-streaming equality checks for products of structured operators.
//!
//! Products of monomial and two-band operators applied to a basis vector stay
//! sparse (at most 2^ℓ entries after ℓ two-band factors), so two operator
//! products can be compared column by column exactly, without materializing
//! either side. This is how every verifier works above the dense cap; below
//! the cap the same sweep doubles as the full-matrix comparison.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::dense::{DenseMatrix, ErrorStat};
use crate::linalg::monomial::{MonomialOperator, TwoBandOperator};
use crate::report::Witness;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Sparse complex vector: sorted (index, value) pairs with unique indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec {
    entries: Vec<(usize, Complex64)>,
}

impl SparseVec {
    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn from_entries(mut entries: Vec<(usize, Complex64)>) -> Self {
        entries.sort_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match merged.last_mut() {
                Some((li, lv)) if *li == i => *lv += v,
                _ => merged.push((i, v)),
            }
        }
        SparseVec { entries: merged }
    }

    pub fn entries(&self) -> &[(usize, Complex64)] {
        &self.entries
    }

    pub fn scaled(&self, factor: Complex64) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|&(i, v)| (i, factor * v)).collect(),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        SparseVec::from_entries(entries)
    }

    /// Max |self - other| over entries; the column index labels the witness.
    pub fn max_abs_diff(&self, other: &SparseVec, column: usize) -> ErrorStat {
        let mut stat = ErrorStat::zero();
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            let (row, va, vb) = if ia == ib {
                let r = (ia, self.entries[a].1, other.entries[b].1);
                a += 1;
                b += 1;
                r
            } else if ia < ib {
                let r = (ia, self.entries[a].1, ZERO);
                a += 1;
                r
            } else {
                let r = (ib, ZERO, other.entries[b].1);
                b += 1;
                r
            };
            stat.observe((va - vb).norm(), || Witness::entry(row, column, va, vb));
        }
        stat
    }
}

/// Anything that can push a sparse column through itself.
pub enum OpRef<'a> {
    Monomial(&'a MonomialOperator),
    TwoBand(&'a TwoBandOperator),
}

impl<'a> OpRef<'a> {
    pub fn dim(&self) -> usize {
        match self {
            OpRef::Monomial(m) => m.dim(),
            OpRef::TwoBand(t) => t.dim(),
        }
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        match self {
            OpRef::Monomial(m) => SparseVec::from_entries(
                v.entries
                    .iter()
                    .map(|&(i, val)| (m.target(i), m.phase(i) * val))
                    .collect(),
            ),
            OpRef::TwoBand(t) => {
                let mut out = Vec::with_capacity(2 * v.entries.len());
                for &(i, val) in &v.entries {
                    out.push((i, t.id_coeff() * val));
                    out.push((t.monomial().target(i), t.mono_coeff() * t.monomial().phase(i) * val));
                }
                SparseVec::from_entries(out)
            }
        }
    }
}

impl<'a> From<&'a MonomialOperator> for OpRef<'a> {
    fn from(m: &'a MonomialOperator) -> Self {
        OpRef::Monomial(m)
    }
}

impl<'a> From<&'a TwoBandOperator> for OpRef<'a> {
    fn from(t: &'a TwoBandOperator) -> Self {
        OpRef::TwoBand(t)
    }
}

/// Column `col` of the product `ops[0] · ops[1] · … · ops[last]`
/// (the rightmost factor is applied first).
pub fn product_column(ops: &[OpRef<'_>], col: usize) -> SparseVec {
    let mut v = SparseVec::unit(col);
    for op in ops.iter().rev() {
        v = op.apply_sparse(&v);
    }
    v
}

fn check_dims(ops: &[OpRef<'_>]) -> Result<usize> {
    let dim = ops
        .first()
        .map(|o| o.dim())
        .ok_or(Error::DimensionMismatch {
            left: 0,
            right: 0,
            context: "empty operator product",
        })?;
    for op in ops {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: op.dim(),
                context: "operator product dims",
            });
        }
    }
    Ok(dim)
}

/// Max entrywise |Π lhs - Π rhs| over the full matrix, streamed column by
/// column.
pub fn max_product_diff(lhs: &[OpRef<'_>], rhs: &[OpRef<'_>]) -> Result<ErrorStat> {
    let dim = check_dims(lhs)?;
    let rdim = check_dims(rhs)?;
    if dim != rdim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: rdim,
            context: "product comparison dims",
        });
    }
    let mut stat = ErrorStat::zero();
    for col in 0..dim {
        let l = product_column(lhs, col);
        let r = product_column(rhs, col);
        stat.merge(l.max_abs_diff(&r, col));
    }
    Ok(stat)
}

/// Max entrywise |Π ops - 1| over the full matrix.
pub fn max_product_diff_identity(ops: &[OpRef<'_>]) -> Result<ErrorStat> {
    let dim = check_dims(ops)?;
    let mut stat = ErrorStat::zero();
    for col in 0..dim {
        let l = product_column(ops, col);
        let r = SparseVec::unit(col);
        stat.merge(l.max_abs_diff(&r, col));
    }
    Ok(stat)
}

/// Materialize the product as a dense matrix (below the cap), column by column.
pub fn product_to_dense(ops: &[OpRef<'_>], cap: usize) -> Result<DenseMatrix> {
    let dim = check_dims(ops)?;
    if dim > cap {
        return Err(Error::DenseCapExceeded { dim, cap });
    }
    let mut out = DenseMatrix::zeros(dim, dim);
    for col in 0..dim {
        for &(row, val) in product_column(ops, col).entries() {
            out.set(row, col, out.get(row, col) + val);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense::DEFAULT_DENSE_CAP;

    #[test]
    fn streamed_product_matches_dense_product() {
        let m8 = MonomialOperator::signed_reversal(8);
        let b = TwoBandOperator::bell_from(m8.clone());
        let binv = TwoBandOperator::bell_inverse_from(m8.clone());

        let ops = [OpRef::from(&b), OpRef::from(&m8), OpRef::from(&binv)];
        let streamed = product_to_dense(&ops, DEFAULT_DENSE_CAP).unwrap();

        let dense = b
            .to_dense()
            .unwrap()
            .matmul(&m8.to_dense().unwrap())
            .matmul(&binv.to_dense().unwrap());
        assert!(streamed.max_abs_diff(&dense).unwrap().max_error <= 1e-15);
    }

    #[test]
    fn product_diff_of_equal_products_is_zero() {
        let m8 = MonomialOperator::signed_reversal(8);
        let b = TwoBandOperator::bell_from(m8.clone());
        let stat = max_product_diff(
            &[OpRef::from(&b), OpRef::from(&m8)],
            &[OpRef::from(&b), OpRef::from(&m8)],
        )
        .unwrap();
        assert_eq!(stat.max_error, 0.0);
    }

    #[test]
    fn inverse_pair_streams_to_identity() {
        let m8 = MonomialOperator::signed_reversal(8);
        let b = TwoBandOperator::bell_from(m8.clone());
        let binv = TwoBandOperator::bell_inverse_from(m8);
        let stat = max_product_diff_identity(&[OpRef::from(&b), OpRef::from(&binv)]).unwrap();
        assert!(stat.max_error <= 1e-15);
    }
}
