//! Complex dense matrices, Kronecker products, and exact monomial
//! (signed-permutation-with-phase) operators with fast apply/compose.

pub mod columns;
pub mod dense;
pub mod io;
pub mod monomial;
pub mod state;

pub use columns::{max_product_diff, max_product_diff_identity, product_to_dense, OpRef, SparseVec};
pub use dense::{
    i_sigma_y, kron, kron_with_cap, sigma_x, sigma_y, sigma_z, DenseMatrix, ErrorStat,
    DEFAULT_DENSE_CAP,
};
pub use monomial::{MonomialOperator, TwoBandOperator};
pub use state::StateVector;

/// √-1.
pub const IMAGINARY_UNIT: num_complex::Complex64 = num_complex::Complex64::new(0.0, 1.0);
