//! Factorization and solve kernels: one module per matrix structure, plus
//! the shared condition estimator.

mod condest;

pub mod banded;
pub mod cholesky;
pub mod lu;
pub mod svd;
pub mod triangular;

pub use banded::{band_factor, band_rcond, band_solve, pack_band, BandFactor, BandedStorage};
pub use cholesky::{cholesky_factor, cholesky_rcond, cholesky_solve, CholFactor};
pub use lu::{lu_factor, lu_rcond, lu_solve, LuFactor};
pub use svd::{lsq_min_norm, svd, SvdFactor};
pub use triangular::{tri_rcond, tri_solve};
