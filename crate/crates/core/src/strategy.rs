//! Solve-path strategies behind one trait, registered by name.
//!
//! Each structure-specific pipeline (factor, solve, estimate conditioning)
//! lives behind [`SolveStrategy`], so the dispatcher treats every path the
//! same way: run `attempt`, gate on the returned rcond, fall back if needed.
//! The name registry maps user-facing strings to forced methods for the CLI
//! and configuration.

use crate::config::ForcedMethod;
use crate::detect::{detect_banded, BandExtent};
use crate::error::KernelError;
use crate::kernels::{
    band_factor, band_rcond, band_solve, cholesky_factor, cholesky_rcond, cholesky_solve,
    lu_factor, lu_rcond, lu_solve, pack_band, tri_rcond, tri_solve,
};
use crate::matrix::DenseMatrix;
use crate::report::{Method, StructureClass, Triangle};

/// Solution and conditioning estimate produced by one strategy.
#[derive(Clone, Debug)]
pub struct StrategySolution {
    pub x: DenseMatrix,
    pub rcond: f64,
}

/// One factor-solve-estimate pipeline for square systems.
pub trait SolveStrategy {
    /// Tag under which this path appears in a report.
    fn method(&self) -> Method;

    /// Factors `a`, solves for every column of `b`, and estimates the
    /// reciprocal condition number of `a`.
    fn attempt(&self, a: &DenseMatrix, b: &DenseMatrix) -> Result<StrategySolution, KernelError>;
}

/// Banded LU within the given extents.
pub struct BandedLuStrategy {
    pub extent: BandExtent,
}

impl SolveStrategy for BandedLuStrategy {
    fn method(&self) -> Method {
        Method::BandedLu
    }

    fn attempt(&self, a: &DenseMatrix, b: &DenseMatrix) -> Result<StrategySolution, KernelError> {
        let packed = pack_band(a, self.extent.kl, self.extent.ku);
        let f = band_factor(packed)?;
        let x = band_solve(&f, b);
        let rcond = band_rcond(&f);
        Ok(StrategySolution { x, rcond })
    }
}

/// Direct substitution on one triangle.
pub struct TriangularStrategy {
    pub side: Triangle,
}

impl SolveStrategy for TriangularStrategy {
    fn method(&self) -> Method {
        match self.side {
            Triangle::Lower => Method::TriangularLower,
            Triangle::Upper => Method::TriangularUpper,
        }
    }

    fn attempt(&self, a: &DenseMatrix, b: &DenseMatrix) -> Result<StrategySolution, KernelError> {
        let x = tri_solve(a, b, self.side)?;
        let rcond = tri_rcond(a, self.side);
        Ok(StrategySolution { x, rcond })
    }
}

/// Cholesky on the lower triangle.
pub struct CholeskyStrategy;

impl SolveStrategy for CholeskyStrategy {
    fn method(&self) -> Method {
        Method::CholeskySympd
    }

    fn attempt(&self, a: &DenseMatrix, b: &DenseMatrix) -> Result<StrategySolution, KernelError> {
        let f = cholesky_factor(a)?;
        let x = cholesky_solve(&f, b);
        let rcond = cholesky_rcond(&f);
        Ok(StrategySolution { x, rcond })
    }
}

/// Partial-pivoting LU; the baseline every square system can take.
pub struct GeneralLuStrategy;

impl SolveStrategy for GeneralLuStrategy {
    fn method(&self) -> Method {
        Method::GeneralLu
    }

    fn attempt(&self, a: &DenseMatrix, b: &DenseMatrix) -> Result<StrategySolution, KernelError> {
        let f = lu_factor(a)?;
        let x = lu_solve(&f, b);
        let rcond = lu_rcond(&f);
        Ok(StrategySolution { x, rcond })
    }
}

/// Strategy matching a detection verdict.
pub fn strategy_for(class: StructureClass) -> Box<dyn SolveStrategy> {
    match class {
        StructureClass::Banded { kl, ku } => {
            Box::new(BandedLuStrategy { extent: BandExtent { kl, ku } })
        }
        StructureClass::LowerTriangular => Box::new(TriangularStrategy { side: Triangle::Lower }),
        StructureClass::UpperTriangular => Box::new(TriangularStrategy { side: Triangle::Upper }),
        StructureClass::LikelySympd => Box::new(CholeskyStrategy),
        StructureClass::General => Box::new(GeneralLuStrategy),
    }
}

/// Strategy for a forced method, or `None` when the forced method is the SVD
/// least-squares route (which the dispatcher runs directly). Forcing the
/// banded path scans for the tightest band with the density limit disabled.
pub fn forced_strategy(method: ForcedMethod, a: &DenseMatrix) -> Option<Box<dyn SolveStrategy>> {
    match method {
        ForcedMethod::Banded => {
            let extent = detect_banded(a, 1.0).expect("a full-density scan always finds a band");
            Some(Box::new(BandedLuStrategy { extent }))
        }
        ForcedMethod::TriangularLower => Some(Box::new(TriangularStrategy { side: Triangle::Lower })),
        ForcedMethod::TriangularUpper => Some(Box::new(TriangularStrategy { side: Triangle::Upper })),
        ForcedMethod::Cholesky => Some(Box::new(CholeskyStrategy)),
        ForcedMethod::GeneralLu => Some(Box::new(GeneralLuStrategy)),
        ForcedMethod::Svd => None,
    }
}

/// Name registry for the forced methods, as accepted on the command line.
pub const FORCE_NAMES: [(&str, ForcedMethod); 6] = [
    ("banded", ForcedMethod::Banded),
    ("tri-lower", ForcedMethod::TriangularLower),
    ("tri-upper", ForcedMethod::TriangularUpper),
    ("cholesky", ForcedMethod::Cholesky),
    ("lu", ForcedMethod::GeneralLu),
    ("svd", ForcedMethod::Svd),
];

impl ForcedMethod {
    /// Looks a method up by its registered name.
    pub fn from_name(name: &str) -> Option<ForcedMethod> {
        FORCE_NAMES.iter().find(|(n, _)| *n == name).map(|&(_, m)| m)
    }

    /// The registered name of this method.
    pub fn name(self) -> &'static str {
        FORCE_NAMES
            .iter()
            .find(|&&(_, m)| m == self)
            .map(|&(n, _)| n)
            .expect("every method is registered")
    }
}
