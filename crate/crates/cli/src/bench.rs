//! Benchmark harness comparing the adaptive solver against the always-LU
//! baseline on randomly generated structured systems.
//!
//! Matrix generation is a pure function of (seed, kind, size, rep), so two
//! runs of the same spec solve element-identical systems; only the measured
//! times differ. Both solvers run on the same system each rep, the baseline
//! first, timed with a monotonic clock, and every answer is checked against
//! the residual bound before its timing counts — a wrong answer panics
//! rather than biasing the table.

use std::time::Instant;

use axb::generators::{gen_banded, gen_dense, gen_lower_tri, gen_sympd};
use axb::{machine_epsilon, solve, solve_general, DenseMatrix, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Structure family to benchmark.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    /// Banded with five diagonals (`kl = ku = 2`).
    Banded5,
    /// Lower triangular.
    LowerTri,
    /// Symmetric positive definite.
    Sympd,
    /// Dense with no special structure.
    Dense,
}

impl MatrixKind {
    pub const NAMES: [(&'static str, MatrixKind); 4] = [
        ("banded", MatrixKind::Banded5),
        ("tri", MatrixKind::LowerTri),
        ("sympd", MatrixKind::Sympd),
        ("dense", MatrixKind::Dense),
    ];

    pub fn from_name(name: &str) -> Option<MatrixKind> {
        Self::NAMES.iter().find(|(n, _)| *n == name).map(|&(_, k)| k)
    }

    pub fn name(self) -> &'static str {
        Self::NAMES
            .iter()
            .find(|&&(_, k)| k == self)
            .map(|&(n, _)| n)
            .expect("every kind is named")
    }

    fn tag(self) -> u64 {
        match self {
            MatrixKind::Banded5 => 1,
            MatrixKind::LowerTri => 2,
            MatrixKind::Sympd => 3,
            MatrixKind::Dense => 4,
        }
    }

    /// Smallest order the family's generator accepts.
    fn min_size(self) -> usize {
        match self {
            MatrixKind::Banded5 => 3, // five diagonals need 2n-1 >= 5
            MatrixKind::Dense => 2,
            _ => 1,
        }
    }
}

/// One benchmark request: which family, which orders, how many repetitions.
#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub kind: MatrixKind,
    pub sizes: Vec<usize>,
    pub reps: u64,
    pub seed: u64,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.sizes.is_empty() {
            return Err("at least one size is required".into());
        }
        if self.reps == 0 {
            return Err("at least one repetition is required".into());
        }
        let min = self.kind.min_size();
        if let Some(&bad) = self.sizes.iter().find(|&&n| n < min) {
            return Err(format!(
                "size {bad} is too small for '{}' systems (minimum {min})",
                self.kind.name()
            ));
        }
        Ok(())
    }
}

/// Mean timings for one matrix order.
#[derive(Clone, Copy, Debug)]
pub struct BenchRow {
    pub size: usize,
    pub mean_standard_s: f64,
    pub mean_adaptive_s: f64,
    pub reduction_pct: f64,
}

/// Fresh, reproducible random stream for one (seed, kind, size, rep) cell.
fn rep_rng(seed: u64, kind: MatrixKind, size: usize, rep: u64) -> ChaCha8Rng {
    let mut s = [0u8; 32];
    s[0..8].copy_from_slice(&seed.to_le_bytes());
    s[8..16].copy_from_slice(&kind.tag().to_le_bytes());
    s[16..24].copy_from_slice(&(size as u64).to_le_bytes());
    s[24..32].copy_from_slice(&rep.to_le_bytes());
    ChaCha8Rng::from_seed(s)
}

/// The system solved at one benchmark cell: a structured matrix and a
/// uniform-random right-hand side.
pub fn gen_system(kind: MatrixKind, n: usize, seed: u64, rep: u64) -> (DenseMatrix, DenseMatrix) {
    let mut rng = rep_rng(seed, kind, n, rep);
    let a = match kind {
        MatrixKind::Banded5 => gen_banded(n, 5, &mut rng),
        MatrixKind::LowerTri => gen_lower_tri(n, &mut rng),
        MatrixKind::Sympd => gen_sympd(n, &mut rng),
        MatrixKind::Dense => gen_dense(n, &mut rng),
    };
    let b = DenseMatrix::from_fn(n, 1, |_, _| rng.gen::<f64>());
    (a, b)
}

/// Runs the spec: for each size, one untimed warm-up repetition, then
/// `reps` timed repetitions of baseline and adaptive solves on identical
/// systems. Reports arithmetic-mean wall-clock seconds.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>, String> {
    spec.validate()?;
    let config = SolverConfig::default();
    let mut rows = Vec::with_capacity(spec.sizes.len());
    for &n in &spec.sizes {
        let bound = 100.0 * n as f64 * machine_epsilon();
        let solve_both = |rep: u64, standard_s: &mut f64, adaptive_s: &mut f64| {
            let (a, b) = gen_system(spec.kind, n, spec.seed, rep);

            let start = Instant::now();
            let baseline = solve_general(&a, &b, &config).expect("benchmark system must solve");
            *standard_s += start.elapsed().as_secs_f64();

            let start = Instant::now();
            let adaptive = solve(&a, &b, &config).expect("benchmark system must solve");
            *adaptive_s += start.elapsed().as_secs_f64();

            assert!(
                baseline.report.relative_residual <= bound
                    && adaptive.report.relative_residual <= bound,
                "residual bound violated at n = {n}, rep {rep}: the timing would be meaningless"
            );
            assert!(
                !adaptive.report.fallback_taken,
                "generated system unexpectedly fell back at n = {n}, rep {rep}"
            );
        };

        // Warm-up: same code path, separate rng cell, timings discarded.
        let (mut sink_a, mut sink_b) = (0.0, 0.0);
        solve_both(u64::MAX, &mut sink_a, &mut sink_b);

        let mut standard_s = 0.0;
        let mut adaptive_s = 0.0;
        for rep in 0..spec.reps {
            solve_both(rep, &mut standard_s, &mut adaptive_s);
        }
        let mean_standard_s = standard_s / spec.reps as f64;
        let mean_adaptive_s = adaptive_s / spec.reps as f64;
        rows.push(BenchRow {
            size: n,
            mean_standard_s,
            mean_adaptive_s,
            reduction_pct: 100.0 * (1.0 - mean_adaptive_s / mean_standard_s),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_per_cell() {
        for kind in [MatrixKind::Banded5, MatrixKind::LowerTri, MatrixKind::Sympd, MatrixKind::Dense]
        {
            let (a1, b1) = gen_system(kind, 12, 7, 3);
            let (a2, b2) = gen_system(kind, 12, 7, 3);
            assert_eq!(a1.data(), a2.data());
            assert_eq!(b1.data(), b2.data());
            // A different rep changes the system.
            let (a3, _) = gen_system(kind, 12, 7, 4);
            assert_ne!(a1.data(), a3.data());
        }
    }

    #[test]
    fn single_repetition_degenerates_gracefully() {
        let spec = BenchSpec { kind: MatrixKind::LowerTri, sizes: vec![10], reps: 1, seed: 1 };
        let rows = run_bench(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].mean_standard_s > 0.0);
        assert!(rows[0].mean_adaptive_s > 0.0);
    }

    #[test]
    fn reduction_matches_recomputation_from_means() {
        let spec = BenchSpec { kind: MatrixKind::Dense, sizes: vec![10, 25], reps: 3, seed: 2 };
        for row in run_bench(&spec).unwrap() {
            let again = 100.0 * (1.0 - row.mean_adaptive_s / row.mean_standard_s);
            assert!((row.reduction_pct - again).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_specs_are_rejected_with_a_reason() {
        let spec = BenchSpec { kind: MatrixKind::Banded5, sizes: vec![2], reps: 5, seed: 0 };
        assert!(run_bench(&spec).unwrap_err().contains("too small"));
        let spec = BenchSpec { kind: MatrixKind::Dense, sizes: vec![], reps: 5, seed: 0 };
        assert!(run_bench(&spec).is_err());
        let spec = BenchSpec { kind: MatrixKind::Dense, sizes: vec![10], reps: 0, seed: 0 };
        assert!(run_bench(&spec).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for (name, kind) in MatrixKind::NAMES {
            assert_eq!(MatrixKind::from_name(name), Some(kind));
            assert_eq!(kind.name(), name);
        }
        assert_eq!(MatrixKind::from_name("sparse"), None);
    }

}
