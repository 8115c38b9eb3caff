//! Acceptance suite: every shipped guarantee, one line of output each.
//!
//! Runs without the default test harness so it can print exactly one
//! `criterion NN name ... PASS/FAIL (detail)` line per criterion and exit
//! nonzero if any fail. Quantitative speedup criteria run first-party
//! benchmarks at reduced repetition counts; property criteria sweep
//! randomized inputs against brute-force oracles.

use std::panic::{catch_unwind, AssertUnwindSafe};

use axb::generators::{gen_banded, gen_dense, gen_lower_tri, gen_sympd};
use axb::kernels::{
    band_factor, band_rcond, cholesky_factor, cholesky_rcond, lu_factor, lu_rcond, pack_band,
    svd, tri_rcond,
};
use axb::{
    classify, machine_epsilon, norm1, read_matrix, solve, solve_general, write_matrix,
    DenseMatrix, ForcedMethod, Method, SolveError, SolverConfig, StructureClass, Triangle,
};
use axb_oracles as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use axb_cli::bench::{self, gen_system, run_bench, BenchSpec, MatrixKind};

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Result<String, String>)> = vec![
        (1, "banded-speedup", c01_banded_speedup),
        (2, "banded-scaling-trend", c02_banded_scaling_trend),
        (3, "triangular-speedup", c03_triangular_speedup),
        (4, "sympd-speedup", c04_sympd_speedup),
        (5, "dense-overhead", c05_dense_overhead),
        (6, "oracle-equivalence", c06_oracle_equivalence),
        (7, "residual-bound", c07_residual_bound),
        (8, "detector-oracle-agreement", c08_detector_oracle_agreement),
        (9, "sympd-screen-acceptance", c09_sympd_screen_acceptance),
        (10, "rcond-brackets", c10_rcond_brackets),
        (11, "fallback-gate", c11_fallback_gate),
        (12, "svd-contracts", c12_svd_contracts),
        (13, "io-round-trip", c13_io_round_trip),
    ];
    let mut failures = 0usize;
    for (num, name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg.replace('\n', "; "))
        });
        match result {
            Ok(detail) => println!("criterion {num:02} {name} ... PASS ({detail})"),
            Err(detail) => {
                println!("criterion {num:02} {name} ... FAIL ({detail})");
                failures += 1;
            }
        }
    }
    if failures > 0 {
        println!("{failures} of 13 criteria failed");
        std::process::exit(1);
    }
    println!("all 13 criteria passed");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(r: &mut ChaCha8Rng) -> f64 {
    r.gen::<f64>() - 0.5
}

fn column(values: Vec<f64>) -> DenseMatrix {
    let n = values.len();
    DenseMatrix::from_column_major(n, 1, values)
}

fn random_vec(n: usize, r: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| uniform(r)).collect()
}

fn bench_once(kind: MatrixKind, sizes: Vec<usize>, reps: u64) -> Vec<bench::BenchRow> {
    run_bench(&BenchSpec { kind, sizes, reps, seed: 42 }).expect("benchmark spec is valid")
}

// --- quantitative speedup criteria ------------------------------------

fn c01_banded_speedup() -> Result<String, String> {
    let rows = bench_once(MatrixKind::Banded5, vec![500], 100);
    let red = rows[0].reduction_pct;
    if red >= 70.0 {
        Ok(format!("reduction {red:.2}% >= 70% at n = 500"))
    } else {
        Err(format!("reduction {red:.2}% < 70% at n = 500"))
    }
}

fn c02_banded_scaling_trend() -> Result<String, String> {
    let rows = bench_once(MatrixKind::Banded5, vec![100, 1000], 20);
    let (small, large) = (rows[0].reduction_pct, rows[1].reduction_pct);
    if large >= small && large >= 80.0 {
        Ok(format!("reduction grows {small:.2}% -> {large:.2}% and exceeds 80%"))
    } else {
        Err(format!("reduction {small:.2}% at n = 100 vs {large:.2}% at n = 1000"))
    }
}

fn c03_triangular_speedup() -> Result<String, String> {
    let rows = bench_once(MatrixKind::LowerTri, vec![500], 100);
    let red = rows[0].reduction_pct;
    if red >= 60.0 {
        Ok(format!("reduction {red:.2}% >= 60% at n = 500"))
    } else {
        Err(format!("reduction {red:.2}% < 60% at n = 500"))
    }
}

fn c04_sympd_speedup() -> Result<String, String> {
    let rows = bench_once(MatrixKind::Sympd, vec![500], 100);
    let red = rows[0].reduction_pct;
    if red >= 10.0 {
        Ok(format!("reduction {red:.2}% >= 10% at n = 500"))
    } else {
        Err(format!("reduction {red:.2}% < 10% at n = 500"))
    }
}

fn c05_dense_overhead() -> Result<String, String> {
    let rows = bench_once(MatrixKind::Dense, vec![500], 100);
    let red = rows[0].reduction_pct;
    if red.abs() <= 5.0 {
        Ok(format!("|reduction| = {:.3}% <= 5% at n = 500", red.abs()))
    } else {
        Err(format!("|reduction| = {:.3}% > 5% at n = 500", red.abs()))
    }
}

// --- property criteria -------------------------------------------------

/// Small random matrix of one structure family, for the oracle sweeps.
fn family_matrix(family: &str, n: usize, r: &mut ChaCha8Rng) -> DenseMatrix {
    match family {
        "banded" => {
            let kl = r.gen_range(0..n);
            let ku = r.gen_range(0..n);
            let mut a = DenseMatrix::zeros(n, n);
            for j in 0..n {
                for i in 0..n {
                    if i <= j + kl && j <= i + ku {
                        a[(i, j)] = uniform(r);
                    }
                }
                a[(j, j)] += 1.0;
            }
            a
        }
        "tri-lower" => gen_lower_tri(n, r),
        "tri-upper" => gen_lower_tri(n, r).transpose(),
        "sympd" => gen_sympd(n, r),
        "dense" => gen_dense(n.max(2), r),
        other => panic!("unknown family {other}"),
    }
}

fn rel_err_1(x: &[f64], reference: &[f64]) -> f64 {
    let diff: f64 = x.iter().zip(reference).map(|(a, b)| (a - b).abs()).sum();
    let base: f64 = reference.iter().map(|v| v.abs()).sum();
    if base == 0.0 {
        diff
    } else {
        diff / base
    }
}

/// Every solve path must match the explicit-inverse oracle on 1000
/// well-conditioned systems per structure family at n <= 8. Detection
/// picks its own path; a forced method pins each kernel (band density
/// never clears the cut at n <= 8, so the banded kernel needs forcing),
/// and the SVD route is forced on top of the dense family.
fn c06_oracle_equivalence() -> Result<String, String> {
    let families: [(&str, Option<ForcedMethod>); 5] = [
        ("banded", Some(ForcedMethod::Banded)),
        ("tri-lower", Some(ForcedMethod::TriangularLower)),
        ("tri-upper", Some(ForcedMethod::TriangularUpper)),
        ("sympd", Some(ForcedMethod::Cholesky)),
        ("dense", Some(ForcedMethod::Svd)),
    ];
    let mut worst = 0.0f64;
    let mut tested = 0usize;
    for (family, forced) in families {
        let mut survivors = 0usize;
        for seed in 0..1000u64 {
            let mut r = rng(0xc6_0000 + seed);
            let n = 1 + (seed as usize % 8);
            let a = family_matrix(family, n, &mut r);
            let n = a.n_rows();
            if oracle::exact_rcond(n, a.data()) < 1e-6 {
                continue;
            }
            survivors += 1;
            let b = random_vec(n, &mut r);
            let want = oracle::solve_via_inverse(n, a.data(), &b)
                .ok_or_else(|| format!("{family}: oracle failed despite rcond >= 1e-6"))?;

            let mut configs = vec![SolverConfig::default()];
            if let Some(method) = forced {
                let mut forced_config = SolverConfig::default();
                forced_config.force_method = Some(method);
                configs.push(forced_config);
            }
            for config in &configs {
                let out = solve(&a, &column(b.clone()), config)
                    .map_err(|e| format!("{family}: solve failed at seed {seed}: {e}"))?;
                let err = rel_err_1(out.x.data(), &want);
                worst = worst.max(err);
                if err > 1e-10 {
                    return Err(format!(
                        "{family}: relative error {err:.3e} > 1e-10 at n = {n}, seed {seed} via {}",
                        out.report.method_used
                    ));
                }
                tested += 1;
            }
        }
        if survivors < 800 {
            return Err(format!("{family}: only {survivors}/1000 systems cleared the rcond filter"));
        }
    }
    Ok(format!("{tested} solves within 1e-10 of the explicit inverse; worst {worst:.2e}"))
}

/// Scaled residual <= 100 n eps on every benchmark-generated system,
/// through both solvers.
fn c07_residual_bound() -> Result<String, String> {
    let kinds = [MatrixKind::Banded5, MatrixKind::LowerTri, MatrixKind::Sympd, MatrixKind::Dense];
    let config = SolverConfig::default();
    let mut worst_ratio = 0.0f64;
    let mut count = 0usize;
    for kind in kinds {
        for &n in &[10usize, 50, 100] {
            let bound = 100.0 * n as f64 * machine_epsilon();
            for rep in 0..40u64 {
                let (a, b) = gen_system(kind, n, 1234, rep);
                for out in [
                    solve(&a, &b, &config).map_err(|e| format!("{e}"))?,
                    solve_general(&a, &b, &config).map_err(|e| format!("{e}"))?,
                ] {
                    let ratio = out.report.relative_residual / bound;
                    worst_ratio = worst_ratio.max(ratio);
                    if out.report.relative_residual > bound {
                        return Err(format!(
                            "residual {:.3e} > 100 n eps = {bound:.3e} for {} at n = {n}, rep {rep}",
                            out.report.relative_residual,
                            kind.name()
                        ));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} systems under 100 n eps; worst at {:.1}% of the bound", worst_ratio * 100.0))
}

/// Production classification agrees with the full-scan reference on 1000
/// random matrices per structure class.
fn c08_detector_oracle_agreement() -> Result<String, String> {
    let config = SolverConfig::default();
    let classes = ["banded", "lower", "upper", "sympd", "general"];
    let mut checked = 0usize;
    for (c, class) in classes.iter().enumerate() {
        for seed in 0..1000u64 {
            let mut r = rng(0xc8_0000 + 4096 * c as u64 + seed);
            let n = 1 + (seed as usize % 64);
            let a = match *class {
                "banded" => {
                    // Narrow random band, sparsified, so draws often clear
                    // the density cut; those that do not are still compared.
                    let width = r.gen_range(0..3.min(n));
                    let mut a = DenseMatrix::zeros(n, n);
                    for j in 0..n {
                        for i in 0..n {
                            if i.abs_diff(j) <= width && r.gen::<f64>() < 0.85 {
                                a[(i, j)] = uniform(&mut r);
                            }
                        }
                    }
                    a
                }
                "lower" => gen_lower_tri(n, &mut r),
                "upper" => gen_lower_tri(n, &mut r).transpose(),
                "sympd" => {
                    let mut a = gen_sympd(n, &mut r);
                    // Sometimes nudge one mirror pair around the tolerance
                    // to probe the boundary.
                    if n >= 2 && seed % 3 == 0 {
                        let i = r.gen_range(1..n);
                        let j = r.gen_range(0..i);
                        let scale = [0.0, 0.5, 1.0, 2.0, 1e5][r.gen_range(0..5)];
                        a[(i, j)] += scale * 100.0 * machine_epsilon();
                    }
                    a
                }
                _ => gen_dense(n.max(2), &mut r),
            };
            let n = a.n_rows();
            let ours = classify(&a, &config);
            let reference = oracle::classify_reference(
                n,
                a.data(),
                config.band_density_limit,
                config.sympd_tol_multiplier * machine_epsilon(),
            );
            let agree = matches!(
                (ours, reference),
                (StructureClass::LowerTriangular, oracle::RefClass::Lower)
                    | (StructureClass::UpperTriangular, oracle::RefClass::Upper)
                    | (StructureClass::LikelySympd, oracle::RefClass::Sympd)
                    | (StructureClass::General, oracle::RefClass::General)
            ) || matches!(
                (ours, reference),
                (
                    StructureClass::Banded { kl, ku },
                    oracle::RefClass::Banded { kl: rkl, ku: rku }
                ) if kl == rkl && ku == rku
            );
            if !agree {
                return Err(format!(
                    "{class}: {ours:?} vs reference {reference:?} at n = {n}, seed {seed}"
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} classifications, zero disagreements"))
}

fn c09_sympd_screen_acceptance() -> Result<String, String> {
    let mut accepted = 0usize;
    for &(n, seeds) in &[(5usize, 400u64), (50, 400), (200, 300)] {
        for seed in 0..seeds {
            let a = gen_sympd(n, &mut rng(0xc9_0000 + 1000 * n as u64 + seed));
            if !axb::likely_sympd(&a, 100.0) {
                return Err(format!("false rejection at n = {n}, seed {seed}"));
            }
            accepted += 1;
        }
    }
    if accepted < 1000 {
        return Err(format!("only {accepted} draws tested, need >= 1000"));
    }
    Ok(format!("{accepted} generated matrices accepted, zero false rejections"))
}

/// Estimated rcond is exact on diagonal matrices and lands in
/// [true, 10 x true] on random ones (the lower edge read with a hair of
/// relative slack, since both sides are separately rounded computations).
fn c10_rcond_brackets() -> Result<String, String> {
    // Diagonal exactness, all four kernels; even powers of two keep every
    // intermediate step exact, including the Cholesky square root.
    let mut r = rng(0xc10);
    for n in [1usize, 2, 7, 16, 33] {
        let mut a = DenseMatrix::zeros(n, n);
        for j in 0..n {
            a[(j, j)] = (2.0f64).powi(2 * r.gen_range(-10i32..10));
        }
        let truth = oracle::exact_rcond(n, a.data());
        let estimates = [
            ("lu", lu_rcond(&lu_factor(&a).unwrap())),
            ("cholesky", cholesky_rcond(&cholesky_factor(&a).unwrap())),
            ("triangular", tri_rcond(&a, Triangle::Lower)),
            ("banded", band_rcond(&band_factor(pack_band(&a, 0, 0)).unwrap())),
        ];
        for (kernel, est) in estimates {
            if est.to_bits() != truth.to_bits() {
                return Err(format!(
                    "{kernel}: diagonal estimate {est:.17e} != exact {truth:.17e} at n = {n}"
                ));
            }
        }
    }

    // Random bracket sweep.
    let mut checked = 0usize;
    let mut worst_factor = 1.0f64;
    for seed in 0..250u64 {
        let mut r = rng(0xc10_000 + seed);
        let n = 2 + (seed as usize % 63);
        let cases: [(&str, DenseMatrix, f64); 4] = {
            let dense = gen_dense(n, &mut r);
            let spd = gen_sympd(n, &mut r);
            let tri = gen_lower_tri(n, &mut r);
            let band = gen_banded(n, 3.min(2 * n - 1), &mut r);
            let lu_est = lu_rcond(&lu_factor(&dense).unwrap());
            let chol_est = cholesky_rcond(&cholesky_factor(&spd).unwrap());
            let tri_est = tri_rcond(&tri, Triangle::Lower);
            let band_est = {
                let half = 3.min(2 * n - 1) / 2;
                band_rcond(&band_factor(pack_band(&band, half, half)).unwrap())
            };
            [
                ("lu", dense, lu_est),
                ("cholesky", spd, chol_est),
                ("triangular", tri, tri_est),
                ("banded", band, band_est),
            ]
        };
        for (kernel, a, est) in cases {
            let truth = oracle::exact_rcond(n, a.data());
            if est < truth * (1.0 - 1e-9) || est > 10.0 * truth {
                return Err(format!(
                    "{kernel}: estimate {est:.6e} outside [true, 10 x true] = [{truth:.6e}, {:.6e}] at n = {n}",
                    10.0 * truth
                ));
            }
            worst_factor = worst_factor.max(truth / est.max(f64::MIN_POSITIVE));
            checked += 1;
        }
    }
    Ok(format!("diagonal estimates bit-exact; {checked} random estimates within [true, 10 x true]"))
}

fn c11_fallback_gate() -> Result<String, String> {
    let a = DenseMatrix::from_rows(2, 2, &[1.0, 0.0, 0.0, 1e-17]);
    let b = DenseMatrix::from_rows(2, 1, &[1.0, 1.0]);

    let out = solve(&a, &b, &SolverConfig::default()).map_err(|e| format!("{e}"))?;
    if out.report.method_used != Method::SvdFallback || !out.report.fallback_taken {
        return Err(format!("expected the SVD fallback, got {}", out.report.method_used));
    }

    let mut denied = SolverConfig::default();
    denied.allow_fallback = false;
    match solve(&a, &b, &denied) {
        Err(SolveError::PoorlyConditioned { rcond }) if rcond < 0.5 * machine_epsilon() => {}
        other => return Err(format!("expected PoorlyConditioned, got {other:?}")),
    }

    let a = DenseMatrix::from_rows(2, 2, &[1.0, 2.0, 2.0, 4.0]);
    let b = DenseMatrix::from_rows(2, 1, &[3.0, 6.0]);
    let out = solve(&a, &b, &SolverConfig::default()).map_err(|e| format!("{e}"))?;
    let err = (out.x[(0, 0)] - 0.6).abs().max((out.x[(1, 0)] - 1.2).abs());
    if err > 1e-12 {
        return Err(format!("minimum-norm answer off by {err:.3e} (> 1e-12)"));
    }
    if out.report.effective_rank != Some(1) {
        return Err(format!("expected effective rank 1, got {:?}", out.report.effective_rank));
    }
    Ok(format!(
        "gate reroutes and rejects as configured; minimum-norm answer within {err:.1e}"
    ))
}

fn c12_svd_contracts() -> Result<String, String> {
    let mut r = rng(0xc12);
    let mut worst = 0.0f64;
    for trial in 0..500u64 {
        let m = 1 + r.gen_range(0..100usize);
        let n = 1 + r.gen_range(0..60usize);
        let a = DenseMatrix::from_fn(m, n, |_, _| uniform(&mut r));
        let f = svd(&a).map_err(|e| format!("svd failed on {m}x{n} at trial {trial}: {e}"))?;
        let k = m.min(n);
        let tol = 10.0 * m.max(n) as f64 * machine_epsilon();
        let s = f.singular_values();
        for p in 0..k {
            if s[p] < 0.0 || (p + 1 < k && s[p] < s[p + 1]) {
                return Err(format!("singular values not sorted non-negative on {m}x{n}"));
            }
            for q in 0..k {
                let want = if p == q { 1.0 } else { 0.0 };
                let uu: f64 =
                    f.u().column(p).iter().zip(f.u().column(q)).map(|(x, y)| x * y).sum();
                let vv: f64 =
                    f.v().column(p).iter().zip(f.v().column(q)).map(|(x, y)| x * y).sum();
                if (uu - want).abs() > tol || (vv - want).abs() > tol {
                    return Err(format!("factors lost orthonormality on {m}x{n} at trial {trial}"));
                }
            }
        }
        // Reconstruction in the 1-norm.
        let mut diff_norm = 0.0f64;
        for j in 0..n {
            let mut col_sum = 0.0;
            for i in 0..m {
                let prod: f64 = (0..k).map(|p| f.u()[(i, p)] * s[p] * f.v()[(j, p)]).sum();
                col_sum += (prod - a[(i, j)]).abs();
            }
            diff_norm = diff_norm.max(col_sum);
        }
        let bound = tol * norm1(&a);
        worst = worst.max(diff_norm / bound);
        if diff_norm > bound {
            return Err(format!(
                "reconstruction error {diff_norm:.3e} > {bound:.3e} on {m}x{n} at trial {trial}"
            ));
        }
    }
    Ok(format!("500 decompositions orthonormal and reconstructive; worst at {:.1}% of bound", worst * 100.0))
}

fn c13_io_round_trip() -> Result<String, String> {
    let dir = std::env::temp_dir();
    let mut r = rng(0xc13);
    let mut values_checked = 0usize;
    for trial in 0..500u64 {
        let rows = 1 + r.gen_range(0..12usize);
        let cols = 1 + r.gen_range(0..12usize);
        // Full-bit-pattern doubles, filtered to finite, cover subnormals,
        // huge exponents, and awkward mantissas.
        let a = DenseMatrix::from_fn(rows, cols, |_, _| loop {
            let v = f64::from_bits(r.gen::<u64>());
            if v.is_finite() {
                break v;
            }
        });
        let path = dir.join(format!("axb-accept-io-{}-{trial}.mtx", std::process::id()));
        write_matrix(&path, &a).map_err(|e| format!("write failed at trial {trial}: {e}"))?;
        let back = read_matrix(&path).map_err(|e| format!("read failed at trial {trial}: {e}"))?;
        std::fs::remove_file(&path).ok();
        if back.n_rows() != rows || back.n_cols() != cols {
            return Err(format!("shape changed at trial {trial}"));
        }
        for (x, y) in a.data().iter().zip(back.data()) {
            if x.to_bits() != y.to_bits() {
                return Err(format!("{x:.17e} did not round trip at trial {trial}"));
            }
            values_checked += 1;
        }
    }
    Ok(format!("500 matrices ({values_checked} values) round-tripped bit-exact"))
}
