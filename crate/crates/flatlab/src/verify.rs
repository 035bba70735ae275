//! Executable checks for the quantitative statements about the Rudin-Shapiro,
//! truncated Rudin-Shapiro, Fekete and Singer families, aggregated by
//! [`run_all`] into a deterministic suite of [`VerdictReport`]s.
//!
//! Open problems (the Singer flatness question, the Newman-Byrnes conjecture)
//! only ever produce report-only verdicts; the suite never encodes a guess
//! about open mathematics as a pass/fail assertion.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlate::{self, ratio_to_f64};
use crate::error::{Error, Result};
use crate::polyfam;
use crate::report::{StatementId, VerdictReport};
use crate::seqgen;
use crate::specnorm::{self, FlatnessReport};

/// Default scales and thresholds, kept in one versioned file with provenance
/// notes (`config/default_thresholds.toml`).
pub const DEFAULT_CONFIG_TOML: &str = include_str!("../config/default_thresholds.toml");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub exact_l4: ExactL4Config,
    pub parallelogram: ParallelogramConfig,
    pub sup_bounds: SupBoundsConfig,
    pub correlations: CorrelationsConfig,
    pub truncated: TruncatedConfig,
    pub nonflat: NonflatConfig,
    pub flatness_char: FlatnessCharConfig,
    pub norm_equiv: NormEquivConfig,
    pub gauss: GaussConfig,
    pub fekete_trend: FeketeTrendConfig,
    pub fekete_structure: FeketeStructureConfig,
    pub montgomery: MontgomeryConfig,
    pub newman_byrnes: NewmanByrnesConfig,
    pub singer: SingerConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactL4Config {
    pub max_stage: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParallelogramConfig {
    pub max_stage: u32,
    pub grid_size: usize,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupBoundsConfig {
    pub rs_pair_max_stage: u32,
    pub sup_slack: f64,
    pub truncated_max_n: usize,
    pub rs_lemma_constant: f64,
    pub segment_samples: usize,
    pub segment_seed: u64,
    pub segment_max_total: usize,
    pub segment_constant: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationsConfig {
    pub prefix_lengths: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruncatedConfig {
    pub lengths: Vec<usize>,
    pub l4_slack: f64,
    pub merit_factor_max: f64,
    pub l1_delta: f64,
    pub l1_tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonflatConfig {
    pub min_stage: u32,
    pub max_stage: u32,
    pub deviation_floor: f64,
    pub mahler_deviation_floor: f64,
    pub alphas: Vec<f64>,
    pub quadrature_tolerance: f64,
    pub mahler_tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlatnessCharConfig {
    pub rs_stages: Vec<u32>,
    pub fekete_primes: Vec<u64>,
    pub alphas: Vec<f64>,
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormEquivConfig {
    pub stages: Vec<u32>,
    pub alphas: Vec<f64>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaussConfig {
    pub primes: Vec<u64>,
    pub relative_tolerance: f64,
    pub at_one_tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeketeTrendConfig {
    pub primes: Vec<u64>,
    pub threshold: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeketeStructureConfig {
    pub prime_bound: u64,
    pub littlewood_ratio_max: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MontgomeryConfig {
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NewmanByrnesConfig {
    pub max_n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingerConfig {
    pub primes: Vec<u64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        toml::from_str(DEFAULT_CONFIG_TOML).expect("embedded default config parses")
    }
}

impl VerifyConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::InvalidArgument(format!("bad config: {e}")))
    }
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

/// Eq. (2)/(5): |X_n|² + |Y_n|² = 2 at every grid point.
pub fn check_parallelogram(cfg: &ParallelogramConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::EqPara);
    report
        .input("max_stage", cfg.max_stage.to_string())
        .input("grid_size", cfg.grid_size.to_string());
    report.claimed = "||X_n|^2 + |Y_n|^2 - 2| = 0 on the circle".into();
    report.tolerance = cfg.tolerance;
    let mut worst: f64 = 0.0;
    for n in 0..=cfg.max_stage {
        let (p, q) = polyfam::rudin_shapiro_pair(n)?;
        let gx = specnorm::evaluate_on_grid(&p, cfg.grid_size, 0.0)?;
        let gy = specnorm::evaluate_on_grid(&q, cfg.grid_size, 0.0)?;
        let dev = gx
            .magnitudes
            .par_iter()
            .zip(gy.magnitudes.par_iter())
            .map(|(&x, &y)| (x * x + y * y - 2.0).abs())
            .reduce(|| 0.0, f64::max);
        worst = worst.max(dev);
    }
    report.computed("max_deviation", format!("{worst:.3e}"));
    report.passed = worst < cfg.tolerance;
    report.notes = format!("max deviation {worst:.3e} over stages 0..={}", cfg.max_stage);
    Ok(report)
}

/// Eq. (3): sup |X_n| ≤ √2; the grid maximum is a true lower bound of the sup
/// so the check is one-sided sound.
pub fn check_sup_xn(cfg: &SupBoundsConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::EqSupbound);
    report.input("max_stage", cfg.rs_pair_max_stage.to_string());
    report.claimed = "grid sup |X_n| <= sqrt(2)".into();
    report.tolerance = cfg.sup_slack;
    let bound = 2f64.sqrt() + cfg.sup_slack;
    let mut worst: f64 = 0.0;
    for n in 0..=cfg.rs_pair_max_stage {
        let (p, _) = polyfam::rudin_shapiro_pair(n)?;
        let sup = specnorm::sup_norm(&p)?;
        worst = worst.max(sup.lower);
    }
    report.computed("max_grid_sup", fmt6(worst));
    report.passed = worst <= bound;
    report.notes = format!("max grid sup {worst:.9} vs sqrt(2) = {:.9}", 2f64.sqrt());
    Ok(report)
}

/// Rudin-Shapiro's lemma: sup |R_N| ≤ 5 ‖R_N‖₂ for every N up to the
/// configured cap. Incremental evaluation over a fixed grid.
pub fn check_rs5(cfg: &SupBoundsConfig) -> Result<VerdictReport> {
    let n_max = cfg.truncated_max_n;
    let m = (4 * (n_max + 1)).next_power_of_two();
    let r = seqgen::grs_recurrence(n_max + 1)?;
    let signs: Vec<f64> = r.values().iter().map(|&v| v as f64).collect();
    let inv_norm_sq: Vec<f64> = (0..=n_max).map(|n| 1.0 / (n as f64 + 1.0)).collect();

    let chunk = 2048usize;
    let worst = (0..m / chunk)
        .into_par_iter()
        .map(|ci| {
            let mut local: f64 = 0.0;
            for j in ci * chunk..(ci + 1) * chunk {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                let z = Complex64::new(theta.cos(), theta.sin());
                let mut pow = Complex64::new(1.0, 0.0);
                let mut val = Complex64::new(0.0, 0.0);
                for (n, &s) in signs.iter().enumerate() {
                    val += pow * s;
                    pow *= z;
                    let ratio_sq = val.norm_sqr() * inv_norm_sq[n];
                    if ratio_sq > local {
                        local = ratio_sq;
                    }
                }
            }
            local
        })
        .reduce(|| 0.0, f64::max);
    let worst_ratio = worst.sqrt();

    let mut report = VerdictReport::new(StatementId::LemmaRs5);
    report
        .input("max_N", n_max.to_string())
        .input("grid_size", m.to_string());
    report.claimed = format!("sup |R_N| / sqrt(N+1) <= {}", cfg.rs_lemma_constant);
    report.computed("max_ratio", fmt6(worst_ratio));
    report.passed = worst_ratio <= cfg.rs_lemma_constant;
    report.notes = format!("max ratio {worst_ratio:.6} over N = 0..={n_max}");
    Ok(report)
}

/// Segment lemma: sup of |Σ_{n=N+1}^{N+M} r_n z^n| ≤ (2+√2)√M on a seeded
/// random sample of windows.
pub fn check_segments(cfg: &SupBoundsConfig) -> Result<VerdictReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.segment_seed);
    let mut report = VerdictReport::new(StatementId::LemmaSegmentSqrtM);
    report
        .input("samples", cfg.segment_samples.to_string())
        .input("seed", cfg.segment_seed.to_string())
        .input("max_total", cfg.segment_max_total.to_string());
    report.claimed = format!("grid sup of segment <= {} * sqrt(M)", cfg.segment_constant);
    report.tolerance = cfg.sup_slack;
    let mut worst_ratio: f64 = 0.0;
    let mut passed = true;
    for _ in 0..cfg.segment_samples {
        let m_window = rng.gen_range(1..cfg.segment_max_total);
        let n_start = rng.gen_range(0..cfg.segment_max_total - m_window);
        let seg = polyfam::rs_segment(n_start, m_window)?;
        let grid_m = (4 * (seg.degree() + 1)).next_power_of_two();
        let grid = specnorm::evaluate_on_grid(&seg, grid_m, 0.0)?;
        // Raw sup: the normalization of the segment is sqrt(M).
        let raw_sup = grid.magnitudes.iter().cloned().fold(0.0, f64::max)
            * (m_window as f64).sqrt();
        let ratio = raw_sup / (m_window as f64).sqrt();
        worst_ratio = worst_ratio.max(ratio);
        if raw_sup > cfg.segment_constant * (m_window as f64).sqrt() + cfg.sup_slack {
            passed = false;
        }
    }
    report.computed("max_ratio_to_sqrtM", fmt6(worst_ratio));
    report.passed = passed;
    report.notes = format!(
        "max sup/sqrt(M) = {worst_ratio:.4} over {} sampled windows",
        cfg.segment_samples
    );
    Ok(report)
}

/// Norm-equivalence lemma with constants c_α, C_α for both members of the
/// Rudin-Shapiro pair.
pub fn check_norm_equivalence(cfg: &NormEquivConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::LemmaNormEquiv);
    report
        .input("stages", format!("{:?}", cfg.stages))
        .input("alphas", format!("{:?}", cfg.alphas));
    report.claimed = "c_a ||P||_a <= ||P||_2 <= C_a ||P||_a for P_n and Q_n".into();
    let mut passed = true;
    let mut failures = Vec::new();
    for &n in &cfg.stages {
        let (p, q) = polyfam::rudin_shapiro_pair(n)?;
        for &alpha in &cfg.alphas {
            for poly in [&p, &q] {
                let sub = specnorm::norm_equivalence_check(poly, alpha, cfg.tolerance)?;
                if !sub.passed {
                    passed = false;
                    failures.push(format!("{} n={n} alpha={alpha}", poly.family()));
                }
            }
        }
    }
    report.passed = passed;
    report.notes = if failures.is_empty() {
        format!(
            "{} (stage, alpha) pairs checked for both P_n and Q_n",
            cfg.stages.len() * cfg.alphas.len()
        )
    } else {
        format!("failures: {}", failures.join("; "))
    };
    Ok(report)
}

/// Correlation estimates for GRS prefixes: the per-lag spectral bound
/// |ν̂_N(k)| < 2k/N + (4k/N) log₂(2N/k), and the order-2 correlation-measure
/// lower bound C₂ ≥ N/6 behind the 1/6 peak estimate.
pub fn check_ms_correlations(cfg: &CorrelationsConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::PropMsCorrelations);
    report.input("prefix_lengths", format!("{:?}", cfg.prefix_lengths));
    report.claimed =
        "|nu_hat_N(k)| < 2k/N + (4k/N)log2(2N/k), and 6*C2(N) >= N (correlation measure)".into();
    let mut passed = true;
    let mut notes = Vec::new();
    for &n in &cfg.prefix_lengths {
        let u = seqgen::grs_recurrence(n)?;
        let profile = correlate::autocorrelations(&u)?;
        let nf = n as f64;
        let mut bound_ok = true;
        for (k, &ck) in profile.c.iter().enumerate().skip(1) {
            let kf = k as f64;
            let bound = 2.0 * kf / nf + (4.0 * kf / nf) * (2.0 * nf / kf).log2();
            if (ck.abs() as f64) / nf >= bound {
                bound_ok = false;
            }
        }
        let (c2, (lag, window)) = correlate::correlation_measure_order2(u.values(), n);
        let peak_ok = 6 * c2 >= n as i64;
        let plain_peak = profile.c[1..]
            .iter()
            .map(|&c| c.abs())
            .max()
            .unwrap_or(0) as f64
            / nf;
        notes.push(format!(
            "N={n}: C2/N={:.4} at (lag {lag}, window {window}); max|nu_hat|={plain_peak:.4}",
            c2 as f64 / nf
        ));
        report.computed(&format!("c2_over_n_{n}"), fmt6(c2 as f64 / nf));
        report.computed(&format!("max_spectral_{n}"), fmt6(plain_peak));
        if !(bound_ok && peak_ok) {
            passed = false;
        }
    }
    report.passed = passed;
    report.notes = notes.join("; ");
    Ok(report)
}

/// Eq. (6): the conjugate-reciprocal transform maps P_n exactly onto Q_n.
pub fn check_conjugate_identity(max_stage: u32) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::EqConjugate);
    report.input("max_stage", max_stage.to_string());
    report.claimed = "(-1)^n z^{2^n-1} P_n(-1/z) = Q_n, coefficient-exact".into();
    for n in 0..=max_stage {
        let (p, q) = polyfam::rudin_shapiro_pair(n)?;
        let y = polyfam::conjugate_reciprocal(&p, n)?;
        if y.coefficients() != q.coefficients() {
            report.passed = false;
            report.notes = format!("mismatch at stage {n}");
            return Ok(report);
        }
    }
    report.passed = true;
    report.notes = format!("exact through stage {max_stage}");
    Ok(report)
}

/// Truncated prefixes: normalized L⁴⁴ ≥ 19/18 − slack, merit factor ≤ 18,
/// and L¹ ≤ 1 − δ.
pub fn check_truncated_rs(cfg: &TruncatedConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::Prop1918);
    report.input("lengths", format!("{:?}", cfg.lengths));
    report.claimed = format!(
        "L4^4 >= 19/18 - {}, merit factor <= {}, L1 <= 1 - {}",
        cfg.l4_slack, cfg.merit_factor_max, cfg.l1_delta
    );
    let l4_floor = 19.0 / 18.0 - cfg.l4_slack;
    let mut passed = true;
    let mut notes = Vec::new();
    for &big_n in &cfg.lengths {
        let u = seqgen::grs_recurrence(big_n + 1)?;
        let profile = correlate::autocorrelations(&u)?;
        let l4 = ratio_to_f64(profile.l4_normalized());
        let merit = profile.merit_factor.as_f64();
        let poly = polyfam::truncated_rs(big_n)?;
        let l1 = specnorm::lp_norm(&poly, 1.0, cfg.l1_tolerance)?.value;
        report.computed(&format!("l4_{big_n}"), fmt6(l4));
        report.computed(&format!("merit_{big_n}"), fmt6(merit));
        report.computed(&format!("l1_{big_n}"), fmt6(l1));
        if l4 < l4_floor || merit > cfg.merit_factor_max || l1 > 1.0 - cfg.l1_delta {
            passed = false;
            notes.push(format!("N={big_n} fails"));
        }
    }
    report.passed = passed;
    report.notes = if notes.is_empty() {
        format!("all {} prefixes within bounds", cfg.lengths.len())
    } else {
        notes.join("; ")
    };
    Ok(report)
}

fn flatness_with_fallback(
    poly: &polyfam::AnalyticPolynomial,
    alpha: f64,
    tol: f64,
) -> Result<(FlatnessReport, bool)> {
    match specnorm::flatness_deviation(poly, alpha, tol) {
        Ok(rep) => Ok((rep, true)),
        Err(Error::AccuracyNotReached { best }) => Ok((
            FlatnessReport {
                alpha,
                deviation: best.value,
                norm_half_alpha: None,
                dev_pow_alpha_l1: None,
                dev_pow_half_l2: None,
                dev_pow_half_l1: None,
                grid_size: best.grid_size,
                estimated_error: best.estimated_error,
            },
            false,
        )),
        Err(e) => Err(e),
    }
}

/// The main non-flatness result at desk scale: the exact L⁴ law keeps
/// ‖X_n‖₄⁴ ≥ 4/3 − (1/3)2⁻ⁿ, and the flatness deviations stay above
/// oracle-calibrated floors.
pub fn check_rs_nonflatness(cfg: &NonflatConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::ThmMainNonflat);
    report
        .input("stages", format!("{}..={}", cfg.min_stage, cfg.max_stage))
        .input("alphas", format!("{:?}", cfg.alphas));
    report.claimed = format!(
        "exact L4^4 >= 4/3 - (1/3)2^-n; ||X_n|-1||_a > {}; |M(X_n)-1| > {}",
        cfg.deviation_floor, cfg.mahler_deviation_floor
    );
    let mut passed = true;
    let mut notes = Vec::new();
    // (a) exact rational lower bound from the closed form.
    for n in 0..=cfg.max_stage {
        let u = seqgen::grs_recurrence(1usize << n)?;
        let l4 = correlate::exact_l4(&u)?;
        let floor = Ratio::new(4i128, 3) - Ratio::new(1i128, 3) / Ratio::from_integer(1i128 << n);
        if l4 < floor {
            passed = false;
            notes.push(format!("exact L4 floor fails at stage {n}"));
        }
    }
    // (b) oracle floors on the deviations.
    let mut min_dev = f64::INFINITY;
    let mut min_mahler_dev = f64::INFINITY;
    for n in cfg.min_stage..=cfg.max_stage {
        let poly = polyfam::rs_normalized(n)?;
        for &alpha in &cfg.alphas {
            let (rep, converged) =
                flatness_with_fallback(&poly, alpha, cfg.quadrature_tolerance)?;
            min_dev = min_dev.min(rep.deviation);
            if rep.deviation <= cfg.deviation_floor {
                passed = false;
                notes.push(format!("deviation floor fails at n={n}, alpha={alpha}"));
            }
            if !converged {
                notes.push(format!("quadrature flagged at n={n}, alpha={alpha}"));
            }
        }
        let mahler = match specnorm::mahler_measure(&poly, cfg.mahler_tolerance) {
            Ok(profile) => profile.value,
            Err(Error::AccuracyNotReached { best }) => {
                notes.push(format!("mahler quadrature flagged at n={n}"));
                best.value
            }
            Err(e) => return Err(e),
        };
        let dev0 = (mahler - 1.0).abs();
        min_mahler_dev = min_mahler_dev.min(dev0);
        if dev0 <= cfg.mahler_deviation_floor {
            passed = false;
            notes.push(format!("Mahler floor fails at n={n}"));
        }
    }
    report.computed("min_deviation", fmt6(min_dev));
    report.computed("min_mahler_deviation", fmt6(min_mahler_dev));
    report.passed = passed;
    report.notes = if notes.is_empty() {
        format!(
            "min deviation {min_dev:.4}, min Mahler deviation {min_mahler_dev:.4}"
        )
    } else {
        notes.join("; ")
    };
    Ok(report)
}

/// Characterization of L^α-flatness: the two proof inequalities
/// ‖|P|^α−1‖₁ ≤ 2‖|P|^{α/2}−1‖₂ and ‖|P|^α−1‖₁ ≥ ‖|P|^{α/2}−1‖₁.
pub fn check_flatness_characterization(cfg: &FlatnessCharConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::PropFlatnessChar);
    report
        .input("rs_stages", format!("{:?}", cfg.rs_stages))
        .input("fekete_primes", format!("{:?}", cfg.fekete_primes))
        .input("alphas", format!("{:?}", cfg.alphas));
    report.claimed =
        "|||P|^a - 1||_1 <= 2|||P|^{a/2} - 1||_2 and |||P|^a - 1||_1 >= |||P|^{a/2} - 1||_1"
            .into();
    report.tolerance = cfg.slack;
    let mut cases: Vec<(String, polyfam::AnalyticPolynomial)> = Vec::new();
    for &n in &cfg.rs_stages {
        cases.push((format!("X_{n}"), polyfam::rs_normalized(n)?));
    }
    for &p in &cfg.fekete_primes {
        cases.push((format!("Q_{p}"), polyfam::fekete(p)?));
    }
    let mut passed = true;
    let mut notes = Vec::new();
    for (label, poly) in &cases {
        for &alpha in &cfg.alphas {
            let rep = specnorm::flatness_deviation(poly, alpha, cfg.slack.min(1e-6))?;
            let a1 = rep.dev_pow_alpha_l1.unwrap_or(f64::NAN);
            let h2 = rep.dev_pow_half_l2.unwrap_or(f64::NAN);
            let h1 = rep.dev_pow_half_l1.unwrap_or(f64::NAN);
            let upper_ok = a1 <= 2.0 * h2 + cfg.slack;
            let lower_ok = a1 + cfg.slack >= h1;
            if !(upper_ok && lower_ok) {
                passed = false;
                notes.push(format!("{label} alpha={alpha} fails"));
            }
        }
    }
    report.passed = passed;
    report.notes = if notes.is_empty() {
        format!("{} cases checked", cases.len() * cfg.alphas.len())
    } else {
        notes.join("; ")
    };
    Ok(report)
}

/// Gauss formula |Q_p(ω_p^k)| = √p at nontrivial p-th roots of unity,
/// Q_p(1) = 0.
pub fn check_gauss_formula(cfg: &GaussConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::GaussFormula);
    report.input("primes", format!("{:?}", cfg.primes));
    report.claimed = "|Q_p(w^k)| = sqrt(p) for k = 1..p-1, Q_p(1) = 0".into();
    report.tolerance = cfg.relative_tolerance;
    let mut passed = true;
    let mut notes = Vec::new();
    for &p in &cfg.primes {
        let poly = polyfam::fekete(p)?;
        let normalization = poly.normalization();
        let grid = specnorm::evaluate_on_grid(&poly, p as usize, 0.0)?;
        let sqrt_p = (p as f64).sqrt();
        let at_one = grid.magnitudes[0] * normalization;
        let max_dev = grid.magnitudes[1..]
            .iter()
            .map(|&m| (m * normalization - sqrt_p).abs())
            .fold(0.0, f64::max);
        report.computed(&format!("max_dev_{p}"), format!("{max_dev:.3e}"));
        report.computed(&format!("at_one_{p}"), format!("{at_one:.3e}"));
        if max_dev >= cfg.relative_tolerance * sqrt_p || at_one >= cfg.at_one_tolerance {
            passed = false;
            notes.push(format!("p={p} fails"));
        }
    }
    report.passed = passed;
    report.notes = if notes.is_empty() {
        format!("all {} primes exact to tolerance", cfg.primes.len())
    } else {
        notes.join("; ")
    };
    Ok(report)
}

/// Exact normalized L⁴⁴ of the Fekete family approaching 5/3.
pub fn check_fekete_l4_trend(cfg: &FeketeTrendConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::HoholdtJensenTrend);
    report.input("primes", format!("{:?}", cfg.primes));
    report.claimed = format!(
        "|L4^4(Q_p / sqrt(p-1)) - 5/3| < {} at the largest prime",
        cfg.threshold
    );
    report.tolerance = cfg.threshold;
    let limit = 5.0 / 3.0;
    let mut last_dev = f64::NAN;
    for &p in &cfg.primes {
        let poly = polyfam::fekete(p)?;
        let profile = correlate::autocorrelations_of_coeffs(poly.coefficients())?;
        let l4 = ratio_to_f64(profile.l4_normalized());
        last_dev = (l4 - limit).abs();
        report.computed(&format!("l4_{p}"), fmt6(l4));
    }
    report.passed = last_dev < cfg.threshold;
    report.notes = format!(
        "deviation {last_dev:.2e} from 5/3 at p = {}",
        cfg.primes.last().copied().unwrap_or(0)
    );
    Ok(report)
}

/// Self-reciprocity: (k/p) = (-1/p)(p-k/p), i.e. Fekete coefficients are
/// palindromic over k = 1..p-1 iff p ≡ 1 (mod 4), anti-palindromic otherwise.
pub fn check_self_reciprocal(cfg: &FeketeStructureConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::SelfReciprocal);
    report.input("prime_bound", cfg.prime_bound.to_string());
    report.claimed = "coefficient palindrome matching p mod 4".into();
    let mut checked = 0usize;
    for p in (3..=cfg.prime_bound).filter(|&p| seqgen::is_prime(p)) {
        let poly = polyfam::fekete(p)?;
        let c = poly.coefficients();
        let n = p as usize;
        let sign = if p % 4 == 1 { 1i64 } else { -1 };
        for k in 1..n {
            if c[k] != sign * c[n - k] {
                report.passed = false;
                report.notes = format!("symmetry fails at p={p}, k={k}");
                return Ok(report);
            }
        }
        checked += 1;
    }
    report.passed = true;
    report.notes = format!("{checked} primes checked");
    Ok(report)
}

/// Littlewood-criterion hypothesis ratio for p ≡ 1 (mod 4): the cosine-form
/// amplitudes a_k = ±2 at odd frequencies give
/// n² Σ a² / Σ m² a² = 3(p-2)/p ≤ 4.
pub fn littlewood_ratio(p: u64) -> Result<f64> {
    if p % 4 != 1 {
        return Err(Error::InvalidArgument(format!(
            "cosine form with a_k = ±2 requires p ≡ 1 (mod 4), got {p}"
        )));
    }
    let poly = polyfam::fekete(p)?;
    let c = poly.coefficients();
    // Frequency of the k-th coefficient after centering: m = p - 2k for
    // k = 1..(p-1)/2, amplitude 2(k/p).
    let mut sum_a2: u128 = 0;
    let mut sum_m2a2: u128 = 0;
    let mut max_freq: u128 = 0;
    for k in 1..=(p as usize - 1) / 2 {
        let a = 2 * c[k];
        let m = (p as i64 - 2 * k as i64) as u128;
        sum_a2 += (a * a) as u128;
        sum_m2a2 += m * m * (a * a) as u128;
        max_freq = max_freq.max(m);
    }
    Ok((max_freq * max_freq * sum_a2) as f64 / sum_m2a2 as f64)
}

pub fn check_littlewood_ratio(cfg: &FeketeStructureConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::LittlewoodCriterionRatio);
    report.input("prime_bound", cfg.prime_bound.to_string());
    report.claimed = format!("hypothesis ratio <= {}", cfg.littlewood_ratio_max);
    let mut worst: f64 = 0.0;
    let mut checked = 0usize;
    for p in (5..=cfg.prime_bound).filter(|&p| seqgen::is_prime(p) && p % 4 == 1) {
        let ratio = littlewood_ratio(p)?;
        worst = worst.max(ratio);
        checked += 1;
    }
    report.computed("max_ratio", fmt6(worst));
    report.passed = worst <= cfg.littlewood_ratio_max;
    report.notes = format!(
        "{checked} primes p ≡ 1 (mod 4) checked; max ratio {worst:.4} (limit value 3); \
         p ≡ 3 (mod 4) skipped (no ±2 cosine form)"
    );
    Ok(report)
}

/// Montgomery's lower bound (2/π)√p log log p on the Fekete sup-norm; the
/// grid maximum is a true lower bound of the sup so the check is one-sided.
pub fn check_montgomery(cfg: &MontgomeryConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(StatementId::MontgomeryLower);
    report.input("primes", format!("{:?}", cfg.primes));
    report.claimed = "grid sup |Q_p| >= (2/pi) sqrt(p) log log p".into();
    let mut passed = true;
    let mut notes = Vec::new();
    for &p in &cfg.primes {
        if p < 17 {
            return Err(Error::InvalidArgument(format!(
                "Montgomery check requires p >= 17, got {p}"
            )));
        }
        let poly = polyfam::fekete(p)?;
        let sup = specnorm::sup_norm(&poly)?;
        let raw_sup = sup.lower * poly.normalization();
        let rhs = (2.0 / std::f64::consts::PI) * (p as f64).sqrt() * (p as f64).ln().ln();
        report.computed(&format!("sup_{p}"), fmt6(raw_sup));
        report.computed(&format!("bound_{p}"), fmt6(rhs));
        if raw_sup < rhs {
            passed = false;
            notes.push(format!("p={p} fails"));
        }
    }
    report.passed = passed;
    report.notes = if notes.is_empty() {
        format!("holds for all {} primes", cfg.primes.len())
    } else {
        notes.join("; ")
    };
    Ok(report)
}

/// Exhaustive minimum-L⁴ search over Littlewood sequences. The reproducible
/// search result is asserted against frozen golden values; the comparison
/// with the conjectured asymptotic bound 6/5 is reported without assertion
/// (finite lengths dip below it at the Barker lengths).
pub fn check_newman_byrnes(cfg: &NewmanByrnesConfig) -> Result<VerdictReport> {
    // Frozen by an independent exhaustive enumeration.
    const GOLDEN: [(usize, i128, i128); 13] = [
        (1, 1, 1),
        (2, 3, 2),
        (3, 11, 9),
        (4, 5, 4),
        (5, 29, 25),
        (6, 25, 18),
        (7, 55, 49),
        (8, 5, 4),
        (9, 35, 27),
        (10, 63, 50),
        (11, 131, 121),
        (12, 41, 36),
        (13, 181, 169),
    ];
    let mut report = VerdictReport::new(StatementId::NewmanByrnesSearch);
    report.input("max_n", cfg.max_n.to_string());
    report.claimed = "search minima match golden values; 6/5 comparison report-only".into();
    let bound = Ratio::new(6i128, 5);
    let mut passed = true;
    let mut below = Vec::new();
    for n in 1..=cfg.max_n {
        let (value, _minimizer) = correlate::littlewood_min_l4(n)?;
        report.computed(&format!("min_{n:02}"), value.to_string());
        if let Some(&(_, num, den)) = GOLDEN.iter().find(|&&(gn, _, _)| gn == n) {
            if value != Ratio::new(num, den) {
                passed = false;
            }
        }
        if value < bound {
            below.push(n.to_string());
        }
    }
    report.passed = passed;
    report.notes = format!(
        "minima below 6/5 at N = {{{}}} (informational; the conjectured bound is a liminf)",
        below.join(",")
    );
    Ok(report)
}

/// Purely exploratory metrics for the Singer polynomials; the flatness
/// question is open, so nothing is asserted.
pub fn check_singer_flatness(cfg: &SingerConfig) -> Result<VerdictReport> {
    let mut report = VerdictReport::report_only(StatementId::SingerOpen);
    report.input("primes", format!("{:?}", cfg.primes));
    report.claimed = "none (open question); metrics reported".into();
    for &p in &cfg.primes {
        let q = p * p + p + 1;
        let seq = seqgen::singer_sign_sequence(p)?;
        let positives = seq.values().iter().filter(|&&v| v == 1).count();
        let poly = polyfam::singer_poly(p)?;
        let profile = correlate::autocorrelations(&seq)?;
        let dev = specnorm::flatness_deviation(&poly, 1.0, 1e-7)?;
        let mahler = specnorm::mahler_measure(&poly, 1e-7)?;
        report.computed(
            &format!("p{p}_positive_frequency"),
            format!("{positives}/{q}"),
        );
        report.computed(
            &format!("p{p}_l4"),
            profile.l4_normalized().to_string(),
        );
        report.computed(
            &format!("p{p}_merit"),
            profile.merit_factor.to_string(),
        );
        report.computed(&format!("p{p}_dev_l1"), fmt6(dev.deviation));
        report.computed(&format!("p{p}_mahler"), fmt6(mahler.value));
        let expected_t = (p * p + 3 * p + 2) / 2;
        if positives as u64 != expected_t {
            // The sumset size identity is definitional; surface a failure.
            report.asserted = true;
            report.passed = false;
            report.notes = format!("|T| mismatch at p={p}");
            return Ok(report);
        }
    }
    report.notes = "report-only; |T| = (p^2+3p+2)/2 confirmed for all p".into();
    Ok(report)
}

/// Runs every check at the configured scales in fixed statement-id order.
/// Per-check errors become failed verdicts; the suite never aborts.
pub fn run_all(cfg: &VerifyConfig, selection: &[StatementId]) -> Vec<VerdictReport> {
    let wanted = |id: StatementId| selection.is_empty() || selection.contains(&id);
    let mut reports = Vec::new();
    let mut push = |id: StatementId, result: Result<VerdictReport>| {
        reports.push(result.unwrap_or_else(|e| VerdictReport::from_error(id, &e)));
    };

    if wanted(StatementId::EqPara) {
        push(StatementId::EqPara, check_parallelogram(&cfg.parallelogram));
    }
    if wanted(StatementId::EqSupbound) {
        push(StatementId::EqSupbound, check_sup_xn(&cfg.sup_bounds));
    }
    if wanted(StatementId::LemmaNormEquiv) {
        push(StatementId::LemmaNormEquiv, check_norm_equivalence(&cfg.norm_equiv));
    }
    if wanted(StatementId::LemmaRs5) {
        push(StatementId::LemmaRs5, check_rs5(&cfg.sup_bounds));
    }
    if wanted(StatementId::LemmaSegmentSqrtM) {
        push(StatementId::LemmaSegmentSqrtM, check_segments(&cfg.sup_bounds));
    }
    if wanted(StatementId::PropMsCorrelations) {
        push(
            StatementId::PropMsCorrelations,
            check_ms_correlations(&cfg.correlations),
        );
    }
    if wanted(StatementId::EqConjugate) {
        push(StatementId::EqConjugate, check_conjugate_identity(16));
    }
    if wanted(StatementId::ThmL4) {
        push(
            StatementId::ThmL4,
            correlate::l4_recurrence_check(cfg.exact_l4.max_stage),
        );
    }
    if wanted(StatementId::Prop1918) {
        push(StatementId::Prop1918, check_truncated_rs(&cfg.truncated));
    }
    if wanted(StatementId::ThmMainNonflat) {
        push(StatementId::ThmMainNonflat, check_rs_nonflatness(&cfg.nonflat));
    }
    if wanted(StatementId::PropFlatnessChar) {
        push(
            StatementId::PropFlatnessChar,
            check_flatness_characterization(&cfg.flatness_char),
        );
    }
    if wanted(StatementId::GaussFormula) {
        push(StatementId::GaussFormula, check_gauss_formula(&cfg.gauss));
    }
    if wanted(StatementId::HoholdtJensenTrend) {
        push(
            StatementId::HoholdtJensenTrend,
            check_fekete_l4_trend(&cfg.fekete_trend),
        );
    }
    if wanted(StatementId::LittlewoodCriterionRatio) {
        push(
            StatementId::LittlewoodCriterionRatio,
            check_littlewood_ratio(&cfg.fekete_structure),
        );
    }
    if wanted(StatementId::SelfReciprocal) {
        push(
            StatementId::SelfReciprocal,
            check_self_reciprocal(&cfg.fekete_structure),
        );
    }
    if wanted(StatementId::MontgomeryLower) {
        push(StatementId::MontgomeryLower, check_montgomery(&cfg.montgomery));
    }
    if wanted(StatementId::NewmanByrnesSearch) {
        push(
            StatementId::NewmanByrnesSearch,
            check_newman_byrnes(&cfg.newman_byrnes),
        );
    }
    if wanted(StatementId::SingerOpen) {
        push(StatementId::SingerOpen, check_singer_flatness(&cfg.singer));
    }
    reports
}

/// True when every asserted verdict passed.
pub fn all_passed(reports: &[VerdictReport]) -> bool {
    reports.iter().all(|r| !r.asserted || r.passed)
}
