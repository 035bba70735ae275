//! Polynomial family constructors.
//!
//! Coefficients are stored exactly as small integers; the L² normalization is
//! a separate scalar derived from the exact sum of squares. Floating point
//! enters only at evaluation time, which keeps the autocorrelation route in
//! [`crate::correlate`] exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqgen::{self, SignSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RudinShapiroP,
    RudinShapiroQ,
    TruncatedRs,
    Fekete,
    FeketeModified,
    FeketeShifted,
    Singer,
    Custom,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::RudinShapiroP => "rudin-shapiro-p",
            Family::RudinShapiroQ => "rudin-shapiro-q",
            Family::TruncatedRs => "truncated-rs",
            Family::Fekete => "fekete",
            Family::FeketeModified => "fekete-modified",
            Family::FeketeShifted => "fekete-shifted",
            Family::Singer => "singer",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Real-coefficient analytic trigonometric polynomial with an explicit
/// normalization scalar. The normalized form denotes (1/normalization) Σ a_j z^j
/// with normalization² = Σ a_j² (exact unit L² norm).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyticPolynomial {
    coeffs: Vec<i64>,
    family: Family,
    /// (N, M) for segment polynomials Σ_{n=N+1}^{N+M} r_n z^n.
    segment: Option<(usize, usize)>,
}

impl AnalyticPolynomial {
    pub fn new(coeffs: Vec<i64>, family: Family) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("zero polynomial rejected".into()));
        }
        Ok(AnalyticPolynomial { coeffs, family, segment: None })
    }

    /// Stored coefficients, possibly with explicit leading zeros.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn segment_meta(&self) -> Option<(usize, usize)> {
        self.segment
    }

    /// Index of the last non-zero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    /// Exact squared L² norm of the raw coefficient vector.
    pub fn norm_sq(&self) -> u128 {
        self.coeffs.iter().map(|&c| (c as i128 * c as i128) as u128).sum()
    }

    /// The scalar dividing the raw polynomial in normalized form.
    pub fn normalization(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    /// Coefficients of the L²-normalized form as floats.
    pub fn normalized_coefficients(&self) -> Vec<f64> {
        let s = 1.0 / self.normalization();
        self.coeffs.iter().map(|&c| c as f64 * s).collect()
    }

    pub fn is_littlewood(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 1 || c == -1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "degree": self.degree(),
            "normalization": self.normalization(),
            "coefficients": self.coeffs,
        })
    }

    /// Two-column CSV (index, coefficient), one row per stored coefficient.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,coefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

/// Maximum Rudin-Shapiro stage (2^n coefficients).
pub const MAX_RS_STAGE: u32 = 22;

/// Largest prime accepted by the Fekete constructors.
pub const MAX_FEKETE_PRIME: u64 = 20011;

/// The pair (P_n, Q_n) of the doubling recursion
/// P_{n+1} = P_n + z^{2^n} Q_n, Q_{n+1} = P_n - z^{2^n} Q_n, P_0 = Q_0 = 1.
pub fn rudin_shapiro_pair(n: u32) -> Result<(AnalyticPolynomial, AnalyticPolynomial)> {
    if n > MAX_RS_STAGE {
        return Err(Error::ResourceLimit(format!(
            "stage {n} exceeds maximum {MAX_RS_STAGE}"
        )));
    }
    let mut p = vec![1i64];
    let mut q = vec![1i64];
    for _ in 0..n {
        let mut next_p = p.clone();
        next_p.extend(q.iter().copied());
        let mut next_q = p.clone();
        next_q.extend(q.iter().map(|c| -c));
        p = next_p;
        q = next_q;
    }
    Ok((
        AnalyticPolynomial { coeffs: p, family: Family::RudinShapiroP, segment: None },
        AnalyticPolynomial { coeffs: q, family: Family::RudinShapiroQ, segment: None },
    ))
}

/// The L²-normalized P_n, written X_n elsewhere in the crate.
pub fn rs_normalized(n: u32) -> Result<AnalyticPolynomial> {
    Ok(rudin_shapiro_pair(n)?.0)
}

/// R_N(z) = Σ_{n=0}^{N} r_n z^n. Note the N+1 coefficients.
pub fn truncated_rs(big_n: usize) -> Result<AnalyticPolynomial> {
    if big_n == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    if big_n + 1 > (1usize << MAX_RS_STAGE) * 4 {
        return Err(Error::ResourceLimit(format!("N = {big_n} too large")));
    }
    let r = seqgen::grs_recurrence(big_n + 1)?;
    let coeffs = r.values().iter().map(|&v| v as i64).collect();
    Ok(AnalyticPolynomial { coeffs, family: Family::TruncatedRs, segment: None })
}

/// The segment polynomial Σ_{n=N+1}^{N+M} r_n z^n, stored with its leading
/// zero coefficients so evaluation is literal.
pub fn rs_segment(big_n: usize, m: usize) -> Result<AnalyticPolynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be >= 1".into()));
    }
    let end = big_n + m + 1;
    if end > (1usize << MAX_RS_STAGE) * 4 {
        return Err(Error::ResourceLimit(format!("N+M = {} too large", big_n + m)));
    }
    let r = seqgen::grs_recurrence(end)?;
    let mut coeffs = vec![0i64; end];
    for (i, c) in coeffs.iter_mut().enumerate().take(end).skip(big_n + 1) {
        *c = r.values()[i] as i64;
    }
    Ok(AnalyticPolynomial {
        coeffs,
        family: Family::Custom,
        segment: Some((big_n, m)),
    })
}

fn fekete_bounds(p: u64) -> Result<()> {
    seqgen::require_odd_prime(p)?;
    if p > MAX_FEKETE_PRIME {
        return Err(Error::ResourceLimit(format!(
            "prime {p} exceeds maximum {MAX_FEKETE_PRIME}"
        )));
    }
    Ok(())
}

/// Fekete polynomial Q_p(z) = Σ_{k=1}^{p-1} (k/p) z^k.
pub fn fekete(p: u64) -> Result<AnalyticPolynomial> {
    fekete_bounds(p)?;
    let seq = seqgen::legendre_sequence(p)?;
    let coeffs = seq.values().iter().map(|&v| v as i64).collect();
    Ok(AnalyticPolynomial { coeffs, family: Family::Fekete, segment: None })
}

/// Modified Fekete polynomial F_p(z) = 1 + Q_p(z); a Littlewood polynomial.
pub fn fekete_modified(p: u64) -> Result<AnalyticPolynomial> {
    let mut poly = fekete(p)?;
    poly.coeffs[0] = 1;
    poly.family = Family::FeketeModified;
    Ok(poly)
}

/// Shifted Fekete polynomial F_p^t(z) = Σ_{k=0}^{p-1} ((k+t)/p) z^k.
pub fn fekete_shifted(p: u64, t: i64) -> Result<AnalyticPolynomial> {
    fekete_bounds(p)?;
    let base = seqgen::legendre_sequence(p)?;
    let shift = t.rem_euclid(p as i64) as usize;
    let n = p as usize;
    let coeffs = (0..n)
        .map(|k| base.values()[(k + shift) % n] as i64)
        .collect();
    Ok(AnalyticPolynomial { coeffs, family: Family::FeketeShifted, segment: None })
}

/// Singer polynomial: ±1 coefficients from the sumset indicator of the Singer
/// set in Z/(p²+p+1)Z, normalization √q.
pub fn singer_poly(p: u64) -> Result<AnalyticPolynomial> {
    let seq = seqgen::singer_sign_sequence(p)?;
    let coeffs = seq.values().iter().map(|&v| v as i64).collect();
    Ok(AnalyticPolynomial { coeffs, family: Family::Singer, segment: None })
}

/// The conjugate-reciprocal transform (-1)^n z^{2^n-1} P(-1/z) in coefficient
/// form: output coefficient j is (-1)^n (-1)^{2^n-1-j} times coefficient
/// 2^n-1-j of the input. Maps P_n to Q_n.
pub fn conjugate_reciprocal(p: &AnalyticPolynomial, n: u32) -> Result<AnalyticPolynomial> {
    let len = 1usize
        .checked_shl(n)
        .ok_or_else(|| Error::InvalidArgument("stage too large".into()))?;
    if p.coeffs.len() != len || p.degree() != len - 1 {
        return Err(Error::InvalidArgument(format!(
            "polynomial degree {} does not match stage {n} (expected 2^{n}-1)",
            p.degree()
        )));
    }
    let sign_n = if n % 2 == 0 { 1i64 } else { -1 };
    let coeffs = (0..len)
        .map(|j| {
            let k = len - 1 - j;
            let sign_k = if k % 2 == 0 { 1i64 } else { -1 };
            sign_n * sign_k * p.coeffs[k]
        })
        .collect();
    Ok(AnalyticPolynomial { coeffs, family: Family::Custom, segment: None })
}

/// Polynomial with the given sign sequence as coefficients.
pub fn from_sign_sequence(seq: &SignSequence, family: Family) -> Result<AnalyticPolynomial> {
    let coeffs = seq.values().iter().map(|&v| v as i64).collect();
    AnalyticPolynomial::new(coeffs, family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_zero() {
        let (p, q) = rudin_shapiro_pair(0).unwrap();
        assert_eq!(p.coefficients(), &[1]);
        assert_eq!(q.coefficients(), &[1]);
    }

    #[test]
    fn stage_two() {
        let (p, q) = rudin_shapiro_pair(2).unwrap();
        assert_eq!(p.coefficients(), &[1, 1, 1, -1]);
        assert_eq!(q.coefficients(), &[1, 1, -1, 1]);
    }

    #[test]
    fn stage_five_littlewood() {
        let (p, q) = rudin_shapiro_pair(5).unwrap();
        for poly in [&p, &q] {
            assert_eq!(poly.coefficients().len(), 32);
            assert!(poly.is_littlewood());
            assert_eq!(poly.norm_sq(), 32);
        }
    }

    #[test]
    fn recursion_consistency() {
        for n in 0..=16u32 {
            let (p, q) = rudin_shapiro_pair(n).unwrap();
            let (p1, q1) = rudin_shapiro_pair(n + 1).unwrap();
            let half = p.coefficients().len();
            assert_eq!(&p1.coefficients()[..half], p.coefficients());
            assert_eq!(&p1.coefficients()[half..], q.coefficients());
            assert_eq!(&q1.coefficients()[..half], p.coefficients());
            let negated: Vec<i64> = q.coefficients().iter().map(|&c| -c).collect();
            assert_eq!(&q1.coefficients()[half..], &negated[..]);
        }
    }

    #[test]
    fn rs_coefficients_match_grs() {
        for n in [0u32, 1, 3, 7, 10] {
            let (p, _) = rudin_shapiro_pair(n).unwrap();
            let r = seqgen::grs_recurrence(1 << n).unwrap();
            let expected: Vec<i64> = r.values().iter().map(|&v| v as i64).collect();
            assert_eq!(p.coefficients(), &expected[..]);
        }
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncated_rs(1).unwrap().coefficients(), &[1, 1]);
        assert_eq!(truncated_rs(3).unwrap().coefficients(), &[1, 1, 1, -1]);
        assert_eq!(truncated_rs(6).unwrap().coefficients(), &[1, 1, 1, -1, 1, 1, -1]);
    }

    #[test]
    fn segment_layout() {
        let s = rs_segment(0, 3).unwrap();
        assert_eq!(s.coefficients(), &[0, 1, 1, -1]);
        let s = rs_segment(3, 4).unwrap();
        assert_eq!(&s.coefficients()[..4], &[0, 0, 0, 0]);
        assert_eq!(&s.coefficients()[4..], &[1, 1, -1, 1]);
        assert_eq!(s.segment_meta(), Some((3, 4)));
        // non-zero count equals M
        for (n, m) in [(0usize, 5usize), (17, 9), (100, 33)] {
            let s = rs_segment(n, m).unwrap();
            assert_eq!(s.coefficients().iter().filter(|&&c| c != 0).count(), m);
        }
    }

    #[test]
    fn fekete_small() {
        assert_eq!(fekete(7).unwrap().coefficients(), &[0, 1, 1, -1, 1, -1, -1]);
        assert_eq!(fekete(5).unwrap().coefficients(), &[0, 1, -1, -1, 1]);
        assert!(fekete(9).is_err());
    }

    #[test]
    fn fekete_modified_small() {
        assert_eq!(fekete_modified(7).unwrap().coefficients(), &[1, 1, 1, -1, 1, -1, -1]);
        assert_eq!(fekete_modified(5).unwrap().coefficients(), &[1, 1, -1, -1, 1]);
        assert!(fekete_modified(101).unwrap().is_littlewood());
    }

    #[test]
    fn fekete_shifted_small() {
        assert_eq!(
            fekete_shifted(7, 0).unwrap().coefficients(),
            fekete(7).unwrap().coefficients()
        );
        assert_eq!(
            fekete_shifted(7, 1).unwrap().coefficients(),
            &[1, 1, -1, 1, -1, -1, 0]
        );
        // Cyclic shift permutes the coefficient multiset.
        let mut a: Vec<i64> = fekete(13).unwrap().coefficients().to_vec();
        let mut b: Vec<i64> = fekete_shifted(13, 5).unwrap().coefficients().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn fekete_value_at_one_vanishes() {
        for p in [5u64, 7, 13, 97] {
            let q = fekete(p).unwrap();
            assert_eq!(q.coefficients().iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn fekete_palindrome_mod_4() {
        // Palindromic over k = 1..p-1 iff p ≡ 1 (mod 4), anti-palindromic
        // iff p ≡ 3 (mod 4).
        for p in (3..=500u64).filter(|&p| seqgen::is_prime(p)) {
            let q = fekete(p).unwrap();
            let c = q.coefficients();
            let n = p as usize;
            let sign = if p % 4 == 1 { 1 } else { -1 };
            for k in 1..n {
                assert_eq!(c[k], sign * c[n - k], "p = {p}, k = {k}");
            }
        }
    }

    #[test]
    fn singer_poly_small() {
        let s = singer_poly(2).unwrap();
        assert_eq!(s.coefficients(), &[1, 1, 1, 1, 1, -1, 1]);
        assert_eq!(s.norm_sq(), 7);
        let s = singer_poly(3).unwrap();
        assert_eq!(s.coefficients().len(), 13);
        assert_eq!(s.coefficients().iter().filter(|&&c| c == 1).count(), 10);
    }

    #[test]
    fn conjugate_reciprocal_matches_q() {
        for n in 0..=16u32 {
            let (p, q) = rudin_shapiro_pair(n).unwrap();
            let y = conjugate_reciprocal(&p, n).unwrap();
            assert_eq!(y.coefficients(), q.coefficients(), "stage {n}");
        }
    }

    #[test]
    fn conjugate_reciprocal_involution_up_to_sign() {
        // T(P)(z) = (-1)^n z^{2^n - 1} P(-1/z) satisfies T^2 = -I for
        // n >= 1 (the reciprocal degree 2^n - 1 is odd) and T^2 = I at n = 0.
        let (p0, _) = rudin_shapiro_pair(0).unwrap();
        let twice0 = conjugate_reciprocal(&conjugate_reciprocal(&p0, 0).unwrap(), 0).unwrap();
        assert_eq!(twice0.coefficients(), p0.coefficients());
        for n in [1u32, 2, 5, 9] {
            let (p, _) = rudin_shapiro_pair(n).unwrap();
            let twice = conjugate_reciprocal(&conjugate_reciprocal(&p, n).unwrap(), n).unwrap();
            let negated: Vec<i64> = p.coefficients().iter().map(|&c| -c).collect();
            assert_eq!(twice.coefficients(), &negated[..], "stage {n}");
        }
    }

    #[test]
    fn conjugate_reciprocal_stage_mismatch() {
        let (p, _) = rudin_shapiro_pair(3).unwrap();
        assert!(conjugate_reciprocal(&p, 4).is_err());
    }

    #[test]
    fn stage_limit() {
        assert!(matches!(
            rudin_shapiro_pair(MAX_RS_STAGE + 1),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(AnalyticPolynomial::new(vec![0, 0], Family::Custom).is_err());
    }
}
