//! Coefficient sequence generators.
//!
//! The Golay-Rudin-Shapiro sequence is produced by four independent
//! constructions (recurrence, binary "11" counting, substitution fixed point,
//! word doubling) which the test suite forces to agree element-wise. Legendre
//! symbol sequences and Singer-set sign sequences feed the Fekete and Singer
//! polynomial families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Provenance label of a sign sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    GrsRecurrence,
    GrsBinary,
    GrsSubstitution,
    GrsWords,
    Legendre,
    FeketeShifted,
    Singer,
    Custom,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Source::GrsRecurrence => "grs-recurrence",
            Source::GrsBinary => "grs-binary",
            Source::GrsSubstitution => "grs-substitution",
            Source::GrsWords => "grs-words",
            Source::Legendre => "legendre",
            Source::FeketeShifted => "fekete-shifted",
            Source::Singer => "singer",
            Source::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "grs-recurrence" => Source::GrsRecurrence,
            "grs-binary" => Source::GrsBinary,
            "grs-substitution" => Source::GrsSubstitution,
            "grs-words" => Source::GrsWords,
            "legendre" => Source::Legendre,
            "fekete-shifted" => Source::FeketeShifted,
            "singer" => Source::Singer,
            "custom" => Source::Custom,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown sequence source '{other}'"
                )))
            }
        })
    }
}

/// A finite sequence over {-1, 0, +1} with provenance metadata.
///
/// The value 0 occurs only for Legendre-symbol sources (the symbol of a
/// multiple of p); all GRS and Singer sequences are strictly ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    values: Vec<i8>,
    source: Source,
}

impl SignSequence {
    pub fn new(values: Vec<i8>, source: Source) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty sign sequence".into()));
        }
        let zeros_allowed = matches!(source, Source::Legendre | Source::FeketeShifted);
        for (i, &v) in values.iter().enumerate() {
            match v {
                1 | -1 => {}
                0 if zeros_allowed => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "value {v} at index {i} not allowed for source {source}"
                    )))
                }
            }
        }
        Ok(SignSequence { values, source })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> Source {
        self.source
    }

    /// Single-line CSV of signed integers.
    pub fn to_csv_line(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source,
            "length": self.len(),
            "values": self.values,
        })
    }
}

fn require_positive(count: usize) -> Result<()> {
    if count == 0 {
        Err(Error::InvalidArgument("count must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// GRS sequence by the coefficient recurrence
/// r_0 = 1, r_{2m} = r_m, r_{2m+1} = (-1)^m r_m.
pub fn grs_recurrence(count: usize) -> Result<SignSequence> {
    require_positive(count)?;
    let mut r = vec![1i8; count];
    for n in 1..count {
        let m = n / 2;
        r[n] = if n % 2 == 0 {
            r[m]
        } else if m % 2 == 0 {
            r[m]
        } else {
            -r[m]
        };
    }
    SignSequence::new(r, Source::GrsRecurrence)
}

/// Number of adjacent "11" bit pairs in the binary expansion of n.
fn count_11(n: usize) -> u32 {
    (n & (n >> 1)).count_ones()
}

/// GRS sequence by the Brillhart-Carlitz formula r_n = (-1)^{s(n)},
/// s(n) counting "11" occurrences in the binary expansion of n.
pub fn grs_binary(count: usize) -> Result<SignSequence> {
    require_positive(count)?;
    let r = (0..count)
        .map(|n| if count_11(n) % 2 == 0 { 1 } else { -1 })
        .collect();
    SignSequence::new(r, Source::GrsBinary)
}

/// A substitution on a finite alphabet with a ±1 projection.
#[derive(Debug, Clone)]
pub struct SubstitutionSystem {
    rules: Vec<Vec<u8>>,
    projection: Vec<i8>,
    seed: u8,
}

impl SubstitutionSystem {
    pub fn new(rules: Vec<Vec<u8>>, projection: Vec<i8>, seed: u8) -> Result<Self> {
        if rules.len() != projection.len() {
            return Err(Error::InvalidArgument(
                "rules and projection must cover the same alphabet".into(),
            ));
        }
        for w in &rules {
            if w.is_empty() {
                return Err(Error::InvalidArgument("empty rule image".into()));
            }
            if w.iter().any(|&l| l as usize >= rules.len()) {
                return Err(Error::InvalidArgument("rule image leaves the alphabet".into()));
            }
        }
        let seed_image = &rules[seed as usize];
        if seed_image[0] != seed {
            return Err(Error::InvalidArgument(
                "seed image must begin with the seed (fixed-point condition)".into(),
            ));
        }
        Ok(SubstitutionSystem { rules, projection, seed })
    }

    /// The length-two substitution on {0,1,2,3} whose fixed point projects to
    /// the GRS sequence: 0 -> 02, 1 -> 32, 2 -> 01, 3 -> 31, with
    /// projection 0,2 -> +1 and 1,3 -> -1.
    pub fn rudin_shapiro() -> SubstitutionSystem {
        SubstitutionSystem::new(
            vec![vec![0, 2], vec![3, 2], vec![0, 1], vec![3, 1]],
            vec![1, -1, 1, -1],
            0,
        )
        .expect("fixed substitution is valid")
    }

    /// Prefix of the fixed point of length >= count, truncated to count.
    pub fn fixed_point_prefix(&self, count: usize) -> Vec<u8> {
        let mut word = vec![self.seed];
        while word.len() < count {
            let mut next = Vec::with_capacity(word.len() * 2);
            for &l in &word {
                next.extend_from_slice(&self.rules[l as usize]);
            }
            word = next;
        }
        word.truncate(count);
        word
    }

    pub fn project(&self, letters: &[u8]) -> Vec<i8> {
        letters.iter().map(|&l| self.projection[l as usize]).collect()
    }
}

/// GRS sequence as the projected fixed point of the substitution.
pub fn grs_substitution(count: usize) -> Result<SignSequence> {
    require_positive(count)?;
    let system = SubstitutionSystem::rudin_shapiro();
    let word = system.fixed_point_prefix(count);
    SignSequence::new(system.project(&word), Source::GrsSubstitution)
}

/// The word pair (A_n, B_n) of the GRS doubling construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPair {
    pub a: Vec<i8>,
    pub b: Vec<i8>,
    pub stage: u32,
}

/// Flip every sign of a word.
pub fn conjugate_word(word: &[i8]) -> Vec<i8> {
    word.iter().map(|&v| -v).collect()
}

const MAX_WORD_STAGE: u32 = 26;

/// Builds (A_stage, B_stage) from A_0 = B_0 = [+1] by the doubling rules
/// A_{n+1} = A_n B_n and B_{n+1} = A_n conj(B_n).
pub fn grs_words(stage: u32) -> Result<WordPair> {
    if stage > MAX_WORD_STAGE {
        return Err(Error::ResourceLimit(format!(
            "word stage {stage} exceeds maximum {MAX_WORD_STAGE}"
        )));
    }
    let mut a = vec![1i8];
    let mut b = vec![1i8];
    for _ in 0..stage {
        let mut next_a = a.clone();
        next_a.extend_from_slice(&b);
        let mut next_b = a.clone();
        next_b.extend_from_slice(&conjugate_word(&b));
        a = next_a;
        b = next_b;
    }
    Ok(WordPair { a, b, stage })
}

/// Deterministic primality test by trial division. Inputs are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p <= 2 || !is_prime(p) {
        Err(Error::InvalidArgument(format!("{p} is not an odd prime")))
    } else {
        Ok(())
    }
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (k/p) by Euler's criterion k^{(p-1)/2} mod p.
pub fn legendre_symbol(k: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let k = k.rem_euclid(p as i64) as u64;
    if k == 0 {
        return Ok(0);
    }
    let e = mod_pow(k, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Legendre symbols (0/p), ..., (p-1/p) as a sequence.
pub fn legendre_sequence(p: u64) -> Result<SignSequence> {
    require_odd_prime(p)?;
    let values: Vec<i8> = (0..p as i64)
        .map(|k| legendre_symbol(k, p))
        .collect::<Result<_>>()?;
    SignSequence::new(values, Source::Legendre)
}

/// Largest prime for which Singer sets are searched exhaustively.
pub const SINGER_SEARCH_BOUND: u64 = 7;

/// Lexicographically least perfect difference set S in Z/qZ, q = p²+p+1,
/// |S| = p+1: every nonzero residue mod q is a difference of elements of S
/// exactly once. Found by backtracking in lexicographic order.
pub fn singer_set(p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p > SINGER_SEARCH_BOUND {
        return Err(Error::Unsupported(format!(
            "Singer set search is exhaustive and limited to p <= {SINGER_SEARCH_BOUND}; \
             a projective-plane construction would be needed for larger p"
        )));
    }
    let q = (p * p + p + 1) as usize;
    let k = (p + 1) as usize;
    let mut used = vec![false; q];
    let mut set: Vec<usize> = Vec::with_capacity(k);

    fn extend(
        set: &mut Vec<usize>,
        used: &mut [bool],
        start: usize,
        k: usize,
        q: usize,
    ) -> bool {
        if set.len() == k {
            return true;
        }
        for x in start..q {
            let mut added: Vec<usize> = Vec::with_capacity(2 * set.len());
            let mut ok = true;
            for &s in set.iter() {
                let d1 = (x + q - s) % q;
                let d2 = (s + q - x) % q;
                if used[d1] || used[d2] || d1 == d2 {
                    ok = false;
                    break;
                }
                used[d1] = true;
                used[d2] = true;
                added.push(d1);
                added.push(d2);
            }
            if ok {
                set.push(x);
                if extend(set, used, x + 1, k, q) {
                    return true;
                }
                set.pop();
            }
            for d in added {
                used[d] = false;
            }
        }
        false
    }

    if !extend(&mut set, &mut used, 0, k, q) {
        return Err(Error::InvalidArgument(format!(
            "no perfect difference set of size {k} in Z/{q}Z"
        )));
    }
    Ok(set.into_iter().map(|x| x as u64).collect())
}

/// Length-q sign sequence with +1 on the sumset T = S+S of the Singer set
/// and -1 elsewhere.
pub fn singer_sign_sequence(p: u64) -> Result<SignSequence> {
    let s = singer_set(p)?;
    let q = (p * p + p + 1) as usize;
    let mut in_sumset = vec![false; q];
    for &a in &s {
        for &b in &s {
            in_sumset[((a + b) % (q as u64)) as usize] = true;
        }
    }
    let values = in_sumset
        .into_iter()
        .map(|t| if t { 1 } else { -1 })
        .collect();
    SignSequence::new(values, Source::Singer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_prefixes() {
        assert_eq!(grs_recurrence(1).unwrap().values(), &[1]);
        assert_eq!(grs_recurrence(4).unwrap().values(), &[1, 1, 1, -1]);
        assert_eq!(grs_recurrence(8).unwrap().values(), &[1, 1, 1, -1, 1, 1, -1, 1]);
    }

    #[test]
    fn zero_count_rejected() {
        for f in [grs_recurrence, grs_binary, grs_substitution] {
            assert!(matches!(f(0), Err(Error::InvalidArgument(_))));
        }
    }

    #[test]
    fn binary_signs() {
        let r = grs_binary(8).unwrap();
        assert_eq!(r.values()[3], -1); // 3 = 0b11, one "11"
        assert_eq!(r.values()[7], 1); // 7 = 0b111, two "11"
        assert_eq!(r.values(), grs_recurrence(8).unwrap().values());
    }

    #[test]
    fn substitution_prefix() {
        let sys = SubstitutionSystem::rudin_shapiro();
        assert_eq!(sys.fixed_point_prefix(2), vec![0, 2]);
        assert_eq!(sys.fixed_point_prefix(8), vec![0, 2, 0, 1, 0, 2, 3, 2]);
        assert_eq!(grs_substitution(2).unwrap().values(), &[1, 1]);
        assert_eq!(
            grs_substitution(8).unwrap().values(),
            grs_binary(8).unwrap().values()
        );
    }

    #[test]
    fn four_way_agreement() {
        // Element-wise agreement of all four constructions up to 2^16.
        let n = 1 << 16;
        let a = grs_recurrence(n).unwrap();
        let b = grs_binary(n).unwrap();
        let c = grs_substitution(n).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.values(), c.values());
        let pair = grs_words(15).unwrap();
        let concat: Vec<i8> = pair.a.iter().chain(pair.b.iter()).copied().collect();
        assert_eq!(a.values(), &concat[..]);
    }

    #[test]
    fn word_stages() {
        let w1 = grs_words(1).unwrap();
        assert_eq!(w1.a, vec![1, 1]);
        assert_eq!(w1.b, vec![1, -1]);
        let w2 = grs_words(2).unwrap();
        assert_eq!(w2.a, vec![1, 1, 1, -1]);
        assert_eq!(w2.b, vec![1, 1, -1, 1]);
    }

    #[test]
    fn coefficient_split() {
        // Second half of r_0..r_{2^{n+1}-1} is B_n; B_n agrees with A_n on the
        // first half and is its negation on the second half.
        for n in 1..=10u32 {
            let len = 1usize << (n + 1);
            let r = grs_recurrence(len).unwrap();
            let pair = grs_words(n).unwrap();
            assert_eq!(&r.values()[len / 2..], &pair.b[..]);
            let half = len / 4;
            assert_eq!(&pair.b[..half], &pair.a[..half]);
            let negated: Vec<i8> = pair.a[half..].iter().map(|&v| -v).collect();
            assert_eq!(&pair.b[half..], &negated[..]);
        }
    }

    #[test]
    fn legendre_mod_7() {
        assert_eq!(legendre_symbol(0, 7).unwrap(), 0);
        assert_eq!(legendre_symbol(2, 7).unwrap(), 1); // 3^2 = 2 mod 7
        assert_eq!(legendre_symbol(3, 7).unwrap(), -1); // squares mod 7: {1,2,4}
        assert_eq!(
            legendre_sequence(7).unwrap().values(),
            &[0, 1, 1, -1, 1, -1, -1]
        );
    }

    #[test]
    fn legendre_rejects_non_prime() {
        assert!(legendre_symbol(3, 9).is_err());
        assert!(legendre_symbol(3, 2).is_err());
    }

    #[test]
    fn legendre_multiplicative_and_balanced() {
        for p in (3..=97u64).filter(|&p| is_prime(p)) {
            let sym: Vec<i64> = (0..p as i64)
                .map(|k| legendre_symbol(k, p).unwrap() as i64)
                .collect();
            assert_eq!(sym.iter().sum::<i64>(), 0, "sum over residues mod {p}");
            for a in 1..p as i64 {
                for b in 1..p as i64 {
                    let ab = (a * b) % p as i64;
                    assert_eq!(sym[ab as usize], sym[a as usize] * sym[b as usize]);
                }
            }
        }
    }

    #[test]
    fn singer_sets_small() {
        assert_eq!(singer_set(2).unwrap(), vec![0, 1, 3]);
        assert_eq!(singer_set(3).unwrap(), vec![0, 1, 3, 9]);
        assert_eq!(singer_set(5).unwrap(), vec![0, 1, 3, 8, 12, 18]);
        assert_eq!(singer_set(7).unwrap(), vec![0, 1, 3, 13, 32, 36, 43, 52]);
    }

    #[test]
    fn singer_difference_property() {
        for p in [2u64, 3, 5, 7] {
            let q = p * p + p + 1;
            let s = singer_set(p).unwrap();
            let mut counts = vec![0u32; q as usize];
            for &a in &s {
                for &b in &s {
                    if a != b {
                        counts[((a + q - b) % q) as usize] += 1;
                    }
                }
            }
            assert!(counts[1..].iter().all(|&c| c == 1), "p = {p}");
        }
    }

    #[test]
    fn singer_sign_sequences() {
        let s2 = singer_sign_sequence(2).unwrap();
        assert_eq!(s2.values(), &[1, 1, 1, 1, 1, -1, 1]);
        assert_eq!(s2.values().iter().filter(|&&v| v == 1).count(), 6);
        let s3 = singer_sign_sequence(3).unwrap();
        assert_eq!(s3.len(), 13);
        assert_eq!(s3.values().iter().filter(|&&v| v == 1).count(), 10);
    }

    #[test]
    fn singer_beyond_bound_unsupported() {
        assert!(matches!(singer_set(11), Err(Error::Unsupported(_))));
    }

    #[test]
    fn zeros_only_for_legendre() {
        assert!(SignSequence::new(vec![1, 0, -1], Source::GrsBinary).is_err());
        assert!(SignSequence::new(vec![1, 0, -1], Source::Legendre).is_ok());
    }

    #[test]
    fn csv_line() {
        let s = grs_binary(8).unwrap();
        assert_eq!(s.to_csv_line(), "1,1,1,-1,1,1,-1,1");
    }
}
