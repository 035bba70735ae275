//! Structured verdicts for the verification suite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Identifier of one checked statement. Every id is covered by exactly one
/// check in [`crate::verify::run_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatementId {
    EqPara,
    EqSupbound,
    LemmaNormEquiv,
    LemmaRs5,
    LemmaSegmentSqrtM,
    PropMsCorrelations,
    EqConjugate,
    ThmL4,
    Prop1918,
    ThmMainNonflat,
    PropFlatnessChar,
    GaussFormula,
    HoholdtJensenTrend,
    LittlewoodCriterionRatio,
    SelfReciprocal,
    MontgomeryLower,
    NewmanByrnesSearch,
    SingerOpen,
}

impl StatementId {
    pub const ALL: [StatementId; 18] = [
        StatementId::EqPara,
        StatementId::EqSupbound,
        StatementId::LemmaNormEquiv,
        StatementId::LemmaRs5,
        StatementId::LemmaSegmentSqrtM,
        StatementId::PropMsCorrelations,
        StatementId::EqConjugate,
        StatementId::ThmL4,
        StatementId::Prop1918,
        StatementId::ThmMainNonflat,
        StatementId::PropFlatnessChar,
        StatementId::GaussFormula,
        StatementId::HoholdtJensenTrend,
        StatementId::LittlewoodCriterionRatio,
        StatementId::SelfReciprocal,
        StatementId::MontgomeryLower,
        StatementId::NewmanByrnesSearch,
        StatementId::SingerOpen,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StatementId::EqPara => "eq-para",
            StatementId::EqSupbound => "eq-supbound",
            StatementId::LemmaNormEquiv => "lemma-norm-equiv",
            StatementId::LemmaRs5 => "lemma-rs-5",
            StatementId::LemmaSegmentSqrtM => "lemma-segment-sqrtM",
            StatementId::PropMsCorrelations => "prop-ms-correlations",
            StatementId::EqConjugate => "eq-conjugate",
            StatementId::ThmL4 => "thm-l4",
            StatementId::Prop1918 => "prop-19-18",
            StatementId::ThmMainNonflat => "thm-main-nonflat",
            StatementId::PropFlatnessChar => "prop-flatness-char",
            StatementId::GaussFormula => "gauss-formula",
            StatementId::HoholdtJensenTrend => "hoholdt-jensen-trend",
            StatementId::LittlewoodCriterionRatio => "littlewood-criterion-ratio",
            StatementId::SelfReciprocal => "self-reciprocal",
            StatementId::MontgomeryLower => "montgomery-lower",
            StatementId::NewmanByrnesSearch => "newman-byrnes-search",
            StatementId::SingerOpen => "singer-open",
        }
    }
}

impl std::fmt::Display for StatementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for StatementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        StatementId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown statement id '{s}'")))
    }
}

/// Result of one statement check: quantities computed, the bound claimed,
/// pass/fail and the tolerance it was judged at.
///
/// `asserted = false` marks report-only outputs (open problems); their
/// `passed` flag is always true and never gates the suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictReport {
    pub statement_id: StatementId,
    pub inputs: BTreeMap<String, String>,
    pub computed: BTreeMap<String, String>,
    pub claimed: String,
    pub passed: bool,
    pub asserted: bool,
    pub tolerance: f64,
    pub notes: String,
}

impl VerdictReport {
    pub fn new(statement_id: StatementId) -> Self {
        VerdictReport {
            statement_id,
            inputs: BTreeMap::new(),
            computed: BTreeMap::new(),
            claimed: String::new(),
            passed: false,
            asserted: true,
            tolerance: 0.0,
            notes: String::new(),
        }
    }

    /// Report-only verdict for an open problem: carries data, asserts nothing.
    pub fn report_only(statement_id: StatementId) -> Self {
        let mut r = VerdictReport::new(statement_id);
        r.asserted = false;
        r.passed = true;
        r
    }

    pub fn input(&mut self, key: &str, value: String) -> &mut Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn computed(&mut self, key: &str, value: String) -> &mut Self {
        self.computed.insert(key.to_string(), value);
        self
    }

    /// Failed verdict produced when a check aborts with an error.
    pub fn from_error(statement_id: StatementId, err: &Error) -> Self {
        let mut r = VerdictReport::new(statement_id);
        r.passed = false;
        r.notes = format!("check aborted: {err}");
        r
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }

    pub fn to_csv_line(&self) -> String {
        let status = if !self.asserted {
            "report"
        } else if self.passed {
            "pass"
        } else {
            "fail"
        };
        format!("{},{},{}", self.statement_id, status, format_sig12(self.tolerance))
    }

    pub fn summary_line(&self) -> String {
        let status = if !self.asserted {
            "REPORT"
        } else if self.passed {
            "PASS"
        } else {
            "FAIL"
        };
        format!("{status:6} {:28} {}", self.statement_id.to_string(), self.notes)
    }
}

/// Decimal rendering fixed at 12 significant digits (ties resolved by the
/// formatter's round-half-even) for golden-file stability. Integers small
/// enough to be exact print without a fractional part.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp >= 12 {
        return format!("{:.11e}", x);
    }
    let prec = (11 - exp).max(0) as usize;
    format!("{:.*}", prec, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn sig12_rendering() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(1.0), "1.00000000000");
        assert_eq!(format_sig12(1.5), "1.50000000000");
        assert_eq!(format_sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_sig12(0.0123456789012345), "0.0123456789012");
        assert_eq!(format_sig12(-2.0f64.sqrt()), "-1.41421356237");
        assert_eq!(format_sig12(123456.789), "123456.789000");
    }

    #[test]
    fn id_round_trip() {
        for id in StatementId::ALL {
            assert_eq!(StatementId::from_str(id.as_str()).unwrap(), id);
        }
        assert!(StatementId::from_str("nope").is_err());
    }

    #[test]
    fn json_line_shape() {
        let mut r = VerdictReport::new(StatementId::ThmL4);
        r.passed = true;
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(v["statement_id"], "thm-l4");
        assert_eq!(v["passed"], true);
    }
}
