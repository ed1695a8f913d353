//! Structured pass/fail records for the verification suites.

use serde::Serialize;

use crate::exactnum::{rat_to_string, Poly};
use crate::xcore::ParamSet;

/// One verification outcome for a (suite, case, parameter point). Failures
/// carry the residual polynomial coefficients or a numeric detail string.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub case: String,
    pub family: Option<String>,
    pub g: Option<String>,
    pub h: Option<String>,
    pub ell: Option<usize>,
    pub n: Option<i64>,
    pub pass: bool,
    pub skipped: bool,
    pub detail: String,
    pub residual: Option<Vec<String>>,
}

impl VerificationReport {
    pub fn new(suite: &str, case: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            case: case.to_string(),
            family: None,
            g: None,
            h: None,
            ell: None,
            n: None,
            pass: true,
            skipped: false,
            detail: String::new(),
            residual: None,
        }
    }

    pub fn with_params(mut self, p: &ParamSet) -> Self {
        self.family = Some(p.family.to_string());
        self.g = Some(rat_to_string(&p.lambda.g));
        self.h = p.lambda.h.as_ref().map(rat_to_string);
        self.ell = Some(p.ell);
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n as i64);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn passed(mut self) -> Self {
        self.pass = true;
        self
    }

    pub fn failed(mut self, detail: impl Into<String>) -> Self {
        self.pass = false;
        self.detail = detail.into();
        self
    }

    /// Pass iff the residual polynomial vanishes; otherwise record it.
    pub fn residual_poly(mut self, r: &Poly) -> Self {
        if r.is_zero() {
            self.pass = true;
        } else {
            self.pass = false;
            self.residual = Some(r.coeff_strings());
            if self.detail.is_empty() {
                self.detail = format!(
                    "nonzero residual of degree {}",
                    r.degree().map(|d| d as i64).unwrap_or(-1)
                );
            }
        }
        self
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.skipped = true;
        self.pass = true;
        self.detail = reason.into();
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }

    pub fn csv_row(&self) -> String {
        let esc = |s: &str| {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.family.as_deref().unwrap_or(""),
            self.g.as_deref().unwrap_or(""),
            self.h.as_deref().unwrap_or(""),
            self.ell.map(|v| v.to_string()).unwrap_or_default(),
            self.n.map(|v| v.to_string()).unwrap_or_default(),
            self.suite,
            self.pass,
            esc(&self.detail),
        )
    }

    pub const CSV_HEADER: &'static str = "family,g,h,ell,n,suite,pass,detail";

    /// Canonical ordering key: suite, family, ell, n, then case/params.
    pub fn sort_key(&self) -> (String, String, usize, i64, String, String) {
        (
            self.suite.clone(),
            self.family.clone().unwrap_or_default(),
            self.ell.unwrap_or(0),
            self.n.unwrap_or(-1),
            self.case.clone(),
            format!("{:?}{:?}", self.g, self.h),
        )
    }
}

/// Sorts reports into the canonical output order.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by_key(|r| r.sort_key());
}

/// True iff every non-skipped report passed.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
