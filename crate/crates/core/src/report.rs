//! Identity reports and their JSON form.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::result::SumResult;
use crate::series::SidePair;

/// Rounds to 15 significant digits, the precision written to JSON.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// One side of an identity as written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideReport {
    pub value: [f64; 2],
    pub err: f64,
    pub terms: usize,
    pub method: String,
}

impl From<&SumResult> for SideReport {
    fn from(r: &SumResult) -> Self {
        Self {
            value: [round15(r.value.re), round15(r.value.im)],
            err: round15(r.abs_error_estimate),
            terms: r.terms_used,
            method: r.method.to_string(),
        }
    }
}

impl SideReport {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("fail"),
            Status::Skipped(reason) => write!(f, "skipped({reason})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "pass" => Ok(Status::Pass),
            "fail" => Ok(Status::Fail),
            _ => s
                .strip_prefix("skipped(")
                .and_then(|r| r.strip_suffix(')'))
                .map(|r| Status::Skipped(r.to_string()))
                .ok_or_else(|| serde::de::Error::custom(format!("unknown status {s:?}"))),
        }
    }
}

/// Comparison of the two sides of one identity instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub lhs: Option<SideReport>,
    pub rhs: Option<SideReport>,
    pub abs_discrepancy: Option<f64>,
    pub rel_discrepancy: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    /// Builds the report from rounded values, so the status is reproducible from the JSON.
    pub fn compare(id: impl Into<String>, lhs: &SumResult, rhs: &SumResult, tolerance: f64) -> Self {
        let l = SideReport::from(lhs);
        let r = SideReport::from(rhs);
        let abs = round15((l.value() - r.value()).norm());
        let scale = l.value().norm().max(r.value().norm());
        let rel = round15(if scale > 0.0 { abs / scale } else { abs });
        let tolerance = round15(tolerance);
        let status = if abs <= l.err + r.err + tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            identity_id: id.into(),
            lhs: Some(l),
            rhs: Some(r),
            abs_discrepancy: Some(abs),
            rel_discrepancy: Some(rel),
            tolerance,
            status,
            note: None,
        }
    }

    pub fn from_pair(id: impl Into<String>, pair: &SidePair, tolerance: f64) -> Self {
        Self::compare(id, &pair.lhs, &pair.rhs, tolerance)
    }

    /// Report for an instance that could not be evaluated. Guard errors
    /// (domain, radius, boundary, pole) skip; anything else fails.
    pub fn from_error(id: impl Into<String>, err: &Error, tolerance: f64) -> Self {
        let status = match err {
            Error::Domain(_) | Error::Radius(_) | Error::Boundary(_) | Error::Pole(_) | Error::NotAPole(_) => {
                Status::Skipped(err.kind().to_string())
            }
            _ => Status::Fail,
        };
        Self {
            identity_id: id.into(),
            lhs: None,
            rhs: None,
            abs_discrepancy: None,
            rel_discrepancy: None,
            tolerance: round15(tolerance),
            status,
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Reports for a whole corpus run, sorted by identity id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tolerance: f64,
    pub summary: Summary,
    pub reports: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn new(tolerance: f64, mut reports: Vec<IdentityReport>) -> Self {
        reports.sort_by(|a, b| a.identity_id.cmp(&b.identity_id));
        let mut summary = Summary {
            total: reports.len(),
            ..Summary::default()
        };
        for r in &reports {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped(_) => summary.skipped += 1,
            }
        }
        Self {
            tolerance: round15(tolerance),
            summary,
            reports,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}
