use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::exponents::ExponentTuple;
use crate::exponent::Exponent;

/// CSV header for [`CheckReport::csv_row`].
pub const CSV_HEADER: &str = "check,u,v,p,q,r,lhs,rhs,ratio,residual,pass,budget_note";

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub u: Option<Exponent>,
    pub v: Option<Exponent>,
    pub p: Option<Exponent>,
    pub q: Option<Exponent>,
    pub r: Option<Exponent>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub residual: Option<f64>,
    pub pass: bool,
    pub budget_note: String,
}

impl CheckReport {
    fn blank(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            u: None,
            v: None,
            p: None,
            q: None,
            r: None,
            lhs: f64::NAN,
            rhs: f64::NAN,
            ratio: f64::NAN,
            residual: None,
            pass: false,
            budget_note: String::new(),
        }
    }

    /// `lhs <= rhs`: passes iff `lhs/rhs <= 1 + slack`.
    pub fn inequality(check: &str, lhs: f64, rhs: f64, slack: f64) -> Self {
        let ratio = lhs / rhs;
        CheckReport {
            lhs,
            rhs,
            ratio,
            pass: ratio <= 1.0 + slack,
            ..CheckReport::blank(check)
        }
    }

    /// `lhs = rhs` as values: passes iff `|lhs − rhs| <= tol`.
    pub fn identity(check: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let residual = (lhs - rhs).abs();
        CheckReport {
            lhs,
            rhs,
            ratio: lhs / rhs,
            residual: Some(residual),
            pass: residual <= tol,
            ..CheckReport::blank(check)
        }
    }

    /// A precomputed residual: passes iff `residual <= tol`.
    pub fn residual(check: &str, residual: f64, tol: f64) -> Self {
        CheckReport {
            lhs: residual,
            rhs: tol,
            ratio: residual / tol,
            residual: Some(residual),
            pass: residual <= tol,
            ..CheckReport::blank(check)
        }
    }

    /// Equality of norms: passes iff `|lhs/rhs − 1| <= tol`.
    pub fn equality(check: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let ratio = lhs / rhs;
        let residual = (ratio - 1.0).abs();
        CheckReport {
            lhs,
            rhs,
            ratio,
            residual: Some(residual),
            pass: residual <= tol,
            ..CheckReport::blank(check)
        }
    }

    /// A row recording that a check could not run.
    pub fn failure(check: &str, reason: impl Into<String>) -> Self {
        CheckReport {
            budget_note: reason.into(),
            ..CheckReport::blank(check)
        }
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn with_tuple(mut self, e: &ExponentTuple) -> Self {
        self.u = Some(e.u);
        self.v = Some(e.v);
        self.p = Some(e.p);
        self.q = Some(e.q);
        self.r = Some(e.r);
        self
    }

    pub fn with_exponents(
        mut self,
        u: Option<Exponent>,
        v: Option<Exponent>,
        p: Option<Exponent>,
        q: Option<Exponent>,
        r: Option<Exponent>,
    ) -> Self {
        self.u = u;
        self.v = v;
        self.p = p;
        self.q = q;
        self.r = r;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.budget_note.is_empty() {
            self.budget_note = note;
        } else {
            self.budget_note = format!("{}; {}", self.budget_note, note);
        }
        self
    }

    pub fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }

    /// `check,u,v,p,q,r,lhs,rhs,ratio,residual,pass,budget_note`.
    pub fn csv_row(&self) -> String {
        let exp = |k: &Option<Exponent>| k.map(|k| k.to_string()).unwrap_or_default();
        let mut row = String::new();
        let _ = write!(
            row,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&self.check),
            exp(&self.u),
            exp(&self.v),
            exp(&self.p),
            exp(&self.q),
            exp(&self.r),
            self.lhs,
            self.rhs,
            self.ratio,
            self.residual.map(|r| r.to_string()).unwrap_or_default(),
            self.pass,
            csv_field(&self.budget_note),
        );
        row
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Header plus one line per report.
pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for report in reports {
        out.push_str(&report.csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rules() {
        assert!(CheckReport::inequality("x", 1.0, 1.0, 1e-8).pass);
        assert!(!CheckReport::inequality("x", 1.1, 1.0, 1e-8).pass);
        assert!(CheckReport::identity("x", 1.0, 1.0 + 1e-13, 1e-12).pass);
        assert!(!CheckReport::equality("x", 0.9, 1.0, 1e-6).pass);
        assert!(!CheckReport::failure("x", "bad").pass);
    }

    #[test]
    fn csv_layout() {
        let e = ExponentTuple::nelson(2.0, 4.0).unwrap();
        let row = CheckReport::inequality("nelson", 0.5, 1.0, 1e-8)
            .with_tuple(&e)
            .with_note("a, b")
            .csv_row();
        assert_eq!(row, "nelson,3,1.5,2,inf,4,0.5,1,0.5,,true,\"a, b\"");
    }
}
