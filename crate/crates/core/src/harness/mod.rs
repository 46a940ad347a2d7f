//! Verification suites and structured output.
//!
//! Each suite returns a [`VerificationReport`]: a list of named checks with a
//! pass/fail status and, on failure, the two sides that disagreed.

mod suites;

use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::combinat::Basis;
use crate::linalg::Matrix;
use crate::polyring::{format_rational, Coeff};

pub use suites::{
    verify_all, verify_conjecture1, verify_lemma_suite, verify_matrix_suite, verify_recurrences,
    verify_rs, verify_summation, summation_weights, DEFAULT_T_SAMPLES,
};

/// Largest sizes enumerated without `--force`.
pub const TRIANGLE_LIMIT: usize = 4;
pub const SQUARE_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("{what} at n={n} is beyond the default limit n={limit} (estimated {estimate}); pass --force to run it")]
    CostGuard {
        what: &'static str,
        n: usize,
        limit: usize,
        estimate: String,
    },
    #[error("invalid input: {0}")]
    Usage(String),
}

/// Refuses an enumeration above `limit` unless forced.
pub fn cost_guard(what: &'static str, n: usize, limit: usize, force: bool) -> Result<(), HarnessError> {
    if n <= limit || force {
        return Ok(());
    }
    Err(HarnessError::CostGuard {
        what,
        n,
        limit,
        estimate: estimate_cost(what, n),
    })
}

/// Rough size of the search, from the known growth of the counts.
pub fn estimate_cost(what: &str, n: usize) -> String {
    match what {
        "square enumeration" => {
            let asm: [u64; 8] = [1, 1, 2, 7, 42, 429, 7436, 218348];
            match asm.get(n) {
                Some(a) => format!("{a} configurations"),
                None => "more than 10^8 configurations".into(),
            }
        }
        // Measured on one core: well under a second at n = 3, about two and a half
        // minutes at n = 4; each further step costs several hundred times more.
        _ => match n {
            0..=3 => "under a second".into(),
            4 => "about 3 CPU minutes".into(),
            _ => format!("roughly {} CPU days", 500usize.pow(n as u32 - 5).max(1)),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    pub t: String,
    pub checks: Vec<Check>,
    pub duration: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, n: usize, t: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            n,
            t: t.to_string(),
            checks: Vec::new(),
            duration: Duration::ZERO,
        }
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.push(id.into(), Status::Pass, None, None);
    }

    pub fn skip(&mut self, id: impl Into<String>, reason: &str) {
        self.push(id.into(), Status::Skipped, Some(reason.to_string()), None);
    }

    pub fn fail(&mut self, id: impl Into<String>, lhs: String, rhs: String) {
        self.push(id.into(), Status::Fail, Some(lhs), Some(rhs));
    }

    fn push(&mut self, id: String, status: Status, lhs: Option<String>, rhs: Option<String>) {
        self.checks.push(Check { id, status, lhs, rhs });
    }

    /// Records whether `lhs == rhs`, keeping both sides on failure.
    pub fn check_eq<T: PartialEq + fmt::Debug>(&mut self, id: impl Into<String>, lhs: &T, rhs: &T) {
        if lhs == rhs {
            self.pass(id);
        } else {
            self.fail(id, format!("{lhs:?}"), format!("{rhs:?}"));
        }
    }

    /// Like [`check_eq`](Self::check_eq) for vectors of ring elements, printed in decimal.
    pub fn check_vec<R: Coeff>(&mut self, id: impl Into<String>, lhs: &[R], rhs: &[R]) {
        if lhs == rhs {
            self.pass(id);
        } else {
            self.fail(id, show_vec(lhs), show_vec(rhs));
        }
    }

    /// Matrix equality; a failure records the first differing entry and both matrices.
    pub fn check_matrix<R: Coeff>(&mut self, id: impl Into<String>, lhs: &Matrix<R>, rhs: &Matrix<R>) {
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            self.fail(
                id,
                format!("{}x{} matrix", lhs.rows(), lhs.cols()),
                format!("{}x{} matrix", rhs.rows(), rhs.cols()),
            );
            return;
        }
        match lhs.first_difference(rhs) {
            None => self.pass(id),
            Some((r, c, a, b)) => self.fail(
                id,
                format!("[{r}][{c}] = {a}\n{lhs}"),
                format!("[{r}][{c}] = {b}\n{rhs}"),
            ),
        }
    }

    pub fn check_true(&mut self, id: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(id);
        } else {
            self.fail(id, detail(), "true".into());
        }
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        let prefix = other.suite.clone();
        for mut c in other.checks {
            c.id = format!("{prefix}/{}", c.id);
            self.checks.push(c);
        }
        self.duration += other.duration;
    }

    /// Sorts checks by id so that output does not depend on scheduling.
    pub fn finish(mut self, duration: Duration) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.duration = duration;
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self, basis: &Basis) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({"id": c.id, "status": c.status.to_string()});
                if let Some(l) = &c.lhs {
                    v["lhs"] = json!(l);
                }
                if let Some(r) = &c.rhs {
                    v["rhs"] = json!(r);
                }
                v
            })
            .collect();
        envelope(
            self.n,
            &self.t,
            basis,
            json!({
                "suite": self.suite,
                "passed": self.passed(),
                "duration_ms": self.duration.as_millis().to_string(),
                "checks": checks,
            }),
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} n={} t={}: {} passed, {} failed, {} skipped in {:.2?}",
            self.suite,
            self.n,
            self.t,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.duration
        )?;
        for c in &self.checks {
            match c.status {
                Status::Pass => {}
                Status::Skipped => writeln!(f, "  skipped {}: {}", c.id, c.lhs.as_deref().unwrap_or(""))?,
                Status::Fail => {
                    writeln!(f, "  FAIL {}", c.id)?;
                    writeln!(f, "    lhs: {}", c.lhs.as_deref().unwrap_or(""))?;
                    writeln!(f, "    rhs: {}", c.rhs.as_deref().unwrap_or(""))?;
                }
            }
        }
        Ok(())
    }
}

pub fn show_vec<R: Coeff>(v: &[R]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn t_label(t: &BigRational) -> String {
    format_rational(t)
}

/// `{"n", "t", "basis", "data"}`, the common shape of all JSON output.
pub fn envelope(n: usize, t: &str, basis: &Basis, data: Value) -> Value {
    json!({
        "n": n,
        "t": t,
        "basis": basis.labels(),
        "data": data,
    })
}

pub fn vector_json<R: Coeff>(v: &[R]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix_json<R: Coeff>(m: &Matrix<R>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(m.row(r))).collect())
}

/// Reads a matrix written by [`matrix_json`].
pub fn matrix_from_json(v: &Value) -> Result<Matrix<BigRational>, HarnessError> {
    let rows = v
        .as_array()
        .ok_or_else(|| HarnessError::Usage("matrix must be an array of rows".into()))?;
    let parsed = rows
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.iter().any(|r| r.len() != parsed[0].len()) {
        return Err(HarnessError::Usage("ragged matrix".into()));
    }
    Ok(Matrix::from_rows(parsed))
}

pub fn vector_from_json(v: &Value) -> Result<Vec<BigRational>, HarnessError> {
    let items = v
        .as_array()
        .ok_or_else(|| HarnessError::Usage("vector must be an array".into()))?;
    items
        .iter()
        .map(|x| {
            x.as_str()
                .and_then(crate::polyring::parse_rational)
                .ok_or_else(|| HarnessError::Usage(format!("not a decimal string: {x}")))
        })
        .collect()
}

pub fn bigint_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}
