use std::fmt::Write as _;
use std::time::Duration;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::series::format_exact_number;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// First failing position of a check.
///
/// For progression checks `n` is the progression index and `index` the
/// coefficient position `An + B`; for identities both are the exponent.
/// `residue` is the offending coefficient (vanishing checks) or the
/// difference of the two sides, reduced mod the modulus when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: u64,
    pub index: u64,
    pub residue: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub status: Status,
    pub order_used: usize,
    pub range_checked: u64,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl Report {
    pub(crate) fn finish(
        id: &str,
        order_used: usize,
        range_checked: u64,
        counterexample: Option<Counterexample>,
        elapsed: Duration,
    ) -> Report {
        let status = if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        Report {
            id: id.to_string(),
            status,
            order_used,
            range_checked,
            counterexample,
            elapsed,
        }
    }

    pub(crate) fn skipped(id: &str, order_used: usize, elapsed: Duration) -> Report {
        Report {
            id: id.to_string(),
            status: Status::Skipped,
            order_used,
            range_checked: 0,
            counterexample: None,
            elapsed,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let counterexample = match &self.counterexample {
            Some(c) => json!({
                "n": c.n,
                "index": c.index,
                "residue": format_exact_number(&c.residue),
            }),
            None => Value::Null,
        };
        json!({
            "id": self.id,
            "status": self.status.as_str(),
            "order": self.order_used,
            "range_checked": self.range_checked,
            "counterexample": counterexample,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }

    /// Inverse of [`Report::to_json`]; `None` when a field is missing or
    /// has the wrong shape.
    pub fn from_json(value: &Value) -> Option<Report> {
        let status = match value.get("status")?.as_str()? {
            "pass" => Status::Pass,
            "fail" => Status::Fail,
            "skipped" => Status::Skipped,
            _ => return None,
        };
        let counterexample = match value.get("counterexample")? {
            Value::Null => None,
            c => Some(Counterexample {
                n: c.get("n")?.as_u64()?,
                index: c.get("index")?.as_u64()?,
                residue: c.get("residue")?.as_number()?.to_string().parse().ok()?,
            }),
        };
        Some(Report {
            id: value.get("id")?.as_str()?.to_string(),
            status,
            order_used: value.get("order")?.as_u64()? as usize,
            range_checked: value.get("range_checked")?.as_u64()?,
            counterexample,
            elapsed: Duration::from_millis(value.get("elapsed_ms")?.as_u64()?),
        })
    }
}

pub fn reports_to_json(reports: &[Report]) -> Value {
    Value::Array(reports.iter().map(Report::to_json).collect())
}

/// Fixed-width table, one row per report, plus a summary line.
pub fn render_table(reports: &[Report]) -> String {
    let id_width = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<id_width$}  {:<7}  {:>6}  {:>7}  {:>8}  counterexample",
        "id", "status", "order", "checked", "ms"
    );
    for r in reports {
        let cex = match &r.counterexample {
            Some(c) => format!("n={} index={} residue={}", c.n, c.index, c.residue),
            None => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "{:<id_width$}  {:<7}  {:>6}  {:>7}  {:>8}  {}",
            r.id,
            r.status.as_str().to_uppercase(),
            r.order_used,
            r.range_checked,
            r.elapsed.as_millis(),
            cex
        );
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let max_order = reports.iter().map(|r| r.order_used).max().unwrap_or(0);
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} skipped; verified to truncation order (max {max_order}), not proved",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(counterexample: Option<Counterexample>) -> Report {
        Report::finish("THM_1_2", 100, 20, counterexample, Duration::from_millis(3))
    }

    #[test]
    fn status_follows_counterexample() {
        assert_eq!(sample(None).status, Status::Pass);
        let fail = sample(Some(Counterexample {
            n: 0,
            index: 2,
            residue: BigInt::from(1),
        }));
        assert_eq!(fail.status, Status::Fail);
    }

    #[test]
    fn json_shape_and_round_trip() {
        let r = sample(Some(Counterexample {
            n: 0,
            index: 2,
            residue: "-98765432109876543210".parse().unwrap(),
        }));
        let v = r.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"counterexample":{"index":2,"n":0,"residue":-98765432109876543210},"elapsed_ms":3,"id":"THM_1_2","order":100,"range_checked":20,"status":"fail"}"#
        );
        assert_eq!(Report::from_json(&v), Some(r));
        let ok = sample(None);
        assert_eq!(ok.to_json()["counterexample"], Value::Null);
        assert_eq!(Report::from_json(&ok.to_json()), Some(ok));
    }

    #[test]
    fn table_mentions_every_report() {
        let t = render_table(&[sample(None), Report::skipped("X", 5, Duration::ZERO)]);
        assert!(t.contains("THM_1_2  PASS"));
        assert!(t.contains("1 passed, 0 failed, 1 skipped"));
    }
}
