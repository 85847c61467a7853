//! JSON form of a [`Verification`].
//!
//! Schema (version 1):
//!
//! ```json
//! {
//!   "schema": 1,
//!   "verdict": "pass" | "fail",
//!   "ring3_order": [[x, y], ...12],
//!   "ring4_order": [[x, y], ...16],
//!   "reports": [{
//!     "base": "singleton" | "axis-pair",
//!     "problem_set_count": N,
//!     "problem_sets": [[[x, y], ...], ...],
//!     "results": [{"set_index": i, "max_share": "p/q" | null,
//!                  "valid_candidates": N}, ...],
//!     "cases_examined": N,
//!     "vacuous_sets": N,
//!     "verdict": "pass" | "fail",
//!     "wall_time_s": S
//!   }, ...]
//! }
//! ```
//!
//! Identical inputs produce byte-identical documents except for
//! `wall_time_s`. Problem sets list their codewords in `(y, x)` ascending
//! order; the ring orders define subset-mask bit positions.

use super::{ring3_order, ring4_order, BaseReport, Verification};
use serde_json::{json, Value};

fn verdict_str(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn points_json(points: impl IntoIterator<Item = crate::lattice::GridPoint>) -> Value {
    Value::Array(
        points
            .into_iter()
            .map(|p| json!([p.x, p.y]))
            .collect(),
    )
}

fn base_report_json(report: &BaseReport) -> Value {
    let problem_sets: Vec<Value> = report
        .problem_sets
        .iter()
        .map(|p| points_json(p.codewords.iter()))
        .collect();
    let results: Vec<Value> = report
        .results
        .iter()
        .map(|r| {
            let max_share = match r.max_share {
                Some(m) => Value::String(m.to_string()),
                None => Value::Null,
            };
            json!({
                "set_index": r.set_index,
                "max_share": max_share,
                "valid_candidates": r.valid_candidates,
            })
        })
        .collect();
    json!({
        "base": report.base.label(),
        "problem_set_count": report.problem_sets.len(),
        "problem_sets": problem_sets,
        "results": results,
        "cases_examined": report.cases_examined,
        "vacuous_sets": report.vacuous_sets,
        "verdict": verdict_str(report.verdict),
        "wall_time_s": report.wall_time_s,
    })
}

impl Verification {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "verdict": verdict_str(self.verdict),
            "ring3_order": points_json(ring3_order()),
            "ring4_order": points_json(ring4_order()),
            "reports": self.reports.iter().map(base_report_json).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{BaseIset, ProblemSet, SetResult};
    use super::*;
    use crate::lattice::{GridPoint, Region};
    use crate::rat;

    #[test]
    fn report_shape() {
        let verification = Verification {
            reports: vec![BaseReport {
                base: BaseIset::Singleton,
                problem_sets: vec![ProblemSet {
                    codewords: Region::from_points([
                        GridPoint::new(0, 0),
                        GridPoint::new(0, 3),
                    ]),
                    estimate: rat(6, 1),
                }],
                results: vec![SetResult {
                    set_index: 0,
                    max_share: Some(rat(35, 6)),
                    valid_candidates: 42,
                }],
                cases_examined: 1 << 16,
                vacuous_sets: 0,
                verdict: true,
                wall_time_s: 0.25,
            }],
            verdict: true,
        };
        let json = verification.to_json();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["verdict"], "pass");
        assert_eq!(json["ring3_order"].as_array().unwrap().len(), 12);
        assert_eq!(json["ring4_order"].as_array().unwrap().len(), 16);
        let report = &json["reports"][0];
        assert_eq!(report["base"], "singleton");
        assert_eq!(report["problem_set_count"], 1);
        assert_eq!(report["problem_sets"][0], json!([[0, 0], [0, 3]]));
        assert_eq!(report["results"][0]["max_share"], "35/6");
        assert_eq!(report["results"][0]["valid_candidates"], 42);
        assert_eq!(report["vacuous_sets"], 0);
        assert_eq!(report["cases_examined"], 65536);
    }
}
