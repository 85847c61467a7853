//! Verifier I/O contracts: byte-determinism of reports across worker
//! counts, checkpoint resume, checkpoint rejection, and agreement between
//! the sweep and an independent general-path recomputation.

use idcode::codeset::{is_identifying_on, CodeWindow};
use idcode::discharging::total_outflow;
use idcode::share::share_exact;
use idcode::verifier::{
    ring4_order, stage1, stage2, verify, BaseIset, ProblemSet, VerifyOptions,
};
use idcode::{ball, GridPoint, Metric, Rational};
use rayon::prelude::*;
use serde_json::Value;

/// Serialized report with every hardware-dependent field cleared.
fn stable_bytes(report: &idcode::verifier::Verification) -> String {
    let mut json = report.to_json();
    for entry in json["reports"].as_array_mut().expect("reports array") {
        entry["wall_time_s"] = Value::from(0.0);
    }
    serde_json::to_string(&json).expect("serializable")
}

#[test]
fn report_bytes_identical_across_jobs() {
    let run = |jobs: usize| {
        let options = VerifyOptions {
            bases: vec![BaseIset::AxisPair],
            jobs: Some(jobs),
            ..VerifyOptions::default()
        };
        verify(&options).expect("well-formed run")
    };
    let one = run(1);
    let two = run(2);
    assert!(one.verdict);
    assert_eq!(stable_bytes(&one), stable_bytes(&two));
}

#[test]
fn resume_completes_partial_checkpoint() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("progress.jsonl");
    let options = |checkpoint| VerifyOptions {
        bases: vec![BaseIset::AxisPair],
        checkpoint,
        ..VerifyOptions::default()
    };

    let full = verify(&options(Some(path.clone()))).expect("well-formed run");
    let lines: Vec<String> = std::fs::read_to_string(&path)
        .expect("checkpoint written")
        .lines()
        .map(str::to_owned)
        .collect();
    assert_eq!(lines.len(), full.reports[0].results.len());

    // Keep only the first ten settled sets, as if the run had been
    // interrupted, then resume.
    std::fs::write(&path, lines[..10].join("\n") + "\n").expect("truncate");
    let resumed = verify(&options(Some(path.clone()))).expect("well-formed run");
    let fresh = verify(&options(None)).expect("well-formed run");
    assert_eq!(stable_bytes(&resumed), stable_bytes(&fresh));

    // The resumed run recomputed (and appended) exactly the missing sets.
    let after: usize = std::fs::read_to_string(&path)
        .expect("checkpoint intact")
        .lines()
        .count();
    assert_eq!(after, lines.len());
}

#[test]
fn corrupt_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("progress.jsonl");
    std::fs::write(&path, "{\"base\":\"singleton\",\"set_index\":true}\n")
        .expect("write garbage");
    let options = VerifyOptions {
        bases: vec![BaseIset::Singleton],
        checkpoint: Some(path),
        ..VerifyOptions::default()
    };
    assert!(verify(&options).is_err());
}

/// Recomputes one problem set's sweep through the public general-purpose
/// API: enumerate all outer-ring subsets, keep candidates identifying on
/// the radius-2 ball, and take the max modified share.
fn general_path_max(problem: &ProblemSet) -> (Option<Rational>, u64) {
    let ring4 = ring4_order();
    let d: Vec<GridPoint> = problem.codewords.iter().collect();
    let targets = ball(Metric::Manhattan, 2, GridPoint::ORIGIN)
        .expect("radius within bounds");
    let shares: Vec<Rational> = (0u32..1 << 16)
        .into_par_iter()
        .filter_map(|mask| {
            let mut points = d.clone();
            points.extend(
                (0..16usize).filter(|j| mask >> j & 1 == 1).map(|j| ring4[j]),
            );
            let code = CodeWindow::in_ball(points, GridPoint::ORIGIN, 4)
                .expect("candidates lie inside the window");
            if !is_identifying_on(&code, &targets, 2)
                .expect("window is wide enough")
                .ok()
            {
                return None;
            }
            let share = share_exact(&code, GridPoint::ORIGIN, 2)
                .expect("identifying implies covered");
            let outflow = total_outflow(&code, GridPoint::ORIGIN)
                .expect("window is wide enough");
            Some(share - outflow)
        })
        .collect();
    (shares.iter().copied().max(), shares.len() as u64)
}

#[test]
fn sweep_matches_general_path_on_selected_sets() {
    let singleton = stage1(BaseIset::Singleton);
    let axis = stage1(BaseIset::AxisPair);
    let picks = [
        (BaseIset::Singleton, &singleton[0]),
        (BaseIset::Singleton, &singleton[104]),
        (BaseIset::Singleton, &singleton[208]),
        (BaseIset::AxisPair, &axis[0]),
        (BaseIset::AxisPair, &axis[34]),
    ];
    for (base, problem) in picks {
        let outcome = stage2(problem, base).expect("well-formed problem set");
        let (naive_max, naive_count) = general_path_max(problem);
        assert_eq!(outcome.max_share(), naive_max, "max for {problem:?}");
        assert_eq!(
            outcome.valid_candidates(),
            naive_count,
            "candidate count for {problem:?}"
        );
    }
}
