//! Two-stage exhaustive check that a non-receiving codeword's modified
//! share stays within 35/6.
//!
//! Setting: a codeword sits at the origin, its radius-2 I-set is one of
//! the two canonical base cases, and no rule shifts share *to* it. Stage 1
//! enumerates all 2¹² subsets of the ring at distance 3 and keeps each
//! whose grouped share estimate still exceeds 35/6 after it identifies the
//! radius-1 ball — the *problem sets* that estimation alone cannot settle.
//! Stage 2 settles each one: over all 2¹⁶ subsets of the ring at distance
//! 4, every candidate code identifying the radius-2 ball must have
//! share − outflow ≤ 35/6.
//!
//! Ring vertices are ordered by `(y, x)` ascending; subset masks assign
//! bit `j` to the `j`-th ring vertex. Reports record both orderings.

mod report;
mod window;

use crate::codeset::{is_identifying_on, CodeWindow};
use crate::discharging::RuleSet;
use crate::error::{Error, Result};
use crate::lattice::{ball, GridPoint, Metric, Region};
use crate::share::share_estimate;
use crate::{rat, Rational};
use rayon::prelude::*;
use std::collections::HashMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use window::{CompiledRules, Window};

/// The two canonical radius-2 I-sets of the examined codeword.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BaseIset {
    /// `I_2 = {(0,0)}`: the codeword sees only itself.
    Singleton,
    /// `I_2 = {(0,0), (2,0)}`: one extra codeword on the axis at distance 2.
    AxisPair,
}

const SINGLETON_POINTS: [GridPoint; 1] = [GridPoint { x: 0, y: 0 }];
const AXIS_PAIR_POINTS: [GridPoint; 2] = [GridPoint { x: 0, y: 0 }, GridPoint { x: 2, y: 0 }];

impl BaseIset {
    pub const ALL: [BaseIset; 2] = [BaseIset::Singleton, BaseIset::AxisPair];

    pub fn points(self) -> &'static [GridPoint] {
        match self {
            BaseIset::Singleton => &SINGLETON_POINTS,
            BaseIset::AxisPair => &AXIS_PAIR_POINTS,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BaseIset::Singleton => "singleton",
            BaseIset::AxisPair => "axis-pair",
        }
    }

    pub fn from_label(label: &str) -> Option<BaseIset> {
        BaseIset::ALL.into_iter().find(|b| b.label() == label)
    }
}

impl std::fmt::Display for BaseIset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A stage-1 survivor: base ∪ ring-3 subset whose estimate exceeds 35/6.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProblemSet {
    /// The codewords, base points included.
    pub codewords: Region,
    /// Its grouped share estimate (exceeds 35/6 by construction).
    pub estimate: Rational,
}

/// Inner-ring vertices (distance 3), in mask-bit order.
pub fn ring3_order() -> Vec<GridPoint> {
    Window::new()
        .ring3()
        .iter()
        .map(|&(x, y)| GridPoint::new(x, y))
        .collect()
}

/// Outer-ring vertices (distance 4), in mask-bit order.
pub fn ring4_order() -> Vec<GridPoint> {
    Window::new()
        .ring4()
        .iter()
        .map(|&(x, y)| GridPoint::new(x, y))
        .collect()
}

fn pass_bound() -> Rational {
    rat(35, 6)
}

/// Enumerates the 2¹² inner-ring subsets and returns the problem sets,
/// sorted by their codeword regions.
pub fn stage1(base: BaseIset) -> Vec<ProblemSet> {
    let w = Window::new();
    let support =
        ball(Metric::Manhattan, 4, GridPoint::ORIGIN).expect("radius within bounds");
    let targets =
        ball(Metric::Manhattan, 1, GridPoint::ORIGIN).expect("radius within bounds");
    let bound = pass_bound();
    let mut out = Vec::new();
    for mask in 0u16..1 << 12 {
        let mut points: Vec<GridPoint> = base.points().to_vec();
        points.extend(w.points_of(w.spread_ring3(mask)));
        let codewords = Region::from_points(points);
        let code = CodeWindow::new(codewords.clone(), support.clone())
            .expect("ring points lie inside the window");
        if !is_identifying_on(&code, &targets, 2)
            .expect("support covers every needed ball")
            .ok()
        {
            continue;
        }
        let estimate = share_estimate(&code, GridPoint::ORIGIN, 2)
            .expect("origin is a codeword and the window is wide enough");
        if estimate > bound {
            out.push(ProblemSet {
                codewords,
                estimate,
            });
        }
    }
    out.sort_by(|a, b| a.codewords.cmp(&b.codewords));
    out
}

/// Outcome of settling one problem set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stage2Outcome {
    /// At least one outer-ring extension identified the radius-2 ball.
    Max {
        max_share: Rational,
        valid_candidates: u64,
    },
    /// No extension was identifying; nothing to bound, counts as a pass.
    Vacuous,
}

impl Stage2Outcome {
    pub fn max_share(&self) -> Option<Rational> {
        match *self {
            Stage2Outcome::Max { max_share, .. } => Some(max_share),
            Stage2Outcome::Vacuous => None,
        }
    }

    pub fn valid_candidates(&self) -> u64 {
        match *self {
            Stage2Outcome::Max {
                valid_candidates, ..
            } => valid_candidates,
            Stage2Outcome::Vacuous => 0,
        }
    }

    pub fn passes(&self) -> bool {
        self.max_share().is_none_or(|m| m <= pass_bound())
    }
}

fn malformed(reason: impl Into<String>) -> Error {
    Error::MalformedProblemSet {
        reason: reason.into(),
    }
}

fn validate_problem(problem: &ProblemSet, base: BaseIset) -> Result<()> {
    let base_region = Region::from_points(base.points().iter().copied());
    if !base_region.is_subset_of(&problem.codewords) {
        return Err(malformed(format!("missing the {base} base points")));
    }
    for p in problem.codewords.difference(&base_region).iter() {
        if p.x.abs() + p.y.abs() != 3 {
            return Err(malformed(format!(
                "{p} is neither a base point nor on the distance-3 ring"
            )));
        }
    }
    let support =
        ball(Metric::Manhattan, 4, GridPoint::ORIGIN).expect("radius within bounds");
    let targets =
        ball(Metric::Manhattan, 1, GridPoint::ORIGIN).expect("radius within bounds");
    let code = CodeWindow::new(problem.codewords.clone(), support)
        .expect("validated points lie inside the window");
    if !is_identifying_on(&code, &targets, 2)?.ok() {
        return Err(malformed("set does not identify the radius-1 ball"));
    }
    let estimate = share_estimate(&code, GridPoint::ORIGIN, 2)?;
    if estimate != problem.estimate {
        return Err(malformed(format!(
            "stored estimate {} differs from recomputed {estimate}",
            problem.estimate
        )));
    }
    if estimate <= pass_bound() {
        return Err(malformed(format!(
            "estimate {estimate} does not exceed {}",
            pass_bound()
        )));
    }
    Ok(())
}

fn sweep(compiled: &CompiledRules, w: &Window, d_mask: u64) -> Stage2Outcome {
    let mut best: Option<i64> = None;
    let mut valid = 0u64;
    for subset in 0..=u16::MAX {
        let k = d_mask | w.spread_ring4(subset);
        if let Some(num) = compiled.evaluate(k) {
            valid += 1;
            best = Some(best.map_or(num, |b| b.max(num)));
        }
    }
    match best {
        Some(num) => Stage2Outcome::Max {
            max_share: Rational::new(num as i128, compiled.denom() as i128),
            valid_candidates: valid,
        },
        None => Stage2Outcome::Vacuous,
    }
}

/// Settles one problem set with a custom rule set.
pub fn stage2_with(
    problem: &ProblemSet,
    base: BaseIset,
    rules: &RuleSet,
) -> Result<Stage2Outcome> {
    validate_problem(problem, base)?;
    let w = Window::new();
    let compiled = CompiledRules::new(rules, &w)?;
    let d_mask = w.mask_of(problem.codewords.iter())?;
    Ok(sweep(&compiled, &w, d_mask))
}

/// Settles one problem set with the standard rules.
pub fn stage2(problem: &ProblemSet, base: BaseIset) -> Result<Stage2Outcome> {
    stage2_with(problem, base, &RuleSet::standard())
}

/// Stage-2 result for one problem set, as reported.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetResult {
    pub set_index: usize,
    /// `None` marks a vacuous set.
    pub max_share: Option<Rational>,
    pub valid_candidates: u64,
}

impl SetResult {
    pub fn passes(&self) -> bool {
        self.max_share.is_none_or(|m| m <= pass_bound())
    }
}

/// Options for [`verify`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub bases: Vec<BaseIset>,
    pub rules: RuleSet,
    /// Worker thread count; `None` uses the global default.
    pub jobs: Option<usize>,
    /// Append completed sets to this file and reuse any already present.
    /// Only meaningful across runs with identical configuration.
    pub checkpoint: Option<PathBuf>,
    /// Abandon remaining sets once one fails. The report then covers only
    /// the completed sets; reports meant to be reproducible byte-for-byte
    /// must not use this.
    pub fail_fast: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bases: BaseIset::ALL.to_vec(),
            rules: RuleSet::standard(),
            jobs: None,
            checkpoint: None,
            fail_fast: false,
        }
    }
}

/// Everything verified for one base case.
#[derive(Clone, Debug)]
pub struct BaseReport {
    pub base: BaseIset,
    pub problem_sets: Vec<ProblemSet>,
    /// One entry per settled set, in set order; shorter than
    /// `problem_sets` only after a fail-fast stop.
    pub results: Vec<SetResult>,
    /// Outer-ring subsets enumerated: settled sets × 2¹⁶.
    pub cases_examined: u64,
    pub vacuous_sets: u64,
    pub verdict: bool,
    pub wall_time_s: f64,
}

/// The full run: one report per requested base.
#[derive(Clone, Debug)]
pub struct Verification {
    pub reports: Vec<BaseReport>,
    pub verdict: bool,
}

type ResumeMap = HashMap<(BaseIset, usize), SetResult>;

fn checkpoint_line(base: BaseIset, result: &SetResult) -> String {
    let max_share = match result.max_share {
        Some(m) => serde_json::Value::String(m.to_string()),
        None => serde_json::Value::Null,
    };
    serde_json::json!({
        "base": base.label(),
        "set_index": result.set_index,
        "max_share": max_share,
        "valid_candidates": result.valid_candidates,
    })
    .to_string()
}

fn read_checkpoint(path: &std::path::Path) -> Result<ResumeMap> {
    let text = std::fs::read_to_string(path)?;
    let mut map = ResumeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| {
            Error::Checkpoint(format!(
                "line {}: {what}: {line}",
                lineno + 1
            ))
        };
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|_| bad("not valid JSON"))?;
        let base = value["base"]
            .as_str()
            .and_then(BaseIset::from_label)
            .ok_or_else(|| bad("unknown base"))?;
        let set_index = value["set_index"]
            .as_u64()
            .ok_or_else(|| bad("missing set_index"))? as usize;
        let max_share = match &value["max_share"] {
            serde_json::Value::Null => None,
            serde_json::Value::String(s) => {
                Some(Rational::from_str(s).map_err(|_| bad("unparsable max_share"))?)
            }
            _ => return Err(bad("malformed max_share")),
        };
        let valid_candidates = value["valid_candidates"]
            .as_u64()
            .ok_or_else(|| bad("missing valid_candidates"))?;
        map.insert(
            (base, set_index),
            SetResult {
                set_index,
                max_share,
                valid_candidates,
            },
        );
    }
    Ok(map)
}

fn run_base(
    base: BaseIset,
    options: &VerifyOptions,
    resume: &ResumeMap,
    writer: &Option<Mutex<std::fs::File>>,
) -> Result<BaseReport> {
    let start = Instant::now();
    let problem_sets = stage1(base);
    let w = Window::new();
    let compiled = CompiledRules::new(&options.rules, &w)?;
    let stop = AtomicBool::new(false);
    let settle_one = |i: usize| -> Result<Option<SetResult>> {
        if options.fail_fast && stop.load(Ordering::Relaxed) {
            return Ok(None);
        }
        let result = match resume.get(&(base, i)) {
            Some(stored) => stored.clone(),
            None => {
                let d_mask = w.mask_of(problem_sets[i].codewords.iter())?;
                let outcome = sweep(&compiled, &w, d_mask);
                let result = SetResult {
                    set_index: i,
                    max_share: outcome.max_share(),
                    valid_candidates: outcome.valid_candidates(),
                };
                if let Some(writer) = writer {
                    let line = checkpoint_line(base, &result);
                    let mut file = writer
                        .lock()
                        .map_err(|_| Error::Checkpoint("writer lock poisoned".into()))?;
                    writeln!(file, "{line}")?;
                }
                result
            }
        };
        if options.fail_fast && !result.passes() {
            stop.store(true, Ordering::Relaxed);
        }
        Ok(Some(result))
    };
    let raw: Vec<Option<SetResult>> = (0..problem_sets.len())
        .into_par_iter()
        .map(settle_one)
        .collect::<Result<_>>()?;
    let results: Vec<SetResult> = raw.into_iter().flatten().collect();
    let vacuous_sets = results.iter().filter(|r| r.max_share.is_none()).count() as u64;
    let cases_examined = results.len() as u64 * (1 << 16);
    let verdict =
        results.len() == problem_sets.len() && results.iter().all(SetResult::passes);
    Ok(BaseReport {
        base,
        problem_sets,
        results,
        cases_examined,
        vacuous_sets,
        verdict,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Runs stage 1 and stage 2 for every requested base.
pub fn verify(options: &VerifyOptions) -> Result<Verification> {
    let resume = match &options.checkpoint {
        Some(path) if path.exists() => read_checkpoint(path)?,
        _ => ResumeMap::new(),
    };
    let writer = match &options.checkpoint {
        Some(path) => Some(Mutex::new(
            std::fs::OpenOptions::new()
                .append(true)
                .create(true)
                .open(path)?,
        )),
        None => None,
    };
    let run = || -> Result<Vec<BaseReport>> {
        options
            .bases
            .iter()
            .map(|&base| run_base(base, options, &resume, &writer))
            .collect()
    };
    let reports = match options.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter {
                reason: format!("cannot build a {n}-thread pool: {e}"),
            })?
            .install(run),
        None => run(),
    }?;
    let verdict = reports.iter().all(|r| r.verdict);
    Ok(Verification { reports, verdict })
}

/// [`verify`] with default options: both bases, standard rules.
pub fn verify_standard() -> Result<Verification> {
    verify(&VerifyOptions::default())
}
