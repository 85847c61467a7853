//! Command-line front end: run the two-stage bound verification, evaluate
//! shares, estimates, and rule outflows on ad-hoc constellations, check
//! periodic patterns, and emit JSON reports.
//!
//! Exit codes: 0 success/pass, 1 verification failure (a modified share
//! above 35/6 or a non-identifying pattern), 2 usage, parse, or window
//! errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use idcode::codeset::{
    density_lower_bound, parse_pattern, verify_periodic, CodeWindow,
};
use idcode::discharging::{rule_outflow, total_outflow, RuleId};
use idcode::share::{share_estimate, share_exact};
use idcode::verifier::{verify, BaseIset, BaseReport, VerifyOptions};
use idcode::{GridPoint, Rational};

/// Environment variable supplying the default `--jobs` value.
const JOBS_ENV: &str = "IDCODE_JOBS";

#[derive(Parser)]
#[command(name = "idcode", version, about = "Identifying-code toolkit for the square grid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full two-stage verification that every modified share is at
    /// most 35/6.
    #[command(name = "verify-lemma33")]
    VerifyLemma33(VerifyCmd),
    /// Grouped lower estimate of the share of a codeword.
    Estimate(EstimateCmd),
    /// Exact share of a codeword.
    Share(ShareCmd),
    /// Share shifted away from a codeword by the discharging rules.
    Outflow(OutflowCmd),
    /// Check a periodic pattern for the identifying property.
    CheckPattern(CheckPatternCmd),
    /// Codeword density of a periodic pattern.
    Density(DensityCmd),
    /// Closed-form density lower bound on the n-th centered square.
    Bound(BoundCmd),
}

#[derive(Copy, Clone, ValueEnum)]
enum BaseChoice {
    Singleton,
    AxisPair,
    Both,
}

impl BaseChoice {
    fn bases(self) -> Vec<BaseIset> {
        match self {
            BaseChoice::Singleton => vec![BaseIset::Singleton],
            BaseChoice::AxisPair => vec![BaseIset::AxisPair],
            BaseChoice::Both => BaseIset::ALL.to_vec(),
        }
    }
}

#[derive(Args)]
struct VerifyCmd {
    /// Base I-set case to verify.
    #[arg(long, value_enum, default_value = "both")]
    base: BaseChoice,
    /// Worker thread count (default: the IDCODE_JOBS variable if set,
    /// otherwise one thread per core).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file: settled sets are appended and reused on rerun.
    #[arg(long)]
    resume: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateCmd {
    /// Codewords as `x,y;x,y;...`, all within distance 4 of the center.
    #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
    codewords: PointList,
    /// The codeword whose share is estimated, as `x,y`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: GridPoint,
}

#[derive(Args)]
struct ShareCmd {
    /// Codewords as `x,y;x,y;...`, all within the support radius of the
    /// center.
    #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
    codewords: PointList,
    /// Radius of the ball treated as the known window (at least 4).
    #[arg(long, default_value_t = 4)]
    support_radius: u32,
    /// The codeword whose share is computed, as `x,y`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: GridPoint,
}

#[derive(Args)]
struct OutflowCmd {
    /// Codewords as `x,y;x,y;...`, all within distance 6 of the center.
    #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
    codewords: PointList,
    /// The sending codeword, as `x,y`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: GridPoint,
    /// A rule number 1–10, or `all` for the per-rule table and total.
    #[arg(long, value_parser = parse_rule, default_value = "all")]
    rule: RuleChoice,
}

#[derive(Args)]
struct CheckPatternCmd {
    /// Pattern file (`period W H` header, then `#`/`.` rows).
    #[arg(long)]
    file: PathBuf,
    /// Identification radius.
    #[arg(long)]
    r: u32,
}

#[derive(Args)]
struct DensityCmd {
    /// Pattern file (`period W H` header, then `#`/`.` rows).
    #[arg(long)]
    file: PathBuf,
}

#[derive(Args)]
struct BoundCmd {
    /// Half-width of the centered square (at least 3).
    #[arg(long)]
    n: u32,
}

type PointList = Vec<GridPoint>;

fn parse_point(text: &str) -> Result<GridPoint, String> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, got `{text}`"))?;
    let parse = |field: &str, name: &str| -> Result<i64, String> {
        field
            .trim()
            .parse::<i64>()
            .map_err(|_| format!("{name} coordinate `{}` is not an integer", field.trim()))
    };
    GridPoint::checked(parse(x, "x")?, parse(y, "y")?).map_err(|e| e.to_string())
}

fn parse_points(text: &str) -> Result<PointList, String> {
    if text.trim().is_empty() {
        return Err("empty codeword list".into());
    }
    text.split(';').map(|t| parse_point(t.trim())).collect()
}

#[derive(Copy, Clone)]
enum RuleChoice {
    All,
    One(RuleId),
}

fn parse_rule(text: &str) -> Result<RuleChoice, String> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(RuleChoice::All);
    }
    let n: u8 = text
        .parse()
        .map_err(|_| format!("expected a rule number 1-10 or `all`, got `{text}`"))?;
    RuleId::new(n).map(RuleChoice::One).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Runs one command; `Ok(false)` means a verification-level failure.
fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::VerifyLemma33(cmd) => run_verify(cmd),
        Command::Estimate(cmd) => {
            let window = CodeWindow::in_ball(cmd.codewords, cmd.center, 4)
                .map_err(|e| e.to_string())?;
            let value =
                share_estimate(&window, cmd.center, 2).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(true)
        }
        Command::Share(cmd) => {
            let window =
                CodeWindow::in_ball(cmd.codewords, cmd.center, cmd.support_radius)
                    .map_err(|e| e.to_string())?;
            let value =
                share_exact(&window, cmd.center, 2).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(true)
        }
        Command::Outflow(cmd) => {
            let window = CodeWindow::in_ball(cmd.codewords, cmd.center, 6)
                .map_err(|e| e.to_string())?;
            match cmd.rule {
                RuleChoice::One(rule) => {
                    let value = rule_outflow(&window, cmd.center, rule)
                        .map_err(|e| e.to_string())?;
                    println!("{value}");
                }
                RuleChoice::All => {
                    for n in 1..=10u8 {
                        let rule = RuleId::new(n).expect("in range");
                        let value = rule_outflow(&window, cmd.center, rule)
                            .map_err(|e| e.to_string())?;
                        println!("rule {n}: {value}");
                    }
                    let total = total_outflow(&window, cmd.center)
                        .map_err(|e| e.to_string())?;
                    println!("total: {total}");
                }
            }
            Ok(true)
        }
        Command::CheckPattern(cmd) => {
            let code = read_pattern(&cmd.file)?;
            let verdict =
                verify_periodic(&code, cmd.r).map_err(|e| e.to_string())?;
            match verdict.witness() {
                None => {
                    println!(
                        "pattern is identifying for r = {} (density {})",
                        cmd.r,
                        code.density()
                    );
                    Ok(true)
                }
                Some(witness) => {
                    println!(
                        "pattern is not identifying for r = {}: {witness}",
                        cmd.r
                    );
                    Ok(false)
                }
            }
        }
        Command::Density(cmd) => {
            let code = read_pattern(&cmd.file)?;
            println!("{}", code.density());
            Ok(true)
        }
        Command::Bound(cmd) => {
            let value = density_lower_bound(cmd.n).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(true)
        }
    }
}

fn read_pattern(path: &std::path::Path) -> Result<idcode::codeset::PeriodicCode, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_pattern(&text).map_err(|e| e.to_string())
}

fn run_verify(cmd: VerifyCmd) -> Result<bool, String> {
    let jobs = match cmd.jobs {
        Some(n) => Some(n),
        None => match std::env::var(JOBS_ENV) {
            Ok(raw) => Some(raw.parse::<usize>().map_err(|_| {
                format!("{JOBS_ENV} must be a positive integer, got `{raw}`")
            })?),
            Err(_) => None,
        },
    };
    let options = VerifyOptions {
        bases: cmd.base.bases(),
        jobs,
        checkpoint: cmd.resume.clone(),
        ..VerifyOptions::default()
    };
    let verification = verify(&options).map_err(|e| e.to_string())?;
    for report in &verification.reports {
        println!("{}", summarize(report));
    }
    println!(
        "verdict: {}",
        if verification.verdict { "pass" } else { "fail" }
    );
    if let Some(path) = &cmd.out {
        let mut text = serde_json::to_string_pretty(&verification.to_json())
            .expect("report serializes");
        text.push('\n');
        std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(verification.verdict)
}

fn summarize(report: &BaseReport) -> String {
    let max = report
        .results
        .iter()
        .filter_map(|r| r.max_share)
        .max()
        .map_or_else(|| "none".to_owned(), |m: Rational| m.to_string());
    let mut line = String::new();
    write!(
        line,
        "base {}: {} problem sets, {} settled, {} cases examined, \
         {} vacuous, max modified share {}, verdict {}, {:.1}s",
        report.base.label(),
        report.problem_sets.len(),
        report.results.len(),
        report.cases_examined,
        report.vacuous_sets,
        max,
        if report.verdict { "pass" } else { "fail" },
        report.wall_time_s,
    )
    .expect("writing to a string cannot fail");
    line
}
