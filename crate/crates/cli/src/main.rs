use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use pte_core::io::report::{self, payoffs_text, profile_names, set_names};
use pte_core::{
    classify, expected_utilities, hofstadter_equilibrium, individually_rational_set, maximin,
    minimax_rationalizable, nash_pure_set, parse_game, parse_rational, pte_solve,
    recommendation_sweep, scan, serialize_game, translucent_set, translucent_thresholds,
    verify_inclusions, Mode, NewcombPayoffs, NewcombProblem, Rational, RationalGame, SampleConfig,
    SolveError, Theory, TheoryVerdict,
};

#[derive(Parser)]
#[command(
    name = "pte",
    version,
    about = "Solve and analyse finite normal-form games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solution concept (or all of them) on a game file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        concept: Concept,
        /// Accept games with ties (PTE only).
        #[arg(long)]
        lenient: bool,
        /// Print every elimination round.
        #[arg(long)]
        trace: bool,
    },
    /// Run every solver and print a report.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write seeded random games in general position to a directory.
    Sample {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        symmetric: bool,
    },
    /// Classify many seeded random games and collect statistics.
    Scan {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        counterexamples: PathBuf,
        #[arg(long)]
        symmetric: bool,
    },
    /// Check the inclusion theorems on a game; exits 1 on a violation.
    Verify { file: PathBuf },
    /// Expected utilities for a Newcomb problem.
    Newcomb {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        /// P(opaque box full), used by CDT.
        #[arg(long, default_value = "1/2")]
        prior: String,
        /// Probability the prediction is right, used by EDT and NNDT.
        #[arg(long, default_value = "1")]
        accuracy: String,
        /// u(ONE,FULL),u(ONE,EMPTY),u(TWO,FULL),u(TWO,EMPTY)
        #[arg(long)]
        payoffs: Option<String>,
        /// Comma-separated grid of priors (CDT) or accuracies (EDT, NNDT).
        #[arg(long)]
        sweep: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Concept {
    Pte,
    Nash,
    Ir,
    Te,
    Minimax,
    Hofstadter,
    Pareto,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Cdt,
    Edt,
    Nndt,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Self {
        match t {
            TheoryArg::Cdt => Theory::Cdt,
            TheoryArg::Edt => Theory::Edt,
            TheoryArg::Nndt => Theory::Nndt,
        }
    }
}

/// Why a command failed; decides the exit code.
enum Failure {
    /// Bad input: unreadable file, parse error, invalid flag value.
    Input(anyhow::Error),
    /// The input was fine but a solver precondition does not hold.
    Precondition(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

/// Strategy counts per player, written `3x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Shape(Vec<usize>);

fn parse_shape(text: &str) -> Result<Shape, String> {
    text.split(['x', 'X'])
        .map(|t| match t.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("invalid shape {text:?}, expected e.g. 3x3")),
        })
        .collect::<Result<_, _>>()
        .map(Shape)
}

fn load_game(path: &Path) -> anyhow::Result<RationalGame> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_game(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn list(items: Vec<String>) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items
            .iter()
            .map(|p| format!("({p})"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn solve(path: &Path, concept: Concept, lenient: bool, trace: bool) -> Result<String, Failure> {
    let game = load_game(path)?;
    let wants = |c: Concept| concept == c || concept == Concept::All;
    let mut out = String::new();
    let mut failed = Vec::new();
    if wants(Concept::Pte) {
        let mode = if lenient { Mode::Lenient } else { Mode::Strict };
        match pte_solve(&game, mode) {
            Ok(result) => out.push_str(&report::pte_text(&game, &result, mode, trace)),
            Err(SolveError::GeneralPositionViolation { player, first, second }) => failed.push(format!(
                "pte: not in general position, player {player} gets the same payoff at ({}) and ({}) (use --lenient to accept ties)",
                game.profile_name(&first),
                game.profile_name(&second)
            )),
            Err(e) => failed.push(format!("pte: {e}")),
        }
    }
    if wants(Concept::Nash) {
        writeln!(
            out,
            "nash: {}",
            list(profile_names(&game, &nash_pure_set(&game)))
        )
        .unwrap();
    }
    if wants(Concept::Ir) {
        writeln!(
            out,
            "individually rational (maximin {}): {}",
            payoffs_text(&maximin(&game)).join(", "),
            list(set_names(&game, &individually_rational_set(&game)))
        )
        .unwrap();
    }
    if wants(Concept::Te) {
        writeln!(
            out,
            "translucent (thresholds {}): {}",
            payoffs_text(&translucent_thresholds(&game)).join(", "),
            list(set_names(&game, &translucent_set(&game)))
        )
        .unwrap();
    }
    if wants(Concept::Minimax) {
        let result = minimax_rationalizable(&game);
        let sets: Vec<String> = (0..game.player_count())
            .map(|p| {
                let names: Vec<String> = result
                    .active
                    .strategies(p)
                    .into_iter()
                    .map(|s| game.strategy_name(p, s))
                    .collect();
                format!("{{{}}}", names.join(" "))
            })
            .collect();
        writeln!(out, "minimax-rationalizable: {}", sets.join(" x ")).unwrap();
        if trace {
            for (i, batch) in result.deletions.iter().enumerate() {
                let removed: Vec<String> = batch
                    .iter()
                    .map(|&(p, s)| format!("player {p} {}", game.strategy_name(p, s)))
                    .collect();
                writeln!(out, "  sweep {}: deletes {}", i + 1, removed.join(", ")).unwrap();
            }
        }
    }
    if wants(Concept::Hofstadter) {
        match hofstadter_equilibrium(&game) {
            Ok(p) => writeln!(out, "hofstadter: ({})", game.profile_name(&p)).unwrap(),
            // only a failure when asked for explicitly
            Err(e) if concept == Concept::All => writeln!(out, "hofstadter: n/a ({e})").unwrap(),
            Err(e) => failed.push(format!("hofstadter: {e}")),
        }
    }
    if wants(Concept::Pareto) {
        writeln!(
            out,
            "pareto-optimal: {}",
            list(profile_names(&game, &game.pareto_optimal_set()))
        )
        .unwrap();
    }
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Precondition(failed.join("\n")))
    }
}

fn classify_cmd(path: &Path, format: Format) -> Result<String, Failure> {
    let game = load_game(path)?;
    let report = classify(&game);
    Ok(match format {
        Format::Text => report::report_text(&game, &report),
        Format::Records => report::to_json_lines(&report::report_records(&game, &report)),
    })
}

fn sample(
    Shape(shape): Shape,
    count: u64,
    seed: u64,
    out: &Path,
    symmetric: bool,
) -> Result<String, Failure> {
    let config = SampleConfig::new(shape, count, seed).symmetric(symmetric);
    config.validate().map_err(|e| anyhow!("{e}"))?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let width = (count - 1).to_string().len();
    for index in 0..count {
        let game = pte_core::sample_game(&config, index).map_err(|e| anyhow!("{e}"))?;
        let exact = game
            .map(|&v| Rational::from_integer(v.into()))
            .expect("integers are totally ordered");
        let path = out.join(format!("game-{index:0width$}.game"));
        let text = format!("# seed {seed}, index {index}\n{}", serialize_game(&exact));
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(format!("wrote {count} games to {}\n", out.display()))
}

#[allow(clippy::too_many_arguments)]
fn scan_cmd(
    Shape(shape): Shape,
    count: u64,
    seed: u64,
    workers: Option<usize>,
    report_path: &Path,
    counterexamples: &Path,
    symmetric: bool,
) -> Result<String, Failure> {
    if workers == Some(0) {
        return Err(Failure::Input(anyhow!("--workers must be positive")));
    }
    let config = SampleConfig::new(shape, count, seed).symmetric(symmetric);
    let output = scan(&config, workers).map_err(|e| anyhow!("{e}"))?;
    report::write_scan(&output, report_path, counterexamples).context("writing scan output")?;
    let stats = &output.stats;
    Ok(format!(
        "games: {}\npte: {} ({:.4})\npte not minimax-rationalizable: {} ({:.4})\ncounterexamples: {}\nviolations: {}\n",
        stats.games,
        stats.pte_exists,
        stats.pte_fraction(),
        stats.pte_not_minimax_rationalizable,
        stats.pte_not_minimax_fraction(),
        output.counterexamples.len(),
        stats.violations
    ))
}

fn verify(path: &Path) -> Result<String, Failure> {
    let game = load_game(path)?;
    let violations = verify_inclusions(&game);
    if violations.is_empty() {
        Ok("all inclusions hold\n".to_string())
    } else {
        Err(Failure::Precondition(
            violations
                .iter()
                .map(|v| format!("violation: {v}"))
                .collect::<Vec<_>>()
                .join("\n"),
        ))
    }
}

fn number(text: &str, what: &str) -> anyhow::Result<Rational> {
    parse_rational(text.trim()).ok_or_else(|| anyhow!("invalid {what} {text:?}"))
}

fn verdict_line(v: &TheoryVerdict<Rational>) -> String {
    format!(
        "E[ONE] = {}, E[TWO] = {}, recommend {}",
        pte_core::format_rational(&v.expected_one),
        pte_core::format_rational(&v.expected_two),
        v.recommendation
    )
}

fn newcomb(
    theory: Theory,
    prior: &str,
    accuracy: &str,
    payoffs: Option<&str>,
    sweep: Option<&str>,
) -> Result<String, Failure> {
    let mut problem = NewcombProblem::<Rational>::canonical();
    problem.prior_full = number(prior, "prior")?;
    problem.accuracy = number(accuracy, "accuracy")?;
    if let Some(text) = payoffs {
        let values = text
            .split(',')
            .map(|t| number(t, "payoff"))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let [one_full, one_empty, two_full, two_empty]: [Rational; 4] = values
            .try_into()
            .map_err(|_| anyhow!("--payoffs needs four comma-separated values"))?;
        problem.payoffs = NewcombPayoffs {
            one_full,
            one_empty,
            two_full,
            two_empty,
        };
    }
    let mut out = String::new();
    match sweep {
        None => {
            let v = expected_utilities(&problem, theory).map_err(|e| anyhow!("{e}"))?;
            writeln!(out, "{theory}: {}", verdict_line(&v)).unwrap();
        }
        Some(grid) => {
            let grid = grid
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| number(t, "grid value"))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let points =
                recommendation_sweep(&problem, theory, &grid).map_err(|e| anyhow!("{e}"))?;
            let param = if theory == Theory::Cdt {
                "prior"
            } else {
                "accuracy"
            };
            for p in points {
                writeln!(
                    out,
                    "{theory} {param}={}: {}",
                    pte_core::format_rational(&p.parameter),
                    verdict_line(&p.verdict)
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Solve {
            file,
            concept,
            lenient,
            trace,
        } => solve(&file, concept, lenient, trace),
        Command::Classify { file, format } => classify_cmd(&file, format),
        Command::Sample {
            shape,
            count,
            seed,
            out,
            symmetric,
        } => sample(shape, count, seed, &out, symmetric),
        Command::Scan {
            shape,
            count,
            seed,
            workers,
            report,
            counterexamples,
            symmetric,
        } => scan_cmd(
            shape,
            count,
            seed,
            workers,
            &report,
            &counterexamples,
            symmetric,
        ),
        Command::Verify { file } => verify(&file),
        Command::Newcomb {
            theory,
            prior,
            accuracy,
            payoffs,
            sweep,
        } => newcomb(
            theory.into(),
            &prior,
            &accuracy,
            payoffs.as_deref(),
            sweep.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Precondition(message)) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
