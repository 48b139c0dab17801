//! Acceptance checks, one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pte_core::corpus::{bundled_corpus_dir, run_corpus};
use pte_core::io::report::{counterexamples_json_lines, scan_report_json};
use pte_core::{
    expected_utilities, hofstadter_equilibrium, individually_rational_set, minimax_rationalizable,
    minimax_rationalizable_by, nash_pure_set, parse_game, pte_solve, replay, sample_game, scan,
    Action, Mode, NewcombProblem, PteOutcome, Rational, RationalGame, Recommendation, SampleConfig,
    Theory,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn load(name: &str) -> RationalGame {
    let path = bundled_corpus_dir().join(format!("{name}.game"));
    parse_game(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn q(text: &str) -> Rational {
    pte_core::parse_rational(text).unwrap()
}

fn qs(values: &[&str]) -> Vec<Rational> {
    values.iter().map(|v| q(v)).collect()
}

fn names(game: &RationalGame, set: &[pte_core::StrategyProfile]) -> Vec<String> {
    set.iter().map(|p| game.profile_name(p)).collect()
}

fn pte_of(game: &RationalGame, mode: Mode) -> Result<(String, Vec<Rational>), String> {
    let result = pte_solve(game, mode).map_err(|e| e.to_string())?;
    match result.outcome {
        PteOutcome::Unique(p) => Ok((
            game.profile_name(&p),
            game.payoff_vector(&p).unwrap().to_vec(),
        )),
        other => Err(format!("{other:?}")),
    }
}

/// Survivors at the start of each round, as profile names.
fn stages(game: &RationalGame) -> Vec<Vec<String>> {
    pte_solve(game, Mode::Lenient)
        .unwrap()
        .trace
        .rounds
        .iter()
        .map(|r| names(game, &r.survivors.profiles(game)))
        .collect()
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn figures() -> Check {
    let start = Instant::now();
    let unique = [
        (
            "prisoners_dilemma",
            Mode::Strict,
            "Cooperate,Cooperate",
            ["2", "2"],
        ),
        ("example2", Mode::Strict, "A,D", ["2", "3"]),
        ("asymmetric_social_dilemma", Mode::Strict, "D,A", ["6", "8"]),
        ("ccbr", Mode::Strict, "B,F", ["7", "9"]),
        ("goods", Mode::Strict, "C,C", ["1.5", "1.5"]),
        ("bertrand", Mode::Lenient, "6,6", ["3", "3"]),
        ("traveler", Mode::Lenient, "4,4", ["4", "4"]),
    ];
    for (name, mode, profile, payoffs) in unique {
        let got = pte_of(&load(name), mode)?;
        ensure(got == (profile.to_string(), qs(&payoffs)), || {
            format!("{name}: PTE {got:?}")
        })?;
    }
    let chicken = pte_solve(&load("chicken"), Mode::Strict).map_err(|e| e.to_string())?;
    ensure(chicken.outcome == PteOutcome::NoEquilibrium, || {
        "chicken has a PTE".into()
    })?;
    for tied in ["bertrand", "traveler"] {
        ensure(pte_solve(&load(tied), Mode::Strict).is_err(), || {
            format!("{tied}: strict mode accepted ties")
        })?;
    }

    let full3 = |rows: &str, cols: &str| -> Vec<String> {
        rows.split(' ')
            .flat_map(|r| cols.split(' ').map(move |c| format!("{r},{c}")))
            .collect()
    };
    let expected_stages = [
        (
            "prisoners_dilemma",
            vec![
                full3("Defect Cooperate", "Defect Cooperate"),
                strs(&["Defect,Defect", "Cooperate,Cooperate"]),
                strs(&["Cooperate,Cooperate"]),
            ],
        ),
        (
            "chicken",
            vec![
                full3("Straight Swerve", "Straight Swerve"),
                strs(&["Straight,Swerve", "Swerve,Straight", "Swerve,Swerve"]),
            ],
        ),
        (
            "example2",
            vec![full3("A B", "C D"), strs(&["A,D", "B,D"]), strs(&["A,D"])],
        ),
        (
            "ccbr",
            vec![
                full3("A B C", "D E F"),
                strs(&["B,E", "B,F", "C,D", "C,F"]),
                strs(&["B,E", "B,F"]),
                strs(&["B,F"]),
            ],
        ),
        (
            "goods",
            vec![
                full3("D I C", "D I C"),
                strs(&["D,D", "I,I", "I,C", "C,I", "C,C"]),
                strs(&["I,I", "C,C"]),
                strs(&["C,C"]),
            ],
        ),
        (
            "bertrand",
            vec![
                full3("2 4 6", "2 4 6"),
                strs(&["2,2", "4,4", "6,6"]),
                strs(&["6,6"]),
            ],
        ),
        (
            "traveler",
            vec![
                full3("2 3 4", "2 3 4"),
                strs(&["2,2", "3,3", "3,4", "4,3", "4,4"]),
                strs(&["3,3", "4,4"]),
                strs(&["4,4"]),
            ],
        ),
    ];
    for (name, expected) in &expected_stages {
        let got = stages(&load(name));
        ensure(&got == expected, || format!("{name}: rounds {got:?}"))?;
    }

    let results = run_corpus(&bundled_corpus_dir()).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.entry.as_str())
        .collect();
    ensure(failed.is_empty(), || {
        format!("corpus entries failed: {failed:?}")
    })?;
    let checked: usize = results.iter().map(|r| r.checked).sum();
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "8 PTEs, 7 traces, {} corpus entries / {checked} expectations in {elapsed:.0?}",
        results.len()
    ))
}

fn cross_checks() -> Check {
    let maximin_prefixes = [
        ("prisoners_dilemma", vec![["1", "1"], ["2", "2"]]),
        ("example2", vec![["1", "1"], ["2", "1"]]),
        ("asymmetric_social_dilemma", vec![["5", "3"]]),
    ];
    for (name, prefix) in &maximin_prefixes {
        let game = load(name);
        let trace = pte_solve(&game, Mode::Strict).unwrap().trace;
        let got: Vec<Vec<Rational>> = trace.maximins().take(prefix.len()).cloned().collect();
        let want: Vec<Vec<Rational>> = prefix.iter().map(|m| qs(m)).collect();
        ensure(got == want, || format!("{name}: maximins {got:?}"))?;
    }
    let ir = [
        (
            "prisoners_dilemma",
            strs(&["Defect,Defect", "Cooperate,Cooperate"]),
        ),
        ("asymmetric_social_dilemma", strs(&["D,A", "F,B", "F,C"])),
    ];
    for (name, want) in &ir {
        let game = load(name);
        let got = names(&game, &individually_rational_set(&game).profiles(&game));
        ensure(&got == want, || format!("{name}: IR {got:?}"))?;
    }
    let nash = [
        ("prisoners_dilemma", strs(&["Defect,Defect"])),
        ("chicken", strs(&["Straight,Swerve", "Swerve,Straight"])),
        ("coordination", strs(&["Sushi,Sushi", "Pizza,Pizza"])),
        ("asymmetric_social_dilemma", strs(&["F,C"])),
    ];
    for (name, want) in &nash {
        let game = load(name);
        let got = names(&game, &nash_pure_set(&game));
        ensure(&got == want, || format!("{name}: Nash {got:?}"))?;
    }
    let hofstadter = [
        ("prisoners_dilemma", ["2", "2"]),
        ("chicken", ["2", "2"]),
        ("minimax_individual", ["9", "9"]),
    ];
    for (name, want) in &hofstadter {
        let game = load(name);
        let p = hofstadter_equilibrium(&game).map_err(|e| format!("{name}: {e}"))?;
        let got = game.payoff_vector(&p).unwrap().to_vec();
        ensure(got == qs(want), || format!("{name}: Hofstadter {got:?}"))?;
    }
    let minimax = [
        ("minimax_dominated", [strs(&["B", "C"]), strs(&["E", "F"])]),
        ("ccbr", [strs(&["C"]), strs(&["F"])]),
    ];
    for (name, want) in &minimax {
        let game = load(name);
        let result = minimax_rationalizable(&game);
        let got: Vec<Vec<String>> = (0..2)
            .map(|p| {
                result
                    .active
                    .strategies(p)
                    .into_iter()
                    .map(|s| game.strategy_name(p, s))
                    .collect()
            })
            .collect();
        ensure(got == want.to_vec(), || format!("{name}: minimax {got:?}"))?;
    }
    Ok("maximins, IR, Nash, Hofstadter and minimax sets match".into())
}

fn newcomb() -> Check {
    let mut problem = NewcombProblem::<Rational>::canonical();
    for theory in [Theory::Edt, Theory::Nndt] {
        let v = expected_utilities(&problem, theory).map_err(|e| e.to_string())?;
        ensure(
            v.expected_one == q("1000000")
                && v.expected_two == q("1000")
                && v.recommendation == Recommendation::Take(Action::One),
            || format!("{theory}: {v:?}"),
        )?;
    }
    for prior in ["0", "1/2", "1"] {
        problem.prior_full = q(prior);
        let v = expected_utilities(&problem, Theory::Cdt).map_err(|e| e.to_string())?;
        ensure(
            v.expected_two.clone() - v.expected_one.clone() == q("1000")
                && v.recommendation == Recommendation::Take(Action::Two),
            || format!("cdt prior {prior}: {v:?}"),
        )?;
    }
    Ok("EDT/NNDT 1000000 > 1000; CDT gap 1000 at priors 0, 1/2, 1".into())
}

fn theorems() -> Check {
    let start = Instant::now();
    let plain =
        scan(&SampleConfig::new(vec![3, 3], 10_000, 2024), Some(1)).map_err(|e| e.to_string())?;
    let symmetric = scan(
        &SampleConfig::new(vec![3, 3], 10_000, 2025).symmetric(true),
        Some(1),
    )
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (label, out) in [("3x3", &plain), ("symmetric", &symmetric)] {
        ensure(out.stats.violations == 0, || {
            let first = out
                .counterexamples
                .iter()
                .find(|c| !c.violations.is_empty());
            format!(
                "{label}: {} violating games, first {first:?}",
                out.stats.violations
            )
        })?;
    }
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "20000 games, 0 violations, {elapsed:.1?} on one thread"
    ))
}

fn order_independence() -> Check {
    let config = SampleConfig::new(vec![3, 3], 100, 77);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nontrivial = 0;
    for index in 0..100 {
        let game = sample_game(&config, index).unwrap();
        let batch = minimax_rationalizable(&game);
        nontrivial += !batch.deletions.is_empty() as usize;
        for _ in 0..100 {
            let order_seed: u64 = rng.gen();
            let mut order_rng = ChaCha8Rng::seed_from_u64(order_seed);
            let single = minimax_rationalizable_by(&game, |candidates| {
                let mut positions: Vec<usize> = (0..candidates.len()).collect();
                positions.shuffle(&mut order_rng);
                positions[0]
            });
            ensure(single == batch.active, || {
                format!("game {index}, order seed {order_seed}: fixpoints differ")
            })?;
        }
    }
    Ok(format!(
        "100 games x 100 orders agree ({nontrivial} games delete something)"
    ))
}

fn statistics() -> Check {
    let out = scan(&SampleConfig::new(vec![3, 3], 100_000, 1), None).map_err(|e| e.to_string())?;
    let stats = &out.stats;
    let fraction = stats.pte_fraction();
    let not_minimax = stats.pte_not_minimax_fraction();
    let summary = format!(
        "PTE in {}/{} = {fraction:.4}, not minimax-rationalizable {}/{} = {not_minimax:.5}",
        stats.pte_exists, stats.games, stats.pte_not_minimax_rationalizable, stats.pte_exists
    );
    ensure((0.65..=0.85).contains(&fraction), || {
        format!("PTE fraction outside [0.65, 0.85]: {summary}")
    })?;
    ensure(not_minimax < 0.01, || {
        format!("too many non-minimax PTEs: {summary}")
    })?;
    ensure(stats.pte_not_minimax_rationalizable > 0, || {
        format!("no counterexample found: {summary}")
    })?;
    for record in &out.counterexamples {
        ensure(replay(record) == Ok(true), || {
            format!("record {} does not replay", record.index)
        })?;
        let game = parse_game(&record.game).map_err(|e| e.to_string())?;
        let pte = pte_solve(&game, Mode::Strict).map_err(|e| e.to_string())?;
        ensure(pte.outcome.unique() == record.pte.as_ref(), || {
            format!("record {}: PTE differs", record.index)
        })?;
    }
    Ok(format!(
        "{summary}; {} counterexamples replay",
        out.counterexamples.len()
    ))
}

fn determinism() -> Check {
    let config = SampleConfig::new(vec![3, 3], 20_000, 99);
    let mut outputs = Vec::new();
    for workers in [Some(1), Some(2), Some(4), None, Some(1)] {
        let out = scan(&config, workers).map_err(|e| e.to_string())?;
        outputs.push((scan_report_json(&out), counterexamples_json_lines(&out)));
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
        "scan output depends on the run".into()
    })?;
    Ok(format!(
        "5 runs (1, 2, 4, default, 1 workers) byte-identical, {} bytes",
        outputs[0].0.len() + outputs[0].1.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 reference-game regression", figures),
        ("2 solver cross-checks", cross_checks),
        ("3 newcomb", newcomb),
        ("4 theorem property suite", theorems),
        ("5 minimax order independence", order_independence),
        ("6 scan statistics", statistics),
        ("7 scan determinism", determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
