use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn pte(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pte"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    dir.join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_prisoners_dilemma() {
    let o = pte(&[
        "solve",
        &corpus("prisoners_dilemma.game"),
        "--concept",
        "pte",
        "--trace",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("pte [strict]: (Cooperate,Cooperate) = (2, 2)\n"),
        "{out}"
    );
    assert!(out.contains("round 1: maximin (1, 1)"));
    assert!(out.contains("round 2: maximin (2, 2)"));
}

#[test]
fn strict_mode_on_ties_exits_one() {
    let o = pte(&["solve", &corpus("traveler.game"), "--concept", "pte"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("general position"));
    let o = pte(&[
        "solve",
        &corpus("traveler.game"),
        "--concept",
        "pte",
        "--lenient",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "pte [lenient]: (4,4) = (4, 4)\n");
}

#[test]
fn hofstadter_on_asymmetric_game_exits_one() {
    let o = pte(&["solve", &corpus("ccbr.game"), "--concept", "hofstadter"]);
    assert_eq!(o.status.code(), Some(1));
    let o = pte(&["solve", &corpus("chicken.game"), "--concept", "hofstadter"]);
    assert_eq!(stdout(&o), "hofstadter: (Swerve,Swerve)\n");
}

#[test]
fn each_concept_prints_one_line() {
    for (concept, expected) in [
        ("nash", "nash: (F,C)\n"),
        (
            "ir",
            "individually rational (maximin 5, 3): (D,A) (F,B) (F,C)\n",
        ),
        ("minimax", "minimax-rationalizable: {D F} x {A B C}\n"),
        ("pareto", "pareto-optimal: (D,A) (F,B)\n"),
    ] {
        let o = pte(&[
            "solve",
            &corpus("asymmetric_social_dilemma.game"),
            "--concept",
            concept,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), expected, "{concept}");
    }
    let o = pte(&["solve", &corpus("ccbr.game"), "--concept", "te"]);
    assert!(stdout(&o).starts_with("translucent (thresholds 4, 2): "));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.game");
    fs::write(&bad, "players: 2\nstrategies: 2 2\n1 1\n3 0\n0 3\n").unwrap();
    let o = pte(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
    assert_eq!(pte(&["solve", "/no/such/file.game"]).status.code(), Some(2));
    assert_eq!(
        pte(&["solve", &corpus("chicken.game"), "--concept", "ppe"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pte(&["newcomb", "--theory", "cdt", "--prior", "3/2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn classify_records_are_json_lines() {
    let o = pte(&["classify", &corpus("goods.game"), "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let kinds: Vec<String> = out
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).expect("each line is JSON");
            v["record"].as_str().expect("record field").to_string()
        })
        .collect();
    assert_eq!(kinds[0], "game");
    assert!(kinds.contains(&"pte".to_string()));
    assert_eq!(kinds.iter().filter(|k| *k == "pte-round").count(), 4);
    assert!(out.contains(r#""payoffs":[["1.5","1.5"]]"#), "{out}");
}

#[test]
fn verify_reports_success() {
    let o = pte(&["verify", &corpus("minimax_individual.game")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "all inclusions hold\n");
}

#[test]
fn newcomb_verdicts() {
    let o = pte(&["newcomb", "--theory", "nndt"]);
    assert_eq!(
        stdout(&o),
        "nndt: E[ONE] = 1000000, E[TWO] = 1000, recommend ONE\n"
    );
    let o = pte(&["newcomb", "--theory", "edt", "--sweep", "0,1"]);
    assert_eq!(
        stdout(&o),
        "edt accuracy=0: E[ONE] = 0, E[TWO] = 1001000, recommend TWO\n\
         edt accuracy=1: E[ONE] = 1000000, E[TWO] = 1000, recommend ONE\n"
    );
    let o = pte(&[
        "newcomb",
        "--theory",
        "cdt",
        "--payoffs",
        "10,0,11,1",
        "--prior",
        "0.25",
    ]);
    assert_eq!(
        stdout(&o),
        "cdt: E[ONE] = 2.5, E[TWO] = 3.5, recommend TWO\n"
    );
}

#[test]
fn sample_writes_parseable_games() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("games");
    let o = pte(&[
        "sample",
        "--shape",
        "3x3",
        "--count",
        "12",
        "--seed",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names.len(), 12);
    assert_eq!(names[0], "game-00.game");
    let first = out.join(&names[0]);
    let o = pte(&["verify", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let sym = dir.path().join("sym");
    let o = pte(&[
        "sample",
        "--shape",
        "3x3",
        "--count",
        "3",
        "--seed",
        "4",
        "--out",
        sym.to_str().unwrap(),
        "--symmetric",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = pte(&[
        "solve",
        sym.join("game-0.game").to_str().unwrap(),
        "--concept",
        "hofstadter",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn scan_is_byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "2", "7"] {
        let report = dir.path().join(format!("report-{workers}.json"));
        let cex = dir.path().join(format!("cex-{workers}.jsonl"));
        let o = pte(&[
            "scan",
            "--shape",
            "3x3",
            "--count",
            "3000",
            "--seed",
            "11",
            "--workers",
            workers,
            "--report",
            report.to_str().unwrap(),
            "--counterexamples",
            cex.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        outputs.push((fs::read(&report).unwrap(), fs::read(&cex).unwrap()));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let report = String::from_utf8(outputs[0].0.clone()).unwrap();
    assert!(report.contains("\"games\": 3000"), "{report}");
}

#[test]
fn scan_rejects_zero_workers() {
    let dir = tempfile::tempdir().unwrap();
    let o = pte(&[
        "scan",
        "--shape",
        "3x3",
        "--count",
        "10",
        "--seed",
        "1",
        "--workers",
        "0",
        "--report",
        dir.path().join("r").to_str().unwrap(),
        "--counterexamples",
        dir.path().join("c").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
