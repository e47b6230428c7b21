use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_diamwidth"));
    c.env_remove("DIAMWIDTH_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn construct_formats() {
    let o = run(&["construct", "cycle:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    let o = run(&["construct", "complete:4", "--format", "graph6"]);
    assert_eq!(stdout(&o), "C~\n");
    let o = run(&["construct", "bogus:3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convert_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("p3.txt");
    let g = dir.path().join("p3.g6");
    let back = dir.path().join("back.txt");
    std::fs::write(&e, "3 2\n0 1\n1 2\n").unwrap();
    for (i, o) in [(&e, &g), (&g, &back)] {
        let out = run(&[
            "convert",
            "--input",
            i.to_str().unwrap(),
            "--output",
            o.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read_to_string(&g).unwrap(), "Bg\n");
    assert_eq!(std::fs::read_to_string(&back).unwrap(), "3 2\n0 1\n1 2\n");

    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "C~!").unwrap();
    let out = run(&[
        "convert",
        "--input",
        bad.to_str().unwrap(),
        "--output",
        back.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 2"));
}

#[test]
fn check_exit_codes() {
    let o = run(&[
        "check",
        "--family",
        "path:10 * complete:1",
        "--diameter",
        "2",
        "--free",
        "h:3:1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["status"], "pass");
    let o = run(&["check", "--family", "cycle:6", "--diameter", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "check",
        "--family",
        "er-polarity:7",
        "--free",
        "cycle:4",
        "--max-diameter",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_reads_files_and_stdin() {
    use std::io::Write;
    let mut child = bin()
        .args([
            "check",
            "--input",
            "-",
            "--format",
            "graph6",
            "--diameter",
            "1",
        ])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"C~\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["vertices"], 4);
}

#[test]
fn width_exact_and_budget() {
    let o = run(&["width", "--family", "path:7", "--param", "td"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value"], 3);
    let o = run(&[
        "width",
        "--family",
        "er-polarity:5",
        "--param",
        "tw",
        "--limit",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["width", "--family", "path:3", "--param", "cw"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_text_and_json() {
    let o = run(&[
        "classify",
        "--forbidden",
        "cycle:4",
        "--relation",
        "subgraph",
        "--param",
        "td",
        "--d",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "unbounded [d2-c4-polarity]");
    let o = run(&[
        "classify",
        "--forbidden",
        "cycle:8",
        "--relation",
        "subgraph",
        "--param",
        "tw",
        "--d",
        "3",
        "--json",
    ]);
    let v = json(&o);
    assert_eq!(v["answer"], "bounded");
    assert!(!v["trace"].as_array().unwrap().is_empty());
    let o = run(&[
        "classify",
        "--forbidden",
        "cycle:4",
        "--relation",
        "nope",
        "--param",
        "td",
        "--d",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_csv() {
    let o = run(&[
        "census",
        "--n-max",
        "4",
        "--forbidden",
        "complete:3",
        "--d",
        "2",
        "--param",
        "td",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,count,max_width,witness");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("4,2,3,"));
}

#[test]
fn refute_outcomes_and_resume() {
    let o = run(&["refute", "--r", "3", "--d", "2", "--l", "64"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "refuted");
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness cap"));

    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.json");
    let o = bin()
        .args([
            "refute",
            "--r",
            "2",
            "--d",
            "3",
            "--l",
            "10",
            "--state",
            state.to_str().unwrap(),
        ])
        .env("DIAMWIDTH_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["status"], "budget_exhausted");
    let o = run(&[
        "refute",
        "--r",
        "2",
        "--d",
        "3",
        "--l",
        "10",
        "--resume",
        state.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "consistent");
}

#[test]
fn experiment_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.toml");
    std::fs::write(
        &plan,
        "name = \"bic\"\nfamily = \"biclique:{n}:{n}\"\nvalues = [2, 3, 4]\n\n[checks]\ndiameter = 2\nfree = [\"cycle:5\"]\nwidth = \"tw\"\nwidth_increasing = true\n",
    )
    .unwrap();
    let a = run(&["experiment", plan.to_str().unwrap()]);
    let b = run(&[
        "--seed",
        "7",
        "--deterministic",
        "experiment",
        plan.to_str().unwrap(),
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text
        .lines()
        .nth(3)
        .unwrap()
        .starts_with("1,bic,4,biclique:4:4,8,16,4,4,2,pass,pass,pass,tw,4,4,true,"));

    std::fs::write(
        &plan,
        "name = \"c\"\nfamily = \"cycle:{n}\"\nvalues = [5, 7]\n\n[checks]\ndiameter = 2\n",
    )
    .unwrap();
    let o = run(&["experiment", plan.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_theorem_ids() {
    let o = run(&["verify-theorem", "thm17-gadget"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "pass");
    let o = run(&["verify-theorem", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify-theorem", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["width", "--param", "td"]).status.code(), Some(2));
    assert_eq!(
        run(&["--jobs", "0", "construct", "path:3"]).status.code(),
        Some(2)
    );
}
