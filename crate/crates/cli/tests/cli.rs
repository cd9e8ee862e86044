use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperfns")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn both_methods_agree_and_blank_out_the_series_at_zero() {
    let o = run(&["eval", "--p", "3", "--q", "2", "--lambda", "0.5,1", "--t", "0:2:3", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "t,closed_re,closed_im,closed_err,series_re,series_im,series_err,discrepancy");
    assert!(rows[1].ends_with("nan,nan,nan,nan"));
    for row in &rows[2..] {
        let d: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(d < 1e-10, "{row}");
    }
}

#[test]
fn classify_reports_unbounded_outside_the_strip() {
    let o = run(&["classify", "--p", "3", "--q", "2", "--R", "5", "--lambda", "4,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Unbounded");
}

#[test]
fn identities_suite_passes() {
    let o = run(&["verify", "--suite", "identities", "--p", "5", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(64));
    assert_eq!(run(&["cfun", "--p", "0", "--q", "2", "--lambda", "0.5,1"]).status.code(), Some(64));
    assert_eq!(run(&["eval", "--p", "3", "--q", "2"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let series_at_zero = run(&["eval", "--p", "3", "--q", "2", "--lambda", "0.5,1", "--t", "0", "--method", "series"]);
    assert_eq!(series_at_zero.status.code(), Some(1));
}

#[test]
fn missing_fixture_directory_fails_verification() {
    let o = Command::new(env!("CARGO_BIN_EXE_hyperfns"))
        .args(["verify", "--suite", "fixtures"])
        .env("HYPERFNS_FIXTURES", "/nonexistent/fixtures")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL fixtures/specfun"));
}

#[test]
fn output_is_byte_identical_across_runs_and_job_counts() {
    let args = ["eval", "--p", "5", "--q", "3", "--lambda", "0.3,2", "--t", "0.1:5:40"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    let mut par = vec!["--jobs", "4"];
    par.extend_from_slice(&args);
    let c = run(&par).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn json_cfun_round_trips() {
    let o = run(&["--json", "cfun", "--p", "3", "--q", "2", "--lambda", "0.5,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rec = &v[0];
    assert_eq!(rec["status"], "regular");
    assert!(rec["value"]["re"].as_f64().is_some());
}

#[test]
fn negative_values_are_not_mistaken_for_flags() {
    let o = run(&["eval", "--p", "3", "--q", "2", "--lambda", "-3", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row.starts_with("1.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0"), "{row}");
    let o = run(&["cfun", "--p", "3", "--q", "2", "--lambda", "-0.5,-1"]);
    assert_eq!(o.status.code(), Some(0));
}
