use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn wmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_exit_codes() {
    let o = wmp(&["validate", &fixture("fig1.game")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok fig1 vertices 14"));

    let bad = scratch(
        "sum.game",
        "game bad\nvertex a rand\nvertex b max\nedge a b payoff 0 prob 1/2\nedge a a payoff 0 prob 1/3\nedge b b payoff 1\n",
    );
    let o = wmp(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("distribution at a sums to 5/6"), "{}", stderr(&o));

    let syntax = scratch("syntax.game", "game s\nvertex a max\nedge a a payof 1\n");
    let o = wmp(&["validate", &syntax]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = wmp(&["validate", "/nonexistent/x.game"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_accepts_and_rejects() {
    let args = ["--objective", "fwmp", "--window", "2"];
    let o = wmp(&[&["verify", &fixture("fig1.game"), &fixture("fig1.val")][..], &args].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verdict accepted\n"));

    let cert = std::fs::read_to_string(fixture("fig1.val")).unwrap().replace("value v1 -2", "value v1 -1");
    let o = wmp(&[&["verify", &fixture("fig1.game"), &scratch("bump.val", &cert)][..], &args].concat());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("bellman fail at "), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verdict rejected\n"));

    let cert = std::fs::read_to_string(fixture("fig1.val")).unwrap().replace("value v1 -2", "value v1 -2/7");
    let o = wmp(&[&["verify", &fixture("fig1.game"), &scratch("deep.val", &cert), "--bound", "4"][..], &args].concat());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("denominator 7"), "{}", stdout(&o));

    let missing = scratch("short.val", "value v1 -2\n");
    let o = wmp(&[&["verify", &fixture("fig1.game"), &missing][..], &args].concat());
    assert_eq!(o.status.code(), Some(2));

    let o = wmp(&["verify", &fixture("fig1.game"), &fixture("fig1.val"), "--objective", "fwmp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--window"));
}

#[test]
fn solve_prints_certificate_and_strategies() {
    let o = wmp(&["solve", &fixture("fig4.game"), "--objective", "fwmp", "--window", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("value v1 -1/2\n") && text.contains("value v2 -1/2\n"), "{text}");
    assert!(text.contains("strategy max") && text.contains("strategy min"));

    // The report is itself a certificate.
    let report = scratch("fig4.report", &text);
    let o = wmp(&["verify", &fixture("fig4.game"), &report, "--objective", "fwmp", "--window", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli/fig3.out");
    let o = wmp(&["solve", &fixture("fig3.game"), "--objective", "bwmp", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.contains("value v1 -1\nvalue v2 0\nvalue v3 1\n"), "{written}");
}

#[test]
fn eval_lasso_values() {
    let o = wmp(&["eval-lasso", &fixture("fig4.game"), "--lasso", "v1;v2,v1", "--objective", "bwmp"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");

    let o = wmp(&["eval-lasso", &fixture("fig4.game"), "--lasso", ";v1,v2,v2", "--objective", "fwmp", "--window", "2"]);
    assert_eq!(stdout(&o), "-1/2\n");

    let o = wmp(&["eval-lasso", &fixture("fig4.game"), "--lasso", ";v1,v1", "--objective", "bwmp"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn almost_sure_regions() {
    let o = wmp(&["almost-sure", &fixture("fig3.game"), "--objective", "reach", "--target", "v3", "--player", "max"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("winning v3\n"), "{}", stdout(&o));

    let args = ["--objective", "fwmp", "--window", "2", "--player", "max", "--threshold"];
    let o = wmp(&[&["almost-sure", &fixture("fig4.game")][..], &args, &["-1/2"]].concat());
    assert!(stdout(&o).starts_with("winning v1 v2\nstrategy max"), "{}", stdout(&o));
    let o = wmp(&[&["almost-sure", &fixture("fig4.game")][..], &args, &["0"]].concat());
    assert!(stdout(&o).starts_with("winning \n"), "{}", stdout(&o));

    let o = wmp(&["almost-sure", &fixture("fig4.game"), "--objective", "bwmp", "--player", "min"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dot_export_shapes_and_clusters() {
    let o = wmp(&["export-dot", &fixture("fig1.game"), "--classes", &fixture("fig1.val")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("digraph \"fig1\" {"));
    for s in ["shape=circle", "shape=box", "shape=diamond"] {
        assert!(text.contains(s), "{s}");
    }
    assert_eq!(text.matches("subgraph cluster_").count(), 5);
    assert_eq!(text.matches(" -> ").count(), 29);
    assert!(text.contains("<font color=\"blue\">1/2</font>"));

    let o = wmp(&["export-dot", &fixture("fig3.game")]);
    assert!(!stdout(&o).contains("cluster"));
}

#[test]
fn ssg_instance_solves_to_reach_probabilities() {
    let o = wmp(&["gen-ssg", &fixture("ssg_reach.game"), "--target", "t"]);
    assert_eq!(o.status.code(), Some(0));
    let inst = scratch("reach.fwmp", &stdout(&o));
    let o = wmp(&["solve", &inst, "--objective", "fwmp", "--window", "1"]);
    let text = stdout(&o);
    assert!(text.contains("value s 2/3\n") && text.contains("value m 0\n") && text.contains("value t 1\n"), "{text}");

    let o = wmp(&["gen-ssg", &fixture("ssg_reach.game"), "--target", "s"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulation_is_seeded() {
    let o = wmp(&["solve", &fixture("fig3.game"), "--objective", "fwmp", "--window", "1"]);
    let profile = scratch("fig3.strat", &stdout(&o));
    let run = |seed: &str| {
        wmp(&[
            "simulate", &fixture("fig3.game"), "--profile", &profile, "--objective", "fwmp", "--window", "1",
            "--episodes", "500", "--seed", seed,
        ])
    };
    let (a, b) = (run("7"), run("7"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("estimate v1 -1.000000 +- "), "{}", stdout(&a));
    assert!(stdout(&a).contains("estimate v3 1.000000"));
}
