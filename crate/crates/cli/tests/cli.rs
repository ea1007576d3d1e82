use std::fs;
use std::process::{Command, Output};

fn movlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_movlab"))
        .args(args)
        .env_remove("MOVLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mov_on_copeland_fixture() {
    let o = movlab(&["mov", "--file", "fixture:fig2", "--solution", "co"]);
    assert_eq!(o.status.code(), Some(0));
    // z is index 1 in the fixture.
    assert!(stdout(&o).lines().any(|l| l == "1\t2"), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn mov_witness_pairs() {
    let o = movlab(&[
        "mov",
        "--file",
        "fixture:fig2",
        "--solution",
        "co",
        "--alternative",
        "4",
        "--witness",
    ]);
    assert_eq!(stdout(&o), "4\t-1\t1->4\n");
}

#[test]
fn solve_transitive_top() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("transitive5.trn");
    fs::write(&path, "TRN1\n5\n01111\n00111\n00011\n00001\n00000\n").unwrap();
    let o = movlab(&["solve", "--file", path.to_str().unwrap(), "--solution", "tc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn solve_lists_ascending() {
    let o = movlab(&["solve", "--file", "fixture:cyclone:5", "--solution", "uc"]);
    assert_eq!(stdout(&o), "0\n1\n2\n3\n4\n");
}

#[test]
fn gen_is_deterministic_and_seed_env_applies() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = movlab(&[
        "gen",
        "--model",
        "uniform",
        "--n",
        "10",
        "--seed",
        "7",
        "--count",
        "3",
        "--out",
        a.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_movlab"))
        .args([
            "gen",
            "--model",
            "uniform",
            "--n",
            "10",
            "--count",
            "3",
            "--out",
            b.path().to_str().unwrap(),
        ])
        .env("MOVLAB_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    for name in ["t_0000.trn", "t_0001.trn", "t_0002.trn"] {
        let x = fs::read_to_string(a.path().join(name)).unwrap();
        assert_eq!(x, fs::read_to_string(b.path().join(name)).unwrap());
        assert!(x.starts_with("TRN1\n10\n"));
    }
    assert!(!a.path().join("t_0003.trn").exists());
    let first = fs::read_to_string(a.path().join("t_0000.trn")).unwrap();
    assert_ne!(first, fs::read_to_string(a.path().join("t_0001.trn")).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(
        movlab(&["solve", "--file", "/nonexistent.trn", "--solution", "tc"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        movlab(&["solve", "--file", "fixture:nope", "--solution", "tc"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        movlab(&["solve", "--file", "fixture:fig2", "--solution", "xx"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        movlab(&["mov", "--file", "fixture:fig2", "--solution", "co", "--bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        movlab(&["mov", "--file", "fixture:cyclone:11", "--solution", "ba"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        movlab(&["verify", "--suite", "no_such_property"]).status.code(),
        Some(1)
    );
    assert_eq!(movlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_trn_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.trn");
    fs::write(&path, "TRN1\n3\n011\n001\n0x0\n").unwrap();
    let o = movlab(&["solve", "--file", path.to_str().unwrap(), "--solution", "co"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn verify_single_suite() {
    let o = movlab(&[
        "verify",
        "--suite",
        "cover_consistency",
        "--trials",
        "60",
        "--max-n",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("cover_consistency\tPASS"));
}

#[test]
fn experiment_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.json");
    fs::write(
        &cfg,
        r#"{"models":[{"name":"uniform"}],"sizes":[6],"samples":2,"solutions":["co","tc"],"seed":5}"#,
    )
    .unwrap();
    let rows = dir.path().join("rows.csv");
    let agg = dir.path().join("agg.csv");
    let run = |jobs: &str| {
        movlab(&[
            "experiment",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            rows.to_str().unwrap(),
            "--summary",
            agg.to_str().unwrap(),
            "--jobs",
            jobs,
        ])
    };
    assert_eq!(run("1").status.code(), Some(0));
    let first = fs::read_to_string(&rows).unwrap();
    assert_eq!(first.lines().count(), 5);
    assert!(first.starts_with("model,params,n,sample,solution,"));
    assert!(fs::read_to_string(&agg).unwrap().lines().count() >= 3);
    assert_eq!(run("3").status.code(), Some(0));
    assert_eq!(first, fs::read_to_string(&rows).unwrap());
}

#[test]
fn experiment_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.json");
    fs::write(&cfg, r#"{"sizes":[5],"colour":"red"}"#).unwrap();
    let out = dir.path().join("rows.csv");
    let o = movlab(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}
