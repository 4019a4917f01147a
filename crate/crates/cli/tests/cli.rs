use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn tdpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdpp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn route_walkthrough() {
    let o = tdpp(&["route", "--topology", "fig3", "--pair", "s:d"]);
    assert_eq!(code(&o), 0);
    let log = stdout(&o);
    assert!(log.contains("path=s>r2>r3>d"), "{log}");
    let f: f64 = log
        .split_whitespace()
        .find_map(|t| t.strip_prefix("f_purified="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((f - 0.93).abs() <= 0.005, "{f}");
}

#[test]
fn route_unreachable_pair_exits_2() {
    let dir = tempdir().unwrap();
    let topo = dir.path().join("split.topo");
    fs::write(
        &topo,
        "node a 5\nnode b 5\nnode c 5\nnode d 5\nedge a b 5 0.9\nedge c d 5 0.9\n",
    )
    .unwrap();
    let o = tdpp(&["route", "--topology", path_str(&topo), "--pair", "a:d"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("reason=no_path"));
}

#[test]
fn route_input_errors_exit_1() {
    let dir = tempdir().unwrap();
    let missing = dir.path().join("missing.topo");
    assert_eq!(
        code(&tdpp(&[
            "route",
            "--topology",
            path_str(&missing),
            "--pair",
            "s:d"
        ])),
        1
    );

    let bad = dir.path().join("bad.topo");
    fs::write(&bad, "node a 5\nnode b 5\nedge a b x\n").unwrap();
    let o = tdpp(&["route", "--topology", path_str(&bad), "--pair", "a:b"]);
    assert_eq!(code(&o), 1);
    assert!(
        String::from_utf8_lossy(&o.stderr).contains('3'),
        "line number expected"
    );

    assert_eq!(
        code(&tdpp(&[
            "route",
            "--topology",
            "fig3",
            "--pair",
            "s:nowhere"
        ])),
        1
    );
    assert_eq!(
        code(&tdpp(&[
            "route",
            "--topology",
            "fig3",
            "--pair",
            "s:d",
            "--bogus"
        ])),
        1
    );
}

#[test]
fn route_baselines() {
    let o = tdpp(&[
        "route",
        "--topology",
        "fig3",
        "--pair",
        "s:d",
        "--algorithm",
        "hop_baseline",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("path=s>r1>d"));
    assert_eq!(
        code(&tdpp(&[
            "route",
            "--topology",
            "fig3",
            "--pair",
            "s:d",
            "--algorithm",
            "magic"
        ])),
        1
    );
}

#[test]
fn experiment_row_counts() {
    let one = tdpp(&[
        "experiment",
        "--trials",
        "1",
        "--capacity",
        "30",
        "--algorithm",
        "tdpp",
    ]);
    assert_eq!(code(&one), 0);
    assert_eq!(stdout(&one).lines().count(), 2);

    let sweep = tdpp(&[
        "experiment",
        "--trials",
        "2",
        "--capacity",
        "10..90 step 10",
        "--algorithm",
        "tdpp,hop_baseline",
    ]);
    assert_eq!(code(&sweep), 0);
    let text = stdout(&sweep);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "capacity,algorithm,mean_fidelity,stderr_fidelity,mean_throughput,stderr_throughput,success_rate,trials"
    );
    assert_eq!(lines.count(), 18);
}

#[test]
fn experiment_is_byte_deterministic() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, "trials = 20\ncapacity_range = 10, 50\nalgorithm = tdpp, hop_baseline, greedy_baseline\nrng_seed = 4\n").unwrap();
    let (a, b, c) = (
        dir.path().join("a.csv"),
        dir.path().join("b.csv"),
        dir.path().join("c.csv"),
    );
    let cfg = path_str(&cfg);
    assert_eq!(
        code(&tdpp(&[
            "experiment",
            "--config",
            cfg,
            "--out",
            path_str(&a),
            "--threads",
            "1"
        ])),
        0
    );
    assert_eq!(
        code(&tdpp(&[
            "experiment",
            "--config",
            cfg,
            "--out",
            path_str(&b),
            "--threads",
            "4"
        ])),
        0
    );
    assert_eq!(
        code(&tdpp(&[
            "experiment",
            "--config",
            cfg,
            "--out",
            path_str(&c),
            "--threads",
            "4"
        ])),
        0
    );
    let a = fs::read(a).unwrap();
    assert_eq!(a, fs::read(b).unwrap());
    assert_eq!(a, fs::read(c).unwrap());
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 7);
}

#[test]
fn experiment_config_errors_name_the_key() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "trials = 2\nmystery_knob = 7\n").unwrap();
    let o = tdpp(&["experiment", "--config", path_str(&cfg)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mystery_knob"));
    let o = tdpp(&["experiment", "--set", "nonsense=1"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonsense"));
    assert_eq!(code(&tdpp(&["experiment", "--trials", "0"])), 1);
}

#[test]
fn demo_pump_variants() {
    let o = tdpp(&["demo-pump"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("converged after 3 rounds"), "{text}");
    assert!(!text.contains("DEVIATION"));
    assert_eq!(text.matches("reference").count(), 3);

    let o = tdpp(&[
        "demo-pump",
        "--a",
        "0.9",
        "--b",
        "0.9",
        "--threshold",
        "0.8",
    ]);
    assert!(stdout(&o).contains("converged after 1 rounds"));

    let o = tdpp(&[
        "demo-pump",
        "--a",
        "0.3",
        "--b",
        "0.3",
        "--threshold",
        "0.999",
        "--max-rounds",
        "5",
    ]);
    let text = stdout(&o);
    assert!(text.contains("did not converge within 5 rounds"), "{text}");
    assert!(text.contains("fixed point 0.688845"), "{text}");
}

#[test]
fn demo_fig3_matches_reference() {
    let o = tdpp(&["demo-fig3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("walkthrough reproduced"));
    assert!(!text.contains("DEVIATION"));
}

#[test]
fn validate_round_trip_and_corruption() {
    let dir = tempdir().unwrap();
    let log = dir.path().join("run.log");
    let o = tdpp(&[
        "route",
        "--topology",
        "us_backbone",
        "--pair",
        "seattle:miami",
        "--pair",
        "newyork:sandiego",
        "--out",
        path_str(&log),
        "--seed",
        "3",
    ]);
    assert!(matches!(code(&o), 0 | 2));
    let v = tdpp(&[
        "validate",
        "--topology",
        "us_backbone",
        "--log",
        path_str(&log),
    ]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert_eq!(stdout(&v), "");

    // One capacity-1 edge used by two successful lines.
    let topo = dir.path().join("tiny.topo");
    fs::write(&topo, "node a 5\nnode b 5\nedge a b 1 0.9\n").unwrap();
    let single = tdpp(&["route", "--topology", path_str(&topo), "--pair", "a:b"]);
    assert_eq!(code(&single), 0);
    let line = stdout(&single);
    let doubled = dir.path().join("doubled.log");
    fs::write(
        &doubled,
        format!("{line}{}", line.replacen("pair=0", "pair=1", 1)),
    )
    .unwrap();
    let v = tdpp(&[
        "validate",
        "--topology",
        path_str(&topo),
        "--log",
        path_str(&doubled),
    ]);
    assert_eq!(code(&v), 3);
    let report = stdout(&v);
    assert_eq!(report.lines().count(), 1, "{report}");
    assert!(report.starts_with("CONSTRAINT 13g AT a-b:"), "{report}");

    let unknown = dir.path().join("unknown.log");
    fs::write(&unknown, line.replace("dst=b", "dst=zz")).unwrap();
    assert_eq!(
        code(&tdpp(&[
            "validate",
            "--topology",
            path_str(&topo),
            "--log",
            path_str(&unknown)
        ])),
        1
    );
    let missing = dir.path().join("none.log");
    assert_eq!(
        code(&tdpp(&[
            "validate",
            "--topology",
            path_str(&topo),
            "--log",
            path_str(&missing)
        ])),
        1
    );
}
