use std::fs;
use std::process::{Command, Output};

use hazard_trees::{hazard_free_extension, BooleanFunction, DecisionTree, FunctionLiteral, Mode};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hazard-trees"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value of `column` in a two-line header/row TSV.
fn field(tsv: &str, column: &str) -> String {
    let mut lines = tsv.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let row: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let i = header.iter().position(|h| *h == column).unwrap();
    row[i].to_string()
}

fn literal(text: &str) -> BooleanFunction {
    text.parse::<FunctionLiteral>().unwrap().function
}

#[test]
fn analyze_rows() {
    let out = run(&["analyze", "--function", "named:mux:1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "depth_u"), "3");
    assert_eq!(field(&text, "size"), "4");
    let size_u: usize = field(&text, "size_u").parse().unwrap();
    assert!((8..=13).contains(&size_u));

    let text = stdout(&run(&["analyze", "--function", "named:and:2"]));
    assert_eq!(field(&text, "size_u"), "7");
    let text = stdout(&run(&["analyze", "--function", "named:parity:2"]));
    assert_eq!(field(&text, "depth_u"), "2");
    assert_eq!(field(&text, "size_u"), "7");
}

#[test]
fn analyze_limits() {
    // 11 variables is above the ternary search limit
    let out = run(&["analyze", "--function", "named:and:11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let out = run(&["analyze", "--function", "named:and:11", "--skip-infeasible"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "depth_u"), "skipped(limit)");
    assert_eq!(field(&text, "s"), "11");
}

#[test]
fn table_literal_matches_named() {
    let a = stdout(&run(&["analyze", "--function", "table:2:8"]));
    let b = stdout(&run(&["analyze", "--function", "named:and:2"]));
    assert_eq!(
        a.lines().nth(1).unwrap().split_once('\t').unwrap().1,
        b.lines().nth(1).unwrap().split_once('\t').unwrap().1
    );
}

#[test]
fn optimal_emits_valid_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.tree");
    let p = path.to_str().unwrap();
    for (measure, k, mode, expected) in [
        ("depth_u", None, Mode::HazardFree, "6"),
        ("depth_k", Some("1"), Mode::KBit(1), "4"),
        ("depth", None, Mode::Boolean, "3"),
    ] {
        let mut args = vec![
            "optimal",
            "--measure",
            measure,
            "--function",
            "named:mux:2",
            "--emit-tree",
            p,
        ];
        if let Some(k) = k {
            args.extend(["--k", k]);
        }
        let out = run(&args);
        assert!(out.status.success(), "{measure}");
        assert_eq!(field(&stdout(&out), "value"), expected);
        let text = fs::read_to_string(&path).unwrap();
        let tree: DecisionTree = text.trim_end().parse().unwrap();
        assert!(tree.computes(&literal("named:mux:2"), mode), "{measure}");
        assert_eq!(format!("{tree}\n"), text);
    }
}

#[test]
fn construct_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let boolean = dir.path().join("b.tree");
    let hazard_free = dir.path().join("h.tree");
    let f = literal("named:mux:1");
    let out = run(&[
        "optimal",
        "--measure",
        "size",
        "--function",
        "named:mux:1",
        "--emit-tree",
        boolean.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for k in [None, Some("0"), Some("1"), Some("3")] {
        let mut args = vec![
            "construct",
            "--from",
            "boolean-tree",
            "--tree",
            boolean.to_str().unwrap(),
        ];
        args.extend(["--out", hazard_free.to_str().unwrap()]);
        if let Some(k) = k {
            args.extend(["--k", k]);
        }
        assert!(run(&args).status.success());
        let tree: DecisionTree = fs::read_to_string(&hazard_free)
            .unwrap()
            .trim_end()
            .parse()
            .unwrap();
        let mode = k.map_or(Mode::HazardFree, |k| Mode::KBit(k.parse().unwrap()));
        assert!(tree.computes(&f, mode), "{k:?}");
    }

    let out = run(&[
        "construct",
        "--from",
        "mux",
        "--n",
        "2",
        "--out",
        hazard_free.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "size"), "55");
    let out = run(&[
        "construct",
        "--from",
        "smalldepth",
        "--n",
        "2",
        "--out",
        hazard_free.to_str().unwrap(),
    ]);
    assert_eq!(field(&stdout(&out), "depth"), "5");
    let tree: DecisionTree = fs::read_to_string(&hazard_free)
        .unwrap()
        .trim_end()
        .parse()
        .unwrap();
    assert!(tree.computes(&literal("named:smalldepth:2"), Mode::HazardFree));
}

#[test]
fn construct_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.tree");
    let o = out_path.to_str().unwrap();
    assert_eq!(
        run(&["construct", "--from", "mux", "--out", o])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "--from", "boolean-tree", "--out", o])
            .status
            .code(),
        Some(2)
    );
    let bad = dir.path().join("bad.tree");
    fs::write(&bad, "(x0 0 u 1)\n").unwrap();
    let out = run(&[
        "construct",
        "--from",
        "boolean-tree",
        "--tree",
        bad.to_str().unwrap(),
        "--out",
        o,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists());
}

#[test]
fn pointwise_measures() {
    let out = run(&["measures", "--function", "named:maj:3", "--at", "01u"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "cc_u"), "3");
    assert_eq!(field(&text, "value"), "u");
    assert_eq!(
        run(&["measures", "--function", "named:maj:3", "--at", "01"])
            .status
            .code(),
        Some(2)
    );
    let text = stdout(&run(&["measures", "--function", "named:mux:2"]));
    assert_eq!(field(&text, "cc_u"), "4");
}

#[test]
fn reconstruct_prints_extension() {
    let out = run(&[
        "reconstruct",
        "--function",
        "named:mux:1",
        "--center",
        "u01",
        "--radius",
        "3",
        "--s",
        "3",
    ]);
    assert!(out.status.success());
    let g = hazard_free_extension(&literal("named:mux:1")).unwrap();
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 27);
    for row in rows {
        let (word, value) = row.split_once('\t').unwrap();
        assert_eq!(g.eval(&word.parse().unwrap()).unwrap().to_string(), value);
    }
    let out = run(&[
        "reconstruct",
        "--function",
        "named:mux:1",
        "--center",
        "u01",
        "--radius",
        "1",
        "--s",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.tsv");
    let r = report.to_str().unwrap();
    let out = run(&[
        "verify", "--n", "2", "--filter", "npn", "--checks", "all", "--out", r,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "function\tcheck\tstatus\tdetail"
    );
    assert!(text.lines().skip(1).all(|l| l.split('\t').count() == 4));
    assert!(!text.contains("\tfail\t"));

    let a = run(&[
        "verify",
        "--n",
        "4",
        "--samples",
        "3",
        "--seed",
        "5",
        "--checks",
        "strip,natural",
        "--out",
        r,
    ]);
    assert!(a.status.success());
    let first = fs::read_to_string(&report).unwrap();
    run(&[
        "verify",
        "--n",
        "4",
        "--samples",
        "3",
        "--seed",
        "5",
        "--checks",
        "strip,natural",
        "--out",
        r,
    ]);
    assert_eq!(first, fs::read_to_string(&report).unwrap());
    assert_eq!(first.lines().count(), 7);

    let out = run(&[
        "verify",
        "--n",
        "2",
        "--checks",
        "no-such-check",
        "--out",
        r,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "--function", "named:nope:2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "--function", "table:2:ff"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "optimal",
            "--measure",
            "size_k",
            "--function",
            "named:and:2"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "optimal",
            "--measure",
            "depth",
            "--k",
            "1",
            "--function",
            "named:and:2"
        ])
        .status
        .code(),
        Some(2)
    );
}
