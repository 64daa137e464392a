use std::process::{Command, Output};

fn conetype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conetype"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let pass = conetype(&["check", "ccc", "--D", "0"]);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(stdout(&pass), "PASS D=0 horizon=5\n");

    let fail = conetype(&["check", "ab", "--D", "1"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).starts_with("FAIL D=1 segment=0..2"));

    let not_geodesic = conetype(&["check", "aA", "--D", "3"]);
    assert_eq!(not_geodesic.status.code(), Some(2));
    assert_eq!(stdout(&not_geodesic), "NOT_GEODESIC\n");

    let bad = conetype(&["check", "xyz"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not in the alphabet"));
}

#[test]
fn check_with_fixed_horizon_and_samples() {
    let out = conetype(&[
        "check",
        "acac",
        "--D",
        "1",
        "--horizon",
        "3",
        "--samples",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("PASS D=1 horizon=3\n"));
    assert!(text.contains("lipschitz_violations=0 jump_violations=0 seed=2024"));
    assert_eq!(
        conetype(&["check", "c", "--horizon", "0"]).status.code(),
        Some(3)
    );
}

#[test]
fn enumerate_modes_agree_and_d0_is_linear() {
    let oracle = stdout(&conetype(&[
        "enumerate",
        "--D",
        "1",
        "--n",
        "6",
        "--mode",
        "oracle",
    ]));
    let fast = stdout(&conetype(&[
        "enumerate",
        "--D",
        "1",
        "--n",
        "6",
        "--mode",
        "fast",
    ]));
    let body = |s: &str| s.lines().skip(1).map(String::from).collect::<Vec<_>>();
    assert!(oracle.starts_with("# mode=oracle"));
    assert!(fast.starts_with("# mode=fast"));
    assert_eq!(body(&oracle), body(&fast));

    let d0 = stdout(&conetype(&["enumerate", "--D", "0", "--n", "10"]));
    for (n, line) in d0.lines().skip(2).enumerate() {
        let b: usize = line.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(b, 2 * n + 1);
    }
}

#[test]
fn enumerate_writes_csv_and_handles_empty_languages() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("z2.txt");
    std::fs::write(&group, "# the plane\ngenerators = a, b\ncommuting = a b\n").unwrap();
    let csv = dir.path().join("counts.csv");
    let out = conetype(&[
        "enumerate",
        "--group",
        group.to_str().unwrap(),
        "--D",
        "0",
        "--n",
        "3",
        "--mode",
        "oracle",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(
        text.ends_with("n,a_n,b_n\n0,1,1\n1,0,1\n2,0,1\n3,0,1\n"),
        "{text}"
    );
}

#[test]
fn automaton_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("d1.dot");
    let out = conetype(&["automaton", "--D", "1", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("states=25 consistent=true stabilized=true max_len=6 m=2\n"));
    assert!(text.contains("automaton states=4"));
    let graph = std::fs::read_to_string(&dot).unwrap();
    assert!(graph.starts_with("digraph automaton {"));
    assert!(!graph.contains("fail"));

    let with_fail = dir.path().join("d0.dot");
    conetype(&[
        "automaton",
        "--D",
        "0",
        "--m",
        "1",
        "--max-len",
        "4",
        "--show-fail",
        "--dot",
        with_fail.to_str().unwrap(),
    ]);
    assert!(std::fs::read_to_string(&with_fail)
        .unwrap()
        .contains("label=\"fail\""));
}

#[test]
fn genfunc_prints_series_recurrence_and_growth() {
    let out = stdout(&conetype(&["genfunc", "--D", "1"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "P(t) = 1 + 5*t + 4*t^2");
    assert_eq!(lines[1], "Q(t) = 1 - t - 8*t^2");
    assert_eq!(lines[2], "recurrence: a[n] = 1*a[n-1] + 8*a[n-2] (n >= 3)");
    assert!(lines[3].starts_with("growth = 3.372"));

    let d2 = stdout(&conetype(&[
        "genfunc",
        "--reference",
        "D2",
        "--tol",
        "1e-6",
    ]));
    assert!(d2.contains("Q(t) = 1 - t - 8*t^2 - 24*t^3"));
    assert!(d2.contains("growth = 4.23"));
}

#[test]
fn pump_witnesses() {
    assert_eq!(
        stdout(&conetype(&[
            "pump",
            "--D",
            "0",
            "--m",
            "1",
            "--max-len",
            "4"
        ])),
        "u=c v=c\n"
    );
    assert_eq!(
        stdout(&conetype(&["pump", "--reference", "D1"])),
        "u=c v=c\n"
    );
    assert_eq!(
        conetype(&["pump", "--reference", "nope"]).status.code(),
        Some(3)
    );
}

#[test]
fn reference_commands() {
    let list = stdout(&conetype(&["reference", "list"]));
    assert_eq!(list.lines().count(), 4);
    assert!(list.contains("D1: states=4 series=(1 + 5*t + 4*t^2)/(1 - t - 8*t^2)"));
    let cmp = conetype(&[
        "reference",
        "compare",
        "--D",
        "2",
        "--max-len",
        "4",
        "--jobs",
        "1",
    ]);
    assert_eq!(cmp.status.code(), Some(0));
    assert!(stdout(&cmp).ends_with("disagreements=0\n"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["automaton", "--D", "1"][..],
        &["genfunc", "--D", "1"][..],
        &["enumerate", "--D", "2", "--n", "5", "--mode", "oracle"][..],
        &["check", "aaa", "--D", "2"][..],
    ] {
        assert_eq!(conetype(args).stdout, conetype(args).stdout, "{args:?}");
    }
}

#[test]
fn bad_configuration_is_an_error() {
    assert_eq!(conetype(&["genfunc", "--tol", "0"]).status.code(), Some(3));
    assert_eq!(
        conetype(&["check", "c", "--group", "/nonexistent"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(conetype(&["automaton", "--m", "0"]).status.code(), Some(3));
}
