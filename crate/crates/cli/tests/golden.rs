use graftwood_cli::{execute, Outcome};

fn run(args: &[&str]) -> Outcome {
    execute(std::iter::once("graftwood").chain(args.iter().copied()))
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

/// (argv, exact stdout)
const GOLDEN: &[(&[&str], &str)] = &[
    (&["enumerate", "--set", "G", "--degree", "2"], "1 2\n1[2]\n2[1]\n"),
    (&["enumerate", "--set", "G", "--degree", "3", "--signature", "++-"], "3[1 2]\n3[1[2]]\n"),
    (&["enumerate", "--set", "G", "--degree", "1", "--signature", "+"], "1\n"),
    (&["enumerate", "--set", "G", "--degree", "2", "--signature", "+-"], "2[1]\n"),
    (&["enumerate", "--set", "Tminus", "--degree", "3"], "3[1 2]\n3[1[2]]\n3[2[1]]\n"),
    (&["enumerate", "--set", "G0", "--degree", "2", "--trees"], "1[2]\n"),
    (&["enumerate", "--set", "Br", "--degree", "3"], "1[2 3]\n1[3[2]]\n"),
    (&["enumerate", "--set", "G", "--degree", "8", "--count-only"], "6435\n"),
    (&["enumerate", "--set", "G", "--degree", "8", "--trees", "--count-only"], "3432\n"),
    (&["enumerate", "--set", "T", "--degree", "7", "--count-only"], "1806\n"),
    (&["--json", "enumerate", "--set", "T", "--degree", "2"], "[\"1[2]\",\"2[1]\"]\n"),
    (&["op", "lgraft", "1", "1[2]"], "2[1 3]\n"),
    (&["op", "lgraft", "2[1]", "1[2] 3"], "3[2[1] 4] 5\n"),
    (&["op", "lgraft", "1 2", "1"], "3[1 2]\n"),
    (&["op", "rgraft", "1[2]", "1[2]"], "1[2 4[3]]\n"),
    (&["op", "rgraft", "1", "1 2 3"], "1[2 3 4]\n"),
    (&["op", "rgraft", "1", "2[1]"], "1[3[2]]\n"),
    (&["op", "nwarrow", "1 2 3", "1[2]"], "1 2 5[3[4]]\n"),
    (&["op", "nwarrow", "2[1]", "2[1]"], "4[3[2[1]]]\n"),
    (&["op", "nwarrow", "1", "1[2] 3"], "4[1[2] 3]\n"),
    (&["op", "concat", "1[2]", "1 4[2 3]"], "1[2] 3 6[4 5]\n"),
    (&["op", "lgraft", "()", "2[1]"], "2[1]\n"),
    (&["op", "lgraft", "2[1]", "()"], "0\n"),
    (&["--json", "op", "rgraft", "1", "1"], "[{\"forest\":\"1[2]\",\"coeff\":\"1\"}]\n"),
    (
        &["coproduct", "2[4[1] 3]"],
        "2[4[1] 3] ⊗ ()\n() ⊗ 2[4[1] 3]\n1 ⊗ 1[3 2]\n1 ⊗ 2[3[1]]\n1 2 ⊗ 1[2]\n2[1] ⊗ 1[2]\n3[1] 2 ⊗ 1\n",
    ),
    (&["coproduct", "--variant", "prec", "1 2"], "1 ⊗ 1\n"),
    (&["coproduct", "--variant", "succ", "1 2"], "1 ⊗ 1\n"),
    (&["coproduct", "--variant", "reduced", "1"], "0\n"),
    (
        &["--json", "coproduct", "1"],
        "[{\"lea\":\"1\",\"roo\":\"()\",\"coeff\":\"1\"},{\"lea\":\"()\",\"roo\":\"1\",\"coeff\":\"1\"}]\n",
    ),
    (&["count", "--table", "Binfty_trees", "--max", "8"], "1 1\n2 2\n3 6\n4 20\n5 70\n6 252\n7 924\n8 3432\n"),
    (&["count", "--table", "Bi_trees(3)", "--max", "8"], "1 1\n2 2\n3 6\n4 20\n5 50\n6 142\n7 432\n8 1374\n"),
    (&["--json", "count", "--table", "D_dims", "--max", "5"], "{\"1\":1,\"2\":1,\"3\":2,\"4\":6,\"5\":22}\n"),
    (&["count", "--table", "B_forests", "--max", "3", "--verify"], "1 1 1 ok\n2 3 3 ok\n3 11 11 ok\n"),
    (&["indexings", "--family", "G", "0"], "1\n"),
    (&["indexings", "--family", "G", "0[0 0]"], "3\n"),
    (&["indexings", "--family", "T", "0[0 0]"], "3\n"),
    (&["indexings", "--family", "T", "0[0[0]]", "--oracle"], "3\noracle 3\n"),
    (&["indexings", "--family", "G", "0[0[0]]", "--oracle"], "3\noracle 3\n"),
];

#[test]
fn golden_outputs() {
    for (args, want) in GOLDEN {
        assert_eq!(stdout(args), *want, "{args:?}");
    }
}

#[test]
fn deterministic() {
    for (args, _) in GOLDEN.iter().take(5) {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn last_b_forest_count() {
    let out = stdout(&["count", "--table", "B_forests", "--max", "8"]);
    assert_eq!(out.lines().last(), Some("8 20793"));
}

#[test]
fn large_counts_stay_exact_in_json() {
    let out = stdout(&["--json", "count", "--table", "B_forests", "--max", "64"]);
    let human = stdout(&["count", "--table", "B_forests", "--max", "64"]);
    let last = human.lines().last().unwrap().split(' ').nth(1).unwrap().to_string();
    assert!(last.len() > 20);
    assert!(out.trim_end().ends_with(&format!("\"64\":{last}}}")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["enumerate", "--set", "X", "--degree", "2"],
        &["enumerate", "--set", "G"],
        &["op", "lgraft", "1["],
        &["op", "lgraft", "1", "1 1"],
        &["coproduct", "--variant", "sideways", "1"],
        &["count", "--table", "nope", "--max", "3"],
        &["check", "--suite", "everything"],
    ] {
        let out = run(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["op", "rgraft", "()", "()"][..],
        &["enumerate", "--set", "G", "--degree", "0"],
        &["count", "--table", "B_trees", "--max", "65"],
        &["indexings", "--family", "Bl", "0"],
    ] {
        let out = run(args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stderr.starts_with("error: "), "{args:?}");
    }
}

#[test]
fn check_suites_report_and_exit() {
    let out = run(&["check", "--suite", "duplicial", "--max-degree", "4"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.lines().last().unwrap().starts_with("PASS suite duplicial"));

    let out = run(&["--json", "check", "--suite", "counts", "--max-degree", "5"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["suite"], "counts");
    assert_eq!(v["passed"], true);

    // The right coproduct identity fails on pairs whose grafted tree has a non-maximal root.
    let out = run(&["check", "--suite", "rightgraft", "--max-degree", "3"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL"));
}

#[test]
fn help_goes_to_stdout() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("enumerate"));
}
