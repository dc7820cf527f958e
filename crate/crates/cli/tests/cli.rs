use std::io::Write as _;

use serde_json::Value;
use tangent_forge_cli::output::OutputRecord;
use tangent_forge_cli::run;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tangent-forge").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn records(out: &str) -> Vec<OutputRecord> {
    out.lines().map(|l| serde_json::from_str(l).expect("valid json line")).collect()
}

#[test]
fn every_example_reproduces() {
    for id in ["ex1", "ex2", "ex3", "ex3n0", "remark"] {
        let r = cli(&["reproduce", id]);
        assert_eq!(r.code, 0, "{id}: {}{}", r.out, r.err);
        assert!(r.err.is_empty(), "{id}: {}", r.err);
    }
}

#[test]
fn n_zero_identity_is_printed() {
    let r = cli(&["reproduce", "ex3n0"]);
    assert!(r.out.lines().any(|l| l == "5^3+11^3+28^3 = 18^3+26^3"), "{}", r.out);
    assert!(r.out.lines().any(|l| l == "5+11+28 = 18+26"), "{}", r.out);
}

#[test]
fn unknown_example_is_a_usage_error() {
    let r = cli(&["reproduce", "ex9"]);
    assert_eq!(r.code, 2);
    assert!(r.out.is_empty());
}

#[test]
fn derive_prints_formulas_and_values() {
    let r = cli(&["derive", "--t1", "3", "--t2", "3", "--symbolic-mn", "--format", "text"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("A = m*p1^2*r1 - n*q1^2*s1\n"), "{}", r.out);
    assert!(r.out.contains("B = -m*p1*r1^2 + n*q1*s1^2\n"), "{}", r.out);
    assert!(r.out.contains("x'1 = p1*B + r1*A = "), "{}", r.out);
    assert!(r.out.contains("y'3 = -s1*A = "), "{}", r.out);
}

#[test]
fn derive_verify_reports_zero_residuals() {
    let r = cli(&["derive", "--t1", "4", "--t2", "7", "--m", "2", "--n", "3", "--verify", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let rec = &records(&r.out)[0];
    let v = &rec.payload["verification"];
    assert_eq!(v["residual_k1"], "0");
    assert_eq!(v["residual_k3"], "0");
    assert_eq!(v["nontrivial"], true);
    assert_eq!(rec.payload["m"], "2");
}

#[test]
fn verify_exit_codes() {
    let good = cli(&["verify", "--m", "1", "--n", "1", "--xs", "5,11,28", "--ys", "18,26"]);
    assert_eq!(good.code, 0, "{}", good.err);
    assert!(good.out.contains("k=3: 23408 = 23408"), "{}", good.out);

    let bad = cli(&["verify", "--m", "1", "--n", "1", "--xs", "5,11,28", "--ys", "18,27", "--k", "3"]);
    assert_eq!(bad.code, 1);
    assert!(bad.out.contains("23408") && bad.out.contains("25515"), "{}", bad.out);
    assert!(!bad.err.is_empty());

    let negative = cli(&["verify", "--m", "3", "--n", "2", "--xs", "-4,2", "--ys", "-5,1"]);
    assert_eq!(negative.code, 1);
}

#[test]
fn verify_reads_tuple_files_with_flags_winning() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# n = 0 instance\nm = 1\nn = 0\nxs = 28, 11, 5, -18, -26\nys = 1, 2, 3, 4, 5").unwrap();
    let path = f.path().to_str().unwrap();
    assert_eq!(cli(&["verify", "--file", path]).code, 0);
    assert_eq!(cli(&["verify", "--file", path, "--n", "1"]).code, 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["derive", "--t1", "2", "--t2", "3"],
        vec!["derive", "--t1", "3", "--t2", "3", "--m", "0"],
        vec!["derive", "--t1", "3"],
        vec!["derive", "--t1", "3", "--t2", "3", "--m", "1", "--symbolic-mn"],
        vec!["instantiate", "--t1", "3", "--t2", "3", "--assign", "p1=1,q1=1,r1=1"],
        vec!["instantiate", "--t1", "3", "--t2", "3", "--assign", "z1=1"],
        vec!["verify", "--m", "1", "--n", "1", "--xs", "1,2"],
        vec!["verify", "--m", "1", "--n", "1", "--xs", "1", "--ys", "1", "--k", "2"],
        vec!["search", "--t1", "3", "--t2", "3", "--range", "2..1"],
        vec!["oracle", "--t1", "3", "--t2", "3"],
        vec!["frobnicate"],
    ] {
        let r = cli(&args);
        assert_eq!(r.code, 2, "{args:?}: {}{}", r.out, r.err);
        assert!(r.out.is_empty(), "{args:?}");
        assert!(!r.err.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_and_degeneracy_exit_three() {
    let budget = cli(&["oracle", "--t1", "6", "--t2", "6", "--bound", "500"]);
    assert_eq!(budget.code, 3);
    assert!(budget.err.contains("exceeds"), "{}", budget.err);

    let grid = cli(&["search", "--t1", "3", "--t2", "3", "--range", "-50..50", "--max-points", "1000"]);
    assert_eq!(grid.code, 3);

    // B vanishes here, so every entry is zero and nothing is left to normalize
    let zero = cli(&[
        "instantiate",
        "--t1",
        "3",
        "--t2",
        "3",
        "--m",
        "1",
        "--n",
        "1",
        "--assign",
        "p1=1,q1=1,r1=2,s1=2",
        "--normalize",
    ]);
    assert_eq!(zero.code, 3, "{}{}", zero.out, zero.err);
}

#[test]
fn help_goes_to_stdout() {
    let r = cli(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("reproduce"));
    assert!(r.err.is_empty());
}

#[test]
fn json_records_round_trip_byte_for_byte() {
    let runs = [
        cli(&["--format", "json", "derive", "--t1", "5", "--t2", "4", "--verify"]),
        cli(&[
            "--format",
            "json",
            "instantiate",
            "--t1",
            "4",
            "--t2",
            "4",
            "--assign",
            "p1=2,p2=5,q1=1,q2=3,r1=6,r2=7,s1=4,s2=9,m=1000000007,n=999999937",
        ]),
        cli(&["--format", "json", "verify", "--m", "1", "--n", "1", "--xs", "5,11,28", "--ys", "18,26"]),
        cli(&["--format", "json", "search", "--t1", "3", "--t2", "3", "--range", "-2..2"]),
        cli(&["--format", "json", "oracle", "--t1", "3", "--t2", "2", "--bound", "20"]),
        cli(&["--format", "json", "reproduce", "remark"]),
    ];
    let mut kinds = Vec::new();
    for r in &runs {
        assert_eq!(r.code, 0, "{}", r.err);
        for (line, rec) in r.out.lines().zip(records(&r.out)) {
            assert_eq!(rec.schema_version, "1");
            assert_eq!(rec.to_json_line(), line);
            let generic: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&generic).unwrap(), line);
            kinds.push(generic["kind"].as_str().unwrap().to_string());
        }
    }
    kinds.sort();
    kinds.dedup();
    assert_eq!(kinds, ["numeric_solution", "oracle_set", "reproduction", "symbolic_solution", "verification"]);
}

#[test]
fn integers_are_decimal_strings() {
    let r = cli(&[
        "--format",
        "json",
        "instantiate",
        "--t1",
        "4",
        "--t2",
        "4",
        "--assign",
        "p1=2,p2=5,q1=1,q2=3,r1=6,r2=7,s1=4,s2=9,m=1000000007,n=999999937",
    ]);
    let rec = &records(&r.out)[0];
    let xs = rec.payload["xs"].as_array().unwrap();
    assert!(xs.iter().all(Value::is_string));
    // -1456m + 104n
    assert_eq!(xs[0], "-1352000016744");
}

#[test]
fn search_config_file_and_flag_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "t1 = 3\nt2 = 3\nm = 1\nn = 1\nrange = -2..2\nrange.p1 = 1..2\nlimit = 50").unwrap();
    let path = f.path().to_str().unwrap();

    let from_file = cli(&["--format", "json", "search", "--config", path]);
    assert_eq!(from_file.code, 0, "{}", from_file.err);
    assert!(from_file.err.contains("250 points"), "{}", from_file.err);

    let overridden = cli(&["--format", "json", "search", "--config", path, "--var", "p1=-2..2", "--n", "2"]);
    assert_eq!(overridden.code, 0, "{}", overridden.err);
    assert!(overridden.err.contains("625 points"), "{}", overridden.err);
    for rec in records(&overridden.out) {
        assert_eq!(rec.payload["n"], "2");
    }

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "t1 = 3\nt2 = 3\ncolour = blue").unwrap();
    assert_eq!(cli(&["search", "--config", bad.path().to_str().unwrap()]).code, 2);
}

#[test]
fn oracle_config_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "t1 = 3\nt2 = 2\nbound = 30\nceiling = 10").unwrap();
    let path = f.path().to_str().unwrap();
    assert_eq!(cli(&["oracle", "--config", path]).code, 3);
    let r = cli(&["--format", "json", "oracle", "--config", path, "--ceiling", "1000000"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let rec = &records(&r.out)[0];
    let has = rec.payload["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["lhs"] == serde_json::json!(["5", "11", "28"]) && w["rhs"] == serde_json::json!(["18", "26"]));
    assert!(has);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "search", "--t1", "4", "--t2", "3", "--range", "-1..1", "--var", "p1=1..2"];
    let first = cli(&args);
    assert_eq!(first.code, 0, "{}", first.err);
    for _ in 0..3 {
        let again = cli(&args);
        assert_eq!(again.out, first.out);
        assert_eq!(again.err, first.err);
    }
}
