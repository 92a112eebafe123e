use std::path::PathBuf;
use std::process::Command;

use rosetta_cli::run::{EXIT_INPUT, EXIT_IO, EXIT_NOT_EQUAL, EXIT_OK, EXIT_UNKNOWN};
use rosetta_cli::{run_command, RunReport};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> RunReport {
    run_command(args)
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn reflexive_eq_exits_zero() {
    let r = run(&["eq", &data("chem.sig"), "--lhs", "t1", "--rhs", "t1"]);
    assert_eq!(r.exit_code, EXIT_OK, "{:?}", r);
    assert_eq!(r.verdict.as_deref(), Some("equal (normal form)"));
}

#[test]
fn church_file_runs_to_six() {
    let r = run(&["lam", "run", &data("church.lam"), "--fuel", "10000"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(
        r.output.iter().any(|l| l == "church numeral: 6"),
        "{:?}",
        r.output
    );
}

#[test]
fn internal_composition_proof_checks() {
    let r = run(&["mill", "check", &data("icomp.mill")]);
    assert_eq!(r.exit_code, EXIT_OK, "{:?}", r);
    assert_eq!(
        r.output,
        [
            "modus_ponens: valid X * (X -o Y) |- Y",
            "icomp: valid (X -o Y) * (Y -o Z) |- X -o Z"
        ]
    );
    let r = run(&["mill", "compile", &data("icomp.mill")]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.output[0], "modus_ponens = uncurry(id[X -o Y])");
}

#[test]
fn the_binary_reports_through_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rosetta");
    let out = Command::new(bin)
        .args(["lam", "run", &data("church.lam")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("church numeral: 6"));
    let out = Command::new(bin)
        .args(["check", "missing.sig"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_IO));
    assert!(!out.stderr.is_empty());
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn not_equal_and_invalid_exit_one() {
    let r = run(&[
        "eq",
        &data("chem.sig"),
        "--lhs",
        "t1",
        "--rhs",
        "burn",
        "--model",
        &data("chem.json"),
        "--strategy",
        "model",
    ]);
    assert_eq!(r.exit_code, EXIT_NOT_EQUAL, "{:?}", r);
    assert_eq!(r.witness.as_ref().unwrap()["model"], "chem");

    let dir = tempfile::tempdir().unwrap();
    let bad = write_tmp(
        &dir,
        "bad.mill",
        r#"proof wrong = (c-inv (i "X-oY |- X-oY") "X*(X-oY) |- Z")"#,
    );
    let r = run(&["mill", "check", &bad]);
    assert_eq!(r.exit_code, EXIT_NOT_EQUAL);
    assert!(!r.diagnostics.is_empty());

    let m = write_tmp(
        &dir,
        "corrupt.json",
        r#"{"kind": "matrix", "objects": {"X": 2},
            "cups": {"X": {"rows": 4, "cols": 1, "entries": [[{"re": "1/1", "im": "0/1"}],
                [{"re": "1/1", "im": "0/1"}], [{"re": "0/1", "im": "0/1"}], [{"re": "1/1", "im": "0/1"}]]}}}"#,
    );
    let r = run(&[
        "coherence",
        "--mode",
        "compact-symmetric",
        "--model",
        &m,
        "--samples",
        "3",
    ]);
    assert_eq!(r.exit_code, EXIT_NOT_EQUAL, "{:?}", r);
    assert!(r.verdict.unwrap().contains("zigzag"));
}

#[test]
fn unknown_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let sig = write_tmp(&dir, "closed.sig", "mode closed-monoidal\n");
    let r = run(&[
        "eq",
        &sig,
        "--lhs",
        "curry(ev[I, I]) ; unleft[I -o I]",
        "--rhs",
        "unleft[I -o I]",
    ]);
    assert_eq!(r.exit_code, EXIT_UNKNOWN, "{:?}", r);
    let r = run(&[
        "lam",
        "run",
        "--term",
        "(\\x. x x) (\\x. x x)",
        "--fuel",
        "100",
    ]);
    assert_eq!(r.exit_code, EXIT_UNKNOWN, "{:?}", r);
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write_tmp(&dir, "broken.sig", "mode symmetric\nobj X\ngen f : X -> \n");
    let dangling = write_tmp(
        &dir,
        "dangling.sig",
        "mode symmetric\nobj X\ngen f : X -> Q\n",
    );
    let rational = write_tmp(
        &dir,
        "rational.json",
        r#"{"kind": "matrix", "objects": {"X": 1}, "generators": {"f":
            {"rows": 1, "cols": 1, "entries": [[{"re": "2/4", "im": "0/1"}]]}}}"#,
    );
    let xsig = write_tmp(&dir, "x.sig", "mode symmetric\nobj X\ngen f : X -> X\n");
    let chem = data("chem.sig");
    let (bad_shape, xyzw) = (data("chem_bad_shape.json"), data("xyzw.lin"));
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", &broken],
        vec!["check", &dangling],
        vec!["eq", &chem, "--lhs", "burn ;", "--rhs", "burn"],
        vec!["eq", &chem, "--lhs", "burn ; burn", "--rhs", "burn"],
        vec!["eq", &chem, "--lhs", "burn", "--rhs", "braid[H2O, H2O]"],
        vec![
            "eq",
            &chem,
            "--lhs",
            "t1",
            "--rhs",
            "t1",
            "--strategy",
            "guess",
        ],
        vec!["eq", &chem, "--lhs", "dup[H2]", "--rhs", "dup[H2]"],
        vec!["eval", &chem, "--model", &bad_shape, "--term", "burn"],
        vec!["eval", &xsig, "--model", &rational, "--term", "f"],
        vec!["normalize", &chem, "--term", "nosuch"],
        vec!["coherence", "--mode", "tangled", "--samples", "1"],
        vec!["lam", "run", "--term", "\\x."],
        vec!["lin", "cpvp", &xyzw, "--term", "(x:X (x) x:X)"],
        vec!["frobnicate"],
        vec!["eq", &chem],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(r.exit_code, EXIT_INPUT, "{:?} gave {:?}", args, r);
        assert!(!r.diagnostics.is_empty(), "{:?}", args);
    }
}

#[test]
fn io_errors_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let nowhere = dir.path().join("no/such/dir/out.svg");
    let nowhere = nowhere.to_string_lossy();
    let missing = dir.path().join("missing.json");
    let missing = missing.to_string_lossy();
    let chem = data("chem.sig");
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "/nonexistent/chem.sig"],
        vec!["eval", &chem, "--model", &missing, "--term", "burn"],
        vec!["mill", "check", "/nonexistent/p.mill"],
        vec!["lam", "run", "/nonexistent/x.lam"],
        vec!["lin", "cpvp", "/nonexistent/x.lin", "--term", "x:X"],
        vec![
            "diagram", &chem, "--term", "burn", "--format", "svg", "-o", &nowhere,
        ],
        vec!["check", &chem, "--report", &nowhere],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(r.exit_code, EXIT_IO, "{:?} gave {:?}", args, r);
    }
}

#[test]
fn normalize_and_eval() {
    let dir = tempfile::tempdir().unwrap();
    let sig = write_tmp(&dir, "cart.sig", "mode cartesian-closed\nobj X\n");
    let r = run(&[
        "normalize",
        &sig,
        "--term",
        "dup[X] ; (id[X] * del[X]) ; right[X]",
    ]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.output[0], "id[X]");

    let r = run(&[
        "eval",
        &data("chem.sig"),
        "--model",
        &data("chem.json"),
        "--term",
        "braid[H2, O2]",
    ]);
    assert_eq!(r.exit_code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.output[0]).unwrap();
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(4), Some(4)));
    // (i, j) -> (j, i) on 2 x 2: the basis vector e0 (x) e1 (index 1) goes to index 2.
    assert_eq!(v["entries"][2][1]["re"], "1/1");
    assert_eq!(v["entries"][1][1]["re"], "0/1");
}

#[test]
fn lambda_and_linear_commands() {
    let r = run(&["lam", "ski", "--term", "\\x. \\y. y"]);
    assert_eq!(r.output, ["K(I)"]);
    let r = run(&["lam", "church", "3"]);
    assert_eq!(r.output, ["\\f. \\x. f (f (f x))"]);
    let r = run(&["lam", "run", &data("church.lam"), "--def", "times"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.verdict.is_none());
    let r = run(&["lam", "run", &data("church.lam"), "--def", "nothing"]);
    assert_eq!(r.exit_code, EXIT_INPUT);

    let lin = data("xyzw.lin");
    let r = run(&[
        "lin",
        "cpvp",
        &lin,
        "--term",
        "braid(x:X (x) f(y:Y (x) z:Z))",
    ]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(
        r.output,
        ["cp: braid ∘ (id ⊗ (f ∘ (id ⊗ id)))", "vp: (x ⊗ (y ⊗ z))"]
    );
    let r = run(&[
        "lin",
        "eq",
        &lin,
        "--lhs",
        "braid(braid(x:X (x) y:Y))",
        "--rhs",
        "(x:X (x) y:Y)",
    ]);
    assert_eq!(r.exit_code, EXIT_OK, "{:?}", r);
    let r = run(&[
        "lin",
        "eq",
        &lin,
        "--lhs",
        "(x:X (x) y:X)",
        "--rhs",
        "braid((x:X (x) y:X))",
    ]);
    assert_eq!(r.exit_code, EXIT_NOT_EQUAL, "{:?}", r);
    let r = run(&[
        "lin",
        "eq",
        &lin,
        "--combinators",
        "--lhs",
        "braid[X, Y] ; braid[Y, X]",
        "--rhs",
        "id[X * Y]",
    ]);
    assert_eq!(r.exit_code, EXIT_OK, "{:?}", r);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let chem = data("chem.sig");
    let model = data("chem.json");
    let icomp = data("icomp.mill");
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "eq", &chem, "--lhs", "t1", "--rhs", "burn", "--model", &model, "--seed", "3",
        ],
        vec![
            "eq",
            &chem,
            "--lhs",
            "t1",
            "--rhs",
            "burn",
            "--strategy",
            "search",
            "--seed",
            "9",
        ],
        vec![
            "coherence",
            "--mode",
            "symmetric",
            "--samples",
            "4",
            "--seed",
            "11",
        ],
        vec!["diagram", &chem, "--term", "t1", "--format", "svg"],
        vec!["mill", "compile", &icomp],
    ];
    for (i, args) in commands.iter().enumerate() {
        let reports: Vec<String> = (0..2)
            .map(|_| {
                let path = dir.path().join(format!("r{}.json", i));
                let path = path.to_string_lossy().into_owned();
                let mut a = args.clone();
                a.extend(["--report", &path]);
                let r = run(&a);
                assert!(r.exit_code <= EXIT_UNKNOWN, "{:?}", r);
                std::fs::read_to_string(&path).unwrap()
            })
            .collect();
        assert_eq!(reports[0], reports[1], "{:?}", args);
    }
    let r = run(&["check", &chem, "--timing"]);
    assert!(r.elapsed_ms.is_some());
}
