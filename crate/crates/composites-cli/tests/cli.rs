//! End-to-end tests of the `composites` binary: exact outputs for the
//! worked examples, JSON validity across the subcommand tree, exit-code
//! conventions, and the demo's determinism.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_composites"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_demo_key(dir: &Path) -> String {
    let path = dir.join("key.json");
    std::fs::write(
        &path,
        r#"{"alphabet_size":10,
            "f":[{"type":"caesar","shift":1},{"type":"caesar","shift":2},{"type":"caesar","shift":3}],
            "g":[{"type":"caesar","shift":-1},{"type":"caesar","shift":-2}]}"#,
    )
    .unwrap();
    path.display().to_string()
}

#[test]
fn unit_query_prints_json_verdict() {
    let out = run(&["alg", "is-unit", "--spec", "T(A=Z/4; B=Z/4)", "--poly", "1+2*x"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v, serde_json::json!({"verdict": true}));
}

#[test]
fn atoms_query_prints_the_generator_list() {
    let out = run(&["monoid", "atoms", "--monoid", "M<2,3>", "--bound", "10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v, serde_json::json!(["2", "3"]));
}

#[test]
fn cipher_golden_trace_through_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let key = write_demo_key(dir.path());
    let out = run(&["cipher", "encrypt", "--key", &key, "--message", "0 2 4 6 8 9 6 5"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "1 9 5 9 9 1 9 4 9 7 2 6 1 3 8 3");

    let back = run(&[
        "cipher",
        "decrypt",
        "--key",
        &key,
        "--message",
        "1 9 5 9 9 1 9 4 9 7 2 6 1 3 8 3",
    ]);
    assert!(back.status.success());
    assert_eq!(stdout_of(&back).trim(), "0 2 4 6 8 9 6 5");

    // The same message arriving on standard input.
    let mut child = bin()
        .args(["cipher", "encrypt", "--key", &key])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(b"0 2 4 6 8 9 6 5\n").unwrap();
    let piped = child.wait_with_output().unwrap();
    assert!(piped.status.success());
    assert_eq!(
        String::from_utf8(piped.stdout).unwrap().trim(),
        "1 9 5 9 9 1 9 4 9 7 2 6 1 3 8 3"
    );
}

#[test]
fn charset_maps_text_to_letters_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let key = write_demo_key(dir.path());
    let charset = dir.path().join("charset.txt");
    std::fs::write(&charset, "abcdefghij\n").unwrap();
    let cs = charset.display().to_string();
    let out = run(&[
        "cipher", "encrypt", "--key", &key, "--charset", &cs, "--message", "acegijgf",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "bjfjjbjejhcgbdid");
    let back = run(&[
        "cipher", "decrypt", "--key", &key, "--charset", &cs, "--message", "bjfjjbjejhcgbdid",
    ]);
    assert_eq!(stdout_of(&back).trim(), "acegijgf");
}

#[test]
fn message_encoding_subcommands() {
    let out = run(&["cipher", "mencode", "--message", "2 2 5", "--alphabet", "26"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "x^57 + x^28 + x^2");
    let back = run(&["cipher", "mdecode", "--poly", "x^57 + x^28 + x^2", "--alphabet", "26"]);
    assert!(back.status.success());
    assert_eq!(stdout_of(&back).trim(), "2 2 5");
}

#[test]
fn accp_chain_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.txt");
    std::fs::write(&chain, "# a declining chain\nx^5\nx^3\nx^2\n").unwrap();
    let out = run(&[
        "monoid",
        "accp-check",
        "--monoid",
        "M<2,3>",
        "--chain",
        &chain.display().to_string(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["accepted"], serde_json::json!(false));
    assert_eq!(v["steps"][1]["index"], serde_json::json!(2));
    assert_eq!(v["steps"][1]["divides"], serde_json::json!(false));
    assert_eq!(v["steps"][0]["divides"], serde_json::json!(true));
}

#[test]
fn every_subcommand_emits_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let key = write_demo_key(dir.path());
    let chain = dir.path().join("chain.txt");
    std::fs::write(&chain, "x^5\nx^3\n").unwrap();
    let chain = chain.display().to_string();
    let t = "T(A=Q; B=Q(sqrt2))";
    let invocations: Vec<Vec<&str>> = vec![
        vec!["alg", "membership", "--spec", t, "--poly", "1+sqrt2*x"],
        vec!["alg", "is-unit", "--spec", "T(A=Z/4; B=Z/4)", "--poly", "1+2*x"],
        vec!["alg", "is-nilpotent", "--spec", "T(A=Z/4; B=Z/4)", "--poly", "2+2*x"],
        vec!["alg", "irreducible", "--spec", t, "--poly", "x^2-2"],
        vec!["alg", "squarefree", "--spec", "T(A=GF(2); B=GF(2))", "--poly", "x^2+x"],
        vec![
            "alg", "graded-check", "--spec",
            "TPn(A0=Q, A1=Q(sqrt2), A2=Q; B=Q(sqrt2,sqrt3))", "--i", "1", "--j", "1",
        ],
        vec!["alg", "quotient-x", "--spec", t, "--poly", "3+sqrt2*x"],
        vec!["alg", "in-system", "--spec", t, "--poly", "1+x", "--variant", "unit-constant"],
        vec![
            "alg", "frac", "--spec", t, "--op", "add", "--num1", "x", "--den1", "1+x",
            "--num2", "x", "--den2", "1+x",
        ],
        vec!["monoid", "contains", "--monoid", "M<1/2,1/3>", "--value", "5/6"],
        vec!["monoid", "atoms", "--monoid", "M<2,3>", "--bound", "10"],
        vec![
            "monoid", "construct-x1", "--monoid", "M<2,3>", "--primes", "2",
            "--exponents", "2,3",
        ],
        vec![
            "monoid", "irreducible-oracle", "--monoid", "M<2,3>", "--poly", "2*x^3-x^2",
            "--bound", "3", "--budget-coeff", "4",
        ],
        vec!["monoid", "beta", "--monoid", "M<2,3>", "--poly", "x^5+x^2"],
        vec!["monoid", "accp-check", "--monoid", "M<2,3>", "--chain", &chain],
        vec!["monoid", "localize0", "--monoid", "M<2,3>", "--num", "2*x^3", "--den", "4*x^2"],
        vec!["cipher", "expand-key", "--key", &key],
        vec!["cipher", "encrypt", "--key", &key, "--message", "0 2 4"],
        vec!["cipher", "decrypt", "--key", &key, "--message", "1 9 5 9 9 1 9 4"],
        vec!["cipher", "mencode", "--message", "2 2 5"],
        vec!["cipher", "mdecode", "--poly", "x^2"],
        vec!["demo", "paper"],
    ];
    for argv in invocations {
        let mut with_json: Vec<&str> = argv.clone();
        with_json.push("--json");
        let out = run(&with_json);
        let text = stdout_of(&out);
        assert!(out.status.success(), "{argv:?} failed: {text}");
        serde_json::from_str::<serde_json::Value>(&text)
            .unwrap_or_else(|e| panic!("{argv:?} printed invalid JSON ({e}): {text}"));
    }
}

#[test]
fn demo_is_deterministic_and_tampered_keys_fail() {
    let first = run(&["demo", "paper"]);
    let second = run(&["demo", "paper"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "demo output must be byte-identical");
    let text = stdout_of(&first);
    assert!(text.contains("composite-key cipher golden trace: PASS"));
    assert!(text.contains("all items passed"));

    // A tampered key must fail the cipher item and flip the exit code.
    let dir = tempfile::tempdir().unwrap();
    let bad_key = dir.path().join("bad.json");
    std::fs::write(
        &bad_key,
        r#"{"alphabet_size":10,
            "f":[{"type":"caesar","shift":5},{"type":"caesar","shift":2},{"type":"caesar","shift":3}],
            "g":[{"type":"caesar","shift":-1},{"type":"caesar","shift":-2}]}"#,
    )
    .unwrap();
    let tampered = run(&["demo", "paper", "--key", &bad_key.display().to_string()]);
    assert!(!tampered.status.success());
    let text = stdout_of(&tampered);
    assert!(text.contains("composite-key cipher golden trace: FAIL"));
}

#[test]
fn exit_codes_separate_usage_and_domain_errors() {
    // Unknown flag: usage error, exit 2.
    let usage = run(&["alg", "is-unit", "--no-such-flag"]);
    assert_eq!(usage.status.code(), Some(2));
    // Bad spec string: domain error, exit 1 with a message on stderr.
    let domain = run(&["alg", "is-unit", "--spec", "What(A=Z)", "--poly", "x"]);
    assert_eq!(domain.status.code(), Some(1));
    let err = String::from_utf8(domain.stderr).unwrap();
    assert!(err.contains("error:"), "stderr was: {err}");
    // A non-member polynomial in a strict query also exits 1.
    let not_member = run(&[
        "alg", "irreducible", "--spec", "T(A=Q; B=Q(sqrt2))", "--poly", "sqrt2",
    ]);
    assert_eq!(not_member.status.code(), Some(1));
}
