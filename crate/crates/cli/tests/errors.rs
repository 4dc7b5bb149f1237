mod common;

use std::io::Write;

use common::{fixtures, run_case, tracecat};
use tracecat_cli::{parse, CliError};

fn temp(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("tracecat-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn minimal_monoid_document() {
    let b = parse(r#"{"version": 1, "documents": {"M": {"kind": "monoid", "events": ["a"], "independence": []}}}"#).unwrap();
    let m = b.monoid("M").unwrap();
    assert_eq!(m.len(), 1);
    assert!(m.independent_pairs().is_empty());
}

#[test]
fn five_event_document_has_five_pairs() {
    let text = std::fs::read_to_string(fixtures().join("five_events.json")).unwrap();
    let m = parse(&text).unwrap().monoid("F").unwrap();
    assert_eq!(m.len(), 5);
    assert_eq!(m.independent_pairs().len(), 5);
}

#[test]
fn unknown_event_in_independence_is_a_schema_error() {
    let text = "{\"version\": 1, \"documents\": {\n  \"M\": {\"kind\": \"monoid\", \"events\": [\"a\"], \"independence\": [[\"a\", \"z\"]]}}}";
    match parse(text) {
        Err(CliError::Schema(issues)) => {
            assert_eq!(issues.len(), 1);
            assert_eq!(issues[0].path, "documents.M");
            assert_eq!((issues[0].line, issues[0].column), (Some(2), Some(3)));
            assert!(issues[0].message.contains('z'));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_errors_carry_positions() {
    match parse("{\"version\": 1,\n \"documents\": {,}}") {
        Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 16)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_field_types_are_schema_errors() {
    let e = parse(r#"{"version": 1, "documents": {"M": {"kind": "monoid", "events": "a"}}}"#).unwrap_err();
    assert_eq!(e.code(), "schema_error");
    let e = parse(r#"{"version": 1, "documents": {"M": {"kind": "group", "events": []}}}"#).unwrap_err();
    assert_eq!(e.code(), "schema_error");
    let e = parse(r#"{"version": 2, "documents": {}}"#).unwrap_err();
    assert_eq!(e.code(), "schema_error");
}

#[test]
fn dangling_references() {
    let text = r#"{"version": 1, "documents": {
        "M": {"kind": "monoid", "events": ["a"]},
        "S": {"kind": "space", "monoid": "N", "states": ["x"]}}}"#;
    match parse(text) {
        Err(CliError::DanglingReference { from, name }) => assert_eq!((from.as_str(), name.as_str()), ("S", "N")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn exit_codes() {
    let out = tracecat(&["equiv"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("usage_error"), "{}", out.stderr);

    let out = tracecat(&["equiv", "F", "a", "b"]);
    assert_eq!(out.code, 2, "missing --input");

    let bad = temp("bad.json", "{ not json");
    let out = tracecat(&["-i", bad.to_str().unwrap(), "equiv", "F", "a", "b"]);
    assert_eq!(out.code, 2);
    let v: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["code"], "parse_error");

    let out = run_case("five_events.json", &["equiv", "F", "ax", "a"]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["code"], "unknown_event");

    let out = run_case("five_events.json", &["equiv", "G", "a", "a"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("dangling_reference"));

    let out = run_case("systems.json", &["asys", "classify", "F", "--format", "text"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error[dangling_reference]"), "{}", out.stderr);

    let out = run_case("systems.json", &["asys", "classify", "w"]);
    assert_eq!(out.code, 2, "wrong kind");

    let out = tracecat(&["--version"]);
    assert_eq!(out.code, 0);
}

#[test]
fn domain_errors_exit_one_with_diagnostics() {
    let text = r#"{"version": 1, "documents": {
        "M": {"kind": "monoid", "events": ["a", "b"], "independence": [["a", "b"]]},
        "A": {"kind": "system", "monoid": "M", "states": ["x", "y", "z"], "initial": "x",
              "transitions": [["x", "a", "y"], ["y", "b", "z"]]}}}"#;
    let path = temp("diamond.json", text);
    let p = path.to_str().unwrap();
    let out = tracecat(&["-i", p, "asys", "classify", "A"]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["code"], "invalid_system");
    assert_eq!(v["error"]["diagnostics"][0]["kind"], "diamond violation");

    let out = tracecat(&["-i", p, "asys", "validate", "A"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["summary"]["valid"], false);
}

#[test]
fn polygonal_check_of_a_non_morphism_fails() {
    let text = r#"{"version": 1, "documents": {
        "M": {"kind": "monoid", "events": ["a"]},
        "A": {"kind": "system", "monoid": "M", "states": ["s"], "initial": "s"},
        "B": {"kind": "system", "monoid": "M", "states": ["t", "u"], "initial": "t"},
        "f": {"kind": "system_morphism", "source": "A", "target": "B", "events": {"a": "a"}, "states": {"s": "u"}}}}"#;
    let path = temp("nonmorphism.json", text);
    let p = path.to_str().unwrap();
    let out = tracecat(&["-i", p, "asys", "polygonal-check", "f"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not_a_morphism"));
    let out = tracecat(&["-i", p, "asys", "morphism-check", "f", "--format", "text"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("morphism: false"));
}

#[test]
fn invalid_hom_is_reported_by_hom_check() {
    let text = r#"{"version": 1, "documents": {
        "A": {"kind": "monoid", "events": ["a", "b"], "independence": [["a", "b"]]},
        "B": {"kind": "monoid", "events": ["c", "d"]},
        "h": {"kind": "hom", "source": "A", "target": "B", "map": {"a": "c", "b": "d"}},
        "k": {"kind": "hom", "source": "A", "target": "B", "map": {"a": "c", "b": "c"}}}}"#;
    let path = temp("homs.json", text);
    let p = path.to_str().unwrap();
    let out = tracecat(&["-i", p, "hom-check", "h"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["summary"]["homomorphism"], false);
    let out = tracecat(&["-i", p, "hom-check", "k", "--category", "fpcm"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["summary"]["homomorphism"], true);
    assert_eq!(v["summary"]["independence_preserving"], false);
    assert_eq!(v["summary"]["admitted"], true);
    let out = tracecat(&["-i", p, "monoid", "equalize", "k", "k", "--category", "fpcm-par"]);
    assert_eq!(out.code, 1);
}

#[test]
fn output_file_and_stdin() {
    let dest = std::env::temp_dir().join(format!("tracecat-{}-out.json", std::process::id()));
    let out = run_case("five_events.json", &["equiv", "F", "adecc", "accde", "-o", dest.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&dest).unwrap();
    assert!(written.contains("\"equivalent\": true"));

    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_tracecat"))
        .args(["-i", "-", "equiv", "F", "ab", "ba", "--format", "text"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read_to_string(fixtures().join("five_events.json")).unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "false\n");
}

#[test]
fn results_chain_into_later_commands() {
    let dest = std::env::temp_dir().join(format!("tracecat-{}-chain.json", std::process::id()));
    let out = run_case("systems.json", &["asys", "product", "P", "Q", "-o", dest.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let out = tracecat(&["-i", dest.to_str().unwrap(), "asys", "polygonal-check", "result.P", "--format", "text"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("polygonal: true"));
}
