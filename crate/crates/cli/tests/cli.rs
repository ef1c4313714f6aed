use std::path::{Path, PathBuf};

use polar_cli::{run, ResultDocument, EXIT_ERROR, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};

fn problem(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/problems")
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["polar"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn goldens() -> Vec<(String, String, PathBuf)> {
    let mut v: Vec<_> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .map(|p| {
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            let (cmd, prob) = stem.split_once('_').unwrap();
            (cmd.to_string(), prob.to_string(), p)
        })
        .collect();
    v.sort();
    v
}

#[test]
fn golden_outputs_are_reproduced() {
    let all = goldens();
    assert!(all.len() >= 10);
    for (cmd, prob, path) in all {
        let (code, out, err) = invoke(&[&cmd, "--input", &problem(&prob), "--json"]);
        let want = if cmd == "main1" && prob == "rem_main2" { EXIT_VERDICT } else { EXIT_OK };
        assert_eq!(code, want, "{cmd} {prob}: {err}");
        let expected = std::fs::read_to_string(&path).unwrap();
        assert_eq!(out, expected, "{cmd} {prob} differs from {}", path.display());
    }
}

#[test]
fn golden_documents_round_trip() {
    for (_, _, path) in goldens() {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = ResultDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text, "{}", path.display());
        assert_eq!(ResultDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}

#[test]
fn polar_of_worked_example_is_z2_on_one_curve() {
    let (code, out, _) = invoke(&["polar", "--input", &problem("example3_5"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert_eq!(doc.cycles.len(), 1);
    assert_eq!(doc.cycles[0].generators, vec!["y", "t^2 + x"]);
    assert_eq!(doc.cycles[0].coeff_by_degree.len(), 1);
    assert_eq!(doc.cycles[0].coeff_by_degree[&0].rank, 2);
}

#[test]
fn output_is_byte_stable() {
    let a = invoke(&["gecc", "--input", &problem("example2_6"), "--json", "--seed", "7"]);
    let b = invoke(&["gecc", "--input", &problem("example2_6"), "--json", "--seed", "7"]);
    assert_eq!(a, b);
}

#[test]
fn text_rendering() {
    let (code, out, _) = invoke(&["milnor", "--input", &problem("cusp")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("milnor = 2"), "{out}");
    let (code, out, _) = invoke(&["main1", "--input", &problem("rem_main2")]);
    assert_eq!(code, EXIT_VERDICT);
    assert!(out.contains("f_cut_isolated: FALSE"), "{out}");
}

#[test]
fn main2_refuses_without_isolated_cut() {
    let (code, out, _) = invoke(&["main2", "--input", &problem("rem_main2"), "--json"]);
    assert_eq!(code, EXIT_VERDICT);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert!(!doc.verdicts["f_cut_isolated"]);
    assert!(doc.tables.is_empty());
}

#[test]
fn lex_order_changes_printed_bases_only() {
    let (_, a, _) = invoke(&["polar", "--input", &problem("example3_5"), "--json", "--order", "lex"]);
    let doc = ResultDocument::from_json(&a).unwrap();
    assert_eq!(doc.cycles[0].coeff_by_degree[&0].rank, 2);
    assert_eq!(doc.cycles[0].generators.len(), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(invoke(&["frobnicate", "--input", "x.json"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["gecc", "--input", &problem("cusp"), "--bogus"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["gecc"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["gecc", "--input", &problem("cusp"), "--order", "weird"]).0, EXIT_USAGE);
    assert_eq!(invoke(&[]).0, EXIT_USAGE);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("main1"));
}

#[test]
fn input_errors() {
    let (code, _, err) = invoke(&["gecc", "--input", "/nonexistent/problem.json"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("error"), "{err}");

    let dir = std::env::temp_dir().join(format!("polar-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let missing_f = dir.join("missing_f.json");
    std::fs::write(
        &missing_f,
        r#"{"variables":["x","y"],"space":{"components":[]},"shift":2,
            "strata":[{"name":"U","closure":[],"dim":2}],"g":"x"}"#,
    )
    .unwrap();
    let (code, _, err) = invoke(&["milnor", "--input", missing_f.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("/f") || err.contains("`f`"), "{err}");

    let bad_poly = dir.join("bad_poly.json");
    std::fs::write(
        &bad_poly,
        r#"{"variables":["x","y"],"space":{"components":[]},"shift":2,
            "strata":[{"name":"U","closure":[],"dim":2}],"f":"x^2 + z","g":"x"}"#,
    )
    .unwrap();
    let (code, _, err) = invoke(&["milnor", "--input", bad_poly.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("/f"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn non_isolated_milnor_is_an_error() {
    let dir = std::env::temp_dir().join(format!("polar-cli-nonisolated-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("line.json");
    std::fs::write(
        &p,
        r#"{"variables":["x","y"],"space":{"components":[]},"shift":2,
            "strata":[{"name":"U","closure":[],"dim":2}],"f":"y^2","g":"x"}"#,
    )
    .unwrap();
    let (code, _, err) = invoke(&["milnor", "--input", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("not isolated"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}
