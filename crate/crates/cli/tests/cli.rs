use std::process::{Command, Output};

use serde_json::Value;

fn fts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn witness_generic_at_26_over_10() {
    let out = fts(&["witness", "--xi", "a", "--lambda", "26/10"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["branch"], "generic");
    assert_eq!(v["n"], 20);
    assert_eq!(v["N"], 21);
    assert_eq!(v["card"], 882);
    assert_eq!(v["path_length"], 2282);
    assert_eq!(v["ratio"], "2282/882");
    assert_eq!(v["ratio_bound"], "109/42");
    assert_eq!(v["lambda"], "13/5");
    assert_eq!(v["epsilon"], -1);
    assert_eq!(v["path_word"].as_str().unwrap().len(), 2282);
    for k in ["closure", "coverage", "xi_related", "length_formula"] {
        assert_eq!(v["verdicts"][k], true, "{k}");
    }
    assert!(v.get("oracle").is_none());
}

#[test]
fn witness_abelian_branch() {
    let out = fts(&["witness", "--xi", "b", "--lambda", "12/10"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["branch"], "abelian");
    let n = v["n"].as_u64().unwrap();
    assert_eq!(n % 2, 1);
    assert_eq!(v["path_length"].as_u64().unwrap(), n * n + 8 * n + 1);
    assert!(v["ratio_bound"].is_null());
}

#[test]
fn witness_with_oracle_embeds_summary() {
    let out = fts(&["witness", "--xi", "a", "--lambda", "3/1", "--n", "2", "--oracle"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["oracle"]["card"], 18);
    assert_eq!(v["oracle"]["tour_length"], 34);
}

#[test]
fn witness_exit_codes() {
    // n forced too small: the ratio is computed and found not below lambda.
    assert_eq!(code(&fts(&["witness", "--xi", "a", "--lambda", "26/10", "--n", "4"])), 1);
    // lambda at or below the ratio constant.
    assert_eq!(code(&fts(&["witness", "--xi", "a", "--lambda", "2/1"])), 2);
    assert_eq!(code(&fts(&["witness", "--xi", "b", "--lambda", "1/1"])), 2);
    assert_eq!(code(&fts(&["witness", "--xi", "a", "--lambda", "abc"])), 2);
    assert_eq!(code(&fts(&["witness", "--xi", "q", "--lambda", "3/1"])), 2);
    assert_eq!(code(&fts(&["witness", "--xi", "a", "--lambda", "3/1", "--n", "3"])), 2);
    assert_eq!(code(&fts(&["witness", "--xi", "a", "--lambda", "3/1", "--alphabet", "nope"])), 2);
    assert_eq!(code(&fts(&["witness", "--xi", "a"])), 2);
}

#[test]
fn witness_out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let args = ["witness", "--xi", "ab", "--lambda", "3/1"];
    let direct = fts(&args);
    let written = fts(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(code(&written), 0);
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn witness_over_alphabet_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alpha.json");
    let spec = r#"{
        "name": "custom",
        "generators": [{"letter": "a", "word": "a"}, {"letter": "b", "word": "b"}],
        "u": "b", "v": "abAA", "split": "1/2"
    }"#;
    std::fs::write(&path, spec).unwrap();
    let selector = format!("@{}", path.display());
    let out = fts(&["witness", "--xi", "a", "--lambda", "26/10", "--alphabet", &selector]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["alphabet"], "custom");
    assert_eq!(v["ratio"], "2282/882");

    let missing = format!("@{}", dir.path().join("absent.json").display());
    assert_eq!(code(&fts(&["witness", "--xi", "a", "--lambda", "3/1", "--alphabet", &missing])), 2);
}

#[test]
fn check_passes_and_is_reproducible() {
    let first = fts(&["check"]);
    assert_eq!(code(&first), 0);
    let text = stdout(&first);
    for line in ["relations 2/2", "supports 2/2", "lemma1 200/200", "mixed 200/200"] {
        assert!(text.contains(line), "{text}");
    }
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("1.json"), dir.path().join("2.json"));
    for p in [&p1, &p2] {
        let out = fts(&["check", "--samples", "40", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn check_reports_a_corrupted_table() {
    let out = fts(&["check", "--corrupt-generators"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("first counterexample"), "{err}");
    assert!(stdout(&out).contains("relations 0/2"), "{}", stdout(&out));
}

#[test]
fn oracle_on_the_smallest_grid() {
    let out = fts(&["oracle", "--xi", "a", "--n", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["card"], 18);
    assert_eq!(v["tour_length"], 34);
    assert_eq!(v["tau_exact"], "17/9");
    assert_eq!(v["witness_length"], 50);
    assert_eq!(v["tour_order"].as_array().unwrap().len(), 18);
}

#[test]
fn oracle_refuses_large_sets() {
    let out = fts(&["oracle", "--xi", "a", "--n", "6"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn oracle_on_instance_files() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("single.json");
    std::fs::write(&single, r#"{"alphabet": "std2", "points": ["ab"]}"#).unwrap();
    let out = fts(&["oracle", "--points", single.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["card"], 1);
    assert_eq!(v["tour_length"], 0);
    assert_eq!(v["tau_exact"], "0/1");

    let pair = dir.path().join("pair.json");
    std::fs::write(&pair, r#"{"alphabet": "std2", "points": ["", "a"]}"#).unwrap();
    let v = json(&fts(&["oracle", "--points", pair.to_str().unwrap()]));
    assert_eq!(v["tour_length"], 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"alphabet": "std2", "points": ["", "a"], "metric": [[0, 1], [2, 0]]}"#).unwrap();
    assert_eq!(code(&fts(&["oracle", "--points", bad.to_str().unwrap()])), 2);
}

#[test]
fn export_dot_and_set() {
    let out = fts(&["export", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.trim_start().starts_with("graph") || dot.trim_start().starts_with("digraph"));
    assert_eq!(dot.matches("--").count() + dot.matches("->").count(), 65);
    assert_eq!(fts(&["export", "--n", "4"]).stdout, out.stdout);
    assert_eq!(code(&fts(&["export", "--n", "3"])), 2);

    let set = json(&fts(&["export", "--n", "2", "--xi", "a", "--format", "set"]));
    assert_eq!(set["card"], 18);
    assert_eq!(set["degenerate"], false);
    assert_eq!(set["elements"].as_array().unwrap().len(), 18);
    let degenerate = json(&fts(&["export", "--n", "2", "--xi", "b", "--format", "set"]));
    assert_eq!(degenerate["degenerate"], true);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(code(&fts(&["bogus"])), 2);
    assert_eq!(code(&fts(&[])), 2);
}
