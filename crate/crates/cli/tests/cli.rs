use std::process::{Command, Output};

fn imbalance(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imbalance"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = imbalance(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    imbalance(args).status.code().unwrap()
}

#[test]
fn worked_examples() {
    assert_eq!(stdout(&["meet", "2,2,2,3,4,5,5", "1,3,3,4,4,4,4"]), "2,2,2,4,4,4,4\n");
    assert_eq!(stdout(&["meet", "--oracle", "2,2,2,3,4,5,5", "1,3,3,4,4,4,4"]), "2,2,2,4,4,4,4\n");
    assert_eq!(stdout(&["join", "2,2,2,3,4,5,5", "1,3,3,4,4,4,4"]), "1,3,3,3,4,5,5\n");
    assert_eq!(stdout(&["compare", "1,2,3,4,4", "1,2,3,4,4"]), "equal\n");
    assert_eq!(stdout(&["compare", "2,2,2,3,3", "1,3,3,3,3"]), "more-balanced\n");
    assert_eq!(stdout(&["compare", "1,3,3,3,3", "2,2,2,3,3"]), "less-balanced\n");
    assert_eq!(stdout(&["compare", "2,2,2,3,4,5,5", "1,3,3,4,4,4,4"]), "incomparable\n");
    assert_eq!(stdout(&["enumerate", "7", "--count"]), "9\n");
    assert_eq!(stdout(&["enumerate", "10", "--count", "--oracle"]), "50\n");
}

#[test]
fn sequence_commands() {
    assert_eq!(stdout(&["validate", "1,2,3,4,4"]), "1,2,3,4,4\n");
    assert_eq!(stdout(&["suffix", "1,3,3,3,3"]), "4\n");
    assert_eq!(stdout(&["sums", "1,2,3,4,4"]), "8,12,14,15,16\n");
    assert_eq!(stdout(&["sums", "1,1", "--scale", "3"]), "4,8\n");
    assert_eq!(stdout(&["sum", "1,2,3,3"]), "9\n");
    assert_eq!(stdout(&["expand", "1,2,3,4,4", "--position", "3"]), "1,2,4,4,4,4\n");
    assert_eq!(stdout(&["expand", "1,3,3,3,3", "--lower"]), "2,2,3,3,3,3\n");
    assert_eq!(stdout(&["expand", "0", "--upper"]), "1,1\n");
    assert_eq!(stdout(&["contract", "2,2,3,3,3,4,4"]), "2,2,3,3,3,3\n");
    assert_eq!(stdout(&["bottom", "5"]), "2,2,2,3,3\n");
    assert_eq!(stdout(&["top", "5"]), "1,2,3,4,4\n");
    assert_eq!(stdout(&["excess", "1,3,3,3,4,5,5"]), "2,6\n");
    assert_eq!(stdout(&["bal", "1,2,3,4,4", "--index", "4"]), "1,3,3,3,3\n");
    assert_eq!(stdout(&["bal", "1,3,3,3,4,5,5"]), "2\t2,2,2,3,4,5,5\n6\t1,3,3,4,4,4,4\n");
    assert_eq!(stdout(&["near-constant", "2,2,3,3,3"]), "true\n");
    assert_eq!(stdout(&["near-constant", "1,2,3"]), "false\n");
    assert_eq!(stdout(&["near-constant"]), "true\n");
    assert_eq!(stdout(&["nodes", "2,2,2,2", "2"]), "7\n");
}

#[test]
fn lattice_commands() {
    assert_eq!(
        stdout(&["enumerate", "5"]),
        "1,2,3,4,4\n1,3,3,3,3\n2,2,2,3,3\n"
    );
    assert_eq!(stdout(&["enumerate", "4", "--format", "json"]), "[[1,2,3,3],[2,2,2,2]]\n");
    assert_eq!(
        stdout(&["balancing", "5"]),
        "1,3,3,3,3 <- 1,2,3,4,4 via 4\n2,2,2,3,3 <- 1,3,3,3,3 via 2\n"
    );
    assert_eq!(
        stdout(&["covers", "5"]),
        "1,3,3,3,3 < 1,2,3,4,4\n2,2,2,3,3 < 1,3,3,3,3\n"
    );
    assert_eq!(
        stdout(&["hasse", "5"]),
        "{\"n\":5,\"nodes\":[[1,2,3,4,4],[1,3,3,3,3],[2,2,2,3,3]],\"covers\":[[1,0],[2,1]]}\n"
    );
    let closure = stdout(&["closure", "7"]);
    assert!(closure.contains("\"equal\":true"), "{closure}");
}

#[test]
fn hasse_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h7.dot");
    let json = dir.path().join("h7.json");
    let out = stdout(&[
        "hasse",
        "7",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out, "");
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 9);
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(value["n"], 7);
    assert_eq!(value["nodes"].as_array().unwrap().len(), 9);
    assert_eq!(value["covers"].as_array().unwrap().len(), 9);
}

#[test]
fn irreducible_commands() {
    let all = stdout(&["irreducibles", "7", "--method", "all"]);
    assert_eq!(all.lines().count(), 7);
    assert!(!all.contains("1,3,3,3,4,5,5"));
    assert!(!all.contains("2,3,3,3,3,3,3"));
    for method in ["bruteforce", "prop2", "prop3"] {
        assert_eq!(stdout(&["irreducibles", "7", "--method", method]), all);
    }
    let d = stdout(&["decompose", "1,3,3,3,4,5,5"]);
    assert!(d.contains("\"v\":[3,3,3]") && d.contains("\"cond_segments\":false"), "{d}");
}

#[test]
fn tree_commands() {
    assert_eq!(stdout(&["code", "1,2,3,3"]), "0\n10\n110\n111\n");
    assert_eq!(stdout(&["from-code", "00,01,1"]), "1,2,2\n");
    assert_eq!(code(&["from-code", "0,10"]), 1);
    assert!(stdout(&["tree", "2,2,2,2"]).contains("11 (depth 2)"));
    assert!(stdout(&["tree", "1,1", "--style", "dot"]).starts_with("digraph code_tree"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.dot");
    assert_eq!(stdout(&["tree", "1,1", "--style", "dot", "--out", path.to_str().unwrap()]), "");
    assert!(std::fs::read_to_string(path).unwrap().contains("t0"));
}

#[test]
fn verify_command() {
    let text = stdout(&["verify", "6"]);
    assert!(text.lines().all(|l| l.contains(" pass")), "{text}");
    let json = stdout(&[
        "verify",
        "7",
        "--property",
        "lemma-upper-lower",
        "--property",
        "prop1-meet-oracle",
        "--format",
        "json",
    ]);
    assert_eq!(
        json,
        "{\"property\":\"lemma-upper-lower\",\"n\":7,\"status\":\"pass\",\"witness\":null}\n\
         {\"property\":\"prop1-meet-oracle\",\"n\":7,\"status\":\"pass\",\"witness\":null}\n"
    );
    assert!(stdout(&["verify", "0", "--list"]).contains("irreducibility-triple-agreement\n"));
    assert_eq!(code(&["verify", "5", "--property", "no-such-thing"]), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["validate", "1,2,2,3"]), 1);
    assert_eq!(code(&["validate", "2,1,1"]), 1);
    assert_eq!(code(&["validate", "1,-1"]), 1);
    assert_eq!(code(&["validate", "1, 2"]), 2);
    assert_eq!(code(&["validate", "a"]), 2);
    assert_eq!(code(&["compare", "1,1", "1,2,2"]), 2);
    assert_eq!(code(&["enumerate", "21"]), 2);
    assert_eq!(code(&["--max-n", "11", "enumerate", "12"]), 2);
    assert_eq!(stdout(&["--max-n", "12", "enumerate", "12", "--count"]), "159\n");
    assert_eq!(code(&["bal", "1,2,3,4,4", "--index", "2"]), 2);
    assert_eq!(code(&["contract", "0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    let err = imbalance(&["validate", "1,2,2,3"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("9/8"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["hasse", "8"][..],
        &["enumerate", "9", "--format", "json"],
        &["balancing", "8", "--format", "json"],
        &["irreducibles", "8"],
    ] {
        assert_eq!(imbalance(args).stdout, imbalance(args).stdout);
    }
}
