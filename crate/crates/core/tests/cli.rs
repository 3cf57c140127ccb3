mod common;

use std::process::{Command, Output};

use common::{fixture, LEMMAS};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clandestine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn cuban() -> String {
    fixture("cuban.json").display().to_string()
}

#[test]
fn validate_cuban() {
    let o = run(&["validate", &cuban()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));
}

#[test]
fn check_prints_verdict_and_signals_it() {
    let o = run(&["check", &cuban(), "--state", "w", "--formula", "m"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "false"));
    let o = run(&["check", &cuban(), "--state", "w1", "--formula", "H{a} (K{a} m | K{a} !m)", "--brute"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
}

#[test]
fn check_json_output_parses() {
    let o = run(&["--json", "check", &cuban(), "--state", "v", "--formula", "K{a} m"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["state"], "v");
}

#[test]
fn formula_from_file() {
    let dir = std::env::temp_dir().join(format!("clandestine-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("goal.txt");
    std::fs::write(&path, "K{a} m\n").unwrap();
    let o = run(&["truthset", &cuban(), "--formula", &format!("@{}", path.display())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{v}");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&["check", &cuban(), "--state", "w", "--formula", "K{a m"]).status.code(), Some(2));
    assert_eq!(run(&["check", &cuban(), "--state", "nowhere", "--formula", "m"]).status.code(), Some(2));
    assert_eq!(run(&["check", &cuban(), "--state", "w", "--formula", "K{zed} m"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn invalid_game_exits_3() {
    let text = std::fs::read_to_string(fixture("cuban.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["implicit_self_loops"] = false.into();
    let path = std::env::temp_dir().join(format!("clandestine-open-{}.json", std::process::id()));
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no outcome"), "{:?}", o);
}

#[test]
fn every_fixture_is_accepted() {
    for (name, statement) in LEMMAS {
        let o = run(&["--json", "prove", fixture(&format!("{name}.proof.json")).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["accepted"], true);
        assert_eq!(v["theorem"], true);
        let concl: clandestine::Formula = v["conclusion"].as_str().unwrap().parse().unwrap();
        assert_eq!(concl, statement.parse().unwrap());
    }
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap();
        let cmd = if name.ends_with(".proof.json") { "prove" } else { "validate" };
        assert_eq!(run(&[cmd, path.to_str().unwrap()]).status.code(), Some(0), "{name}");
    }
}

#[test]
fn rejected_proof_exits_1() {
    let text = std::fs::read_to_string(fixture("lemma2.proof.json")).unwrap();
    let broken = text.replacen("\"from\": [\n        3,", "\"from\": [\n        2,", 1);
    assert_ne!(broken, text);
    let path = std::env::temp_dir().join(format!("clandestine-bad-{}.json", std::process::id()));
    std::fs::write(&path, broken).unwrap();
    let o = run(&["--json", "prove", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["accepted"], false);
    assert_eq!(v["line"], 5);
}

#[test]
fn countermodel_found_for_variable() {
    let o = run(&["countermodel", "--formula", "p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("countermodel"));
    let o = run(&["--json", "countermodel", "--formula", "K{a} p -> p", "--games", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["found"], false);
}

#[test]
fn fuzz_json_report() {
    let o = run(&["--json", "fuzz", "--trials", "10", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["instances"]["cia"], 200);
    let o = run(&["fuzz", "--trials", "20", "--mutation", "empty-coalition-can"]);
    assert_eq!(o.status.code(), Some(1));
}
