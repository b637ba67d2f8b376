use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singleblock"))
        .args(args)
        .env_remove("SINGLEBLOCK_SIZE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["tensor", "--m", "2", "--n", "2", "--p", "3"]), "3,1\n");
    assert_eq!(stdout(&["dim", "--type", "F4", "--weight", "1,0,0,1"]), "1053\n");
    assert_eq!(
        stdout(&["jordan", "--type", "G2", "--weight", "1,0", "--p", "7", "--class", "regular"]),
        "7\n"
    );
    assert_eq!(stdout(&["bound", "--p", "2", "--k", "1", "--l", "4", "--f4"]), "16\n");
}

#[test]
fn explicit_words() {
    let out = stdout(&["jordan", "--type", "G2", "--weight", "1,0", "--p", "7", "--word", "-1,0:1;0,-1:1"]);
    assert_eq!(out, "7\n");
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["tensor", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "--type", "G9", "--weight", "1"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "--type", "G2", "--weight", "1,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "--type", "G2", "--weight", "-1,0"]).status.code(), Some(3));
    assert_eq!(run(&["tensor", "--m", "2", "--n", "2", "--p", "4"]).status.code(), Some(3));
    assert_eq!(run(&["module", "--type", "G2", "--weight", "0,3", "--p", "5"]).status.code(), Some(4));
    let capped = Command::new(env!("CARGO_BIN_EXE_singleblock"))
        .args(["module", "--type", "G2", "--weight", "1,1", "--p", "5"])
        .env("SINGLEBLOCK_SIZE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn records_have_a_schema_header() {
    let out = stdout(&["--format", "records", "tensor", "--m", "3", "--n", "2", "--p", "3"]);
    let mut lines = out.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["schema"], "singleblock-records");
    assert_eq!(header["version"], 1);
    let rec: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(rec["jordan_type"], "3,3");
}

#[test]
fn output_is_deterministic() {
    let args = ["sl2scan", "--p", "5", "--max-a", "12"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["levels", "--type", "G2", "--weight", "0,2", "--node", "1", "--p", "5", "--level", "3"];
    let out = stdout(&args);
    assert_eq!(out, stdout(&args));
    assert!(out.contains("factors at level 3: (3) x1 dim 4 (1) x2 dim 2"), "{out}");
}

#[test]
fn verify_single_criterion() {
    let out = run(&["verify", "--criterion", "9"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("criterion  9 PASS"));
    assert_eq!(run(&["verify", "--criterion", "11"]).status.code(), Some(2));
}
