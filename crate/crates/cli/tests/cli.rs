use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifford-hp"))
        .args(args)
        .output()
        .unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn swap_circuit_recovers_perfectly() {
    let gates = data("swap_into_d.gates");
    let v = json(&run(&[
        "recover-bell",
        "--gates",
        &gates,
        "--n",
        "4",
        "--nd",
        "2",
        "--seed",
        "3",
    ]));
    assert_eq!(v["outcome"]["fidelity"], 1.0);
    assert_eq!(v["instance"]["perfectly_recoverable"], true);
    let v = json(&run(&[
        "recover-local",
        "--gates",
        &gates,
        "--n",
        "4",
        "--nd",
        "2",
        "--seed",
        "3",
    ]));
    assert_eq!(v["outcome"]["fidelity"], 0.5);
    let local = data("swap_local.gates");
    let v = json(&run(&[
        "recover-local",
        "--gates",
        &local,
        "--n",
        "4",
        "--nd",
        "2",
        "--seed",
        "3",
    ]));
    assert_eq!(v["instance"]["locally_recoverable"], true);
    assert_eq!(v["outcome"]["fidelity"], 1.0);
}

#[test]
fn fixed_seed_gives_identical_reports() {
    let args = [
        "recover-bell",
        "--random",
        "--n",
        "6",
        "--na",
        "2",
        "--nd",
        "4",
        "--seed",
        "42",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "ensemble", "--n", "5", "--nd", "3", "--trials", "50", "--seed", "1", "--format", "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn logical_exit_code_tracks_recoverability() {
    let ok = run(&[
        "logical",
        "--gates",
        &data("swap_into_d.gates"),
        "--n",
        "4",
        "--nd",
        "2",
    ]);
    let v = json(&ok);
    assert_eq!(v["logicals"].as_array().unwrap().len(), 2);
    assert_eq!(v["stabilizers"].as_array().unwrap().len(), 6);
    let bad = run(&["logical", "--gates", &data("a_stays.gates"), "--n", "4", "--nd", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bad_input_exits_with_one() {
    assert_eq!(
        run(&["recover-bell", "--n", "3", "--nd", "1", "--format", "csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["recover-bell", "--random", "--n", "3", "--nb", "1", "--nd", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["recover-bell", "--random", "--nd", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["recover-bell", "--gates", "/nonexistent", "--nd", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_ne!(
        run(&["ensemble", "--n", "3", "--nd", "1", "--trials", "0"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn verify_appendix_passes() {
    for n in ["1", "2"] {
        let out = run(&["verify-appendix", "--n", n]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.matches("PASS").count(), 5);
    }
}

#[test]
fn dumped_tableau_reloads_to_same_instance() {
    let dir = std::env::temp_dir().join(format!("clifford-hp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dump = dir.join("dump.json");
    let out = run(&[
        "dump-instance",
        "--random",
        "--n",
        "5",
        "--nd",
        "3",
        "--seed",
        "8",
        "--out",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    let tableau = dir.join("tableau.json");
    std::fs::write(&tableau, v["instance"]["tableau"].to_string()).unwrap();
    let again = json(&run(&[
        "dump-instance",
        "--tableau",
        tableau.to_str().unwrap(),
        "--nd",
        "3",
    ]));
    assert_eq!(again["instance"], v["instance"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn demo_narrates_both_protocols() {
    let out = run(&["demo", "--random", "--n", "5", "--nd", "3", "--seed", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success());
    assert!(text.contains("Bell measurement") && text.contains("local Z measurements"));
}
