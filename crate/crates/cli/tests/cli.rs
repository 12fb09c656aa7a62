use std::process::{Command, Output};

fn permstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permstat"))
        .args(args)
        .env_remove("PERMSTAT_CACHE_DIR")
        .env_remove("PERMSTAT_CAP")
        .env_remove("PERMSTAT_CONFIG")
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = permstat(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn stat_examples() {
    assert_eq!(stdout(&["stat", "--perm", "215436", "--stat", "s1"]), "2\n");
    assert_eq!(stdout(&["stat", "--perm", "215436", "--stat", "des:even;all"]), "2\n");
    assert_eq!(stdout(&["stat", "--perm", "123", "--stat", "s17"]), "3\n");
}

#[test]
fn bad_token_is_named() {
    let out = permstat(&["stat", "--perm", "215436", "--stat", "des:evn;all"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("evn"));
}

#[test]
fn dist_all_methods_agree() {
    let out = stdout(&["dist", "--poly", "D", "--x", "set:2,3,4,6,7,9", "--y", "set:1,4,8", "--n", "6"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    for l in &lines[..4] {
        assert_eq!(l.split(',').nth(3), Some("72"), "{l}");
    }
    assert_eq!(lines[4], "verdict,agree");
}

#[test]
fn dist_single_methods() {
    assert_eq!(stdout(&["dist", "--poly", "V", "--x", "even", "--y", "even", "--n", "4", "--method", "formula"]), "formula,4,16,4\n");
    assert_eq!(stdout(&["dist", "--poly", "A", "--x", "all", "--y", "all", "--n", "3", "--method", "brute"]), "brute,0,0,6\n");
    let out = permstat(&["dist", "--poly", "A", "--x", "all", "--y", "even", "--n", "3", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no formula route"));
}

#[test]
fn dist_json_round_trips_through_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "dist", "--poly", "E", "--x", "odd", "--y", "all", "--n", "5", "--method", "rec"];
    let out = Command::new(env!("CARGO_BIN_EXE_permstat"))
        .args(args)
        .env("PERMSTAT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let entry: permstat::distribution::CacheEntry = serde_json::from_slice(&out.stdout).unwrap();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let on_disk: permstat::distribution::CacheEntry =
        serde_json::from_str(&std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap()).unwrap();
    assert_eq!(entry, on_disk);
    assert!(entry.to_distribution().unwrap().sums_to_factorial());
}

#[test]
fn foata_examples() {
    assert_eq!(stdout(&["foata", "--perm", "61437258"]), "43612758\n");
    assert_eq!(stdout(&["foata", "--perm", "43612758", "--invert"]), "61437258\n");
    assert_eq!(stdout(&["foata", "--perm", "123"]), "123\n");
    assert!(stdout(&["foata", "--perm", "61437258", "--trace"]).contains("(34)(216)(57)(8)"));
}

#[test]
fn theta_examples() {
    let out = stdout(&["theta", "--n", "4", "--x", "odd", "--y", "even"]);
    assert_eq!(out.lines().count(), 24);
    assert!(out.lines().all(|l| {
        let f: Vec<&str> = l.split(',').collect();
        f[2] == f[3]
    }));
    assert_eq!(stdout(&["theta", "--n", "1", "--x", "odd", "--y", "even"]), "1,1,0,0\n");
    let out = permstat(&["theta", "--n", "4", "--x", "odd", "--y", "odd"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disjoint"));
}

#[test]
fn verify_exit_codes() {
    let out = permstat(&["verify", "--suite", "table1", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let out = stdout(&["verify", "--suite", "conjectures", "--max-n", "6"]);
    assert!(out.contains("verified up to 6"));
    let out = stdout(&["verify", "--suite", "identities"]);
    assert!(out.contains("case A"));
    let out = permstat(&["verify", "--suite", "table1", "--max-n", "9", "--cap", "8"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conjectures_and_gamma_demo() {
    let out = stdout(&["conjectures", "--max-n", "6"]);
    assert!(out.ends_with("verified up to 6\n"));
    let out = stdout(&["gamma-demo", "--n", "3"]);
    assert!(!out.is_empty());
    for l in out.lines() {
        let f: Vec<usize> = l.split(',').skip(3).map(|c| c.parse().unwrap()).collect();
        assert_eq!(f[1], f[0] + 2);
    }
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("permstat.toml");
    std::fs::write(&path, "enumeration_cap = 3\noutput_format = \"csv\"\n").unwrap();
    let out = permstat(&["--config", path.to_str().unwrap(), "dist", "--poly", "D", "--x", "all", "--y", "all", "--n", "4", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}
