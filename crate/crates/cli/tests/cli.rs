use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn comin(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_comin"));
    cmd.args(args).env_remove("COMIN_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("COMIN_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn info_gr24() {
    let o = comin(&["info", "--space", "Gr(2,4)"], None);
    assert!(o.status.success());
    let out = stdout(&o);
    for needle in [
        "dim         4",
        "ind         4",
        "r           2",
        "Segre(P1 x P1)",
    ] {
        assert!(out.contains(needle), "{out}");
    }
}

#[test]
fn root_spelling_matches_name() {
    let a = comin(&["info", "--space", "Gr(2,4)", "--format", "json"], None);
    let b = comin(&["info", "--root", "A,3,2", "--format", "json"], None);
    let c = comin(&["info", "--space", "Q(4)", "--format", "json"], None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn delta_values_and_rejections() {
    let o = comin(&["delta", "--space", "Gr(2,4)", "--i", "2"], None);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("2"));
    assert!(stderr(&o).contains("transfer cost model"));

    let o = comin(&["delta", "--space", "Gr(2,4)", "--i", "1"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("d_1 = 1*(dim V + 1) - dim X = 1*3 - 4 = -1 < 0"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn exit_codes() {
    let unknown = comin(&["info", "--space", "Sp(4)"], None);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("valid families"));
    let not_cominuscule = comin(&["info", "--root", "E8,8,1"], None);
    assert_eq!(not_cominuscule.status.code(), Some(2));
    let b3 = comin(&["info", "--root", "B,3,3"], None);
    assert_eq!(b3.status.code(), Some(2));
    assert!(stderr(&b3).contains("not cominuscule"));
    let bad_class = comin(&["lr", "--space", "Gr(2,4)", "0011", "1111"], None);
    assert_eq!(bad_class.status.code(), Some(2));
    let usage = comin(&["delta", "--space", "Gr(2,4)"], None);
    assert_eq!(usage.status.code(), Some(2));
    let both = comin(&["info", "--space", "E6", "--root", "E6,6"], None);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn lr_partitions_and_bitstrings_agree() {
    let by_partition = comin(
        &["lr", "--space", "Gr(2,4)", "[1]", "[1]", "--format", "json"],
        None,
    );
    let by_bits = comin(
        &[
            "lr", "--space", "Gr(2,4)", "1110", "1110", "--format", "json",
        ],
        None,
    );
    assert!(by_partition.status.success());
    assert_eq!(by_partition.stdout, by_bits.stdout);
    let v: serde_json::Value = serde_json::from_slice(&by_bits.stdout).unwrap();
    let coefficients: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coefficient"].as_str().unwrap())
        .collect();
    assert_eq!(coefficients, ["1", "1"]);
}

#[test]
fn json_integers_are_strings() {
    let o = comin(
        &["bound", "--space", "E6", "--d", "1", "--format", "json"],
        None,
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["bound"].is_string());
    assert!(v["components"]["delta_term"].is_string());
    assert_eq!(v["case"], "3");
    assert_eq!(v["child"]["space"], "OG(5)");
    assert_eq!(v["child"]["child"]["space"], "Gr(2,5)");
    assert!(v["child"]["child"]["child"].is_null());
}

#[test]
fn warm_and_cold_cache_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["delta", "--space", "OG(5)", "--i", "10"][..],
        &["bound", "--space", "E6", "--d", "2"][..],
        &["incidence", "--space", "LG(3)", "--format", "json"][..],
    ] {
        let none = comin(args, None);
        let cold = comin(args, Some(dir.path()));
        let warm = comin(args, Some(dir.path()));
        assert!(cold.status.success());
        assert_eq!(none.stdout, cold.stdout);
        assert_eq!(cold.stdout, warm.stdout);
        assert!(!stderr(&warm).contains("warning"));
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn corrupted_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["delta", "--space", "Gr(2,5)", "--i", "3"];
    let first = comin(&args, Some(dir.path()));
    let entry = fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let value = stdout(&first).lines().next().unwrap().to_string();
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replace(&format!("\"{value}\""), "\"12345\"")).unwrap();

    let second = comin(&args, Some(dir.path()));
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(
        stderr(&second).contains("checksum mismatch"),
        "{}",
        stderr(&second)
    );

    fs::write(&entry, "not json").unwrap();
    let third = comin(&args, Some(dir.path()));
    assert_eq!(first.stdout, third.stdout);
    assert!(stderr(&third).contains("warning"));
    let fourth = comin(&args, Some(dir.path()));
    assert!(!stderr(&fourth).contains("warning"));
}

#[test]
fn cache_dir_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = comin(
        &[
            "delta",
            "--space",
            "Q(5)",
            "--i",
            "2",
            "--cache-dir",
            flag_dir.path().to_str().unwrap(),
        ],
        Some(env_dir.path()),
    );
    assert!(o.status.success());
    assert_eq!(fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    assert_eq!(fs::read_dir(env_dir.path()).unwrap().count(), 0);
}

#[test]
fn list_and_basis() {
    let o = comin(&["list", "--max-dim", "16", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["spaces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"E6") && !names.contains(&"E7"));
    let o = comin(&["basis", "--space", "E7", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 56);
    assert_eq!(v["elements"].as_array().unwrap().len(), 27);
    assert_eq!(v["classes"][55]["degree"], "13110");
}

#[test]
fn selftest_passes() {
    let o = comin(&["selftest"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
