//! The `polyclass` binary driven as a subprocess.

use std::path::Path;
use std::process::{Command, Output};

fn polyclass(scratch: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyclass"))
        .args(args)
        .env("POLYCLASS_SCRATCH", scratch)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn planar_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let s = tmp.path();
    let o = polyclass(s, &["classify", "--dim", "2", "-k", "2"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let manifest: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(manifest["classes"], 61);
    assert_eq!(manifest["by_interior"], serde_json::json!([0, 16, 45]));
    assert_eq!(manifest["complete"], true);

    // default output location comes from the scratch variable
    let data = s.join("classify-d2-k2");
    assert!(data.join("manifest.json").exists());
    let data = data.to_str().unwrap();

    let o = polyclass(s, &["verify", data, "--checks", "identities,hibi,audit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let stats_dir = s.join("stats");
    let o = polyclass(
        s,
        &[
            "stats",
            data,
            "--interior",
            "2",
            "--out",
            stats_dir.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let stats: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(stats["classes"], 45);
    assert_eq!(stats["simplices"], 5);
    for f in [
        "stats.json",
        "scatter_simplex.csv",
        "scatter_nonsimplex.csv",
    ] {
        assert!(stats_dir.join(f).exists(), "{f}");
    }

    let o = polyclass(s, &["export", data, "--interior", "2", "--simplices"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);

    // a second classify into the same directory refuses to overwrite
    let o = polyclass(s, &["classify", "--dim", "2", "-k", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn delta_and_file_verification() {
    let tmp = tempfile::tempdir().unwrap();
    let s = tmp.path();
    let good = s.join("good.txt");
    std::fs::write(&good, "0,0,0;2,0,0;0,3,0;0,0,18\n-1,-1;1,0;0,1\n").unwrap();
    let o = polyclass(s, &["delta", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("1,51,54,2"), "{out}");
    assert!(lines[1].starts_with("1,1,1"), "{out}");

    let o = polyclass(s, &["verify", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let hollow = s.join("hollow.txt");
    std::fs::write(&hollow, "0,0,0;1,0,0;0,1,0;0,0,1\n").unwrap();
    let o = polyclass(s, &["verify", hollow.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn operational_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let s = tmp.path();
    let missing = s.join("nope");
    let o = polyclass(s, &["stats", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let bad = s.join("bad.txt");
    std::fs::write(&bad, "0,0,0;1,0\n").unwrap();
    let o = polyclass(s, &["delta", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let o = polyclass(s, &["verify", s.to_str().unwrap(), "--checks", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));

    let o = polyclass(s, &["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}
