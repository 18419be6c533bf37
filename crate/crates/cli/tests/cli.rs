use std::path::Path;
use std::process::Command;

fn run(args: &[&str], cache: Option<&Path>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pillowcase"));
    cmd.args(args).env_remove(pillowcase_cli::CACHE_ENV);
    if let Some(dir) = cache {
        cmd.env(pillowcase_cli::CACHE_ENV, dir);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["nf", "ss"], 0),
        (&["nf", "sx"], 2),
        (&["conj", "ab", "ba"], 0),
        (&["pa", "a"], 0),
        (&["torus", ""], 0),
        (&["torus", "abq"], 2),
        (&["distinguish", "ab", "ba"], 0),
        (&["distinguish", "ab", "aab"], 0),
        (&["distinguish", "a", "ab"], 1),
        (&["distinguish", "ab", "a?"], 2),
        (&["distinguish", "ab", "aabb", "--catalog", "MISSING"], 1),
        (&["witness", "ab", "ba"], 1),
        (&["witness", "ab", "aab"], 0),
        (&["fixed", "ab", "--len", "0"], 2),
        (&["nf", "s", "--unknown-flag"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let (got, _, err) = run(args, None);
        assert_eq!(got, *code, "{args:?}: {err}");
    }
}

#[test]
fn documented_examples() {
    assert_eq!(run(&["nf", "ss"], None).1, "1\n");
    let (_, out, _) = run(&["torus", ""], None);
    assert!(out.starts_with("< x1, x2, x3, t | t x1 t^-1 x1^-1"));
    assert!(out.contains("H1 Z^4\n"));
    let (_, out, _) = run(&["fixed", "ab", "--len", "8"], None);
    assert!(out.ends_with("oriented 8 unoriented 4 peripheral 4 non-peripheral 0 (examined 63322)\n"), "{out}");
    assert!(!out.contains("non-peripheral\n"));
    let (_, out, _) = run(&["distinguish", "ab", "ba"], None);
    assert!(out.starts_with("HOMEOMORPHIC\nsign +\nwitness "));
}

#[test]
fn inconclusive_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("c2.txt");
    std::fs::write(&cat, "C2 cyclic 2\n").unwrap();
    let (code, out, _) = run(&["distinguish", "ab", "aabb", "--catalog", cat.to_str().unwrap()], None);
    assert_eq!(code, 3);
    assert!(out.starts_with("INCONCLUSIVE\n"));
}

#[test]
fn stable_json_is_deterministic() {
    for args in [
        &["distinguish", "ab", "aab", "--json", "--stable"][..],
        &["fixed", "aab", "--len", "6", "--json", "--stable"][..],
        &["witness", "ab", "aabb", "--json", "--stable"][..],
        &["spectrum", "abu", "--json", "--stable"][..],
    ] {
        let a = run(args, None);
        let b = run(args, None);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v.get("timestamp").is_none());
    }
    let (_, out, _) = run(&["nf", "sr", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["timestamp"].is_u64());
    assert_eq!(v["matrix"], serde_json::json!([["1", "1"], ["0", "1"]]));
}

#[test]
fn cache_hits_match_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let words = ["ab", "aabb", "abu", "aBBv"];
    let fresh: Vec<_> = words.iter().map(|w| run(&["spectrum", w, "--json", "--stable"], None)).collect();
    for pass in 0..2 {
        for (w, f) in words.iter().zip(&fresh) {
            assert_eq!(&run(&["spectrum", w, "--json", "--stable"], Some(dir.path())), f, "pass {pass} {w}");
        }
    }
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, words.len());
    // corrupted entries are recomputed, not trusted
    for e in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(e.unwrap().path(), "{\"catalog_id\": \"x\"}").unwrap();
    }
    for (w, f) in words.iter().zip(&fresh) {
        assert_eq!(&run(&["spectrum", w, "--json", "--stable"], Some(dir.path())), f);
    }
    // purging never changes a verdict
    let cached = run(&["distinguish", "ab", "aabb", "--cache", dir.path().to_str().unwrap()], None);
    std::fs::remove_dir_all(dir.path()).unwrap();
    assert_eq!(run(&["distinguish", "ab", "aabb"], None), cached);
}

#[test]
fn cache_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["spectrum", "ab", "--cache", flag_dir.path().to_str().unwrap()], Some(env_dir.path()));
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
}
