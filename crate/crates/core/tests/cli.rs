use std::path::PathBuf;
use std::process::{Command, Output};

fn hallpi(args: &[&str], cache: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallpi"))
        .args(args)
        .env("HALLPI_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn cache_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hallpi-test-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hall_reports_two_classes_for_gl32() {
    let o = hallpi(&["hall", "--group", "GL(3,2)", "--pi", "2,3"], &cache_dir("hall"));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("2 class(es)"), "{out}");
    assert_eq!(out.matches("order 24").count(), 2);
}

#[test]
fn example2_suite_is_conditional() {
    let o = hallpi(&["verify", "--suite", "example2", "--format", "machine", "--no-cache"], &cache_dir("ex2"));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("conditional=true"));
    assert!(!out.contains("verdict=fail"));
    assert!(out.lines().all(|l| l.starts_with("check_id=") || l.starts_with("summary=")));
}

#[test]
fn usage_errors() {
    let dir = cache_dir("usage");
    let o = hallpi(&["hall", "--grup", "X"], &dir);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(hallpi(&["hall", "--group", "Sym(4)", "--pi", "2,9"], &dir).status.code(), Some(2));
    assert_eq!(hallpi(&["verify", "--suite", "nope"], &dir).status.code(), Some(2));
    assert_eq!(hallpi(&["info", "--group", "Sym(4)"], &dir).status.code(), Some(0));
}

#[test]
fn catalog_mode_without_a_candidate_is_indeterminate() {
    let o = hallpi(&["hall", "--group", "Sym(5)", "--pi", "2,3", "--mode", "catalog"], &cache_dir("cat"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn machine_output_is_cached_and_identical() {
    let dir = cache_dir("cache");
    let args = ["property", "--group", "Alt(5)", "--pi", "2,3", "--format", "machine", "--seed", "3"];
    let first = hallpi(&args, &dir);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let second = hallpi(&args, &dir);
    assert_eq!(first.stdout, second.stdout);
    let mut fresh = args.to_vec();
    fresh.push("--no-cache");
    assert_eq!(hallpi(&fresh, &dir).stdout, first.stdout);
    let out = stdout(&first);
    assert!(out.contains("E=yes C=yes D=no"), "{out}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn sweep_small_catalog() {
    let o = hallpi(&["sweep", "--max-order", "24", "--jobs", "2", "--format", "machine", "--no-cache"], &cache_dir("sweep"));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("summary=sweep.classify"));
    assert!(!out.contains("verdict=fail"));
}
