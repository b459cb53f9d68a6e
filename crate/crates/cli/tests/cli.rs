use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const CYCLE3: &str =
    "alternatives: c1 c2 c3\nvoter v1: c1 > c2\nvoter v2: c2 > c3\nvoter v3: c3 > c1\n";

const TWO_VOTERS: &str =
    "alternatives: c1 c2 c3 c4 c5\nvoter u: c1 > c2 > c3 > c4 > c5\nvoter w: c4 > c3\n";

const TWO_VOTERS_WITNESS: &str = "k: 4
has c1: 1 2 3 4
has c2: 2 3 4
has c3: 3 4
has c4: 1
cares u: 1 2 3 4
cares w: 1 2
";

const FOUR_THREE: &str = "alternatives: c1 c2 c3 c4
voter v1: c1 > c2 > c3 > c4
voter v2: c4 > c3 > c2 > c1
voter v3: c4 > c1 > c2
";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bam(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_bam"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_accepts_the_two_voter_witness() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", TWO_VOTERS);
    let m = file(&dir, "m.txt", TWO_VOTERS_WITNESS);
    let r = bam(&["verify", "--profile", s(&p), "--model", s(&m)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "explained\n");
}

#[test]
fn verify_reports_a_violation() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", "alternatives: a b\nvoter v: a > b\n");
    let m = file(&dir, "m.txt", "k: 1\nhas a: 1\nhas b: 1\ncares v: 1\n");
    let r = bam(&["verify", "--profile", s(&p), "--model", s(&m)]);
    assert_eq!(r.code, 1);
    assert!(
        r.stdout
            .contains("voter `v` prefers `a` (score 1) to `b` (score 1)"),
        "{}",
        r.stdout
    );
}

#[test]
fn min_k_on_the_three_cycle() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", CYCLE3);
    let w = dir.path().join("w.txt");
    let r = bam(&["min-k", "--profile", s(&p), "--model", s(&w)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().next(), Some("3"));
    let check = bam(&["verify", "--profile", s(&p), "--model", s(&w)]);
    assert_eq!(check.code, 0);
}

#[test]
fn min_k_engines_agree() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", FOUR_THREE);
    for engine in ["auto", "search"] {
        let r = bam(&["min-k", "--profile", s(&p), "--engine", engine]);
        assert_eq!(r.stdout.lines().next(), Some("6"), "{engine}: {}", r.stderr);
    }
}

#[test]
fn explain_shows_type_maxima() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", TWO_VOTERS);
    let r = bam(&["min-k", "--profile", s(&p), "--explain"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("4"));
    assert!(r.stdout.contains("M_u=2 M_w=0 M_uw=2 k=4"), "{}", r.stdout);

    let r = bam(&["min-k", "--profile", s(&p), "--explain", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["explain"]["M_u"], 2);
    assert_eq!(v["explain"]["M_w"], 0);
    assert_eq!(v["explain"]["M_uw"], 2);
    assert_eq!(v["engine"], "twovoter");
}

#[test]
fn long_order_rules_out_small_k() {
    let dir = TempDir::new().unwrap();
    let p = file(
        &dir,
        "p.txt",
        "alternatives: a b c d\nvoter v: a > b > c > d\nvoter w: b > a\nvoter x:\n",
    );
    let r = bam(&["solve", "--profile", s(&p), "--k", "2"]);
    assert_eq!(r.code, 1);
    assert!(
        r.stdout.contains("order length exceeds k+1"),
        "{}",
        r.stdout
    );
}

#[test]
fn solve_engines_agree_on_the_cycle() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", CYCLE3);
    for k in 0..=4 {
        let expected = if k >= 3 { 0 } else { 1 };
        for engine in ["auto", "search", "oracle"] {
            let r = bam(&[
                "solve",
                "--profile",
                s(&p),
                "--k",
                &k.to_string(),
                "--engine",
                engine,
            ]);
            assert_eq!(r.code, expected, "k={k} engine={engine}: {}", r.stderr);
        }
    }
    let r = bam(&[
        "solve",
        "--profile",
        s(&p),
        "--k",
        "2",
        "--engine",
        "twosat",
    ]);
    assert_eq!(r.code, 1);
    let r = bam(&[
        "solve",
        "--profile",
        s(&p),
        "--k",
        "3",
        "--engine",
        "twosat",
    ]);
    assert_eq!(r.code, 2);
    let r = bam(&[
        "solve",
        "--profile",
        s(&p),
        "--k",
        "3",
        "--engine",
        "twovoter",
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn json_output_is_stable() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", FOUR_THREE);
    let strip = |text: &str| {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        v["stats"].as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = bam(&["solve", "--profile", s(&p), "--k", "6", "--json"]);
    let b = bam(&["solve", "--profile", s(&p), "--k", "6", "--json"]);
    assert_eq!(a.code, 0);
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    let v = strip(&a.stdout);
    assert_eq!(v["decision"], "YES");
    assert_eq!(v["k"], 6);
    assert_eq!(
        (v["bounds"]["lower"].clone(), v["bounds"]["upper"].clone()),
        (6.into(), 9.into())
    );
    assert!(v["witness"].as_str().unwrap().starts_with("k: 6\n"));
}

#[test]
fn resource_limit_exits_with_three() {
    let dir = TempDir::new().unwrap();
    // bounds say k >= 5, the search needs a few dozen nodes to refute it
    let p = file(
        &dir,
        "p.txt",
        "alternatives: c1 c2 c3 c4 c5
voter v1: c3 > c4 > c1 > c5 > c2
voter v2: c2 > c1
voter v3: c1 > c3 > c2 > c5
voter v4:
",
    );
    assert_eq!(bam(&["solve", "--profile", s(&p), "--k", "5"]).code, 1);
    let r = bam(&[
        "solve",
        "--profile",
        s(&p),
        "--k",
        "5",
        "--engine",
        "search",
        "--node-limit",
        "1",
    ]);
    assert_eq!(r.code, 3, "{}{}", r.stdout, r.stderr);
    assert!(r.stderr.contains("resource limit"));
    let r = bam(&["min-k", "--profile", s(&p), "--node-limit", "1"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("at k = "), "{}", r.stderr);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.txt", "alternatives: a b\n\nvoter v: a > a\n");
    let r = bam(&["min-k", "--profile", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);

    let p = file(&dir, "p.txt", CYCLE3);
    assert_eq!(bam(&["solve", "--profile", s(&p), "--k", "-1"]).code, 2);
    assert_eq!(bam(&["solve", "--profile", s(&p)]).code, 2);
    assert_eq!(bam(&["frobnicate"]).code, 2);
    assert_eq!(bam(&["min-k", "--profile", "/nonexistent/p.txt"]).code, 2);
    let m = file(&dir, "m.txt", "k: 2\nhas c1: 3\n");
    let r = bam(&["verify", "--profile", s(&p), "--model", s(&m)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"));
    assert_eq!(bam(&["--help"]).code, 0);
}

#[test]
fn bounds_command() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", CYCLE3);
    let r = bam(&["bounds", "--profile", s(&p)]);
    assert_eq!(r.stdout, "lower: 2\nupper: 6\n");
    let r = bam(&["bounds", "--profile", s(&p), "--k", "0", "--json"]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["decision"], "NO");
    let r = bam(&["bounds", "--profile", s(&p), "--k", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("has c1: 1..2"), "{}", r.stdout);
}

#[test]
fn generated_coloring_instances() {
    let dir = TempDir::new().unwrap();
    for (edges, expected) in [
        ("a b\nb c\nc a\n", 0),
        ("a b\na c\na d\nb c\nb d\nc d\n", 1),
        ("a b\nb c\nc d\nd e\ne a\n", 0),
    ] {
        let g = file(&dir, "g.txt", edges);
        let p = dir.path().join("p.txt");
        let r = bam(&["generate", "coloring", "--input", s(&g), "--profile", s(&p)]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.contains("k = 3"));
        let r = bam(&[
            "solve",
            "--profile",
            s(&p),
            "--k",
            "3",
            "--engine",
            "search",
        ]);
        assert_eq!(r.code, expected, "{edges}");
    }
}

#[test]
fn generated_sat_instances() {
    let dir = TempDir::new().unwrap();
    for kind in ["sat-m3", "sat-k6"] {
        for (clauses, expected) in [("1 2 3\n-1 -2 -3\n", 0), ("1 1 1\n-1 -1 -1\n", 1)] {
            let f = file(&dir, "f.cnf", clauses);
            let p = dir.path().join("p.txt");
            let m = dir.path().join("m.txt");
            let w = dir.path().join("w.txt");
            let r = bam(&[
                "generate",
                kind,
                "--input",
                s(&f),
                "--profile",
                s(&p),
                "--model",
                s(&m),
            ]);
            assert_eq!(r.code, 0, "{}", r.stderr);
            let r = bam(&[
                "solve-cares",
                "--profile",
                s(&p),
                "--model",
                s(&m),
                "--witness",
                s(&w),
            ]);
            assert_eq!(
                r.code, expected,
                "{kind} {clauses}: {}{}",
                r.stdout, r.stderr
            );
            if expected == 0 {
                assert_eq!(
                    bam(&["verify", "--profile", s(&p), "--model", s(&w)]).code,
                    0
                );
            }
        }
    }
}

#[test]
fn generated_rxc3_instance() {
    let dir = TempDir::new().unwrap();
    let sets = file(&dir, "x.txt", "q: 1\n1 2 3\n1 2 3\n1 2 3\n");
    let p = dir.path().join("p.txt");
    let m = dir.path().join("m.txt");
    let r = bam(&[
        "generate",
        "rxc3",
        "--input",
        s(&sets),
        "--profile",
        s(&p),
        "--model",
        s(&m),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = bam(&["solve-has", "--profile", s(&p), "--model", s(&m), "--json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["k"], 14);
    // a has-only file is not a valid cares-given input
    assert_eq!(
        bam(&["solve-cares", "--profile", s(&p), "--model", s(&m)]).code,
        2
    );
}

#[test]
fn random_generation_is_seeded() {
    let a = bam(&[
        "generate",
        "random",
        "--seed",
        "7",
        "--alternatives",
        "5",
        "--voters",
        "4",
    ]);
    let b = bam(&[
        "generate",
        "random",
        "--seed",
        "7",
        "--alternatives",
        "5",
        "--voters",
        "4",
    ]);
    let c = bam(&[
        "generate",
        "random",
        "--seed",
        "8",
        "--alternatives",
        "5",
        "--voters",
        "4",
    ]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(a.stdout.starts_with("alternatives: c1 c2 c3 c4 c5\n"));
}
