//! End-to-end tests of the binary: exit codes, output determinism, and the
//! documented flag surface.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthoquiver"))
        .args(args)
        .env_remove("ORTHOQUIVER_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn enumerate_writes_expected_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    let out = run(&[
        "enumerate",
        "--family",
        "A",
        "--m",
        "2",
        "--n",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("count=5"));
    let payload = orthoquiver::results::read_results(&path).unwrap();
    assert_eq!(payload.count, 5);
    assert_eq!(payload.family, "A");
    assert_eq!(payload.subsets.len(), 5);
}

#[test]
fn enumerate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("one.json");
    let p2 = dir.path().join("two.json");
    for (p, jobs) in [(&p1, "1"), (&p2, "4")] {
        let out = run(&[
            "--jobs",
            jobs,
            "enumerate",
            "--family",
            "D",
            "--m",
            "3",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(&p1).unwrap(),
        std::fs::read(&p2).unwrap(),
        "output bytes depend on worker count"
    );
    let a = run(&["enumerate", "--family", "D", "--m", "3"]);
    let b = run(&["enumerate", "--family", "D", "--m", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hull_example() {
    let out = run(&[
        "hull", "--family", "A", "--m", "3", "--vertex", "(0,4)", "--side", "minus",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("{(0,2), (0,3), (0,4)}"));
}

#[test]
fn hull_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hull.json");
    let out = run(&[
        "hull",
        "--family",
        "D",
        "--m",
        "3",
        "--vertex",
        "(0,4)+",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = std::fs::read_to_string(&path).unwrap();
    let members: Vec<String> = serde_json::from_str(&doc).unwrap();
    // The alternating fork chain and the untagged box, in vertex order.
    assert_eq!(
        members,
        ["(-2,2)+", "(-1,2)", "(-1,3)-", "(0,2)", "(0,3)", "(0,4)+"]
    );
}

#[test]
fn knit_verify_reports() {
    let out = run(&["knit-verify", "--family", "B", "--m", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("identities hold"));
}

#[test]
fn verify_counts_table() {
    let out = run(&["verify-counts", "--max-m", "3"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("all cases pass"));
    assert!(text.contains("D4"));
    assert!(text.contains("50"));
    assert!(text.contains("35"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["enumerate", "--family", "E", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["enumerate", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["enumerate", "--family", "D", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["hull", "--family", "A", "--m", "2", "--vertex", "(0,9)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transport_summary() {
    let out = run(&["transport", "--family", "D", "--m", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("quiver=50"));
    assert!(text.contains("dissections=35"));
    assert!(text.contains("fiber1=20"));
    assert!(text.contains("fiber2=15"));
}

#[test]
fn render_quiver_from_results() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("a1.json");
    assert!(run(&[
        "enumerate",
        "--family",
        "A",
        "--m",
        "1",
        "--out",
        json.to_str().unwrap()
    ])
    .status
    .success());
    let svg = dir.path().join("a1.svg");
    let out = run(&[
        "render",
        "quiver",
        "--family",
        "A",
        "--m",
        "1",
        "--input",
        json.to_str().unwrap(),
        "--index",
        "0",
        "--format",
        "svg",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<svg"));
    assert_eq!(doc.matches("<svg").count(), 1);

    // ascii render to stdout, deterministic across runs
    let a = run(&[
        "render", "quiver", "--family", "A", "--m", "1", "--window", "0:5",
    ]);
    let b = run(&[
        "render", "quiver", "--family", "A", "--m", "1", "--window", "0:5",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn render_polygon_chords() {
    let out = run(&[
        "render",
        "polygon",
        "--l",
        "8",
        "--chords",
        "0-4,1-5,2-6,3-7",
        "--format",
        "svg",
    ]);
    assert!(out.status.success());
    let doc = stdout(&out);
    assert_eq!(doc.matches("<line").count(), 4);
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "family=A\nm=2\njobs=2\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "enumerate"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("count=5"));
    // flags win over the file
    let out = run(&["--config", cfg.to_str().unwrap(), "enumerate", "--m", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count=14"));
}

#[test]
fn info_prints_constants() {
    let out = run(&["info", "--family", "D", "--m", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("D4"));
    assert!(text.contains("l                8"));
    assert!(text.contains("quiver count     50"));
    assert!(text.contains("dissection count 35"));
}

#[test]
fn dissections_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d3.json");
    let out = run(&[
        "dissections",
        "--family",
        "D",
        "--m",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dissections=10"));
    let payload = orthoquiver::results::read_results(&path).unwrap();
    assert_eq!(payload.dissections.len(), 10);
    assert_eq!(payload.count, 10);
}
