use std::f64::consts::TAU;
use std::path::Path;
use std::process::{Command, Output};

fn anacont(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anacont")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_points(dir: &Path, name: &str, pts: &[(f64, f64)]) -> String {
    let body: Vec<String> = pts.iter().map(|(x, y)| format!("[{x}, {y}]")).collect();
    let file = dir.join(name);
    std::fs::write(&file, format!("{{\"points\": [{}]}}", body.join(", "))).unwrap();
    file.to_str().unwrap().to_string()
}

#[test]
fn wind_on_unit_speed_loop() {
    let dir = tempfile::tempdir().unwrap();
    let pts: Vec<(f64, f64)> = (0..=100)
        .map(|k| {
            let a = TAU * k as f64 / 100.0;
            if k == 100 { (1.0, 0.0) } else { (a.cos(), a.sin()) }
        })
        .collect();
    let f = write_points(dir.path(), "loop.json", &pts);
    let o = anacont(&["wind", "--path", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "W=1");
}

#[test]
fn oracle_blocked_is_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_points(dir.path(), "real_to_2.json", &[(0.5, 0.0), (2.0, 0.0)]);
    let o = anacont(&["oracle", "--path", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: blocked"));
    assert!(text.contains("first_exit_t: 0.333333"));
    assert!(text.contains("lift_end: 0,0"));
}

#[test]
fn table_summary() {
    let o = anacont(&["table", "--m-range", "-2:2", "--n-offsets", "0,1,2", "--samples", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "M,N,omega_re,omega_im,lift_re,lift_im,verdict");
    assert_eq!(lines.len(), 1 + 180 + 1);
    assert_eq!(*lines.last().unwrap(), "theorem_b: PASS");
}

#[test]
fn reach_then_oracle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for omega in ["0,2", "-20.085536923187668,0", "0.3,-0.01"] {
        let f = dir.path().join("reach.json");
        let o = anacont(&["reach", "--omega", omega, "--out", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let o = anacont(&["oracle", "--path", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("verdict: continuable"), "{omega}: {}", stdout(&o));
    }
}

#[test]
fn deterministic_outputs() {
    for args in [
        &["reach", "--random", "10", "--seed", "42"][..],
        &["table", "--samples", "4"][..],
        &["map-report", "--resolution", "128"][..],
    ] {
        let a = anacont(args);
        let b = anacont(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = anacont(&["reach", "--random", "10", "--seed", "1"]);
    let b = anacont(&["reach", "--random", "10", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("reachability: PASS\n"));
}

#[test]
fn usage_and_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"pts": []}"#).unwrap();
    let o = anacont(&["oracle", "--path", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("points"));

    assert_eq!(anacont(&["wind", "--nope"]).status.code(), Some(2));
    assert_eq!(anacont(&["map-report", "--truncation", "2:1:100"]).status.code(), Some(2));

    let o = anacont(&["classify", "--omega", "3,1", "--m", "0", "--n", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let through = write_points(dir.path(), "through.json", &[(1.0, 0.0), (-1.0, 0.0)]);
    assert_eq!(anacont(&["wind", "--path", &through]).status.code(), Some(1));
    let off_base = write_points(dir.path(), "off.json", &[(1.0, 0.0), (2.0, 0.0)]);
    assert_eq!(anacont(&["oracle", "--path", &off_base]).status.code(), Some(1));
}

#[test]
fn continue_and_classify_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_points(dir.path(), "seg.json", &[(0.5, 0.0), (2.0, 0.0)]);
    let o = anacont(&["continue", "--germ", "log", "--path", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("t,center_re,center_im,radius_est\n"));
    assert!(text.lines().last().unwrap().starts_with("1,2,0,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("status: completed"));

    let w = dir.path().join("witness.json");
    let o = anacont(&["classify", "--omega", "-1,0", "--m", "0", "--n", "1", "--witness", w.to_str().unwrap()]);
    assert!(stdout(&o).contains("verdict: continuable"));
    let o = anacont(&["oracle", "--path", w.to_str().unwrap()]);
    assert!(stdout(&o).contains("verdict: continuable"));

    let o = anacont(&["demo-expexp"]);
    assert!(stdout(&o).contains("a_fails_near_1: true"));
    assert!(stdout(&o).contains("b_matches: true"));
}
