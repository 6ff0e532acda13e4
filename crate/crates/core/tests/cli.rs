mod common;

use std::process::{Command, Output};

use common::fixture_path;
use orbit_closure::degen::DegenPoset;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-closure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture_path(name).display().to_string()
}

#[test]
fn orbit_reports_complement_cycles() {
    assert_eq!(stdout(&["orbit", &path("ex_5_2")]), "m = 2, omega = [w, w^2], stab_dim = 0\n");
}

#[test]
fn euler_reports_bounds() {
    let out = stdout(&["euler", &path("ex_5_1a")]);
    assert!(out.starts_with("chi = 4, strata = 4, bounds: chi(boundary)=3 <= t+1=3 OK\n"), "{out}");
    assert!(out.ends_with("status: verified-complete\n"), "{out}");
}

#[test]
fn poset_dot_has_one_node_per_stratum() {
    let out = stdout(&["poset", &path("ex_5_2"), "--format", "dot"]);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert_eq!(out.lines().filter(|l| l.contains("->")).count(), 4);
}

#[test]
fn poset_json_round_trips() {
    let out = stdout(&["poset", &path("ex_5_3"), "--format", "json"]);
    let p = DegenPoset::from_json(&out).unwrap();
    assert_eq!(p.to_json() + "\n", out);
}

#[test]
fn nested_limit() {
    let p = path("ex_5_2");
    let out = stdout(&["limit", &p, "--t", "1/s", "--t", "y/s^2", "--outer", "y=1"]);
    assert_eq!(out.lines().count(), 1);
    assert_eq!(out, stdout(&["limit", &p, "--t", "1/s", "--t", "1/s^2"]));
}

#[test]
fn jobs_do_not_change_output() {
    let p = path("ex_5_4");
    assert_eq!(stdout(&["poset", &p, "--jobs", "1"]), stdout(&["poset", &p, "--jobs", "4"]));
}

#[test]
fn surface_text_lists_curves() {
    let out = stdout(&["surface", "--hirzebruch", "3"]);
    assert!(out.contains("-3"), "{out}");
}

#[test]
fn errors_name_the_failure() {
    let out = run(&["surface", "--hirzebruch", "1"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("InvalidHirzebruchIndex"), "{err}");

    let out = run(&["orbit", "/nonexistent/problem.json"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("ParseError"));
}
