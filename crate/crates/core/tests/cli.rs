use std::fs;
use std::path::Path;

use kmlattice::cli::{execute, run_cli, Command, RunConfig, Status};

const FREE3: &str = "construction = ra_chamber_transitive\ncartan = 2 -2 -2; -2 2 -2; -2 -2 2\np = 2\n";
const PENTAGON: &str = "2 0 -2 -2 0; 0 2 0 -2 -2; -2 0 2 0 -2; -2 -2 0 2 0; 0 -2 -2 0 2";

fn cfg(text: &str) -> RunConfig {
    RunConfig::parse(text).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_free_product_of_three() {
    let o = execute(Command::Verify, &cfg(FREE3));
    assert_eq!(o.status, Status::Pass);
    assert_eq!(o.report.get("statistics", "covolume"), Some("1"));
    assert_eq!(o.report.get("certificate", "verdict"), Some("pass"));
    assert_eq!(o.report.get("outcome", "exit_code"), Some("0"));
}

#[test]
fn bourdon_with_twelve_faces_is_rejected() {
    let text = format!("construction = bourdon_surface\ncartan = {PENTAGON}\np = 5\nF = 12\n");
    let o = execute(Command::Verify, &cfg(&text));
    assert_eq!(o.status.exit_code(), 3);
}

#[test]
fn tiny_budget_exhausts() {
    let text = format!("construction = bourdon_surface\ncartan = {PENTAGON}\np = 5\nF = 8\nbudget = 3\n");
    let o = execute(Command::Verify, &cfg(&text));
    assert_eq!((o.status, o.status.exit_code()), (Status::BudgetExhausted, 4));
}

#[test]
fn non_spherical_component_is_named() {
    let text = "construction = fp_free\ncartan = 2 -1 -1 -2; -1 2 -1 -2; -1 -1 2 -2; -2 -2 -2 2\np = 2\n";
    let o = execute(Command::Verify, &cfg(text));
    assert_eq!(o.status.exit_code(), 3);
    assert!(o.report.get("hypotheses", "reason").unwrap().contains("{1,2,3}"));
}

#[test]
fn check_lists_components() {
    let text = "construction = fp_free\ncartan = 2 -1 -2; -1 2 -2; -2 -2 2\np = 2\n";
    let o = execute(Command::Check, &cfg(text));
    assert_eq!(o.status, Status::Pass);
    assert_eq!(o.report.get("hypotheses", "component.1"), Some("{1,2} A2"));
    assert_eq!(o.report.get("hypotheses", "component.2"), Some("{3} A1"));
    assert!(o.report.get("statistics", "M").is_none());
}

#[test]
fn counting_only_factor() {
    let text = "construction = fp_free\ncartan = 2 -1 -2; -3 2 -2; -2 -2 2\np = 2\n";
    let o = execute(Command::Verify, &cfg(text));
    assert_eq!((o.status, o.status.exit_code()), (Status::CountingOnly, 0));
    assert_eq!(o.report.get("statistics", "M"), Some("567"));
}

#[test]
fn export_dot_of_pentagon_chamber() {
    let text = format!("construction = surface_subgroup\ncartan = {PENTAGON}\np = 2\nh = 2\n");
    let o = execute(Command::ExportDot, &cfg(&text));
    let (name, dot) = &o.dot[0];
    assert_eq!(name, "chamber.dot");
    assert!(dot.starts_with("digraph chamber {"));
    assert_eq!(dot.matches("[label=").count(), 11);
}

#[test]
fn graph_product_over_the_pentagon() {
    let text = format!("construction = ra_chamber_transitive\ncartan = {PENTAGON}\np = 2\nh = 2\n");
    let o = execute(Command::PrintPresentation, &cfg(&text));
    assert_eq!(
        o.report.get("presentation", "presentation"),
        Some("< a, b, c, d, e | a^5, b^5, c^5, d^5, e^5, a b a^-1 b^-1, a e a^-1 e^-1, b c b^-1 c^-1, c d c^-1 d^-1, d e d^-1 e^-1 >")
    );
}

#[test]
fn report_round_trips() {
    let text = "construction = ra_two_orbit\ncartan = 2 -2 -2; -2 2 -2; -2 -2 2\np = 5\n";
    let first = execute(Command::Verify, &cfg(text)).report.to_string();
    let again = execute(Command::Verify, &cfg(&first)).report.to_string();
    assert_eq!(first, again);
}

#[test]
fn exit_codes_are_distinct() {
    let all = [Status::Pass, Status::Fail, Status::HypothesisRejected, Status::BudgetExhausted, Status::Error];
    let codes: Vec<i32> = all.iter().map(|s| s.exit_code()).collect();
    assert_eq!(codes, vec![0, 2, 3, 4, 1]);
}

#[test]
fn binary_entry_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write(dir.path(), "run.conf", FREE3);
    let out = dir.path().join("out");
    let code =
        run_cli(["kmlattice", "verify", "--config", &conf, "--out", out.to_str().unwrap(), "--dot", "--seedless"]);
    assert_eq!(code, 0);
    for f in ["report.txt", "timing.txt", "chamber.dot", "complex.dot"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let report = fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(!report.contains("elapsed"));
    let rerun = write(dir.path(), "again.conf", &report);
    assert_eq!(run_cli(["kmlattice", "verify", "--config", &rerun]), 0);
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write(dir.path(), "bad.conf", "construction = ra_two_orbit\ncartan = 2 -2; -2\np = 5\n");
    assert_eq!(run_cli(["kmlattice", "check", "--config", &conf]), 1);
    assert_eq!(run_cli(["kmlattice", "check", "--config", "/nonexistent/run.conf"]), 1);
    let conf = write(dir.path(), "p.conf", "construction = ra_two_orbit\ncartan = 2 -2; -2 2\np = 6\n");
    assert_eq!(run_cli(["kmlattice", "check", "--config", &conf]), 1);
}
