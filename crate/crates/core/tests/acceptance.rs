//! End-to-end acceptance: one PASS/FAIL line per criterion on stderr.

use std::io::Write;
use std::time::Instant;

use qlzero::affine::affine_hecke_suite;
use qlzero::hecke::hecke_suite;
use qlzero::kernel::character::graded_character;
use qlzero::kernel::checks::{commutation_check, fusion_check, fusion_control, normal_order_check, rewriter_check};
use qlzero::level0::{chevalley_check, exchange_check};
use qlzero::locality;
use qlzero::report::{CheckReport, Status};
use qlzero::ring::qm;
use qlzero::window::Window;

fn w(lo: i32, hi: i32) -> Window {
    Window::new(lo, hi).unwrap()
}

/// Failing record ids, plus the skipped ones that the criterion does not allow.
fn failures(reps: &[CheckReport]) -> Vec<String> {
    reps.iter().flat_map(|r| &r.records).filter(|r| r.status == Status::Fail).map(|r| format!("{} ({})", r.id, r.detail)).collect()
}

fn verdict(num: u32, name: &str, start: Instant, mut problems: Vec<String>, summary: String) {
    for (op, e) in locality::snapshot().iter().filter(|(_, e)| e.violations > 0) {
        problems.push(format!("{op} grew by {} over margin {}", e.worst_growth, e.margin));
    }
    let ok = problems.is_empty();
    let line = format!(
        "{} [{num:>2}] {name}: {summary} in {:.1}s{}",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        if ok { String::new() } else { format!(" -- {}", problems.join("; ")) }
    );
    // libtest captures std's stderr, not the descriptor
    match std::fs::OpenOptions::new().append(true).open("/dev/stderr") {
        Ok(mut f) => {
            let _ = writeln!(f, "\n{line}");
        }
        Err(_) => eprintln!("{line}"),
    }
    assert!(ok, "{line}");
}

fn records(reps: &[CheckReport]) -> usize {
    reps.iter().map(|r| r.records.len()).sum()
}

#[test]
fn hecke_relations() {
    let t = Instant::now();
    let mut reps = Vec::new();
    for n in 2..=4 {
        reps.push(hecke_suite(n, w(-4, 0)).unwrap());
    }
    for n in 5..=6 {
        reps.push(hecke_suite(n, w(0, 0)).unwrap());
    }
    let summary = format!("{} records, slots 2..6, window -4..0 up to 4 slots", records(&reps));
    verdict(1, "hecke relations", t, failures(&reps), summary);
}

#[test]
fn affine_hecke_relations() {
    let t = Instant::now();
    let mut reps = Vec::new();
    for k in 3..=5 {
        for n in 2..=4 {
            reps.push(affine_hecke_suite(n, &qm(1, k), w(-4, 0)).unwrap());
        }
    }
    let summary = format!("{} records, slots 2..4, p = q^3, q^4, q^5", records(&reps));
    verdict(2, "affine hecke relations", t, failures(&reps), summary);
}

#[test]
fn exchange_identity() {
    let t = Instant::now();
    let mut reps = Vec::new();
    for (n, lo) in [(1, -4), (2, -4), (3, -3), (4, -2)] {
        for k in [3, 4] {
            reps.push(exchange_check(n, &qm(1, k), w(lo, 0)).unwrap());
        }
    }
    let summary = format!("{} records, slots 1..4, p = q^3, q^4", records(&reps));
    verdict(3, "exchange identity for e0 and f0", t, failures(&reps), summary);
}

#[test]
fn normal_ordering_rules() {
    let t = Instant::now();
    let reps: Vec<CheckReport> = [2, 3].iter().map(|&n| normal_order_check(n, w(-4, 0), 2).unwrap()).collect();
    let tested: usize = reps.iter().flat_map(|r| &r.records).filter(|r| r.id.contains("rule")).map(|r| r.tested).sum();
    let summary = format!("{tested} rule coefficients certified, controls outside the kernel, slots 2 and 3");
    verdict(4, "normal ordering rules", t, failures(&reps), summary);
}

#[test]
fn commutation_spans() {
    let t = Instant::now();
    let reps: Vec<CheckReport> = [2, 3].iter().map(|&n| commutation_check(n, w(-4, 0)).unwrap()).collect();
    let summary = "equal spans on every slice of degree ≤ 4, slots 2 and 3".to_string();
    verdict(5, "commutation and exchange spans", t, failures(&reps), summary);
}

#[test]
fn fusion_compatibility() {
    let t = Instant::now();
    let mut reps = vec![fusion_check(2, &qm(1, 4), w(-3, 0)).unwrap(), fusion_check(3, &qm(1, 4), w(-3, 0)).unwrap(), fusion_check(4, &qm(1, 4), w(-2, 0)).unwrap()];
    let control = fusion_control(w(-3, 0)).unwrap();
    let wrong_p_rejected = fusion_check(2, &qm(1, 3), w(-3, 0)).is_err();
    reps.push(control);
    let mut problems = failures(&reps);
    if !wrong_p_rejected {
        problems.push("p = q^3 accepted".into());
    }
    let summary = "members at p = q^4 for 2, 3, 4 slots; the two-slot control at p = q^3 fails".to_string();
    verdict(6, "fusion compatibility", t, problems, summary);
}

#[test]
fn chevalley_relations() {
    let t = Instant::now();
    let reps = vec![chevalley_check(2, &qm(1, 4), w(-3, 0), true).unwrap(), chevalley_check(3, &qm(1, 4), w(-2, 0), false).unwrap()];
    let summary = format!("{} records, slots 2 and 3", records(&reps));
    verdict(7, "chevalley relations", t, failures(&reps), summary);
}

#[test]
fn graded_character_matches_oracle() {
    let t = Instant::now();
    let cells = graded_character(6, None, false).unwrap();
    let mut problems: Vec<String> = cells
        .iter()
        .filter(|c| !c.matches() || c.truncated)
        .map(|c| format!("module {} degree {} weight {}: {} vs {}", c.module, c.degree, c.weight, c.count, c.oracle))
        .collect();
    let at = |m: usize, d: u32| -> usize { cells.iter().filter(|c| c.module == m && c.degree == d).map(|c| c.count).sum() };
    // one highest weight vector per module, the second spanning a doublet
    let tops = cells.iter().filter(|c| c.degree == 0 && c.weight == c.module as i32 && c.count == 1).count();
    if tops != 2 {
        problems.push(format!("{tops} highest weight vectors at degree 0"));
    }
    if at(0, 1) != 3 {
        problems.push(format!("degree 1 of the vacuum module has dimension {}", at(0, 1)));
    }
    let dims: Vec<String> = (0..=6).map(|d| (at(0, d) + at(1, d)).to_string()).collect();
    let summary = format!("{} cells equal the level-one oracle, dimensions by degree {}", cells.len(), dims.join(","));
    verdict(8, "graded character", t, problems, summary);
}

#[test]
fn rewriter_soundness_completeness() {
    let t = Instant::now();
    let reps = vec![rewriter_check(2, w(-6, 0)).unwrap(), rewriter_check(3, w(-6, 0)).unwrap()];
    let summary = "every step certified, admissible count = quotient rank per slice, slots 2 and 3, degree ≤ 6".to_string();
    verdict(9, "rewriter soundness and completeness", t, failures(&reps), summary);
}

#[test]
fn locality_margins() {
    let t = Instant::now();
    let reps = vec![exchange_check(3, &qm(1, 4), w(-3, 0)).unwrap(), fusion_check(3, &qm(1, 4), w(-2, 0)).unwrap(), chevalley_check(2, &qm(1, 4), w(-2, 0), false).unwrap()];
    let ledger = locality::snapshot();
    let applications: u64 = ledger.values().map(|e| e.applications).sum();
    let mut problems = failures(&reps);
    if applications == 0 {
        problems.push("no operator application was recorded".into());
    }
    let summary = format!("{applications} applications of {} operators within margin", ledger.len());
    verdict(10, "locality margins", t, problems, summary);
}
