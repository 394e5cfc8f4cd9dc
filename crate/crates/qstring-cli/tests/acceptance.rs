//! Acceptance criteria at the full level, one test per criterion. Each test
//! writes its PASS/FAIL line straight to stderr so it shows up uncaptured.
//! Criteria run one at a time so their time limits measure only themselves.

use std::io::Write;
use std::sync::{Mutex, OnceLock};

use qstring::verify::{run_criterion, CriterionResult, Level, VerifyConfig};

fn config() -> VerifyConfig {
    VerifyConfig {
        level: Level::Full,
        ..VerifyConfig::default()
    }
}

/// Criteria 4 and 5 share one corpus, so they are computed once.
fn edit_distance_results() -> &'static [CriterionResult] {
    static RESULTS: OnceLock<Vec<CriterionResult>> = OnceLock::new();
    RESULTS.get_or_init(|| run_criterion(&config(), 4))
}

fn report(r: &CriterionResult) {
    let _ = writeln!(std::io::stderr(), "acceptance {}", r.line());
    assert!(r.passed, "{}", r.line());
}

fn check(id: u8) {
    static SERIAL: Mutex<()> = Mutex::new(());
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    match id {
        4 | 5 => report(&edit_distance_results()[id as usize - 4]),
        _ => report(&run_criterion(&config(), id)[0]),
    }
}

#[test]
fn criterion_01_lz77_worked_example() {
    check(1);
}

#[test]
fn criterion_02_lz_end_worked_example() {
    check(2);
}

#[test]
fn criterion_03_factorization_equivalence() {
    check(3);
}

#[test]
fn criterion_04_edit_distance_equivalence() {
    check(4);
}

#[test]
fn criterion_05_token_bounds() {
    check(5);
}

#[test]
fn criterion_06_query_scaling() {
    check(6);
}

#[test]
fn criterion_07_lf_shortcut_exactness() {
    check(7);
}

#[test]
fn criterion_08_index_equivalence() {
    check(8);
}

#[test]
fn criterion_09_applications() {
    check(9);
}

#[test]
fn criterion_10_lower_bound_fixtures() {
    check(10);
}

#[test]
fn criterion_11_size_relations() {
    check(11);
}
