//! Acceptance criteria, one test per criterion. Each prints one line per
//! check and a closing `criterion N: PASS|FAIL` line. Run with
//! `cargo test --test acceptance -- --nocapture --test-threads 1`.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use dqm::verify::suites::{
    default_order, expansion_leading_terms, golden_tables, h_power_suite, ideal_classification, kernel_suite,
    munu_suite, property_suites, series_cross_validation, CheckRecord, DEFAULT_SEED, MAIN_FIELDS,
};

fn report(criterion: u32, title: &str, records: &[CheckRecord]) {
    let mut text = String::new();
    for r in records {
        text.push_str(&r.line());
        text.push('\n');
    }
    let failed: Vec<&CheckRecord> = records.iter().filter(|r| !r.pass).collect();
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    text.push_str(&format!(
        "criterion {criterion} ({title}): {verdict}, {} of {} checks passed\n",
        records.len() - failed.len(),
        records.len()
    ));
    print!("{text}");
    assert!(!records.is_empty(), "criterion {criterion} ran no checks");
    assert!(failed.is_empty(), "criterion {criterion} failed:\n{}", failed.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n"));
}

fn per_field<F>(f: F) -> Vec<CheckRecord>
where
    F: Fn(u32) -> Vec<CheckRecord> + Sync,
{
    MAIN_FIELDS.par_iter().flat_map(|&q| f(q)).collect()
}

#[test]
fn criterion_1_closed_form_tables() {
    let mut records = Vec::new();
    for q in MAIN_FIELDS {
        let start = Instant::now();
        let mut r = golden_tables(q);
        let elapsed = start.elapsed();
        let fast = elapsed < Duration::from_secs(1);
        r.push(CheckRecord {
            check: "closed forms runtime".into(),
            params: format!("q={q} {} ms", elapsed.as_millis()),
            pass: fast,
            witness: (!fast).then(|| "over one second".into()),
        });
        records.extend(r);
    }
    report(1, "closed forms of D_{p^i} on E, g, h", &records);
}

#[test]
fn criterion_2_series_cross_validation() {
    let records = per_field(|q| series_cross_validation(q, default_order(q)));
    report(2, "ring derivatives against series derivatives", &records);
}

#[test]
fn criterion_3_leading_terms() {
    let records = per_field(expansion_leading_terms);
    report(3, "leading terms of t-expansions", &records);
}

#[test]
fn criterion_4_property_suites() {
    let records = property_suites(&MAIN_FIELDS, 1000, DEFAULT_SEED);
    report(4, "randomized identities", &records);
}

#[test]
fn criterion_5_ideal_classification() {
    let records = per_field(|q| ideal_classification(q, 64, DEFAULT_SEED));
    report(5, "hyperdifferential ideals", &records);
}

#[test]
fn criterion_6_congruence_mod_h() {
    let records = per_field(|q| munu_suite(q, 6, 32));
    report(6, "D_n(E^mu g^nu) mod h", &records);
}

#[test]
fn criterion_7_kernels() {
    let records: Vec<CheckRecord> = [4, 5].par_iter().flat_map(|&q| kernel_suite(q, &[0, 1], DEFAULT_SEED)).collect();
    report(7, "kernels on modular forms", &records);
}

#[test]
fn criterion_8_powers_of_h() {
    let records = per_field(|q| h_power_suite(q, 5, 64));
    report(8, "D_r(h^n) / h^n is a polynomial", &records);
}
