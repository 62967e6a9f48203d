//! Acceptance suite: the eight verification criteria, one test each.
//!
//! Every test runs the corresponding batch runner from [`tridom::bench`],
//! prints its one-line report (the same line `tridom bench acceptance`
//! prints), and asserts the verdict. The runners fail fast, so a red test
//! names the first offending instance in its message.
//!
//! Criterion 8 cross-checks the published list of cycle lengths where
//! ⌈2n/7⌉ exceeds ⌊5n/16⌋ against a recomputation; the recomputed set also
//! contains n = 18, so that test fails until the quoted list is corrected.
//! The library itself always uses the recomputed arithmetic.

use tridom::bench::{self, CriterionReport};

fn assert_criterion(report: CriterionReport) {
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_1_certified_domination_on_triangulations() {
    assert_criterion(bench::criterion_1());
}

#[test]
fn criterion_2_hat_cycle_reduction_bound() {
    assert_criterion(bench::criterion_2());
}

#[test]
fn criterion_3_rewrite_rule_lift_soundness() {
    assert_criterion(bench::criterion_3());
}

#[test]
fn criterion_4_exact_oracle_anchors_and_agreement() {
    assert_criterion(bench::criterion_4());
}

#[test]
fn criterion_5_short_cycle_sweep_size_formula() {
    assert_criterion(bench::criterion_5());
}

#[test]
fn criterion_6_outerplanar_side_minimum() {
    assert_criterion(bench::criterion_6());
}

#[test]
fn criterion_7_cycle_normalization() {
    assert_criterion(bench::criterion_7());
}

#[test]
fn criterion_8_crossover_arithmetic() {
    assert_criterion(bench::criterion_8());
}
