//! Acceptance suite: one test per criterion, each driving the matching
//! verification suite at its stated scale and printing a pass/fail line.
//!
//! Run with `cargo test -p minoralg --test acceptance -- --nocapture` to see
//! the per-criterion lines and timings.

use minoralg::{run_suite, SuiteOptions, VerifyReport};

fn report_line(criterion: &str, report: &VerifyReport) {
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "{status} {criterion} [{} checks, {} ms]",
        report.checks.len(),
        report.millis
    );
    for c in &report.checks {
        let mark = if c.pass { "ok " } else { "FAIL" };
        println!("  {mark} {} ({} ms) {}", c.name, c.millis, c.detail);
        if let Some(cex) = &c.counterexample {
            println!("       counterexample: {cex}");
        }
    }
}

fn run(criterion: &str, suite: &str, opts: &SuiteOptions) -> VerifyReport {
    let report = run_suite(suite, opts).unwrap_or_else(|e| panic!("suite {suite} errored: {e}"));
    report_line(criterion, &report);
    assert!(report.pass, "criterion failed: {criterion}");
    report
}

#[test]
fn criterion_01_straightening_basis() {
    let opts = SuiteOptions::default();
    let report = run(
        "criterion 1: standard monomials are a basis; straighten round-trips",
        "straightening-basis",
        &opts,
    );
    assert!(report.millis < 120_000, "runtime bound: < 2 min");
}

#[test]
fn criterion_02_rho_oracle_agreement() {
    let opts = SuiteOptions::default();
    let report = run(
        "criterion 2: rho facet route = rho search route; rho of the full product",
        "rho-agreement",
        &opts,
    );
    assert!(report.millis < 300_000, "runtime bound: < 5 min");
}

#[test]
fn criterion_03_symbolic_power_initial_ideals() {
    let opts = SuiteOptions::default();
    run(
        "criterion 3: initial spaces of the gamma cuts equal the rho cuts",
        "initial-sympow",
        &opts,
    );
}

#[test]
fn criterion_04_primary_decomposition() {
    let opts = SuiteOptions::default();
    run(
        "criterion 4: ordinary powers equal the gamma intersection; irredundancy",
        "prdec",
        &opts,
    );
}

#[test]
fn criterion_05_shape_implication() {
    let opts = SuiteOptions::default();
    run(
        "criterion 5: factor-count bound forces all gamma thresholds",
        "shape-implication",
        &opts,
    );
}

#[test]
fn criterion_06_canonical_classes() {
    let opts = SuiteOptions::default();
    run(
        "criterion 6: canonical classes, all forms, Gorenstein table",
        "canonical",
        &opts,
    );
}

#[test]
fn criterion_07_distinguished_product() {
    let opts = SuiteOptions::default();
    let report = run(
        "criterion 7: the distinguished product exists and is unique",
        "distinguished-d",
        &opts,
    );
    assert!(report.millis < 600_000, "runtime bound: < 10 min");
}

#[test]
fn criterion_08_ideal_identities() {
    let opts = SuiteOptions::default();
    run(
        "criterion 8: ideal identities in the minor algebra, choice independent",
        "ideal-identities",
        &opts,
    );
}

#[test]
fn criterion_09_hilbert_cross_validation() {
    let opts = SuiteOptions::default();
    run(
        "criterion 9: Hilbert enumeration equals the hook-content route",
        "hilbert",
        &opts,
    );
}

#[test]
fn criterion_10_hankel() {
    let opts = SuiteOptions::default();
    run(
        "criterion 10: Hankel purity, realization independence, classes, shapes",
        "hankel",
        &opts,
    );
}

#[test]
fn criterion_11_valuation_axioms() {
    let opts = SuiteOptions::default();
    run(
        "criterion 11: gamma valuation axioms on random pairs",
        "valuation",
        &opts,
    );
}
