use hyperfns::fixtures::{check, load_suite, SUITES};
use hyperfns::verify::{run_suite, Suite, VerifyOptions};

#[test]
fn every_verification_suite_passes_with_defaults() {
    let opts = VerifyOptions::default();
    for suite in Suite::ALL {
        for c in run_suite(suite, &opts) {
            assert!(c.pass, "{c}");
        }
    }
}

#[test]
fn suites_are_deterministic_for_a_seed() {
    let opts = VerifyOptions::default();
    let a: Vec<String> = run_suite(Suite::Classify, &opts).iter().map(|c| c.to_string()).collect();
    let b: Vec<String> = run_suite(Suite::Classify, &opts).iter().map(|c| c.to_string()).collect();
    assert_eq!(a, b);
}

#[test]
fn committed_fixtures_conform() {
    for name in SUITES {
        let recs = load_suite(name).unwrap();
        assert!(!recs.is_empty(), "{name} is empty");
        for rec in &recs {
            let c = check(rec);
            assert!(c.pass, "{} rel_err {:?} tol {} error {:?}", c.case_id, c.rel_err, c.tol, c.error);
        }
    }
}
