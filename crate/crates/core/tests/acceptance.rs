use tangal::suite::{run_suite, SuiteOptions, DEFAULT_SEED, TOLERANCE};

#[test]
fn acceptance() {
    let report = run_suite(&SuiteOptions {
        seed: DEFAULT_SEED,
        filter: std::env::var("ACCEPTANCE_FILTER").ok(),
        timings: true,
    });
    for c in &report.criteria {
        println!(
            "[{}] {:>2} {:<30} cases={:<5} mismatches={} (tolerance {TOLERANCE}) {}ms  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.cases,
            c.mismatches,
            c.millis.unwrap_or(0),
            c.detail
        );
    }
    assert!(!report.criteria.is_empty());
    let failed: Vec<u8> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
