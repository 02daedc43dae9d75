use erwlab::acceptance::{run_all, SuiteConfig};

#[test]
fn acceptance() {
    let results = run_all(&SuiteConfig::default());
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
