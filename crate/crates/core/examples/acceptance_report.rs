//! Runs the numbered acceptance criteria and the per-index invariants.

use erwlab::acceptance::{invariants_at, run_all, SuiteConfig};

fn main() {
    let mut results = run_all(&SuiteConfig::default());
    results.extend(invariants_at(0.75));
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{failed} of {} failed", results.len());
}
