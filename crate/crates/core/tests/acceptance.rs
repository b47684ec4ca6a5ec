//! Runs every acceptance criterion and prints one line each. Only failures
//! outside the documented unattainable set fail the target.

use smallball::acceptance::{run_all, AcceptanceOptions, EXPECTED_FAILURES};

fn main() {
    let results = run_all(&AcceptanceOptions::default());
    for r in &results {
        println!("{r}");
    }
    let unexpected: Vec<_> = results
        .iter()
        .filter(|r| !r.passed && !EXPECTED_FAILURES.contains(&r.id))
        .map(|r| r.id)
        .collect();
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} passed, expected failures {EXPECTED_FAILURES:?}", results.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
