//! The thirteen acceptance criteria at their stated tolerances and budgets.
//!
//! They run one after another in a single test so that the wall-clock
//! budgets are not distorted by other tests sharing the machine. Each
//! criterion prints one line; the test fails if any of them fails.

use sl2r_harmonic::verify::{run_check, CHECKS};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for (i, id) in CHECKS.iter().enumerate() {
        let o = run_check(id, 7);
        let on_time = o.within_budget();
        println!("[{:>2}] {}{}", i + 1, o.line(), if on_time { "" } else { " OVER BUDGET" });
        if !o.check.pass || !on_time {
            failed.push(*id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
