//! Runs every verification suite once and prints a timing line for each.
//!
//! ```text
//! cargo run --release --example suite_timing -- 7
//! ```

use std::time::Instant;

use hypkonvex::verify::{run_suite, Suite, SuiteConfig};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
    for suite in Suite::ALL {
        let start = Instant::now();
        match run_suite(suite, &cfg) {
            Ok(r) => {
                println!(
                    "{:14} pass={} cases={:5} max_violation={:.3e} tol={:.0e} {:.2?}",
                    r.suite,
                    r.pass,
                    r.cases,
                    r.max_violation,
                    r.tolerance,
                    start.elapsed()
                );
                for f in r.failures().take(3) {
                    println!("    {f:?}");
                }
            }
            Err(e) => println!("{suite:14} error: {e}"),
        }
    }
}
