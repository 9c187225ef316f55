//! Run one verification suite in-process and print its checks.

use poincare_wave::verify::{run, Suite, VerifyOptions};

fn main() {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("radial").parse().unwrap();
    let report = run(suite, &VerifyOptions { tol: None, timing: true });
    for c in &report.checks {
        println!(
            "{:<40} {:>6} cases  {:.2e} <= {:.0e}  {}",
            c.name,
            c.cases,
            c.max_residual,
            c.tolerance,
            if c.passed { "ok" } else { "FAIL" }
        );
    }
    println!("passed: {}", report.passed);
}
