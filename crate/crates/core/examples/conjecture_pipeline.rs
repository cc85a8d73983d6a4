//! Runs the full near-MDS check for q = 3^m, m odd. Pass m as the first
//! argument (default 3).
use nmds::pipeline::{run_conjecture, Budgets};

fn main() -> nmds::Result<()> {
    let m = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let report = run_conjecture(m, &Budgets::default(), 0)?;
    println!("q = {}: [{}, {}] code", report.q, report.n, report.k);
    for c in &report.checks {
        println!("{:?} {}: {}", c.status, c.name, c.detail);
    }
    println!("pass: {}, complete: {}", report.pass(), report.complete());
    Ok(())
}
