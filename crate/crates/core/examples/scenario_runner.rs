// Runs a built-in scenario and lists the reports it wrote.

use fitzkit::scenario::{generate_builtin, run_scenario};
use fitzkit::Result;

pub fn run() -> Result<()> {
    let scenario = generate_builtin("two-point")?;
    let out = std::env::temp_dir().join("fitzkit-example");
    let summary = run_scenario(&scenario, &out)?;
    for s in &summary.suites {
        println!("{:02} {:<13} {}", s.index, s.kind, if s.passed { "PASS" } else { "FAIL" });
    }
    println!("reports in {}", summary.dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
