//! Full verification suite driven from code, with JSON-lines records on stdout
//! for the first few results and the summary table at the end.
//!
//! cargo run --release --example verify_suite

use coherence::verify::{run_suite, SuiteConfig, Tolerances};

fn main() -> coherence::Result<()> {
    let cfg = SuiteConfig {
        dims: (2..=6).collect(),
        p_values: vec![1.0, 1.5, 2.0],
        trials: 200,
        seed: 2024,
        tolerances: Tolerances::default(),
    };
    let mut shown = 0;
    let summary = run_suite(&cfg, &mut |rec| {
        if shown < 5 {
            println!("{}", serde_json::to_string(rec)?);
            shown += 1;
        }
        Ok(())
    })?;
    println!("\n{}", summary.table());
    println!("all passed: {}", summary.all_passed());
    Ok(())
}
