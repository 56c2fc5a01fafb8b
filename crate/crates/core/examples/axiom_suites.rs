//! Sampled checks that C_lp is a wave measure and P a particle measure.
//!
//! cargo run --release --example axiom_suites

use coherence::verify::{axiom_suite_particle, axiom_suite_wave};

fn main() -> coherence::Result<()> {
    for d in [2, 3, 5] {
        for p in [1.0, 1.5, 2.0] {
            for r in axiom_suite_wave(d, p, 1000, 42)? {
                println!(
                    "d={d} p={p} {:?}: {} violations, worst margin {:.3e}",
                    r.axiom_id, r.violations, r.worst_margin
                );
            }
        }
        for r in axiom_suite_particle(d, 1000, 43)? {
            println!(
                "d={d} {:?}: {} violations, worst margin {:.3e}",
                r.axiom_id, r.violations, r.worst_margin
            );
        }
    }
    Ok(())
}
