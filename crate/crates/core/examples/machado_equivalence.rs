//! The cross-term quantity T against Y at p = 1.
//!
//! cargo run --example machado_equivalence

use coherence::family::{sample_hs_mixed, seeded_rng};
use coherence::measures::{machado_t, quantity_y};

fn main() -> coherence::Result<()> {
    let mut rng = seeded_rng(3);
    println!(
        "{:>2} {:>14} {:>14} {:>10}",
        "d", "(d-2)(d+1)T/2", "d Y/(d-1)", "diff"
    );
    for d in 3..=8 {
        let rho = sample_hs_mixed(d, d, &mut rng);
        let df = d as f64;
        let lhs = (df - 2.0) * (df + 1.0) / 2.0 * machado_t(&rho)?;
        let rhs = df / (df - 1.0) * quantity_y(&rho, 1.0)?;
        println!("{d:>2} {lhs:>14.10} {rhs:>14.10} {:>10.2e}", lhs - rhs);
    }
    Ok(())
}
