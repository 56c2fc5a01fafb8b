//! Residuals of the exact trade-off identities on random Hilbert-Schmidt states.
//!
//! cargo run --example tradeoff_identities

use coherence::family::{sample_hs_mixed, seeded_rng};
use coherence::verify::*;

fn main() -> coherence::Result<()> {
    let tol = Tolerances::default();
    let mut rng = seeded_rng(1);
    println!(
        "{:>2} {:>5} {:>11} {:>11} {:>11} {:>11} {:>11}",
        "d", "p", "l2", "max-rel", "X", "Y", "X+Y"
    );
    for d in [2, 3, 5, 8] {
        let rho = sample_hs_mixed(d, d, &mut rng);
        for p in [1.0, 1.25, 1.5, 1.75] {
            println!(
                "{d:>2} {p:>5} {:>11.2e} {:>11.2e} {:>11.2e} {:>11.2e} {:>11.2e}",
                residual_l2_triality(&rho, &tol)?.value,
                residual_max_relation(&rho, &tol)?.value,
                residual_x_tradeoff(&rho, p, &tol)?.value,
                residual_y_tradeoff(&rho, p, &tol)?.value,
                residual_xy_sum(&rho, p, &tol)?.value,
            );
        }
    }

    let rho = sample_hs_mixed(4, 2, &mut rng);
    println!("\nslacks at d=4, rank 2, p=1.5:");
    for s in slack_inequalities(&rho, 1.5, &tol)? {
        println!("  {:<20} {:+.6e}", s.identity_id, s.value);
    }
    Ok(())
}
