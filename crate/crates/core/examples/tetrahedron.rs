//! The four trade-off terms on vertex, edge and face states.
//!
//! cargo run --example tetrahedron

use coherence::tetra::tetra_table;

fn main() -> coherence::Result<()> {
    for (d, p) in [(3, 1.0), (5, 1.5)] {
        println!("d={d} p={p}");
        println!(
            "  {:<12} {:<32} {:>9} {:>9} {:>9} {:>9} {:>10}",
            "region", "state", "wave", "M_l", "P^2", "X", "reduced"
        );
        for r in tetra_table(d, p)? {
            println!(
                "  {:<12} {:<32} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>10.2e}",
                r.region.name(),
                r.state,
                r.wave_term,
                r.m_l,
                r.p_sq,
                r.x_term,
                r.reduced_residual
            );
        }
    }
    Ok(())
}
