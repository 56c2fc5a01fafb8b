//! X, Y and C_l1^2 over equal-magnitude off-diagonal patterns at d = 3.
//! Rows that are not positive semidefinite are kept and flagged.
//!
//! cargo run --example offdiag_sweep

use coherence::sweep::{run_sweep, write_csv, SweepConfig};

fn main() -> coherence::Result<()> {
    let count = SweepConfig::count_panel();
    println!("vary the number of non-zero pairs at m = 1/3:");
    write_csv(&count, &run_sweep(&count)?, std::io::stdout())?;

    let mut magnitude = SweepConfig::magnitude_panel();
    magnitude.p_values = vec![1.0, 1.5];
    println!("\nvary the magnitude at two non-zero pairs:");
    write_csv(&magnitude, &run_sweep(&magnitude)?, std::io::stdout())?;
    Ok(())
}
