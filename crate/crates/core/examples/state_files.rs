//! Random states, JSON state files, and formal tables.
//!
//! cargo run --example state_files

use coherence::family::{sample_haar_pure, sample_hs_mixed, seeded_rng};
use coherence::{HermitianState, Mode};

fn main() -> coherence::Result<()> {
    let mut rng = seeded_rng(7);
    let pure = sample_haar_pure(3, &mut rng);
    let mixed = sample_hs_mixed(3, 2, &mut rng);
    println!(
        "Haar pure: purity {:.15}, eigenvalues {:?}",
        pure.purity(),
        pure.eigenvalues()
    );
    println!(
        "rank-2 HS: purity {:.6}, eigenvalues {:?}",
        mixed.purity(),
        mixed.eigenvalues()
    );

    let blend = pure.mix(&mixed, 0.3, Mode::Strict)?;
    println!("0.3 pure + 0.7 mixed: fingerprint {}", blend.fingerprint());

    let dir = std::env::temp_dir().join("coherence-example");
    std::fs::create_dir_all(&dir).map_err(|e| coherence::Error::Io {
        path: dir.clone(),
        source: e,
    })?;
    let path = dir.join("blend.json");
    blend.write_json(&path)?;
    let back = HermitianState::read_json(&path)?;
    println!("wrote {}; round trip exact: {}", path.display(), back == blend);

    // [[0.5, 0.6], [0.6, 0.5]] has eigenvalue -0.1
    let rows = vec![vec![0.5, 0.6], vec![0.6, 0.5]];
    match HermitianState::from_real_rows(&rows, Mode::Strict) {
        Err(e) => println!("strict: {e}"),
        Ok(_) => unreachable!(),
    }
    let formal = HermitianState::from_real_rows(&rows, Mode::Formal)?;
    println!("formal: accepted, min eigenvalue {:.3}", formal.min_eigenvalue());
    println!("dephased: {:?}", formal.dephase().diagonal());
    Ok(())
}
