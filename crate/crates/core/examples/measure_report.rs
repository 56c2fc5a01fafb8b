//! Every quantifier for a few named states.
//!
//! cargo run --example measure_report

use coherence::{full_report, make_family, StateFamilySpec};

fn main() -> coherence::Result<()> {
    let cases = [
        (
            "maximally coherent pure, d=3",
            StateFamilySpec::MaxCoherentPure,
            3,
        ),
        ("completely mixed, d=3", StateFamilySpec::CompletelyMixed, 3),
        ("MCMS a=0.5, d=2", StateFamilySpec::Mcms { a: 0.5 }, 2),
        (
            "single pair m=0.2, d=4",
            StateFamilySpec::SinglePair {
                i: 0,
                j: 2,
                magnitude: 0.2,
            },
            4,
        ),
    ];
    for (label, spec, d) in cases {
        let rho = make_family(&spec, d)?;
        for p in [1.0, 1.5] {
            let r = full_report(&rho, p)?;
            println!("{label}, p={p}");
            println!(
                "{}\n",
                serde_json::to_string_pretty(&r).expect("report serializes")
            );
        }
    }
    Ok(())
}
