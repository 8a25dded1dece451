//! Classical capacity of qubit channels, with and without entanglement
//! assistance.
//!
//! For each channel model the optimizer reports `C` (best input distribution
//! over the four BB84 signal states) and `C_E` (best input state, assisted by
//! a shared entangled pair). Random draws sketch how far unoptimized choices
//! fall below the optimum. For every unitary channel the pair is exactly
//! (1, 2) — the factor of two the entangled protocol buys.
//!
//! Run with: `cargo run --example capacity_curve`

use qconn::sim::{capacity_curve, CapacityCurveConfig};

fn main() -> qconn::Result<()> {
    let cfg = CapacityCurveConfig { random_draws: 64, ..CapacityCurveConfig::default() };
    let points = capacity_curve(&cfg)?;

    println!(
        "{:<20} {:>10} {:>10} {:>23} {:>23}",
        "channel", "C", "C_E", "random C (min..max)", "random C_E (min..max)"
    );
    for p in &points {
        let range = |r: Option<(f64, f64)>| match r {
            Some((lo, hi)) => format!("{lo:.4} .. {hi:.4}"),
            None => "-".to_owned(),
        };
        println!(
            "{:<20} {:>10.6} {:>10.6} {:>23} {:>23}",
            p.label,
            p.c_product,
            p.c_entangled,
            range(p.random_product),
            range(p.random_entangled),
        );
    }

    let identity = &points[0];
    println!(
        "\nentanglement gain on the identity channel: {:.6}x",
        identity.c_entangled / identity.c_product
    );
    Ok(())
}
