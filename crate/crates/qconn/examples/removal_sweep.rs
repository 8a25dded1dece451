//! How node loss reshapes the connectivity-vs-μ curves.
//!
//! Repeats the group sweep of the 3×3 grid after removing node 2 (an edge
//! midpoint), node 3 (a corner), or node 5 (the center), alongside the
//! intact baseline. The table is the full experiment record; the summary
//! lines condense it to one number per removal — how much of the baseline λ₂
//! survives the loss.
//!
//! Run with: `cargo run --example removal_sweep`

use qconn::channel::CapacityMode;
use qconn::sim::{preset_removal_sweep, run_sweep};

fn main() -> qconn::Result<()> {
    let cfg = preset_removal_sweep(0);
    let rows = run_sweep(&cfg)?;
    println!(
        "{} rows: {} groups × {} μ values × 2 modes × (baseline + {} removals)",
        rows.len(),
        cfg.groups.len(),
        cfg.mu_values.len(),
        cfg.removals.len()
    );

    let mode = CapacityMode::Product;
    let at = |group: &str, mu: f64, removed: Option<u32>| {
        rows.iter()
            .find(|r| r.mode == mode && r.group == group && r.mu == mu && r.removed == removed)
            .expect("sweep covered this point")
            .lambda2
    };

    println!("\nproduct mode, boosted ring 2+4+6+8:");
    println!("{:>4} {:>14} {:>14} {:>14} {:>14}", "μ", "baseline", "rm 2", "rm 3", "rm 5");
    for &mu in &cfg.mu_values {
        println!(
            "{mu:>4} {:>14.6} {:>14.6} {:>14.6} {:>14.6}",
            at("2+4+6+8", mu, None),
            at("2+4+6+8", mu, Some(2)),
            at("2+4+6+8", mu, Some(3)),
            at("2+4+6+8", mu, Some(5)),
        );
    }

    println!("\nsurviving fraction of baseline λ₂ at μ = 1:");
    let baseline = at("2+4+6+8", 1.0, None);
    for node in &cfg.removals {
        let frac = at("2+4+6+8", 1.0, Some(*node)) / baseline;
        println!("  remove {node}: {frac:.4}");
    }
    Ok(())
}
