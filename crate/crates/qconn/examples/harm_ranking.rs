//! Ranking nodes by the connectivity damage their loss causes.
//!
//! Removes each node of the 3×3 grid in turn, re-learns the BB84 edge
//! weights on the remaining graph, and sorts by the resulting λ₂. On the
//! grid the geometry decides the ranking: edge midpoints (2, 4, 6, 8) carry
//! the bottleneck links and top the list, the center (5) comes next, and the
//! corners (1, 3, 7, 9) are the most expendable.
//!
//! Run with: `cargo run --example harm_ranking`

use qconn::resilience::harm_ranking;
use qconn::spectral::grid_topology;
use qconn::weights::{WeightSource, WeightingConfig};

fn main() -> qconn::Result<()> {
    let grid = grid_topology(3, 3)?;
    let source = WeightSource::Learned(WeightingConfig::default());
    let candidates: Vec<u32> = grid.node_ids().to_vec();
    let ranking = harm_ranking(&grid, &candidates, &source)?;

    println!("baseline λ₂ = {:?}", ranking.baseline_lambda2);
    println!("\n{:>6} {:>16} {:>16}", "node", "λ₂ after", "Δλ₂");
    for entry in &ranking.entries {
        println!(
            "{:>6} {:>16.6} {:>16.6}",
            entry.node, entry.lambda2_after, entry.delta
        );
    }

    let worst = &ranking.entries[0];
    println!(
        "\nmost harmful loss: node {} (λ₂ drops {:.1}% of its baseline)",
        worst.node,
        100.0 * -worst.delta / ranking.baseline_lambda2
    );
    Ok(())
}
