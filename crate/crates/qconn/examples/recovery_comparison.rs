//! Buying back connectivity after a node failure.
//!
//! Node 2 drops out of the 3×3 grid. The remaining nodes can compensate by
//! raising their photon budgets, and the planner compares two candidate
//! groups — the center {5} alone versus the far edge midpoints {4, 6, 8} —
//! stepping each group's μ upward until λ₂ climbs back above its post-damage
//! value. Every step of the trio costs three nodes' worth of μ, so the
//! lone-center plan wins on total budget even when it needs more steps.
//!
//! Run with: `cargo run --example recovery_comparison`

use qconn::channel::CapacityMode;
use qconn::sim::recovery_comparison;

fn main() -> qconn::Result<()> {
    for mode in [CapacityMode::Product, CapacityMode::Entangled] {
        println!("mode: {}", mode.as_str());
        let plans = recovery_comparison(0, mode)?;
        for plan in &plans {
            let group = plan
                .steps
                .first()
                .map(|s| format!("{:?}", s.group))
                .unwrap_or_else(|| "(no steps needed)".to_owned());
            println!("  boost {group}:");
            println!("    harmed λ₂   = {:?}", plan.baseline_lambda2);
            println!("    target λ₂   = {:?}", plan.target_lambda2);
            println!("    steps taken = {}", plan.steps.len());
            println!("    μ spent     = {}", plan.total_mu_spent);
            println!("    achieved λ₂ = {:?}", plan.achieved_lambda2);
            println!("    feasible    = {}", !plan.infeasible);
        }
        let (a, b) = (&plans[0], &plans[1]);
        let cheaper = if a.total_mu_spent <= b.total_mu_spent { a } else { b };
        println!(
            "  cheaper plan: boost {:?} for {} μ total\n",
            cheaper.steps.first().map(|s| s.group.clone()).unwrap_or_default(),
            cheaper.total_mu_spent
        );
    }
    Ok(())
}
