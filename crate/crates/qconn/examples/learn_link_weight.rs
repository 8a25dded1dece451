//! Learning a link's transmission probability from capacity samples.
//!
//! A link does not get `t_link` for free: the learner compares the link's
//! normalized sending rate against stochastic channel-capacity draws and
//! tracks the hit frequency with an exponential moving average. The final
//! average becomes the transmission probability, and the secret-key fraction
//! at that probability becomes the edge weight.
//!
//! At μ = 1 the threshold sits below almost every capacity draw, so the
//! average climbs toward 1. At larger μ the threshold crosses into the
//! sampled range and the learned value — and with it the weight — drops;
//! past the point where the threshold clears the best possible capacity,
//! the link learns that it is worthless.
//!
//! Run with: `cargo run --example learn_link_weight`

use qconn::weights::{learn_link, WeightingConfig};

fn main() -> qconn::Result<()> {
    let cfg = WeightingConfig::default();

    println!(
        "{:>5} {:>20} {:>12} {:>12}  trajectory (first 8 of {})",
        "μ",
        "stream seed",
        "t_link",
        "weight",
        cfg.learner.iterations + 1,
    );
    for mu in [0.5, 1.0, 3.5, 6.0] {
        let link = learn_link(&cfg, mu)?;
        let head: Vec<String> =
            link.trajectory.iter().take(8).map(|w| format!("{w:.3}")).collect();
        println!(
            "{mu:>5} {:>20} {:>12.6} {:>12.6}  [{}, ...]",
            link.seed,
            link.t_link,
            link.weight,
            head.join(", ")
        );
    }

    println!("\nsame seed, same stream: the learned weight is reproducible");
    let a = learn_link(&cfg, 3.5)?;
    let b = learn_link(&cfg, 3.5)?;
    println!("  μ = 3.5 twice: {:?} and {:?}", a.weight, b.weight);
    Ok(())
}
