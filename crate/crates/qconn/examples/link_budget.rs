//! BB84 link budget: from pulse rate to secret-key fraction.
//!
//! Walks the rate chain once at the default operating point, then scans the
//! mean photon number μ. At a fixed transmission probability, raising μ only
//! helps — detected photons drown out the dark counts. The price of a large
//! μ appears at the network level, where the capacity-learned `t_link`
//! collapses once the sending rate outruns the channel (see the
//! `group_sweep` example).
//!
//! Run with: `cargo run --example link_budget`

use qconn::qkd::{qber, rate_breakdown, secret_key_fraction, LinkPhysics};

fn main() -> qconn::Result<()> {
    let physics = LinkPhysics::default();
    let rates = rate_breakdown(&physics)?;
    let q = qber(&physics)?;

    println!("rate chain at μ = {}, t_link = {}:", physics.mu, physics.t_link);
    println!("  r_s    = {:?}      (sending rate)", rates.r_s);
    println!("  r_raw  = {:?}      (detected)", rates.r_raw);
    println!("  r_sift = {:?}     (basis-sifted)", rates.r_sift);
    println!("  r_opt  = {:?}   (optical errors)", rates.r_opt);
    println!("  r_det  = {:?}     (dark counts)", rates.r_det);
    println!("  r_err  = {:?} (total errors)", rates.r_err);
    println!("  qber   = {:?}", q);
    println!("  secret key fraction = {:?}", secret_key_fraction(q)?);

    println!("\n{:>5} {:>12} {:>22}", "μ", "qber", "secret key fraction");
    for mu in [0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let p = physics.with_mu(mu);
        let q = qber(&p)?;
        println!("{mu:>5} {q:>12.6} {:>22.6}", secret_key_fraction(q)?);
    }
    Ok(())
}
