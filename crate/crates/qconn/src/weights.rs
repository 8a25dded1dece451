//! Turns link physics into graph edge weights.
//!
//! Every edge gets the mean photon number `μ_link = (μ_i + μ_j)/2` of its
//! endpoints, learns a transmission probability `t_link` from capacity
//! samples ([`crate::qkd::learn_t_link`]), and is weighted by the resulting
//! secret key fraction ([`crate::qkd::edge_weight`]).
//!
//! Capacity streams are seeded per **link class**: the stream seed hashes the
//! master seed together with the bits of `μ_link` and nothing else. Links
//! with identical physics therefore draw identical sample streams and learn
//! bit-identical weights, which keeps symmetric topologies exactly symmetric,
//! lets product/entangled runs couple draw-by-draw, and makes results
//! independent of edge enumeration order — while still changing globally
//! with the master seed.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{CapacityMode, ChannelFamily, ProbMode};
use crate::error::{Error, Result};
use crate::qkd::{edge_weight, learn_t_link, LinkPhysics, WeightLearner};
use crate::spectral::WeightedTopology;

/// Everything needed to learn one link's weight.
#[derive(Debug, Clone)]
pub struct WeightingConfig {
    /// Baseline physics; `mu` is the default mean photon number for nodes
    /// without an override.
    pub physics: LinkPhysics,
    pub learner: WeightLearner,
    pub mode: CapacityMode,
    pub family: ChannelFamily,
    pub p_mode: ProbMode,
    pub master_seed: u64,
}

impl Default for WeightingConfig {
    fn default() -> Self {
        WeightingConfig {
            physics: LinkPhysics::default(),
            learner: WeightLearner::default(),
            mode: CapacityMode::Product,
            family: ChannelFamily::RandomRotation,
            p_mode: ProbMode::Random,
            master_seed: 0,
        }
    }
}

/// Stream seed for a link class: 64-bit FNV-1a over the master seed bytes
/// followed by the bits of `μ_link`.
pub fn link_seed(master_seed: u64, mu_link: f64) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut hash = FNV_OFFSET;
    for byte in master_seed
        .to_le_bytes()
        .into_iter()
        .chain(mu_link.to_bits().to_le_bytes())
    {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// One learned link: the class parameters, the EMA outcome, and the weight.
#[derive(Debug, Clone)]
pub struct LearnedLink {
    pub mu_link: f64,
    /// The ChaCha stream seed the capacity samples were drawn with.
    pub seed: u64,
    /// Final EMA value, used as the transmission probability.
    pub t_link: f64,
    /// EMA trajectory `[W_0, …, W_T]`.
    pub trajectory: Vec<f64>,
    /// Secret-key-fraction edge weight at the learned `t_link`.
    pub weight: f64,
}

/// Learns the weight of a link with mean photon number `mu_link`.
pub fn learn_link(cfg: &WeightingConfig, mu_link: f64) -> Result<LearnedLink> {
    let physics = cfg.physics.with_mu(mu_link);
    let seed = link_seed(cfg.master_seed, mu_link);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t_link, trajectory) = learn_t_link(
        &physics,
        &cfg.learner,
        cfg.mode,
        &cfg.family,
        cfg.p_mode,
        &mut rng,
    )?;
    let weight = edge_weight(&physics, t_link)?;
    Ok(LearnedLink { mu_link, seed, t_link, trajectory, weight })
}

/// Where a topology's edge weights come from.
#[derive(Debug, Clone)]
pub enum WeightSource {
    /// Every edge carries the same fixed weight (structural studies).
    FixedUniform(f64),
    /// Weights are learned from link physics per edge class.
    Learned(WeightingConfig),
}

/// Reweights a topology according to the source, preserving structure and
/// μ overrides. Learned weights are memoized per `μ_link` class.
pub fn weigh_topology(g: &WeightedTopology, source: &WeightSource) -> Result<WeightedTopology> {
    match source {
        WeightSource::FixedUniform(w) => {
            if !(*w >= 0.0 && w.is_finite()) {
                return Err(Error::validation(format!(
                    "uniform weight must be non-negative, got {w}"
                )));
            }
            g.reweighted(&vec![*w; g.edges().len()])
        }
        WeightSource::Learned(cfg) => {
            let mut classes: HashMap<u64, f64> = HashMap::new();
            let mut weights = Vec::with_capacity(g.edges().len());
            for edge in g.edges() {
                let mu_i = g.effective_mu(edge.i, cfg.physics.mu);
                let mu_j = g.effective_mu(edge.j, cfg.physics.mu);
                let mu_link = 0.5 * (mu_i + mu_j);
                let weight = match classes.get(&mu_link.to_bits()) {
                    Some(&w) => w,
                    None => {
                        let learned = learn_link(cfg, mu_link)?;
                        classes.insert(mu_link.to_bits(), learned.weight);
                        learned.weight
                    }
                };
                weights.push(weight);
            }
            g.reweighted(&weights)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{algebraic_connectivity, grid_topology};

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual} (diff {:.3e}, tol {tol:.1e})",
            (actual - expected).abs()
        );
    }

    #[test]
    fn link_seed_depends_on_master_seed_and_mu_bits() {
        let base = link_seed(0, 1.0);
        assert_eq!(base, link_seed(0, 1.0));
        assert_ne!(base, link_seed(1, 1.0));
        assert_ne!(base, link_seed(0, 1.5));
        assert_ne!(link_seed(0, 2.0), link_seed(0, 2.5));
    }

    #[test]
    fn learn_link_is_reproducible_and_self_consistent() {
        let cfg = WeightingConfig { learner: WeightLearner { iterations: 30, ..Default::default() }, ..Default::default() };
        let a = learn_link(&cfg, 1.0).unwrap();
        let b = learn_link(&cfg, 1.0).unwrap();
        assert_eq!(a.t_link.to_bits(), b.t_link.to_bits());
        assert_eq!(a.trajectory, b.trajectory);
        assert_eq!(a.trajectory.len(), 31);
        let direct = edge_weight(&cfg.physics.with_mu(1.0), a.t_link).unwrap();
        assert_eq!(a.weight.to_bits(), direct.to_bits());
    }

    #[test]
    fn fixed_uniform_weights_every_edge() {
        let g = grid_topology(3, 3).unwrap();
        let weighted = weigh_topology(&g, &WeightSource::FixedUniform(0.7)).unwrap();
        assert!(weighted.edges().iter().all(|e| e.weight == 0.7));
        assert!(weigh_topology(&g, &WeightSource::FixedUniform(-0.1)).is_err());
    }

    #[test]
    fn uniform_mu_grid_learns_one_weight_class() {
        let g = grid_topology(3, 3).unwrap();
        let cfg = WeightingConfig { learner: WeightLearner { iterations: 25, ..Default::default() }, ..Default::default() };
        let weighted = weigh_topology(&g, &WeightSource::Learned(cfg.clone())).unwrap();
        let first = weighted.edges()[0].weight;
        assert!(
            weighted.edges().iter().all(|e| e.weight.to_bits() == first.to_bits()),
            "identical links must learn identical weights"
        );
        // With one weight class the grid is the unit grid scaled by the
        // weight, so λ₂ = weight · 1.
        let (lambda2, _) = algebraic_connectivity(&weighted).unwrap();
        assert_close(lambda2, first, 1e-9);
        // And the class weight matches a direct single-link computation.
        let link = learn_link(&cfg, 1.0).unwrap();
        assert_eq!(first.to_bits(), link.weight.to_bits());
    }

    #[test]
    fn mu_override_only_touches_incident_edges() {
        let g = grid_topology(3, 3).unwrap();
        let cfg = WeightingConfig { learner: WeightLearner { iterations: 25, ..Default::default() }, ..Default::default() };
        let baseline = weigh_topology(&g, &WeightSource::Learned(cfg.clone())).unwrap();
        let mut boosted = g.clone();
        boosted.set_mu_override(5, 3.0).unwrap();
        let reweighted = weigh_topology(&boosted, &WeightSource::Learned(cfg)).unwrap();
        for (before, after) in baseline.edges().iter().zip(reweighted.edges()) {
            let touches_center = after.i == 5 || after.j == 5;
            if touches_center {
                assert_ne!(
                    before.weight.to_bits(),
                    after.weight.to_bits(),
                    "edge ({}, {}) should change with the override",
                    after.i,
                    after.j
                );
            } else {
                assert_eq!(
                    before.weight.to_bits(),
                    after.weight.to_bits(),
                    "edge ({}, {}) must not change",
                    after.i,
                    after.j
                );
            }
        }
    }

    #[test]
    fn symmetric_overrides_produce_identical_connectivity() {
        // Boosting corner 1 versus corner 3 yields isomorphic weighted
        // graphs, because equal μ classes learn equal weights.
        let cfg = WeightingConfig { learner: WeightLearner { iterations: 25, ..Default::default() }, ..Default::default() };
        let lambda_for = |corner: u32| {
            let mut g = grid_topology(3, 3).unwrap();
            g.set_mu_override(corner, 4.0).unwrap();
            let weighted = weigh_topology(&g, &WeightSource::Learned(cfg.clone())).unwrap();
            algebraic_connectivity(&weighted).unwrap().0
        };
        assert_close(lambda_for(1), lambda_for(3), 1e-12);
    }

    #[test]
    fn entangled_mode_never_weakens_a_link_class() {
        // Entangled and product runs share draws seed-for-seed, and the
        // mutual information dominates the Holevo quantity pointwise, so the
        // learned weight — and with it λ₂ — can only go up.
        let product_cfg = WeightingConfig { learner: WeightLearner { iterations: 40, ..Default::default() }, ..Default::default() };
        let entangled_cfg = WeightingConfig {
            mode: CapacityMode::Entangled,
            ..product_cfg.clone()
        };
        let g = {
            let mut g = grid_topology(3, 3).unwrap();
            // Push some links into the contested region where samples
            // actually straddle the threshold.
            g.set_mu_override(5, 3.5).unwrap();
            g.set_mu_override(1, 6.0).unwrap();
            g
        };
        let product = weigh_topology(&g, &WeightSource::Learned(product_cfg)).unwrap();
        let entangled = weigh_topology(&g, &WeightSource::Learned(entangled_cfg)).unwrap();
        for (p, e) in product.edges().iter().zip(entangled.edges()) {
            assert!(
                e.weight >= p.weight,
                "entangled weight {} < product weight {} on edge ({}, {})",
                e.weight,
                p.weight,
                p.i,
                p.j
            );
        }
        let (lp, _) = algebraic_connectivity(&product).unwrap();
        let (le, _) = algebraic_connectivity(&entangled).unwrap();
        assert!(le >= lp - 1e-12);
    }

    #[test]
    fn master_seed_changes_learned_weights() {
        let base = WeightingConfig { learner: WeightLearner { iterations: 40, ..Default::default() }, ..Default::default() };
        // μ = 3.5 keeps the threshold contested so the stream matters.
        let a = learn_link(&base, 3.5).unwrap();
        let reseeded = WeightingConfig { master_seed: 12345, ..base };
        let b = learn_link(&reseeded, 3.5).unwrap();
        assert_ne!(a.t_link.to_bits(), b.t_link.to_bits());
    }
}
