//! Deterministic experiment presets and parameter sweeps.
//!
//! A sweep evaluates the network's algebraic connectivity over a grid of
//! experimental knobs: channel mode (product vs. entangled), a node group
//! whose mean photon number μ is tuned, the μ value itself, and an optional
//! removed node. Every (mode, group, μ, removal) point yields one
//! [`SweepRow`]; rows are emitted in a fixed sort order so identical
//! configurations produce byte-identical tables.
//!
//! Seeding: all randomness derives from `master_seed` through the per-link
//! class streams of [`crate::weights`]. Two links with the same effective
//! μ therefore learn identical weights, which keeps symmetric sweeps
//! symmetric to the bit and makes rows independent of evaluation order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{
    bb84_states, sample_capacity, CapacityMode, ChannelFamily, ChannelModel, ProbMode,
};
use crate::error::{Error, Result};
use crate::qkd::{LinkPhysics, WeightLearner};
use crate::resilience::{recovery_plans, remove_node, RecoveryPlan};
use crate::spectral::{algebraic_connectivity, grid_topology, NodeId, WeightedTopology};
use crate::weights::{weigh_topology, WeightSource, WeightingConfig};

/// Fixed μ increment used by the recovery-comparison preset.
pub const RECOVERY_MU_STEP: f64 = 1.0;
/// μ ceiling for the recovery-comparison preset (matches the sweep range).
pub const RECOVERY_MU_CAP: f64 = 8.0;
/// Recovery target = harmed λ₂ + this margin. Small enough to be reachable
/// by tuning a single node, large enough to require at least one step.
pub const RECOVERY_TARGET_MARGIN: f64 = 1e-4;

/// How the sweep's base topology is described.
#[derive(Debug, Clone, PartialEq)]
pub enum TopologySpec {
    /// Rectangular grid, nodes numbered row-major from 1.
    Grid { rows: u32, cols: u32 },
    /// Arbitrary node set and edge list (initial weight 1 per edge).
    Explicit { nodes: Vec<NodeId>, edges: Vec<(NodeId, NodeId)> },
}

impl TopologySpec {
    /// Materializes the topology with unit initial weights.
    pub fn build(&self) -> Result<WeightedTopology> {
        match self {
            TopologySpec::Grid { rows, cols } => build_grid(*rows, *cols),
            TopologySpec::Explicit { nodes, edges } => {
                let weighted: Vec<(NodeId, NodeId, f64)> =
                    edges.iter().map(|&(i, j)| (i, j, 1.0)).collect();
                WeightedTopology::new(nodes.clone(), weighted)
            }
        }
    }
}

/// Builds a rows×cols grid: nodes numbered row-major starting at 1, edges
/// between horizontal and vertical neighbors, unit initial weights.
pub fn build_grid(rows: u32, cols: u32) -> Result<WeightedTopology> {
    grid_topology(rows, cols)
}

/// A named set of nodes whose μ is tuned together during a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGroup {
    /// Label used in output tables; must not contain the column delimiter.
    pub label: String,
    pub nodes: Vec<NodeId>,
}

impl SweepGroup {
    /// Group with an auto-generated label: node ids joined by `+`, or
    /// `"none"` for the empty group.
    pub fn new(nodes: Vec<NodeId>) -> Self {
        let label = if nodes.is_empty() {
            "none".to_owned()
        } else {
            nodes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("+")
        };
        SweepGroup { label, nodes }
    }

    /// Group with an explicit label.
    pub fn labeled(label: impl Into<String>, nodes: Vec<NodeId>) -> Self {
        SweepGroup { label: label.into(), nodes }
    }
}

/// Everything a sweep needs: topology, link physics, learner settings,
/// channel sampling choices, and the sweep axes themselves.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Experiment name, first column of every output row.
    pub experiment: String,
    pub topology: TopologySpec,
    /// Baseline link physics; `physics.mu` is the μ of nodes outside the
    /// tuned group.
    pub physics: LinkPhysics,
    pub learner: WeightLearner,
    pub family: ChannelFamily,
    pub p_mode: ProbMode,
    /// Channel modes to sweep; each adds a full copy of the point grid.
    pub modes: Vec<CapacityMode>,
    /// Node groups whose μ is set to each sweep value in turn.
    pub groups: Vec<SweepGroup>,
    /// μ values applied to the tuned group.
    pub mu_values: Vec<f64>,
    /// Nodes to remove, one at a time. A baseline (no removal) point is
    /// always included; an empty list yields baseline rows only.
    pub removals: Vec<NodeId>,
    pub master_seed: u64,
    /// Where the rendered table should land; `None` means standard output.
    /// Carried for provenance — [`run_sweep`] itself never writes files.
    pub output_path: Option<std::path::PathBuf>,
}

impl ExperimentConfig {
    /// A 3×3-grid config with default physics and learner, both channel
    /// modes, random rotation channels, and random signal distributions —
    /// the base every preset customizes.
    pub fn grid_default(experiment: impl Into<String>, master_seed: u64) -> Self {
        ExperimentConfig {
            experiment: experiment.into(),
            topology: TopologySpec::Grid { rows: 3, cols: 3 },
            physics: LinkPhysics::default(),
            learner: WeightLearner::default(),
            family: ChannelFamily::RandomRotation,
            p_mode: ProbMode::Random,
            modes: vec![CapacityMode::Product, CapacityMode::Entangled],
            groups: vec![SweepGroup::new(vec![])],
            mu_values: vec![1.0],
            removals: vec![],
            master_seed,
            output_path: None,
        }
    }

    /// Validates every field, aggregating all offending fields into one
    /// [`Error::Config`].
    pub fn validate(&self) -> Result<WeightedTopology> {
        let mut problems = Vec::new();
        if self.experiment.is_empty() {
            problems.push("experiment: name must be non-empty".to_owned());
        }
        let topology = match self.topology.build() {
            Ok(g) => Some(g),
            Err(e) => {
                problems.push(format!("topology: {e}"));
                None
            }
        };
        if let Err(e) = self.physics.validate() {
            problems.push(format!("physics: {e}"));
        }
        if let Err(e) = self.learner.validate() {
            problems.push(format!("learning: {e}"));
        }
        if self.modes.is_empty() {
            problems.push("modes: at least one channel mode is required".to_owned());
        }
        let mut seen_modes = Vec::new();
        for mode in &self.modes {
            if seen_modes.contains(mode) {
                problems.push(format!("modes: duplicate mode {mode}"));
            }
            seen_modes.push(*mode);
        }
        if self.groups.is_empty() {
            problems.push(
                "sweep: at least one group is required (an empty group sweeps nothing)"
                    .to_owned(),
            );
        }
        let mut seen_labels = BTreeSet::new();
        for group in &self.groups {
            if group.label.is_empty()
                || group.label.contains(',')
                || group.label.chars().any(char::is_whitespace)
            {
                problems.push(format!(
                    "sweep: group label {:?} must be non-empty without commas or whitespace",
                    group.label
                ));
            }
            if !seen_labels.insert(group.label.clone()) {
                problems.push(format!("sweep: duplicate group label {:?}", group.label));
            }
            let mut seen_nodes = BTreeSet::new();
            for &node in &group.nodes {
                if !seen_nodes.insert(node) {
                    problems.push(format!(
                        "sweep: group {:?} lists node {node} twice",
                        group.label
                    ));
                }
                if let Some(g) = &topology {
                    if !g.node_ids().contains(&node) {
                        problems.push(format!(
                            "sweep: group {:?} member {node} is not a topology node",
                            group.label
                        ));
                    }
                }
            }
        }
        if self.mu_values.is_empty() {
            problems.push("sweep: at least one μ value is required".to_owned());
        }
        let mut seen_mu = BTreeSet::new();
        for &mu in &self.mu_values {
            if !(mu.is_finite() && mu > 0.0) {
                problems.push(format!("sweep: μ values must be positive and finite, got {mu}"));
            } else if !seen_mu.insert(mu.to_bits()) {
                problems.push(format!("sweep: duplicate μ value {mu}"));
            }
        }
        let mut seen_removals = BTreeSet::new();
        for &node in &self.removals {
            if !seen_removals.insert(node) {
                problems.push(format!("removals: node {node} listed twice"));
            }
            if let Some(g) = &topology {
                if !g.node_ids().contains(&node) {
                    problems.push(format!("removals: node {node} is not a topology node"));
                }
            }
        }
        if let Some(g) = &topology {
            if !self.removals.is_empty() && g.node_count() < 3 {
                problems.push(
                    "removals: removing a node needs at least 3 nodes to leave a graph behind"
                        .to_owned(),
                );
            }
        }
        if problems.is_empty() {
            Ok(topology.expect("no problems implies the topology built"))
        } else {
            Err(Error::Config(problems))
        }
    }

    /// The per-link weighting configuration this experiment uses for `mode`.
    pub fn weighting(&self, mode: CapacityMode) -> WeightingConfig {
        WeightingConfig {
            physics: self.physics,
            learner: self.learner,
            mode,
            family: self.family.clone(),
            p_mode: self.p_mode,
            master_seed: self.master_seed,
        }
    }
}

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub experiment: String,
    pub mode: CapacityMode,
    /// Label of the tuned group.
    pub group: String,
    /// μ applied to the tuned group.
    pub mu: f64,
    /// Node removed before evaluation, if any.
    pub removed: Option<NodeId>,
    /// Algebraic connectivity of the resulting weighted graph.
    pub lambda2: f64,
    pub seed: u64,
    /// EMA update count `T`.
    pub iterations: u32,
    /// Capacity samples per EMA update `K`.
    pub window: u32,
}

impl SweepRow {
    fn sort_key(&self) -> (String, &'static str, String, u64, u8, NodeId) {
        // μ values are validated positive and finite, so the IEEE-754 bit
        // pattern orders them numerically.
        let removed_rank = u8::from(self.removed.is_some());
        (
            self.experiment.clone(),
            self.mode.as_str(),
            self.group.clone(),
            self.mu.to_bits(),
            removed_rank,
            self.removed.unwrap_or(0),
        )
    }
}

/// Evaluates λ₂ at every (mode, group, μ, removal) point of the config.
///
/// Rows come back sorted by (experiment, mode, group, μ, removal) — baseline
/// before removals — and are a pure function of the config, master seed
/// included: rerunning an identical config reproduces every row bit for bit.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    let base = cfg.validate()?;
    let mut removal_points: Vec<Option<NodeId>> = vec![None];
    removal_points.extend(cfg.removals.iter().map(|&n| Some(n)));

    let mut rows = Vec::new();
    for &mode in &cfg.modes {
        let source = WeightSource::Learned(cfg.weighting(mode));
        for group in &cfg.groups {
            for &mu in &cfg.mu_values {
                let mut tuned = base.clone();
                for &node in &group.nodes {
                    tuned.set_mu_override(node, mu)?;
                }
                for &removed in &removal_points {
                    let survivor = match removed {
                        None => tuned.clone(),
                        Some(node) => remove_node(&tuned, node)?,
                    };
                    let weighted = weigh_topology(&survivor, &source)?;
                    let (lambda2, _) = algebraic_connectivity(&weighted)?;
                    rows.push(SweepRow {
                        experiment: cfg.experiment.clone(),
                        mode,
                        group: group.label.clone(),
                        mu,
                        removed,
                        lambda2,
                        seed: cfg.master_seed,
                        iterations: cfg.learner.iterations,
                        window: cfg.learner.window,
                    });
                }
            }
        }
    }
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(rows)
}

/// Column header of the sweep output table.
pub const TABLE_HEADER: &str = "experiment,mode,group,mu,removed,lambda2,seed,iterations,window";

/// Renders rows as a comma-separated table: one header row, shortest
/// round-trip decimals for μ and λ₂, `none` for baseline rows.
pub fn render_table(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(TABLE_HEADER);
    out.push('\n');
    for row in rows {
        let removed = match row.removed {
            None => "none".to_owned(),
            Some(node) => node.to_string(),
        };
        writeln!(
            out,
            "{},{},{},{:?},{},{:?},{},{},{}",
            row.experiment,
            row.mode,
            row.group,
            row.mu,
            removed,
            row.lambda2,
            row.seed,
            row.iterations,
            row.window
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Detects the collapse threshold of one (mode, group) baseline series:
/// the largest μ — scanning in ascending order — whose λ₂ still reaches
/// half the series maximum before the first drop below it.
///
/// Returns `None` if the series is empty, its maximum is not positive, or
/// the very first point is already below half-maximum.
pub fn collapse_threshold(rows: &[SweepRow], mode: CapacityMode, group: &str) -> Option<f64> {
    let mut series: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.mode == mode && r.group == group && r.removed.is_none())
        .map(|r| (r.mu, r.lambda2))
        .collect();
    series.sort_by(|a, b| a.0.total_cmp(&b.0));
    let max = series.iter().map(|&(_, l)| l).fold(f64::NEG_INFINITY, f64::max);
    if series.is_empty() || !(max > 0.0) {
        return None;
    }
    let half = 0.5 * max;
    let mut threshold = None;
    for &(mu, lambda2) in &series {
        if lambda2 >= half {
            threshold = Some(mu);
        } else {
            break;
        }
    }
    threshold
}

/// Group-μ sweep preset: tunes the center `[5]`, the one-hop neighbors
/// `[2,4,6,8]`, and the corners `[1,3,7,9]` of the 3×3 grid over
/// μ ∈ {1, …, 8} in both channel modes — 48 baseline rows.
pub fn preset_group_sweep(master_seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::grid_default("group-sweep", master_seed);
    cfg.groups = vec![
        SweepGroup::new(vec![5]),
        SweepGroup::new(vec![2, 4, 6, 8]),
        SweepGroup::new(vec![1, 3, 7, 9]),
    ];
    cfg.mu_values = (1..=8).map(f64::from).collect();
    cfg
}

/// Removal sweep preset: the group sweep repeated after removing node 2,
/// 3, or 5 (plus the baseline), to chart how each removal reshapes the
/// connectivity-vs-μ curves.
pub fn preset_removal_sweep(master_seed: u64) -> ExperimentConfig {
    let mut cfg = preset_group_sweep(master_seed);
    cfg.experiment = "removal-sweep".to_owned();
    cfg.removals = vec![2, 3, 5];
    cfg
}

/// Harm preset: uniform μ = 1, each grid node removed in turn — the data
/// behind a harm ranking of all nine positions, in both channel modes.
pub fn preset_harm_sweep(master_seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::grid_default("harm", master_seed);
    cfg.removals = (1..=9).collect();
    cfg
}

/// Collapse preset: every node's μ raised together over μ ∈ {1, …, 8} —
/// the uniform sweep that exposes the key-rate collapse threshold in each
/// channel mode.
pub fn preset_collapse_sweep(master_seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::grid_default("collapse", master_seed);
    cfg.groups = vec![SweepGroup::labeled("all", (1..=9).collect())];
    cfg.mu_values = (1..=8).map(f64::from).collect();
    cfg
}

/// Recovery comparison: after removing node 2 from the 3×3 grid, competes
/// the center `{5}` against the far neighbors `{4,6,8}` at restoring λ₂ to
/// slightly above its harmed value ([`RECOVERY_TARGET_MARGIN`]); returns
/// the two plans in that order.
pub fn recovery_comparison(master_seed: u64, mode: CapacityMode) -> Result<Vec<RecoveryPlan>> {
    let cfg = ExperimentConfig::grid_default("recovery", master_seed);
    let base = cfg.topology.build()?;
    let source = WeightSource::Learned(cfg.weighting(mode));
    let removed = 2;
    let harmed = weigh_topology(&remove_node(&base, removed)?, &source)?;
    let (harmed_lambda2, _) = algebraic_connectivity(&harmed)?;
    let target = harmed_lambda2 + RECOVERY_TARGET_MARGIN;
    recovery_plans(
        &base,
        Some(removed),
        &[vec![5], vec![4, 6, 8]],
        RECOVERY_MU_STEP,
        RECOVERY_MU_CAP,
        target,
        &source,
    )
}

/// One channel's capacities on the capacity curve.
#[derive(Debug, Clone)]
pub struct CapacityPoint {
    pub label: String,
    /// Product-state capacity, optimized over signal distributions.
    pub c_product: f64,
    /// Entanglement-assisted capacity, optimized over input states.
    pub c_entangled: f64,
    /// (min, max) of random-distribution product samples, when drawn.
    pub random_product: Option<(f64, f64)>,
    /// (min, max) of random-input entangled samples, when drawn.
    pub random_entangled: Option<(f64, f64)>,
}

/// Configuration for [`capacity_curve`].
#[derive(Debug, Clone)]
pub struct CapacityCurveConfig {
    /// Labeled channels to evaluate.
    pub channels: Vec<(String, ChannelModel)>,
    /// Optimizer tolerance.
    pub tol: f64,
    /// Random-variant samples per channel; 0 skips the random variants.
    pub random_draws: usize,
    pub master_seed: u64,
}

impl Default for CapacityCurveConfig {
    fn default() -> Self {
        CapacityCurveConfig {
            channels: default_capacity_channels(),
            tol: 1e-9,
            random_draws: 0,
            master_seed: 0,
        }
    }
}

/// The channel family the capacity examples walk: the identity, a generic
/// rotation, and two depolarizing strengths.
pub fn default_capacity_channels() -> Vec<(String, ChannelModel)> {
    vec![
        ("identity".to_owned(), ChannelModel::identity()),
        ("rotation-pi-over-7".to_owned(), ChannelModel::rotation(std::f64::consts::PI / 7.0)),
        ("depolarizing-0.3".to_owned(), ChannelModel::depolarizing(0.3).expect("0.3 is a valid depolarizing strength")),
        ("depolarizing-0.5".to_owned(), ChannelModel::depolarizing(0.5).expect("0.5 is a valid depolarizing strength")),
    ]
}

/// Evaluates both capacities for every configured channel: the optimized
/// values always, plus min/max over random-distribution samples when
/// `random_draws > 0`. Fully deterministic in `master_seed`.
pub fn capacity_curve(cfg: &CapacityCurveConfig) -> Result<Vec<CapacityPoint>> {
    if cfg.channels.is_empty() {
        return Err(Error::validation("capacity curve needs at least one channel"));
    }
    let states = bb84_states();
    let mut points = Vec::with_capacity(cfg.channels.len());
    for (index, (label, channel)) in cfg.channels.iter().enumerate() {
        let (c_product, _) = crate::channel::capacity_product(channel, &states, cfg.tol)?;
        let (c_entangled, _) = crate::channel::capacity_entangled(channel, cfg.tol)?;
        let (random_product, random_entangled) = if cfg.random_draws > 0 {
            let family = ChannelFamily::Fixed(channel.clone());
            let bounds = |mode: CapacityMode| -> Result<(f64, f64)> {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(cfg.master_seed.wrapping_add(index as u64));
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for _ in 0..cfg.random_draws {
                    let sample = sample_capacity(mode, &family, ProbMode::Random, &mut rng)?;
                    lo = lo.min(sample.value);
                    hi = hi.max(sample.value);
                }
                Ok((lo, hi))
            };
            (Some(bounds(CapacityMode::Product)?), Some(bounds(CapacityMode::Entangled)?))
        } else {
            (None, None)
        };
        points.push(CapacityPoint {
            label: label.clone(),
            c_product,
            c_entangled,
            random_product,
            random_entangled,
        });
    }
    Ok(points)
}
