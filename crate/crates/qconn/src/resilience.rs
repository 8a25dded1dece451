//! Node-removal analysis and μ-budget recovery planning.
//!
//! [`remove_node`] deletes a node with its incident links;
//! [`harm_ranking`] orders candidate nodes by how low the algebraic
//! connectivity falls after their removal (weights re-learned on each
//! reduced graph); [`recovery_plan`] greedily raises the mean photon number
//! of a node group in fixed steps until connectivity recovers to a target or
//! the μ budget is exhausted, reporting the total μ spent so competing
//! groups can be compared by cost.

use crate::error::{Error, Result};
use crate::spectral::{algebraic_connectivity, NodeId, WeightedTopology};
use crate::weights::{weigh_topology, WeightSource};

/// Copy of the topology without one node and its incident edges; the order
/// of the remaining nodes (and their μ overrides) is preserved.
pub fn remove_node(g: &WeightedTopology, node: NodeId) -> Result<WeightedTopology> {
    if !g.node_ids().contains(&node) {
        return Err(Error::validation(format!("cannot remove unknown node {node}")));
    }
    let nodes: Vec<NodeId> = g.node_ids().iter().copied().filter(|&n| n != node).collect();
    let edges: Vec<(NodeId, NodeId, f64)> = g
        .edges()
        .iter()
        .filter(|e| e.i != node && e.j != node)
        .map(|e| (e.i, e.j, e.weight))
        .collect();
    let mut reduced = WeightedTopology::new(nodes, edges)?;
    for (&id, &mu) in g.mu_overrides() {
        if id != node {
            reduced.set_mu_override(id, mu)?;
        }
    }
    Ok(reduced)
}

/// One row of a harm ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmEntry {
    pub node: NodeId,
    /// λ₂ of the reduced, re-weighted graph.
    pub lambda2_after: f64,
    /// Change relative to the intact graph (negative = connectivity lost).
    pub delta: f64,
}

/// Candidate nodes ordered by the damage their removal causes.
#[derive(Debug, Clone)]
pub struct HarmRanking {
    /// λ₂ of the intact weighted graph.
    pub baseline_lambda2: f64,
    /// Sorted ascending by `lambda2_after` (most harmful first); ties broken
    /// by node id.
    pub entries: Vec<HarmEntry>,
}

/// Ranks candidate nodes by the algebraic connectivity remaining after each
/// one is removed. Link weights are recomputed on every reduced graph with
/// the same weight source, so rankings are deterministic under a fixed
/// master seed and independent of candidate order. A removal that
/// disconnects the graph is not an error: its λ₂ is 0 and it ranks first.
pub fn harm_ranking(
    g: &WeightedTopology,
    candidates: &[NodeId],
    source: &WeightSource,
) -> Result<HarmRanking> {
    if candidates.is_empty() {
        return Err(Error::validation("harm ranking needs at least one candidate"));
    }
    let mut unique = candidates.to_vec();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != candidates.len() {
        return Err(Error::validation("duplicate candidate nodes"));
    }
    if g.node_count() < 3 {
        return Err(Error::validation(
            "removing a candidate must leave at least 2 nodes",
        ));
    }
    let (baseline_lambda2, _) = algebraic_connectivity(&weigh_topology(g, source)?)?;
    let mut entries = Vec::with_capacity(candidates.len());
    for &node in candidates {
        let reduced = remove_node(g, node)?;
        let weighted = weigh_topology(&reduced, source)?;
        let (lambda2_after, _) = algebraic_connectivity(&weighted)?;
        entries.push(HarmEntry {
            node,
            lambda2_after,
            delta: lambda2_after - baseline_lambda2,
        });
    }
    entries.sort_by(|a, b| {
        a.lambda2_after
            .partial_cmp(&b.lambda2_after)
            .expect("λ₂ values are finite")
            .then(a.node.cmp(&b.node))
    });
    Ok(HarmRanking { baseline_lambda2, entries })
}

/// One greedy increment applied to a recovery group.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryStep {
    pub group: Vec<NodeId>,
    pub mu_increment: f64,
}

/// Outcome of a greedy μ-budget recovery attempt for one node group.
#[derive(Debug, Clone)]
pub struct RecoveryPlan {
    /// The node whose removal the plan compensates (`None`: intact graph).
    pub removed_node: Option<NodeId>,
    pub target_lambda2: f64,
    /// λ₂ before any μ was spent.
    pub baseline_lambda2: f64,
    /// Increments actually applied, in order.
    pub steps: Vec<RecoveryStep>,
    /// Σ over steps of `mu_increment × group size` — the resource cost.
    pub total_mu_spent: f64,
    /// Final λ₂ if the target was met, otherwise the best value reached.
    pub achieved_lambda2: f64,
    /// Set when the budget ran out before the target was met.
    pub infeasible: bool,
}

/// Greedily raises the μ of every node in `group` by `mu_step` per step
/// (the whole group moves together), re-learning weights and re-evaluating
/// λ₂ after each step, until λ₂ ≥ `target` or the next step would push a
/// group member's μ past `mu_cap`.
pub fn recovery_plan(
    g: &WeightedTopology,
    removed: Option<NodeId>,
    group: &[NodeId],
    mu_step: f64,
    mu_cap: f64,
    target: f64,
    source: &WeightSource,
) -> Result<RecoveryPlan> {
    if group.is_empty() {
        return Err(Error::validation("recovery group must be non-empty"));
    }
    if !(mu_step > 0.0) {
        return Err(Error::validation(format!("mu_step must be positive, got {mu_step}")));
    }
    if !(target > 0.0) {
        return Err(Error::validation(format!("target λ₂ must be positive, got {target}")));
    }
    let mut unique = group.to_vec();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != group.len() {
        return Err(Error::validation("duplicate nodes in recovery group"));
    }
    let mut current = match removed {
        Some(node) => remove_node(g, node)?,
        None => g.clone(),
    };
    for &node in group {
        if !current.node_ids().contains(&node) {
            return Err(Error::validation(format!(
                "recovery group node {node} is not in the (reduced) topology"
            )));
        }
    }
    let default_mu = match source {
        WeightSource::Learned(cfg) => cfg.physics.mu,
        WeightSource::FixedUniform(_) => 1.0,
    };

    let (baseline_lambda2, _) = algebraic_connectivity(&weigh_topology(&current, source)?)?;
    let mut achieved = baseline_lambda2;
    let mut best = baseline_lambda2;
    let mut steps = Vec::new();
    let mut infeasible = false;
    while achieved < target {
        let would_exceed = group
            .iter()
            .any(|&n| current.effective_mu(n, default_mu) + mu_step > mu_cap + 1e-12);
        if would_exceed {
            infeasible = true;
            break;
        }
        for &node in group {
            let mu = current.effective_mu(node, default_mu) + mu_step;
            current.set_mu_override(node, mu)?;
        }
        achieved = algebraic_connectivity(&weigh_topology(&current, source)?)?.0;
        best = best.max(achieved);
        steps.push(RecoveryStep { group: group.to_vec(), mu_increment: mu_step });
    }
    let total_mu_spent = steps
        .iter()
        .map(|s| s.mu_increment * s.group.len() as f64)
        .sum();
    Ok(RecoveryPlan {
        removed_node: removed,
        target_lambda2: target,
        baseline_lambda2,
        steps,
        total_mu_spent,
        achieved_lambda2: if infeasible { best } else { achieved },
        infeasible,
    })
}

/// [`recovery_plan`] for several competing groups, in the order given.
#[allow(clippy::too_many_arguments)]
pub fn recovery_plans(
    g: &WeightedTopology,
    removed: Option<NodeId>,
    groups: &[Vec<NodeId>],
    mu_step: f64,
    mu_cap: f64,
    target: f64,
    source: &WeightSource,
) -> Result<Vec<RecoveryPlan>> {
    groups
        .iter()
        .map(|group| recovery_plan(g, removed, group, mu_step, mu_cap, target, source))
        .collect()
}
