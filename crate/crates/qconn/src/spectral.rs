//! Weighted graphs, Laplacians, and algebraic (Fiedler) connectivity.
//!
//! A [`WeightedTopology`] is an undirected graph with positive node ids,
//! non-negative edge weights, and optional per-node mean-photon-number
//! overrides (consumed by the weighting layer). [`laplacian`] assembles
//! `L = D − A`; [`algebraic_connectivity`] reports the second-smallest
//! eigenvalue λ₂ together with its Fiedler vector via the dense
//! eigensolver, while [`fiedler_via_optimization`] minimizes the Rayleigh
//! quotient `yᵀLy` over unit vectors orthogonal to **1** by projected
//! gradient descent — an independent route used to cross-check the
//! eigensolver. [`component_count`] ties λ₂ to plain graph connectivity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::qmath::{hermitian_eigen, Complex64, ComplexMatrix};

/// Positive node identifier (the 3×3 grid uses 1..9).
pub type NodeId = u32;

/// Eigenvalues below this threshold count as zero when relating the
/// Laplacian spectrum to connected components.
pub const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-9;

/// Iteration cap for the Rayleigh-quotient descent.
const DESCENT_MAX_ITERS: usize = 2_000_000;
/// Consecutive negligible improvements required before descent stops.
const DESCENT_PATIENCE: usize = 25;

/// One undirected edge, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: NodeId,
    pub j: NodeId,
    pub weight: f64,
}

/// An undirected weighted graph with optional per-node μ overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTopology {
    node_ids: Vec<NodeId>,
    edges: Vec<Edge>,
    mu_overrides: BTreeMap<NodeId, f64>,
}

impl WeightedTopology {
    /// Builds a topology from node ids and `(i, j, weight)` edges.
    /// Edges may be given in either endpoint order and are stored with
    /// `i < j`. Rejects self-loops, duplicate edges, negative or non-finite
    /// weights, unknown endpoints, zero node ids, and duplicate node ids.
    pub fn new(node_ids: Vec<NodeId>, edges: Vec<(NodeId, NodeId, f64)>) -> Result<Self> {
        if node_ids.is_empty() {
            return Err(Error::validation("topology needs at least one node"));
        }
        if node_ids.contains(&0) {
            return Err(Error::validation("node ids must be positive"));
        }
        let id_set: BTreeSet<NodeId> = node_ids.iter().copied().collect();
        if id_set.len() != node_ids.len() {
            return Err(Error::validation("duplicate node ids"));
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b, weight) in edges {
            if a == b {
                return Err(Error::validation(format!("self-loop on node {a}")));
            }
            if !id_set.contains(&a) || !id_set.contains(&b) {
                return Err(Error::validation(format!(
                    "edge ({a}, {b}) references a node outside the topology"
                )));
            }
            if !(weight >= 0.0 && weight.is_finite()) {
                return Err(Error::validation(format!(
                    "edge ({a}, {b}) has invalid weight {weight}"
                )));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((i, j)) {
                return Err(Error::validation(format!("duplicate edge ({i}, {j})")));
            }
            normalized.push(Edge { i, j, weight });
        }
        Ok(WeightedTopology {
            node_ids,
            edges: normalized,
            mu_overrides: BTreeMap::new(),
        })
    }

    pub fn node_ids(&self) -> &[NodeId] {
        &self.node_ids
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    /// Sets the mean photon number override for one node.
    pub fn set_mu_override(&mut self, node: NodeId, mu: f64) -> Result<()> {
        if !self.node_ids.contains(&node) {
            return Err(Error::validation(format!("unknown node {node} in μ override")));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::validation(format!("μ override must be positive, got {mu}")));
        }
        self.mu_overrides.insert(node, mu);
        Ok(())
    }

    pub fn mu_override(&self, node: NodeId) -> Option<f64> {
        self.mu_overrides.get(&node).copied()
    }

    pub fn mu_overrides(&self) -> &BTreeMap<NodeId, f64> {
        &self.mu_overrides
    }

    /// The node's mean photon number: its override if set, else the default.
    pub fn effective_mu(&self, node: NodeId, default_mu: f64) -> f64 {
        self.mu_override(node).unwrap_or(default_mu)
    }

    /// Copy of this topology with every edge weight replaced, in edge order.
    pub fn reweighted(&self, weights: &[f64]) -> Result<WeightedTopology> {
        if weights.len() != self.edges.len() {
            return Err(Error::validation(format!(
                "expected {} weights, got {}",
                self.edges.len(),
                weights.len()
            )));
        }
        let mut out = self.clone();
        for (edge, &w) in out.edges.iter_mut().zip(weights) {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::validation(format!(
                    "edge ({}, {}) has invalid weight {w}",
                    edge.i, edge.j
                )));
            }
            edge.weight = w;
        }
        Ok(out)
    }
}

/// A Laplacian matrix together with the node order of its rows.
#[derive(Debug, Clone)]
pub struct LaplacianView {
    pub matrix: Array2<f64>,
    pub node_order: Vec<NodeId>,
}

/// Assembles the weighted Laplacian `L = D − A`, rows ordered like
/// `g.node_ids()`.
pub fn laplacian(g: &WeightedTopology) -> Result<LaplacianView> {
    let n = g.node_count();
    let index: BTreeMap<NodeId, usize> = g
        .node_ids()
        .iter()
        .enumerate()
        .map(|(row, &id)| (id, row))
        .collect();
    let mut matrix = Array2::<f64>::zeros((n, n));
    for edge in g.edges() {
        let (a, b) = (index[&edge.i], index[&edge.j]);
        matrix[[a, b]] -= edge.weight;
        matrix[[b, a]] -= edge.weight;
        matrix[[a, a]] += edge.weight;
        matrix[[b, b]] += edge.weight;
    }
    Ok(LaplacianView { matrix, node_order: g.node_ids().to_vec() })
}

/// Second-smallest Laplacian eigenvalue λ₂ and its Fiedler vector.
///
/// The vector is unit-norm, orthogonal to the all-ones vector, ordered like
/// `g.node_ids()`, and sign-fixed so its first entry of magnitude above
/// `1e-12` is positive. When λ₂'s eigenspace is degenerate (disconnected
/// graphs), the candidate eigencolumn with the largest component orthogonal
/// to **1** is chosen.
pub fn algebraic_connectivity(g: &WeightedTopology) -> Result<(f64, Vec<f64>)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::validation("algebraic connectivity needs at least 2 nodes"));
    }
    let lap = laplacian(g)?;
    let mut complex = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            complex.set(r, c, Complex64::new(lap.matrix[[r, c]], 0.0));
        }
    }
    let (eigs, vecs) = hermitian_eigen(&complex)?;
    let lambda2 = eigs[1].max(0.0);

    // Candidate columns share the λ₂ eigenvalue within 1e-12; pick the one
    // that survives projection orthogonal to the all-ones direction best.
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (k, &eig) in eigs.iter().enumerate() {
        if eig > eigs[1] + 1e-12 {
            break;
        }
        let column: Vec<f64> = (0..n).map(|r| vecs.get(r, k).re).collect();
        let mean = column.iter().sum::<f64>() / n as f64;
        let projected: Vec<f64> = column.iter().map(|v| v - mean).collect();
        let norm = projected.iter().map(|v| v * v).sum::<f64>().sqrt();
        if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
            best = Some((norm, projected));
        }
    }
    let (norm, mut fiedler) = best.expect("at least one eigencolumn is examined");
    if norm <= 1e-12 {
        return Err(Error::numerical(
            "Fiedler eigenspace is numerically parallel to the all-ones vector",
            Some(lambda2),
        ));
    }
    for v in &mut fiedler {
        *v /= norm;
    }
    if let Some(first) = fiedler.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            for v in &mut fiedler {
                *v = -*v;
            }
        }
    }
    Ok((lambda2, fiedler))
}

/// λ₂ by direct constrained minimization of the Rayleigh quotient `yᵀLy`
/// over `‖y‖ = 1, y ⊥ 1` — an independent cross-check of the eigensolver.
///
/// Projected gradient descent with an exact line search on the quotient
/// along the projected negative gradient; two deterministic starts, best
/// result kept. Converges when the improvement stays negligible for 25
/// consecutive steps; exceeding the iteration cap is a numerical error
/// carrying the best value reached.
pub fn fiedler_via_optimization(g: &WeightedTopology, tol: f64) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::validation("algebraic connectivity needs at least 2 nodes"));
    }
    if !(tol > 0.0) {
        return Err(Error::validation(format!("tolerance must be positive, got {tol}")));
    }
    let lap = laplacian(g)?.matrix;
    let mut best = f64::INFINITY;
    for start in 0..2 {
        let y0: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64 + 1.0;
                if start == 0 {
                    (1.234 * x).sin()
                } else {
                    (2.711 * x + 0.5).cos()
                }
            })
            .collect();
        best = best.min(rayleigh_descent(&lap, y0, tol)?);
    }
    Ok(best.max(0.0))
}

/// Removes the all-ones component and normalizes; errors if the vector is
/// numerically parallel to **1**.
fn project_and_normalize(y: &mut [f64]) -> Result<()> {
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    for v in y.iter_mut() {
        *v -= mean;
    }
    let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm <= 1e-12 {
        return Err(Error::numerical(
            "descent iterate collapsed onto the all-ones vector",
            None,
        ));
    }
    for v in y.iter_mut() {
        *v /= norm;
    }
    Ok(())
}

fn rayleigh_descent(lap: &Array2<f64>, mut y: Vec<f64>, tol: f64) -> Result<f64> {
    let n = y.len();
    project_and_normalize(&mut y)?;
    let matvec = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|r| (0..n).map(|c| lap[[r, c]] * v[c]).sum())
            .collect()
    };
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, z)| x * z).sum() };

    let mut ly = matvec(&y);
    let mut value = dot(&y, &ly);
    let floor = tol.min(1e-12);
    let mut calm_steps = 0;
    for _ in 0..DESCENT_MAX_ITERS {
        // Steepest-descent direction within the constraint tangent space:
        // remove the components of Ly along y and along 1.
        let mean = ly.iter().sum::<f64>() / n as f64;
        let along_y = dot(&ly, &y);
        let mut d: Vec<f64> = ly
            .iter()
            .zip(&y)
            .map(|(&g, &yi)| -(g - along_y * yi - mean))
            .collect();
        let mean_d = d.iter().sum::<f64>() / n as f64;
        for v in &mut d {
            *v -= mean_d;
        }

        let r = dot(&d, &d);
        let improvement = if r <= 1e-28 {
            0.0
        } else {
            // Exact line search on the quotient along y + t·d (y ⊥ d):
            // φ(t) = (a + 2bt + ct²)/(1 + rt²); φ'(t) = 0 at
            // b·r·t² − (c − a·r)·t − b = 0.
            let a = value;
            let b = dot(&d, &ly);
            let ld = matvec(&d);
            let c = dot(&d, &ld);
            let t = if b.abs() <= 1e-28 {
                0.0
            } else {
                let qa = b * r;
                let qb = -(c - a * r);
                let disc = (qb * qb + 4.0 * qa * b).max(0.0).sqrt();
                // The two roots bracket the quotient's extrema; keep the
                // minimizing one.
                let t1 = (-qb + disc) / (2.0 * qa);
                let t2 = (-qb - disc) / (2.0 * qa);
                let phi = |t: f64| (a + 2.0 * b * t + c * t * t) / (1.0 + r * t * t);
                if phi(t1) <= phi(t2) {
                    t1
                } else {
                    t2
                }
            };
            if t == 0.0 {
                0.0
            } else {
                for (yi, di) in y.iter_mut().zip(&d) {
                    *yi += t * di;
                }
                project_and_normalize(&mut y)?;
                ly = matvec(&y);
                let new_value = dot(&y, &ly);
                let improvement = value - new_value;
                value = new_value;
                improvement
            }
        };
        if improvement <= floor * value.abs().max(1.0) {
            calm_steps += 1;
            if calm_steps >= DESCENT_PATIENCE {
                return Ok(value);
            }
        } else {
            calm_steps = 0;
        }
    }
    Err(Error::numerical(
        format!("Rayleigh-quotient descent did not converge within {DESCENT_MAX_ITERS} iterations"),
        Some(value),
    ))
}

/// Number of connected components; edges with weight zero are treated as
/// absent, so dead links behave exactly like removed links.
pub fn component_count(g: &WeightedTopology) -> Result<usize> {
    let mut adjacency: BTreeMap<NodeId, Vec<NodeId>> =
        g.node_ids().iter().map(|&id| (id, Vec::new())).collect();
    for edge in g.edges() {
        if edge.weight > 0.0 {
            adjacency.get_mut(&edge.i).expect("validated endpoint").push(edge.j);
            adjacency.get_mut(&edge.j).expect("validated endpoint").push(edge.i);
        }
    }
    let mut seen: BTreeSet<NodeId> = BTreeSet::new();
    let mut components = 0;
    for &start in g.node_ids() {
        if !seen.insert(start) {
            continue;
        }
        components += 1;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            for &next in &adjacency[&node] {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(components)
}

/// Nodes and edges of an `rows × cols` grid with unit weights, numbered
/// row-major from 1 (the 3×3 grid is nodes 1..9).
pub fn grid_topology(rows: u32, cols: u32) -> Result<WeightedTopology> {
    if rows == 0 || cols == 0 {
        return Err(Error::validation("grid dimensions must be positive"));
    }
    let id = |r: u32, c: u32| r * cols + c + 1;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), 1.0));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), 1.0));
            }
        }
    }
    WeightedTopology::new((1..=rows * cols).collect(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// λ₂ of the weighted triangle w12=1, w13=2, w23=3: trace 12 and second
    /// elementary symmetric function 33 give eigenvalues {0, 6−√3, 6+√3}.
    const TRIANGLE_LAMBDA2: f64 = 4.267_949_192_431_122_7;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual} (diff {:.3e}, tol {tol:.1e})",
            (actual - expected).abs()
        );
    }

    fn two_triangles() -> WeightedTopology {
        WeightedTopology::new(
            (1..=6).collect(),
            vec![
                (1, 2, 1.0),
                (1, 3, 1.0),
                (2, 3, 1.0),
                (4, 5, 1.0),
                (4, 6, 1.0),
                (5, 6, 1.0),
            ],
        )
        .unwrap()
    }

    fn complete_graph(n: u32) -> WeightedTopology {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                edges.push((i, j, 1.0));
            }
        }
        WeightedTopology::new((1..=n).collect(), edges).unwrap()
    }

    #[test]
    fn topology_validation_rejects_malformed_graphs() {
        assert!(WeightedTopology::new(vec![], vec![]).is_err());
        assert!(WeightedTopology::new(vec![0, 1], vec![]).is_err());
        assert!(WeightedTopology::new(vec![1, 1], vec![]).is_err());
        assert!(WeightedTopology::new(vec![1, 2], vec![(1, 1, 1.0)]).is_err());
        assert!(WeightedTopology::new(vec![1, 2], vec![(1, 3, 1.0)]).is_err());
        assert!(WeightedTopology::new(vec![1, 2], vec![(1, 2, -1.0)]).is_err());
        assert!(WeightedTopology::new(vec![1, 2], vec![(1, 2, f64::NAN)]).is_err());
        assert!(
            WeightedTopology::new(vec![1, 2], vec![(1, 2, 1.0), (2, 1, 2.0)]).is_err(),
            "duplicate edge under endpoint reordering"
        );
    }

    #[test]
    fn edges_are_stored_with_ordered_endpoints() {
        let g = WeightedTopology::new(vec![1, 2, 3], vec![(3, 1, 0.5)]).unwrap();
        assert_eq!(g.edges()[0].i, 1);
        assert_eq!(g.edges()[0].j, 3);
        assert_eq!(g.edges()[0].weight, 0.5);
    }

    #[test]
    fn mu_overrides_validate_and_apply() {
        let mut g = grid_topology(3, 3).unwrap();
        assert!(g.set_mu_override(10, 2.0).is_err());
        assert!(g.set_mu_override(5, 0.0).is_err());
        g.set_mu_override(5, 2.5).unwrap();
        assert_eq!(g.effective_mu(5, 1.0), 2.5);
        assert_eq!(g.effective_mu(4, 1.0), 1.0);
    }

    #[test]
    fn laplacian_of_single_edge() {
        let g = WeightedTopology::new(vec![1, 2], vec![(1, 2, 1.0)]).unwrap();
        let lap = laplacian(&g).unwrap();
        assert_eq!(lap.matrix[[0, 0]], 1.0);
        assert_eq!(lap.matrix[[0, 1]], -1.0);
        assert_eq!(lap.matrix[[1, 0]], -1.0);
        assert_eq!(lap.matrix[[1, 1]], 1.0);
    }

    #[test]
    fn laplacian_of_edgeless_graph_is_zero() {
        let g = WeightedTopology::new(vec![1, 2, 3], vec![]).unwrap();
        let lap = laplacian(&g).unwrap();
        assert!(lap.matrix.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn laplacian_of_weighted_triangle() {
        let g = WeightedTopology::new(
            vec![1, 2, 3],
            vec![(1, 2, 1.0), (1, 3, 2.0), (2, 3, 3.0)],
        )
        .unwrap();
        let lap = laplacian(&g).unwrap();
        assert_eq!(lap.matrix[[0, 0]], 3.0);
        assert_eq!(lap.matrix[[1, 1]], 4.0);
        assert_eq!(lap.matrix[[2, 2]], 5.0);
        assert_eq!(lap.matrix[[0, 1]], -1.0);
        assert_eq!(lap.matrix[[0, 2]], -2.0);
        assert_eq!(lap.matrix[[1, 2]], -3.0);
        let (lambda2, _) = algebraic_connectivity(&g).unwrap();
        assert_close(lambda2, TRIANGLE_LAMBDA2, 1e-12);
    }

    #[test]
    fn laplacian_rows_sum_to_zero_and_matrix_is_symmetric() {
        let g = grid_topology(3, 3).unwrap();
        let lap = laplacian(&g).unwrap();
        for r in 0..9 {
            let row_sum: f64 = (0..9).map(|c| lap.matrix[[r, c]]).sum();
            assert!(row_sum.abs() < 1e-12);
            for c in 0..9 {
                assert_eq!(lap.matrix[[r, c]], lap.matrix[[c, r]]);
            }
        }
    }

    #[test]
    fn grid_connectivity_is_exactly_one() {
        // Grid = Cartesian product of two 3-paths; P3 spectrum {0, 1, 3}
        // gives pairwise sums with second-smallest 1.
        let g = grid_topology(3, 3).unwrap();
        let (lambda2, fiedler) = algebraic_connectivity(&g).unwrap();
        assert_close(lambda2, 1.0, 1e-9);
        let norm: f64 = fiedler.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert_close(norm, 1.0, 1e-9);
        let ones_dot: f64 = fiedler.iter().sum();
        assert!(ones_dot.abs() < 1e-9);
    }

    #[test]
    fn complete_graph_connectivity_equals_node_count() {
        for n in 3..=6 {
            let (lambda2, _) = algebraic_connectivity(&complete_graph(n)).unwrap();
            assert_close(lambda2, f64::from(n), 1e-9);
        }
    }

    #[test]
    fn disconnected_graph_has_zero_connectivity() {
        let (lambda2, fiedler) = algebraic_connectivity(&two_triangles()).unwrap();
        assert!(lambda2.abs() < 1e-12);
        // Even in the degenerate eigenspace the reported vector must be a
        // unit vector orthogonal to all-ones.
        let norm: f64 = fiedler.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert_close(norm, 1.0, 1e-9);
        assert!(fiedler.iter().sum::<f64>().abs() < 1e-9);
    }

    #[test]
    fn fiedler_vector_sign_is_fixed() {
        let (_, fiedler) = algebraic_connectivity(&grid_topology(3, 3).unwrap()).unwrap();
        let first = fiedler.iter().find(|v| v.abs() > 1e-12).unwrap();
        assert!(*first > 0.0);
    }

    #[test]
    fn connectivity_requires_two_nodes() {
        let g = WeightedTopology::new(vec![1], vec![]).unwrap();
        assert!(algebraic_connectivity(&g).is_err());
        assert!(fiedler_via_optimization(&g, 1e-9).is_err());
    }

    #[test]
    fn smallest_eigenvalue_is_zero_with_constant_eigenvector() {
        let g = grid_topology(3, 3).unwrap();
        let lap = laplacian(&g).unwrap();
        let mut complex = ComplexMatrix::zeros(9, 9);
        for r in 0..9 {
            for c in 0..9 {
                complex.set(r, c, Complex64::new(lap.matrix[[r, c]], 0.0));
            }
        }
        let (eigs, vecs) = hermitian_eigen(&complex).unwrap();
        assert!(eigs[0].abs() < 1e-9);
        let first = vecs.get(0, 0).re;
        for r in 1..9 {
            assert_close(vecs.get(r, 0).re, first, 1e-7);
        }
    }

    #[test]
    fn optimization_route_two_node_graph_is_two() {
        let g = WeightedTopology::new(vec![1, 2], vec![(1, 2, 1.0)]).unwrap();
        assert_close(fiedler_via_optimization(&g, 1e-9).unwrap(), 2.0, 1e-9);
    }

    #[test]
    fn optimization_route_detects_disconnection() {
        let value = fiedler_via_optimization(&two_triangles(), 1e-9).unwrap();
        assert!(value.abs() < 1e-6, "disconnected graph gave λ₂ = {value}");
    }

    #[test]
    fn optimization_route_matches_eigensolver_on_fixed_graphs() {
        let graphs = vec![
            grid_topology(3, 3).unwrap(),
            complete_graph(5),
            WeightedTopology::new(
                vec![1, 2, 3],
                vec![(1, 2, 1.0), (1, 3, 2.0), (2, 3, 3.0)],
            )
            .unwrap(),
            WeightedTopology::new(
                vec![1, 2, 3, 4, 5],
                vec![
                    (1, 2, 0.3),
                    (2, 3, 1.7),
                    (3, 4, 0.9),
                    (4, 5, 1.1),
                    (1, 5, 0.4),
                    (2, 4, 2.2),
                ],
            )
            .unwrap(),
        ];
        for g in graphs {
            let (eig_route, _) = algebraic_connectivity(&g).unwrap();
            let opt_route = fiedler_via_optimization(&g, 1e-9).unwrap();
            assert_close(opt_route, eig_route, 1e-6);
        }
    }

    #[test]
    fn component_count_examples() {
        assert_eq!(component_count(&grid_topology(3, 3).unwrap()).unwrap(), 1);
        let edgeless = WeightedTopology::new(vec![1, 2, 3], vec![]).unwrap();
        assert_eq!(component_count(&edgeless).unwrap(), 3);
        assert_eq!(component_count(&two_triangles()).unwrap(), 2);
    }

    #[test]
    fn zero_eigenvalue_multiplicity_matches_component_count() {
        let g = two_triangles();
        let lap = laplacian(&g).unwrap();
        let mut complex = ComplexMatrix::zeros(6, 6);
        for r in 0..6 {
            for c in 0..6 {
                complex.set(r, c, Complex64::new(lap.matrix[[r, c]], 0.0));
            }
        }
        let (eigs, _) = hermitian_eigen(&complex).unwrap();
        let zeros = eigs.iter().filter(|e| e.abs() < ZERO_EIGENVALUE_THRESHOLD).count();
        assert_eq!(zeros, component_count(&g).unwrap());
    }

    #[test]
    fn zero_weight_edges_behave_like_absent_edges() {
        let g = WeightedTopology::new(vec![1, 2], vec![(1, 2, 0.0)]).unwrap();
        assert_eq!(component_count(&g).unwrap(), 2);
        let (lambda2, _) = algebraic_connectivity(&g).unwrap();
        assert!(lambda2.abs() < 1e-12);
    }

    #[test]
    fn relabeling_nodes_leaves_connectivity_unchanged() {
        let g = WeightedTopology::new(
            vec![1, 2, 3, 4],
            vec![(1, 2, 0.7), (2, 3, 1.3), (3, 4, 0.4), (1, 4, 2.0)],
        )
        .unwrap();
        let relabeled = WeightedTopology::new(
            vec![40, 17, 23, 9],
            vec![(17, 40, 0.7), (17, 23, 1.3), (9, 23, 0.4), (9, 40, 2.0)],
        )
        .unwrap();
        let (a, _) = algebraic_connectivity(&g).unwrap();
        let (b, _) = algebraic_connectivity(&relabeled).unwrap();
        assert_close(a, b, 1e-12);
    }

    #[test]
    fn grid_shorthand_builds_row_major_ids() {
        let g = grid_topology(2, 3).unwrap();
        assert_eq!(g.node_ids(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(g.edges().len(), 7);
        assert!(g.edges().iter().any(|e| (e.i, e.j) == (1, 2)));
        assert!(g.edges().iter().any(|e| (e.i, e.j) == (1, 4)));
        assert!(g.edges().iter().any(|e| (e.i, e.j) == (5, 6)));
        assert!(grid_topology(0, 3).is_err());
    }

    /// Connected weighted graph: a random spanning tree plus a few extras.
    fn arb_connected_topology() -> impl Strategy<Value = WeightedTopology> {
        (3usize..=8).prop_flat_map(|n| {
            let parents = proptest::collection::vec(0.0..1.0f64, n - 1);
            let tree_weights = proptest::collection::vec(0.05..2.0f64, n - 1);
            let extras =
                proptest::collection::vec((0.0..1.0f64, 0.0..1.0f64, 0.05..2.0f64), 0..4);
            (Just(n), parents, tree_weights, extras).prop_map(
                |(n, parents, tree_weights, extras)| {
                    let mut edges: Vec<(u32, u32, f64)> = Vec::new();
                    for k in 1..n {
                        let parent = ((parents[k - 1] * k as f64) as usize).min(k - 1);
                        edges.push((parent as u32 + 1, k as u32 + 1, tree_weights[k - 1]));
                    }
                    for (a, b, w) in extras {
                        let i = ((a * n as f64) as u32).min(n as u32 - 1) + 1;
                        let j = ((b * n as f64) as u32).min(n as u32 - 1) + 1;
                        let (i, j) = if i < j { (i, j) } else { (j, i) };
                        if i != j && !edges.iter().any(|&(x, y, _)| (x, y) == (i, j)) {
                            edges.push((i, j, w));
                        }
                    }
                    WeightedTopology::new((1..=n as u32).collect(), edges).unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn lambda2_is_nonnegative_and_detects_connectivity(g in arb_connected_topology()) {
            let (lambda2, _) = algebraic_connectivity(&g).unwrap();
            prop_assert!(lambda2 >= 0.0);
            prop_assert!(lambda2 > ZERO_EIGENVALUE_THRESHOLD);
            prop_assert_eq!(component_count(&g).unwrap(), 1);
        }

        #[test]
        fn scaling_weights_scales_lambda2_linearly(
            g in arb_connected_topology(),
            scale in 0.1..10.0f64,
        ) {
            let scaled = g
                .reweighted(&g.edges().iter().map(|e| e.weight * scale).collect::<Vec<_>>())
                .unwrap();
            let (base, _) = algebraic_connectivity(&g).unwrap();
            let (scaled_l2, _) = algebraic_connectivity(&scaled).unwrap();
            prop_assert!((scaled_l2 - scale * base).abs() < 1e-9 * scale.max(1.0));
        }

        #[test]
        fn removing_an_edge_never_increases_lambda2(
            g in arb_connected_topology(),
            pick in 0.0..1.0f64,
        ) {
            let victim = ((pick * g.edges().len() as f64) as usize).min(g.edges().len() - 1);
            let mut weights: Vec<f64> = g.edges().iter().map(|e| e.weight).collect();
            weights[victim] = 0.0;
            let reduced = g.reweighted(&weights).unwrap();
            let (before, _) = algebraic_connectivity(&g).unwrap();
            let (after, _) = algebraic_connectivity(&reduced).unwrap();
            prop_assert!(after <= before + 1e-9, "λ₂ rose from {} to {}", before, after);
        }

        #[test]
        fn lambda2_respects_the_minimum_degree_bound(g in arb_connected_topology()) {
            // On unweighted graphs λ₂ ≤ n/(n−1) · min degree.
            let unit = g
                .reweighted(&g.edges().iter().map(|_| 1.0).collect::<Vec<_>>())
                .unwrap();
            let n = unit.node_count() as f64;
            let min_degree = unit
                .node_ids()
                .iter()
                .map(|&id| unit.edges().iter().filter(|e| e.i == id || e.j == id).count())
                .min()
                .unwrap() as f64;
            let (lambda2, _) = algebraic_connectivity(&unit).unwrap();
            prop_assert!(lambda2 <= n / (n - 1.0) * min_degree + 1e-9);
        }

        #[test]
        fn optimization_route_agrees_with_eigensolver(g in arb_connected_topology()) {
            let (eig_route, _) = algebraic_connectivity(&g).unwrap();
            let opt_route = fiedler_via_optimization(&g, 1e-9).unwrap();
            prop_assert!((eig_route - opt_route).abs() < 1e-6,
                "eigensolver {} vs descent {}", eig_route, opt_route);
        }
    }
}
