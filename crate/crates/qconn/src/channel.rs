//! Qubit channel models and their classical information capacities.
//!
//! A [`ChannelModel`] is either a unitary conjugation or a depolarizing
//! mixture, both expressed through their Kraus operators so the same
//! application path ([`apply_channel`], [`apply_channel_extended`]) covers
//! every model. Two capacity figures are computed per channel:
//!
//! * **Product-state capacity** — the Holevo quantity of a fixed signal
//!   ensemble, maximized over input probability distributions by projected
//!   gradient ascent with a coarse simplex grid as a stall fallback
//!   ([`capacity_product`]).
//! * **Entanglement-assisted capacity** — the quantum mutual information
//!   `S(ρ) + S(N(ρ)) − S((N⊗I)Φ_ρ)` maximized over the Bloch ball by a
//!   coarse grid plus coordinate-descent refinement
//!   ([`capacity_entangled`]).
//!
//! [`sample_capacity`] draws one stochastic capacity observation (random
//! rotation angle and/or random signal distribution) from a caller-supplied
//! RNG; the link-weight learner consumes streams of these samples.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::qmath::{
    entropy_lenient, purify, tensor, vn_entropy, Complex64, ComplexMatrix, DensityMatrix,
};

/// Tolerance for accepting a matrix as unitary.
const UNITARY_TOL: f64 = 1e-10;
/// Central-difference step for the product-capacity gradient.
const FD_STEP: f64 = 1e-6;
/// Iteration cap for projected gradient ascent.
const PGA_MAX_ITERS: usize = 20_000;
/// Simplex grid subdivisions for the stall fallback (resolution 0.02).
const SIMPLEX_GRID_STEPS: u32 = 50;
/// Bloch-ball grid subdivisions per coordinate (resolution 0.05).
const BLOCH_GRID_STEPS: u32 = 20;
/// Objective-evaluation cap for the entangled-capacity refinement.
const ENTANGLED_EVAL_CAP: usize = 500_000;
/// Convergence tolerance used for optimized capacities inside [`sample_capacity`].
const SAMPLE_TOL: f64 = 1e-9;

/// A qubit channel, stored in a form that fixes its Kraus decomposition.
#[derive(Debug, Clone)]
pub enum ChannelModel {
    /// Conjugation by a single 2×2 unitary.
    Unitary(ComplexMatrix),
    /// Depolarizing mixture with probability `q ∈ [0, 1]`:
    /// `ρ ↦ (1−q)ρ + q·I/2`.
    Depolarizing(f64),
}

impl ChannelModel {
    /// The identity channel.
    pub fn identity() -> Self {
        ChannelModel::Unitary(ComplexMatrix::identity(2))
    }

    /// Real rotation of the qubit by angle `theta`:
    /// `[[cos θ, −sin θ], [sin θ, cos θ]]`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let mut u = ComplexMatrix::zeros(2, 2);
        u.set(0, 0, Complex64::new(c, 0.0));
        u.set(0, 1, Complex64::new(-s, 0.0));
        u.set(1, 0, Complex64::new(s, 0.0));
        u.set(1, 1, Complex64::new(c, 0.0));
        ChannelModel::Unitary(u)
    }

    /// Wraps an arbitrary 2×2 unitary, rejecting matrices that are not
    /// unitary within `1e-10`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        if u.rows() != 2 || u.cols() != 2 {
            return Err(Error::validation(format!(
                "unitary channel needs a 2x2 matrix, got {}x{}",
                u.rows(),
                u.cols()
            )));
        }
        let gram = u.adjoint().mul(&u)?;
        let defect = gram.max_abs_diff(&ComplexMatrix::identity(2));
        if defect > UNITARY_TOL {
            return Err(Error::validation(format!(
                "matrix is not unitary: |U†U − I| = {defect:.3e} exceeds {UNITARY_TOL:.0e}"
            )));
        }
        Ok(ChannelModel::Unitary(u))
    }

    /// Depolarizing channel with mixing probability `q ∈ [0, 1]`.
    pub fn depolarizing(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::validation(format!(
                "depolarizing probability must be in [0,1], got {q}"
            )));
        }
        Ok(ChannelModel::Depolarizing(q))
    }

    /// Kraus operators of the channel. For the depolarizing model these are
    /// `√(1−3q/4)·I` together with `√(q/4)` times each Pauli matrix.
    pub fn kraus_ops(&self) -> Vec<ComplexMatrix> {
        match self {
            ChannelModel::Unitary(u) => vec![u.clone()],
            ChannelModel::Depolarizing(q) => {
                let keep = Complex64::new((1.0 - 0.75 * q).sqrt(), 0.0);
                let flip = Complex64::new((q / 4.0).sqrt(), 0.0);
                vec![
                    ComplexMatrix::identity(2).scale(keep),
                    pauli_x().scale(flip),
                    pauli_y().scale(flip),
                    pauli_z().scale(flip),
                ]
            }
        }
    }
}

fn pauli_x() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 1, Complex64::new(1.0, 0.0));
    m.set(1, 0, Complex64::new(1.0, 0.0));
    m
}

fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 1, Complex64::new(0.0, -1.0));
    m.set(1, 0, Complex64::new(0.0, 1.0));
    m
}

fn pauli_z() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 0, Complex64::new(1.0, 0.0));
    m.set(1, 1, Complex64::new(-1.0, 0.0));
    m
}

/// Applies the channel to a qubit state via its Kraus operators:
/// `N(ρ) = Σ_k K_k ρ K_k†`.
pub fn apply_channel(channel: &ChannelModel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 2 {
        return Err(Error::validation(format!(
            "channel acts on qubit states, got dim {}",
            rho.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(2, 2);
    for k in channel.kraus_ops() {
        out = out.add(&k.mul(rho.matrix())?.mul(&k.adjoint())?)?;
    }
    Ok(DensityMatrix::new_unchecked(out.hermitized()))
}

/// Applies the channel to the first qubit of a two-qubit state:
/// `(N ⊗ I)(ρ) = Σ_k (K_k ⊗ I) ρ (K_k ⊗ I)†`.
pub fn apply_channel_extended(
    channel: &ChannelModel,
    rho: &DensityMatrix,
) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::validation(format!(
            "extended channel acts on two-qubit states, got dim {}",
            rho.dim()
        )));
    }
    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in channel.kraus_ops() {
        let ext = tensor(&k, &id);
        out = out.add(&ext.mul(rho.matrix())?.mul(&ext.adjoint())?)?;
    }
    Ok(DensityMatrix::new_unchecked(out.hermitized()))
}

/// The four BB84 signal states `|0⟩, |1⟩, |+⟩, |−⟩` as density matrices.
pub fn bb84_states() -> [DensityMatrix; 4] {
    let zero = projector([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let one = projector([Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let plus = projector([h, h]);
    let minus = projector([h, -h]);
    [zero, one, plus, minus]
}

/// Projector onto a normalized qubit ket.
fn projector(ket: [Complex64; 2]) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j, ket[i] * ket[j].conj());
        }
    }
    DensityMatrix::new_unchecked(m)
}

/// A finite ensemble of quantum states with prior probabilities.
#[derive(Debug, Clone)]
pub struct Ensemble {
    states: Vec<DensityMatrix>,
    probs: Vec<f64>,
}

impl Ensemble {
    /// Validates that the probabilities are non-negative, sum to one within
    /// `1e-9`, and match the states one-to-one (all of equal dimension).
    pub fn new(states: Vec<DensityMatrix>, probs: Vec<f64>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::validation("ensemble must contain at least one state"));
        }
        if states.len() != probs.len() {
            return Err(Error::validation(format!(
                "ensemble has {} states but {} probabilities",
                states.len(),
                probs.len()
            )));
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::validation("ensemble states must share one dimension"));
        }
        if let Some(p) = probs.iter().find(|&&p| !(p >= 0.0)) {
            return Err(Error::validation(format!(
                "ensemble probabilities must be non-negative, got {p}"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::validation(format!(
                "ensemble probabilities must sum to 1, got {total}"
            )));
        }
        Ok(Ensemble { states, probs })
    }

    /// BB84 signal ensemble with the given priors.
    pub fn bb84(probs: &[f64]) -> Result<Self> {
        Ensemble::new(bb84_states().to_vec(), probs.to_vec())
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// The barycenter `ρ̄ = Σ_i p_i ρ_i`.
    pub fn average_state(&self) -> DensityMatrix {
        let mats: Vec<&ComplexMatrix> = self.states.iter().map(|s| s.matrix()).collect();
        DensityMatrix::new_unchecked(mix_matrices(&mats, &self.probs).hermitized())
    }
}

/// Probability-weighted matrix mixture `Σ_i p_i M_i`.
fn mix_matrices(mats: &[&ComplexMatrix], probs: &[f64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(mats[0].rows(), mats[0].cols());
    for (m, &p) in mats.iter().zip(probs) {
        out = out
            .add(&m.scale(Complex64::new(p, 0.0)))
            .expect("mixture dimensions already validated");
    }
    out
}

/// Holevo quantity of an ensemble sent through a channel:
/// `χ = S(N(ρ̄)) − Σ_i p_i S(N(ρ_i))`, clamped to be non-negative.
pub fn holevo_chi(ensemble: &Ensemble, channel: &ChannelModel) -> Result<f64> {
    let outputs: Vec<DensityMatrix> = ensemble
        .states()
        .iter()
        .map(|s| apply_channel(channel, s))
        .collect::<Result<_>>()?;
    let out_mats: Vec<&ComplexMatrix> = outputs.iter().map(|o| o.matrix()).collect();
    let avg_out =
        DensityMatrix::new_unchecked(mix_matrices(&out_mats, ensemble.probs()).hermitized());
    let mut avg_entropy = 0.0;
    for (out, &p) in outputs.iter().zip(ensemble.probs()) {
        avg_entropy += p * vn_entropy(out)?;
    }
    Ok((vn_entropy(&avg_out)? - avg_entropy).max(0.0))
}

/// Euclidean projection of a point onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("simplex projection: non-finite input"));
    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - 1.0) / (j as f64 + 1.0);
        if u - t > 0.0 {
            threshold = t;
        }
    }
    v.iter().map(|&x| (x - threshold).max(0.0)).collect()
}

/// Enumerates the probability vectors of the simplex grid with `steps`
/// subdivisions (all compositions of `steps` into `k` parts, scaled).
fn simplex_grid(k: usize, steps: u32) -> Vec<Vec<f64>> {
    fn rec(k: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for part in 0..=remaining {
            prefix.push(part);
            rec(k - 1, remaining - part, prefix, out);
            prefix.pop();
        }
    }
    let mut counts = Vec::new();
    rec(k, steps, &mut Vec::new(), &mut counts);
    counts
        .into_iter()
        .map(|c| c.into_iter().map(|n| f64::from(n) / f64::from(steps)).collect())
        .collect()
}

/// Product-state capacity of the channel for a fixed signal set: the Holevo
/// quantity maximized over input distributions.
///
/// Runs projected gradient ascent (central-difference gradients, backtracking
/// line search) from the uniform distribution; if ascent stalls before the
/// convergence criterion is met, an exhaustive simplex grid search at
/// resolution 0.02 is merged in. Returns the capacity in bits together with
/// the best input distribution found.
pub fn capacity_product(
    channel: &ChannelModel,
    states: &[DensityMatrix],
    tol: f64,
) -> Result<(f64, Vec<f64>)> {
    if states.is_empty() {
        return Err(Error::validation("capacity needs at least one signal state"));
    }
    if states.iter().any(|s| s.dim() != 2) {
        return Err(Error::validation("signal states must be qubits"));
    }
    if !(tol > 0.0) {
        return Err(Error::validation(format!("tolerance must be positive, got {tol}")));
    }
    let sigmas: Vec<ComplexMatrix> = states
        .iter()
        .map(|s| apply_channel(channel, s).map(|d| d.matrix().clone()))
        .collect::<Result<_>>()?;
    let sigma_entropies: Vec<f64> = sigmas
        .iter()
        .map(|m| entropy_lenient(m, 1e-9))
        .collect::<Result<_>>()?;
    let sigma_refs: Vec<&ComplexMatrix> = sigmas.iter().collect();
    // Finite-difference probes step slightly off the simplex, so the mixture
    // entropy must tolerate small negative eigenvalues and trace drift.
    let objective = |p: &[f64]| -> Result<f64> {
        let mix = mix_matrices(&sigma_refs, p);
        let s_mix = entropy_lenient(&mix, 1e-3)?;
        let avg: f64 = sigma_entropies.iter().zip(p).map(|(s, &pi)| s * pi).sum();
        Ok(s_mix - avg)
    };

    let k = states.len();
    let mut p = vec![1.0 / k as f64; k];
    let mut best_val = objective(&p)?;
    let mut best_p = p.clone();
    let mut converged = false;
    let mut stalled = false;
    let mut small_steps = 0;
    for _ in 0..PGA_MAX_ITERS {
        let mut grad = vec![0.0; k];
        for i in 0..k {
            let mut hi = p.clone();
            let mut lo = p.clone();
            hi[i] += FD_STEP;
            lo[i] -= FD_STEP;
            grad[i] = (objective(&hi)? - objective(&lo)?) / (2.0 * FD_STEP);
        }
        let mut step = 1.0;
        let mut improvement = None;
        while step >= 1e-14 {
            let moved: Vec<f64> = p.iter().zip(&grad).map(|(&pi, &gi)| pi + step * gi).collect();
            let cand = project_simplex(&moved);
            let val = objective(&cand)?;
            if val > best_val + 1e-15 {
                improvement = Some(val - best_val);
                best_val = val;
                p = cand;
                best_p = p.clone();
                break;
            }
            step *= 0.5;
        }
        match improvement {
            // No ascent step improves the value: either we started at the
            // optimum or the gradient signal is below floating-point
            // resolution. Defer to the grid fallback.
            None => {
                stalled = true;
                break;
            }
            Some(delta) if delta < tol => {
                small_steps += 1;
                if small_steps >= 3 {
                    converged = true;
                    break;
                }
            }
            Some(_) => small_steps = 0,
        }
    }
    if stalled {
        for gp in simplex_grid(k, SIMPLEX_GRID_STEPS) {
            let val = objective(&gp)?;
            if val > best_val {
                best_val = val;
                best_p = gp;
            }
        }
    } else if !converged {
        return Err(Error::numerical(
            format!("product-capacity ascent did not converge within {PGA_MAX_ITERS} iterations"),
            Some(best_val),
        ));
    }
    Ok((best_val.clamp(0.0, 1.0), best_p))
}

/// Quantum mutual information of the channel at input `ρ`:
/// `S(ρ) + S(N(ρ)) − S((N⊗I)Φ_ρ)` where `Φ_ρ` purifies `ρ`.
pub fn entangled_objective(channel: &ChannelModel, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::validation(format!(
            "entangled objective expects a qubit input, got dim {}",
            rho.dim()
        )));
    }
    let s_in = vn_entropy(rho)?;
    let s_out = vn_entropy(&apply_channel(channel, rho)?)?;
    let joint = apply_channel_extended(channel, &purify(rho)?)?;
    Ok(s_in + s_out - vn_entropy(&joint)?)
}

/// Entanglement-assisted capacity: [`entangled_objective`] maximized over the
/// Bloch ball.
///
/// A coarse grid over `(r, θ/π, φ/2π)` at resolution 0.05 seeds a
/// coordinate-descent refinement with geometrically shrinking steps. Returns
/// the capacity in bits together with the maximizing input state.
pub fn capacity_entangled(channel: &ChannelModel, tol: f64) -> Result<(f64, DensityMatrix)> {
    if !(tol > 0.0) {
        return Err(Error::validation(format!("tolerance must be positive, got {tol}")));
    }
    let evals = std::cell::Cell::new(0usize);
    let objective = |coords: [f64; 3]| -> Result<f64> {
        evals.set(evals.get() + 1);
        let rho = DensityMatrix::from_bloch(coords[0], coords[1] * PI, coords[2] * TAU)?;
        entangled_objective(channel, &rho)
    };

    let step = 1.0 / f64::from(BLOCH_GRID_STEPS);
    let mut best_val = f64::NEG_INFINITY;
    let mut best = [0.0; 3];
    for i in 0..=BLOCH_GRID_STEPS {
        for j in 0..=BLOCH_GRID_STEPS {
            for l in 0..=BLOCH_GRID_STEPS {
                let coords = [f64::from(i) * step, f64::from(j) * step, f64::from(l) * step];
                let val = objective(coords)?;
                if val > best_val {
                    best_val = val;
                    best = coords;
                }
            }
        }
    }

    let mut h = step / 2.0;
    while h > 1e-9 {
        loop {
            let mut improved = false;
            for c in 0..3 {
                for dir in [-1.0, 1.0] {
                    let mut cand = best;
                    cand[c] = (cand[c] + dir * h).clamp(0.0, 1.0);
                    if cand[c] == best[c] {
                        continue;
                    }
                    if evals.get() >= ENTANGLED_EVAL_CAP {
                        return Err(Error::numerical(
                            format!(
                                "entangled-capacity refinement exceeded {ENTANGLED_EVAL_CAP} evaluations"
                            ),
                            Some(best_val),
                        ));
                    }
                    let val = objective(cand)?;
                    if val > best_val + 1e-15 {
                        best_val = val;
                        best = cand;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        h *= 0.5;
        // Once the step is small enough that even a quadratic peak moves the
        // value by less than the tolerance, further halving is pointless.
        if h * h < tol * 1e-3 && h < 1e-6 {
            break;
        }
    }
    let rho = DensityMatrix::from_bloch(best[0], best[1] * PI, best[2] * TAU)?;
    Ok((best_val.clamp(0.0, 2.0), rho))
}

/// Which capacity figure a sample reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityMode {
    Product,
    Entangled,
}

impl CapacityMode {
    /// Upper bound of the capacity in bits for a qubit channel.
    pub fn max_value(self) -> f64 {
        match self {
            CapacityMode::Product => 1.0,
            CapacityMode::Entangled => 2.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CapacityMode::Product => "product",
            CapacityMode::Entangled => "entangled",
        }
    }
}

impl fmt::Display for CapacityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CapacityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(CapacityMode::Product),
            "entangled" => Ok(CapacityMode::Entangled),
            other => Err(Error::validation(format!(
                "unknown capacity mode {other:?} (expected product or entangled)"
            ))),
        }
    }
}

impl std::str::FromStr for ChannelModel {
    type Err = Error;

    /// Parses the textual channel grammar shared by the CLI and config
    /// files: `identity`, `rotation:<radians>`, or `depolarizing:<q>`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || {
            Error::validation(format!(
                "unknown channel {s:?} (expected identity, rotation:<radians>, \
                 or depolarizing:<q>)"
            ))
        };
        if s == "identity" {
            return Ok(ChannelModel::identity());
        }
        let (kind, arg) = s.split_once(':').ok_or_else(unknown)?;
        let arg: f64 = arg.parse().map_err(|_| unknown())?;
        match kind {
            "rotation" => Ok(ChannelModel::rotation(arg)),
            "depolarizing" => ChannelModel::depolarizing(arg),
            _ => Err(unknown()),
        }
    }
}

/// The channel population a capacity sample is drawn from.
#[derive(Debug, Clone)]
pub enum ChannelFamily {
    /// Every sample sees the same channel.
    Fixed(ChannelModel),
    /// Each sample draws a fresh rotation angle `θ ~ U[0, 2π)`.
    RandomRotation,
}

/// How the signal distribution is chosen per sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbMode {
    /// Maximize over the simplex (deterministic given the channel).
    Optimized,
    /// Draw `p` uniformly from the simplex (flat Dirichlet).
    Random,
}

/// One stochastic capacity observation, with the random draws that produced
/// it so callers can reproduce or cross-check the value.
#[derive(Debug, Clone)]
pub struct CapacitySample {
    pub mode: CapacityMode,
    /// Capacity value in bits, clamped to `[0, mode.max_value()]`.
    pub value: f64,
    /// Rotation angle drawn for [`ChannelFamily::RandomRotation`].
    pub rotation_angle: Option<f64>,
    /// Signal distribution drawn for [`ProbMode::Random`].
    pub simplex_point: Option<Vec<f64>>,
}

/// Uniform sample from the probability simplex: `k` unit-rate exponentials
/// (`−ln(1−u)`), normalized.
fn dirichlet_uniform<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut draws: Vec<f64> = (0..k)
        .map(|_| {
            let u: f64 = rng.gen();
            -(1.0 - u).ln()
        })
        .collect();
    let total: f64 = draws.iter().sum();
    for d in &mut draws {
        *d /= total;
    }
    draws
}

/// Draws one capacity sample for the BB84 signal set.
///
/// The RNG is consumed in a fixed order — rotation angle first (if the family
/// is random), then the simplex point (if the distribution is random) — so
/// product and entangled samples taken from identically seeded streams see
/// identical draws.
pub fn sample_capacity<R: Rng>(
    mode: CapacityMode,
    family: &ChannelFamily,
    p_mode: ProbMode,
    rng: &mut R,
) -> Result<CapacitySample> {
    let (channel, rotation_angle) = match family {
        ChannelFamily::Fixed(c) => (c.clone(), None),
        ChannelFamily::RandomRotation => {
            let theta = rng.gen::<f64>() * TAU;
            (ChannelModel::rotation(theta), Some(theta))
        }
    };
    let simplex_point = match p_mode {
        ProbMode::Optimized => None,
        ProbMode::Random => Some(dirichlet_uniform(rng, 4)),
    };
    let value = match (mode, &simplex_point) {
        (CapacityMode::Product, Some(p)) => holevo_chi(&Ensemble::bb84(p)?, &channel)?,
        (CapacityMode::Product, None) => capacity_product(&channel, &bb84_states(), SAMPLE_TOL)?.0,
        (CapacityMode::Entangled, Some(p)) => {
            let rho = Ensemble::bb84(p)?.average_state();
            entangled_objective(&channel, &rho)?
        }
        (CapacityMode::Entangled, None) => capacity_entangled(&channel, SAMPLE_TOL)?.0,
    };
    Ok(CapacitySample {
        mode,
        value: value.clamp(0.0, mode.max_value()),
        rotation_angle,
        simplex_point,
    })
}
