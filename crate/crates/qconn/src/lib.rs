//! Physically weighted connectivity analysis for quantum key distribution
//! (QKD) networks.
//!
//! The crate models a QKD network as a weighted graph: each link carries a
//! BB84 key exchange whose secret-key fraction — derived from the link's
//! photon budget, detector noise, and a learned channel-quality factor —
//! becomes the edge weight, and the network's robustness is summarized by the
//! algebraic connectivity (the second-smallest Laplacian eigenvalue) of that
//! graph. On top of this sit resilience tools: ranking nodes by how much
//! their removal hurts connectivity, and planning the cheapest photon-budget
//! increase that restores a connectivity target.
//!
//! Module map, bottom to top:
//!
//! * [`qmath`] — complex matrices, Hermitian eigendecomposition, von Neumann
//!   entropy, tensor products, partial trace, purification.
//! * [`channel`] — qubit channel models, Holevo quantity, product-state and
//!   entanglement-assisted capacities, stochastic capacity sampling.
//! * [`qkd`] — BB84 link budget: rate chain, QBER, secret-key fraction, and
//!   the exponential-moving-average link-quality learner.
//! * [`spectral`] — weighted topologies, graph Laplacians, algebraic
//!   connectivity via eigendecomposition plus an independent
//!   optimization-based cross-check.
//! * [`weights`] — turns a topology plus link physics into learned edge
//!   weights (the glue between `qkd` and `spectral`).
//! * [`resilience`] — node removal, harm ranking, recovery planning.
//! * [`sim`] — grid builders, deterministic parameter sweeps, experiment
//!   presets.
//! * [`config`] / [`cli`] — sectioned key-value config files and the `qconn`
//!   command-line front end.
//!
//! The `examples/` directory contains one runnable example per capability;
//! start with `cargo run --example grid_connectivity`.

pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod qkd;
pub mod qmath;
pub mod resilience;
pub mod sim;
pub mod spectral;
pub mod weights;

pub use error::{Error, Result};
