//! Construction, verification and bounding of k-radius and k-cover sequences.
//!
//! A k-radius sequence for a graph lists vertices (with repetitions) so that the
//! endpoints of every edge appear within distance k. It models a FIFO cache of
//! `k + 1` slots that must hold every adjacent pair together at some point; a
//! k-cover sequence models the same cache with a free replacement policy.
//!
//! The modules are layered bottom-up:
//!
//! * [`debruijn`]: the weighted de Bruijn graph, its minimum normalized-weight
//!   cycle (the constant `a_k`) and the analytic bounds around it.
//! * [`binseq`]: cyclic and linear symbol strings and their bad-pair counts.
//! * [`graphs`]: simple undirected graphs, generators and the edge-list format.
//! * [`radius`]: verifiers, lower bounds and constructive sequences.
//! * [`exact`]: exhaustive solvers for tiny instances.
//! * [`hardness`]: the two reduction constructions and loss accounting.

pub mod binseq;
pub mod debruijn;
pub mod error;
pub mod exact;
pub mod graphs;
pub mod hardness;
pub mod radius;

pub use error::{Error, Result};

/// Exact rational used for every normalized weight and bound.
pub type Rational = num_rational::Ratio<i64>;

/// Whether distances in a sequence wrap around.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cyclic,
    Linear,
}

pub(crate) fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}
