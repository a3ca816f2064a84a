//! Strong parity factors, adjacency spectral radius and the join-of-cliques
//! families that bound it.
//!
//! * [`graph`]: bitset graphs and their constructive algebra.
//! * [`io`]: edge-list and graph6 text formats.
//! * [`spectra`]: power iteration, quotient matrices, cubic roots.
//! * [`parity`]: subset criterion and brute-force definition of strong parity factors.
//! * [`extremal`]: `G₁`, `G₂`, `G₃`, `G*` builders and their closed-form polynomials.
//! * [`harness`]: verification campaigns producing [`report::HarnessReport`]s.

pub mod error;
pub mod exact;
pub mod extremal;
pub mod graph;
pub mod harness;
pub mod io;
pub mod parity;
pub mod report;
pub mod rng;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
