//! Verification campaigns. Each returns a sorted [`HarnessReport`](crate::report::HarnessReport).

pub mod lemma23;
pub mod proof;
pub mod random;
pub mod scan;
pub mod sharpness;
pub mod theorem;

pub use lemma23::{lemma23_campaign, lemma23_sweep, verify_lemma23, verify_lemma23_with, LemmaInstance};
pub use proof::{max_cut_size, verify_proof_inequalities};
pub use random::{random_graph, EdgeSchedule, RandomGraphConfig};
pub use scan::{scan_small, scan_stream, LABELED_MAX_ORDER};
pub use sharpness::sharpness_probe;
pub use theorem::{isomorphic, theorem_check, Fingerprint, InstanceOutcome, TheoremContext};
