//! Exact combinatorics for parking functions, labeled trees and graphical
//! matroids.
//!
//! The crate computes the same objects along independent routes so that
//! they can be compared exactly:
//!
//! * [`parking`]: parking-function and G-parking sum enumerators by brute force.
//! * [`enumerate`]: labeled trees by inversions (Prüfer decoding) and
//!   connected labeled graphs by edge count.
//! * [`matroid`]: rank-oracle matroids and the Tutte polynomial as a
//!   rank-nullity subset sum.
//! * [`tutte`]: memoized deletion-contraction for the same polynomial.
//! * [`verify`]: the identity and log-concavity checks tying them together.

pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod matroid;
pub mod parking;
pub mod poly;
pub mod tutte;
pub mod verify;

pub use enumerate::{connected_edge_enumerator, inversion_enumerator, prufer_decode, LabeledTree};
pub use error::{Error, Result};
pub use graph::{CanonicalKey, MultiGraph};
pub use matroid::{dual_rank, graphic_rank, RankOracleMatroid};
pub use parking::{gpf_sum_enumerator, is_gparking, is_parking_function, pf_sum_enumerator, ParkingFunction};
pub use poly::{lc_diagnostics, BivariatePolynomial, IntPolynomial, LcReport, Variable};
pub use tutte::{specialize, tutte_delcon, TutteEngine};
pub use verify::{run_suite, CheckResult, Report, Suite};
