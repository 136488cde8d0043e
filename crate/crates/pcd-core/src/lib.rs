//! Prefix covering designs and the machinery around them.
//!
//! A `(d, K, alpha)` prefix covering design (PCD) is a family of `d` ordered
//! sequences over the universe `1..=K` whose prefixes cover every element
//! triple within total prefix length `alpha` (triplet condition) and whose
//! repeated elements `x` satisfy `l_min(x) + l_max(x) <= alpha + 1` (singleton
//! condition). The quality `K / alpha` of such a design is a conditional
//! lower-bound exponent for Klee's measure problem and several related
//! geometric problems under the 3-uniform hyperclique hypothesis.
//!
//! The crate provides:
//!
//! * [`design`] — the PCD type, exact verification, minimal-alpha computation,
//!   normalization, deduplication, and the scaling transform;
//! * [`covering`] — classic `(v, k, 2)` covering designs, pair-coverage
//!   verification, scaling, projective-plane generation, multi-matchings via
//!   max flow, and the padding fallback;
//! * [`transform`] — covering-design-to-PCD transformations (simple and
//!   n-replicated), the general-dimension construction, the classic
//!   generators, and closed-form bound calculators;
//! * [`sat`] — a DIMACS CNF encoding of fixed-shape PCD existence for external
//!   SAT solvers, model decoding, and an encoder self-test;
//! * [`reduce`] — hyperclique reductions to coverage/depth box instances and
//!   to max-perimeter / largest-volume empty anchored box point instances;
//! * [`oracle`] — brute-force reference solvers used to validate everything
//!   at desk scale;
//! * [`io`] — the plain-text interchange formats;
//! * [`golden`] — embedded known-good designs and table data.

pub mod covering;
pub mod design;
pub mod error;
pub mod golden;
pub mod io;
pub mod oracle;
pub mod rat;
pub mod reduce;
pub mod sat;
pub mod transform;

pub use covering::{CoveringDesign, MatchOutcome, MultiMatching};
pub use design::{Position, PrefixCoveringDesign, TripletCover, VerifyReport, Violation};
pub use error::Error;
pub use rat::Rat;
