//! Non-autonomous dynamical systems on the unit interval and the circle.
//!
//! A system is a sequence of homeomorphisms `f_1, f_2, …` of one space,
//! with flow `ω_n = f_n ∘ … ∘ f_1`, `ω_0 = id` and `ω_{-n} = ω_n^{-1}`.
//! The crate evaluates flows, enumerates truncated orbital hulls, keeps an
//! exact rational view of rotation families, and runs finite-scale checkers
//! that report certificates or evidence for recurrence and stability
//! properties.

// `!(x > 0.0)` is the NaN-rejecting check used for every tolerance.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checkers;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod family;
pub mod flow;
pub mod homeo;
pub mod hull;
pub mod report;
pub mod space;

pub use corpus::{corpus, list_corpus, CorpusEntry, Expectation, CORPUS_NAMES};
pub use error::{Error, Result};
pub use exact::{format_rational, parse_rational, RationalAngle, RationalRotationFamily};
pub use family::{block_family, commutativity_audit, CommutativityAudit, MapFamily};
pub use flow::{omega, orbit_window, FlowCache, OrbitWindow};
pub use homeo::{CircleRotation, Direction, Homeomorphism, LinearPiece, PiecewiseLinear, PowerMap};
pub use hull::{hausdorff_distance, hull_sample, HullSample};
pub use report::{fmt_real, Property, PropertyReport, Relation, Value, Verdict, Witness};
pub use space::SpaceKind;
