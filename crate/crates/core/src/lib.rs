//! Isomorphism testing for chordal Coxeter groups by diagram twisting.
//!
//! A Coxeter system is given by its P-diagram ([`PDiagram`]): generators with
//! a finite label `m(s,t)` on each pair that satisfies `(st)^m = 1`. Two
//! chordal systems define isomorphic groups exactly when their expanded
//! diagrams are connected by elementary and cross-eyed twists, and
//! [`decide_isomorphic`] searches for such a sequence.

pub mod angle;
pub mod canon;
pub mod chordal;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod format;
pub mod georep;
pub mod iso;
pub mod spherical;
pub mod twist;
pub mod vset;

pub use angle::{
    bad_separators, candidate_bad_edges, cross_eyed_twist, gross_separators, has_shared_head_vertex, star_decomposition, BadSeparator,
    GrossSeparator, StarArm, StarDecomposition,
};
pub use canon::{canonical_form, canonical_labeling, isomorphism, CanonicalForm};
pub use chordal::{chordality, close_separator, is_minimal_separator, minimal_separators_between, ChordalityWitness};
pub use diagram::{CoxeterLabel, ComponentMode, GeneratorName, PDiagram, SimplexStatus};
pub use error::{Error, Result};
pub use expansion::{blow_up, blowup_eligibility, expand, BlowupKind, BlowupPlan, Eligibility};
pub use format::{export, parse_auto, parse_diagram, Format};
pub use georep::{build_rep, verify_blowup, word_order, MeasuredOrder, ReflectionRep, WordOrderReport};
pub use iso::{decide_isomorphic, enumerate_iso_classes, Certificate, DecideOptions, Verdict, VerdictKind};
pub use spherical::{bases, classify_irreducible, is_spherical, longest_conjugation, Base, FiniteType};
pub use twist::{apply_twist, enumerate_twist_moves, twist_orbit, MoveRecord, Orbit, OrbitOptions, Separation, TwistMove};
pub use vset::VertexSet;
