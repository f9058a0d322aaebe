//! Data-structure rewriting with pointer redirection.
//!
//! Graphs here are ordered and partially labeled: a labeled node carries an
//! operation symbol and one successor per argument position, an unlabeled
//! node is a placeholder. Rewrite steps are double pushouts in the category
//! of such graphs:
//!
//! * LRR steps (local redirection and replacement) add a copy of a
//!   right-hand side and redirect the specific edges the rule disconnects;
//! * GR steps (global redirection) redirect every edge into one node
//!   towards another.
//!
//! The [`pushout`] module builds and checks the pushouts both kinds of step
//! rely on; [`text`] holds the file formats used by the `dsrw` binary.

pub mod disconnect;
pub mod error;
pub mod graph;
pub mod pushout;
pub mod rewrite;
mod search;
pub mod text;

pub use disconnect::{
    disconnect_edges, disconnect_hom, disconnect_node, DisconnectedHom, DisconnectionResult,
    NodeDisconnectionResult,
};
pub use error::{Error, Result};
pub use graph::{
    all_homomorphisms, compose, find_isomorphism, Edge, Graph, Homomorphism, NodeDecl, NodeId, Signature, Symbol,
    Term,
};
pub use pushout::{
    check_square, is_strongly_labeled, pushout, pushout_with, quotient, verify_pushout,
    PushoutResult, QuotientWitness, Side, Span, Square, StrongLabelDiagnostic, Tagged,
};
pub use rewrite::{
    apply_once, find_lrr_matches, gr_step, lrr_step, lrr_step_unchecked, normalize, trim,
    AppliedStep, GrRule, LrrRule, Match, Normalization, RewriteSystem, StepResult,
};
