//! Exact classification of orientation-preserving Z_p^m actions on closed
//! oriented surfaces.
//!
//! An action is described by its monodromy: the images in F_p^m of a
//! standard homology basis of the punctured quotient surface
//! ([`ActionData`]). From that data the crate computes
//!
//! - the strong invariant: quotient genus, branch multiset and the induced
//!   alternating form on the dual of the free part ([`StrongInvariant`]);
//! - the weak invariant: radical dimension, quotient genus and the
//!   Aut(G)-canonical branch multiset ([`WeakInvariant`]);
//!
//! and decides equivalence, builds witness actions from invariants and lists
//! every weak class for given parameters. The [`oracle`] module recomputes
//! all of this by brute force on permutation covers and orbit enumeration.

pub mod action;
pub mod canonical;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod groups;
pub mod invariant;
pub mod limits;
pub mod matrix;
pub mod oracle;
pub mod subspace;
pub mod symplectic;

pub use action::ActionData;
pub use canonical::{canonical_multiset, multiset_signature, Signature};
pub use construct::construct_action;
pub use enumerate::{enumerate_free_classes, enumerate_weak_classes};
pub use error::{Error, Result};
pub use field::{Fp, FpScalar, Vector};
pub use invariant::{
    strong_invariant, strongly_equivalent, weak_invariant, weakly_equivalent, StrongInvariant,
    WeakInvariant,
};
pub use limits::Limits;
pub use matrix::FpMatrix;
pub use subspace::Subspace;
pub use symplectic::{AlternatingForm, StandardSymplecticSpace, SymplecticBasis};
