//! Exact computational Lie theory for symmetric pairs.
//!
//! This crate constructs symmetric pairs `g = k ⊕ p` from involutions of
//! semisimple Lie algebras in a Chevalley basis, builds the bigraded
//! exterior complex of the negative part of the associated twisted loop
//! algebra, and verifies — as exact rational matrix and combinatorial
//! identities — the relations between the Casimir operator of `k`, the
//! Hodge Laplacian of the complex, abelian subspaces of `p`, and
//! inversion sets in the affine Weyl group.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point and no tolerance anywhere. Each verification either
//! reproduces an identity exactly or reports the offending residual.
//!
//! Module map:
//!
//! - [`rat`]: rational scalar type and small vector helpers
//! - [`linalg`]: exact sparse matrices, kernels, Gram adjoints
//! - [`lie`]: root systems, Chevalley bases, Killing forms
//! - [`pair`]: involutions and the `k ⊕ p` decomposition, Casimir data
//! - [`ext`]: the bigraded exterior complex of the loop algebra
//! - [`abelian`]: enumeration of abelian Borel-stable subspaces of `p`
//! - [`affine`]: affine roots, the Weyl group, inversion sets
//! - [`homology`]: harmonic spaces and the theorem-level verifications

pub mod abelian;
pub mod affine;
pub mod ext;
pub mod homology;
pub mod lie;
pub mod linalg;
pub mod pair;
pub mod rat;

pub use lie::{CartanSpec, ChevalleyBasis, KillingForm, RootSystem};
pub use linalg::{gram_adjoint, LinalgError, SparseRatMatrix};
pub use pair::{Involution, PairSpec, SymmetricPair};
pub use rat::{Rat, RatVector};
