//! Exact Waring ranks of binary sextics.
//!
//! The crate computes the Waring rank of a binary form in two independent
//! ways: the invariant-theoretic decision tree for sextics in [`classifier`],
//! and Sylvester's apolarity algorithm for forms of any degree in
//! [`apolarity`]. All decisions are made in exact rational arithmetic; the
//! [`decomposer`] then realizes an explicit decomposition `f = Σ ℓⱼ^d`
//! numerically and certifies it by resubstitution.

pub mod apolarity;
pub mod classifier;
pub mod decomposer;
mod error;
pub mod factor;
pub mod form;
pub mod generate;
pub mod invariants;
pub mod linalg;
pub mod resultant;
mod roots;
pub mod selfcheck;

pub use error::{Error, Result};
pub use form::{BinaryForm, Convention, DiffOperator, Rational, UnimodularMatrix};

pub use apolarity::{
    ann_basis, apolar_generators, catalecticant, generic_rank, sylvester_rank, ApolarIdeal,
    CatalecticantFlavor, CatalecticantMatrix,
};
pub use classifier::{
    elliott_analysis, git_class, orbit_equivalent, rank_sextic, Branch, ElliottCase,
    ElliottReport, GitClass, RankCertificate,
};
pub use decomposer::{
    decompose, decompose_general, operator_roots, solve_coefficients, squarefree_apolar,
    ComplexLinearForm, DecomposeOptions, WaringDecomposition,
};
pub use factor::{gcd, squarefree_decomposition, MultiplicityProfile};
pub use invariants::{
    invariant_i10, invariant_i2, invariant_i4, invariant_i6, invariants, pi_point, weighted_eq,
    InvariantVector, WeightedPoint,
};
pub use resultant::resultant;
