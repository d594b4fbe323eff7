//! Exact arithmetic for the theory of idempotent matrices.
//!
//! The crate provides, over ℤ, ℚ, 𝔽_p, and polynomial rings on top of them:
//!
//! * scalar rings with canonical forms, a shared text grammar, and extended
//!   gcds ([`ring`], [`qcount`]);
//! * dense exact matrices with block algebra, Kronecker products, and
//!   fraction-field rank/kernel/image computations ([`matrix`]);
//! * idempotent-specific constructions: diagonalization, complements,
//!   low-rank generators, Kronecker idempotents ([`idem`]);
//! * the natural partial order e ≤ f ⟺ ef = e = fe on idempotents,
//!   enumeration of 𝒮(M_n(𝔽_p)), Hasse diagrams, and interval
//!   isomorphisms ([`poset`]);
//! * Smith normal form over Euclidean rings and the constructive
//!   factorizations of idempotents it yields ([`smith`]);
//! * Gröbner bases and the dimension of the idempotent variety
//!   ([`groebner`]).

pub mod error;
pub mod format;
pub mod groebner;
pub mod idem;
pub mod linalg;
pub mod matrix;
pub mod poset;
pub mod qcount;
pub mod ring;
pub mod smith;

pub use error::{Error, Result};
pub use groebner::{
    buchberger, idempotent_ideal, leading_term, leading_term_ideal, monomial_compare,
    monomial_ideal_dimension, poly_reduce, s_polynomial, variety_dimension, GroebnerBasis,
    IdealBasis, MonomialOrder, OrderKind, DEFAULT_PAIR_BUDGET,
};
pub use idem::{
    block_build_idempotent, complement, diagonalize, is_idempotent, is_rank1_idempotent_m2,
    kron_idempotent, m3_rank2_construct, rank1_ufd_construct, scaled_idempotent_factor,
    BlockBuilderInput, DiagonalizationWitness, Idempotent,
};
pub use linalg::{image_basis, invert, kernel_basis, rank, rref, Rref};
pub use matrix::{
    block_compose, block_split, exchange_matrix, hstack, kronecker, vstack, BlockSpec, Matrix,
};
pub use poset::{
    brute_force_idempotents, build_hasse, build_hasse_with, covers, enumerate_idempotents,
    enumerate_idempotents_with, enumerate_subspaces, interval, interval_iso_witness, leq,
    leq_by_block_form, lift_above, projection_idempotent, HasseDiagram, IntervalIsoWitness,
    PosetElement, SubspaceRep, DEFAULT_ENUM_BUDGET,
};
pub use qcount::{gaussian_binomial, idempotent_count, QCount};
pub use ring::{
    euclid_gcd, parse_scalar, MPoly, Monomial, RatFunc, Ring, RingValue, Scalar, UPoly,
};
pub use smith::{
    coprime_pair_builder, coprime_pair_builder_with, gcd_of_minors, idempotent_snf_factor,
    smith_normal_form, IdempotentFactorization, SmithDecomposition,
};
