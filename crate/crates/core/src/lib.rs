//! Lower central series invariants of right-angled Coxeter groups.
//!
//! For a simplicial complex `K` on `[m]`, the right-angled Coxeter group
//! `RC_K` has involutive generators `g_1..g_m` with `g_i g_j = g_j g_i`
//! exactly when `{i, j}` is an edge of `K`. This crate computes
//!
//! * generators of the commutator subgroup and bases of the first three
//!   lower central series quotients ([`lcs`]),
//! * homology of the real moment-angle complex via full subcomplexes
//!   ([`homology`]),
//! * graded dimensions of graph Lie algebras over GF(2) ([`glie`]),
//!
//! and checks them against independent brute force: exact word calculus in
//! `RC_K` ([`words`]) and coset enumeration of the finite quotients
//! `RC_K / γ_{c+1}` ([`oracle`]).

pub mod glie;
pub mod homology;
pub mod lcs;
pub mod oracle;
pub mod par;
pub mod scomplex;
pub mod verify;
pub mod words;

pub use par::Strategy;
pub use scomplex::{parse_complex, ComplexError, Partition, SimplicialComplex, Vertex, VertexSet};
