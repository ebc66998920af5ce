//! Exact computations on the subgroups `P_k` of the free group `F_2 = ⟨a, b⟩`
//! generated by `k`-th powers of primitive elements.
//!
//! The crate covers reduced words and automorphisms ([`words`]), Farey
//! combinatorics and normal generators ([`farey`]), cyclotomic linear algebra
//! ([`cyclotomic`]), characteristic representations ([`reps`]), affine
//! deformations ([`deform`]), integer lattices and the faithfulness chain for
//! `F_2/P_4` ([`kernels`]), coset enumeration ([`enumerate`]) and the batch
//! report layer ([`cli`]).

pub mod cli;
pub mod cyclotomic;
pub mod deform;
pub mod enumerate;
pub mod farey;
pub mod kernels;
pub mod reps;
pub mod words;
