//! Exact computation of the tree components of operad coproducts `O ⊔ F(M, n)`
//! in chain complexes, where `M = cone(id_k)[s]` is a contractible complex of
//! `n`-ary generators.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactalg`]: scalars over Q, F_p and Z, sparse exact matrices, rank,
//!   kernels and Smith normal form.
//! - [`chaincx`]: bounded complexes of free modules, their constructors and
//!   homology, acyclicity and quasi-isomorphism tests, coinvariants.
//! - [`treecomb`]: rooted trees with `(r, n)`-markings, the reduced condition,
//!   canonical codes, automorphism groups, enumeration of reduced classes.
//! - [`operadcore`]: symmetric collections, built-in operads, the per-tree
//!   component complexes and the truncated coproduct with its inclusion.
//! - [`verifier`]: reproducible scenarios and their reports.
//! - [`cli`]: the `opcoprod` command line front end.

pub mod chaincx;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod operadcore;
pub mod treecomb;
pub mod verifier;

pub use error::{Error, Result};
