//! Decision procedures for proto-complete, complete and strong-complete
//! objects among finite groups, finite rings and Lie algebras over `F_p`.
//!
//! Groups are the main universe: everything is searched exhaustively from
//! Cayley tables, with definition-level oracles that can be run against the
//! criteria based on the conjugation morphism `c_G: G → Aut(G)`.

pub mod automorphism;
pub mod catalog;
pub mod commutator;
pub mod completeness;
pub mod error;
pub mod extension;
pub mod group;
pub mod harness;
pub mod lie;
pub mod limits;
pub mod ring;

pub use error::{Error, Result};
pub use limits::Limits;
