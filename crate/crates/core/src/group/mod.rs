//! Finite groups as Cayley tables, with products, quotients, homomorphism
//! enumeration and isomorphism testing.

mod hom;
mod input;
mod ops;
mod search;
mod subgroup;
mod table;

pub use hom::{pairing, same_group, GroupHom};
pub use input::{load_group, load_group_json, GroupFile, GroupSource, PermutationSource};
pub use ops::{
    alternating, dicyclic, dihedral, direct_product, permutation_closure, quotient, symmetric, DirectProduct,
};
pub(crate) use search::HomSearch;
pub use search::{enumerate_homs, for_each_hom, is_isomorphic, iso_invariants_match, left_inverses, right_inverses};
pub use subgroup::Subgroup;
pub use table::{closure, extend_generators, FiniteGroup, GroupOps, GroupRef};
