//! Exact computations with integrals of finite groups: groups `H` whose
//! derived subgroup is isomorphic to a given group `G`.
//!
//! Every group is a [`PermGroup`]. Composition is right-to-left, see [`perm`].

pub mod aut;
pub mod config;
pub mod construct;
pub mod descriptor;
pub mod enumerate;
pub mod error;
pub mod gauge;
pub mod group;
pub mod hom;
pub mod integral;
pub mod iso;
pub mod lattice;
pub mod perm;
pub mod structure;
pub mod table;
pub mod tower;
pub mod word;

mod chain;

pub use descriptor::GroupDescriptor;
pub use config::{gates, set_gates, Gates};
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
pub use table::Table;
