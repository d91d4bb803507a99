//! Exact computation of cyclic Tate-Shafarevich groups of G-lattices.
//!
//! The pipeline: finite groups as multiplication tables ([`groups`]),
//! integer lattices with a group action ([`glattice`]), group cohomology via
//! the normalized inhomogeneous cochain complex ([`cohomology`]), and the
//! kernel of restriction to cyclic subgroups ([`sha`]). The [`multinorm`]
//! layer builds the character lattices of multinorm-one tori and checks the
//! classification of their invariants against closed-form expectations.
//! Everything rests on exact integer linear algebra ([`intlin`]).

pub mod budget;
pub mod cohomology;
pub mod error;
pub mod glattice;
pub mod groups;
pub mod intlin;
pub mod multinorm;
pub mod sha;

pub use error::{Error, Result};
