//! Modular representations attached to level-2 and level-p congruence
//! subgroups: exact finite-field linear algebra, the symplectic and
//! special linear actions, derived modules, the Sato `Z/8` algebra, the
//! Torelli coinvariants algebra, a MeatAxe engine and highest-weight
//! labels, tied together by end-to-end pipelines.

pub mod error;
pub mod fflinalg;

pub use error::{Error, Result};
pub mod functors;
pub mod groups;
pub mod meataxe;
pub mod pipelines;
pub mod sato;
pub mod torelli;
pub mod weights;
