//! MeatAxe-style decomposition of finite-field representations.

mod chop;
mod iso;
mod spin;

pub use chop::{chop, chop_with, replay, AlgebraElement, Certificate, ChopOptions, CompositionSeries, IrreducibilityProof};
pub use iso::{identify_factor, is_isomorphic, isomorphism};
pub use spin::{replay_steps, spin, spin_words, Echelon, Spin, SpinStep};
