//! Constructive mechanisms, each returning a [`MechanismOutcome`].
//!
//! [`MechanismOutcome`]: crate::model::MechanismOutcome

mod anti_diagonal;
mod cyclic;
mod normalized;

pub use anti_diagonal::{anti_diagonal_mechanism, anti_diagonal_partner, AntiDiagonalTrace};
pub use cyclic::{cyclic_mechanism, cyclic_mechanism_traced, CyclicTrace};
pub use normalized::{goods_normalized_optimal_mechanism, normalized_optimal_mechanism};
