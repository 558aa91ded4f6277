//! Fair job scheduling on unrelated machines with payments.
//!
//! The crate provides
//!
//! * decision procedures for proportionality, mean efficiency, (approximate)
//!   envy-freeness, cyclic envy-freeness and (approximate) local efficiency,
//!   together with payment constructions that certify them ([`fairness`]);
//! * the anti-diagonal mechanism (proportional, makespan within 3/2 of any
//!   input allocation), the cyclic mechanism, and the optimal proportional
//!   mechanism for normalized instances ([`mechanisms`]);
//! * goods-side duals ([`goods`]);
//! * exhaustive oracles for optimal makespan / welfare and the best
//!   proportionable allocation ([`oracles`]);
//! * lower-bound instance families, seeded random families and the reduction
//!   from general to normalized instances ([`generators`]).
//!
//! Every algorithm is generic over [`Scalar`]. The default scalar is the exact
//! [`Rational`]; float aliases are provided for quick experiments where
//! rounding is acceptable.

pub mod error;
pub mod fairness;
pub mod generators;
pub mod goods;
pub mod mechanisms;
pub mod model;
pub mod oracles;
pub mod scalar;

#[cfg(test)]
pub(crate) mod testing;

pub use error::{Error, Result};
pub use model::{
    bundle_cost, cross_costs, machine_loads, makespan, normalization_factor, total_cost, Allocation,
    Instance, Kind, MechanismOutcome, MechanismSource, PaymentVector,
};
pub use scalar::{format_rational, parse_rational, Scalar};

/// Exact arbitrary-precision rational; the engine's default scalar.
pub type Rational = num_rational::BigRational;

pub type InstanceF64 = Instance<f64>;
pub type PaymentVectorF64 = PaymentVector<f64>;
pub type MechanismOutcomeF64 = MechanismOutcome<f64>;

pub type InstanceF32 = Instance<f32>;
pub type PaymentVectorF32 = PaymentVector<f32>;
