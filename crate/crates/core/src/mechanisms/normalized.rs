use crate::error::{Error, Result};
use crate::fairness::proportional_payments;
use crate::model::{normalization_factor, Instance, Kind, MechanismOutcome, MechanismSource};
use crate::oracles::{search, Goal};
use crate::scalar::Scalar;

fn optimal_by_total<T: Scalar>(instance: &Instance<T>, kind: Kind, cap: u64) -> Result<MechanismOutcome<T>> {
    instance.require_kind(kind)?;
    if normalization_factor(instance).is_none() {
        return Err(Error::NotNormalized);
    }
    let goal = Goal {
        by_total: true,
        mean_efficient: false,
    };
    let (_, allocation) = search(instance, goal, cap)?.expect("some allocation exists");
    let payments = proportional_payments(instance, &allocation)?;
    MechanismOutcome::new(allocation, payments, MechanismSource::NormalizedOptimal)
}

/// On a normalized chores instance: the minimum-makespan allocation with the
/// smallest total cost (then lexicographically smallest), with proportional
/// payments. Exhaustive; `m^n` must not exceed `cap`.
pub fn normalized_optimal_mechanism<T: Scalar>(instance: &Instance<T>, cap: u64) -> Result<MechanismOutcome<T>> {
    optimal_by_total(instance, Kind::Chores, cap)
}

/// Goods counterpart: maximum egalitarian welfare, then maximum total value.
pub fn goods_normalized_optimal_mechanism<T: Scalar>(instance: &Instance<T>, cap: u64) -> Result<MechanismOutcome<T>> {
    optimal_by_total(instance, Kind::Goods, cap)
}
