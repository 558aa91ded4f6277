//! Goods-native entry points: egalitarian welfare and proportionality with
//! transfers `q`.

use crate::error::Result;
use crate::fairness::{is_mean_efficient, is_proportional};
use crate::model::{machine_loads, Allocation, Instance, Kind, PaymentVector};
use crate::scalar::{min_of, Scalar};
use crate::Rational;

/// `min_i v_i(A_i)`.
pub fn egalitarian_welfare<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<T> {
    instance.require_kind(Kind::Goods)?;
    Ok(min_of(&machine_loads(instance, allocation)?))
}

/// `v_i(A_i) - q_i >= (1/m) sum_j (v_i(A_j) - q_j)` for every agent.
pub fn goods_proportional_check<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
    transfers: &PaymentVector<T>,
) -> Result<bool> {
    instance.require_kind(Kind::Goods)?;
    is_proportional(instance, allocation, transfers)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WelfareReport<T = Rational> {
    pub egalitarian_welfare: T,
    pub allocation: Allocation,
    /// Whether some transfers make the allocation proportional.
    pub proportionable: bool,
}

pub fn welfare_report<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<WelfareReport<T>> {
    Ok(WelfareReport {
        egalitarian_welfare: egalitarian_welfare(instance, allocation)?,
        allocation: allocation.clone(),
        proportionable: is_mean_efficient(instance, allocation)?,
    })
}
