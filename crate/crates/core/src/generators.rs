//! Instance families: the tight lower-bound constructions, seeded random
//! families, and the reduction from general to normalized instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Kind, PaymentVector};
use crate::oracles::brute_force_opt;
use crate::scalar::{max_of, Scalar};

/// Default denominator for random entries (`k / D`, `k` uniform in `0..=D`).
pub const DEFAULT_DENOMINATOR: u32 = 1000;

fn check_shape(machines: usize, jobs: usize) -> Result<()> {
    if machines < 2 || jobs < machines {
        return Err(Error::InvalidParameter(format!(
            "need jobs >= machines >= 2, got machines={machines}, jobs={jobs}"
        )));
    }
    Ok(())
}

/// Chores family on which no proportional allocation beats `3/2 - ε`:
/// `c_{i,i} = 1`, `1/2` below the diagonal, `3/2 - ε/2` above it, and zero
/// columns past `m`. Requires `n >= m >= 2` and `0 < ε <= 1/2`.
pub fn lb_three_halves_instance<T: Scalar>(machines: usize, jobs: usize, eps: &T) -> Result<Instance<T>> {
    check_shape(machines, jobs)?;
    let half = T::from_ratio(1, 2);
    if !(*eps > T::zero() && *eps <= half) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1/2], got {eps}"
        )));
    }
    let high = T::from_ratio(3, 2) - eps.clone() * &half;
    let costs = (0..machines)
        .map(|i| {
            (0..jobs)
                .map(|j| {
                    if j >= machines {
                        T::zero()
                    } else if j == i {
                        T::one()
                    } else if j < i {
                        half.clone()
                    } else {
                        high.clone()
                    }
                })
                .collect()
        })
        .collect();
    Instance::chores(costs)
}

/// Goods family with `OPT(v) = 1` on which every mean-efficient allocation
/// leaves agent 1 with nothing.
pub fn goods_lb_instance<T: Scalar>(machines: usize, jobs: usize) -> Result<Instance<T>> {
    check_shape(machines, jobs)?;
    let m = machines as i64;
    let big = T::from_ratio(m * (m + 1), m - 1);
    let values = (0..machines)
        .map(|i| {
            (0..jobs)
                .map(|j| {
                    if j + 1 < machines {
                        if i == 0 {
                            T::zero()
                        } else {
                            T::one()
                        }
                    } else if j + 1 == machines {
                        if i == 0 {
                            T::one()
                        } else {
                            big.clone()
                        }
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    Instance::goods(values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomFamily {
    /// Entries `k / D` with `k` uniform in `0..=D`.
    UniformUnit,
    /// `UniformUnit` with every row rescaled to sum to exactly 1.
    NormalizedUniform,
}

pub fn random_instance<T: Scalar>(
    machines: usize,
    jobs: usize,
    kind: Kind,
    seed: u64,
    family: RandomFamily,
) -> Result<Instance<T>> {
    random_instance_with_denominator(machines, jobs, kind, seed, family, DEFAULT_DENOMINATOR)
}

/// Deterministic in `seed` (ChaCha8 stream). A normalized row that draws all
/// zeros becomes the uniform row `1/n`.
pub fn random_instance_with_denominator<T: Scalar>(
    machines: usize,
    jobs: usize,
    kind: Kind,
    seed: u64,
    family: RandomFamily,
    denominator: u32,
) -> Result<Instance<T>> {
    if machines < 2 || jobs < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least two machines and two jobs, got {machines}x{jobs}"
        )));
    }
    if denominator == 0 {
        return Err(Error::InvalidParameter("denominator must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Vec<i64>> = (0..machines)
        .map(|_| (0..jobs).map(|_| rng.gen_range(0..=denominator) as i64).collect())
        .collect();
    let costs = match family {
        RandomFamily::UniformUnit => draws
            .iter()
            .map(|row| row.iter().map(|&k| T::from_ratio(k, denominator as i64)).collect())
            .collect(),
        RandomFamily::NormalizedUniform => draws
            .iter()
            .map(|row| {
                let sum: i64 = row.iter().sum();
                if sum == 0 {
                    vec![T::from_ratio(1, jobs as i64); jobs]
                } else {
                    row.iter().map(|&k| T::from_ratio(k, sum)).collect()
                }
            })
            .collect(),
    };
    Instance::new(kind, costs)
}

/// A general instance embedded in a normalized one with an extra machine and
/// an extra job, so that mechanisms for normalized instances transfer back.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult<T: Scalar> {
    /// `(m+1) x (n+1)`, every row summing to 1.
    pub reduced: Instance<T>,
    pub eta: T,
    pub beta: T,
    /// `OPT(c)` of the original instance.
    pub original_opt: T,
}

impl<T: Scalar> ReductionResult<T> {
    pub fn original_machines(&self) -> usize {
        self.reduced.machines() - 1
    }

    pub fn original_jobs(&self) -> usize {
        self.reduced.jobs() - 1
    }

    /// `η(β·OPT(c) + max_i c_i([n])) < 1` and `η·β·OPT(c) < 1/n`.
    pub fn eta_is_admissible(&self, original: &Instance<T>) -> bool {
        let n = T::from_count(original.jobs());
        let max_row = max_of(&(0..original.machines()).map(|i| original.row_sum(i)).collect::<Vec<_>>());
        let scaled_opt = self.beta.clone() * &self.original_opt;
        self.eta.clone() * (scaled_opt.clone() + max_row) < T::one()
            && self.eta.clone() * scaled_opt * n < T::one()
    }
}

/// Builds the normalized `(m+1) x (n+1)` instance
///
/// ```text
/// c̄[i][j]   = η c[i][j]           i < m, j < n
/// c̄[i][n]   = 1 − η c_i([n])      i < m
/// c̄[m][j]   = 1/n                 j < n
/// c̄[m][n]   = 0
/// ```
///
/// with `η` half the smaller of the two admissible upper bounds (when
/// `OPT(c) = 0` only the first bound applies; when every entry is zero, `η = 1`).
pub fn reduce_to_normalized<T: Scalar>(instance: &Instance<T>, beta: &T, cap: u64) -> Result<ReductionResult<T>> {
    instance.require_kind(Kind::Chores)?;
    if *beta < T::one() {
        return Err(Error::InvalidParameter(format!("beta must be >= 1, got {beta}")));
    }
    let (opt, _) = brute_force_opt(instance, cap)?;
    let (m, n) = (instance.machines(), instance.jobs());
    let row_sums: Vec<T> = (0..m).map(|i| instance.row_sum(i)).collect();
    let max_row = max_of(&row_sums);
    let scaled_opt = beta.clone() * &opt;

    let first = scaled_opt.clone() + &max_row;
    let second = scaled_opt * T::from_count(n);
    let denominator = match (first.is_zero(), second.is_zero()) {
        (true, _) => None,
        (false, true) => Some(first),
        (false, false) => Some(if first > second { first } else { second }),
    };
    let eta = match denominator {
        Some(d) => T::one() / (d * T::from_count(2)),
        None => T::one(),
    };

    let mut costs = Vec::with_capacity(m + 1);
    for (i, row_sum) in row_sums.iter().enumerate() {
        let mut row: Vec<T> = instance.row(i).iter().map(|c| eta.clone() * c).collect();
        row.push(T::one() - eta.clone() * row_sum);
        costs.push(row);
    }
    let mut last = vec![T::one() / T::from_count(n); n];
    last.push(T::zero());
    costs.push(last);

    Ok(ReductionResult {
        reduced: Instance::chores(costs)?,
        eta,
        beta: beta.clone(),
        original_opt: opt,
    })
}

/// Restricts an allocation of the reduced instance to the original machines
/// and scales payments by `1/η`. The allocation must put the extra job on the
/// extra machine and every original job on an original machine.
pub fn map_back<T: Scalar>(
    result: &ReductionResult<T>,
    allocation: &Allocation,
    payments: &PaymentVector<T>,
) -> Result<(Allocation, PaymentVector<T>)> {
    let (m, n) = (result.original_machines(), result.original_jobs());
    result.reduced.check_allocation(allocation)?;
    result.reduced.check_payments(payments)?;
    if allocation.machine_of(n) != m {
        return Err(Error::InvalidParameter(format!(
            "extra job {} must sit on extra machine {}",
            n + 1,
            m + 1
        )));
    }
    if let Some(j) = (0..n).find(|&j| allocation.machine_of(j) == m) {
        return Err(Error::InvalidParameter(format!(
            "job {} is on the extra machine",
            j + 1
        )));
    }
    let restricted = Allocation::new(m, allocation.assignment()[..n].to_vec())?;
    let scaled = (0..m).map(|i| payments[i].clone() / &result.eta).collect();
    Ok((restricted, PaymentVector::new(scaled)))
}
