//! Exhaustive ground truth: optimal makespan / egalitarian welfare and the
//! best allocation admitting proportional payments.
//!
//! Allocations are visited in lexicographic order of their assignment vector
//! (job 1 most significant), and a candidate only replaces the incumbent when
//! strictly better, so every witness is the lexicographically smallest optimum.
//! The searches prune with bounds that are valid because entries are
//! nonnegative; [`enumerate_allocations`] is the plain unpruned stream.

use crate::error::{Error, Result};
use crate::fairness::is_mean_efficient;
use crate::model::{Allocation, Instance, Kind};
use crate::scalar::{max_of, min_of, Scalar};

/// Largest number of allocations (`m^n`) an exhaustive search may cover.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// `m^n`, saturating at `u128::MAX`.
pub fn allocation_count(machines: usize, jobs: usize) -> u128 {
    let mut count: u128 = 1;
    for _ in 0..jobs {
        count = count.saturating_mul(machines as u128);
    }
    count
}

pub(crate) fn check_cap(machines: usize, jobs: usize, cap: u64) -> Result<()> {
    let required = allocation_count(machines, jobs);
    if required > cap as u128 {
        Err(Error::CapExceeded { required, cap })
    } else {
        Ok(())
    }
}

/// Streams all `m^n` allocations in lexicographic order.
#[derive(Debug, Clone)]
pub struct AllocationIter {
    machines: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllocationIter {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.machines {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(Allocation::new(self.machines, current).expect("digits stay below machine count"))
    }
}

pub fn enumerate_allocations(machines: usize, jobs: usize, cap: u64) -> Result<AllocationIter> {
    if machines == 0 {
        return Err(Error::InvalidParameter("need at least one machine".into()));
    }
    check_cap(machines, jobs, cap)?;
    Ok(AllocationIter {
        machines,
        next: Some(vec![0; jobs]),
    })
}

/// Results of one full pass over every allocation of an instance.
///
/// For chores `opt` is the minimum makespan and `best_proportionable` the
/// minimum makespan over mean-efficient allocations (so `opt <= best`). For
/// goods both are maxima of the egalitarian welfare (so `opt >= best`).
#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationReport<T: Scalar> {
    pub instance: Instance<T>,
    pub opt: T,
    pub best_proportionable: Option<T>,
    pub count_enumerated: u64,
}

pub fn enumeration_report<T: Scalar>(instance: &Instance<T>, cap: u64) -> Result<EnumerationReport<T>> {
    let mut opt: Option<T> = None;
    let mut best: Option<T> = None;
    let mut count = 0u64;
    for allocation in enumerate_allocations(instance.machines(), instance.jobs(), cap)? {
        count += 1;
        let loads = crate::model::machine_loads(instance, &allocation)?;
        let objective = match instance.kind() {
            Kind::Chores => max_of(&loads),
            Kind::Goods => min_of(&loads),
        };
        let better = |incumbent: &Option<T>| match (incumbent, instance.kind()) {
            (None, _) => true,
            (Some(b), Kind::Chores) => objective < *b,
            (Some(b), Kind::Goods) => objective > *b,
        };
        if better(&opt) {
            opt = Some(objective.clone());
        }
        if better(&best) && is_mean_efficient(instance, &allocation)? {
            best = Some(objective);
        }
    }
    Ok(EnumerationReport {
        instance: instance.clone(),
        opt: opt.expect("at least one allocation"),
        best_proportionable: best,
        count_enumerated: count,
    })
}

/// What the depth-first search optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Goal {
    /// Break objective ties by total cost (chores: smaller, goods: larger).
    pub by_total: bool,
    /// Only accept mean-efficient allocations.
    pub mean_efficient: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Best<T> {
    pub objective: T,
    pub total: T,
    pub assignment: Vec<usize>,
}

struct Search<'a, T: Scalar> {
    instance: &'a Instance<T>,
    goal: Goal,
    kind: Kind,
    share: T,
    /// `rest_extreme[d]`: sum over jobs `>= d` of the cheapest (chores) or
    /// most valuable (goods) entry in the job's column.
    rest_extreme: Vec<T>,
    /// `rest_row[d][i]`: sum over jobs `>= d` of row `i` (goods bound).
    rest_row: Vec<Vec<T>>,
    loads: Vec<T>,
    total: T,
    assignment: Vec<usize>,
    best: Option<Best<T>>,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(instance: &'a Instance<T>, goal: Goal) -> Self {
        let (m, n) = (instance.machines(), instance.jobs());
        let kind = instance.kind();
        let mut rest_extreme = vec![T::zero(); n + 1];
        let mut rest_row = vec![vec![T::zero(); m]; n + 1];
        for j in (0..n).rev() {
            let column: Vec<T> = (0..m).map(|i| instance.cost(i, j).clone()).collect();
            let pick = match kind {
                Kind::Chores => min_of(&column),
                Kind::Goods => max_of(&column),
            };
            rest_extreme[j] = rest_extreme[j + 1].clone() + pick;
            for i in 0..m {
                rest_row[j][i] = rest_row[j + 1][i].clone() + &column[i];
            }
        }
        Search {
            instance,
            goal,
            kind,
            share: instance.mean_share(),
            rest_extreme,
            rest_row,
            loads: vec![T::zero(); m],
            total: T::zero(),
            assignment: vec![0; n],
            best: None,
        }
    }

    fn prune(&self, depth: usize) -> bool {
        let total_bound = self.total.clone() + &self.rest_extreme[depth];
        match self.kind {
            Kind::Chores => {
                if self.goal.mean_efficient && total_bound > self.share {
                    return true;
                }
                let Some(best) = &self.best else { return false };
                let peak = max_of(&self.loads);
                peak > best.objective
                    || (peak == best.objective && (!self.goal.by_total || total_bound >= best.total))
            }
            Kind::Goods => {
                if self.goal.mean_efficient && total_bound < self.share {
                    return true;
                }
                let Some(best) = &self.best else { return false };
                let floor = min_of(
                    &self
                        .loads
                        .iter()
                        .zip(&self.rest_row[depth])
                        .map(|(l, r)| l.clone() + r)
                        .collect::<Vec<_>>(),
                );
                floor < best.objective
                    || (floor == best.objective && (!self.goal.by_total || total_bound <= best.total))
            }
        }
    }

    fn leaf(&mut self) {
        let feasible = match self.kind {
            Kind::Chores => self.total <= self.share,
            Kind::Goods => self.total >= self.share,
        };
        if self.goal.mean_efficient && !feasible {
            return;
        }
        let objective = match self.kind {
            Kind::Chores => max_of(&self.loads),
            Kind::Goods => min_of(&self.loads),
        };
        let better = match &self.best {
            None => true,
            Some(best) => match self.kind {
                Kind::Chores => {
                    objective < best.objective
                        || (self.goal.by_total && objective == best.objective && self.total < best.total)
                }
                Kind::Goods => {
                    objective > best.objective
                        || (self.goal.by_total && objective == best.objective && self.total > best.total)
                }
            },
        };
        if better {
            self.best = Some(Best {
                objective,
                total: self.total.clone(),
                assignment: self.assignment.clone(),
            });
        }
    }

    fn run(&mut self, depth: usize) {
        if depth == self.instance.jobs() {
            self.leaf();
            return;
        }
        if self.prune(depth) {
            return;
        }
        let instance = self.instance;
        for i in 0..instance.machines() {
            let c = instance.cost(i, depth);
            self.loads[i] += c;
            self.total += c;
            self.assignment[depth] = i;
            self.run(depth + 1);
            self.loads[i] -= c;
            self.total -= c;
        }
    }
}

pub(crate) fn search<T: Scalar>(instance: &Instance<T>, goal: Goal, cap: u64) -> Result<Option<(Best<T>, Allocation)>> {
    check_cap(instance.machines(), instance.jobs(), cap)?;
    let mut s = Search::new(instance, goal);
    s.run(0);
    Ok(s.best.map(|best| {
        let allocation = Allocation::new(instance.machines(), best.assignment.clone())
            .expect("search assignments are in range");
        (best, allocation)
    }))
}

/// `OPT(c) = min_X max_i c_i(X_i)` for chores, `OPT(v) = max_X min_i v_i(X_i)`
/// for goods, with the lexicographically smallest witness.
pub fn brute_force_opt<T: Scalar>(instance: &Instance<T>, cap: u64) -> Result<(T, Allocation)> {
    let goal = Goal {
        by_total: false,
        mean_efficient: false,
    };
    let (best, allocation) = search(instance, goal, cap)?.expect("some allocation exists");
    Ok((best.objective, allocation))
}

/// Best objective over mean-efficient (equivalently, proportionable)
/// allocations, with witness. `None` would mean no allocation is
/// mean-efficient, which cannot happen for a valid instance.
pub fn best_proportionable<T: Scalar>(instance: &Instance<T>, cap: u64) -> Result<Option<(T, Allocation)>> {
    let goal = Goal {
        by_total: false,
        mean_efficient: true,
    };
    Ok(search(instance, goal, cap)?.map(|(best, allocation)| (best.objective, allocation)))
}

/// Minimum makespan over mean-efficient allocations.
pub fn best_proportionable_makespan<T: Scalar>(instance: &Instance<T>, cap: u64) -> Result<Option<T>> {
    instance.require_kind(Kind::Chores)?;
    Ok(best_proportionable(instance, cap)?.map(|(value, _)| value))
}

/// Maximum egalitarian welfare over goods-mean-efficient allocations.
pub fn best_proportionable_welfare<T: Scalar>(instance: &Instance<T>, cap: u64) -> Result<Option<T>> {
    instance.require_kind(Kind::Goods)?;
    Ok(best_proportionable(instance, cap)?.map(|(value, _)| value))
}
