//! Instances, allocations, payments and the elementary cost aggregates.
//!
//! Machines and jobs are 0-based in the API. Text and file formats use
//! 1-based labels; see [`Allocation::from_one_based`] and
//! [`Allocation::to_one_based`].

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{max_of, sum_of, Scalar};
use crate::Rational;

/// Whether matrix entries are costs (chores, jobs) or values (goods).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Chores,
    Goods,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Chores => "chores",
            Kind::Goods => "goods",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chores" => Ok(Kind::Chores),
            "goods" => Ok(Kind::Goods),
            other => Err(Error::Parse(format!(
                "unknown kind {other:?} (expected \"chores\" or \"goods\")"
            ))),
        }
    }
}

/// An `m x n` matrix of nonnegative costs (or values, for goods) with at
/// least two machines and two jobs.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T = Rational> {
    kind: Kind,
    costs: Vec<Vec<T>>,
}

impl<T: Scalar> Instance<T> {
    pub fn new(kind: Kind, costs: Vec<Vec<T>>) -> Result<Self> {
        let m = costs.len();
        if m < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least two machines, got {m}"
            )));
        }
        let n = costs[0].len();
        if n < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least two jobs, got {n}"
            )));
        }
        for (i, row) in costs.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|c| c.is_negative()) {
                return Err(Error::InvalidInstance(format!(
                    "entry ({}, {}) is negative: {}",
                    i + 1,
                    j + 1,
                    row[j]
                )));
            }
        }
        Ok(Instance { kind, costs })
    }

    pub fn chores(costs: Vec<Vec<T>>) -> Result<Self> {
        Self::new(Kind::Chores, costs)
    }

    pub fn goods(values: Vec<Vec<T>>) -> Result<Self> {
        Self::new(Kind::Goods, values)
    }

    /// Builds an instance from `(numer, denom)` pairs.
    pub fn from_ratios(kind: Kind, entries: &[&[(i64, i64)]]) -> Result<Self> {
        let costs = entries
            .iter()
            .map(|row| row.iter().map(|&(p, q)| T::from_ratio(p, q)).collect())
            .collect();
        Self::new(kind, costs)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn machines(&self) -> usize {
        self.costs.len()
    }

    pub fn jobs(&self) -> usize {
        self.costs[0].len()
    }

    pub fn cost(&self, machine: usize, job: usize) -> &T {
        &self.costs[machine][job]
    }

    pub fn row(&self, machine: usize) -> &[T] {
        &self.costs[machine]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.costs
    }

    /// `c_i([n])`.
    pub fn row_sum(&self, machine: usize) -> T {
        sum_of(&self.costs[machine])
    }

    /// Sum of every entry of the matrix.
    pub fn grand_total(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.machines() {
            acc += self.row_sum(i);
        }
        acc
    }

    /// `(1/m) * sum_i c_i([n])`, the mean-efficiency threshold.
    pub fn mean_share(&self) -> T {
        self.grand_total() / T::from_count(self.machines())
    }

    pub(crate) fn require_kind(&self, expected: Kind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected,
                found: self.kind,
            })
        }
    }

    pub(crate) fn check_allocation(&self, allocation: &Allocation) -> Result<()> {
        if allocation.machines() != self.machines() || allocation.jobs() != self.jobs() {
            return Err(Error::DimensionMismatch(format!(
                "allocation is {}x{}, instance is {}x{}",
                allocation.machines(),
                allocation.jobs(),
                self.machines(),
                self.jobs()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_payments(&self, payments: &PaymentVector<T>) -> Result<()> {
        if payments.len() != self.machines() {
            return Err(Error::DimensionMismatch(format!(
                "{} payments for {} machines",
                payments.len(),
                self.machines()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_machine(&self, machine: usize) -> Result<()> {
        if machine >= self.machines() {
            return Err(Error::IndexOutOfRange {
                what: "machine",
                index: machine,
                limit: self.machines(),
            });
        }
        Ok(())
    }
}

/// Assignment of every job to exactly one machine. Bundles may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    machines: usize,
    assignment: Vec<usize>,
}

impl Allocation {
    /// `assignment[j]` is the (0-based) machine that receives job `j`.
    pub fn new(machines: usize, assignment: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = assignment.iter().find(|&&i| i >= machines) {
            return Err(Error::IndexOutOfRange {
                what: "machine",
                index: bad,
                limit: machines,
            });
        }
        Ok(Allocation {
            machines,
            assignment,
        })
    }

    /// Accepts 1-based machine labels, as used in files and on the command line.
    pub fn from_one_based(machines: usize, labels: &[usize]) -> Result<Self> {
        let assignment = labels
            .iter()
            .map(|&l| {
                if l == 0 || l > machines {
                    Err(Error::IndexOutOfRange {
                        what: "machine label",
                        index: l,
                        limit: machines,
                    })
                } else {
                    Ok(l - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Allocation {
            machines,
            assignment,
        })
    }

    /// Builds an allocation from explicit (0-based) bundles; every job in
    /// `0..jobs` must appear in exactly one bundle.
    pub fn from_bundles(jobs: usize, bundles: &[Vec<usize>]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; jobs];
        for (i, bundle) in bundles.iter().enumerate() {
            for &j in bundle {
                if j >= jobs {
                    return Err(Error::IndexOutOfRange {
                        what: "job",
                        index: j,
                        limit: jobs,
                    });
                }
                if assignment[j] != usize::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "job {} appears in more than one bundle",
                        j + 1
                    )));
                }
                assignment[j] = i;
            }
        }
        if let Some(j) = assignment.iter().position(|&i| i == usize::MAX) {
            return Err(Error::InvalidParameter(format!(
                "job {} is not allocated",
                j + 1
            )));
        }
        Ok(Allocation {
            machines: bundles.len(),
            assignment,
        })
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn jobs(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn machine_of(&self, job: usize) -> usize {
        self.assignment[job]
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.assignment.iter().map(|i| i + 1).collect()
    }

    /// Jobs held by `machine`, in increasing order.
    pub fn bundle(&self, machine: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &i)| i == machine)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn bundles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.machines];
        for (j, &i) in self.assignment.iter().enumerate() {
            out[i].push(j);
        }
        out
    }
}

impl fmt::Display for Allocation {
    /// 1-based bundle notation, e.g. `(∅, {1,2})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, bundle) in self.bundles().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if bundle.is_empty() {
                f.write_str("∅")?;
            } else {
                let labels: Vec<String> = bundle.iter().map(|j| (j + 1).to_string()).collect();
                write!(f, "{{{}}}", labels.join(","))?;
            }
        }
        f.write_str(")")
    }
}

/// One payment per machine (may be negative). For goods these are the
/// agents' transfers.
#[derive(Debug, Clone, PartialEq)]
pub struct PaymentVector<T = Rational>(Vec<T>);

impl<T: Scalar> PaymentVector<T> {
    pub fn new(payments: Vec<T>) -> Self {
        PaymentVector(payments)
    }

    pub fn zeros(machines: usize) -> Self {
        PaymentVector(vec![T::zero(); machines])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn total(&self) -> T {
        sum_of(&self.0)
    }
}

impl<T> Index<usize> for PaymentVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

/// Which mechanism produced an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MechanismSource {
    AntiDiagonal,
    Cyclic,
    NormalizedOptimal,
    External,
}

impl MechanismSource {
    pub fn as_str(self) -> &'static str {
        match self {
            MechanismSource::AntiDiagonal => "anti_diagonal",
            MechanismSource::Cyclic => "cyclic",
            MechanismSource::NormalizedOptimal => "normalized_optimal",
            MechanismSource::External => "external",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MechanismOutcome<T = Rational> {
    pub allocation: Allocation,
    pub payments: PaymentVector<T>,
    pub source: MechanismSource,
}

impl<T: Scalar> MechanismOutcome<T> {
    pub fn new(
        allocation: Allocation,
        payments: PaymentVector<T>,
        source: MechanismSource,
    ) -> Result<Self> {
        if payments.len() != allocation.machines() {
            return Err(Error::DimensionMismatch(format!(
                "{} payments for {} machines",
                payments.len(),
                allocation.machines()
            )));
        }
        Ok(MechanismOutcome {
            allocation,
            payments,
            source,
        })
    }
}

/// `c_i(S)`; zero for the empty set.
pub fn bundle_cost<T: Scalar>(instance: &Instance<T>, machine: usize, jobs: &[usize]) -> Result<T> {
    instance.check_machine(machine)?;
    let mut acc = T::zero();
    for &j in jobs {
        if j >= instance.jobs() {
            return Err(Error::IndexOutOfRange {
                what: "job",
                index: j,
                limit: instance.jobs(),
            });
        }
        acc += instance.cost(machine, j);
    }
    Ok(acc)
}

/// `c_i(A_i)` for every machine.
pub fn machine_loads<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<Vec<T>> {
    instance.check_allocation(allocation)?;
    let mut loads = vec![T::zero(); instance.machines()];
    for (j, &i) in allocation.assignment().iter().enumerate() {
        loads[i] += instance.cost(i, j);
    }
    Ok(loads)
}

/// `cross[i][k] = c_i(A_k)`: what machine `i` would pay for bundle `k`.
pub fn cross_costs<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<Vec<Vec<T>>> {
    instance.check_allocation(allocation)?;
    let m = instance.machines();
    let mut cross = vec![vec![T::zero(); m]; m];
    for (j, &k) in allocation.assignment().iter().enumerate() {
        for (i, row) in cross.iter_mut().enumerate() {
            row[k] += instance.cost(i, j);
        }
    }
    Ok(cross)
}

/// `max_i c_i(A_i)`. Chores only; goods use
/// [`egalitarian_welfare`](crate::goods::egalitarian_welfare).
pub fn makespan<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<T> {
    instance.require_kind(Kind::Chores)?;
    Ok(max_of(&machine_loads(instance, allocation)?))
}

/// `sum_i c_i(A_i)` (total value for goods).
pub fn total_cost<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<T> {
    Ok(sum_of(&machine_loads(instance, allocation)?))
}

/// The common row sum `C`, if every machine's total over all jobs agrees.
pub fn normalization_factor<T: Scalar>(instance: &Instance<T>) -> Option<T> {
    let first = instance.row_sum(0);
    (1..instance.machines())
        .all(|i| instance.row_sum(i) == first)
        .then_some(first)
}
