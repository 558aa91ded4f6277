use crate::error::{Error, Result};
use crate::model::{machine_loads, Allocation, Instance, Kind, MechanismOutcome, MechanismSource, PaymentVector};
use crate::scalar::{in_open_unit, sum_of, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicTrace {
    /// `(token, from, to)` in execution order, 0-based.
    pub moves: Vec<(usize, usize, usize)>,
    /// Number of moves made by each input bundle.
    pub moves_per_token: Vec<usize>,
    /// Final machine of each input bundle.
    pub positions: Vec<usize>,
}

pub fn cyclic_mechanism<T: Scalar>(
    instance: &Instance<T>,
    base: &Allocation,
    eps: &T,
) -> Result<MechanismOutcome<T>> {
    cyclic_mechanism_traced(instance, base, eps).map(|(outcome, _)| outcome)
}

/// Moves input bundles forward around the machine cycle while the next
/// machine is cheaper by a factor below `1 - ε`; machine `i` is then paid
/// `(1 - ε) c_i(A_i)`.
///
/// The scan visits machines in ascending order, then bundles in ascending
/// order, and restarts after every move.
pub fn cyclic_mechanism_traced<T: Scalar>(
    instance: &Instance<T>,
    base: &Allocation,
    eps: &T,
) -> Result<(MechanismOutcome<T>, CyclicTrace)> {
    instance.require_kind(Kind::Chores)?;
    instance.check_allocation(base)?;
    if !in_open_unit(eps) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    let m = instance.machines();
    let keep = T::one() - eps;
    let b_bundles = base.bundles();
    let bcost: Vec<Vec<T>> = (0..m)
        .map(|i| {
            b_bundles
                .iter()
                .map(|bundle| sum_of(bundle.iter().map(|&j| instance.cost(i, j))))
                .collect()
        })
        .collect();

    let mut position: Vec<usize> = (0..m).collect();
    let mut moves = Vec::new();
    let mut moves_per_token = vec![0; m];
    'scan: loop {
        for i in 0..m {
            let pred = (i + m - 1) % m;
            for k in 0..m {
                if position[k] == pred && bcost[i][k] < keep.clone() * &bcost[pred][k] {
                    position[k] = i;
                    moves.push((k, pred, i));
                    moves_per_token[k] += 1;
                    continue 'scan;
                }
            }
        }
        break;
    }

    let assignment = (0..instance.jobs()).map(|j| position[base.machine_of(j)]).collect();
    let allocation = Allocation::new(m, assignment)?;
    let payments = PaymentVector::new(
        machine_loads(instance, &allocation)?
            .into_iter()
            .map(|load| keep.clone() * load)
            .collect(),
    );
    let outcome = MechanismOutcome::new(allocation, payments, MechanismSource::Cyclic)?;
    let trace = CyclicTrace {
        moves,
        moves_per_token,
        positions: position,
    };
    Ok((outcome, trace))
}
