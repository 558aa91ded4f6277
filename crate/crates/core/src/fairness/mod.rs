//! Fairness and efficiency notions for allocations with payments.
//!
//! Chores use costs and disutility `c_i(A_i) - p_i`; goods use values and
//! utility `v_i(A_i) - q_i`, with every inequality reversed. Goods checks are
//! evaluated directly on the nonnegative value matrix rather than by negating
//! it.
//!
//! Two characterizations tie the checks together:
//!
//! * an allocation admits proportional payments iff it is mean-efficient,
//!   and [`proportional_payments`] are such payments;
//! * an allocation admits `α`-envy-free payments iff it is `α`-locally
//!   efficient, and [`heaviest_path_payments`] are such payments.
//!
//! Local efficiency is implemented in the subset-permutation form for every
//! `α`; at `α = 1` it coincides with the full-permutation definition because a
//! permutation of a subset extends by the identity.

mod graph;

pub use graph::{EnvyGraph, ImprovementGraph};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{cross_costs, machine_loads, Allocation, Instance, Kind, PaymentVector};
use crate::scalar::{in_half_open_unit, sum_of, Scalar};

/// Default largest machine count accepted by [`local_efficiency_bruteforce`].
pub const DEFAULT_BRUTE_FORCE_MACHINES: usize = 8;

/// Chores: `sum_i c_i(A_i) <= (1/m) sum_i c_i([n])`.
/// Goods: `sum_i v_i(A_i) >= (1/m) sum_i v_i([n])`.
pub fn is_mean_efficient<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<bool> {
    let total = sum_of(&machine_loads(instance, allocation)?);
    let share = instance.mean_share();
    Ok(match instance.kind() {
        Kind::Chores => total <= share,
        Kind::Goods => total >= share,
    })
}

/// `p_i = c_i(A_i) - (1/m) c_i([n])` (the same formula gives goods transfers).
pub fn proportional_payments<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
) -> Result<PaymentVector<T>> {
    let loads = machine_loads(instance, allocation)?;
    let m = T::from_count(instance.machines());
    Ok(PaymentVector::new(
        loads
            .into_iter()
            .enumerate()
            .map(|(i, load)| load - instance.row_sum(i) / m.clone())
            .collect(),
    ))
}

/// Per-machine proportionality: `c_i(A_i) - p_i <= (1/m) sum_j (c_i(A_j) - p_j)`
/// for chores, `>=` for goods.
pub fn is_proportional<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
    payments: &PaymentVector<T>,
) -> Result<bool> {
    instance.check_payments(payments)?;
    let cross = cross_costs(instance, allocation)?;
    let m = T::from_count(instance.machines());
    let payment_total = payments.total();
    Ok(cross.iter().enumerate().all(|(i, row)| {
        // multiply through by m to stay division-free
        let own = (row[i].clone() - &payments[i]) * &m;
        let all = sum_of(row) - &payment_total;
        match instance.kind() {
            Kind::Chores => own <= all,
            Kind::Goods => own >= all,
        }
    }))
}

fn check_alpha<T: Scalar>(alpha: &T) -> Result<()> {
    if in_half_open_unit(alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )))
    }
}

/// `α c_i(A_i) - p_i <= c_i(A_j) - p_j` for every ordered pair `i != j`.
pub fn is_alpha_envy_free<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
    payments: &PaymentVector<T>,
    alpha: &T,
) -> Result<bool> {
    check_alpha(alpha)?;
    instance.require_kind(Kind::Chores)?;
    instance.check_payments(payments)?;
    let cross = cross_costs(instance, allocation)?;
    let m = instance.machines();
    Ok((0..m).all(|i| {
        let lhs = alpha.clone() * &cross[i][i] - &payments[i];
        (0..m)
            .filter(|&j| j != i)
            .all(|j| lhs <= cross[i][j].clone() - &payments[j])
    }))
}

/// `α c_i(A_i) - p_i <= c_i(A_{i-1}) - p_{i-1}` for every machine, with the
/// predecessor of the first machine being the last.
pub fn is_cyclic_envy_free<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
    payments: &PaymentVector<T>,
    alpha: &T,
) -> Result<bool> {
    check_alpha(alpha)?;
    instance.require_kind(Kind::Chores)?;
    instance.check_payments(payments)?;
    let cross = cross_costs(instance, allocation)?;
    let m = instance.machines();
    Ok((0..m).all(|i| {
        let pred = (i + m - 1) % m;
        alpha.clone() * &cross[i][i] - &payments[i] <= cross[i][pred].clone() - &payments[pred]
    }))
}

/// No positive-weight cycle in the [`EnvyGraph`] at this `α`.
pub fn is_alpha_locally_efficient<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
    alpha: &T,
) -> Result<bool> {
    check_alpha(alpha)?;
    instance.require_kind(Kind::Chores)?;
    let graph = EnvyGraph::new(instance, allocation, alpha)?;
    Ok(graph.heaviest_paths().is_ok())
}

/// Literal check of `α sum_{i in S} c_i(A_i) <= sum_{i in S} c_i(A_{π(i)})`
/// over every subset `S` and permutation `π` of `S`. Exponential; refuses
/// instances with more than `max_machines` machines.
pub fn local_efficiency_bruteforce<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
    alpha: &T,
    max_machines: usize,
) -> Result<bool> {
    check_alpha(alpha)?;
    instance.require_kind(Kind::Chores)?;
    let m = instance.machines();
    if m > max_machines {
        return Err(Error::InvalidParameter(format!(
            "brute-force local efficiency limited to {max_machines} machines, got {m}"
        )));
    }
    let cross = cross_costs(instance, allocation)?;
    for mask in 1u32..(1u32 << m) {
        let subset: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let own = alpha.clone() * sum_of(subset.iter().map(|&i| &cross[i][i]));
        for image in subset.iter().copied().permutations(subset.len()) {
            let permuted = sum_of(subset.iter().zip(&image).map(|(&i, &k)| &cross[i][k]));
            if own > permuted {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Payments `p_i` = weight of the heaviest path from `i` in the envy graph
/// (empty path allowed, so `p_i >= 0`). Fails with
/// [`Error::PositiveCycle`] carrying a witness when the allocation is not
/// `α`-locally efficient.
pub fn heaviest_path_payments<T: Scalar>(
    instance: &Instance<T>,
    allocation: &Allocation,
    alpha: &T,
) -> Result<PaymentVector<T>> {
    check_alpha(alpha)?;
    instance.require_kind(Kind::Chores)?;
    let graph = EnvyGraph::new(instance, allocation, alpha)?;
    graph.heaviest_paths_or_error().map(PaymentVector::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{inst, q, qs};
    use crate::Rational;

    fn alloc(m: usize, labels: &[usize]) -> Allocation {
        Allocation::from_one_based(m, labels).unwrap()
    }

    fn thm2_half() -> Instance {
        inst(&[&[(1, 1), (5, 4)], &[(1, 2), (1, 1)]])
    }

    fn zero2() -> Instance {
        inst(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]])
    }

    fn pv(values: &[(i64, i64)]) -> PaymentVector {
        PaymentVector::new(qs(values))
    }

    #[test]
    fn mean_efficiency_examples() {
        assert!(!is_mean_efficient(&thm2_half(), &alloc(2, &[1, 2])).unwrap());
        assert!(is_mean_efficient(&zero2(), &alloc(2, &[1, 1])).unwrap());
        let id = inst(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert!(is_mean_efficient(&id, &alloc(2, &[2, 1])).unwrap());
        assert!(!is_mean_efficient(&id, &alloc(2, &[1, 2])).unwrap());
    }

    #[test]
    fn proportional_payment_examples() {
        let merged = alloc(2, &[2, 2]);
        assert_eq!(
            proportional_payments(&thm2_half(), &merged).unwrap(),
            pv(&[(-9, 8), (3, 4)])
        );
        assert_eq!(
            proportional_payments(&zero2(), &merged).unwrap(),
            PaymentVector::zeros(2)
        );
        let diag = alloc(2, &[1, 2]);
        let p = proportional_payments(&thm2_half(), &diag).unwrap();
        assert_eq!(p, pv(&[(-1, 8), (1, 4)]));
        assert!(!is_proportional(&thm2_half(), &diag, &p).unwrap());
    }

    #[test]
    fn proportionality_examples() {
        let merged = alloc(2, &[2, 2]);
        assert!(is_proportional(&thm2_half(), &merged, &pv(&[(-9, 8), (3, 4)])).unwrap());
        assert!(is_proportional(&zero2(), &merged, &PaymentVector::zeros(2)).unwrap());
        assert!(matches!(
            is_proportional(&zero2(), &merged, &PaymentVector::zeros(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn non_mean_efficient_allocation_has_no_proportional_payments() {
        // Summing the m inequalities cancels payments, so a small grid of
        // payment vectors must all fail.
        let diag = alloc(2, &[1, 2]);
        for a in -8..=8 {
            for b in -8..=8 {
                let p = pv(&[(a, 4), (b, 4)]);
                assert!(!is_proportional(&thm2_half(), &diag, &p).unwrap());
            }
        }
    }

    #[test]
    fn envy_freeness_examples() {
        let c = inst(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]);
        let one = q(1, 1);
        assert!(is_alpha_envy_free(&c, &alloc(2, &[1, 2]), &PaymentVector::zeros(2), &one).unwrap());
        for a in [q(1, 1), q(1, 3), q(1, 100)] {
            assert!(is_alpha_envy_free(&zero2(), &alloc(2, &[2, 1]), &PaymentVector::zeros(2), &a).unwrap());
        }
        let merged = alloc(2, &[2, 2]);
        assert!(is_alpha_envy_free(&thm2_half(), &merged, &pv(&[(-9, 8), (3, 4)]), &one).unwrap());
        // Flipping the sign of the payments makes machine 1 envy machine 2.
        assert!(!is_alpha_envy_free(&thm2_half(), &merged, &pv(&[(9, 8), (0, 1)]), &one).unwrap());
    }

    #[test]
    fn alpha_range_is_enforced() {
        let a = alloc(2, &[1, 2]);
        let p = PaymentVector::zeros(2);
        for bad in [q(0, 1), q(-1, 2), q(3, 2)] {
            assert!(matches!(
                is_alpha_envy_free(&zero2(), &a, &p, &bad),
                Err(Error::InvalidParameter(_))
            ));
            assert!(is_cyclic_envy_free(&zero2(), &a, &p, &bad).is_err());
            assert!(is_alpha_locally_efficient(&zero2(), &a, &bad).is_err());
            assert!(local_efficiency_bruteforce(&zero2(), &a, &bad, 8).is_err());
            assert!(heaviest_path_payments(&zero2(), &a, &bad).is_err());
        }
    }

    #[test]
    fn cyclic_envy_freeness_examples() {
        let c = inst(&[&[(1, 1), (1, 1)], &[(1, 4), (1, 1)]]);
        assert!(is_cyclic_envy_free(&c, &alloc(2, &[2, 2]), &pv(&[(0, 1), (5, 8)]), &q(1, 2)).unwrap());
        assert!(is_cyclic_envy_free(&zero2(), &alloc(2, &[1, 1]), &PaymentVector::zeros(2), &q(1, 4)).unwrap());
        // envy-free at alpha=1 implies cyclic envy-free
        let d = inst(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]);
        assert!(is_cyclic_envy_free(&d, &alloc(2, &[1, 2]), &PaymentVector::zeros(2), &q(1, 1)).unwrap());
    }

    #[test]
    fn local_efficiency_examples() {
        let good = inst(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]);
        let bad = inst(&[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]);
        let diag = alloc(2, &[1, 2]);
        let one = q(1, 1);
        assert!(is_alpha_locally_efficient(&good, &diag, &one).unwrap());
        assert!(!is_alpha_locally_efficient(&bad, &diag, &one).unwrap());
        assert!(local_efficiency_bruteforce(&good, &diag, &one, 8).unwrap());
        assert!(!local_efficiency_bruteforce(&bad, &diag, &one, 8).unwrap());
        // the bad allocation becomes efficient once alpha <= 1/2
        assert!(!is_alpha_locally_efficient(&bad, &diag, &q(3, 4)).unwrap());
        assert!(is_alpha_locally_efficient(&bad, &diag, &q(1, 2)).unwrap());
        assert!(local_efficiency_bruteforce(&bad, &diag, &q(1, 2), 8).unwrap());
    }

    #[test]
    fn brute_force_cap() {
        let c: Instance<Rational> = Instance::chores(vec![vec![q(1, 1); 2]; 3]).unwrap();
        let a = alloc(3, &[1, 2]);
        assert!(local_efficiency_bruteforce(&c, &a, &q(1, 1), 2).is_err());
        assert!(local_efficiency_bruteforce(&c, &a, &q(1, 1), 3).unwrap());
    }

    #[test]
    fn heaviest_path_payment_examples() {
        let good = inst(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]);
        let bad = inst(&[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]);
        let diag = alloc(2, &[1, 2]);
        let one = q(1, 1);
        assert_eq!(heaviest_path_payments(&good, &diag, &one).unwrap(), PaymentVector::zeros(2));
        assert_eq!(
            heaviest_path_payments(&zero2(), &alloc(2, &[2, 1]), &q(1, 2)).unwrap(),
            PaymentVector::zeros(2)
        );
        assert_eq!(
            heaviest_path_payments(&bad, &diag, &one),
            Err(Error::PositiveCycle { cycle: vec![0, 1, 0] })
        );
    }

    #[test]
    fn heaviest_path_payments_are_envy_free() {
        // Machine 1 envies machine 2 without payments; the path weights fix it.
        let c = inst(&[&[(3, 1), (2, 1)], &[(5, 1), (1, 1)]]);
        let a = alloc(2, &[1, 2]);
        let one = q(1, 1);
        assert!(!is_alpha_envy_free(&c, &a, &PaymentVector::zeros(2), &one).unwrap());
        let p = heaviest_path_payments(&c, &a, &one).unwrap();
        assert_eq!(p, pv(&[(1, 1), (0, 1)]));
        assert!(p.as_slice().iter().all(|x| *x >= q(0, 1)));
        assert!(is_alpha_envy_free(&c, &a, &p, &one).unwrap());
    }

    #[test]
    fn goods_checks_reverse_direction() {
        let g = crate::testing::goods(&[&[(1, 2), (1, 2)], &[(1, 4), (3, 4)]]);
        let a = alloc(2, &[1, 2]);
        assert!(is_mean_efficient(&g, &a).unwrap());
        let p = proportional_payments(&g, &a).unwrap();
        assert!(is_proportional(&g, &a, &p).unwrap());
        let swapped = alloc(2, &[2, 1]);
        assert!(!is_mean_efficient(&g, &swapped).unwrap());
        assert!(matches!(
            is_alpha_envy_free(&g, &a, &p, &q(1, 1)),
            Err(Error::WrongKind { .. })
        ));
    }
}
