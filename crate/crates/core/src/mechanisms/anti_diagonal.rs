use crate::error::Result;
use crate::fairness::proportional_payments;
use crate::model::{Allocation, Instance, Kind, MechanismOutcome, MechanismSource};
use crate::scalar::{max_of, sum_of, Scalar};
use crate::Rational;

/// Record of one run of [`anti_diagonal_mechanism`]. All indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiDiagonalTrace<T = Rational> {
    pub chosen_k: usize,
    /// `(i, j)` pairs whose bundles were exchanged, in execution order.
    pub swaps: Vec<(usize, usize)>,
    /// `(i, j)`: bundle `A_j` was merged into `A_i`.
    pub merges: Vec<(usize, usize)>,
    /// `M = max_l c_l(B_l)`.
    pub initial_makespan: T,
    /// For each machine, the indices of the input bundles it ends up with.
    pub sources: Vec<Vec<usize>>,
}

/// Partner of machine `i` under rotation `k`: `(k + m - 1 - i) mod m`.
pub fn anti_diagonal_partner(machines: usize, i: usize, k: usize) -> usize {
    (k + machines - 1 - i) % machines
}

fn bundle_set_cost<T: Scalar>(bcost: &[Vec<T>], i: usize, tokens: &[usize]) -> T {
    sum_of(tokens.iter().map(|&t| &bcost[i][t]))
}

/// Starts from the anti-diagonal rotation of `base` with the smallest total
/// cost and improves it by pairwise swaps and bounded merges. The result is
/// mean-efficient, comes with proportional payments, and has makespan at most
/// `3/2 · max_l c_l(B_l)`.
pub fn anti_diagonal_mechanism<T: Scalar>(
    instance: &Instance<T>,
    base: &Allocation,
) -> Result<(MechanismOutcome<T>, AntiDiagonalTrace<T>)> {
    instance.require_kind(Kind::Chores)?;
    instance.check_allocation(base)?;
    let m = instance.machines();
    let b_bundles = base.bundles();
    // bcost[i][l] = c_i(B_l)
    let bcost: Vec<Vec<T>> = (0..m)
        .map(|i| {
            b_bundles
                .iter()
                .map(|bundle| sum_of(bundle.iter().map(|&j| instance.cost(i, j))))
                .collect()
        })
        .collect();
    let initial_makespan = max_of((0..m).map(|l| &bcost[l][l]));

    let mut chosen_k = 0;
    let mut best_total: Option<T> = None;
    for k in 0..m {
        let total = sum_of((0..m).map(|i| &bcost[i][anti_diagonal_partner(m, i, k)]));
        if best_total.as_ref().is_none_or(|b| total < *b) {
            best_total = Some(total);
            chosen_k = k;
        }
    }

    let mut held: Vec<Vec<usize>> = (0..m).map(|i| vec![anti_diagonal_partner(m, i, chosen_k)]).collect();
    let cost = |held: &Vec<Vec<usize>>, i: usize, slot: usize| bundle_set_cost(&bcost, i, &held[slot]);
    let total_of = |held: &Vec<Vec<usize>>| {
        let mut acc = T::zero();
        for i in 0..m {
            acc += cost(held, i, i);
        }
        acc
    };
    debug_assert!(total_of(&held) * T::from_count(m) <= instance.grand_total());

    let bound = T::from_ratio(3, 2) * &initial_makespan;
    let mut swaps = Vec::new();
    let mut merges = Vec::new();
    for i in 0..m {
        let j = anti_diagonal_partner(m, i, chosen_k);
        let before = total_of(&held);
        if cost(&held, i, j) + cost(&held, j, i) < cost(&held, i, i) + cost(&held, j, j) {
            debug_assert_ne!(i, j);
            held.swap(i, j);
            swaps.push((i, j));
        }
        let own = cost(&held, i, i);
        let other = cost(&held, i, j);
        if other < cost(&held, j, j) && own + &other <= bound {
            debug_assert_ne!(i, j);
            let moved = std::mem::take(&mut held[j]);
            held[i].extend(moved);
            merges.push((i, j));
        }
        debug_assert!(total_of(&held) <= before);
    }

    let mut assignment = vec![0; instance.jobs()];
    for (machine, tokens) in held.iter_mut().enumerate() {
        tokens.sort_unstable();
        for &t in tokens.iter() {
            for &job in &b_bundles[t] {
                assignment[job] = machine;
            }
        }
    }
    let allocation = Allocation::new(m, assignment)?;
    let payments = proportional_payments(instance, &allocation)?;
    let outcome = MechanismOutcome::new(allocation, payments, MechanismSource::AntiDiagonal)?;
    let trace = AntiDiagonalTrace {
        chosen_k,
        swaps,
        merges,
        initial_makespan,
        sources: held,
    };
    Ok((outcome, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fairness::{is_mean_efficient, is_proportional};
    use crate::model::{makespan, PaymentVector};
    use crate::oracles::{brute_force_opt, DEFAULT_ENUM_CAP};
    use crate::testing::{goods, inst, q, qs};
    use proptest::prelude::*;

    #[test]
    fn partner_is_an_involution() {
        for m in 1..7 {
            for k in 0..m {
                for i in 0..m {
                    let j = anti_diagonal_partner(m, i, k);
                    assert!(j < m);
                    assert_eq!(anti_diagonal_partner(m, j, k), i);
                }
            }
        }
        // 1-based: j = m - i + k; m=3, k=1, i=1 -> 3
        assert_eq!(anti_diagonal_partner(3, 0, 0), 2);
    }

    #[test]
    fn hand_traced_example() {
        let c = inst(&[&[(1, 1), (5, 4)], &[(1, 2), (1, 1)]]);
        let b = Allocation::from_one_based(2, &[1, 2]).unwrap();
        let (out, trace) = anti_diagonal_mechanism(&c, &b).unwrap();
        assert_eq!(trace.chosen_k, 0);
        assert!(trace.swaps.is_empty());
        assert_eq!(trace.merges, vec![(1, 0)]);
        assert_eq!(trace.initial_makespan, q(1, 1));
        assert_eq!(out.allocation.to_one_based(), vec![2, 2]);
        assert_eq!(makespan(&c, &out.allocation).unwrap(), q(3, 2));
        assert_eq!(out.payments, PaymentVector::new(qs(&[(-9, 8), (3, 4)])));
        assert_eq!(out.source, MechanismSource::AntiDiagonal);
        assert!(is_mean_efficient(&c, &out.allocation).unwrap());
        assert!(is_proportional(&c, &out.allocation, &out.payments).unwrap());
    }

    #[test]
    fn swap_branch() {
        // every rotation costs 19; k=0 pairs machines 1 and 3, which then swap
        let c = inst(&[&[(1, 1), (9, 1), (9, 1)], &[(9, 1), (1, 1), (9, 1)], &[(9, 1), (9, 1), (1, 1)]]);
        let b = Allocation::from_one_based(3, &[1, 2, 3]).unwrap();
        let (out, trace) = anti_diagonal_mechanism(&c, &b).unwrap();
        assert_eq!(trace.chosen_k, 0);
        assert_eq!(trace.swaps, vec![(0, 2)]);
        assert!(trace.merges.is_empty());
        assert_eq!(out.allocation.to_one_based(), vec![1, 2, 3]);

        let c = inst(&[&[(1, 1), (2, 1), (3, 1)], &[(2, 1), (1, 1), (3, 1)], &[(3, 1), (3, 1), (1, 1)]]);
        let b = Allocation::from_one_based(3, &[2, 1, 3]).unwrap();
        let (out, _) = anti_diagonal_mechanism(&c, &b).unwrap();
        assert!(is_mean_efficient(&c, &out.allocation).unwrap());
    }

    #[test]
    fn zero_instance() {
        let c = inst(&[&[(0, 1), (0, 1), (0, 1)], &[(0, 1), (0, 1), (0, 1)]]);
        for labels in [[1, 1, 1], [1, 2, 2], [2, 1, 2]] {
            let b = Allocation::from_one_based(2, &labels).unwrap();
            let (out, trace) = anti_diagonal_mechanism(&c, &b).unwrap();
            assert_eq!(makespan(&c, &out.allocation).unwrap(), q(0, 1));
            assert_eq!(out.payments, PaymentVector::zeros(2));
            assert!(trace.swaps.is_empty() && trace.merges.is_empty());
        }
    }

    #[test]
    fn rejects_goods_and_mismatched_base() {
        let v = goods(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        let b = Allocation::from_one_based(2, &[1, 2]).unwrap();
        assert!(matches!(anti_diagonal_mechanism(&v, &b), Err(Error::WrongKind { .. })));
        let c = inst(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        let wrong = Allocation::from_one_based(3, &[1, 2]).unwrap();
        assert!(matches!(anti_diagonal_mechanism(&c, &wrong), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn generic_over_floats() {
        let c = Instance::chores(vec![vec![1.0, 1.25], vec![0.5, 1.0]]).unwrap();
        let b = Allocation::from_one_based(2, &[1, 2]).unwrap();
        let (out, _) = anti_diagonal_mechanism(&c, &b).unwrap();
        assert_eq!(out.allocation.to_one_based(), vec![2, 2]);
        assert!((out.payments[0] + 1.125_f64).abs() < 1e-12);
    }

    fn matrix(m: usize, n: usize) -> impl Strategy<Value = Instance> {
        prop::collection::vec(0i64..=12, m * n).prop_map(move |v| {
            inst_from(m, n, &v)
        })
    }

    fn inst_from(m: usize, n: usize, v: &[i64]) -> Instance {
        Instance::chores((0..m).map(|i| (0..n).map(|j| q(v[i * n + j], 4)).collect()).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn guarantees_hold_for_any_base(
            (c, labels) in (2usize..=4, 2usize..=5).prop_flat_map(|(m, n)| {
                (matrix(m, n), prop::collection::vec(1..=m, n))
            })
        ) {
            let m = c.machines();
            let b = Allocation::from_one_based(m, &labels).unwrap();
            let (out, trace) = anti_diagonal_mechanism(&c, &b).unwrap();
            prop_assert!(is_mean_efficient(&c, &out.allocation).unwrap());
            prop_assert!(is_proportional(&c, &out.allocation, &out.payments).unwrap());
            prop_assert!(makespan(&c, &out.allocation).unwrap() <= q(3, 2) * &trace.initial_makespan);
            prop_assert_eq!(trace.initial_makespan.clone(), makespan(&c, &b).unwrap());
            for (l, src) in trace.sources.iter().enumerate() {
                let h = anti_diagonal_partner(m, l, trace.chosen_k);
                prop_assert!(src.iter().all(|&t| t == l || t == h));
            }
            for &(i, j) in trace.swaps.iter().chain(&trace.merges) {
                prop_assert_eq!(j, anti_diagonal_partner(m, i, trace.chosen_k));
            }
        }

        #[test]
        fn within_three_halves_of_opt(c in (2usize..=3, 2usize..=5).prop_flat_map(|(m, n)| matrix(m, n))) {
            let (opt, b) = brute_force_opt(&c, DEFAULT_ENUM_CAP).unwrap();
            let (out, _) = anti_diagonal_mechanism(&c, &b).unwrap();
            prop_assert!(makespan(&c, &out.allocation).unwrap() <= q(3, 2) * opt);
        }
    }
}
