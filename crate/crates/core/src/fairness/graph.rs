//! Weighted envy graph and the improvement graph.

use crate::error::{Error, Result};
use crate::model::{cross_costs, Allocation, Instance};
use crate::scalar::Scalar;

/// Complete digraph on machines with `weight[i][j] = α·c_i(A_i) − c_i(A_j)`.
///
/// A positive-weight directed cycle exists exactly when some rotation of
/// bundles along the cycle lowers the cycle's cost below an `α` fraction,
/// i.e. when the allocation is not `α`-locally efficient.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvyGraph<T> {
    weight: Vec<Vec<T>>,
}

impl<T: Scalar> EnvyGraph<T> {
    pub fn new(instance: &Instance<T>, allocation: &Allocation, alpha: &T) -> Result<Self> {
        let cross = cross_costs(instance, allocation)?;
        Ok(Self::from_cross_costs(&cross, alpha))
    }

    pub(crate) fn from_cross_costs(cross: &[Vec<T>], alpha: &T) -> Self {
        let weight = cross
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let own = alpha.clone() * &row[i];
                row.iter().map(|c| own.clone() - c).collect()
            })
            .collect();
        EnvyGraph { weight }
    }

    pub fn size(&self) -> usize {
        self.weight.len()
    }

    pub fn weight(&self, from: usize, to: usize) -> &T {
        &self.weight[from][to]
    }

    /// Total weight of a closed walk given as `[v0, v1, ..., v0]`.
    pub fn cycle_weight(&self, cycle: &[usize]) -> T {
        let mut acc = T::zero();
        for pair in cycle.windows(2) {
            acc += &self.weight[pair[0]][pair[1]];
        }
        acc
    }

    /// Heaviest path weight starting at each vertex (the empty path counts,
    /// so every entry is `>= 0`).
    ///
    /// Runs `m` rounds of longest-path relaxation. If the last round still
    /// improves some vertex there is a positive cycle, returned as a witness
    /// `[v0, ..., v0]` rotated to start at its smallest vertex.
    pub fn heaviest_paths(&self) -> std::result::Result<Vec<T>, Vec<usize>> {
        let m = self.size();
        let mut best = vec![T::zero(); m];
        let mut next: Vec<Option<usize>> = vec![None; m];
        let mut changed_in_last = Vec::new();
        for _ in 0..m {
            changed_in_last.clear();
            for i in 0..m {
                let mut improved = false;
                for j in 0..m {
                    if i == j {
                        continue;
                    }
                    let candidate = self.weight[i][j].clone() + &best[j];
                    if candidate > best[i] {
                        best[i] = candidate;
                        next[i] = Some(j);
                        improved = true;
                    }
                }
                if improved {
                    changed_in_last.push(i);
                }
            }
            if changed_in_last.is_empty() {
                return Ok(best);
            }
        }
        // After m rounds of walking `next` from a vertex improved in the last
        // round we are inside a cycle of the successor graph.
        let mut v = changed_in_last[0];
        for _ in 0..m {
            v = next[v].expect("improved vertex has a successor");
        }
        let mut cycle = vec![v];
        let mut u = next[v].expect("cycle vertex has a successor");
        while u != v {
            cycle.push(u);
            u = next[u].expect("cycle vertex has a successor");
        }
        let start = cycle
            .iter()
            .enumerate()
            .min_by_key(|&(_, &x)| x)
            .map(|(pos, _)| pos)
            .unwrap_or(0);
        cycle.rotate_left(start);
        cycle.push(cycle[0]);
        debug_assert!(self.cycle_weight(&cycle) > T::zero());
        Err(cycle)
    }

    pub fn find_positive_cycle(&self) -> Option<Vec<usize>> {
        self.heaviest_paths().err()
    }

    pub(crate) fn heaviest_paths_or_error(&self) -> Result<Vec<T>> {
        self.heaviest_paths()
            .map_err(|cycle| Error::PositiveCycle { cycle })
    }
}

/// Edge `(i, j)` whenever machine `j` handles bundle `A_i` strictly more
/// cheaply than `i` does: `c_j(A_i) < c_i(A_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementGraph {
    adjacency: Vec<Vec<usize>>,
}

impl ImprovementGraph {
    pub fn new<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<Self> {
        let cross = cross_costs(instance, allocation)?;
        let m = cross.len();
        let adjacency = (0..m)
            .map(|i| (0..m).filter(|&j| cross[j][i] < cross[i][i]).collect())
            .collect();
        Ok(ImprovementGraph { adjacency })
    }

    pub fn size(&self) -> usize {
        self.adjacency.len()
    }

    pub fn successors(&self, machine: usize) -> &[usize] {
        &self.adjacency[machine]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, succ)| succ.iter().map(move |&j| (i, j)))
            .collect()
    }

    /// Some directed cycle `[v0, ..., v0]`, if any.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let m = self.size();
        let mut mark = vec![Mark::New; m];
        let mut parent = vec![usize::MAX; m];
        for root in 0..m {
            if mark[root] != Mark::New {
                continue;
            }
            // iterative DFS: (vertex, next successor index)
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Open;
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if let Some(&w) = self.adjacency[v].get(*idx) {
                    *idx += 1;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Open;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        Mark::Open => {
                            let mut cycle = vec![v];
                            let mut u = v;
                            while u != w {
                                u = parent[u];
                                cycle.push(u);
                            }
                            cycle.reverse();
                            cycle.push(w);
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Machines with no incoming edge: for every `i`, `c_i(A_i) <= c_j(A_i)`.
    pub fn sinks(&self) -> Vec<usize> {
        let m = self.size();
        let mut has_incoming = vec![false; m];
        for succ in &self.adjacency {
            for &j in succ {
                has_incoming[j] = true;
            }
        }
        (0..m).filter(|&j| !has_incoming[j]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{inst, q};

    #[test]
    fn envy_graph_weights_and_diagonal() {
        let c = inst(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]);
        let a = Allocation::new(2, vec![0, 1]).unwrap();
        let g = EnvyGraph::new(&c, &a, &q(1, 2)).unwrap();
        assert_eq!(*g.weight(0, 1), q(-3, 2));
        assert_eq!(*g.weight(0, 0), q(-1, 2));
        let g1 = EnvyGraph::new(&c, &a, &q(1, 1)).unwrap();
        assert_eq!(*g1.weight(1, 1), q(0, 1));
    }

    #[test]
    fn positive_two_cycle_is_reported_from_smallest_vertex() {
        let c = inst(&[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]);
        let a = Allocation::new(2, vec![0, 1]).unwrap();
        let g = EnvyGraph::new(&c, &a, &q(1, 1)).unwrap();
        assert_eq!(g.find_positive_cycle(), Some(vec![0, 1, 0]));
        assert_eq!(g.cycle_weight(&[0, 1, 0]), q(2, 1));
    }

    #[test]
    fn three_cycle_witness_has_positive_weight() {
        // Rotating bundles 1 -> 2 -> 3 -> 1 saves cost; pairwise swaps do not.
        let c = inst(&[
            &[(5, 1), (9, 1), (1, 1)],
            &[(1, 1), (5, 1), (9, 1)],
            &[(9, 1), (1, 1), (5, 1)],
        ]);
        let a = Allocation::new(3, vec![0, 1, 2]).unwrap();
        let g = EnvyGraph::new(&c, &a, &q(1, 1)).unwrap();
        let cycle = g.find_positive_cycle().unwrap();
        assert_eq!(cycle.first(), cycle.last());
        assert_eq!(cycle[0], 0);
        assert_eq!(cycle.len(), 4);
        assert!(g.cycle_weight(&cycle) > q(0, 1));
    }

    #[test]
    fn improvement_graph_cycle_and_sinks() {
        let c = inst(&[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]);
        let a = Allocation::new(2, vec![0, 1]).unwrap();
        let g = ImprovementGraph::new(&c, &a).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 0)]);
        assert!(!g.is_acyclic());
        assert_eq!(g.find_cycle(), Some(vec![0, 1, 0]));
        assert!(g.sinks().is_empty());

        let b = Allocation::new(2, vec![1, 0]).unwrap();
        let h = ImprovementGraph::new(&c, &b).unwrap();
        assert!(h.is_acyclic());
        assert_eq!(h.sinks(), vec![0, 1]);
    }
}
