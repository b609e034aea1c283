use std::collections::VecDeque;

use num::Zero;

use super::{ConfigError, Configuration, PlanePoint};
use crate::value::Value;

/// Optimal bottleneck matching between two equal-mass configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub distance: Value,
    /// Pairs `(p, q)` with `p` from the first expanded configuration and `q`
    /// from the second; every expanded point appears exactly once.
    pub witness: Vec<(PlanePoint, PlanePoint)>,
}

/// Maximum matching in the bipartite graph `left -> adj[left]` by
/// Hopcroft-Karp. Returns, for every left vertex, its partner on the right.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l: Vec<Option<usize>> = vec![None; n_left];
    let mut match_r: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        // DFS along layers, iteratively to avoid deep recursion
        let mut next_edge = vec![0usize; n_left];
        for root in 0..n_left {
            if match_l[root].is_some() {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if next_edge[u] == adj[u].len() {
                    dist[u] = INF;
                    stack.pop();
                    continue;
                }
                let v = adj[u][next_edge[u]];
                next_edge[u] += 1;
                match match_r[v] {
                    None => {
                        // augment along the stack
                        let mut right = v;
                        while let Some(l) = stack.pop() {
                            let prev = match_l[l];
                            match_l[l] = Some(right);
                            match_r[right] = Some(l);
                            match prev {
                                Some(p) => right = p,
                                None => break,
                            }
                        }
                        stack.clear();
                    }
                    Some(w) if dist[w] == dist[u] + 1 => stack.push(w),
                    _ => {}
                }
            }
        }
    }
    match_l
}

fn perfect_matching_within(left: &[PlanePoint], right: &[PlanePoint], threshold: &Value) -> Option<Vec<usize>> {
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|p| {
            right
                .iter()
                .enumerate()
                .filter(|(_, q)| p.linf(q) <= *threshold)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    hopcroft_karp(&adj, right.len()).into_iter().collect()
}

/// Minimum over bijections of the largest L-infinity distance between
/// matched points. Binary search over the sorted distinct pairwise distances,
/// with a perfect-matching test at each candidate threshold.
pub fn bottleneck_distance(c1: &Configuration, c2: &Configuration) -> Result<MatchingResult, ConfigError> {
    let (left, right) = (c1.expanded(), c2.expanded());
    if left.len() != right.len() {
        return Err(ConfigError::MassMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    if left.is_empty() {
        return Ok(MatchingResult {
            distance: Value::zero(),
            witness: Vec::new(),
        });
    }
    let mut candidates: Vec<Value> = left
        .iter()
        .flat_map(|p| right.iter().map(move |q| p.linf(q)))
        .collect();
    candidates.sort();
    candidates.dedup();

    // the largest candidate always admits a perfect matching
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_within(&left, &right, &candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let distance = candidates[lo].clone();
    let assignment = perfect_matching_within(&left, &right, &distance).expect("feasible at the optimum");
    let witness = left
        .into_iter()
        .zip(assignment)
        .map(|(p, j)| (p, right[j].clone()))
        .collect();
    Ok(MatchingResult { distance, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};

    fn pt(a: Value, b: Value) -> PlanePoint {
        PlanePoint::new(a, b)
    }

    #[test]
    fn identical_configurations() {
        let c: Configuration = [(pt(int(0), int(2)), 2), (pt(int(1), int(1)), 1)].into_iter().collect();
        let m = bottleneck_distance(&c, &c).unwrap();
        assert_eq!(m.distance, int(0));
        assert_eq!(m.witness.len(), 3);
    }

    #[test]
    fn forced_single_match() {
        let a: Configuration = [(pt(int(0), int(2)), 1)].into_iter().collect();
        let b: Configuration = [(pt(ratio(1, 2), ratio(23, 10)), 1)].into_iter().collect();
        assert_eq!(bottleneck_distance(&a, &b).unwrap().distance, ratio(1, 2));
    }

    #[test]
    fn mass_mismatch() {
        let a: Configuration = [(pt(int(0), int(2)), 1)].into_iter().collect();
        assert_eq!(
            bottleneck_distance(&a, &Configuration::new()),
            Err(ConfigError::MassMismatch { left: 1, right: 0 })
        );
    }

    #[test]
    fn empty_pair() {
        let m = bottleneck_distance(&Configuration::new(), &Configuration::new()).unwrap();
        assert_eq!(m.distance, int(0));
    }

    #[test]
    fn hopcroft_karp_small() {
        // left 0 -> {0,1}, left 1 -> {0}, left 2 -> {1, 2}
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = hopcroft_karp(&adj, 3);
        assert!(m.iter().all(Option::is_some));
        let mut rights: Vec<usize> = m.into_iter().flatten().collect();
        rights.sort();
        assert_eq!(rights, vec![0, 1, 2]);

        let adj = vec![vec![0], vec![0]];
        assert_eq!(hopcroft_karp(&adj, 1).iter().flatten().count(), 1);
    }
}
