//! Disjointness graphs between families and maximum bipartite matching.

use std::collections::VecDeque;

use crate::family::KSubset;

/// Bipartite graph on two lists of sets, `L ~ R` iff `L ∩ R = ∅`.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    pub left: Vec<KSubset>,
    pub right: Vec<KSubset>,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn disjointness(left: Vec<KSubset>, right: Vec<KSubset>) -> Self {
        let adjacency = left
            .iter()
            .map(|l| {
                right
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| l.is_disjoint(r))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        BipartiteGraph { left, right, adjacency }
    }

    pub fn neighbors(&self, left_index: usize) -> &[usize] {
        &self.adjacency[left_index]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, adj)| adj.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right.len()];
        for (_, j) in self.edges() {
            deg[j] += 1;
        }
        deg
    }

    /// Common degree of every vertex on both sides, if there is one.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut all = self.left_degrees().into_iter().chain(self.right_degrees());
        let d = all.next()?;
        all.all(|x| x == d).then_some(d)
    }

    /// `(left degree, right degree)` when each side is internally regular.
    pub fn biregular_degrees(&self) -> Option<(usize, usize)> {
        fn common(v: Vec<usize>) -> Option<usize> {
            let d = *v.first()?;
            v.iter().all(|&x| x == d).then_some(d)
        }
        Some((common(self.left_degrees())?, common(self.right_degrees())?))
    }

    /// Every edge joins disjoint sets, and every disjoint pair is an edge.
    pub fn is_consistent(&self) -> bool {
        self.left.iter().enumerate().all(|(i, l)| {
            let adj = &self.adjacency[i];
            self.right
                .iter()
                .enumerate()
                .all(|(j, r)| l.is_disjoint(r) == adj.binary_search(&j).is_ok())
        })
    }

    /// Maximum matching as `(left index, right index)` pairs (Hopcroft–Karp).
    pub fn maximum_matching(&self) -> Vec<(usize, usize)> {
        hopcroft_karp(&self.adjacency, self.right.len())
    }
}

const FREE: usize = usize::MAX;

pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], right_len: usize) -> Vec<(usize, usize)> {
    let left_len = adj.len();
    let mut match_left = vec![FREE; left_len];
    let mut match_right = vec![FREE; right_len];
    let mut dist = vec![0usize; left_len];

    loop {
        // layer the free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left_len {
            if match_left[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_right[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut progressed = false;
        for u in 0..left_len {
            if match_left[u] == FREE && augment(u, adj, &mut match_left, &mut match_right, &mut dist) {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    match_left
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != FREE)
        .map(|(u, &v)| (u, v))
        .collect()
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in &adj[u] {
        let w = match_right[v];
        let ok = w == FREE
            || (dist[w] == dist[u].wrapping_add(1) && augment(w, adj, match_left, match_right, dist));
        if ok {
            match_left[u] = v;
            match_right[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    // exponential reference: size of a maximum matching by trying all choices
    fn brute_max(adj: &[Vec<usize>], right_len: usize) -> usize {
        fn go(i: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if i == adj.len() {
                return 0;
            }
            let mut best = go(i + 1, adj, used);
            for &v in &adj[i] {
                if !used[v] {
                    used[v] = true;
                    best = best.max(1 + go(i + 1, adj, used));
                    used[v] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; right_len])
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let l = rng.gen_range(0..7);
            let r = rng.gen_range(0..7);
            let adj: Vec<Vec<usize>> = (0..l)
                .map(|_| (0..r).filter(|_| rng.gen_bool(0.35)).collect())
                .collect();
            let m = hopcroft_karp(&adj, r);
            assert_eq!(m.len(), brute_max(&adj, r));
            let mut seen_r = vec![false; r];
            for &(u, v) in &m {
                assert!(adj[u].contains(&v));
                assert!(!seen_r[v]);
                seen_r[v] = true;
            }
        }
    }

    #[test]
    fn disjointness_graph_shape() {
        let s = |e: &[u32]| KSubset::new(4, e).unwrap();
        let g = BipartiteGraph::disjointness(vec![s(&[1, 3]), s(&[1, 4])], vec![s(&[2, 3]), s(&[2, 4])]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert_eq!(g.regular_degree(), Some(1));
        assert!(g.is_consistent());
        assert_eq!(g.maximum_matching().len(), 2);
    }

    #[test]
    fn empty_graph() {
        let g = BipartiteGraph::disjointness(vec![], vec![]);
        assert!(g.maximum_matching().is_empty());
        assert_eq!(g.regular_degree(), None);
    }
}
