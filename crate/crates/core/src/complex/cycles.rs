use serde::{Deserialize, Serialize};

use super::graph::{SimpleGraph, VertexId};

/// An induced cycle of length at least 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<VertexId>,
    pub length: usize,
    pub context: String,
}

impl CycleWitness {
    pub fn new(vertices: Vec<VertexId>, context: impl Into<String>) -> Self {
        CycleWitness { length: vertices.len(), vertices, context: context.into() }
    }

    /// Rechecks the witness against a graph: consecutive vertices adjacent,
    /// all others not.
    pub fn is_full_cycle_in(&self, g: &SimpleGraph) -> bool {
        is_full_cycle(g, &self.vertices)
    }
}

pub fn is_full_cycle(g: &SimpleGraph, cycle: &[VertexId]) -> bool {
    let n = cycle.len();
    if n < 4 || cycle.iter().any(|&v| v as usize >= g.vertex_count()) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if cycle[i] == cycle[j] {
                return false;
            }
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// The `k` in "k-large"; `Infinite` asks for no full cycle at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Largeness {
    Finite(usize),
    Infinite,
}

struct Search<'a, F> {
    g: &'a SimpleGraph,
    len: usize,
    allowed: F,
    path: Vec<VertexId>,
    found: Vec<Vec<VertexId>>,
    first_only: bool,
}

impl<F: Fn(VertexId) -> bool> Search<'_, F> {
    fn run(&mut self, start: VertexId) {
        self.path.clear();
        self.path.push(start);
        self.extend();
    }

    /// Grows an induced path from `path[0]` using only vertices larger than
    /// the start, closing it when it reaches the target length.
    fn extend(&mut self) -> bool {
        let j = self.path.len();
        let s = self.path[0];
        let last = self.path[j - 1];
        let closing = j == self.len - 1;
        for &w in self.g.neighbors(last) {
            if w <= s || !(self.allowed)(w) || self.path.contains(&w) {
                continue;
            }
            if closing && w < self.path[1] {
                continue;
            }
            // w must see path[0] exactly when closing, and none of path[1..j-1]
            if j >= 2
                && (self.g.has_edge(w, s) != closing
                    || self.path[1..j - 1].iter().any(|&p| self.g.has_edge(w, p)))
            {
                continue;
            }
            self.path.push(w);
            if closing {
                self.found.push(self.path.clone());
                if self.first_only {
                    return true;
                }
            } else if self.extend() && self.first_only {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// All full cycles of exactly `len` vertices using only `allowed` vertices,
/// each written from its least vertex towards the smaller of its two
/// neighbours, in lexicographic order.
pub fn all_full_cycles(
    g: &SimpleGraph,
    len: usize,
    allowed: impl Fn(VertexId) -> bool,
) -> Vec<Vec<VertexId>> {
    if len < 4 {
        return Vec::new();
    }
    let mut search = Search { g, len, allowed, path: Vec::new(), found: Vec::new(), first_only: false };
    for s in 0..g.vertex_count() as VertexId {
        if (search.allowed)(s) {
            search.run(s);
        }
    }
    search.found
}

fn first_full_cycle(g: &SimpleGraph, len: usize) -> Option<Vec<VertexId>> {
    let mut search = Search { g, len, allowed: |_| true, path: Vec::new(), found: Vec::new(), first_only: true };
    for s in 0..g.vertex_count() as VertexId {
        search.run(s);
        if let Some(c) = search.found.pop() {
            return Some(c);
        }
    }
    None
}

/// A shortest full cycle with length in `[4, max_len]`, the
/// lexicographically least among those of that length.
pub fn shortest_full_cycle(g: &SimpleGraph, max_len: usize) -> Option<Vec<VertexId>> {
    let max_len = max_len.min(g.vertex_count());
    (4..=max_len).find_map(|len| first_full_cycle(g, len))
}

/// Checks k-largeness, returning the violating full cycle if there is one.
pub fn is_k_large(g: &SimpleGraph, k: Largeness) -> (bool, Option<Vec<VertexId>>) {
    let n = g.vertex_count();
    let max_len = match k {
        Largeness::Finite(k) if k <= n => k.saturating_sub(1),
        _ => {
            if g.is_chordal() {
                return (true, None);
            }
            n
        }
    };
    match shortest_full_cycle(g, max_len) {
        Some(c) => (false, Some(c)),
        None => (true, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> SimpleGraph {
        SimpleGraph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Brute force: every vertex subset inducing a 2-regular connected graph.
    fn brute_shortest(g: &SimpleGraph) -> Option<usize> {
        let n = g.vertex_count();
        (1u32..(1 << n))
            .filter_map(|mask| {
                let vs: Vec<u32> = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
                if vs.len() < 4 {
                    return None;
                }
                let sub = g.induced(&vs);
                let regular = (0..vs.len() as u32).all(|v| sub.degree(v) == 2);
                (regular && sub.is_connected()).then_some(vs.len())
            })
            .min()
    }

    #[test]
    fn simplex_is_infinitely_large() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(is_k_large(&g, Largeness::Infinite), (true, None));
    }

    #[test]
    fn five_cycle_witness() {
        let g = cycle(5);
        assert_eq!(shortest_full_cycle(&g, 10), Some(vec![0, 1, 2, 3, 4]));
        assert!(!is_k_large(&g, Largeness::Finite(6)).0);
        assert!(is_k_large(&g, Largeness::Finite(5)).0);
    }

    #[test]
    fn square_largeness() {
        let g = cycle(4);
        let (ok, w) = is_k_large(&g, Largeness::Finite(6));
        assert!(!ok);
        assert_eq!(w.unwrap().len(), 4);
        assert!(is_k_large(&g, Largeness::Finite(4)).0);
    }

    #[test]
    fn join_of_edge_with_discrete_set_is_infinitely_large() {
        // edge 0-1 joined with isolated 2, 3, 4
        let g = SimpleGraph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(is_k_large(&g, Largeness::Infinite).0);
        assert_eq!(shortest_full_cycle(&g, 5), None);
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // two squares sharing vertex 0: 0-5-1-4 and 0-2-3-6
        let g = SimpleGraph::from_edges(7, [(0, 5), (5, 1), (1, 4), (4, 0), (0, 2), (2, 3), (3, 6), (6, 0)]);
        assert_eq!(shortest_full_cycle(&g, 8), Some(vec![0, 2, 3, 6]));
        assert_eq!(all_full_cycles(&g, 4, |_| true), vec![vec![0, 2, 3, 6], vec![0, 4, 1, 5]]);
    }

    #[test]
    fn matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(3..=9);
            let p = rng.gen_range(0.15..0.7);
            let mut edges = vec![];
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::from_edges(n, edges);
            let found = shortest_full_cycle(&g, n);
            assert_eq!(found.as_ref().map(Vec::len), brute_shortest(&g));
            if let Some(c) = &found {
                assert!(is_full_cycle(&g, c));
            }
            assert_eq!(g.is_chordal(), found.is_none());
        }
    }
}
