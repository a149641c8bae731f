use std::collections::VecDeque;

pub type VertexId = u32;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; loops and repeated edges are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.adj[u as usize].len() <= self.adj[v as usize].len() { (u, v) } else { (v, u) };
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a as usize];
            let pos = list.binary_search(&b).unwrap_err();
            list.insert(pos, b);
        }
        true
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    pub fn is_clique(&self, vertices: &[VertexId]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Vertices adjacent to every vertex of `sigma`, excluding `sigma` itself.
    pub fn common_neighbors(&self, sigma: &[VertexId]) -> Vec<VertexId> {
        let Some((&first, rest)) = sigma.split_first() else {
            return (0..self.vertex_count() as VertexId).collect();
        };
        let mut out: Vec<VertexId> = self.neighbors(first).to_vec();
        for &v in rest {
            let nb = self.neighbors(v);
            out.retain(|x| nb.binary_search(x).is_ok());
        }
        out.retain(|x| !sigma.contains(x));
        out
    }

    /// Induced subgraph on `vertices` (given in the order that defines the
    /// new ids).
    pub fn induced(&self, vertices: &[VertexId]) -> SimpleGraph {
        let mut index = std::collections::HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i as VertexId);
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            let list: &mut Vec<VertexId> = &mut adj[i];
            list.extend(self.neighbors(v).iter().filter_map(|w| index.get(w).copied()));
            list.sort_unstable();
        }
        SimpleGraph { adj }
    }

    /// All maximal cliques, each sorted, in lexicographic order.
    ///
    /// Bron–Kerbosch with pivoting, started from a degeneracy ordering.
    pub fn maximal_cliques(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let order = self.degeneracy_order();
        let mut position = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize] = i;
        }
        let mut out = Vec::new();
        let mut r = Vec::new();
        for &v in &order {
            let (p, x): (Vec<_>, Vec<_>) = self
                .neighbors(v)
                .iter()
                .partition(|&&w| position[w as usize] > position[v as usize]);
            r.push(v);
            self.bron_kerbosch(&mut r, p, x, &mut out);
            r.pop();
        }
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<VertexId>,
        p: Vec<VertexId>,
        mut x: Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| self.has_edge(u, w)).count())
            .expect("p is non-empty");
        let candidates: Vec<VertexId> =
            p.iter().copied().filter(|&w| !self.has_edge(pivot, w)).collect();
        let mut p = p;
        for v in candidates {
            let np: Vec<VertexId> = p.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            let nx: Vec<VertexId> = x.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    fn degeneracy_order(&self) -> Vec<VertexId> {
        let n = self.vertex_count();
        let mut degree: Vec<usize> = (0..n).map(|v| self.adj[v].len()).collect();
        let max_deg = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); max_deg + 1];
        for v in (0..n).rev() {
            buckets[degree[v]].push(v as VertexId);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut d = 0;
        while order.len() < n {
            d = d.min(max_deg);
            while buckets[d].is_empty() {
                d += 1;
            }
            let v = buckets[d].pop().unwrap();
            if removed[v as usize] || degree[v as usize] != d {
                continue;
            }
            removed[v as usize] = true;
            order.push(v);
            for &w in self.neighbors(v) {
                let w = w as usize;
                if !removed[w] {
                    degree[w] -= 1;
                    buckets[degree[w]].push(w as VertexId);
                }
            }
            d = d.saturating_sub(1);
        }
        order
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = u32::MAX;
            let mut queue = VecDeque::from([root as VertexId]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u as usize];
                if best.is_some_and(|b| 2 * du + 1 >= b) {
                    break;
                }
                for &w in self.neighbors(u) {
                    if dist[w as usize] == usize::MAX {
                        dist[w as usize] = du + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else if parent[u as usize] != w {
                        let len = du + dist[w as usize] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Whether every cycle of length at least 4 has a chord, via a maximum
    /// cardinality search and a perfect elimination ordering test.
    pub fn is_chordal(&self) -> bool {
        let n = self.vertex_count();
        let mut weight = vec![0usize; n];
        let mut numbered = vec![false; n];
        // visit order of the search; its reverse is an elimination ordering
        let mut visit = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !numbered[v])
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            numbered[v] = true;
            visit.push(v as VertexId);
            for &w in self.neighbors(v as VertexId) {
                if !numbered[w as usize] {
                    weight[w as usize] += 1;
                }
            }
        }
        let mut rank = vec![0usize; n];
        for (i, &v) in visit.iter().enumerate() {
            rank[v as usize] = i;
        }
        // earlier-visited neighbours of each vertex must form a clique; it
        // suffices to check them against the latest of them
        for &v in &visit {
            let earlier: Vec<VertexId> = self
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| rank[w as usize] < rank[v as usize])
                .collect();
            if let Some(&parent) = earlier.iter().max_by_key(|&&w| rank[w as usize]) {
                if earlier.iter().any(|&w| w != parent && !self.has_edge(w, parent)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0 as VertexId];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> SimpleGraph {
        SimpleGraph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Brute-force maximal cliques over all vertex subsets.
    fn brute_cliques(g: &SimpleGraph) -> Vec<Vec<VertexId>> {
        let n = g.vertex_count();
        let cliques: Vec<Vec<VertexId>> = (1u32..(1 << n))
            .map(|mask| (0..n as u32).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| g.is_clique(s))
            .collect();
        let mut out: Vec<Vec<VertexId>> = cliques
            .iter()
            .filter(|c| !cliques.iter().any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x))))
            .cloned()
            .collect();
        out.sort();
        out
    }

    #[test]
    fn octahedron_has_eight_triangles() {
        // pairs {0,1}, {2,3}, {4,5} are the non-edges
        let mut edges = vec![];
        for u in 0..6u32 {
            for v in u + 1..6 {
                if u / 2 != v / 2 {
                    edges.push((u, v));
                }
            }
        }
        let g = SimpleGraph::from_edges(6, edges);
        let cliques = g.maximal_cliques();
        assert_eq!(cliques.len(), 8);
        assert!(cliques.iter().all(|c| c.len() == 3));
        assert_eq!(cliques, brute_cliques(&g));
    }

    #[test]
    fn cliques_match_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.1..0.9);
            let mut edges = vec![];
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::from_edges(n, edges);
            assert_eq!(g.maximal_cliques(), brute_cliques(&g));
        }
    }

    #[test]
    fn girth_examples() {
        let tree = SimpleGraph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(tree.girth(), None);
        assert_eq!(cycle(6).girth(), Some(6));
        assert_eq!(cycle(7).girth(), Some(7));
        let mut g = cycle(8);
        g.add_edge(0, 4);
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn chordality() {
        assert!(!cycle(4).is_chordal());
        assert!(!cycle(9).is_chordal());
        let mut g = cycle(5);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        assert!(g.is_chordal());
        assert!(SimpleGraph::new(3).is_chordal());
    }

    #[test]
    fn common_neighbors_excludes_sigma() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3), (1, 3)]);
        assert_eq!(g.common_neighbors(&[1, 2]), vec![0, 3]);
        assert_eq!(g.common_neighbors(&[0]), vec![1, 2]);
    }
}
