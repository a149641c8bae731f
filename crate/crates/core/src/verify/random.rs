//! Small random instances for the randomized oracles.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{shortest_full_cycle, SimpleGraph, VertexId};

/// Erdős–Rényi graph.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random graph with every edge of a triangle removed greedily.
pub fn random_triangle_free<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let g = random_graph(rng, n, p);
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    edges.shuffle(rng);
    let mut out = SimpleGraph::new(n);
    for (u, v) in edges {
        if out.common_neighbors(&[u, v]).is_empty() {
            out.add_edge(u, v);
        }
    }
    out
}

/// Random graph made 6-large by repeatedly adding a chord to a shortest
/// full cycle of length 4 or 5.
pub fn random_six_large<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let mut g = random_graph(rng, n, p);
    while let Some(cycle) = shortest_full_cycle(&g, 5) {
        let i = rng.gen_range(0..cycle.len());
        let j = (i + 2 + rng.gen_range(0..cycle.len() - 3)) % cycle.len();
        g.add_edge(cycle[i], cycle[j]);
    }
    g
}

/// Random graph whose maximal cliques pairwise share at most one vertex: a
/// union of random cliques of size 2 to 4, resampled until the condition
/// holds.
pub fn random_clique_tree_like<R: Rng>(rng: &mut R, n: usize) -> SimpleGraph {
    loop {
        let mut g = SimpleGraph::new(n);
        let count = rng.gen_range(1..=n.max(1));
        let ids: Vec<VertexId> = (0..n as VertexId).collect();
        for _ in 0..count {
            let size = rng.gen_range(2..=4.min(n.max(2)));
            let pick: Vec<VertexId> = ids.choose_multiple(rng, size.min(n)).copied().collect();
            for (i, &u) in pick.iter().enumerate() {
                for &v in &pick[i + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
        let cliques = g.maximal_cliques();
        let ok = cliques.iter().enumerate().all(|(i, a)| {
            cliques[i + 1..].iter().all(|b| a.iter().filter(|v| b.binary_search(v).is_ok()).count() <= 1)
        });
        if ok {
            return g;
        }
    }
}

/// A graph with a random clique of it (possibly empty).
pub fn random_clique<R: Rng>(rng: &mut R, g: &SimpleGraph, max_size: usize) -> Vec<VertexId> {
    let cliques = g.maximal_cliques();
    let Some(base) = cliques.choose(rng) else {
        return Vec::new();
    };
    let size = rng.gen_range(0..=base.len().min(max_size));
    let mut pick: Vec<VertexId> = base.choose_multiple(rng, size).copied().collect();
    pick.sort_unstable();
    pick
}

/// Glues `b` to `a` along cliques `sa` of `a` and `sb` of `b` of equal size,
/// identifying `sb[i]` with `sa[i]`. Vertices of `b` outside `sb` are
/// renumbered after those of `a`.
pub fn glue_along_cliques(a: &SimpleGraph, sa: &[VertexId], b: &SimpleGraph, sb: &[VertexId]) -> SimpleGraph {
    assert_eq!(sa.len(), sb.len());
    let mut map = vec![0 as VertexId; b.vertex_count()];
    let mut next = a.vertex_count() as VertexId;
    for v in 0..b.vertex_count() as VertexId {
        map[v as usize] = match sb.iter().position(|&x| x == v) {
            Some(i) => sa[i],
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let edges = a.edges().chain(b.edges().map(|(u, v)| (map[u as usize], map[v as usize])));
    SimpleGraph::from_edges(next as usize, edges)
}

/// Blow-up of `b`: vertex `y` of `b` becomes `sizes[y]` pairwise adjacent
/// copies, and copies of adjacent vertices are adjacent. Returns the graph
/// and the projection onto `b`.
pub fn blow_up(b: &SimpleGraph, sizes: &[usize]) -> (SimpleGraph, Vec<VertexId>) {
    let f: Vec<VertexId> = sizes.iter().enumerate().flat_map(|(y, &s)| std::iter::repeat_n(y as VertexId, s)).collect();
    let n = f.len() as VertexId;
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let (fx, fy) = (f[x as usize], f[y as usize]);
            if fx == fy || b.has_edge(fx, fy) {
                edges.push((x, y));
            }
        }
    }
    (SimpleGraph::from_edges(n as usize, edges), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_promises() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_triangle_free(&mut rng, 8, 0.5);
            assert!(g.girth().is_none_or(|x| x >= 4));
            let g = random_six_large(&mut rng, 8, 0.3);
            assert!(shortest_full_cycle(&g, 5).is_none());
            let g = random_clique_tree_like(&mut rng, 8);
            assert_eq!(g.vertex_count(), 8);
        }
    }

    #[test]
    fn gluing_and_blow_up() {
        let tri = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let g = glue_along_cliques(&tri, &[0, 1], &tri, &[1, 2]);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 5));
        let (a, f) = blow_up(&SimpleGraph::from_edges(2, [(0, 1)]), &[2, 1]);
        assert_eq!(f, [0, 0, 1]);
        assert_eq!(a.edge_count(), 3);
    }
}
