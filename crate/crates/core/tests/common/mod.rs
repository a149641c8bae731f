#![allow(dead_code)]

use std::collections::HashMap;

use petgraph::graph::UnGraph;
use systolic_core::complex::{Metadata, Origin, SimpleGraph, TypedComplex, Vertex, VertexId};
use systolic_core::coxeter::{build_coxeter_ball, BallOptions, CoxeterSystem, Exponent, Generator};

pub fn system(labels: &str) -> CoxeterSystem {
    CoxeterSystem::from_labels(labels).unwrap()
}

pub fn ball(labels: &str, radius: u32) -> TypedComplex {
    build_coxeter_ball(&system(labels), &BallOptions::new(radius)).unwrap()
}

/// Flag complex on a graph with every vertex of the given kind.
pub fn flag(n: usize, edges: &[(VertexId, VertexId)], kind: &str) -> TypedComplex {
    let vs = (0..n as VertexId).map(|i| Vertex::new(i, kind)).collect();
    TypedComplex::flag_span(vs, edges.iter().map(|&(u, v)| (u, v, Origin::Original)), Metadata::default()).unwrap()
}

pub fn flag_of(g: &SimpleGraph) -> TypedComplex {
    flag(g.vertex_count(), &g.edges().collect::<Vec<_>>(), "x")
}

/// Vertex-labelled petgraph copy of a graph.
pub fn to_petgraph(g: &SimpleGraph, labels: &[String]) -> UnGraph<String, ()> {
    let mut p = UnGraph::new_undirected();
    let ids: Vec<_> = labels.iter().map(|l| p.add_node(l.clone())).collect();
    for (u, v) in g.edges() {
        p.add_edge(ids[u as usize], ids[v as usize], ());
    }
    p
}

pub fn isomorphic_with_labels(a: &UnGraph<String, ()>, b: &UnGraph<String, ()>) -> bool {
    petgraph::algo::is_isomorphic_matching(a, b, |x, y| x == y, |_, _| true)
}

/// The geometric (Tits) representation: `s_i(v) = v - 2 B(e_i, v) e_i` with
/// `B(e_i, e_j) = -cos(pi / m_ij)`. Elements are compared through their
/// matrices rounded to 1e-6.
pub struct Reflections {
    n: usize,
    gens: Vec<Vec<f64>>,
}

pub type Key = Vec<i64>;

impl Reflections {
    pub fn new(sys: &CoxeterSystem) -> Self {
        let n = sys.rank();
        let b = |i: usize, j: usize| -> f64 {
            if i == j {
                return 1.0;
            }
            match sys.exponent(i, j) {
                Exponent::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                Exponent::Infinite => -1.0,
            }
        };
        let gens = (0..n)
            .map(|i| {
                let mut m = vec![0.0; n * n];
                for r in 0..n {
                    for c in 0..n {
                        let id = if r == c { 1.0 } else { 0.0 };
                        m[r * n + c] = id - if r == i { 2.0 * b(i, c) } else { 0.0 };
                    }
                }
                m
            })
            .collect();
        Reflections { n, gens }
    }

    pub fn identity(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1.0;
        }
        m
    }

    pub fn times(&self, m: &[f64], s: Generator) -> Vec<f64> {
        let n = self.n;
        let g = &self.gens[s as usize];
        let mut out = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..n {
                out[r * n + c] = (0..n).map(|k| m[r * n + k] * g[k * n + c]).sum();
            }
        }
        out
    }

    pub fn word(&self, w: &[Generator]) -> Vec<f64> {
        w.iter().fold(self.identity(), |m, &s| self.times(&m, s))
    }

    pub fn key(m: &[f64]) -> Key {
        m.iter().map(|x| (x * 1e6).round() as i64).collect()
    }

    /// Number of group elements of each length up to `radius`, by
    /// breadth-first search on matrices.
    pub fn sphere_sizes(&self, radius: u32) -> (Vec<usize>, HashMap<Key, u32>) {
        let mut seen: HashMap<Key, u32> = HashMap::new();
        let id = self.identity();
        seen.insert(Self::key(&id), 0);
        let mut frontier = vec![id];
        let mut sizes = vec![1];
        for d in 1..=radius {
            let mut next = Vec::new();
            for m in &frontier {
                for s in 0..self.n as Generator {
                    let x = self.times(m, s);
                    let k = Self::key(&x);
                    if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                        e.insert(d);
                        next.push(x);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            sizes.push(next.len());
            frontier = next;
        }
        (sizes, seen)
    }
}

/// Chambers of a ball per distance from the base chamber.
pub fn ball_sphere_sizes(b: &TypedComplex) -> Vec<usize> {
    let mut sizes = Vec::new();
    for ch in &b.metadata.chambers {
        let d = ch.distance as usize;
        if sizes.len() <= d {
            sizes.resize(d + 1, 0);
        }
        sizes[d] += 1;
    }
    sizes
}

/// Brute-force full cycles of length at least 4: induced subgraphs on which
/// every vertex has degree 2 and which are connected.
pub fn brute_force_has_full_cycle(g: &SimpleGraph, min: usize, max: usize) -> bool {
    let n = g.vertex_count();
    assert!(n <= 16);
    (1u32..1 << n).any(|mask| {
        let vs: Vec<VertexId> = (0..n as VertexId).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() < min || vs.len() > max {
            return false;
        }
        let h = g.induced(&vs);
        (0..h.vertex_count() as VertexId).all(|v| h.degree(v) == 2) && h.is_connected()
    })
}
