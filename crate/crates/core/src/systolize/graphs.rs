use crate::complex::{SimpleGraph, TypedComplex, VertexId};
use crate::error::{input_err, Error, Result};

/// The graph Γ* of a graph whose maximal cliques meet in at most one
/// vertex: vertex `i < n` is vertex `i` of Γ, vertex `n + j` is the maximal
/// clique `cliques[j]` (cliques in lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaStar {
    pub graph: SimpleGraph,
    pub cliques: Vec<Vec<VertexId>>,
}

pub fn gamma_star(g: &SimpleGraph) -> Result<GammaStar> {
    let n = g.vertex_count();
    let cliques = g.maximal_cliques();
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    for (i, ci) in cliques.iter().enumerate() {
        let mi = (n + i) as VertexId;
        edges.extend(ci.iter().map(|&v| (v, mi)));
        for (j, cj) in cliques.iter().enumerate().skip(i + 1) {
            let shared = ci.iter().filter(|v| cj.binary_search(v).is_ok()).count();
            if shared > 1 {
                return Err(Error::Precondition(format!(
                    "maximal cliques {ci:?} and {cj:?} share an edge"
                )));
            }
            if shared == 1 {
                edges.push((mi, (n + j) as VertexId));
            }
        }
    }
    Ok(GammaStar { graph: SimpleGraph::from_edges(n + cliques.len(), edges), cliques })
}

/// A vertex `(v, σ)` of Γ̃: `σ` is `v` itself when `other` is `None` and the
/// edge `v other` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TildeVertex {
    pub v: VertexId,
    pub other: Option<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTilde {
    pub graph: SimpleGraph,
    pub labels: Vec<TildeVertex>,
}

/// The graph Γ̃ of a graph without triangles.
pub fn gamma_tilde(g: &SimpleGraph) -> Result<GammaTilde> {
    if g.girth() == Some(3) {
        return Err(Error::Precondition("graph has girth 3".into()));
    }
    let mut labels = Vec::new();
    for v in 0..g.vertex_count() as VertexId {
        labels.push(TildeVertex { v, other: None });
        labels.extend(g.neighbors(v).iter().map(|&w| TildeVertex { v, other: Some(w) }));
    }
    let fits = |x: &TildeVertex, w: VertexId| x.other.is_none() || x.other == Some(w);
    let mut edges = Vec::new();
    for (i, x) in labels.iter().enumerate() {
        for (j, y) in labels.iter().enumerate().skip(i + 1) {
            let adjacent = x.v == y.v || (g.has_edge(x.v, y.v) && fits(x, y.v) && fits(y, x.v));
            if adjacent {
                edges.push((i as VertexId, j as VertexId));
            }
        }
    }
    Ok(GammaTilde { graph: SimpleGraph::from_edges(labels.len(), edges), labels })
}

/// Whether a vertex map `f` from `a` onto `b` satisfies: `x, y` adjacent in
/// `a` exactly when `f(x), f(y)` are adjacent or equal in `b`.
pub fn check_collapse_hypothesis(f: &[VertexId], a: &TypedComplex, b: &TypedComplex) -> Result<bool> {
    collapse_hypothesis(f, a.graph(), b.graph())
}

pub(crate) fn collapse_hypothesis(f: &[VertexId], a: &SimpleGraph, b: &SimpleGraph) -> Result<bool> {
    if f.len() != a.vertex_count() {
        return Err(input_err!("map has {} entries for {} vertices", f.len(), a.vertex_count()));
    }
    let mut hit = vec![false; b.vertex_count()];
    for &y in f {
        *hit.get_mut(y as usize).ok_or_else(|| input_err!("map sends a vertex to unknown {y}"))? = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(input_err!("map is not onto"));
    }
    for (x, y) in a.edges() {
        let (fx, fy) = (f[x as usize], f[y as usize]);
        if fx != fy && !b.has_edge(fx, fy) {
            return Err(input_err!("map is not simplicial on edge [{x}, {y}]"));
        }
    }
    let n = a.vertex_count() as VertexId;
    for x in 0..n {
        for y in x + 1..n {
            let (fx, fy) = (f[x as usize], f[y as usize]);
            if !a.has_edge(x, y) && (fx == fy || b.has_edge(fx, fy)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Metadata, Origin, Vertex};

    #[test]
    fn gamma_star_examples() {
        let tri = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let s = gamma_star(&tri).unwrap();
        assert_eq!(s.graph.vertex_count(), 4);
        assert_eq!(s.graph.edge_count(), 6);

        let edge = SimpleGraph::from_edges(2, [(0, 1)]);
        assert_eq!(gamma_star(&edge).unwrap().graph.edge_count(), 3);

        // path a-b-c: m1 = {a,b} is vertex 3, m2 = {b,c} is vertex 4
        let path = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]);
        let s = gamma_star(&path).unwrap();
        let expected = SimpleGraph::from_edges(5, [(0, 1), (1, 2), (3, 4), (0, 3), (1, 3), (1, 4), (2, 4)]);
        assert_eq!(s.graph, expected);
    }

    #[test]
    fn gamma_star_precondition() {
        // two triangles sharing the edge 1-2
        let g = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(gamma_star(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn gamma_tilde_of_an_edge_is_a_four_clique() {
        let t = gamma_tilde(&SimpleGraph::from_edges(2, [(0, 1)])).unwrap();
        assert_eq!(t.graph.vertex_count(), 4);
        assert_eq!(t.graph.edge_count(), 6);
        let tri = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert!(gamma_tilde(&tri).is_err());
    }

    fn complex(n: u32, edges: &[(u32, u32)]) -> TypedComplex {
        let vs = (0..n).map(|i| Vertex::new(i, "x")).collect();
        TypedComplex::flag_span(vs, edges.iter().map(|&(u, v)| (u, v, Origin::Original)), Metadata::default()).unwrap()
    }

    #[test]
    fn collapse_examples() {
        let p = complex(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(check_collapse_hypothesis(&[0, 1, 2, 3], &p, &p).unwrap());
        // folding the 4-path onto an edge identifies 0 and 2, which are not
        // adjacent: the biconditional fails
        let e = complex(2, &[(0, 1)]);
        assert!(!check_collapse_hypothesis(&[0, 1, 0, 1], &p, &e).unwrap());
        // not onto
        assert!(check_collapse_hypothesis(&[0, 0, 0, 0], &p, &e).is_err());
        // not simplicial
        let two = complex(2, &[]);
        assert!(check_collapse_hypothesis(&[0, 1, 0, 1], &p, &two).is_err());
    }
}
