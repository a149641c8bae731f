//! Typed flag simplicial complexes.
//!
//! A [`TypedComplex`] is stored through its 1-skeleton together with the
//! explicit list of maximal simplices. The two are kept consistent: maximal
//! simplices are always the maximal cliques of the edge graph.

mod cycles;
mod dot;
pub mod graph;
mod subdivision;

pub use cycles::{all_full_cycles, is_full_cycle, is_k_large, shortest_full_cycle, CycleWitness, Largeness};
pub use dot::to_dot;
pub use graph::{SimpleGraph, VertexId};
pub use subdivision::{barycentric_subdivision, davis_realization, face_complex, infinite_type_sets};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterSystem;
use crate::error::{input_err, Result};

/// Provenance tag carried by vertices and edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    #[default]
    Original,
    Friend,
    Acquaintance,
    Derived,
}

impl Origin {
    pub fn is_new(self) -> bool {
        matches!(self, Origin::Friend | Origin::Acquaintance)
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Original => "original",
            Origin::Friend => "friend",
            Origin::Acquaintance => "acquaintance",
            Origin::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub origin: Origin,
    /// For vertices standing for a simplex of another complex (subdivisions,
    /// face complexes): the vertex ids of that simplex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<Vec<VertexId>>,
}

impl Vertex {
    pub fn new(id: VertexId, kind: impl Into<String>) -> Self {
        Vertex { id, kind: kind.into(), origin: Origin::Original, face: None }
    }
}

/// A chamber of a Coxeter ball: its vertices and its distance from the base
/// chamber in the chamber graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberRecord {
    pub word: String,
    pub vertices: Vec<VertexId>,
    pub distance: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<CoxeterSystem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chambers: Vec<ChamberRecord>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Metadata {
    pub fn with_provenance(provenance: impl Into<String>) -> Self {
        Metadata { provenance: provenance.into(), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypedComplex {
    vertices: Vec<Vertex>,
    graph: SimpleGraph,
    origins: BTreeMap<(VertexId, VertexId), Origin>,
    maximal: Vec<Vec<VertexId>>,
    pub metadata: Metadata,
}

/// A complex carved out of a parent complex, with the parent id of each of
/// its vertices.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: TypedComplex,
    pub parent: Vec<VertexId>,
}

fn ordered(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl TypedComplex {
    /// The flag complex spanned by a graph. Vertex ids must be `0..n` in
    /// order; repeated edges keep the first origin given.
    pub fn flag_span(
        vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Origin)>,
        metadata: Metadata,
    ) -> Result<Self> {
        let mut c = Self::skeleton(vertices, edges, metadata)?;
        c.maximal = c.graph.maximal_cliques();
        Ok(c)
    }

    /// Builds a complex whose maximal simplices are already known. The list
    /// is canonicalized but not checked; see [`TypedComplex::validate`].
    pub fn with_maximal_simplices(
        vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Origin)>,
        maximal: Vec<Vec<VertexId>>,
        metadata: Metadata,
    ) -> Result<Self> {
        let mut c = Self::skeleton(vertices, edges, metadata)?;
        let n = c.vertices.len() as VertexId;
        let mut maximal = maximal;
        for s in &mut maximal {
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(input_err!("maximal simplex mentions unknown vertex {v}"));
            }
        }
        maximal.sort();
        maximal.dedup();
        c.maximal = maximal;
        Ok(c)
    }

    fn skeleton(
        vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Origin)>,
        metadata: Metadata,
    ) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if v.id as usize != i {
                return Err(input_err!("vertex ids must be 0..n in order; found {} at position {i}", v.id));
            }
        }
        let n = vertices.len();
        let mut origins = BTreeMap::new();
        for (u, v, o) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(input_err!("edge [{u}, {v}] mentions an unknown vertex"));
            }
            if u == v {
                return Err(input_err!("self-loop at vertex {u}"));
            }
            origins.entry(ordered(u, v)).or_insert(o);
        }
        let graph = SimpleGraph::from_edges(n, origins.keys().copied());
        Ok(TypedComplex { vertices, graph, origins, maximal: Vec::new(), metadata })
    }

    pub fn empty() -> Self {
        TypedComplex {
            vertices: Vec::new(),
            graph: SimpleGraph::new(0),
            origins: BTreeMap::new(),
            maximal: Vec::new(),
            metadata: Metadata::default(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.origins.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v as usize]
    }

    pub fn kind(&self, v: VertexId) -> &str {
        &self.vertices[v as usize].kind
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    /// Edges `(u, v, origin)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Origin)> + '_ {
        self.origins.iter().map(|(&(u, v), &o)| (u, v, o))
    }

    pub fn edge_origin(&self, u: VertexId, v: VertexId) -> Option<Origin> {
        self.origins.get(&ordered(u, v)).copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.graph.neighbors(v)
    }

    pub fn maximal_simplices(&self) -> &[Vec<VertexId>] {
        &self.maximal
    }

    pub fn dimension(&self) -> Option<usize> {
        self.maximal.iter().map(|s| s.len() - 1).max()
    }

    pub fn is_simplex(&self, sigma: &[VertexId]) -> bool {
        sigma.iter().all(|&v| (v as usize) < self.vertex_count()) && self.graph.is_clique(sigma)
    }

    /// Every simplex (non-empty face of a maximal simplex), each sorted, in
    /// order of dimension and then lexicographically.
    pub fn simplices(&self) -> Vec<Vec<VertexId>> {
        let mut set = BTreeSet::new();
        for s in &self.maximal {
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<VertexId> =
                    s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                set.insert(face);
            }
        }
        let mut out: Vec<Vec<VertexId>> = set.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Vertices of the link of `sigma`, i.e. those adjacent to all of it.
    pub fn link_vertices(&self, sigma: &[VertexId]) -> Result<Vec<VertexId>> {
        if sigma.is_empty() || !self.is_simplex(sigma) {
            return Err(input_err!("{sigma:?} does not span a simplex"));
        }
        Ok(self.graph.common_neighbors(sigma))
    }

    /// The 1-skeleton of the link of `sigma` with the parent id of each of
    /// its vertices. Cheaper than [`TypedComplex::link`] when only the graph
    /// is needed.
    pub fn link_graph(&self, sigma: &[VertexId]) -> Result<(Vec<VertexId>, SimpleGraph)> {
        let vs = self.link_vertices(sigma)?;
        let g = self.graph.induced(&vs);
        Ok((vs, g))
    }

    /// The link of `sigma`: the full subcomplex on the vertices adjacent to
    /// every vertex of `sigma`.
    pub fn link(&self, sigma: &[VertexId]) -> Result<Subcomplex> {
        let vs = self.link_vertices(sigma)?;
        let mut sub = self.full_subcomplex(&vs)?;
        sub.complex.metadata = Metadata::with_provenance(format!("link of {sigma:?}"));
        Ok(sub)
    }

    /// Full subcomplex spanned by the given vertices, renumbered in the given
    /// order.
    pub fn full_subcomplex(&self, vs: &[VertexId]) -> Result<Subcomplex> {
        let index: BTreeMap<VertexId, VertexId> =
            vs.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
        if index.len() != vs.len() {
            return Err(input_err!("repeated vertex in subcomplex request"));
        }
        let vertices = vs
            .iter()
            .enumerate()
            .map(|(i, &v)| Vertex { id: i as VertexId, ..self.vertices[v as usize].clone() })
            .collect();
        let mut edges = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for &w in self.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    if (i as VertexId) < j {
                        edges.push((i as VertexId, j, self.edge_origin(v, w).unwrap_or_default()));
                    }
                }
            }
        }
        let complex = TypedComplex::flag_span(vertices, edges, self.metadata.clone())?;
        Ok(Subcomplex { complex, parent: vs.to_vec() })
    }

    /// The complex with the open stars of the given vertices removed. In a
    /// flag complex this is the full subcomplex on the remaining vertices.
    pub fn remove_open_stars(&self, remove: &BTreeSet<VertexId>) -> Result<Subcomplex> {
        let keep: Vec<VertexId> =
            (0..self.vertex_count() as VertexId).filter(|v| !remove.contains(v)).collect();
        self.full_subcomplex(&keep)
    }

    /// Checks the structural invariants: ids, edges, and that the maximal
    /// simplices are exactly the maximal cliques of the edge graph.
    pub fn validate(&self) -> Result<()> {
        for s in &self.maximal {
            if !self.graph.is_clique(s) {
                return Err(input_err!("maximal simplex {s:?} is missing an edge"));
            }
        }
        let cliques = self.graph.maximal_cliques();
        if cliques != self.maximal {
            let listed: BTreeSet<_> = self.maximal.iter().collect();
            let extra = cliques.iter().find(|c| !listed.contains(c));
            return Err(input_err!(
                "complex is not flag: maximal simplices differ from maximal cliques (e.g. {:?})",
                extra.or_else(|| self.maximal.iter().find(|s| !cliques.contains(s)))
            ));
        }
        Ok(())
    }

    /// Adds edges and re-spans the flag complex. Existing edges keep their
    /// origin.
    pub fn with_added_edges(
        &self,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Origin)>,
    ) -> Result<Self> {
        let all: Vec<_> = self.edges().chain(edges).collect();
        TypedComplex::flag_span(self.vertices.clone(), all, self.metadata.clone())
    }

    pub fn to_json(&self, pretty: bool) -> Result<String> {
        let doc = ComplexDoc::from(self);
        Ok(if pretty { serde_json::to_string_pretty(&doc)? } else { serde_json::to_string(&doc)? })
    }

    /// Parses the JSON wire format. Vertex ids must be `0..n` (in any
    /// order); the maximal simplices are taken as given, so call
    /// [`TypedComplex::validate`] on untrusted input.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDoc = serde_json::from_str(text)?;
        TypedComplex::try_from(doc)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexDoc {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId, Origin)>,
    maximal_simplices: Vec<Vec<VertexId>>,
    #[serde(default)]
    metadata: Metadata,
}

impl From<&TypedComplex> for ComplexDoc {
    fn from(c: &TypedComplex) -> Self {
        ComplexDoc {
            vertices: c.vertices.clone(),
            edges: c.edges().collect(),
            maximal_simplices: c.maximal.clone(),
            metadata: c.metadata.clone(),
        }
    }
}

impl TryFrom<ComplexDoc> for TypedComplex {
    type Error = crate::error::Error;

    fn try_from(mut doc: ComplexDoc) -> Result<Self> {
        doc.vertices.sort_by_key(|v| v.id);
        let mut seen = BTreeSet::new();
        for (u, v, _) in &doc.edges {
            if !seen.insert(ordered(*u, *v)) {
                return Err(input_err!("repeated edge [{u}, {v}]"));
            }
        }
        TypedComplex::with_maximal_simplices(doc.vertices, doc.edges, doc.maximal_simplices, doc.metadata)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(n: u32) -> Vec<Vertex> {
        (0..n).map(|i| Vertex::new(i, "x")).collect()
    }

    fn span(n: u32, edges: &[(u32, u32)]) -> TypedComplex {
        TypedComplex::flag_span(plain(n), edges.iter().map(|&(u, v)| (u, v, Origin::Original)), Metadata::default())
            .unwrap()
    }

    #[test]
    fn triangle_spans_one_simplex() {
        let c = span(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(c.maximal_simplices(), &[vec![0, 1, 2]]);
        assert_eq!(c.dimension(), Some(2));
        c.validate().unwrap();
    }

    #[test]
    fn square_has_no_triangles() {
        let c = span(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(c.maximal_simplices().len(), 4);
        assert!(c.maximal_simplices().iter().all(|s| s.len() == 2));
    }

    #[test]
    fn link_of_triangle_vertex_is_an_edge() {
        let c = span(3, &[(0, 1), (1, 2), (0, 2)]);
        let l = c.link(&[0]).unwrap();
        assert_eq!(l.parent, vec![1, 2]);
        assert_eq!(l.complex.maximal_simplices(), &[vec![0, 1]]);
        assert!(c.link(&[]).is_err());
    }

    #[test]
    fn link_of_non_simplex_is_rejected() {
        let c = span(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(c.link(&[0, 2]).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(TypedComplex::flag_span(plain(2), [(0, 0, Origin::Original)], Metadata::default()).is_err());
        assert!(TypedComplex::flag_span(plain(2), [(0, 5, Origin::Original)], Metadata::default()).is_err());
        let text = r#"{"vertices":[{"id":0,"type":"x","origin":"original"},{"id":1,"type":"x","origin":"original"}],
            "edges":[[0,1,"original"],[1,0,"friend"]],"maximal_simplices":[[0,1]],"metadata":{}}"#;
        assert!(TypedComplex::from_json(text).is_err());
        let text = r#"{"vertices":[{"id":3,"type":"x"}],"edges":[],"maximal_simplices":[[3]]}"#;
        assert!(TypedComplex::from_json(text).is_err());
    }

    #[test]
    fn validate_catches_non_flag_listing() {
        let c = TypedComplex::with_maximal_simplices(
            plain(3),
            [(0, 1, Origin::Original), (1, 2, Origin::Original), (0, 2, Origin::Original)],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            Metadata::default(),
        )
        .unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut c = span(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        c.metadata.provenance = "test".into();
        c.metadata.extra.insert("note".into(), serde_json::json!("hello"));
        let text = c.to_json(false).unwrap();
        let back = TypedComplex::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(false).unwrap(), text);
        assert!(text.starts_with(r#"{"vertices":[{"id":0,"type":"x","origin":"original"}"#));
    }

    #[test]
    fn edge_origins_survive_added_edges() {
        let c = span(3, &[(0, 1), (1, 2)]);
        let d = c.with_added_edges([(0, 2, Origin::Friend), (0, 1, Origin::Friend)]).unwrap();
        assert_eq!(d.edge_origin(0, 1), Some(Origin::Original));
        assert_eq!(d.edge_origin(2, 0), Some(Origin::Friend));
        assert_eq!(d.maximal_simplices(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn simplices_of_a_triangle() {
        let c = span(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(c.simplices().len(), 7);
    }
}
