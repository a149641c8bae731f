use std::collections::{BTreeSet, HashMap};

use super::{Metadata, Origin, TypedComplex, Vertex, VertexId};
use crate::coxeter::CoxeterSystem;
use crate::error::Result;

/// Sorted type labels of the vertices of `face`.
fn type_set(c: &TypedComplex, face: &[VertexId]) -> BTreeSet<String> {
    face.iter().map(|&v| c.kind(v).to_string()).collect()
}

fn type_set_label(set: &BTreeSet<String>) -> String {
    set.iter().map(String::as_str).collect::<Vec<_>>().join("+")
}

/// One vertex per simplex of `c`, in the order of [`TypedComplex::simplices`].
fn simplex_vertices(c: &TypedComplex) -> (Vec<Vec<VertexId>>, Vec<Vertex>, HashMap<Vec<VertexId>, VertexId>) {
    let simplices = c.simplices();
    let vertices = simplices
        .iter()
        .enumerate()
        .map(|(i, s)| Vertex {
            id: i as VertexId,
            kind: type_set_label(&type_set(c, s)),
            origin: Origin::Derived,
            face: Some(s.clone()),
        })
        .collect();
    let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as VertexId)).collect();
    (simplices, vertices, index)
}

fn proper_faces(s: &[VertexId]) -> impl Iterator<Item = Vec<VertexId>> + '_ {
    let full = (1u32 << s.len()) - 1;
    (1..full).map(move |mask| {
        s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
    })
}

fn derived_metadata(c: &TypedComplex, provenance: &str) -> Metadata {
    Metadata {
        provenance: provenance.to_string(),
        system: c.metadata.system.clone(),
        radius: c.metadata.radius,
        case: c.metadata.case.clone(),
        ..Default::default()
    }
}

/// Vertices are the simplices of `c`; simplices are chains under inclusion.
pub fn barycentric_subdivision(c: &TypedComplex) -> Result<TypedComplex> {
    let (simplices, vertices, index) = simplex_vertices(c);
    let mut edges = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        for f in proper_faces(s) {
            edges.push((index[&f], i as VertexId, Origin::Derived));
        }
    }
    TypedComplex::flag_span(vertices, edges, derived_metadata(c, "barycentric subdivision"))
}

/// Vertices are the simplices of `c`; a set of them spans a simplex when they
/// all lie in a common simplex of `c`.
pub fn face_complex(c: &TypedComplex) -> Result<TypedComplex> {
    let (_, vertices, index) = simplex_vertices(c);
    let mut edges = BTreeSet::new();
    let mut maximal = Vec::with_capacity(c.maximal_simplices().len());
    for m in c.maximal_simplices() {
        let full = (1u32 << m.len()) - 1;
        let faces: Vec<VertexId> = (1..=full)
            .map(|mask| {
                let f: Vec<VertexId> =
                    m.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                index[&f]
            })
            .collect();
        for (i, &a) in faces.iter().enumerate() {
            for &b in &faces[i + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        maximal.push(faces);
    }
    TypedComplex::with_maximal_simplices(
        vertices,
        edges.into_iter().map(|(a, b)| (a, b, Origin::Derived)),
        maximal,
        derived_metadata(c, "face complex"),
    )
}

/// Barycentric subdivision of `c` with the open stars of the barycenters of
/// simplices whose type set is listed in `infinite_types` removed.
pub fn davis_realization(c: &TypedComplex, infinite_types: &BTreeSet<BTreeSet<String>>) -> Result<TypedComplex> {
    let sd = barycentric_subdivision(c)?;
    let remove: BTreeSet<VertexId> = sd
        .vertices()
        .iter()
        .filter(|v| infinite_types.contains(&type_set(c, v.face.as_deref().unwrap_or_default())))
        .map(|v| v.id)
        .collect();
    let mut out = sd.remove_open_stars(&remove)?.complex;
    out.metadata.provenance = "davis realization".into();
    Ok(out)
}

/// Type sets (as generator-name sets) of the simplices whose stabilizer is
/// infinite.
pub fn infinite_type_sets(sys: &CoxeterSystem) -> BTreeSet<BTreeSet<String>> {
    let r = sys.rank();
    (1u32..(1 << r) - 1)
        .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect::<Vec<usize>>())
        .filter(|types| sys.star_size(types).is_none())
        .map(|types| types.iter().map(|&i| sys.name(i).to_string()).collect())
        .collect()
}
