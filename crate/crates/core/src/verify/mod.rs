//! Exhaustive local checks on finite balls.
//!
//! Every check scans only objects far enough from the truncation boundary
//! (see [`Depths`]); objects closer than the margin are counted as skipped.

mod oracles;
pub mod random;
mod structural;

pub use oracles::{run_face_complex_oracle, run_lemma_oracles};
pub use structural::{check_structural_rank3, check_structural_rank4};

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{all_full_cycles, is_k_large, CycleWitness, Largeness, Origin, TypedComplex, VertexId};
use crate::coxeter::Depths;
use crate::systolize::{tetrahedron_of, CaseLabel, A, B, C, D};

/// Default margins.
pub const RANK3_MARGIN: u32 = 3;
pub const RANK4_MARGIN: u32 = 6;
pub const SIX_CYCLE_MARGIN: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Violation {
    Cycle(CycleWitness),
    Structural { claim: String, objects: Vec<VertexId>, detail: String },
}

impl Violation {
    pub fn structural(claim: &str, objects: Vec<VertexId>, detail: impl Into<String>) -> Self {
        Violation::Structural { claim: claim.to_string(), objects, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub scanned: usize,
    pub skipped_boundary: usize,
    pub violations: Vec<Violation>,
    pub margin_used: u32,
    /// Wall time; left out of the JSON form so reports are reproducible.
    #[serde(skip, default)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(check_name: &str, margin_used: u32) -> Self {
        VerificationReport {
            check_name: check_name.to_string(),
            scanned: 0,
            skipped_boundary: 0,
            violations: Vec::new(),
            margin_used,
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violations whose witness cycles are found in the given vertex set.
    pub fn cycle_witnesses(&self) -> impl Iterator<Item = &CycleWitness> {
        self.violations.iter().filter_map(|v| match v {
            Violation::Cycle(w) => Some(w),
            _ => None,
        })
    }
}

/// Outcome of scanning one object.
pub(crate) enum Scan {
    Skipped,
    Checked(Vec<Violation>),
}

pub(crate) fn assemble(mut report: VerificationReport, scans: Vec<Scan>, start: Instant) -> VerificationReport {
    for s in scans {
        match s {
            Scan::Skipped => report.skipped_boundary += 1,
            Scan::Checked(v) => {
                report.scanned += 1;
                report.violations.extend(v);
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

fn map_cycle(parent: &[VertexId], cycle: Vec<VertexId>) -> Vec<VertexId> {
    cycle.into_iter().map(|i| parent[i as usize]).collect()
}

/// Checks that the link of every vertex at depth at least `margin` is
/// k-large.
pub fn check_vertex_links(c: &TypedComplex, k: Largeness, margin: u32) -> VerificationReport {
    let start = Instant::now();
    let margin = margin.max(1);
    let depths = Depths::new(c);
    let scans = (0..c.vertex_count() as VertexId)
        .into_par_iter()
        .map(|v| {
            if depths.vertex(v) < margin {
                return Scan::Skipped;
            }
            let (parent, g) = c.link_graph(&[v]).expect("a vertex is a simplex");
            match is_k_large(&g, k) {
                (_, Some(cycle)) => Scan::Checked(vec![Violation::Cycle(CycleWitness::new(
                    map_cycle(&parent, cycle),
                    format!("link of vertex {v} (type {})", c.kind(v)),
                ))]),
                _ => Scan::Checked(Vec::new()),
            }
        })
        .collect();
    assemble(VerificationReport::new("vertex links", margin), scans, start)
}

/// Shape an edge link is expected to have in a rank-4 systolization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkShape {
    Simplex,
    InfinitelyLarge,
    Large,
}

impl LinkShape {
    fn describe(self) -> &'static str {
        match self {
            LinkShape::Simplex => "a simplex",
            LinkShape::InfinitelyLarge => "infinitely large",
            LinkShape::Large => "large",
        }
    }
}

/// Expected link shape of an edge with the given endpoint letters and origin.
pub fn expected_edge_link(case: CaseLabel, letters: (usize, usize), origin: Origin) -> LinkShape {
    let (x, y) = (letters.0.min(letters.1), letters.0.max(letters.1));
    match (origin, (x, y), case) {
        (Origin::Acquaintance, _, _) => LinkShape::Simplex,
        (Origin::Friend, _, _) => LinkShape::InfinitelyLarge,
        (_, _, CaseLabel::AllGeq3) => LinkShape::Large,
        (_, (A, B), _) => LinkShape::Simplex,
        (_, (A, D), _) => LinkShape::InfinitelyLarge,
        (_, (B, C), CaseLabel::I) => LinkShape::InfinitelyLarge,
        (_, (B, D), CaseLabel::II) => LinkShape::InfinitelyLarge,
        _ => LinkShape::Large,
    }
}

fn edge_class_name(c: &TypedComplex, u: VertexId, v: VertexId, origin: Origin) -> String {
    match origin {
        Origin::Friend | Origin::Acquaintance => format!("{origin} edge"),
        _ => {
            let mut kinds = [c.kind(u), c.kind(v)];
            kinds.sort_unstable();
            format!("{}{} edge", kinds[0], kinds[1])
        }
    }
}

/// Checks that the link of every edge whose endpoints both have depth at
/// least `margin` is k-large. For rank-4 systolizations the link is also
/// compared with its expected shape: a simplex for ab edges and edges of
/// acquaintances; infinitely large for ad edges, edges of friends, and the
/// edge type symmetric to ad (bc in case I, bd in case II).
pub fn check_edge_links(c: &TypedComplex, k: Largeness, margin: u32) -> VerificationReport {
    let start = Instant::now();
    let margin = margin.max(1);
    let depths = Depths::new(c);
    let shapes = c.metadata.system.as_ref().and_then(|sys| {
        let tetra = tetrahedron_of(c, sys).ok()?;
        let letters: Option<Vec<usize>> = c
            .vertices()
            .iter()
            .map(|v| sys.index_of(&v.kind).map(|t| tetra.letter_of(t)))
            .collect();
        Some((tetra.case, letters?))
    });
    let edges: Vec<(VertexId, VertexId, Origin)> = c.edges().collect();
    let scans = edges
        .par_iter()
        .map(|&(u, v, origin)| {
            if depths.vertex(u).min(depths.vertex(v)) < margin {
                return Scan::Skipped;
            }
            let (parent, g) = c.link_graph(&[u, v]).expect("an edge is a simplex");
            let class = edge_class_name(c, u, v, origin);
            let mut out = Vec::new();
            if let (_, Some(cycle)) = is_k_large(&g, k) {
                out.push(Violation::Cycle(CycleWitness::new(
                    map_cycle(&parent, cycle),
                    format!("link of {class} [{u}, {v}]"),
                )));
            }
            if let Some((case, letters)) = &shapes {
                let shape = expected_edge_link(*case, (letters[u as usize], letters[v as usize]), origin);
                match shape {
                    LinkShape::Simplex => {
                        let n = g.vertex_count();
                        if g.edge_count() != n * n.saturating_sub(1) / 2 {
                            out.push(Violation::structural(
                                &format!("link of {class} is {}", shape.describe()),
                                vec![u, v],
                                format!("link has {n} vertices and {} edges", g.edge_count()),
                            ));
                        }
                    }
                    LinkShape::InfinitelyLarge => {
                        if let (_, Some(cycle)) = is_k_large(&g, Largeness::Infinite) {
                            out.push(Violation::Cycle(CycleWitness::new(
                                map_cycle(&parent, cycle),
                                format!("link of {class} [{u}, {v}] should be {}", shape.describe()),
                            )));
                        }
                    }
                    LinkShape::Large => {}
                }
            }
            Scan::Checked(out)
        })
        .collect();
    assemble(VerificationReport::new("edge links", margin), scans, start)
}

/// Checks that every new edge (friend or acquaintance) of `systolized` spans
/// a triangle with a path of two original edges, and that the systolization
/// kept every vertex and edge of `original`.
pub fn check_new_edge_triangles(original: &TypedComplex, systolized: &TypedComplex) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("new edge triangles", 0);
    if original.vertex_count() != systolized.vertex_count() {
        report.violations.push(Violation::structural(
            "systolization keeps the vertex set",
            vec![],
            format!("{} vertices became {}", original.vertex_count(), systolized.vertex_count()),
        ));
        report.elapsed = start.elapsed();
        return report;
    }
    for (u, v, _) in original.edges() {
        if !systolized.has_edge(u, v) {
            report.violations.push(Violation::structural(
                "systolization keeps every edge",
                vec![u, v],
                "original edge missing",
            ));
        }
    }
    let new: Vec<(VertexId, VertexId)> =
        systolized.edges().filter(|e| e.2.is_new()).map(|(u, v, _)| (u, v)).collect();
    let scans = new
        .par_iter()
        .map(|&(u, v)| {
            let apex = original
                .graph()
                .common_neighbors(&[u, v])
                .into_iter()
                .find(|&x| systolized.has_edge(u, x) && systolized.has_edge(v, x));
            match apex {
                Some(_) => Scan::Checked(Vec::new()),
                None => Scan::Checked(vec![Violation::structural(
                    "new edge closes a triangle with two original edges",
                    vec![u, v],
                    "no common neighbour in the original complex",
                )]),
            }
        })
        .collect();
    assemble(report, scans, start)
}

/// The apex of a triangle over a new edge: the least common neighbour of its
/// endpoints in the original complex.
pub fn new_edge_apex(original: &TypedComplex, u: VertexId, v: VertexId) -> Option<VertexId> {
    original.graph().common_neighbors(&[u, v]).into_iter().next()
}

/// Checks that every full 6-cycle through vertices of depth at least
/// `margin` has a vertex adjacent to all six of its vertices.
pub fn check_full_six_cycles(c: &TypedComplex, margin: u32) -> VerificationReport {
    let start = Instant::now();
    let margin = margin.max(1);
    let depths = Depths::new(c);
    let deep: Vec<bool> = (0..c.vertex_count() as VertexId).map(|v| depths.vertex(v) >= margin).collect();
    let cycles = all_full_cycles(c.graph(), 6, |v| deep[v as usize]);
    let mut report = VerificationReport::new("full 6-cycles", margin);
    report.skipped_boundary = deep.iter().filter(|d| !**d).count();
    report.scanned = cycles.len();
    report.violations = cycles
        .into_par_iter()
        .filter(|cycle| c.graph().common_neighbors(cycle).is_empty())
        .map(|cycle| Violation::Cycle(CycleWitness::new(cycle, "full 6-cycle with no coning vertex")))
        .collect();
    report.elapsed = start.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Metadata, Vertex};

    #[test]
    fn empty_complex_passes() {
        let r = check_vertex_links(&TypedComplex::empty(), Largeness::Finite(6), 3);
        assert!(r.passed());
        assert_eq!(r.scanned, 0);
    }

    #[test]
    fn octahedron_vertex_links_are_squares() {
        let mut edges = vec![];
        for u in 0..6u32 {
            for v in u + 1..6 {
                if u / 2 != v / 2 {
                    edges.push((u, v, Origin::Original));
                }
            }
        }
        let vs = (0..6).map(|i| Vertex::new(i, "x")).collect();
        let c = TypedComplex::flag_span(vs, edges, Metadata::default()).unwrap();
        let r = check_vertex_links(&c, Largeness::Finite(6), 1);
        assert_eq!(r.violations.len(), 6);
        assert!(r.cycle_witnesses().all(|w| w.length == 4 && w.is_full_cycle_in(c.graph())));
        assert!(check_vertex_links(&c, Largeness::Finite(4), 1).passed());
    }

    #[test]
    fn report_json_round_trip() {
        let mut r = VerificationReport::new("x", 2);
        r.violations.push(Violation::Cycle(CycleWitness::new(vec![0, 1, 2, 3], "ctx")));
        r.violations.push(Violation::structural("claim", vec![1], "detail"));
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""kind":"cycle""#));
        assert!(!text.contains("elapsed"));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
