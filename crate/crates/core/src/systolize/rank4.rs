use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_system, derived, tetrahedron_of, vertex_types, CaseLabel, Tetrahedron, A, B, C, D};
use crate::complex::{Origin, TypedComplex, VertexId};
use crate::coxeter::{CoxeterSystem, Depths};
use crate::error::{input_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Friend,
    Acquaintance,
}

impl From<RelationKind> for Origin {
    fn from(k: RelationKind) -> Self {
        match k {
            RelationKind::Friend => Origin::Friend,
            RelationKind::Acquaintance => Origin::Acquaintance,
        }
    }
}

/// How two vertices of type c (or d) are related, with the edges certifying
/// it: common ab edges for friends, common edges labeled k or k' for
/// acquaintances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub witnesses: Vec<[VertexId; 2]>,
}

/// A witness edge and whether its whole star lies in the ball.
pub type Witness = ([VertexId; 2], bool);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairWitnesses {
    /// Common edges of type ab.
    pub ab: Vec<Witness>,
    /// Common edges labeled k or k'.
    pub near: Vec<Witness>,
}

impl PairWitnesses {
    pub fn kind(&self) -> RelationKind {
        if self.ab.is_empty() {
            RelationKind::Acquaintance
        } else {
            RelationKind::Friend
        }
    }

    pub fn has_complete_witness(&self) -> bool {
        self.ab.iter().chain(&self.near).any(|w| w.1)
    }
}

/// All related pairs of a rank-4 ball, found by scanning witness edges.
#[derive(Clone, Debug)]
pub struct RelationTable {
    pub tetra: Tetrahedron,
    /// Letter (a = 0, ..., d = 3) of every vertex.
    pub letter: Vec<usize>,
    pub pairs: BTreeMap<(VertexId, VertexId), PairWitnesses>,
}

impl RelationTable {
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<&PairWitnesses> {
        self.pairs.get(&(u.min(v), u.max(v)))
    }

    pub fn related(&self, u: VertexId, v: VertexId) -> bool {
        self.get(u, v).is_some()
    }
}

fn letter_pair(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

/// Which vertex letter an edge of the given letters relates, and whether it
/// is an ab witness. Friends of either type share an ab edge; c-pairs also
/// relate through ad (and bd in case II), d-pairs through bc in case I.
fn witness_roles(case: CaseLabel, edge: (usize, usize)) -> &'static [(usize, bool)] {
    match (edge, case) {
        ((A, B), _) => &[(C, true), (D, true)],
        ((A, D), _) => &[(C, false)],
        ((B, D), CaseLabel::II) => &[(C, false)],
        ((B, C), CaseLabel::I) => &[(D, false)],
        _ => &[],
    }
}

pub(crate) fn letters_of(ball: &TypedComplex, sys: &CoxeterSystem, tetra: &Tetrahedron) -> Result<Vec<usize>> {
    Ok(vertex_types(ball, sys)?.into_iter().map(|t| tetra.letter_of(t)).collect())
}

/// Scans every original edge of the ball that can witness a relation and
/// records the pairs of same-type vertices in its link.
pub fn relation_table(ball: &TypedComplex, sys: &CoxeterSystem) -> Result<RelationTable> {
    relation_table_as(ball, sys, tetrahedron_of(ball, sys)?)
}

pub(crate) fn relation_table_as(ball: &TypedComplex, sys: &CoxeterSystem, tetra: Tetrahedron) -> Result<RelationTable> {
    let letter = letters_of(ball, sys, &tetra)?;
    let depths = Depths::new(ball);
    let edges: Vec<(VertexId, VertexId)> =
        ball.edges().filter(|e| e.2 == Origin::Original).map(|(u, v, _)| (u, v)).collect();
    let found: Vec<Vec<((VertexId, VertexId), [VertexId; 2], bool, bool)>> = edges
        .par_iter()
        .map(|&(x, y)| {
            let roles = witness_roles(tetra.case, letter_pair(letter[x as usize], letter[y as usize]));
            if roles.is_empty() {
                return Vec::new();
            }
            let complete = depths.star_complete(&[x, y]);
            let link: Vec<VertexId> = ball
                .graph()
                .common_neighbors(&[x, y])
                .into_iter()
                .filter(|&z| ball.edge_origin(x, z) == Some(Origin::Original) && ball.edge_origin(y, z) == Some(Origin::Original))
                .collect();
            let mut out = Vec::new();
            for &(target, is_ab) in roles {
                let same: Vec<VertexId> = link.iter().copied().filter(|&z| letter[z as usize] == target).collect();
                for (i, &u) in same.iter().enumerate() {
                    for &v in &same[i + 1..] {
                        out.push(((u, v), [x, y], complete, is_ab));
                    }
                }
            }
            out
        })
        .collect();
    let mut pairs: BTreeMap<(VertexId, VertexId), PairWitnesses> = BTreeMap::new();
    for (pair, edge, complete, is_ab) in found.into_iter().flatten() {
        let entry = pairs.entry(pair).or_default();
        if is_ab {
            entry.ab.push((edge, complete));
        } else {
            entry.near.push((edge, complete));
        }
    }
    Ok(RelationTable { tetra, letter, pairs })
}

/// Joins friends and acquaintances. A pair is joined when at least one of its
/// witness edges has its whole star in the ball; it is tagged `friend` when
/// it shares an ab edge, `acquaintance` otherwise.
pub fn systolize_rank4(ball: &TypedComplex, sys: &CoxeterSystem) -> Result<TypedComplex> {
    check_system(ball, sys)?;
    let tetra = tetrahedron_of(ball, sys)?;
    let mut out = if tetra.case == CaseLabel::AllGeq3 {
        ball.clone()
    } else {
        let table = relation_table_as(ball, sys, tetra)?;
        let new = table
            .pairs
            .iter()
            .filter(|(_, w)| w.has_complete_witness())
            .map(|(&(u, v), w)| (u, v, Origin::from(w.kind())));
        ball.with_added_edges(new)?
    };
    out.metadata = derived(ball, sys, "rank-4 systolization");
    out.metadata.case = Some(tetra.case.to_string());
    Ok(out)
}

/// The new edges spelled out per case: in case I, c-pairs on a common ad
/// edge and d-pairs on a common bc edge; in case II, c-pairs on a common ad
/// or bd edge and d-pairs on a common ab edge. Only witness edges with
/// complete stars count.
pub fn explicit_rank4_edges(ball: &TypedComplex, sys: &CoxeterSystem) -> Result<BTreeSet<(VertexId, VertexId)>> {
    let tetra = tetrahedron_of(ball, sys)?;
    let letter = letters_of(ball, sys, &tetra)?;
    let depths = Depths::new(ball);
    let rules: &[((usize, usize), usize)] = match tetra.case {
        CaseLabel::I => &[((A, D), C), ((B, C), D)],
        CaseLabel::II => &[((A, D), C), ((B, D), C), ((A, B), D)],
        CaseLabel::AllGeq3 => &[],
    };
    let mut out = BTreeSet::new();
    for (x, y, o) in ball.edges() {
        if o != Origin::Original {
            continue;
        }
        let lp = letter_pair(letter[x as usize], letter[y as usize]);
        for &(edge, target) in rules {
            if lp != edge || !depths.star_complete(&[x, y]) {
                continue;
            }
            let same: Vec<VertexId> = ball
                .graph()
                .common_neighbors(&[x, y])
                .into_iter()
                .filter(|&z| letter[z as usize] == target)
                .collect();
            for (i, &u) in same.iter().enumerate() {
                for &v in &same[i + 1..] {
                    out.insert((u, v));
                }
            }
        }
    }
    Ok(out)
}

/// Relation between two vertices of the same type c or d, computed directly
/// from their common neighbours. Both vertices must lie strictly inside the
/// ball.
pub fn classify_relation(ball: &TypedComplex, u: VertexId, v: VertexId) -> Result<Option<Relation>> {
    let sys = ball.metadata.system.as_ref().ok_or_else(|| input_err!("complex carries no Coxeter system"))?;
    let tetra = tetrahedron_of(ball, sys)?;
    if tetra.case == CaseLabel::AllGeq3 {
        return Err(Error::Precondition("relations are defined only in cases I and II".into()));
    }
    let n = ball.vertex_count() as VertexId;
    if u >= n || v >= n {
        return Err(input_err!("unknown vertex"));
    }
    if u == v {
        return Err(Error::Precondition("a vertex is not related to itself".into()));
    }
    let letter = letters_of(ball, sys, &tetra)?;
    let lu = letter[u as usize];
    if lu != letter[v as usize] || !(lu == C || lu == D) {
        return Err(Error::Precondition("vertices must share type c or d".into()));
    }
    let depths = Depths::new(ball);
    if depths.vertex(u) == 0 || depths.vertex(v) == 0 {
        return Err(Error::Precondition("vertices must lie inside the ball".into()));
    }
    let common = ball.graph().common_neighbors(&[u, v]);
    let mut ab = Vec::new();
    let mut near = Vec::new();
    for (i, &x) in common.iter().enumerate() {
        for &y in &common[i + 1..] {
            if !ball.has_edge(x, y) {
                continue;
            }
            let lp = letter_pair(letter[x as usize], letter[y as usize]);
            for &(target, is_ab) in witness_roles(tetra.case, lp) {
                if target == lu {
                    if is_ab {
                        ab.push([x, y]);
                    } else {
                        near.push([x, y]);
                    }
                }
            }
        }
    }
    Ok(if !ab.is_empty() {
        Some(Relation { kind: RelationKind::Friend, witnesses: ab })
    } else if !near.is_empty() {
        Some(Relation { kind: RelationKind::Acquaintance, witnesses: near })
    } else {
        None
    })
}
