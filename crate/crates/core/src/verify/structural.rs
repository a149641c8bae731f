use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::{assemble, Scan, VerificationReport, Violation};
use crate::complex::{TypedComplex, VertexId};
use crate::coxeter::Depths;
use crate::systolize::{classify_case_as, relation_table_as, triangle_roles, CaseLabel, RelationKind, RelationTable, A, B, C, D};

fn type_indices(c: &TypedComplex) -> Option<Vec<usize>> {
    let sys = c.metadata.system.as_ref()?;
    c.vertices().iter().map(|v| sys.index_of(&v.kind)).collect()
}

/// Checks, around every type-2 vertex `w` whose star lies in the ball and
/// every pair `v, v'` of type-k neighbours of `w`: `w` is the only type-2
/// vertex adjacent to both, and every type-m vertex adjacent to both is
/// adjacent to `w`. Also searches for 6-cycles alternating between types 2
/// and k among vertices with complete stars; there must be none.
pub fn check_structural_rank3(ball: &TypedComplex) -> VerificationReport {
    let start = Instant::now();
    let report = VerificationReport::new("rank-3 structure", 1);
    let Some(sys) = ball.metadata.system.as_ref().filter(|s| s.rank() == 3) else {
        let mut report = report;
        report.violations.push(Violation::structural("complex carries a rank-3 system", vec![], "missing"));
        return report;
    };
    let Some(ty) = type_indices(ball) else {
        let mut report = report;
        report.violations.push(Violation::structural("vertex types match the system", vec![], "unknown type"));
        return report;
    };
    let Some(roles) = triangle_roles(sys) else {
        let mut report = report;
        report.elapsed = start.elapsed();
        return report;
    };
    let depths = Depths::new(ball);
    let g = ball.graph();
    let n = ball.vertex_count() as VertexId;
    let with = |vs: &[VertexId], t: usize| -> Vec<VertexId> { vs.iter().copied().filter(|&v| ty[v as usize] == t).collect() };

    let scans: Vec<Scan> = (0..n)
        .into_par_iter()
        .filter(|&w| ty[w as usize] == roles.two)
        .map(|w| {
            if depths.vertex(w) < 1 {
                return Scan::Skipped;
            }
            let ks = with(g.neighbors(w), roles.k);
            let mut out = Vec::new();
            for (i, &v) in ks.iter().enumerate() {
                for &v2 in &ks[i + 1..] {
                    let common = g.common_neighbors(&[v, v2]);
                    for x in with(&common, roles.two) {
                        if x != w {
                            out.push(Violation::structural(
                                "unique type-2 vertex adjacent to a type-k pair",
                                vec![w, v, v2, x],
                                format!("{x} is a second type-2 vertex adjacent to {v} and {v2}"),
                            ));
                        }
                    }
                    for u in with(&common, roles.m) {
                        if !g.has_edge(u, w) {
                            out.push(Violation::structural(
                                "type-m vertex adjacent to a type-k pair is adjacent to its type-2 vertex",
                                vec![w, v, v2, u],
                                format!("{u} is not adjacent to {w}"),
                            ));
                        }
                    }
                }
            }
            Scan::Checked(out)
        })
        .collect();
    let mut report = assemble(report, scans, start);

    // alternating 6-cycles k - 2 - k - 2 - k - 2, rooted at their least
    // type-k vertex and oriented so that the second type-k vertex is smaller
    // than the third
    let deep = |v: VertexId| depths.vertex(v) >= 1;
    let cycles: Vec<Violation> = (0..n)
        .into_par_iter()
        .filter(|&v| ty[v as usize] == roles.k && deep(v))
        .flat_map_iter(|v| {
            let twos = |x: VertexId| -> Vec<VertexId> {
                g.neighbors(x).iter().copied().filter(|&y| ty[y as usize] == roles.two && deep(y)).collect()
            };
            let kays = |x: VertexId| -> Vec<VertexId> {
                g.neighbors(x).iter().copied().filter(|&y| ty[y as usize] == roles.k && deep(y) && y > v).collect()
            };
            let mut out = Vec::new();
            let first = twos(v);
            for &w1 in &first {
                for v2 in kays(w1) {
                    for w2 in twos(v2) {
                        if w2 == w1 {
                            continue;
                        }
                        for v3 in kays(w2) {
                            if v3 <= v2 {
                                continue;
                            }
                            for &w3 in &first {
                                if w3 != w1 && w3 != w2 && g.has_edge(w3, v3) {
                                    out.push(Violation::structural(
                                        "no 6-cycle alternates between types 2 and k",
                                        vec![v, w1, v2, w2, v3, w3],
                                        "alternating 6-cycle",
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    report.violations.extend(cycles);
    report.elapsed = start.elapsed();
    report
}

/// Letters of the common neighbours of a set of vertices.
struct Common {
    by_letter: [Vec<VertexId>; 4],
}

impl Common {
    fn new(ball: &TypedComplex, letter: &[usize], set: &[VertexId]) -> Self {
        let mut by_letter: [Vec<VertexId>; 4] = Default::default();
        for v in ball.graph().common_neighbors(set) {
            by_letter[letter[v as usize]].push(v);
        }
        Common { by_letter }
    }

    /// Common edges whose endpoints have letters `x` and `y`.
    fn edges(&self, ball: &TypedComplex, x: usize, y: usize) -> Vec<[VertexId; 2]> {
        let mut out = Vec::new();
        for &p in &self.by_letter[x] {
            for &q in &self.by_letter[y] {
                if ball.has_edge(p, q) {
                    out.push([p, q]);
                }
            }
        }
        out
    }
}

const LETTERS: [&str; 4] = ["a", "b", "c", "d"];

fn expect_only(out: &mut Vec<Violation>, claim: &str, set: &[VertexId], found: &[VertexId], want: VertexId, letter: usize) {
    if found != [want] {
        out.push(Violation::structural(
            claim,
            set.to_vec(),
            format!("common neighbours of type {} are {found:?}, expected [{want}]", LETTERS[letter]),
        ));
    }
}

fn expect_none(out: &mut Vec<Violation>, claim: &str, set: &[VertexId], found: &[VertexId], letter: usize) {
    if !found.is_empty() {
        out.push(Violation::structural(
            claim,
            set.to_vec(),
            format!("common neighbours of type {} are {found:?}", LETTERS[letter]),
        ));
    }
}

fn check_pair(ball: &TypedComplex, table: &RelationTable, u: VertexId, v: VertexId) -> Vec<Violation> {
    let letter = &table.letter;
    let case = table.tetra.case;
    let w = table.get(u, v).expect("pair is related");
    let t = letter[u as usize];
    let set = [u, v];
    let common = Common::new(ball, letter, &set);
    let mut out = Vec::new();
    match w.kind() {
        RelationKind::Friend => {
            let other = if t == C { D } else { C };
            for &([x, y], _) in &w.ab {
                let (a, b) = if letter[x as usize] == A { (x, y) } else { (y, x) };
                let claim = "friends have unique common neighbours of types a and b";
                expect_only(&mut out, claim, &set, &common.by_letter[A], a, A);
                expect_only(&mut out, claim, &set, &common.by_letter[B], b, B);
                for &z in &common.by_letter[other] {
                    if !ball.has_edge(z, a) || !ball.has_edge(z, b) {
                        out.push(Violation::structural(
                            "common neighbours of friends are adjacent to their ab edge",
                            vec![u, v, z],
                            format!("{z} is not adjacent to both {a} and {b}"),
                        ));
                    }
                }
            }
        }
        RelationKind::Acquaintance => {
            if t == D && case == CaseLabel::II {
                out.push(Violation::structural("no acquaintances of type d in case II", set.to_vec(), "found"));
            }
            for &([x, y], _) in &w.near {
                let (lx, ly) = (letter[x as usize], letter[y as usize]);
                let (p, q, lp, lq) = if lx < ly { (x, y, lx, ly) } else { (y, x, ly, lx) };
                let excluded = match (lp, lq) {
                    (A, D) => B,
                    _ => A,
                };
                let claim = "acquaintances have unique common neighbours on their witness edge";
                expect_only(&mut out, claim, &set, &common.by_letter[lp], p, lp);
                expect_only(&mut out, claim, &set, &common.by_letter[lq], q, lq);
                expect_none(&mut out, "acquaintances have no common neighbour of the excluded type", &set, &common.by_letter[excluded], excluded);
            }
        }
    }
    out
}

fn check_set(ball: &TypedComplex, table: &RelationTable, set: &[VertexId]) -> Vec<Violation> {
    let letter = &table.letter;
    let case = table.tetra.case;
    let t = letter[set[0] as usize];
    let common = Common::new(ball, letter, set);
    let all_friends = set
        .iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| table.get(u, v).is_some_and(|w| w.kind() == RelationKind::Friend)));
    let ab = common.edges(ball, A, B);
    let mut out = Vec::new();
    if t == D && case == CaseLabel::II {
        if !all_friends || ab.is_empty() {
            out.push(Violation::structural(
                "sets of friends of type d share an ab edge",
                set.to_vec(),
                format!("pairwise friends: {all_friends}; common ab edges: {}", ab.len()),
            ));
        }
        return out;
    }
    let (candidates, name) = match (t, case) {
        (C, CaseLabel::I) => (common.edges(ball, A, D), "ad"),
        (C, _) => {
            let mut e = common.edges(ball, A, D);
            e.extend(common.edges(ball, B, D));
            (e, "ad or bd")
        }
        _ => (common.edges(ball, B, C), "bc"),
    };
    if candidates.is_empty() {
        out.push(Violation::structural(
            "related vertices share a common witness edge",
            set.to_vec(),
            format!("no common edge of type {name}"),
        ));
    } else if candidates.len() > 1 && !(all_friends && !ab.is_empty()) {
        out.push(Violation::structural(
            "the common witness edge is unique unless the set shares an ab edge",
            set.to_vec(),
            format!("common edges of type {name}: {candidates:?}"),
        ));
    }
    out
}

/// Checks the friend and acquaintance claims on a rank-4 ball, over pairs,
/// triples and quadruples of related vertices whose depth is at least
/// `margin`:
///
/// - friends share exactly one vertex of each of types a and b, and every
///   common neighbour of the remaining type is adjacent to both;
/// - acquaintances share exactly the endpoints of their witness edge among
///   those two types, and no vertex of the excluded type;
/// - pairwise related triples and quadruples share a witness edge (ad in
///   case I for type c, bc for type d; ad or bd in case II), unique unless
///   they are friends on a common ab edge;
/// - in case II, sets of friends of type d share an ab edge and no type-d
///   pair is an acquaintance.
pub fn check_structural_rank4(ball: &TypedComplex, case: CaseLabel, margin: u32) -> VerificationReport {
    let start = Instant::now();
    let margin = margin.max(1);
    let mut report = VerificationReport::new("rank-4 structure", margin);
    let recorded = ball.metadata.case.as_deref().map(str::parse::<CaseLabel>);
    if let Some(r) = &recorded {
        if r.as_ref().ok() != Some(&case) {
            report.violations.push(Violation::structural(
                "complex is in the requested case",
                vec![],
                format!("complex records case {:?}, not {case}", ball.metadata.case),
            ));
            return report;
        }
    }
    let table = match ball.metadata.system.as_ref().map(|sys| (sys, classify_case_as(sys, Some(case)))) {
        Some((sys, Ok(tetra))) if case != CaseLabel::AllGeq3 => match relation_table_as(ball, sys, tetra) {
            Ok(t) => t,
            Err(e) => {
                report.violations.push(Violation::structural("relation classification is available", vec![], e.to_string()));
                return report;
            }
        },
        Some((_, Err(e))) => {
            report.violations.push(Violation::structural("system is in the requested case", vec![], e.to_string()));
            return report;
        }
        _ => {
            report.violations.push(Violation::structural(
                "relation classification is available",
                vec![],
                "ball has no case I or II rank-4 system",
            ));
            return report;
        }
    };
    let depths = Depths::new(ball);
    let deep: Vec<bool> = (0..ball.vertex_count() as VertexId).map(|v| depths.vertex(v) >= margin).collect();

    let mut related: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut scans = Vec::new();
    let mut pairs = Vec::new();
    for &(u, v) in table.pairs.keys() {
        if deep[u as usize] && deep[v as usize] {
            pairs.push((u, v));
            related.entry(u).or_default().push(v);
            related.entry(v).or_default().push(u);
        } else {
            scans.push(Scan::Skipped);
        }
    }
    for list in related.values_mut() {
        list.sort_unstable();
    }
    let linked = |u: VertexId, v: VertexId| related.get(&u).is_some_and(|l| l.binary_search(&v).is_ok());

    let mut sets: Vec<Vec<VertexId>> = Vec::new();
    for (&u, us) in &related {
        for (i, &v) in us.iter().enumerate().filter(|(_, &v)| v > u) {
            for (j, &w) in us.iter().enumerate().skip(i + 1) {
                if !linked(v, w) {
                    continue;
                }
                sets.push(vec![u, v, w]);
                for &x in &us[j + 1..] {
                    if linked(v, x) && linked(w, x) {
                        sets.push(vec![u, v, w, x]);
                    }
                }
            }
        }
    }

    let pair_scans: Vec<Scan> = pairs.par_iter().map(|&(u, v)| Scan::Checked(check_pair(ball, &table, u, v))).collect();
    let set_scans: Vec<Scan> = sets.par_iter().map(|s| Scan::Checked(check_set(ball, &table, s))).collect();
    scans.extend(pair_scans);
    scans.extend(set_scans);
    assemble(report, scans, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_coxeter_ball, BallOptions, CoxeterSystem};

    #[test]
    fn radius_zero_passes_vacuously() {
        let sys = CoxeterSystem::from_labels("2,3,6").unwrap();
        let b = build_coxeter_ball(&sys, &BallOptions::new(0)).unwrap();
        let r = check_structural_rank3(&b);
        assert!(r.passed());
        assert_eq!(r.scanned, 0);
    }

    #[test]
    fn rank3_without_system_is_flagged() {
        assert!(!check_structural_rank3(&TypedComplex::empty()).passed());
    }

    #[test]
    fn rank4_case_mismatch_is_flagged() {
        let sys = CoxeterSystem::from_labels("2,6,3,3,6,3").unwrap();
        let b = build_coxeter_ball(&sys, &BallOptions::new(2)).unwrap();
        let r = check_structural_rank4(&b, CaseLabel::II, 1);
        assert!(!r.passed());
    }
}
