//! Systolizations of Coxeter balls: extra edges that turn the 2- and
//! 3-dimensional Coxeter realizations into complexes with 6-large links.

mod graphs;
mod rank4;

pub(crate) use graphs::collapse_hypothesis;
pub use graphs::{check_collapse_hypothesis, gamma_star, gamma_tilde, GammaStar, GammaTilde, TildeVertex};
pub(crate) use rank4::relation_table_as;
pub use rank4::{classify_relation, explicit_rank4_edges, relation_table, systolize_rank4, Relation, RelationKind, RelationTable};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{face_complex, Metadata, Origin, TypedComplex, VertexId};
use crate::coxeter::{sorted_triple, triangle_is_finite, CoxeterSystem, Depths, Exponent, EXCLUDED_TRIANGLES};
use crate::error::{input_err, Error, Result};

/// Which of the admissible tetrahedral types a rank-4 system has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    I,
    II,
    #[serde(rename = "all_geq_3")]
    AllGeq3,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::AllGeq3 => "all_geq_3",
        })
    }
}

impl std::str::FromStr for CaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "1" => Ok(CaseLabel::I),
            "II" | "ii" | "2" => Ok(CaseLabel::II),
            "all_geq_3" => Ok(CaseLabel::AllGeq3),
            _ => Err(input_err!("unknown case {s:?}")),
        }
    }
}

/// Letters of the base tetrahedron.
pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

/// A rank-4 case together with the generator playing each letter:
/// `letters[A]` is the generator index of type a, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tetrahedron {
    pub case: CaseLabel,
    pub letters: [usize; 4],
}

impl Tetrahedron {
    /// Letter of a generator index.
    pub fn letter_of(&self, generator: usize) -> usize {
        self.letters.iter().position(|&g| g == generator).expect("generator of a rank-4 system")
    }
}

fn finite_exponent(e: Exponent) -> u32 {
    e.finite().unwrap_or(u32::MAX)
}

fn rank3_subgroup_problem(sys: &CoxeterSystem, omit: usize) -> Option<String> {
    let g: Vec<usize> = (0..4).filter(|&i| i != omit).collect();
    let e = [
        sys.exponent(g[0], g[1]),
        sys.exponent(g[0], g[2]),
        sys.exponent(g[1], g[2]),
    ];
    let e = e.map(|x| x.finite()).map(|x| x.unwrap_or(u32::MAX));
    let t = sorted_triple(e);
    if triangle_is_finite(t) {
        return Some(format!("special subgroup without {} is finite {t:?}", sys.name(omit)));
    }
    if EXCLUDED_TRIANGLES.contains(&t) {
        return Some(format!("special subgroup without {} has excluded type {t:?}", sys.name(omit)));
    }
    None
}

/// Identifies the letters a, b, c, d of a rank-4 system: ab is the unique
/// edge labeled 2, ac is labeled at least 6 and ad at least 3; case I has bd
/// labeled at least 6, case II has bc labeled at least 6. When both cases fit
/// case I is reported.
pub fn classify_case(sys: &CoxeterSystem) -> Result<Tetrahedron> {
    classify_case_as(sys, None)
}

/// Like [`classify_case`], but only accepts letter assignments of the
/// requested case.
pub fn classify_case_as(sys: &CoxeterSystem, requested: Option<CaseLabel>) -> Result<Tetrahedron> {
    if sys.rank() != 4 {
        return Err(Error::Ineligible(format!("rank {} system has no tetrahedral case", sys.rank())));
    }
    if !sys.all_finite() {
        return Err(Error::Ineligible("infinite exponent".into()));
    }
    for omit in 0..4 {
        if let Some(problem) = rank3_subgroup_problem(sys, omit) {
            return Err(Error::Ineligible(problem));
        }
    }
    let label = |x: usize, y: usize| finite_exponent(sys.label(&[x, y]).expect("edge of a tetrahedron"));
    let twos: Vec<(usize, usize)> =
        (0..4).flat_map(|x| (x + 1..4).map(move |y| (x, y))).filter(|&(x, y)| label(x, y) == 2).collect();
    let allowed = |case: CaseLabel| requested.is_none_or(|r| r == case);
    match twos[..] {
        [] if allowed(CaseLabel::AllGeq3) => {
            return Ok(Tetrahedron { case: CaseLabel::AllGeq3, letters: [0, 1, 2, 3] })
        }
        [] => return Err(Error::Ineligible("all exponents are at least 3".into())),
        [_] => {}
        _ => return Err(Error::Ineligible(format!("{} exponents equal to 2", twos.len()))),
    }
    let (x, y) = twos[0];
    let rest: Vec<usize> = (0..4).filter(|&i| i != x && i != y).collect();
    let assignments = [
        [x, y, rest[0], rest[1]],
        [x, y, rest[1], rest[0]],
        [y, x, rest[0], rest[1]],
        [y, x, rest[1], rest[0]],
    ];
    for case in [CaseLabel::I, CaseLabel::II].into_iter().filter(|&c| allowed(c)) {
        for l in assignments {
            let ok = label(l[A], l[C]) >= 6
                && label(l[A], l[D]) >= 3
                && match case {
                    CaseLabel::I => label(l[B], l[C]) >= 3 && label(l[B], l[D]) >= 6,
                    _ => label(l[B], l[C]) >= 6 && label(l[B], l[D]) >= 3,
                };
            if ok {
                return Ok(Tetrahedron { case, letters: l });
            }
        }
    }
    match requested {
        Some(case) => Err(Error::Ineligible(format!("no assignment of letters fits case {case}"))),
        None => Err(Error::Ineligible("no assignment of letters fits case I or case II".into())),
    }
}

/// Letters of a rank-4 complex, honouring a case recorded in its metadata.
pub fn tetrahedron_of(c: &TypedComplex, sys: &CoxeterSystem) -> Result<Tetrahedron> {
    let requested = c.metadata.case.as_deref().map(str::parse).transpose()?;
    classify_case_as(sys, requested)
}

/// Generator indices of the vertex types 2, k and m of a triangle system
/// with a label-2 vertex. The m type is the one with label at least 6 (the
/// later one if both qualify), or the later of the two otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleRoles {
    pub two: usize,
    pub k: usize,
    pub m: usize,
}

pub fn triangle_roles(sys: &CoxeterSystem) -> Option<TriangleRoles> {
    if sys.rank() != 3 {
        return None;
    }
    let labels: Vec<u32> = (0..3).map(|i| finite_exponent(sys.label(&[i]).unwrap())).collect();
    let two = labels.iter().position(|&l| l == 2)?;
    let others: Vec<usize> = (0..3).filter(|&i| i != two).collect();
    let (k, m) = if labels[others[1]] >= 6 || labels[others[0]] < 6 {
        (others[0], others[1])
    } else {
        (others[1], others[0])
    };
    Some(TriangleRoles { two, k, m })
}

/// What the rank-3 construction does for a system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrianglePlan {
    /// All labels at least 3: the complex is already systolic.
    Identity,
    Systolize(TriangleRoles),
}

/// Eligibility of a triangle system. With `force`, excluded types are let
/// through (for negative testing); finite and infinite-exponent systems are
/// always rejected.
pub fn triangle_plan(sys: &CoxeterSystem, force: bool) -> Result<TrianglePlan> {
    if sys.rank() != 3 {
        return Err(Error::Ineligible(format!("rank {} system is not a triangle system", sys.rank())));
    }
    if !sys.all_finite() {
        return Err(Error::Ineligible("infinite exponent".into()));
    }
    let labels = [0, 1, 2].map(|i| finite_exponent(sys.label(&[i]).unwrap()));
    let t = sorted_triple(labels);
    if triangle_is_finite(t) {
        return Err(Error::Ineligible(format!("triangle type {t:?} is finite")));
    }
    if EXCLUDED_TRIANGLES.contains(&t) && !force {
        return Err(Error::Ineligible(format!("triangle type {t:?} admits no systolization")));
    }
    if t[0] >= 3 {
        return Ok(TrianglePlan::Identity);
    }
    Ok(TrianglePlan::Systolize(triangle_roles(sys).expect("a label equals 2")))
}

/// Generator index of each vertex, from its type name.
pub(crate) fn vertex_types(c: &TypedComplex, sys: &CoxeterSystem) -> Result<Vec<usize>> {
    c.vertices()
        .iter()
        .map(|v| sys.index_of(&v.kind).ok_or_else(|| input_err!("vertex {} has unknown type {:?}", v.id, v.kind)))
        .collect()
}

pub(crate) fn check_system(ball: &TypedComplex, sys: &CoxeterSystem) -> Result<()> {
    match &ball.metadata.system {
        Some(s) if s != sys => Err(input_err!("complex was built for a different Coxeter system")),
        _ => Ok(()),
    }
}

fn derived(ball: &TypedComplex, sys: &CoxeterSystem, provenance: &str) -> Metadata {
    let mut meta = ball.metadata.clone();
    meta.provenance = provenance.to_string();
    meta.system = Some(sys.clone());
    meta
}

/// Joins every pair of type-k vertices that share a type-2 vertex whose star
/// lies entirely in the ball. New edges are tagged `friend`.
pub fn systolize_rank3(ball: &TypedComplex, sys: &CoxeterSystem, force: bool) -> Result<TypedComplex> {
    check_system(ball, sys)?;
    let roles = match triangle_plan(sys, force)? {
        TrianglePlan::Identity => return Ok(ball.clone()),
        TrianglePlan::Systolize(r) => r,
    };
    let types = vertex_types(ball, sys)?;
    let depths = Depths::new(ball);
    let mut new = BTreeSet::new();
    for w in 0..ball.vertex_count() as VertexId {
        if types[w as usize] != roles.two || !depths.star_complete(&[w]) {
            continue;
        }
        let ks: Vec<VertexId> =
            ball.neighbors(w).iter().copied().filter(|&v| types[v as usize] == roles.k).collect();
        for (i, &u) in ks.iter().enumerate() {
            for &v in &ks[i + 1..] {
                if !ball.has_edge(u, v) {
                    new.insert((u, v));
                }
            }
        }
    }
    let mut out = ball.with_added_edges(new.into_iter().map(|(u, v)| (u, v, Origin::Friend)))?;
    out.metadata = derived(ball, sys, "rank-3 systolization");
    if force && matches!(triangle_plan(sys, false), Err(Error::Ineligible(_))) {
        out.metadata.extra.insert("forced".into(), serde_json::Value::Bool(true));
    }
    Ok(out)
}

/// Systolization by rank, with the identity for systems whose labels are all
/// at least 3.
pub fn systolize(ball: &TypedComplex, sys: &CoxeterSystem, force: bool) -> Result<TypedComplex> {
    match sys.rank() {
        3 => systolize_rank3(ball, sys, force),
        4 => systolize_rank4(ball, sys),
        r => Err(Error::Ineligible(format!("rank {r} is not supported"))),
    }
}

/// Face complex of the systolization. In rank 4 the open stars of the
/// vertices standing for vertices of the ball are removed as well.
pub fn davis_systolization(ball: &TypedComplex, sys: &CoxeterSystem, force: bool) -> Result<TypedComplex> {
    let hat = systolize(ball, sys, force)?;
    let mut f = face_complex(&hat)?;
    if sys.rank() == 4 {
        let corners: BTreeSet<VertexId> = f
            .vertices()
            .iter()
            .filter(|v| v.face.as_ref().is_some_and(|s| s.len() == 1))
            .map(|v| v.id)
            .collect();
        f = f.remove_open_stars(&corners)?.complex;
    }
    f.metadata.provenance = "davis systolization".into();
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(m: u32) -> Exponent {
        Exponent::Finite(m)
    }

    fn tetra(labels: [u32; 6]) -> CoxeterSystem {
        CoxeterSystem::tetrahedral(labels.map(fin)).unwrap()
    }

    #[test]
    fn tetrahedral_cases() {
        let t = classify_case(&tetra([2, 6, 3, 3, 6, 3])).unwrap();
        assert_eq!(t, Tetrahedron { case: CaseLabel::I, letters: [0, 1, 2, 3] });
        let t = classify_case(&tetra([2, 6, 3, 6, 3, 3])).unwrap();
        assert_eq!(t, Tetrahedron { case: CaseLabel::II, letters: [0, 1, 2, 3] });
        assert_eq!(classify_case(&tetra([3; 6])).unwrap().case, CaseLabel::AllGeq3);
    }

    #[test]
    fn requested_case() {
        // bc and bd both labeled 6: either case fits, case I by default
        let both = tetra([2, 6, 3, 6, 6, 3]);
        assert_eq!(classify_case(&both).unwrap().case, CaseLabel::I);
        assert_eq!(classify_case_as(&both, Some(CaseLabel::II)).unwrap().case, CaseLabel::II);
        assert!(classify_case_as(&tetra([2, 6, 3, 3, 6, 3]), Some(CaseLabel::II)).is_err());
        assert!(classify_case_as(&tetra([3; 6]), Some(CaseLabel::I)).is_err());
    }

    #[test]
    fn case_letters_found_under_relabeling() {
        // the label-2 edge placed on the generators named c and d
        let t = classify_case(&tetra([3, 6, 3, 3, 6, 2])).unwrap();
        assert_eq!(t.case, CaseLabel::I);
        let mut ab = [t.letters[A], t.letters[B]];
        ab.sort();
        assert_eq!(ab, [2, 3]);
    }

    #[test]
    fn ineligible_tetrahedra() {
        // two exponents 2
        assert!(classify_case(&tetra([2, 6, 3, 3, 6, 2])).is_err());
        // vertex a sees (2,4,4) via ab, ac, ad
        assert!(classify_case(&tetra([2, 4, 4, 3, 6, 3])).is_err());
        // finite special subgroup (2,3,3)
        assert!(classify_case(&tetra([2, 3, 3, 3, 6, 3])).is_err());
    }

    #[test]
    fn triangle_eligibility() {
        let t = |l: u32, k: u32, m: u32| CoxeterSystem::triangle([fin(l), fin(k), fin(m)]).unwrap();
        assert_eq!(triangle_plan(&t(2, 3, 6), false).unwrap(), TrianglePlan::Systolize(TriangleRoles { two: 0, k: 1, m: 2 }));
        assert_eq!(triangle_plan(&t(2, 6, 3), false).unwrap(), TrianglePlan::Systolize(TriangleRoles { two: 0, k: 2, m: 1 }));
        assert_eq!(triangle_plan(&t(2, 6, 6), false).unwrap(), TrianglePlan::Systolize(TriangleRoles { two: 0, k: 1, m: 2 }));
        assert_eq!(triangle_plan(&t(3, 3, 4), false).unwrap(), TrianglePlan::Identity);
        assert!(triangle_plan(&t(2, 4, 4), false).is_err());
        assert!(triangle_plan(&t(2, 4, 4), true).is_ok());
        assert!(triangle_plan(&t(2, 3, 5), true).is_err());
    }
}
