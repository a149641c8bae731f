use std::collections::{BTreeSet, HashMap};

use super::{CoxeterGroup, CoxeterSystem, Generator};
use crate::complex::{ChamberRecord, Metadata, Origin, TypedComplex, Vertex, VertexId};
use crate::error::{Error, Result};

/// Default cap on the number of chambers a ball may contain.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallOptions {
    pub radius: u32,
    pub node_budget: usize,
}

impl BallOptions {
    pub fn new(radius: u32) -> Self {
        BallOptions { radius, node_budget: DEFAULT_NODE_BUDGET }
    }
}

const NONE: u32 = u32::MAX;

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.0[root as usize] != root {
            root = self.0[root as usize];
        }
        let mut cur = x;
        while self.0[cur as usize] != root {
            let next = self.0[cur as usize];
            self.0[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so roots are first occurrences
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

/// The ball of the given radius around the base chamber in the Coxeter
/// complex: one chamber per group element of length at most `radius`.
///
/// Chambers are numbered in shortlex order of their normal forms. Vertices
/// are numbered by the first chamber containing them and then by type; the
/// type of a vertex is the name of the generator fixing the opposite face.
/// Each chamber record lists its vertices in generator order.
pub fn build_coxeter_ball(sys: &CoxeterSystem, opts: &BallOptions) -> Result<TypedComplex> {
    if !sys.all_finite() {
        return Err(Error::Unsupported("Coxeter balls need all exponents finite".into()));
    }
    let r = sys.rank();
    let group = CoxeterGroup::new(sys.clone());
    let mut words: Vec<Vec<Generator>> = vec![Vec::new()];
    let mut dist: Vec<u32> = vec![0];
    let mut links: Vec<(u32, Generator, u32)> = Vec::new();
    let mut level: Vec<Vec<Vec<Generator>>> = vec![vec![Vec::new()]];
    let mut level_start = 0usize;

    for d in 0..opts.radius {
        let mut index: HashMap<Vec<Generator>, usize> = HashMap::new();
        let mut classes: Vec<Vec<Vec<Generator>>> = Vec::new();
        let mut pending = Vec::new();
        for (off, class) in level.iter().enumerate() {
            let id = (level_start + off) as u32;
            for s in 0..r as Generator {
                if class.iter().any(|x| x.last() == Some(&s)) {
                    continue;
                }
                let mut word = class[0].clone();
                word.push(s);
                let idx = match index.get(&word) {
                    Some(&i) => i,
                    None => {
                        let cl = group.braid_class(&word);
                        let i = classes.len();
                        for x in &cl {
                            index.insert(x.clone(), i);
                        }
                        classes.push(cl);
                        i
                    }
                };
                pending.push((id, s, idx));
            }
        }
        if words.len() + classes.len() > opts.node_budget {
            return Err(Error::Budget { budget: opts.node_budget });
        }
        if classes.is_empty() {
            break;
        }
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&a, &b| classes[a][0].cmp(&classes[b][0]));
        let mut pos = vec![0usize; classes.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let base = words.len();
        for (id, s, idx) in pending {
            links.push((id, s, (base + pos[idx]) as u32));
        }
        let mut slots: Vec<Option<Vec<Vec<Generator>>>> = classes.into_iter().map(Some).collect();
        level = order.iter().map(|&i| slots[i].take().unwrap()).collect();
        for class in &level {
            words.push(class[0].clone());
            dist.push(d + 1);
        }
        level_start = base;
    }

    let n = words.len();
    let mut uf = UnionFind((0..(n * r) as u32).collect());
    for &(a, s, b) in &links {
        for t in 0..r {
            if t != s as usize {
                uf.union(a * r as u32 + t as u32, b * r as u32 + t as u32);
            }
        }
    }
    let mut vertex_of_root = vec![NONE; n * r];
    let mut vertices = Vec::new();
    let mut chamber_vertices = Vec::with_capacity(n);
    for c in 0..n {
        let mut vs = Vec::with_capacity(r);
        for t in 0..r {
            let root = uf.find((c * r + t) as u32) as usize;
            if vertex_of_root[root] == NONE {
                let id = vertices.len() as VertexId;
                vertex_of_root[root] = id;
                vertices.push(Vertex::new(id, sys.name(t)));
            }
            vs.push(vertex_of_root[root]);
        }
        chamber_vertices.push(vs);
    }

    let mut edges = BTreeSet::new();
    for vs in &chamber_vertices {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    let chambers: Vec<ChamberRecord> = chamber_vertices
        .iter()
        .zip(&words)
        .zip(&dist)
        .map(|((vs, w), &distance)| ChamberRecord { word: sys.format_word(w), vertices: vs.clone(), distance })
        .collect();
    let metadata = Metadata {
        provenance: "coxeter ball".into(),
        system: Some(sys.clone()),
        radius: Some(opts.radius),
        chambers,
        ..Default::default()
    };
    TypedComplex::with_maximal_simplices(
        vertices,
        edges.into_iter().map(|(u, v)| (u, v, Origin::Original)),
        chamber_vertices,
        metadata,
    )
}

/// Distance of simplices from the truncation boundary of a ball, computed
/// from the chamber records in the metadata.
///
/// A simplex with a finite star has depth `radius - max` over the distances
/// of the chambers containing it, so depth at least 1 means its whole star
/// lies in the ball. A simplex with an infinite star has depth `radius - min`:
/// the number of further gallery steps around its nearest chamber that are
/// guaranteed to be present. Complexes without chamber records are treated as
/// having no boundary.
#[derive(Clone, Debug)]
pub struct Depths {
    radius: u32,
    bounded: bool,
    chambers_of: Vec<Vec<u32>>,
    distance: Vec<u32>,
    types: Vec<Option<usize>>,
    sys: Option<CoxeterSystem>,
}

impl Depths {
    pub fn new(c: &TypedComplex) -> Self {
        let meta = &c.metadata;
        let bounded = meta.radius.is_some() && !meta.chambers.is_empty();
        let mut chambers_of = vec![Vec::new(); c.vertex_count()];
        if bounded {
            for (i, ch) in meta.chambers.iter().enumerate() {
                for &v in &ch.vertices {
                    if let Some(list) = chambers_of.get_mut(v as usize) {
                        list.push(i as u32);
                    }
                }
            }
        }
        let sys = meta.system.clone();
        let types = c
            .vertices()
            .iter()
            .map(|v| sys.as_ref().and_then(|s| s.index_of(&v.kind)))
            .collect();
        Depths {
            radius: meta.radius.unwrap_or(0),
            bounded,
            chambers_of,
            distance: meta.chambers.iter().map(|ch| ch.distance).collect(),
            types,
            sys,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// Indices of the chamber records containing every vertex of `sigma`.
    pub fn chambers_containing(&self, sigma: &[VertexId]) -> Vec<u32> {
        let Some((&first, rest)) = sigma.split_first() else {
            return Vec::new();
        };
        let mut out = self.chambers_of[first as usize].clone();
        for &v in rest {
            let other = &self.chambers_of[v as usize];
            out.retain(|c| other.binary_search(c).is_ok());
        }
        out
    }

    fn type_set(&self, sigma: &[VertexId]) -> Option<Vec<usize>> {
        let mut ts: Vec<usize> = sigma.iter().map(|&v| self.types[v as usize]).collect::<Option<_>>()?;
        ts.sort_unstable();
        ts.dedup();
        Some(ts)
    }

    /// Number of chambers in the full star of `sigma`, if finite and known.
    pub fn star_size(&self, sigma: &[VertexId]) -> Option<u64> {
        let sys = self.sys.as_ref()?;
        sys.star_size(&self.type_set(sigma)?)
    }

    pub fn star_complete(&self, sigma: &[VertexId]) -> bool {
        if !self.bounded {
            return true;
        }
        match self.star_size(sigma) {
            Some(n) => self.chambers_containing(sigma).len() as u64 == n,
            None => false,
        }
    }

    pub fn simplex(&self, sigma: &[VertexId]) -> u32 {
        if !self.bounded {
            return u32::MAX;
        }
        let ds = self.chambers_containing(sigma).into_iter().map(|c| self.distance[c as usize]);
        let infinite = self.sys.is_some() && self.type_set(sigma).is_some() && self.star_size(sigma).is_none();
        let d = if infinite { ds.min() } else { ds.max() };
        d.map_or(0, |d| self.radius.saturating_sub(d))
    }

    pub fn vertex(&self, v: VertexId) -> u32 {
        self.simplex(&[v])
    }
}

/// Depth of a single vertex; see [`Depths`].
pub fn vertex_depth(c: &TypedComplex, v: VertexId) -> u32 {
    Depths::new(c).vertex(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Exponent;

    fn tri(l: u32, k: u32, m: u32) -> CoxeterSystem {
        CoxeterSystem::triangle([l, k, m].map(Exponent::Finite)).unwrap()
    }

    #[test]
    fn radius_zero_is_one_chamber() {
        let b = build_coxeter_ball(&tri(2, 3, 6), &BallOptions::new(0)).unwrap();
        assert_eq!(b.maximal_simplices(), &[vec![0, 1, 2]]);
        let kinds: Vec<&str> = b.vertices().iter().map(|v| v.kind.as_str()).collect();
        assert_eq!(kinds, ["2", "3", "6"]);
        let d = Depths::new(&b);
        assert!((0..3).all(|v| d.vertex(v) == 0));
    }

    #[test]
    fn radius_one_has_four_chambers_sharing_panels() {
        let b = build_coxeter_ball(&tri(2, 3, 6), &BallOptions::new(1)).unwrap();
        assert_eq!(b.maximal_simplices().len(), 4);
        assert_eq!(b.vertex_count(), 6);
        let base = &b.metadata.chambers[0].vertices;
        for ch in &b.metadata.chambers[1..] {
            let shared = ch.vertices.iter().filter(|v| base.contains(v)).count();
            assert_eq!(shared, 2);
            assert_eq!(ch.distance, 1);
        }
        b.validate().unwrap();
    }

    #[test]
    fn budget_and_unsupported() {
        let err = build_coxeter_ball(&tri(2, 3, 6), &BallOptions { radius: 10, node_budget: 20 });
        assert!(matches!(err, Err(Error::Budget { budget: 20 })));
        let inf = CoxeterSystem::triangle([Exponent::Finite(2), Exponent::Finite(3), Exponent::Infinite]).unwrap();
        assert!(matches!(build_coxeter_ball(&inf, &BallOptions::new(1)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn finite_group_ball_stops_growing() {
        // (2,3,3) is the symmetric group on 4 letters
        let b = build_coxeter_ball(&tri(2, 3, 3), &BallOptions::new(20)).unwrap();
        assert_eq!(b.maximal_simplices().len(), 24);
        assert_eq!(b.vertex_count(), 14);
    }
}
