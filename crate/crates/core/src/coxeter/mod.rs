//! Coxeter systems, their word problem, and finite balls of Coxeter
//! realizations.
//!
//! Generator `s_i` is the reflection in the facet of the base chamber that is
//! opposite to the vertex of type `i`. A simplex of type `I` is therefore a
//! coset `w W_{S \ I}`, and its *label* is the exponent of the complementary
//! generator pair when that complement has exactly two elements: the label of
//! a vertex in rank 3 and the label of an edge in rank 4.

mod ball;
mod word;

pub use ball::{build_coxeter_ball, vertex_depth, BallOptions, Depths, DEFAULT_NODE_BUDGET};
pub use word::{min_coset_rep, tits_reduce, CosetId, CoxeterGroup, NormalForm};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Error, Result};

pub type Generator = u8;

/// An entry of the Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    pub fn finite(self) -> Option<u32> {
        match self {
            Exponent::Finite(m) => Some(m),
            Exponent::Infinite => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(m) => write!(f, "{m}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(m) => s.serialize_u32(*m),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(m) => Ok(Exponent::Finite(m)),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "infinity" | "∞") => Ok(Exponent::Infinite),
            Raw::Text(t) => t
                .parse()
                .map(Exponent::Finite)
                .map_err(|_| serde::de::Error::custom(format!("bad exponent {t:?}"))),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinite),
            t => t.parse().map(Exponent::Finite).map_err(|_| input_err!("bad exponent {t:?}")),
        }
    }
}

/// A Coxeter system of rank 3 or 4 with named generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemDoc", into = "SystemDoc")]
pub struct CoxeterSystem {
    names: Vec<String>,
    matrix: Vec<Vec<Exponent>>,
}

#[derive(Serialize, Deserialize)]
struct SystemDoc {
    rank: usize,
    generators: Vec<String>,
    exponents: Vec<Vec<Exponent>>,
}

impl TryFrom<SystemDoc> for CoxeterSystem {
    type Error = Error;

    fn try_from(doc: SystemDoc) -> Result<Self> {
        if doc.rank != doc.generators.len() {
            return Err(input_err!(
                "rank {} does not match {} generator names",
                doc.rank,
                doc.generators.len()
            ));
        }
        CoxeterSystem::new(doc.generators, doc.exponents)
    }
}

impl From<CoxeterSystem> for SystemDoc {
    fn from(sys: CoxeterSystem) -> Self {
        SystemDoc { rank: sys.rank(), generators: sys.names, exponents: sys.matrix }
    }
}

impl CoxeterSystem {
    pub fn new(names: Vec<String>, matrix: Vec<Vec<Exponent>>) -> Result<Self> {
        let n = names.len();
        if !(3..=4).contains(&n) {
            return Err(input_err!("rank must be 3 or 4, got {n}"));
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(input_err!("exponent matrix must be {n}x{n}"));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(input_err!("generator {i} has an empty name"));
            }
            if names[..i].contains(name) {
                return Err(input_err!("duplicate generator name {name:?}"));
            }
        }
        for i in 0..n {
            if matrix[i][i] != Exponent::Finite(1) {
                return Err(input_err!("diagonal exponent m({i},{i}) must be 1"));
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(input_err!("exponent matrix is not symmetric at ({i},{j})"));
                }
                if i != j && matches!(matrix[i][j], Exponent::Finite(m) if m < 2) {
                    return Err(input_err!("off-diagonal exponent m({i},{j}) must be at least 2"));
                }
            }
        }
        Ok(CoxeterSystem { names, matrix })
    }

    /// Triangle group whose vertices have labels `(l, k, m)`, i.e. stabilizers
    /// of orders `2l`, `2k`, `2m`. Generator names are the labels, primed when
    /// two labels coincide.
    pub fn triangle(labels: [Exponent; 3]) -> Result<Self> {
        let mut names: Vec<String> = Vec::with_capacity(3);
        for label in labels {
            let mut name = label.to_string();
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
        }
        let one = Exponent::Finite(1);
        let [l, k, m] = labels;
        // vertex i is labelled by the exponent of the two other generators
        let matrix = vec![vec![one, m, k], vec![m, one, l], vec![k, l, one]];
        CoxeterSystem::new(names, matrix)
    }

    /// Rank-4 group from the labels of the edges `ab, ac, ad, bc, bd, cd` of
    /// the base tetrahedron.
    pub fn tetrahedral(labels: [Exponent; 6]) -> Result<Self> {
        let [ab, ac, ad, bc, bd, cd] = labels;
        let one = Exponent::Finite(1);
        // m(s_i, s_j) is the label of the opposite edge
        let matrix = vec![
            vec![one, cd, bd, bc],
            vec![cd, one, ad, ac],
            vec![bd, ad, one, ab],
            vec![bc, ac, ab, one],
        ];
        let names = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        CoxeterSystem::new(names, matrix)
    }

    /// Parses the comma-separated label list accepted on the command line:
    /// three vertex labels `l,k,m` or six edge labels `ab,ac,ad,bc,bd,cd`.
    pub fn from_labels(text: &str) -> Result<Self> {
        let labels: Vec<Exponent> =
            text.split(',').map(str::parse).collect::<Result<_>>()?;
        match labels.len() {
            3 => CoxeterSystem::triangle([labels[0], labels[1], labels[2]]),
            6 => CoxeterSystem::tetrahedral([
                labels[0], labels[1], labels[2], labels[3], labels[4], labels[5],
            ]),
            n => Err(input_err!("expected 3 or 6 labels, got {n}")),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn exponent(&self, i: usize, j: usize) -> Exponent {
        self.matrix[i][j]
    }

    pub fn all_finite(&self) -> bool {
        self.matrix.iter().flatten().all(|e| e.finite().is_some())
    }

    fn complement(&self, types: &[usize]) -> Vec<usize> {
        (0..self.rank()).filter(|i| !types.contains(i)).collect()
    }

    /// Label of a simplex of the given type: the exponent of the two
    /// generators outside the type, when there are exactly two of them.
    pub fn label(&self, types: &[usize]) -> Option<Exponent> {
        match self.complement(types)[..] {
            [i, j] => Some(self.matrix[i][j]),
            _ => None,
        }
    }

    /// Order of the special subgroup `W_J`, or `None` if it is infinite.
    pub fn special_order(&self, subset: &[usize]) -> Option<u64> {
        match *subset {
            [] => Some(1),
            [_] => Some(2),
            [i, j] => self.matrix[i][j].finite().map(|m| 2 * m as u64),
            [i, j, k] => {
                let mut e = [
                    self.matrix[i][j].finite()?,
                    self.matrix[i][k].finite()?,
                    self.matrix[j][k].finite()?,
                ];
                e.sort_unstable();
                match e {
                    [2, 2, m] => Some(4 * m as u64),
                    [2, 3, 3] => Some(24),
                    [2, 3, 4] => Some(48),
                    [2, 3, 5] => Some(120),
                    _ => None,
                }
            }
            // rank-4 systems handled here never have a finite whole group
            // that matters for ball truncation
            _ => None,
        }
    }

    /// Order of the stabilizer of a simplex of the given type, i.e. the
    /// number of chambers in its star, or `None` when the star is infinite.
    pub fn star_size(&self, types: &[usize]) -> Option<u64> {
        self.special_order(&self.complement(types))
    }

    pub fn format_word(&self, letters: &[Generator]) -> String {
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = letters.iter().map(|&g| self.name(g as usize)).collect();
        if single {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Parses a word written with generator names; single-character names may
    /// be concatenated, otherwise letters are separated by `.` or whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Generator>> {
        let text = text.trim();
        if text.is_empty() || text == "1" || text == "e" && self.index_of("e").is_none() {
            return Ok(Vec::new());
        }
        let tokens: Vec<String> = if text.contains(['.', ' ']) {
            text.split(['.', ' ']).filter(|t| !t.is_empty()).map(String::from).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.index_of(t)
                    .map(|i| i as Generator)
                    .ok_or_else(|| input_err!("unknown generator {t:?}"))
            })
            .collect()
    }
}

/// Sorted triangle type of three exponents, as used by the exclusion list.
pub(crate) fn sorted_triple(mut e: [u32; 3]) -> [u32; 3] {
    e.sort_unstable();
    e
}

/// The triangle types that admit no systolization.
pub const EXCLUDED_TRIANGLES: [[u32; 3]; 3] = [[2, 4, 4], [2, 4, 5], [2, 5, 5]];

pub(crate) fn triangle_is_finite(e: [u32; 3]) -> bool {
    // 1/p + 1/q + 1/r > 1
    let [p, q, r] = e.map(u64::from);
    q * r + p * r + p * q > p * q * r
}
