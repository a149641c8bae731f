use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CoxeterSystem, Exponent, Generator};
use crate::error::{input_err, Result};

/// Shortlex-minimal reduced word of a group element. Equal normal forms are
/// equal elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalForm(pub(crate) Vec<Generator>);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    /// Word length of the element.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A coset `w W_J`, identified by its unique minimal-length representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetId {
    pub subgroup_type: Vec<Generator>,
    pub min_rep: NormalForm,
}

/// Word-problem engine for one Coxeter system.
///
/// Reduced words of an element are connected by braid moves (replacing an
/// alternating word `sts…` of length `m(s,t)` by `tst…`). The engine keeps the
/// full braid class of every element it has seen; `w s` is shorter than `w`
/// exactly when some reduced word of `w` ends in `s`.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    sys: CoxeterSystem,
    classes: HashMap<NormalForm, Arc<Vec<Vec<Generator>>>>,
}

impl CoxeterGroup {
    pub fn new(sys: CoxeterSystem) -> Self {
        CoxeterGroup { sys, classes: HashMap::new() }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    /// All words reachable from a reduced word by braid moves, sorted
    /// lexicographically; the first one is the normal form.
    pub fn braid_class(&self, word: &[Generator]) -> Vec<Vec<Generator>> {
        let mut seen: BTreeSet<Vec<Generator>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        while let Some(w) = queue.pop_front() {
            for p in 0..w.len().saturating_sub(1) {
                let (s, t) = (w[p], w[p + 1]);
                if s == t {
                    continue;
                }
                let Exponent::Finite(m) = self.sys.exponent(s as usize, t as usize) else {
                    continue;
                };
                let m = m as usize;
                if p + m > w.len() {
                    continue;
                }
                let alternating =
                    (0..m).all(|i| w[p + i] == if i % 2 == 0 { s } else { t });
                if !alternating {
                    continue;
                }
                let mut next = w.clone();
                for i in 0..m {
                    next[p + i] = if i % 2 == 0 { t } else { s };
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn class_of(&mut self, nf: &NormalForm) -> Arc<Vec<Vec<Generator>>> {
        if let Some(c) = self.classes.get(nf) {
            return c.clone();
        }
        let class = Arc::new(self.braid_class(nf.letters()));
        self.classes.insert(nf.clone(), class.clone());
        class
    }

    fn check_generator(&self, s: Generator) -> Result<()> {
        if (s as usize) < self.sys.rank() {
            Ok(())
        } else {
            Err(input_err!("generator index {s} out of range for rank {}", self.sys.rank()))
        }
    }

    /// Whether `s` is a right descent of `w`, i.e. `l(ws) < l(w)`.
    pub fn is_right_descent(&mut self, w: &NormalForm, s: Generator) -> bool {
        self.class_of(w).iter().any(|x| x.last() == Some(&s))
    }

    /// Normal form of `w s`.
    pub fn multiply(&mut self, w: &NormalForm, s: Generator) -> Result<NormalForm> {
        self.check_generator(s)?;
        let class = self.class_of(w);
        let shorter: BTreeSet<Vec<Generator>> = class
            .iter()
            .filter(|x| x.last() == Some(&s))
            .map(|x| x[..x.len() - 1].to_vec())
            .collect();
        if let Some(first) = shorter.first() {
            let nf = NormalForm(first.clone());
            // every reduced word of ws extends to one of w ending in s
            self.classes.entry(nf.clone()).or_insert_with(|| Arc::new(shorter.into_iter().collect()));
            return Ok(nf);
        }
        let mut word = w.letters().to_vec();
        word.push(s);
        let class = self.braid_class(&word);
        let nf = NormalForm(class[0].clone());
        self.classes.insert(nf.clone(), Arc::new(class));
        Ok(nf)
    }

    pub fn reduce(&mut self, word: &[Generator]) -> Result<NormalForm> {
        word.iter().try_fold(NormalForm::identity(), |w, &s| self.multiply(&w, s))
    }

    pub fn inverse(&mut self, w: &NormalForm) -> Result<NormalForm> {
        let rev: Vec<Generator> = w.letters().iter().rev().copied().collect();
        self.reduce(&rev)
    }

    /// Minimal-length element of `w W_J`, found by stripping right descents in `J`.
    pub fn min_coset_rep(&mut self, w: &NormalForm, subset: &[Generator]) -> Result<NormalForm> {
        for &j in subset {
            self.check_generator(j)?;
        }
        let mut cur = w.clone();
        loop {
            let Some(&j) = subset.iter().find(|&&j| self.is_right_descent(&cur, j)) else {
                return Ok(cur);
            };
            cur = self.multiply(&cur, j)?;
        }
    }

    pub fn coset(&mut self, w: &NormalForm, subset: &[Generator]) -> Result<CosetId> {
        let mut subgroup_type = subset.to_vec();
        subgroup_type.sort_unstable();
        subgroup_type.dedup();
        let min_rep = self.min_coset_rep(w, &subgroup_type)?;
        Ok(CosetId { subgroup_type, min_rep })
    }

    /// Number of cached braid classes.
    pub fn cache_len(&self) -> usize {
        self.classes.len()
    }
}

/// Shortlex normal form of an arbitrary word.
pub fn tits_reduce(word: &[Generator], sys: &CoxeterSystem) -> Result<NormalForm> {
    CoxeterGroup::new(sys.clone()).reduce(word)
}

pub fn min_coset_rep(
    w: &NormalForm,
    subset: &[Generator],
    sys: &CoxeterSystem,
) -> Result<NormalForm> {
    let mut group = CoxeterGroup::new(sys.clone());
    if subset.len() >= sys.rank() {
        return Err(input_err!("coset subgroup type must be a proper subset of the generators"));
    }
    group.min_coset_rep(w, subset)
}

/// Shortlex comparison of two words.
#[cfg(test)]
fn shortlex_cmp(a: &[Generator], b: &[Generator]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
