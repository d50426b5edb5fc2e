//! The symmetric group acting on `R^n` by permuting coordinates.

use std::collections::{HashSet, VecDeque};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{is_zero_vec, neg_vec, ones_vec, primitive, Rat, RatMat, RatVec};

/// A permutation of `0..n`. Acting on a vector it moves entry `i` to
/// position `images[i]`, which is multiplication by the permutation matrix
/// with a 1 at `(images[i], i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Swaps `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Self { images }
    }

    /// `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn apply(&self, x: &[Rat]) -> RatVec {
        assert_eq!(x.len(), self.len(), "permutation dimension");
        let mut out = x.to_vec();
        for (i, &j) in self.images.iter().enumerate() {
            out[j] = x[i].clone();
        }
        out
    }

    pub fn matrix(&self) -> RatMat {
        let n = self.len();
        let mut m = RatMat::zeros(n, n);
        for (i, &j) in self.images.iter().enumerate() {
            m[(j, i)] = Rat::from_integer(1.into());
        }
        m
    }
}

/// The pair `(0 1)`, `(0 1 ... n-1)` generating `Σ_n`. Empty for `n = 1`.
pub fn group_generators(n: usize) -> Vec<Perm> {
    match n {
        0 | 1 => vec![],
        2 => vec![Perm::transposition(2, 0, 1)],
        _ => vec![Perm::transposition(n, 0, 1), Perm::cycle(n)],
    }
}

/// Whether `σ(K) = K` for every coordinate permutation `σ`.
///
/// Only the two group generators are tried. If both map every generator of
/// `K` into `K` then `σ(K) ⊆ K` for all `σ`, and finiteness of the group
/// upgrades inclusion to equality.
pub fn is_permutation_invariant(k: &Cone) -> bool {
    let gens = k.generators().signed_list();
    group_generators(k.ambient_dim())
        .iter()
        .all(|p| gens.iter().all(|g| k.contains(&p.apply(g))))
}

/// Same verdict as [`is_permutation_invariant`] for an explicit list of
/// permutations, without the generator shortcut.
pub fn is_invariant_under(k: &Cone, perms: &[Perm]) -> bool {
    let gens = k.generators().signed_list();
    perms
        .iter()
        .all(|p| gens.iter().all(|g| k.contains(&p.apply(g))))
}

/// Closure of a set of primitive vectors under the group generators.
pub fn orbit(seeds: &[RatVec]) -> Vec<RatVec> {
    let Some(n) = seeds.first().map(Vec::len) else {
        return vec![];
    };
    let gens = group_generators(n);
    let mut seen: HashSet<RatVec> = HashSet::new();
    let mut queue: VecDeque<RatVec> = VecDeque::new();
    for s in seeds.iter().filter(|s| !is_zero_vec(s)) {
        let p = primitive(s);
        if seen.insert(p.clone()) {
            queue.push_back(p);
        }
    }
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w = g.apply(&v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<RatVec> = seen.into_iter().collect();
    out.sort();
    out
}

/// `cone(Σ_n(S))`, the conic hull of all permuted seeds.
pub fn orbit_cone(seeds: &[RatVec]) -> Result<Cone> {
    let Some(n) = seeds.first().map(Vec::len) else {
        return Err(Error::InvalidParameter("orbit cone needs at least one seed".into()));
    };
    for s in seeds {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    Cone::from_generators(n, orbit(seeds))
}

/// Which of `1` and `-1` lie in a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OnesAxis {
    PlusOne,
    MinusOne,
    Both,
    Neither,
}

impl OnesAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            OnesAxis::PlusOne => "plus_one",
            OnesAxis::MinusOne => "minus_one",
            OnesAxis::Both => "both",
            OnesAxis::Neither => "neither",
        }
    }
}

pub fn contains_ones_axis(k: &Cone) -> OnesAxis {
    let ones = ones_vec(k.ambient_dim());
    match (k.contains(&ones), k.contains(&neg_vec(&ones))) {
        (true, true) => OnesAxis::Both,
        (true, false) => OnesAxis::PlusOne,
        (false, true) => OnesAxis::MinusOne,
        (false, false) => OnesAxis::Neither,
    }
}
