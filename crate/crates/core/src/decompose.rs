//! Direct-sum structure of pointed cones.
//!
//! A pointed cone splits as `K1 ⊕ ... ⊕ Kr` exactly along the connected
//! components of the vector matroid on its extreme rays: a split of the
//! rays into groups whose spans meet only in zero is the same thing as a
//! matroid separator. Components are found from the fundamental-circuit
//! graph of one basis, which is connected iff the matroid is.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::catalog::ab_is_valid;
use crate::cone::{Cone, RayList};
use crate::error::{Error, Result};
use crate::exact::{rank_of, row_space_basis, solve, Rat, RatMat, RatVec};
use crate::symmetry::{is_permutation_invariant, Perm};

/// One irreducible summand, given by its extreme rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub rays: RayList,
    /// Canonical basis of the linear span of the rays.
    pub span: Vec<RatVec>,
}

impl Component {
    pub fn rank(&self) -> usize {
        self.span.len()
    }

    pub fn cone(&self, dim: usize) -> Cone {
        Cone::from_generators(dim, self.rays.rays().to_vec()).expect("component rays share dim")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Ordered by lexicographically least ray.
    pub components: Vec<Component>,
    /// Rank of all extreme rays together.
    pub total_rank: usize,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Rank additivity: component ranks sum to the rank of the whole.
    pub fn is_certified(&self) -> bool {
        self.components.iter().map(Component::rank).sum::<usize>() == self.total_rank
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components of the vector matroid on nonzero `vectors`, as
/// groups of indices. Groups are sorted internally and ordered by their
/// smallest index.
///
/// A basis is chosen greedily in input order. Every other vector is written
/// in that basis and linked to the basis vectors with nonzero coefficients
/// (its fundamental circuit).
pub fn matroid_components(vectors: &[RatVec], dim: usize) -> Vec<Vec<usize>> {
    let mut basis: Vec<usize> = Vec::new();
    let mut basis_vecs: Vec<RatVec> = Vec::new();
    let mut others: Vec<usize> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        basis_vecs.push(v.clone());
        if rank_of(&basis_vecs, dim) == basis_vecs.len() {
            basis.push(i);
        } else {
            basis_vecs.pop();
            others.push(i);
        }
    }

    let mut sets = DisjointSets::new(vectors.len());
    let b = RatMat::from_cols(&basis_vecs, dim);
    for &i in &others {
        let coeffs = solve(&b, &vectors[i]).expect("vector lies in the span of the basis");
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                sets.union(i, basis[j]);
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..vectors.len() {
        let root = sets.find(i);
        groups.entry(root).or_default().push(i);
    }
    // roots are the minimum of their set, so BTreeMap order is by smallest index
    groups.into_values().collect()
}

/// The finest direct-sum decomposition of a nonzero pointed cone.
pub fn decompose(k: &Cone) -> Result<Decomposition> {
    let rays = k.extreme_rays()?;
    if rays.is_empty() {
        return Err(Error::ZeroCone);
    }
    let dim = k.ambient_dim();
    let components = matroid_components(rays.rays(), dim)
        .into_iter()
        .map(|group| {
            let member: Vec<RatVec> = group.iter().map(|&i| rays.rays()[i].clone()).collect();
            Component {
                span: row_space_basis(&member, dim),
                rays: RayList::new(member),
            }
        })
        .collect();
    Ok(Decomposition {
        components,
        total_rank: rank_of(rays.rays(), dim),
    })
}

pub fn is_irreducible(k: &Cone) -> Result<bool> {
    Ok(decompose(k)?.len() == 1)
}

/// A cone of the form `A(R^n_+)` with `A = (a - b) I + b E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthantForm {
    pub a: Rat,
    pub b: Rat,
    /// Coordinate `i` is the `a`-slot of ray number `assignment.image(i)` in
    /// the canonical ray list.
    pub assignment: Perm,
}

impl OrthantForm {
    pub fn matrix(&self, n: usize) -> RatMat {
        crate::catalog::ab_matrix(n, &self.a, &self.b)
    }
}

/// Recognizes a proper permutation-invariant cone whose extreme rays are the
/// columns of `(a - b) I + b E`.
///
/// Rays carry no canonical scale, so `(a, b)` is read off the primitive
/// representative: `a` is the entry occurring once, `b` the entry filling the
/// remaining `n - 1` slots. For `n = 2` both entries occur once and `a` is
/// taken to be the larger one; for `n = 1`, `b = 0`.
pub fn recognize_orthant_form(k: &Cone) -> Result<Option<OrthantForm>> {
    if !k.is_proper() {
        return Err(Error::NotProper);
    }
    if !is_permutation_invariant(k) {
        return Err(Error::NotPermutationInvariant);
    }
    let n = k.ambient_dim();
    let rays = k.extreme_rays()?;
    if rays.len() != n {
        return Ok(None);
    }
    let first = &rays.rays()[0];
    let (a, b) = match n {
        1 => (first[0].clone(), Rat::zero()),
        _ => {
            let mut counts: BTreeMap<&Rat, usize> = BTreeMap::new();
            for x in first {
                *counts.entry(x).or_default() += 1;
            }
            if counts.len() != 2 {
                return Ok(None);
            }
            let mut entries: Vec<(&Rat, usize)> = counts.into_iter().collect();
            if n == 2 {
                // ascending keys: a is the larger value
                (entries[1].0.clone(), entries[0].0.clone())
            } else {
                entries.sort_by_key(|&(_, c)| c);
                if entries[0].1 != 1 {
                    return Ok(None);
                }
                (entries[0].0.clone(), entries[1].0.clone())
            }
        }
    };
    if !ab_is_valid(n, &a, &b) {
        return Ok(None);
    }
    let mut images = Vec::with_capacity(n);
    for slot in 0..n {
        let mut col = vec![b.clone(); n];
        col[slot] = a.clone();
        match rays.rays().binary_search(&col) {
            Ok(pos) => images.push(pos),
            Err(_) => return Ok(None),
        }
    }
    let assignment = Perm::new(images).expect("distinct columns land on distinct rays");
    Ok(Some(OrthantForm { a, b, assignment }))
}
