//! Polyhedral cones in generator (V) and inequality (H) form.
//!
//! A [`Cone`] keeps whichever description it was built from and computes the
//! other one lazily with the double description method. Both descriptions
//! use the same [`Frame`] shape:
//!
//! * as generators, a frame is `cone(rays) + span(lines)`;
//! * as inequalities, a frame is `{x : <r, x> >= 0 for rays r, <l, x> = 0 for lines l}`.
//!
//! The H-frame of `K` is exactly the V-frame of the dual cone `K*`, so taking
//! a dual never runs an extra conversion.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    dot, is_zero_vec, lin_comb, neg_vec, primitive, primitive_line, rank_of, row_space_basis,
    unit_vec, Rat, RatMat, RatVec,
};

/// Rays plus a lineality basis. See the module docs for the two readings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Frame {
    pub rays: Vec<RatVec>,
    pub lines: Vec<RatVec>,
}

impl Frame {
    /// The frame as a flat list where every line `l` appears as `l` and `-l`.
    pub fn signed_list(&self) -> Vec<RatVec> {
        let mut out = self.rays.clone();
        for l in &self.lines {
            out.push(l.clone());
            out.push(neg_vec(l));
        }
        out
    }

    fn all_rows(&self) -> impl Iterator<Item = &RatVec> {
        self.rays.iter().chain(&self.lines)
    }
}

/// Canonical list of primitive integer rays in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RayList(Vec<RatVec>);

impl RayList {
    /// Normalizes every vector to its primitive representative, drops zero
    /// vectors, sorts and removes duplicates.
    pub fn new(rays: impl IntoIterator<Item = RatVec>) -> Self {
        let mut rays: Vec<RatVec> = rays
            .into_iter()
            .filter(|r| !is_zero_vec(r))
            .map(|r| primitive(&r))
            .collect();
        rays.sort();
        rays.dedup();
        Self(rays)
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RatVec> {
        self.0.iter()
    }

    pub fn contains(&self, ray: &[Rat]) -> bool {
        self.0.binary_search_by(|r| r.as_slice().cmp(ray)).is_ok()
    }

    pub fn into_vec(self) -> Vec<RatVec> {
        self.0
    }
}

impl<'a> IntoIterator for &'a RayList {
    type Item = &'a RatVec;
    type IntoIter = std::slice::Iter<'a, RatVec>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

struct DdRay {
    v: RatVec,
    // indices of processed constraints that vanish on v, increasing
    tight: Vec<usize>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Computes a minimal generating frame of `{x : <h, x> >= 0 for all h}`.
///
/// Starts from the whole space (a basis held as lineality) and inserts the
/// constraints in the given order. A constraint that is not orthogonal to the
/// current lineality splits off one line as a new ray. Otherwise the rays are
/// partitioned by sign and each adjacent positive/negative pair contributes
/// the ray on the new hyperplane. Two rays are adjacent iff the processed
/// constraints tight at both have rank `d - 2`, where `d` is the dimension of
/// the cone modulo its lineality.
///
/// The returned rays are sorted lexicographically; the lines are the
/// canonical row-echelon basis of the lineality space. For a pointed result
/// the rays are exactly the extreme rays.
pub fn double_description(dim: usize, constraints: &[RatVec]) -> Frame {
    let rows: Vec<RatVec> = constraints
        .iter()
        .map(|h| {
            assert_eq!(h.len(), dim, "constraint dimension");
            primitive(h)
        })
        .collect();

    let mut lines: Vec<RatVec> = (0..dim).map(|i| unit_vec(dim, i)).collect();
    let mut rays: Vec<DdRay> = Vec::new();
    let mut processed: Vec<usize> = Vec::new();

    for (k, h) in rows.iter().enumerate() {
        if is_zero_vec(h) {
            continue;
        }
        if let Some(pos) = lines.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l = lines.remove(pos);
            let mut hl = dot(h, &l);
            if hl.is_negative() {
                l = neg_vec(&l);
                hl = -hl;
            }
            let one = Rat::one();
            for other in &mut lines {
                let c = dot(h, other) / &hl;
                if !c.is_zero() {
                    *other = primitive_line(&lin_comb(&one, other, &-c, &l));
                }
            }
            for r in &mut rays {
                let c = dot(h, &r.v) / &hl;
                if !c.is_zero() {
                    r.v = primitive(&lin_comb(&one, &r.v, &-c, &l));
                }
                r.tight.push(k);
            }
            rays.push(DdRay {
                v: primitive(&l),
                tight: processed.clone(),
            });
        } else {
            let values: Vec<Rat> = rays.iter().map(|r| dot(h, &r.v)).collect();
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.push(k);
                }
            }
            let negatives: Vec<usize> = (0..rays.len())
                .filter(|&i| values[i].is_negative())
                .collect();
            if !negatives.is_empty() {
                let positives: Vec<usize> = (0..rays.len())
                    .filter(|&i| values[i].is_positive())
                    .collect();
                let reduced_dim = dim - lines.len();
                let mut created = Vec::new();
                for &p in &positives {
                    for &q in &negatives {
                        let Some(common) = adjacency(&rays[p], &rays[q], &rows, reduced_dim)
                        else {
                            continue;
                        };
                        let v = primitive(&lin_comb(
                            &values[p],
                            &rays[q].v,
                            &-&values[q],
                            &rays[p].v,
                        ));
                        let mut tight = common;
                        tight.push(k);
                        created.push(DdRay { v, tight });
                    }
                }
                rays = rays
                    .into_iter()
                    .zip(&values)
                    .filter(|(_, v)| !v.is_negative())
                    .map(|(r, _)| r)
                    .chain(created)
                    .collect();
            }
        }
        processed.push(k);
    }

    let mut out_rays: Vec<RatVec> = rays.into_iter().map(|r| r.v).collect();
    out_rays.sort();
    out_rays.dedup();
    Frame {
        rays: out_rays,
        lines: if lines.is_empty() {
            lines
        } else {
            row_space_basis(&lines, dim)
        },
    }
}

/// Returns the common tight set when `p` and `q` are adjacent.
fn adjacency(p: &DdRay, q: &DdRay, rows: &[RatVec], reduced_dim: usize) -> Option<Vec<usize>> {
    if reduced_dim < 2 {
        return None;
    }
    let target = reduced_dim - 2;
    let common = intersect_sorted(&p.tight, &q.tight);
    if common.len() < target {
        return None;
    }
    (rank_of(common.iter().map(|&i| &rows[i]), rows[0].len()) == target).then_some(common)
}

/// A closed convex polyhedral cone in `R^n`.
///
/// Missing descriptions and derived data are computed at most once and
/// cached; concurrent readers either see nothing or the finished value.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    generators: OnceLock<Frame>,
    inequalities: OnceLock<Frame>,
    extreme: OnceLock<Result<RayList>>,
    pointed: OnceLock<bool>,
    solid: OnceLock<bool>,
}

fn check_vectors(dim: usize, vectors: &[RatVec]) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(())
}

impl Cone {
    fn empty(dim: usize) -> Self {
        Self {
            dim,
            generators: OnceLock::new(),
            inequalities: OnceLock::new(),
            extreme: OnceLock::new(),
            pointed: OnceLock::new(),
            solid: OnceLock::new(),
        }
    }

    fn with_generators(dim: usize, frame: Frame) -> Self {
        let cone = Self::empty(dim);
        cone.generators.set(frame).expect("fresh cell");
        cone
    }

    fn with_inequalities(dim: usize, frame: Frame) -> Self {
        let cone = Self::empty(dim);
        cone.inequalities.set(frame).expect("fresh cell");
        cone
    }

    /// `cone(vectors)` in `R^dim`. Zero vectors are dropped and generators
    /// are merged after primitive normalization; no vectors gives `{0}`.
    pub fn from_generators(dim: usize, vectors: Vec<RatVec>) -> Result<Self> {
        check_vectors(dim, &vectors)?;
        let rays = RayList::new(vectors).into_vec();
        Ok(Self::with_generators(dim, Frame { rays, lines: vec![] }))
    }

    /// `{x : <h, x> >= 0 for every row h}`. No rows gives the whole space.
    pub fn from_inequalities(dim: usize, rows: Vec<RatVec>) -> Result<Self> {
        check_vectors(dim, &rows)?;
        let rays = RayList::new(rows).into_vec();
        Ok(Self::with_inequalities(dim, Frame { rays, lines: vec![] }))
    }

    /// Builds a cone from both descriptions after certifying that they
    /// describe the same set.
    pub fn from_both(dim: usize, generators: Vec<RatVec>, inequalities: Vec<RatVec>) -> Result<Self> {
        let from_v = Self::from_generators(dim, generators)?;
        let from_h = Self::from_inequalities(dim, inequalities)?;
        if !from_v.is_subset_of(&from_h) || !from_h.is_subset_of(&from_v) {
            return Err(Error::Inconsistent);
        }
        Ok(Cone::from_frames(
            dim,
            Some(from_v.generators().clone()),
            Some(from_h.inequalities().clone()),
        ))
    }

    /// Builds a cone from frames that are already known to agree.
    pub fn from_frames(dim: usize, generators: Option<Frame>, inequalities: Option<Frame>) -> Self {
        assert!(generators.is_some() || inequalities.is_some());
        let cone = Self::empty(dim);
        if let Some(g) = generators {
            cone.generators.set(g).expect("fresh cell");
        }
        if let Some(h) = inequalities {
            cone.inequalities.set(h).expect("fresh cell");
        }
        cone
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// V-description, computed from the H-description when absent.
    pub fn generators(&self) -> &Frame {
        self.generators.get_or_init(|| {
            let h = self.inequalities.get().expect("cone has a description");
            double_description(self.dim, &h.signed_list())
        })
    }

    /// H-description, computed from the V-description when absent.
    pub fn inequalities(&self) -> &Frame {
        self.inequalities.get_or_init(|| {
            let v = self.generators.get().expect("cone has a description");
            double_description(self.dim, &v.signed_list())
        })
    }

    pub fn has_generators(&self) -> bool {
        self.generators.get().is_some()
    }

    pub fn has_inequalities(&self) -> bool {
        self.inequalities.get().is_some()
    }

    /// The dual cone `K* = {y : <y, x> >= 0 for all x in K}`. Its H-frame is
    /// this cone's V-frame; its V-frame is this cone's H-frame if known.
    pub fn dual(&self) -> Cone {
        Cone::from_frames(
            self.dim,
            self.inequalities.get().cloned(),
            Some(self.generators().clone()),
        )
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim, "membership dimension");
        let h = self.inequalities();
        h.rays.iter().all(|r| !dot(r, x).is_negative())
            && h.lines.iter().all(|l| dot(l, x).is_zero())
    }

    /// `self ⊆ other`, decided on this cone's generators.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        assert_eq!(self.dim, other.dim);
        self.generators().signed_list().iter().all(|g| other.contains(g))
    }

    pub fn same_set(&self, other: &Cone) -> bool {
        self.dim == other.dim && self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// `K ∩ (−K) = {0}`, i.e. the inequality rows span `R^n`.
    pub fn is_pointed(&self) -> bool {
        *self
            .pointed
            .get_or_init(|| rank_of(self.inequalities().all_rows(), self.dim) == self.dim)
    }

    /// `int K ≠ ∅`, i.e. the generators span `R^n`.
    pub fn is_solid(&self) -> bool {
        *self
            .solid
            .get_or_init(|| rank_of(self.generators().all_rows(), self.dim) == self.dim)
    }

    pub fn is_proper(&self) -> bool {
        self.is_pointed() && self.is_solid()
    }

    /// Dimension of the linear span of the cone.
    pub fn dimension(&self) -> usize {
        rank_of(self.generators().all_rows(), self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    /// Extreme rays of a pointed cone. A generator `g` is kept iff the
    /// inequality rows tight at `g` (lineality rows are always tight) have
    /// rank `n - 1`.
    pub fn extreme_rays(&self) -> Result<&RayList> {
        self.extreme
            .get_or_init(|| {
                if !self.is_pointed() {
                    return Err(Error::NotPointed);
                }
                let h = self.inequalities();
                let rays = self
                    .generators()
                    .rays
                    .iter()
                    .filter(|g| {
                        let tight = h
                            .rays
                            .iter()
                            .filter(|r| dot(r, g).is_zero())
                            .chain(&h.lines);
                        rank_of(tight, self.dim) + 1 == self.dim
                    })
                    .cloned();
                Ok(RayList::new(rays))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The image `M(K)` under a linear map with `M.cols() == n`.
    pub fn transform(&self, m: &RatMat) -> Cone {
        assert_eq!(m.cols(), self.dim, "transform dimension");
        let images: Vec<RatVec> = self
            .generators()
            .signed_list()
            .iter()
            .map(|g| m.mul_vec(g))
            .collect();
        Cone::from_generators(m.rows(), images).expect("dimensions checked")
    }

    /// Checks that every generator satisfies every inequality row. Always
    /// holds for cones built by this module; useful on imported data.
    pub fn certify(&self) -> bool {
        let h = self.inequalities();
        self.generators().signed_list().iter().all(|g| {
            h.rays.iter().all(|r| !dot(r, g).is_negative())
                && h.lines.iter().all(|l| dot(l, g).is_zero())
        })
    }
}
