//! Slow, obviously-correct reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use conelab::catalog::{ab_cone, orthant, qpn, random_simplicial, random_small_rat, seeded_rng};
use conelab::exact::{dot, primitive, rat};
use conelab::{orbit_cone, Cone, Rat, RatVec};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Rank by textbook Gaussian elimination over the rationals.
pub fn naive_rank(rows: &[RatVec], cols: usize) -> usize {
    let mut m: Vec<RatVec> = rows.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Finest partition of `vectors` into groups whose spans are independent,
/// found by testing every subset `S` for `rank(S) + rank(S^c) = rank(E)`.
/// Groups are sorted and ordered by smallest index.
pub fn bipartition_components(vectors: &[RatVec], dim: usize) -> Vec<Vec<usize>> {
    let m = vectors.len();
    assert!(m <= 12, "oracle is exponential");
    let total = naive_rank(vectors, dim);
    let pick = |mask: u32, inside: bool| -> Vec<RatVec> {
        (0..m)
            .filter(|&i| ((mask >> i) & 1 == 1) == inside)
            .map(|i| vectors[i].clone())
            .collect()
    };
    let separators: Vec<u32> = (1..(1u32 << m) - 1)
        .filter(|&s| naive_rank(&pick(s, true), dim) + naive_rank(&pick(s, false), dim) == total)
        .collect();
    // two elements share a component iff no separator splits them
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut placed = vec![false; m];
    for i in 0..m {
        if placed[i] {
            continue;
        }
        let group: Vec<usize> = (i..m)
            .filter(|&j| separators.iter().all(|s| ((s >> i) & 1) == ((s >> j) & 1)))
            .collect();
        for &j in &group {
            placed[j] = true;
        }
        groups.push(group);
    }
    groups
}

/// Extreme rays of a pointed cone from its H-description: every direction
/// cut out by `n - 1` independent inequality rows (plus the equations) that
/// satisfies all the inequalities.
pub fn brute_force_extreme_rays(k: &Cone) -> BTreeSet<RatVec> {
    let n = k.ambient_dim();
    let h = k.inequalities();
    let mut out = BTreeSet::new();
    if n == 1 {
        for d in [rat(1), rat(-1)] {
            let v = vec![d];
            if k.contains(&v) {
                out.insert(v);
            }
        }
        return out;
    }
    for subset in (0..h.rays.len()).combinations(n.saturating_sub(1 + h.lines.len())) {
        let mut rows: Vec<RatVec> = subset.iter().map(|&i| h.rays[i].clone()).collect();
        rows.extend(h.lines.iter().cloned());
        if naive_rank(&rows, n) != n - 1 {
            continue;
        }
        let d = kernel_vector(&rows, n);
        for cand in [d.clone(), d.iter().map(|x| -x).collect::<RatVec>()] {
            if k.contains(&cand) {
                out.insert(primitive(&cand));
            }
        }
    }
    out
}

/// A nonzero kernel vector of a rank `n - 1` system: the signed maximal
/// minors (generalized cross product).
fn kernel_vector(rows: &[RatVec], n: usize) -> RatVec {
    let basis: Vec<RatVec> = {
        let mut chosen: Vec<RatVec> = Vec::new();
        for r in rows {
            chosen.push(r.clone());
            if naive_rank(&chosen, n) < chosen.len() {
                chosen.pop();
            }
        }
        chosen
    };
    (0..n)
        .map(|j| {
            let minor: Vec<RatVec> = basis
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = leibniz(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub fn leibniz(m: &[RatVec]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n).tuple_combinations().filter(|&(i, j)| p[i] > p[j]).count();
            let prod = (0..n).fold(Rat::one(), |acc, i| acc * &m[i][p[i]]);
            if inversions % 2 == 0 {
                prod
            } else {
                -prod
            }
        })
        .sum()
}

/// Pairs `x ∈ K`, `s ∈ K*` with `<x, s> = 0`, sampled from faces: pick a
/// dual extreme ray set, combine the primal rays it annihilates for `x`
/// and the dual rays annihilating all of those for `s`.
pub fn sample_boundary_pairs(k: &Cone, count: usize, seed: u64) -> Vec<(RatVec, RatVec)> {
    let mut rng = seeded_rng(seed);
    let rays = k.extreme_rays().unwrap().rays().to_vec();
    let dual = k.dual();
    let dual_rays = dual.extreme_rays().unwrap().rays().to_vec();
    let n = k.ambient_dim();
    let combine = |vs: &[&RatVec], rng: &mut rand_chacha::ChaCha8Rng| -> RatVec {
        let mut out = vec![Rat::zero(); n];
        for v in vs {
            let c = random_small_rat(rng).abs() + rat(1);
            for (o, x) in out.iter_mut().zip(v.iter()) {
                *o += &c * x;
            }
        }
        out
    };
    let supporting: Vec<&RatVec> = dual_rays
        .iter()
        .filter(|s| rays.iter().any(|x| dot(x, s).is_zero()))
        .collect();
    let mut pairs = Vec::new();
    if supporting.is_empty() {
        return pairs;
    }
    while pairs.len() < count {
        let s0 = supporting[rng.random_range(0..supporting.len())];
        let face: Vec<&RatVec> = rays.iter().filter(|x| dot(x, s0).is_zero()).collect();
        let sub: Vec<&RatVec> = face.iter().copied().filter(|_| rng.random_bool(0.6)).collect();
        let sub = if sub.is_empty() { vec![face[0]] } else { sub };
        let x = combine(&sub, &mut rng);
        let normals: Vec<&RatVec> = dual_rays
            .iter()
            .filter(|s| sub.iter().all(|r| dot(r, s).is_zero()))
            .filter(|_| rng.random_bool(0.6))
            .collect();
        let s = if normals.is_empty() { s0.clone() } else { combine(&normals, &mut rng) };
        assert!(k.contains(&x) && dual.contains(&s) && dot(&x, &s).is_zero());
        pairs.push((x, s));
    }
    pairs
}

/// Named proper cones small enough for exhaustive checks.
pub fn small_catalog() -> Vec<(String, Cone)> {
    let mut out: Vec<(String, Cone)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("orthant({n})"), orthant(n)));
        for p in 2..=n {
            out.push((format!("qpn({n},{p})"), qpn(n, p).unwrap()));
        }
    }
    for (n, a, b) in [(3, 2, 1), (3, -1, 2), (4, 3, 1), (2, 1, 3)] {
        out.push((format!("ab_cone({n},{a},{b})"), ab_cone(n, &rat(a), &rat(b)).unwrap()));
    }
    for seed in 0..4 {
        out.push((format!("random_simplicial(3,{seed})"), random_simplicial(3, seed)));
    }
    for seeds in [
        vec![vec![2, 1, 0]],
        vec![vec![1, 1, -1], vec![3, 0, 0]],
        vec![vec![2, 1, 1, 0]],
        vec![vec![1, -1, 2, 0]],
    ] {
        let seeds: Vec<RatVec> = seeds.iter().map(|s| s.iter().map(|&x| rat(x)).collect()).collect();
        let k = orbit_cone(&seeds).unwrap();
        if k.is_proper() {
            out.push((format!("orbit({seeds:?})"), k));
        }
    }
    out
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

pub fn rat_vec(n: usize) -> impl Strategy<Value = RatVec> {
    proptest::collection::vec(small_rat(), n)
}

pub fn int_entry_vec(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = RatVec> {
    proptest::collection::vec((lo..=hi).prop_map(rat), n)
}
