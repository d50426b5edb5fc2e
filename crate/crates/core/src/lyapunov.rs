//! Lyapunov-like transformations and the Lyapunov rank.
//!
//! A linear map `L` is Lyapunov-like on a proper cone `K` when
//! `x ∈ K, s ∈ K*, <x, s> = 0` implies `<L x, s> = 0`. It is enough to check
//! the implication on pairs of extreme rays: writing `x = Σ α_i x_i` and
//! `s = Σ β_j s_j` over extreme rays with nonnegative weights,
//! `0 = <x, s> = Σ α_i β_j <x_i, s_j>` is a sum of nonnegative terms, so
//! every pair with `α_i β_j > 0` is itself complementary, and `<L x, s>`
//! expands into exactly those pairs.
//!
//! Each complementary pair `(x, s)` contributes the linear constraint
//! `s^T L x = 0` on the entries of `L`. With row-major `vec(L)`, the
//! constraint row is `vec(s x^T)`: entry `(i, j)` is `s_i x_j`. The Lyapunov
//! rank is `n^2` minus the rank of the stacked rows.

use num_traits::Zero;
use rayon::prelude::*;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{dot, nullspace_basis, rank_of, Rat, RatMat, RatVec};

/// An extreme ray of `K` and an extreme ray of `K*` that are orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompPair {
    pub x: RatVec,
    pub s: RatVec,
}

impl CompPair {
    /// `vec(s x^T)`, row-major.
    pub fn constraint_row(&self) -> RatVec {
        self.s
            .iter()
            .flat_map(|si| self.x.iter().map(move |xj| si * xj))
            .collect()
    }
}

/// A basis of `LL(K)`; its length is the Lyapunov rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyapunovBasis {
    pub mats: Vec<RatMat>,
}

impl LyapunovBasis {
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }
}

fn require_proper(k: &Cone) -> Result<()> {
    if k.is_proper() {
        Ok(())
    } else {
        Err(Error::NotProper)
    }
}

/// All orthogonal pairs of extreme rays of `K` and `K*`, ordered
/// lexicographically by `x` and then `s`.
pub fn complementary_pairs(k: &Cone) -> Result<Vec<CompPair>> {
    require_proper(k)?;
    let rays = k.extreme_rays()?;
    let dual = k.dual();
    let dual_rays = dual.extreme_rays()?;
    let mut pairs = Vec::new();
    for x in rays {
        for s in dual_rays {
            if dot(x, s).is_zero() {
                pairs.push(CompPair {
                    x: x.clone(),
                    s: s.clone(),
                });
            }
        }
    }
    Ok(pairs)
}

fn constraint_rows(pairs: &[CompPair]) -> Vec<RatVec> {
    pairs.par_iter().map(CompPair::constraint_row).collect()
}

/// `β(K) = dim LL(K)`.
pub fn lyapunov_rank(k: &Cone) -> Result<usize> {
    let pairs = complementary_pairs(k)?;
    Ok(rank_from_pairs(k.ambient_dim(), &pairs))
}

/// `n^2 - rank(C)` for the constraint matrix `C` of the given pairs.
pub fn rank_from_pairs(n: usize, pairs: &[CompPair]) -> usize {
    let rows = constraint_rows(pairs);
    n * n - rank_of(&rows, n * n)
}

/// Basis of `LL(K)`, one matrix per free column of the constraint system.
pub fn ll_basis(k: &Cone) -> Result<LyapunovBasis> {
    let n = k.ambient_dim();
    let pairs = complementary_pairs(k)?;
    let rows = constraint_rows(&pairs);
    let c = RatMat::from_rows(&rows, n * n);
    let mats = nullspace_basis(&c)
        .into_iter()
        .map(|v| RatMat::new(n, n, v))
        .collect();
    Ok(LyapunovBasis { mats })
}

/// Whether `s^T L x = 0` for every complementary pair of `K`.
pub fn is_lyapunov_like(k: &Cone, l: &RatMat) -> Result<bool> {
    let n = k.ambient_dim();
    if l.rows() != n || l.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: l.rows().max(l.cols()),
        });
    }
    let pairs = complementary_pairs(k)?;
    Ok(pairs_annihilate(&pairs, l))
}

pub fn pairs_annihilate(pairs: &[CompPair], l: &RatMat) -> bool {
    pairs
        .iter()
        .all(|p| dot(&p.s, &l.mul_vec(&p.x)).is_zero())
}

/// Whether every matrix of `a` lies in the span of `b` (as `n^2`-vectors).
pub fn span_contains(b: &[RatMat], a: &[RatMat]) -> bool {
    let Some(first) = b.first().or(a.first()) else {
        return true;
    };
    let len = first.rows() * first.cols();
    let rb: Vec<RatVec> = b.iter().map(RatMat::flatten).collect();
    let base = rank_of(&rb, len);
    a.iter().all(|m| {
        let mut rows: Vec<RatVec> = rb.clone();
        rows.push(m.flatten());
        rank_of(&rows, len) == base
    })
}

/// Trace of a square matrix.
pub fn trace(m: &RatMat) -> Rat {
    (0..m.rows()).fold(Rat::zero(), |acc, i| acc + &m[(i, i)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{orthant, qpn, random_simplicial};
    use crate::exact::{int_vec, rat};

    #[test]
    fn flattening_convention() {
        let p = CompPair {
            x: int_vec(&[1, 2]),
            s: int_vec(&[3, 5]),
        };
        assert_eq!(p.constraint_row(), int_vec(&[3, 6, 5, 10]));
        let l = RatMat::from_i64(&[&[1, -1], &[2, 7]]);
        assert_eq!(dot(&p.constraint_row(), &l.flatten()), dot(&p.s, &l.mul_vec(&p.x)));
    }

    #[test]
    fn pair_examples() {
        let pairs = complementary_pairs(&orthant(2)).unwrap();
        assert_eq!(
            pairs,
            vec![
                CompPair { x: int_vec(&[0, 1]), s: int_vec(&[1, 0]) },
                CompPair { x: int_vec(&[1, 0]), s: int_vec(&[0, 1]) },
            ]
        );
        for n in 2..=5 {
            assert_eq!(complementary_pairs(&orthant(n)).unwrap().len(), n * (n - 1));
        }
        assert_eq!(complementary_pairs(&qpn(3, 2).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn not_proper_is_rejected() {
        assert_eq!(lyapunov_rank(&qpn(3, 1).unwrap()).unwrap_err(), Error::NotProper);
        let axis = Cone::from_generators(2, vec![int_vec(&[1, 0])]).unwrap();
        assert_eq!(ll_basis(&axis).unwrap_err(), Error::NotProper);
    }

    #[test]
    fn rank_examples() {
        for n in 2..=6 {
            assert_eq!(lyapunov_rank(&orthant(n)).unwrap(), n);
        }
        assert_eq!(lyapunov_rank(&qpn(4, 3).unwrap()).unwrap(), 1);
        for seed in 0..4 {
            assert_eq!(lyapunov_rank(&random_simplicial(3, seed)).unwrap(), 3);
        }
    }

    #[test]
    fn basis_examples() {
        let b = ll_basis(&orthant(3)).unwrap();
        assert_eq!(b.len(), 3);
        for m in &b.mats {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert!(m[(i, j)].is_zero());
                    }
                }
            }
        }

        let b = ll_basis(&qpn(4, 3).unwrap()).unwrap();
        assert_eq!(b.len(), 1);
        let m = &b.mats[0];
        assert_eq!(*m, RatMat::identity(4).scale(&m[(0, 0)]));
    }

    #[test]
    fn membership_examples() {
        let k = orthant(3);
        assert!(is_lyapunov_like(&k, &RatMat::identity(3)).unwrap());
        let diag = RatMat::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert!(is_lyapunov_like(&k, &diag).unwrap());
        assert!(!is_lyapunov_like(&k, &RatMat::ones(3)).unwrap());
        assert!(is_lyapunov_like(&k, &RatMat::identity(2)).is_err());
    }

    #[test]
    fn span_check() {
        let b = ll_basis(&orthant(2)).unwrap();
        let diag = RatMat::from_i64(&[&[3, 0], &[0, -1]]);
        assert!(span_contains(&b.mats, &[diag]));
        assert!(!span_contains(&b.mats, &[RatMat::ones(2)]));
        assert_eq!(trace(&RatMat::ones(3).scale(&rat(2))), rat(6));
    }
}
