//! Two small Euclidean Jordan algebras used to check spectral cones.
//!
//! * Real symmetric `m × m` matrices (rank `m`), in floating point. The
//!   eigenvalue map is computed with cyclic Jacobi rotations.
//! * `R^n` with the componentwise product (rank `n`), in exact arithmetic.
//!   Here the eigenvalue map is just sorting, so every check is exact.
//!
//! In both, `L_(a,b)(x) = (a - b) x + b tr(x) e`, and for a permutation
//! invariant `Q = A(R^n_+)` with `A = (a - b) I + b E` the spectral cone
//! `λ^{-1}(Q)` should equal `L_(a,b)(V_+)`. The samplers below test both
//! inclusions.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{ab_cone, ab_is_valid, random_small_rat};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{rat, Rat, RatVec};
use crate::symmetry::{contains_ones_axis, is_permutation_invariant, OnesAxis};

/// Sweep budget for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Default slack for spectral membership, relative to the data scale.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Draws per backward sample before falling back to constructed members.
const MAX_BACKWARD_DRAWS: usize = 100;

/// Dense symmetric matrix of `f64`, stored in full.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMat {
    m: usize,
    data: Vec<f64>,
}

impl SymMat {
    /// Requires exact symmetry.
    pub fn new(m: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                found: data.len(),
            });
        }
        for i in 0..m {
            for j in 0..i {
                if data[i * m + j] != data[j * m + i] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { m, data })
    }

    pub fn identity(m: usize) -> Self {
        Self::diag(&vec![1.0; m])
    }

    pub fn diag(d: &[f64]) -> Self {
        let m = d.len();
        let mut data = vec![0.0; m * m];
        for (i, &x) in d.iter().enumerate() {
            data[i * m + i] = x;
        }
        Self { m, data }
    }

    /// `G^T G`, positive semidefinite, symmetrized exactly.
    pub fn gram(m: usize, g: &[f64]) -> Self {
        assert_eq!(g.len(), m * m);
        let mut data = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..=i {
                let v: f64 = (0..m).map(|k| g[k * m + i] * g[k * m + j]).sum();
                data[i * m + j] = v;
                data[j * m + i] = v;
            }
        }
        Self { m, data }
    }

    /// `(G + G^T) / 2`.
    pub fn symmetrize(m: usize, g: &[f64]) -> Self {
        assert_eq!(g.len(), m * m);
        let mut data = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..=i {
                let v = 0.5 * (g[i * m + j] + g[j * m + i]);
                data[i * m + j] = v;
                data[j * m + i] = v;
            }
        }
        Self { m, data }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.m + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.m).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `P^T X P` for the permutation `P` taking coordinate `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let m = self.m;
        let mut data = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                data[perm[i] * m + perm[j]] = self.get(i, j);
            }
        }
        Self { m, data }
    }

    pub fn max_abs_diff(&self, other: &SymMat) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues in decreasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct EigVector {
    pub values: Vec<f64>,
}

/// Eigenvalues (decreasing) and matching unit eigenvectors.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub values: EigVector,
    /// `vectors[k]` belongs to `values.values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

impl SpectralDecomposition {
    /// `Σ λ_k q_k q_k^T`.
    pub fn reconstruct(&self) -> SymMat {
        let m = self.vectors.len();
        let mut data = vec![0.0; m * m];
        for (lam, q) in self.values.values.iter().zip(&self.vectors) {
            for i in 0..m {
                for j in 0..m {
                    data[i * m + j] += lam * q[i] * q[j];
                }
            }
        }
        SymMat { m, data }
    }
}

fn jacobi(x: &SymMat, want_vectors: bool) -> Result<SpectralDecomposition> {
    let m = x.m;
    let mut a = x.data.clone();
    let mut v = if want_vectors {
        SymMat::identity(m).data
    } else {
        Vec::new()
    };
    let threshold = 1e-12 * (1.0 + x.frobenius());
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * m + j] * a[i * m + j])
            .sum::<f64>()
            .sqrt();
        if off < threshold {
            converged = true;
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k * m + p], a[k * m + q]);
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p * m + k], a[q * m + k]);
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                if want_vectors {
                    for k in 0..m {
                        let (vkp, vkq) = (v[k * m + p], v[k * m + q]);
                        v[k * m + p] = c * vkp - s * vkq;
                        v[k * m + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| a[j * m + j].total_cmp(&a[i * m + i]));
    let values = order.iter().map(|&i| a[i * m + i]).collect();
    let vectors = if want_vectors {
        order
            .iter()
            .map(|&k| (0..m).map(|i| v[i * m + k]).collect())
            .collect()
    } else {
        Vec::new()
    };
    Ok(SpectralDecomposition {
        values: EigVector { values },
        vectors,
    })
}

/// The eigenvalue map `λ`.
pub fn eigvals_sym(x: &SymMat) -> Result<EigVector> {
    Ok(jacobi(x, false)?.values)
}

pub fn eigh(x: &SymMat) -> Result<SpectralDecomposition> {
    jacobi(x, true)
}

/// `L_(a,b)(X) = (a - b) X + b tr(X) I`.
pub fn l_ab(x: &SymMat, a: f64, b: f64) -> SymMat {
    let m = x.m;
    let shift = b * x.trace();
    let mut data: Vec<f64> = x.data.iter().map(|v| (a - b) * v).collect();
    for i in 0..m {
        data[i * m + i] += shift;
    }
    SymMat { m, data }
}

/// Inverse of [`l_ab`]. Taking traces gives `tr Y = (a + (m - 1) b) tr X`,
/// then `X = (Y - b tr(X) I) / (a - b)`.
pub fn l_ab_inverse(y: &SymMat, a: f64, b: f64) -> SymMat {
    let m = y.m;
    let tr_x = y.trace() / (a + (m as f64 - 1.0) * b);
    let mut data = y.data.clone();
    for i in 0..m {
        data[i * m + i] -= b * tr_x;
    }
    for v in &mut data {
        *v /= a - b;
    }
    SymMat { m, data }
}

/// A permutation invariant cone prepared for testing eigenvalue vectors.
#[derive(Clone, Debug)]
pub struct SpectralCone {
    rows: Vec<Vec<f64>>,
    lines: Vec<Vec<f64>>,
}

fn to_f64(v: &[Rat]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

impl SpectralCone {
    pub fn new(q: &Cone) -> Result<Self> {
        if !is_permutation_invariant(q) {
            return Err(Error::NotPermutationInvariant);
        }
        let h = q.inequalities();
        Ok(Self {
            rows: h.rays.iter().map(|r| to_f64(r)).collect(),
            lines: h.lines.iter().map(|l| to_f64(l)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.rows
            .first()
            .or(self.lines.first())
            .map_or(0, Vec::len)
    }

    /// Largest scaled amount by which `λ` breaks an inequality; `<= 0` means
    /// every inequality holds. Each row `h` is scaled by
    /// `‖h‖_1 · max(1, max|λ_i|)`.
    pub fn violation(&self, lambda: &EigVector) -> f64 {
        let l = &lambda.values;
        let mag = l.iter().fold(1.0_f64, |acc, x| acc.max(x.abs()));
        let scaled = |h: &Vec<f64>| {
            let norm: f64 = h.iter().map(|x| x.abs()).sum();
            let val: f64 = h.iter().zip(l).map(|(a, b)| a * b).sum();
            val / (norm * mag)
        };
        let ineq = self.rows.iter().map(|h| -scaled(h));
        let eq = self.lines.iter().map(|h| scaled(h).abs());
        ineq.chain(eq).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, lambda: &EigVector, tol: f64) -> bool {
        self.violation(lambda) <= tol
    }
}

/// Whether `λ(Y)` lies in `Q`, allowing a relative slack of `tol`.
pub fn spectral_membership_with_tol(y: &SymMat, q: &Cone, tol: f64) -> Result<bool> {
    if q.ambient_dim() != y.size() {
        return Err(Error::DimensionMismatch {
            expected: y.size(),
            found: q.ambient_dim(),
        });
    }
    let target = SpectralCone::new(q)?;
    Ok(target.contains(&eigvals_sym(y)?, tol))
}

pub fn spectral_membership(y: &SymMat, q: &Cone) -> Result<bool> {
    spectral_membership_with_tol(y, q, DEFAULT_TOL)
}

/// Tallies from checking both inclusions of `λ^{-1}(Q) = L_(a,b)(V_+)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub samples: usize,
    pub tolerance: f64,
    pub forward_pass: usize,
    pub backward_pass: usize,
    /// Backward samples built as `L(X)` after rejection sampling gave up.
    pub backward_fallbacks: usize,
    pub max_violation: f64,
}

impl SpectralReport {
    pub fn all_pass(&self) -> bool {
        self.forward_pass == self.samples && self.backward_pass == self.samples
    }

    fn empty(samples: usize, tolerance: f64) -> Self {
        Self {
            samples,
            tolerance,
            forward_pass: 0,
            backward_pass: 0,
            backward_fallbacks: 0,
            max_violation: f64::NEG_INFINITY,
        }
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    forward: usize,
    backward: usize,
    fallbacks: usize,
    worst: f64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            forward: self.forward + o.forward,
            backward: self.backward + o.backward,
            fallbacks: self.fallbacks + o.fallbacks,
            worst: self.worst.max(o.worst),
        }
    }
}

/// Independent stream per sample so results do not depend on scheduling.
fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian_matrix(m: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..m * m).map(|_| rng.sample(StandardNormal)).collect()
}

fn ones_sign(q: &Cone) -> f64 {
    match contains_ones_axis(q) {
        OnesAxis::MinusOne => -1.0,
        _ => 1.0,
    }
}

fn check_ab(m: usize, a: &Rat, b: &Rat) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroDimension);
    }
    if !ab_is_valid(m, a, b) {
        return Err(Error::InvalidAB {
            n: m,
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(())
}

/// Samples both inclusions on `m × m` symmetric matrices.
///
/// Forward: `X = G^T G` is PSD, so `Y = L_(a,b)(X)` must have `λ(Y) ∈ Q`.
/// Backward: `Y` is drawn from a Gaussian symmetric ensemble shifted along
/// `±I` towards `Q` until `λ(Y) ∈ Q`; then `L^{-1}(Y)` must be PSD. If
/// rejection keeps failing, the sample is built as `L(X)` for PSD `X` and
/// the backward check runs on that.
pub fn verify_prop5(
    m: usize,
    a: &Rat,
    b: &Rat,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<SpectralReport> {
    check_ab(m, a, b)?;
    let q = ab_cone(m, a, b)?;
    let target = SpectralCone::new(&q)?;
    let (af, bf) = (a.to_f64().unwrap(), b.to_f64().unwrap());
    let sign = ones_sign(&q);
    let spread = 3.0 * (m as f64).sqrt();

    let tally = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let mut t = Tally {
                worst: f64::NEG_INFINITY,
                ..Tally::default()
            };

            let mut rng = sample_rng(seed, 2 * i as u64);
            let x = SymMat::gram(m, &gaussian_matrix(m, &mut rng));
            let y = l_ab(&x, af, bf);
            let v = target.violation(&eigvals_sym(&y)?);
            t.worst = t.worst.max(v);
            if v <= tol {
                t.forward += 1;
            }

            let mut rng = sample_rng(seed, 2 * i as u64 + 1);
            let mut accepted = None;
            for _ in 0..MAX_BACKWARD_DRAWS {
                let g = gaussian_matrix(m, &mut rng);
                let shift = sign * rng.random_range(0.0..spread);
                let mut y = SymMat::symmetrize(m, &g);
                for k in 0..m {
                    y.data[k * m + k] += shift;
                }
                if target.contains(&eigvals_sym(&y)?, 0.0) {
                    accepted = Some(y);
                    break;
                }
            }
            let y = match accepted {
                Some(y) => y,
                None => {
                    t.fallbacks += 1;
                    l_ab(&SymMat::gram(m, &gaussian_matrix(m, &mut rng)), af, bf)
                }
            };
            let x = l_ab_inverse(&y, af, bf);
            let eig = eigvals_sym(&x)?.values;
            let mag = eig.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
            let v = -eig[m - 1] / mag;
            t.worst = t.worst.max(v);
            if v <= tol {
                t.backward += 1;
            }
            Ok(t)
        })
        .try_reduce(
            || Tally {
                worst: f64::NEG_INFINITY,
                ..Tally::default()
            },
            |x, y| Ok(x.merge(y)),
        )?;

    let mut report = SpectralReport::empty(samples, tol);
    report.forward_pass = tally.forward;
    report.backward_pass = tally.backward;
    report.backward_fallbacks = tally.fallbacks;
    report.max_violation = tally.worst.max(0.0);
    Ok(report)
}

/// `L_(a,b)` on `R^n` with the componentwise product: `(a - b) x + b Σx 1`.
pub fn l_ab_vec(x: &[Rat], a: &Rat, b: &Rat) -> RatVec {
    let tr: Rat = x.iter().sum();
    let shift = b * &tr;
    x.iter().map(|v| (a - b) * v + &shift).collect()
}

pub fn l_ab_vec_inverse(y: &[Rat], a: &Rat, b: &Rat) -> RatVec {
    let n1 = rat(y.len() as i64 - 1);
    let tr_y: Rat = y.iter().sum();
    let tr_x = tr_y / (a + &n1 * b);
    let shift = b * &tr_x;
    y.iter().map(|v| (v - &shift) / (a - b)).collect()
}

/// Eigenvalue map of `R^n`: sort decreasing.
pub fn sorted_decreasing(x: &[Rat]) -> RatVec {
    let mut v = x.to_vec();
    v.sort_by(|p, q| q.cmp(p));
    v
}

/// The same bidirectional check in the algebra `R^n`, with exact rationals
/// and zero tolerance.
pub fn verify_prop5_exact(
    n: usize,
    a: &Rat,
    b: &Rat,
    samples: usize,
    seed: u64,
) -> Result<SpectralReport> {
    check_ab(n, a, b)?;
    let q = ab_cone(n, a, b)?;
    if !is_permutation_invariant(&q) {
        return Err(Error::NotPermutationInvariant);
    }
    let sign = if contains_ones_axis(&q) == OnesAxis::MinusOne {
        rat(-1)
    } else {
        rat(1)
    };
    let mut report = SpectralReport::empty(samples, 0.0);
    let mut worst = Rat::zero();
    for i in 0..samples {
        let mut rng = sample_rng(seed, 2 * i as u64);
        let x: RatVec = (0..n).map(|_| random_small_rat(&mut rng).abs()).collect();
        let y = l_ab_vec(&x, a, b);
        if q.contains(&sorted_decreasing(&y)) {
            report.forward_pass += 1;
        } else {
            worst = worst.max(rat(1));
        }

        let mut rng = sample_rng(seed, 2 * i as u64 + 1);
        let mut y = None;
        for _ in 0..MAX_BACKWARD_DRAWS {
            let shift = &sign * rat(rng.random_range(0..=4i64));
            let cand: RatVec = (0..n).map(|_| random_small_rat(&mut rng) + &shift).collect();
            if q.contains(&sorted_decreasing(&cand)) {
                y = Some(cand);
                break;
            }
        }
        let y = y.unwrap_or_else(|| {
            report.backward_fallbacks += 1;
            let x: RatVec = (0..n).map(|_| random_small_rat(&mut rng).abs()).collect();
            l_ab_vec(&x, a, b)
        });
        let x = l_ab_vec_inverse(&y, a, b);
        let min = x.iter().min().cloned().unwrap_or_else(Rat::zero);
        if min.is_negative() {
            worst = worst.max(-min);
        } else {
            report.backward_pass += 1;
        }
    }
    report.max_violation = worst.to_f64().unwrap_or(f64::INFINITY);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{orthant, qpn};

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn eigenvalue_examples() {
        assert_close(&eigvals_sym(&SymMat::identity(3)).unwrap().values, &[1.0, 1.0, 1.0], 1e-12);
        assert_close(
            &eigvals_sym(&SymMat::diag(&[3.0, 1.0, 2.0])).unwrap().values,
            &[3.0, 2.0, 1.0],
            1e-12,
        );
        let x = SymMat::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_close(&eigvals_sym(&x).unwrap().values, &[1.0, -1.0], 1e-12);
    }

    #[test]
    fn rejects_asymmetric_input() {
        assert!(SymMat::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(SymMat::new(2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn nan_does_not_converge() {
        let x = SymMat::new(2, vec![f64::NAN, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(
            eigvals_sym(&x).unwrap_err(),
            Error::NonConvergence { sweeps: MAX_SWEEPS }
        );
    }

    #[test]
    fn l_ab_examples() {
        let x = SymMat::new(2, vec![2.0, -1.0, -1.0, 5.0]).unwrap();
        assert_eq!(l_ab(&x, 1.0, 0.0), x);
        assert_eq!(l_ab(&SymMat::identity(3), -1.0, 1.0), SymMat::identity(3));
        let y = l_ab(&x, 3.0, 0.5);
        assert!(l_ab_inverse(&y, 3.0, 0.5).max_abs_diff(&x) < 1e-10);
    }

    #[test]
    fn membership_examples() {
        let psd = SymMat::gram(3, &[1.0, 2.0, 0.0, -1.0, 0.5, 3.0, 0.0, 1.0, 1.0]);
        assert!(spectral_membership(&psd, &orthant(3)).unwrap());
        assert!(!spectral_membership(&SymMat::diag(&[1.0, -1.0]), &orthant(2)).unwrap());
        assert!(spectral_membership(&SymMat::diag(&[-1.0, 1.0, 1.0]), &qpn(3, 2).unwrap()).unwrap());
        let lopsided = Cone::from_generators(2, vec![crate::exact::int_vec(&[1, 0])]).unwrap();
        assert_eq!(
            spectral_membership(&SymMat::identity(2), &lopsided).unwrap_err(),
            Error::NotPermutationInvariant
        );
    }

    #[test]
    fn prop5_examples() {
        let r = verify_prop5(3, &rat(1), &rat(0), 200, 1, 1e-9).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let r = verify_prop5(3, &rat(-1), &rat(1), 200, 2, 1e-9).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(matches!(
            verify_prop5(3, &rat(1), &rat(1), 10, 0, 1e-9),
            Err(Error::InvalidAB { .. })
        ));
    }

    #[test]
    fn prop5_is_deterministic() {
        let a = verify_prop5(4, &rat(-2), &rat(1), 64, 9, 1e-9).unwrap();
        let b = verify_prop5(4, &rat(-2), &rat(1), 64, 9, 1e-9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exact_algebra() {
        let y = l_ab_vec(&crate::exact::int_vec(&[1, 2, 0]), &rat(-1), &rat(1));
        assert_eq!(y, crate::exact::int_vec(&[1, -1, 3]));
        assert_eq!(l_ab_vec_inverse(&y, &rat(-1), &rat(1)), crate::exact::int_vec(&[1, 2, 0]));
        let r = verify_prop5_exact(3, &rat(-1), &rat(1), 100, 3).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.max_violation, 0.0);
    }
}
