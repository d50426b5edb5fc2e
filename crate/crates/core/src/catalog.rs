//! Named cones and random test cones.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{determinant, rat, ratio, unit_vec, Rat, RatMat, RatVec};
use crate::symmetry::orbit_cone;

/// The nonnegative orthant `R^n_+`, carrying both descriptions.
pub fn orthant(n: usize) -> Cone {
    assert!(n >= 1, "orthant dimension");
    let basis: Vec<RatVec> = (0..n).map(|i| unit_vec(n, i)).collect();
    Cone::from_both(n, basis.clone(), basis).expect("orthant is self-dual")
}

/// `Q_p^n`: vectors whose `n - p + 1` smallest entries have nonnegative sum.
///
/// The sum of the `k` smallest entries is the minimum of all `k`-subset
/// sums, so the cone is cut out by one inequality per `(n - p + 1)`-subset.
pub fn qpn(n: usize, p: usize) -> Result<Cone> {
    if n == 0 || p == 0 || p > n {
        return Err(Error::InvalidParameter(format!(
            "Q_p^n needs 1 <= p <= n, got n = {n}, p = {p}"
        )));
    }
    let k = n - p + 1;
    let rows: Vec<RatVec> = (0..n)
        .combinations(k)
        .map(|subset| {
            let mut row = vec![Rat::zero(); n];
            for i in subset {
                row[i] = Rat::one();
            }
            row
        })
        .collect();
    Cone::from_inequalities(n, rows)
}

/// `(a - b) I + b E`.
pub fn ab_matrix(n: usize, a: &Rat, b: &Rat) -> RatMat {
    RatMat::identity(n)
        .scale(&(a - b))
        .add(&RatMat::ones(n).scale(b))
}

/// Whether `(a - b) I + b E` is invertible: its eigenvalues are `a - b`
/// (multiplicity `n - 1`) and `a + (n - 1) b`.
pub fn ab_is_valid(n: usize, a: &Rat, b: &Rat) -> bool {
    let n1 = Rat::from_integer((n as i64 - 1).into());
    (n == 1 || a != b) && a + &n1 * b != Rat::zero()
}

/// `A(R^n_+)` for `A = (a - b) I + b E`: generated by the columns of `A`.
pub fn ab_cone(n: usize, a: &Rat, b: &Rat) -> Result<Cone> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if !ab_is_valid(n, a, b) {
        return Err(Error::InvalidAB {
            n,
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let m = ab_matrix(n, a, b);
    Cone::from_generators(n, (0..n).map(|j| m.col(j)).collect())
}

/// `K1 ⊕ K2` in `R^{n1 + n2}`, with `K1` on the leading coordinates.
pub fn direct_sum(k1: &Cone, k2: &Cone) -> Cone {
    let (n1, n2) = (k1.ambient_dim(), k2.ambient_dim());
    let pad = |v: &RatVec, before: usize, after: usize| -> RatVec {
        let mut out = vec![Rat::zero(); before];
        out.extend(v.iter().cloned());
        out.extend(std::iter::repeat_n(Rat::zero(), after));
        out
    };
    let mut gens: Vec<RatVec> = k1
        .generators()
        .signed_list()
        .iter()
        .map(|g| pad(g, 0, n2))
        .collect();
    gens.extend(k2.generators().signed_list().iter().map(|g| pad(g, n1, 0)));
    Cone::from_generators(n1 + n2, gens).expect("padded dimensions agree")
}

/// Random rational in `{p/q : |p| <= 4, 1 <= q <= 3}`.
pub fn random_small_rat(rng: &mut impl Rng) -> Rat {
    ratio(rng.random_range(-4..=4), rng.random_range(1..=3))
}

/// A random invertible `n × n` rational matrix with small entries, drawn by
/// rejection from [`random_small_rat`] entries.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> RatMat {
    loop {
        let data = (0..n * n).map(|_| random_small_rat(rng)).collect();
        let m = RatMat::new(n, n, data);
        if !determinant(&m).is_zero() {
            return m;
        }
    }
}

/// The deterministic generator behind every seeded constructor: ChaCha8,
/// whose output stream is specified independently of platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `B(R^n_+)` for a random invertible `B`, reproducible from `seed`.
pub fn random_simplicial(n: usize, seed: u64) -> Cone {
    let b = random_invertible(n, &mut seeded_rng(seed));
    Cone::from_generators(n, (0..n).map(|j| b.col(j)).collect()).expect("square matrix")
}

/// Declarative description of a catalog cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSpec {
    Orthant { n: usize },
    Qpn { n: usize, p: usize },
    AbCone { n: usize, a: Rat, b: Rat },
    Orbit { seeds: Vec<RatVec> },
    DirectSum(Box<CatalogSpec>, Box<CatalogSpec>),
    RandomSimplicial { n: usize, seed: u64 },
}

impl CatalogSpec {
    pub fn build(&self) -> Result<Cone> {
        match self {
            CatalogSpec::Orthant { n } => {
                if *n == 0 {
                    return Err(Error::ZeroDimension);
                }
                Ok(orthant(*n))
            }
            CatalogSpec::Qpn { n, p } => qpn(*n, *p),
            CatalogSpec::AbCone { n, a, b } => ab_cone(*n, a, b),
            CatalogSpec::Orbit { seeds } => orbit_cone(seeds),
            CatalogSpec::DirectSum(x, y) => Ok(direct_sum(&x.build()?, &y.build()?)),
            CatalogSpec::RandomSimplicial { n, seed } => {
                if *n == 0 {
                    return Err(Error::ZeroDimension);
                }
                Ok(random_simplicial(*n, *seed))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            CatalogSpec::Orthant { n } => format!("orthant(n={n})"),
            CatalogSpec::Qpn { n, p } => format!("qpn(n={n},p={p})"),
            CatalogSpec::AbCone { n, a, b } => format!("ab_cone(n={n},a={a},b={b})"),
            CatalogSpec::Orbit { seeds } => format!("orbit({} seeds)", seeds.len()),
            CatalogSpec::DirectSum(x, y) => format!("direct_sum({},{})", x.name(), y.name()),
            CatalogSpec::RandomSimplicial { n, seed } => {
                format!("random_simplicial(n={n},seed={seed})")
            }
        }
    }
}

/// `(a, b)` predicted for `Q_2^n`: the columns of `(a-b)I + bE` with
/// `a = -(n - 2)`, `b = 1` sit on the facets of the cone.
pub fn qpn2_form(n: usize) -> (Rat, Rat) {
    (rat(-(n as i64 - 2)), rat(1))
}
