//! The classification checks for permutation invariant proper polyhedral
//! cones, run over the catalog and random orbit cones.
//!
//! For each cone the verdict table records what the classification
//! predicts next to what the exact pipeline computed.

use rand::Rng;
use serde::Serialize;

use crate::catalog::{ab_cone, ab_is_valid, orthant, qpn, qpn2_form, random_simplicial, random_small_rat, seeded_rng};
use crate::cone::Cone;
use crate::decompose::{decompose, recognize_orthant_form, OrthantForm};
use crate::error::Result;
use crate::exact::{format_rat, rat, Rat, RatVec};
use crate::jordan::{verify_prop5, verify_prop5_exact};
use crate::lyapunov::lyapunov_rank;
use crate::symmetry::{contains_ones_axis, is_permutation_invariant, orbit, orbit_cone, OnesAxis};

/// Structural facts about a proper permutation invariant cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    pub extreme_rays: usize,
    pub components: usize,
    pub beta: usize,
    pub orthant_form: Option<OrthantForm>,
}

impl Classification {
    pub fn irreducible(&self) -> bool {
        self.components == 1
    }

    /// Exactly one of: irreducible with `β = 1`, or of the form
    /// `(a - b) I + b E` with `β = n`.
    pub fn dichotomy_holds(&self) -> bool {
        let first = self.irreducible() && self.beta == 1;
        let second = self.orthant_form.is_some() && self.beta == self.n;
        first != second
    }

    /// `1 <= β <= n` and `β != n - 1`.
    pub fn bounds_hold(&self) -> bool {
        bounds_hold(self.beta, self.n)
    }
}

pub fn bounds_hold(beta: usize, n: usize) -> bool {
    (1..=n).contains(&beta) && (n < 2 || beta != n - 1)
}

/// Classifies a proper permutation invariant cone.
pub fn classify(k: &Cone) -> Result<Classification> {
    let orthant_form = recognize_orthant_form(k)?;
    Ok(Classification {
        n: k.ambient_dim(),
        extreme_rays: k.extreme_rays()?.len(),
        components: decompose(k)?.len(),
        beta: lyapunov_rank(k)?,
        orthant_form,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub cone: String,
    pub n: usize,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerdictTable {
    pub verdicts: Vec<Verdict>,
}

impl VerdictTable {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.pass).count()
    }

    fn push(
        &mut self,
        check: &str,
        cone: &str,
        n: usize,
        expected: impl Into<String>,
        observed: impl Into<String>,
        pass: bool,
    ) {
        self.verdicts.push(Verdict {
            check: check.into(),
            cone: cone.into(),
            n,
            expected: expected.into(),
            observed: observed.into(),
            pass,
        });
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_lo: usize,
    pub n_hi: usize,
    pub seed: u64,
    pub orbit_cones_per_n: usize,
    pub ab_pairs_per_n: usize,
    pub simplicial_per_n: usize,
    pub spectral_samples: usize,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_lo: 2,
            n_hi: 5,
            seed: 0,
            orbit_cones_per_n: 4,
            ab_pairs_per_n: 4,
            simplicial_per_n: 4,
            spectral_samples: 200,
            tol: 1e-9,
        }
    }
}

/// Random integer seed vector with entries in `-3..=3`.
pub fn random_seed_vector(n: usize, rng: &mut impl Rng) -> RatVec {
    (0..n).map(|_| rat(rng.random_range(-3..=3))).collect()
}

/// Random `(a, b)` with `(a - b) I + b E` invertible.
pub fn random_ab(n: usize, rng: &mut impl Rng) -> (Rat, Rat) {
    loop {
        let (a, b) = (random_small_rat(rng), random_small_rat(rng));
        if ab_is_valid(n, &a, &b) {
            return (a, b);
        }
    }
}

fn describe_form(form: &Option<OrthantForm>) -> String {
    match form {
        Some(f) => format!("(a,b)=({},{})", format_rat(&f.a), format_rat(&f.b)),
        None => "none".into(),
    }
}

fn describe(c: &Classification) -> String {
    format!(
        "rays={} components={} beta={} form={}",
        c.extreme_rays,
        c.components,
        c.beta,
        describe_form(&c.orthant_form)
    )
}

/// Records the checks that apply to any proper permutation invariant cone.
fn check_invariant_cone(table: &mut VerdictTable, name: &str, k: &Cone) -> Result<Classification> {
    let n = k.ambient_dim();
    let c = classify(k)?;
    let obs = describe(&c);
    table.push(
        "dichotomy",
        name,
        n,
        "irreducible with beta=1 xor orthant form with beta=n",
        obs.clone(),
        c.dichotomy_holds(),
    );
    table.push(
        "rank_bounds",
        name,
        n,
        "1<=beta<=n, beta!=n-1",
        format!("beta={}", c.beta),
        c.bounds_hold(),
    );
    if c.extreme_rays > n {
        table.push(
            "more_rays_than_n",
            name,
            n,
            "irreducible, beta=1",
            obs.clone(),
            c.irreducible() && c.beta == 1,
        );
    }
    let axis = contains_ones_axis(k);
    table.push(
        "ones_axis",
        name,
        n,
        "contains 1 or -1",
        axis.as_str(),
        axis != OnesAxis::Neither,
    );
    Ok(c)
}

/// Runs the full suite for every `n` in `n_lo..=n_hi`.
pub fn verify_theorems(cfg: &SuiteConfig) -> Result<VerdictTable> {
    let mut table = VerdictTable::default();
    let mut rng = seeded_rng(cfg.seed);

    for n in cfg.n_lo.max(1)..=cfg.n_hi {
        let name = format!("orthant(n={n})");
        let beta = lyapunov_rank(&orthant(n))?;
        table.push("orthant_rank", &name, n, format!("beta={n}"), format!("beta={beta}"), beta == n);

        for p in 1..=n {
            let name = format!("qpn(n={n},p={p})");
            let k = qpn(n, p)?;
            let proper = k.is_proper();
            let expect_proper = p >= 2 || n == 1;
            table.push(
                "qpn_proper",
                &name,
                n,
                format!("proper={expect_proper}"),
                format!("proper={proper}"),
                proper == expect_proper,
            );
            let invariant = is_permutation_invariant(&k);
            table.push("permutation_invariant", &name, n, "true", invariant.to_string(), invariant);
            if !proper || !invariant {
                continue;
            }
            let c = check_invariant_cone(&mut table, &name, &k)?;
            if p == 2 && n >= 3 {
                let (a, b) = qpn2_form(n);
                let ok = c.beta == n
                    && c.orthant_form.as_ref().is_some_and(|f| f.a == a && f.b == b);
                table.push(
                    "qpn2_orthant_form",
                    &name,
                    n,
                    format!("beta={n} (a,b)=({},{})", format_rat(&a), format_rat(&b)),
                    describe(&c),
                    ok,
                );
            }
            if (3..n).contains(&p) {
                table.push(
                    "qpn_irreducible",
                    &name,
                    n,
                    "irreducible, beta=1",
                    describe(&c),
                    c.irreducible() && c.beta == 1,
                );
            }
        }

        for i in 0..cfg.orbit_cones_per_n {
            let seeds = vec![random_seed_vector(n, &mut rng), random_seed_vector(n, &mut rng)];
            let k = orbit_cone(&seeds)?;
            let name = format!("orbit(n={n},#{i})");
            let invariant = is_permutation_invariant(&k);
            table.push("permutation_invariant", &name, n, "true", invariant.to_string(), invariant);
            if k.is_pointed() && !k.is_zero() {
                let axis = contains_ones_axis(&k);
                table.push("ones_axis", &name, n, "contains 1 or -1", axis.as_str(), axis != OnesAxis::Neither);
            }
            if !k.is_proper() {
                continue;
            }
            let c = check_invariant_cone(&mut table, &name, &k)?;
            if distinct_ray_orbits(&k)? {
                table.push(
                    "distinct_ray_orbits",
                    &name,
                    n,
                    "irreducible, beta=1",
                    describe(&c),
                    c.irreducible() && c.beta == 1,
                );
            }
        }

        for _ in 0..cfg.ab_pairs_per_n {
            let (a, b) = random_ab(n, &mut rng);
            let name = format!("ab_cone(n={n},a={},b={})", format_rat(&a), format_rat(&b));
            let k = ab_cone(n, &a, &b)?;
            let proper = k.is_proper();
            let invariant = is_permutation_invariant(&k);
            let mut ok = proper && invariant;
            let mut observed = format!("proper={proper} invariant={invariant}");
            if ok {
                let d = decompose(&k)?;
                let form = recognize_orthant_form(&k)?;
                let recovered = form
                    .as_ref()
                    .and_then(|f| ab_cone(n, &f.a, &f.b).ok())
                    .is_some_and(|r| r.extreme_rays().ok() == k.extreme_rays().ok());
                ok = d.len() == n && d.components.iter().all(|c| c.rank() == 1) && recovered;
                observed = format!("components={} form={}", d.len(), describe_form(&form));
            }
            table.push(
                "ab_round_trip",
                &name,
                n,
                format!("proper, invariant, {n} one-dimensional components, pattern recovered"),
                observed,
                ok,
            );
        }

        for i in 0..cfg.simplicial_per_n {
            let k = random_simplicial(n, cfg.seed.wrapping_mul(1000).wrapping_add((n * 100 + i) as u64));
            let beta = lyapunov_rank(&k)?;
            table.push(
                "simplicial_rank",
                &format!("random_simplicial(n={n},#{i})"),
                n,
                format!("beta={n}"),
                format!("beta={beta}"),
                beta == n && bounds_hold(beta, n),
            );
        }

        if n >= 2 && cfg.spectral_samples > 0 {
            let mut forms = vec![(rat(1), rat(0))];
            if n >= 3 {
                forms.push(qpn2_form(n));
            }
            for (a, b) in forms {
                let name = format!("spectral(m={n},a={},b={})", format_rat(&a), format_rat(&b));
                let r = verify_prop5(n, &a, &b, cfg.spectral_samples, cfg.seed, cfg.tol)?;
                table.push(
                    "spectral_cone",
                    &name,
                    n,
                    format!("{} forward and backward passes", r.samples),
                    format!(
                        "forward={} backward={} max_violation={:e}",
                        r.forward_pass, r.backward_pass, r.max_violation
                    ),
                    r.all_pass(),
                );
                let r = verify_prop5_exact(n, &a, &b, cfg.spectral_samples, cfg.seed)?;
                table.push(
                    "spectral_cone_exact",
                    &name,
                    n,
                    format!("{} forward and backward passes", r.samples),
                    format!("forward={} backward={}", r.forward_pass, r.backward_pass),
                    r.all_pass(),
                );
            }
        }
    }
    Ok(table)
}

/// Whether the cone has two extreme rays that no coordinate permutation
/// maps onto each other.
pub fn distinct_ray_orbits(k: &Cone) -> Result<bool> {
    let rays = k.extreme_rays()?;
    let Some(first) = rays.rays().first() else {
        return Ok(false);
    };
    let first_orbit = orbit(std::slice::from_ref(first));
    Ok(rays.iter().any(|r| first_orbit.binary_search(r).is_err()))
}
