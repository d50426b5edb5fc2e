//! `conelab`: JSON in, JSON out. Summaries go to stderr.
//!
//! Exit status is 0 on success, 2 on malformed input or a domain error and
//! 1 when `verify-theorems` finds a violated property.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use conelab::catalog::{direct_sum, CatalogSpec};
use conelab::exact::{format_rat, parse_rat};
use conelab::io::{mat_to_strings, parse_vector_list, vecs_to_strings, ConeDocument};
use conelab::jordan::{verify_prop5, DEFAULT_TOL};
use conelab::lyapunov::complementary_pairs;
use conelab::symmetry::contains_ones_axis;
use conelab::verify::SuiteConfig;
use conelab::{
    decompose, is_permutation_invariant, ll_basis, recognize_orthant_form, verify_theorems, Cone, Rat,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "conelab", version, about = "Exact toolkit for proper polyhedral cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Cone document, or `-` for stdin.
    #[arg(long, value_name = "FILE|-")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Orthant,
    Qpn,
    Ab,
    Orbit,
    RandomSimplicial,
    DirectSum,
}

#[derive(Subcommand)]
enum Command {
    /// The dual cone, with both descriptions.
    Dual(InputArgs),
    /// Extreme rays of a pointed cone.
    Extreme(InputArgs),
    /// Lyapunov rank of a proper cone.
    Rank(InputArgs),
    /// A basis of the Lyapunov-like transformations of a proper cone.
    LlBasis(InputArgs),
    /// Finest direct-sum decomposition of a pointed cone.
    Decompose(InputArgs),
    /// Permutation invariance, for a cone document or the orbit cone of seeds.
    CheckPerm {
        #[arg(long, value_name = "FILE|-", conflicts_with = "seeds", required_unless_present = "seeds")]
        input: Option<PathBuf>,
        /// JSON list of seed vectors.
        #[arg(long, value_name = "FILE")]
        seeds: Option<PathBuf>,
    },
    /// Build a catalog cone.
    Catalog {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// JSON list of seed vectors, for `--kind orbit`.
        #[arg(long, value_name = "FILE")]
        seeds: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// First summand, for `--kind direct-sum`.
        #[arg(long, value_name = "FILE|-")]
        input: Option<PathBuf>,
        /// Second summand, for `--kind direct-sum`.
        #[arg(long, value_name = "FILE")]
        with: Option<PathBuf>,
    },
    /// Sample both inclusions of the spectral cone identity on m × m matrices.
    SpectralVerify {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the classification checks over the catalog.
    VerifyTheorems {
        #[arg(long, value_name = "LO..HI", default_value = "2..5")]
        n_range: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Spectral samples per (a, b) pair.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

struct Output {
    json: Value,
    summary: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Self {
            json,
            summary: summary.into(),
            ok: true,
        }
    }
}

fn read_source(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_cone(path: &Path) -> Result<Cone> {
    let doc = ConeDocument::from_json(&read_source(path)?)?;
    Ok(doc.to_cone()?)
}

fn parse_rat_arg(s: &str, flag: &str) -> Result<Rat> {
    parse_rat(s).with_context(|| format!("--{flag}: not a rational number: {s:?}"))
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("--n-range must look like LO..HI, got {s:?}"))?;
    let (lo, hi): (usize, usize) = (lo.trim().parse()?, hi.trim().parse()?);
    if lo == 0 || lo > hi {
        bail!("--n-range needs 1 <= LO <= HI, got {s:?}");
    }
    Ok((lo, hi))
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("--kind {kind} needs --{flag}"))
}

fn pointed(k: &Cone) -> Result<()> {
    if k.is_pointed() {
        Ok(())
    } else {
        Err(conelab::Error::NotPointed.into())
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Dual(args) => {
            let k = load_cone(&args.input)?;
            let d = k.dual();
            let doc = ConeDocument::complete(&d);
            let summary = format!("dual cone in R^{}, dimension {}", d.ambient_dim(), d.dimension());
            Ok(Output::ok(serde_json::to_value(doc)?, summary))
        }
        Command::Extreme(args) => {
            let k = load_cone(&args.input)?;
            pointed(&k)?;
            let rays = k.extreme_rays()?;
            let summary = format!("{} extreme rays", rays.len());
            Ok(Output::ok(
                json!({"extreme_rays": vecs_to_strings(rays.rays()), "n": k.ambient_dim()}),
                summary,
            ))
        }
        Command::Rank(args) => {
            let k = load_cone(&args.input)?;
            let n = k.ambient_dim();
            let pairs = complementary_pairs(&k)?;
            let beta = conelab::lyapunov::rank_from_pairs(n, &pairs);
            let summary = format!("beta = {beta} (n = {n}, {} complementary pairs)", pairs.len());
            Ok(Output::ok(json!({"beta": beta, "n": n, "pairs": pairs.len()}), summary))
        }
        Command::LlBasis(args) => {
            let k = load_cone(&args.input)?;
            let basis = ll_basis(&k)?;
            let mats: Vec<_> = basis.mats.iter().map(mat_to_strings).collect();
            let summary = format!("{} basis matrices", mats.len());
            Ok(Output::ok(
                json!({"basis": mats, "beta": basis.len(), "n": k.ambient_dim()}),
                summary,
            ))
        }
        Command::Decompose(args) => {
            let k = load_cone(&args.input)?;
            pointed(&k)?;
            let d = decompose(&k)?;
            let form = if k.is_proper() && is_permutation_invariant(&k) {
                recognize_orthant_form(&k)?
            } else {
                None
            };
            let components: Vec<Value> = d
                .components
                .iter()
                .map(|c| json!({"rank": c.rank(), "rays": vecs_to_strings(c.rays.rays())}))
                .collect();
            let form_json = form.as_ref().map_or(Value::Null, |f| {
                json!({"a": format_rat(&f.a), "b": format_rat(&f.b)})
            });
            let summary = format!(
                "{} component(s){}",
                d.len(),
                if form.is_some() { ", orthant form" } else { "" }
            );
            Ok(Output::ok(
                json!({
                    "components": components,
                    "irreducible": d.len() == 1,
                    "n": k.ambient_dim(),
                    "orthant_form": form_json,
                }),
                summary,
            ))
        }
        Command::CheckPerm { input, seeds } => {
            let k = match (input, seeds) {
                (Some(path), _) => load_cone(&path)?,
                (None, Some(path)) => conelab::orbit_cone(&parse_vector_list(&read_source(&path)?)?)?,
                (None, None) => bail!("check-perm needs --input or --seeds"),
            };
            let invariant = is_permutation_invariant(&k);
            let axis = contains_ones_axis(&k);
            let summary = format!(
                "{}permutation invariant, ones axis: {}",
                if invariant { "" } else { "not " },
                axis.as_str()
            );
            Ok(Output::ok(
                json!({
                    "n": k.ambient_dim(),
                    "ones_axis": axis.as_str(),
                    "permutation_invariant": invariant,
                    "pointed": k.is_pointed(),
                    "proper": k.is_proper(),
                }),
                summary,
            ))
        }
        Command::Catalog {
            kind,
            n,
            p,
            a,
            b,
            seeds,
            seed,
            input,
            with,
        } => {
            let (k, name) = match kind {
                Kind::DirectSum => {
                    let first = load_cone(&need(input, "input", "direct-sum")?)?;
                    let second = load_cone(&need(with, "with", "direct-sum")?)?;
                    (direct_sum(&first, &second), "direct_sum".to_string())
                }
                _ => {
                    let spec = match kind {
                        Kind::Orthant => CatalogSpec::Orthant {
                            n: need(n, "n", "orthant")?,
                        },
                        Kind::Qpn => CatalogSpec::Qpn {
                            n: need(n, "n", "qpn")?,
                            p: need(p, "p", "qpn")?,
                        },
                        Kind::Ab => CatalogSpec::AbCone {
                            n: need(n, "n", "ab")?,
                            a: parse_rat_arg(&need(a, "a", "ab")?, "a")?,
                            b: parse_rat_arg(&need(b, "b", "ab")?, "b")?,
                        },
                        Kind::Orbit => CatalogSpec::Orbit {
                            seeds: parse_vector_list(&read_source(&need(seeds, "seeds", "orbit")?)?)?,
                        },
                        Kind::RandomSimplicial => CatalogSpec::RandomSimplicial {
                            n: need(n, "n", "random-simplicial")?,
                            seed,
                        },
                        Kind::DirectSum => unreachable!(),
                    };
                    (spec.build()?, spec.name())
                }
            };
            let summary = format!("{name}: {} generators", k.generators().signed_list().len());
            let doc = ConeDocument::complete(&k).with_name(name);
            Ok(Output::ok(serde_json::to_value(doc)?, summary))
        }
        Command::SpectralVerify {
            m,
            a,
            b,
            samples,
            seed,
            tol,
        } => {
            let (a, b) = (parse_rat_arg(&a, "a")?, parse_rat_arg(&b, "b")?);
            let report = verify_prop5(m, &a, &b, samples, seed, tol)?;
            let summary = format!(
                "forward {}/{}, backward {}/{} ({} fallbacks), max violation {:e}",
                report.forward_pass,
                report.samples,
                report.backward_pass,
                report.samples,
                report.backward_fallbacks,
                report.max_violation
            );
            Ok(Output::ok(serde_json::to_value(report)?, summary))
        }
        Command::VerifyTheorems {
            n_range,
            seed,
            samples,
            tol,
        } => {
            let (n_lo, n_hi) = parse_range(&n_range)?;
            let cfg = SuiteConfig {
                n_lo,
                n_hi,
                seed,
                spectral_samples: samples,
                tol,
                ..SuiteConfig::default()
            };
            let table = verify_theorems(&cfg)?;
            let ok = table.all_pass();
            let summary = format!(
                "{} checks, {} failed",
                table.verdicts.len(),
                table.failures()
            );
            Ok(Output {
                json: json!({"all_pass": ok, "verdicts": table.verdicts}),
                summary,
                ok,
            })
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("CONELAB_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("CONELAB_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            bail!("CONELAB_THREADS must be a positive integer, got 0");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|()| run(cli.command)) {
        Ok(out) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out.json).expect("json values serialize")
            );
            eprintln!("{}", out.summary);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
