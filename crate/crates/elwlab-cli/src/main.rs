//! `elwlab`: compute and verify ELW index sequences from cycle catalogs.
//!
//! One binary, subcommand style; every file input is JSON in the catalog
//! schema. Exit codes: 0 ok/admissible, 1 violation/inadmissible, 2 malformed
//! input or usage error. `--json` switches from aligned tables to a single
//! JSON report; `ELWLAB_COLOR=0|1` forces ANSI color off or on in table mode.

mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use elwlab::admissibility::{enumerate_he, he_admissible, k3_admissible, CandidateSequence};
use elwlab::arith::primes_up_to;
use elwlab::catalog::{
    check_ord_relation, check_top_relation, cycle_residue, degree_formula_check,
    finite_field_check, morphism_checks, rost_corollary_check, todd_divisibility_check,
    CycleCatalog, CycleClass, ElwSequence, Flag, MorphismModel,
};
use elwlab::engines;
use elwlab::todd::ToddDenominator;
use elwlab::zideal::ZIdeal;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use report::{color_enabled, print_table, Detail, Report};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "elwlab",
    version,
    about = "ELW index sequences of cycle catalogs"
)]
struct Cli {
    /// Emit one JSON report on stdout instead of a table
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Todd denominator mu_td(n)
    MuTd {
        n: u64,
        /// Print the prime factorization as p^e pairs
        #[arg(long)]
        factored: bool,
    },
    /// Compute the ELW sequence of a catalog
    Elw { catalog: PathBuf },
    /// Verify lemmas on a catalog (top relation, ord relation, Todd
    /// divisibility, finite-field constancy)
    Verify {
        catalog: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        lemma: LemmaChoice,
        /// Primes for the ord relation (default: primes dividing the
        /// penultimate generator or chi)
        #[arg(long = "ell")]
        ells: Vec<u64>,
    },
    /// Run the checks applicable to a declared morphism
    Morphism { morphism: PathBuf },
    /// Residue of a formal cycle class modulo elw_{r-1}
    Residue { catalog: PathBuf, cycle: PathBuf },
    /// Degree formula deg·elw_i(Y) ⊂ elw_i(X) + elw_{i-1}(Y) at one level
    DegreeFormula {
        /// Source sequence, comma-separated generators (e.g. 3,3,1)
        seq_x: String,
        /// Target sequence, comma-separated generators
        seq_y: String,
        #[arg(long)]
        deg: u64,
        #[arg(long)]
        level: u64,
        /// Also check the valuation corollary at this prime
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Check a candidate sequence e0 e1 ... en for admissibility
    CheckSeq {
        #[arg(required = true)]
        entries: Vec<String>,
        /// Apply the K3-surface constraints (requires exactly three entries)
        #[arg(long)]
        k3: bool,
    },
    /// Enumerate admissible sequences of a dimension, lexicographically
    Enumerate {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Build a worked example family and print its sequence
    Example {
        /// severi-brauer, conics, hyperelliptic, real-curves, double-cover,
        /// quadric3, or k3-chi
        name: String,
        params: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum LemmaChoice {
    #[default]
    All,
    Top,
    Ord,
    Todd,
    Ff,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command) {
        Ok(report) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report is JSON")
                );
            } else {
                print_table(&report, color_enabled());
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::MuTd { n, factored } => cmd_mu_td(n, factored),
        Command::Elw { catalog } => cmd_elw(&catalog),
        Command::Verify {
            catalog,
            lemma,
            ells,
        } => cmd_verify(&catalog, lemma, &ells),
        Command::Morphism { morphism } => cmd_morphism(&morphism),
        Command::Residue { catalog, cycle } => cmd_residue(&catalog, &cycle),
        Command::DegreeFormula {
            seq_x,
            seq_y,
            deg,
            level,
            ell,
        } => cmd_degree_formula(&seq_x, &seq_y, deg, level, ell),
        Command::CheckSeq { entries, k3 } => cmd_check_seq(&entries, k3),
        Command::Enumerate { dim, bound } => cmd_enumerate(dim, bound),
        Command::Example { name, params } => cmd_example(&name, &params),
    }
}

const MAX_SAFE: u64 = (1 << 53) - 1;

fn biguint_value(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(small) if small <= MAX_SAFE => json!(small),
        _ => json!(v.to_string()),
    }
}

fn bigint_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(small) if small.unsigned_abs() <= MAX_SAFE => json!(small),
        _ => json!(v.to_string()),
    }
}

fn load_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

/// Accepts a bare catalog object or a report wrapping one under `payload`
/// (so `elwlab example ... --json` output can be fed straight back in).
fn load_catalog(path: &Path) -> Result<CycleCatalog> {
    let mut value = load_json(path)?;
    if value.get("generators").is_none() {
        if let Some(payload) = value.get_mut("payload") {
            if payload.get("generators").is_some() {
                value = payload.take();
            }
        }
    }
    let catalog: CycleCatalog = serde_json::from_value(value)
        .with_context(|| format!("{} does not match the catalog schema", path.display()))?;
    catalog.validate()?;
    Ok(catalog)
}

fn parse_sequence(text: &str) -> Result<ElwSequence> {
    let ideals = text
        .split(',')
        .map(|part| {
            let g: BigUint = part
                .trim()
                .trim_start_matches('(')
                .trim_end_matches(')')
                .parse()
                .map_err(|_| anyhow!("bad sequence entry {part:?}"))?;
            Ok(ZIdeal::new(g))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ElwSequence::from_ideals(ideals)?)
}

fn sequence_value(seq: &ElwSequence) -> Value {
    serde_json::to_value(seq).expect("sequence serializes")
}

fn cmd_mu_td(n: u64, factored: bool) -> Result<Report> {
    let td = ToddDenominator::new(n);
    let mut payload = json!({
        "n": n,
        "value": biguint_value(&td.value()),
        "factors": td.factors().collect::<Vec<_>>(),
    });
    if factored {
        payload["factored"] = json!(td.to_string());
    }
    Ok(Report::new("mu-td", Vec::new(), Some(payload)))
}

fn cmd_elw(path: &Path) -> Result<Report> {
    let catalog = load_catalog(path)?;
    let seq = catalog.elw_sequence()?;
    let payload = json!({
        "catalog": catalog.name,
        "dimension": catalog.dimension,
        "sequence": sequence_value(&seq),
    });
    Ok(Report::new("elw", Vec::new(), Some(payload)))
}

/// Primes worth testing the ord relation at: divisors of the penultimate
/// generator and of chi(X, O_X), found by trial division up to 10^4. Larger
/// prime factors need an explicit --ell.
fn default_ord_primes(catalog: &CycleCatalog, seq: &ElwSequence) -> Vec<u64> {
    let mut candidates = Vec::new();
    let mut push_factors = |value: &BigUint| {
        if value.is_zero() {
            return;
        }
        for p in primes_up_to(10_000) {
            if (value % BigUint::from(p)).is_zero() && !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    };
    push_factors(seq.level(catalog.dimension as i64 - 1).generator());
    if let Some(chi) = &catalog.global_chi {
        push_factors(chi.magnitude());
    }
    candidates.sort_unstable();
    candidates
}

fn cmd_verify(path: &Path, lemma: LemmaChoice, ells: &[u64]) -> Result<Report> {
    let catalog = load_catalog(path)?;
    let seq = catalog.elw_sequence()?;
    let mut details = Vec::new();
    let all = lemma == LemmaChoice::All;

    if matches!(lemma, LemmaChoice::All | LemmaChoice::Top) {
        if catalog.has_flag(Flag::Integral) {
            details.push(Detail::from_check(&check_top_relation(&catalog)?, None));
        } else if all {
            details.push(Detail::vacuous(
                "top_relation",
                "catalog not flagged integral",
            ));
        } else {
            check_top_relation(&catalog)?; // surfaces the MissingFlag error
        }
    }

    if matches!(lemma, LemmaChoice::All | LemmaChoice::Ord) {
        if catalog.has_flag(Flag::Integral) {
            let primes = if ells.is_empty() {
                default_ord_primes(&catalog, &seq)
            } else {
                ells.to_vec()
            };
            if primes.is_empty() {
                details.push(Detail::vacuous(
                    "ord_relation",
                    "no candidate primes found; pass --ell",
                ));
            }
            for ell in primes {
                let check = check_ord_relation(&catalog, ell)?;
                details.push(Detail::from_check(
                    &check,
                    Some(format!("ord_relation (ell={ell})")),
                ));
            }
        } else if all {
            details.push(Detail::vacuous(
                "ord_relation",
                "catalog not flagged integral",
            ));
        } else {
            check_ord_relation(&catalog, *ells.first().unwrap_or(&2))?;
        }
    }

    if matches!(lemma, LemmaChoice::All | LemmaChoice::Todd) {
        if catalog.has_flag(Flag::CharZero) || catalog.has_flag(Flag::Regular) {
            let todd = todd_divisibility_check(&catalog)?;
            for level in &todd.levels {
                let name = format!("todd r={}", level.r);
                if level.ok {
                    details.push(Detail::pass(name));
                } else {
                    details.push(Detail::fail(
                        name,
                        format!(
                            "mu_td({})·elw_{} = {} ⊄ elw_0 = {}",
                            level.r,
                            level.r,
                            seq.level(level.r as i64)
                                .scale(&elwlab::todd::mu_td(level.r)),
                            seq.level(0)
                        ),
                    ));
                }
            }
        } else if all {
            details.push(Detail::vacuous(
                "todd",
                "catalog flagged neither char_zero nor regular",
            ));
        } else {
            todd_divisibility_check(&catalog)?;
        }
    }

    if matches!(lemma, LemmaChoice::All | LemmaChoice::Ff) {
        if catalog.has_flag(Flag::FiniteField) {
            if finite_field_check(&catalog)? {
                details.push(Detail::pass("finite_field_constancy"));
            } else {
                details.push(Detail::fail(
                    "finite_field_constancy",
                    format!("sequence {seq} is not constant; not realizable over a finite field"),
                ));
            }
        } else if all {
            details.push(Detail::vacuous(
                "finite_field_constancy",
                "catalog not flagged finite_field",
            ));
        } else {
            finite_field_check(&catalog)?;
        }
    }

    let payload = json!({
        "catalog": catalog.name,
        "dimension": catalog.dimension,
        "sequence": sequence_value(&seq),
    });
    Ok(Report::new("verify", details, Some(payload)))
}

fn cmd_morphism(path: &Path) -> Result<Report> {
    let value = load_json(path)?;
    let model: MorphismModel = serde_json::from_value(value)
        .with_context(|| format!("{} does not match the morphism schema", path.display()))?;
    let checks = morphism_checks(&model)?;
    let details = checks
        .checks
        .iter()
        .map(|c| Detail::from_check(c, None))
        .collect();
    let payload = json!({
        "source": model.source.name,
        "target": model.target.name,
        "kind": model.kind.to_string(),
        "degree": model.degree,
    });
    Ok(Report::new("morphism", details, Some(payload)))
}

fn cmd_residue(catalog_path: &Path, cycle_path: &Path) -> Result<Report> {
    let catalog = load_catalog(catalog_path)?;
    let cycle: CycleClass = serde_json::from_value(load_json(cycle_path)?)
        .with_context(|| format!("{} does not match the cycle schema", cycle_path.display()))?;
    let residue = cycle_residue(&catalog, &cycle)?;
    let payload = json!({
        "catalog": catalog.name,
        "cycle_dim": cycle.dim,
        "residue": residue.to_string(),
        "residue_value": bigint_value(&residue.value),
        "residue_modulus": biguint_value(residue.modulus.generator()),
    });
    Ok(Report::new("residue", Vec::new(), Some(payload)))
}

fn cmd_degree_formula(
    seq_x: &str,
    seq_y: &str,
    degree: u64,
    level: u64,
    ell: Option<u64>,
) -> Result<Report> {
    if degree == 0 {
        bail!("--deg must be positive");
    }
    let sx = parse_sequence(seq_x).context("source sequence")?;
    let sy = parse_sequence(seq_y).context("target sequence")?;
    let mut details = Vec::new();
    let name = format!("degree_formula (i={level})");
    if degree_formula_check(&sx, &sy, degree, level)? {
        details.push(Detail::pass(name));
    } else {
        details.push(Detail::fail(
            name,
            format!(
                "{degree}·elw_{level}(Y) = {} ⊄ elw_{level}(X) + elw_{}(Y) = {}",
                sy.level(level as i64).scale(&BigUint::from(degree)),
                level as i64 - 1,
                sx.level(level as i64).sum(&sy.level(level as i64 - 1)),
            ),
        ));
    }
    if let Some(ell) = ell {
        let check = rost_corollary_check(&sx, &sy, degree, ell, level)?;
        details.push(Detail::from_check(
            &check,
            Some(format!("rost_corollary (ell={ell})")),
        ));
    }
    let payload = json!({
        "seq_x": sequence_value(&sx),
        "seq_y": sequence_value(&sy),
        "degree": degree,
        "level": level,
    });
    Ok(Report::new("degree-formula", details, Some(payload)))
}

fn cmd_check_seq(entries: &[String], k3: bool) -> Result<Report> {
    let parsed: Vec<BigUint> = entries
        .iter()
        .map(|e| e.parse::<BigUint>().map_err(|_| anyhow!("bad entry {e:?}")))
        .collect::<Result<Vec<_>>>()?;
    let seq = CandidateSequence::new(parsed.clone())?;
    let mut details = Vec::new();
    if k3 {
        if parsed.len() != 3 {
            bail!("--k3 needs exactly three entries, got {}", parsed.len());
        }
        match k3_admissible(&parsed[0], &parsed[1], &parsed[2]) {
            Ok(()) => details.push(Detail::pass("k3_conditions")),
            Err(v) => {
                eprintln!("{v}");
                details.push(Detail::fail("k3_conditions", v.to_string()));
            }
        }
    } else {
        match he_admissible(&seq) {
            Ok(()) => details.push(Detail::pass("he_conditions")),
            Err(v) => {
                eprintln!("{v}");
                details.push(Detail::fail("he_conditions", v.to_string()));
            }
        }
    }
    let payload = json!({
        "sequence": parsed.iter().map(biguint_value).collect::<Vec<_>>(),
    });
    Ok(Report::new("check-seq", details, Some(payload)))
}

fn cmd_enumerate(dim: u64, bound: u64) -> Result<Report> {
    if bound == 0 {
        bail!("--bound must be positive");
    }
    let sequences = enumerate_he(dim, bound);
    let payload = json!({
        "dim": dim,
        "bound": bound,
        "count": sequences.len(),
        "sequences": sequences
            .iter()
            .map(|s| s.entries().iter().map(biguint_value).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    Ok(Report::new("enumerate", Vec::new(), Some(payload)))
}

fn parse_param<T: std::str::FromStr>(params: &[String], index: usize, what: &str) -> Result<T> {
    let raw = params
        .get(index)
        .ok_or_else(|| anyhow!("missing parameter: {what}"))?;
    raw.parse().map_err(|_| anyhow!("bad {what}: {raw:?}"))
}

fn example_report(built: engines::WorkedExample) -> Result<Report> {
    let computed = built.catalog.elw_sequence()?;
    let mut payload = serde_json::to_value(&built.catalog).expect("catalog serializes");
    payload["expected_sequence"] = sequence_value(&built.expected);
    payload["sequence"] = sequence_value(&computed);
    let detail = if computed == built.expected {
        Detail::pass("matches_expected")
    } else {
        Detail::fail(
            "matches_expected",
            format!("computed {computed} but the family has {}", built.expected),
        )
    };
    Ok(Report::new("example", vec![detail], Some(payload)))
}

fn sequence_only_report(name: &str, seq: ElwSequence) -> Report {
    let payload = json!({
        "name": name,
        "dimension": seq.dimension(),
        "sequence": sequence_value(&seq),
        "expected_sequence": sequence_value(&seq),
    });
    Report::new("example", Vec::new(), Some(payload))
}

fn cmd_example(name: &str, params: &[String]) -> Result<Report> {
    match name {
        "severi-brauer" => {
            let p: u64 = parse_param(params, 0, "prime p")?;
            Ok(example_report(engines::severi_brauer_catalog(p)?)?)
        }
        "conics" => {
            let n: u64 = parse_param(params, 0, "number of factors n")?;
            if n == 0 {
                bail!("n must be positive");
            }
            Ok(example_report(engines::conic_product_catalog(n))?)
        }
        "double-cover" => {
            let d: u64 = parse_param(params, 0, "degree parameter d")?;
            let r_max: u64 = if params.len() > 1 {
                parse_param(params, 1, "r_max")?
            } else {
                3
            };
            if r_max == 0 {
                bail!("r_max must be positive");
            }
            Ok(example_report(engines::real_double_cover_catalog(
                d, r_max,
            )?)?)
        }
        "quadric3" => Ok(example_report(engines::quadric3_catalog())?),
        "hyperelliptic" => {
            let n: u64 = parse_param(params, 0, "number of factors n")?;
            if n == 0 {
                bail!("n must be positive");
            }
            Ok(sequence_only_report(
                &format!("hyperelliptic-product-{n}"),
                engines::hyperelliptic_product_sequence(n),
            ))
        }
        "real-curves" => {
            let n: u64 = parse_param(params, 0, "number of factors n")?;
            if n == 0 {
                bail!("n must be positive");
            }
            Ok(sequence_only_report(
                &format!("real-curve-product-{n}"),
                engines::real_curve_product_sequence(n),
            ))
        }
        "k3-chi" => {
            let h_squared: u64 = parse_param(params, 0, "self-intersection H^2")?;
            let a: i64 = parse_param(params, 1, "multiple a")?;
            let chi = engines::k3_line_bundle_chi(h_squared, a)?;
            let m = h_squared / 2;
            let diff: BigInt = &chi - BigInt::from(2);
            let detail = if (&diff % BigInt::from(m)).is_zero() {
                Detail::pass("chi_difference_divisible_by_m")
            } else {
                Detail::fail(
                    "chi_difference_divisible_by_m",
                    format!("chi - 2 = {diff} not divisible by m = {m}"),
                )
            };
            let payload = json!({
                "name": format!("k3 chi(aH), H^2 = {h_squared}, a = {a}"),
                "h_squared": h_squared,
                "a": a,
                "m": m,
                "chi": bigint_value(&chi),
            });
            Ok(Report::new("example", vec![detail], Some(payload)))
        }
        other => bail!(
            "unknown example {other:?} (expected severi-brauer, conics, hyperelliptic, \
             real-curves, double-cover, quadric3, or k3-chi)"
        ),
    }
}
