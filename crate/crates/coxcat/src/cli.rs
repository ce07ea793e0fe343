//! The `coxcat` command line: compute invariants, verify the identity
//! battery, export artifacts, and cache expensive enumerations.
//!
//! Exit codes: 0 pass, 1 verification mismatch, 2 usage/spec error,
//! 3 face-budget exceeded, 4 i/o error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::cache::{complex_to_json, lattice_to_json, write_export, CacheDir};
use crate::cluster::{h_polynomial, DEFAULT_FACE_BUDGET};
use crate::error::{CoxError, CoxResult};
use crate::identity::{verify_pipeline, Pipeline, VerificationReport, VerifyOptions, DEFAULT_SEED};
use crate::roots::{build_root_system, Family, TypeSpec};
use crate::triangles::unipoly_display;

#[derive(Parser, Debug)]
#[command(
    name = "coxcat",
    version,
    about = "Exact noncrossing-partition and cluster-complex combinatorics for finite Coxeter groups"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cache directory (overrides the COXCAT_CACHE environment variable;
    /// default ~/.cache/coxcat).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Disable the enumeration cache entirely.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Unlock H4 and E7 and raise the face budget to 10^8.
    #[arg(long, global = true)]
    large: bool,

    /// Unlock E8 (expect ~80 MB for the order relation alone) and raise the
    /// face budget to 10^9.
    #[arg(long, global = true)]
    huge: bool,

    /// Override the face budget (defaults: 10^7, 10^8 with --large, 10^9
    /// with --huge). Exceeding it exits with code 3.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one invariant of one type.
    Compute {
        what: ComputeWhat,
        /// Type such as A3, B4, H3, I2(7), A2xB2 (case-insensitive).
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify the F/M identity and its supporting checks.
    Verify {
        scope: VerifyScope,
        /// Type to verify (required for scope `fm`, ignored for `all`).
        spec: Option<String>,
        /// Restrict `all` to types of total rank at most this bound.
        #[arg(long)]
        max_rank: Option<usize>,
        /// Seed for sampled checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Append per-type timings (excluded from the determinism guarantee).
        #[arg(long)]
        timings: bool,
    },
    /// Export a lattice or complex as JSON.
    Export {
        what: ExportWhat,
        spec: String,
        path: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComputeWhat {
    #[value(name = "f-triangle")]
    FTriangle,
    #[value(name = "m-triangle")]
    MTriangle,
    #[value(name = "h-poly")]
    HPoly,
    #[value(name = "rank-gen")]
    RankGen,
    #[value(name = "char-poly")]
    CharPoly,
    Narayana,
    #[value(name = "f-vector")]
    FVector,
    Facets,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyScope {
    Fm,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Parses `std::env::args` and runs; prints to stdout and returns the exit
/// code for the process.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; keep its exit convention for
            // --help/--version, use 2 for usage errors
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut out = String::new();
    let code = dispatch(cli, &mut out);
    print!("{out}");
    code
}

/// Runs with explicit arguments, capturing stdout; for tests.
pub fn run_captured(args: &[&str]) -> (i32, String) {
    let mut full = vec!["coxcat"];
    full.extend_from_slice(args);
    match Cli::try_parse_from(full) {
        Ok(cli) => {
            let mut out = String::new();
            let code = dispatch(cli, &mut out);
            (code, out)
        }
        Err(e) => (2, e.to_string()),
    }
}

fn dispatch(cli: Cli, out: &mut String) -> i32 {
    let budget = cli.budget.unwrap_or(if cli.huge {
        1_000_000_000
    } else if cli.large {
        100_000_000
    } else {
        DEFAULT_FACE_BUDGET
    });
    let cache = if cli.no_cache {
        None
    } else {
        CacheDir::resolve(cli.cache_dir.clone())
    };
    let result = match cli.command {
        Command::Compute { what, ref spec, format } => {
            cmd_compute(what, spec, format, budget, cli.large, cli.huge, cache.as_ref(), out)
        }
        Command::Verify {
            scope,
            ref spec,
            max_rank,
            seed,
            format,
            timings,
        } => cmd_verify(
            scope,
            spec.as_deref(),
            max_rank,
            seed,
            format,
            timings,
            budget,
            cli.large,
            cli.huge,
            cache.as_ref(),
            out,
        ),
        Command::Export { what, ref spec, ref path } => {
            cmd_export(what, spec, path, budget, cli.large, cli.huge, cache.as_ref(), out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            e.exit_code()
        }
    }
}

/// H4 and E7 require --large; E8 requires --huge.
fn gate_check(spec: &TypeSpec, large: bool, huge: bool) -> CoxResult<()> {
    for family in &spec.components {
        match family {
            Family::E(8) if !huge => {
                return Err(CoxError::Spec(
                    "E8 requires --huge (the order relation alone needs ~80 MB)".into(),
                ))
            }
            Family::E(7) | Family::H(4) if !(large || huge) => {
                return Err(CoxError::Spec(format!(
                    "{family} requires --large"
                )))
            }
            _ => {}
        }
    }
    Ok(())
}

/// The canonical battery, in fixed report order.
pub fn default_battery(large: bool) -> Vec<TypeSpec> {
    let mut names: Vec<String> = vec![];
    for n in 1..=6 {
        names.push(format!("A{n}"));
    }
    for n in 2..=5 {
        names.push(format!("B{n}"));
    }
    names.push("D4".into());
    names.push("D5".into());
    names.push("E6".into());
    if large {
        names.push("E7".into());
    }
    names.push("F4".into());
    names.push("G2".into());
    names.push("H3".into());
    if large {
        names.push("H4".into());
    }
    for m in 3..=10 {
        names.push(format!("I2({m})"));
    }
    names.push("A1xA1".into());
    names.push("A1xA2".into());
    names.push("A2xB2".into());
    names
        .iter()
        .map(|n| TypeSpec::parse(n).expect("battery types parse"))
        .collect()
}

/// Builds the pipeline, consulting and filling the cache when enabled.
fn build_pipeline(spec: &TypeSpec, budget: usize, cache: Option<&CacheDir>) -> CoxResult<Pipeline> {
    if let Some(cache) = cache {
        let rs = build_root_system(spec)?;
        if let Some(lattice) = cache.load_lattice(&rs) {
            if let Some(complex) = cache.load_complex(&rs, &lattice) {
                return Ok(Pipeline {
                    rs,
                    factors: vec![],
                    lattice,
                    complex,
                    lattice_ms: 0,
                    complex_ms: 0,
                });
            }
        }
        let p = Pipeline::from_root_system(rs, budget)?;
        if let Err(e) = cache
            .store_lattice(&p.rs, &p.lattice)
            .and_then(|_| cache.store_complex(&p.rs, &p.complex))
        {
            eprintln!("warning: cache write failed: {e}");
        }
        Ok(p)
    } else {
        Pipeline::build(spec, budget)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_compute(
    what: ComputeWhat,
    spec: &str,
    format: Format,
    budget: usize,
    large: bool,
    huge: bool,
    cache: Option<&CacheDir>,
    out: &mut String,
) -> CoxResult<i32> {
    let spec = TypeSpec::parse(spec)?;
    gate_check(&spec, large, huge)?;
    let p = build_pipeline(&spec, budget, cache)?;
    let name = spec.name();
    match what {
        ComputeWhat::FTriangle | ComputeWhat::MTriangle => {
            let (label, poly) = match what {
                ComputeWhat::FTriangle => ("f-triangle", p.complex.f_triangle()),
                _ => ("m-triangle", p.lattice.m_triangle()),
            };
            match format {
                Format::Text => {
                    let _ = writeln!(out, "{label}({name}) = {poly}");
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "type": name, "what": label, "value": poly.to_json()
                    });
                    let _ = writeln!(out, "{v}");
                }
                Format::Csv => {
                    let _ = writeln!(out, "k,l,coeff");
                    for (k, l, c) in poly.terms() {
                        let _ = writeln!(out, "{k},{l},{c}");
                    }
                }
            }
        }
        ComputeWhat::HPoly | ComputeWhat::RankGen | ComputeWhat::CharPoly => {
            let (label, var, poly) = match what {
                ComputeWhat::HPoly => (
                    "h-poly",
                    "y",
                    h_polynomial(&p.complex.face_counts(), p.rs.rank()),
                ),
                ComputeWhat::RankGen => ("rank-gen", "y", p.lattice.rank_generating_poly()),
                _ => ("char-poly", "q", p.lattice.characteristic_poly()),
            };
            match format {
                Format::Text => {
                    let _ = writeln!(out, "{label}({name}) = {}", unipoly_display(&poly, var));
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "type": name, "what": label, "value": poly.to_json()
                    });
                    let _ = writeln!(out, "{v}");
                }
                Format::Csv => {
                    let _ = writeln!(out, "power,coeff");
                    for (i, c) in poly.coeffs().iter().enumerate() {
                        let _ = writeln!(out, "{i},{c}");
                    }
                }
            }
        }
        ComputeWhat::Narayana | ComputeWhat::FVector => {
            let values: Vec<String> = match what {
                ComputeWhat::Narayana => p
                    .lattice
                    .rank_generating_poly()
                    .coeffs()
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
                _ => p
                    .complex
                    .face_counts()
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
            };
            let label = match what {
                ComputeWhat::Narayana => "narayana",
                _ => "f-vector",
            };
            match format {
                Format::Text => {
                    let _ = writeln!(out, "{label}({name}) = {}", values.join(", "));
                }
                Format::Json => {
                    let v = serde_json::json!({ "type": name, "what": label, "value": values });
                    let _ = writeln!(out, "{v}");
                }
                Format::Csv => {
                    let _ = writeln!(out, "{}", values.join(","));
                }
            }
        }
        ComputeWhat::Facets => {
            let facets = p.complex.facets().len();
            match format {
                Format::Text => {
                    let _ = writeln!(out, "facets({name}) = {facets}");
                }
                Format::Json => {
                    let v = serde_json::json!({ "type": name, "what": "facets", "value": facets });
                    let _ = writeln!(out, "{v}");
                }
                Format::Csv => {
                    let _ = writeln!(out, "{facets}");
                }
            }
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    scope: VerifyScope,
    spec: Option<&str>,
    max_rank: Option<usize>,
    seed: u64,
    format: Format,
    timings: bool,
    budget: usize,
    large: bool,
    huge: bool,
    cache: Option<&CacheDir>,
    out: &mut String,
) -> CoxResult<i32> {
    if format == Format::Csv {
        return Err(CoxError::Argument(
            "verify supports text and json formats".into(),
        ));
    }
    let opts = VerifyOptions {
        budget,
        seed,
        ..VerifyOptions::default()
    };
    let specs: Vec<TypeSpec> = match scope {
        VerifyScope::Fm => {
            let spec = spec.ok_or_else(|| {
                CoxError::Argument("verify fm requires a type specification".into())
            })?;
            vec![TypeSpec::parse(spec)?]
        }
        VerifyScope::All => default_battery(large || huge)
            .into_iter()
            .filter(|s| max_rank.is_none_or(|r| s.rank() <= r))
            .collect(),
    };
    for s in &specs {
        gate_check(s, large, huge)?;
    }

    // independent types verify on parallel workers; reports print in
    // canonical order
    let reports: Vec<CoxResult<VerificationReport>> = specs
        .par_iter()
        .map(|s| verify_one(s, &opts, cache))
        .collect();

    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut skip = 0usize;
    let mut json_reports = vec![];
    for r in reports {
        let report = r?;
        if report.skipped {
            skip += 1;
        } else if report.passed() {
            pass += 1;
        } else {
            fail += 1;
        }
        match format {
            Format::Text => {
                let _ = write!(out, "{}", report.render_text(timings));
            }
            Format::Json => json_reports.push(report.to_json(timings)),
            Format::Csv => unreachable!(),
        }
    }
    match format {
        Format::Text => {
            let _ = writeln!(out, "SUMMARY pass={pass} fail={fail} skipped={skip}");
        }
        Format::Json => {
            let v = serde_json::json!({
                "reports": json_reports,
                "summary": { "pass": pass, "fail": fail, "skipped": skip },
            });
            let _ = writeln!(out, "{v}");
        }
        Format::Csv => unreachable!(),
    }
    Ok(if fail > 0 {
        1
    } else if skip > 0 {
        3
    } else {
        0
    })
}

fn verify_one(
    spec: &TypeSpec,
    opts: &VerifyOptions,
    cache: Option<&CacheDir>,
) -> CoxResult<VerificationReport> {
    match build_pipeline(spec, opts.budget, cache) {
        Ok(p) => Ok(verify_pipeline(&p, opts)),
        Err(CoxError::BudgetExceeded(_)) => crate::identity::verify_fm(spec, opts),
        Err(e) => Err(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_export(
    what: ExportWhat,
    spec: &str,
    path: &std::path::Path,
    budget: usize,
    large: bool,
    huge: bool,
    cache: Option<&CacheDir>,
    out: &mut String,
) -> CoxResult<i32> {
    let spec = TypeSpec::parse(spec)?;
    gate_check(&spec, large, huge)?;
    let p = build_pipeline(&spec, budget, cache)?;
    match what {
        ExportWhat::Complex => write_export(path, &complex_to_json(&p.rs, &p.complex))?,
        ExportWhat::Lattice => write_export(path, &lattice_to_json(&p.rs, &p.lattice))?,
    }
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(0)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportWhat {
    Complex,
    Lattice,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_examples() {
        let (code, out) = run_captured(&["--no-cache", "compute", "f-triangle", "A1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "f-triangle(A1) = 1 + x + y");

        let (code, out) = run_captured(&["--no-cache", "compute", "narayana", "A2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "narayana(A2) = 1, 3, 1");

        let (code, out) = run_captured(&["--no-cache", "compute", "facets", "A3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "facets(A3) = 14");
    }

    #[test]
    fn compute_json_and_csv() {
        let (code, out) =
            run_captured(&["--no-cache", "compute", "m-triangle", "A1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["type"], "A1");
        let (code, out) =
            run_captured(&["--no-cache", "compute", "narayana", "B2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1,4,1");
    }

    #[test]
    fn bad_spec_exits_2() {
        let (code, _) = run_captured(&["--no-cache", "compute", "facets", "Q9"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn verify_fm_small() {
        let (code, out) = run_captured(&["--no-cache", "verify", "fm", "A2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("RESULT A2 PASS"));
        assert!(out.contains("residual=0"));
    }

    #[test]
    fn verify_requires_spec_for_fm() {
        let (code, _) = run_captured(&["--no-cache", "verify", "fm"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn large_gate() {
        let (code, out) = run_captured(&["--no-cache", "compute", "facets", "H4"]);
        assert_eq!(code, 2, "{out}");
        let (code, _) = run_captured(&["--no-cache", "compute", "facets", "E8"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn battery_contents() {
        let base = default_battery(false);
        assert!(base.iter().any(|s| s.name() == "E6"));
        assert!(!base.iter().any(|s| s.name() == "E7"));
        let large = default_battery(true);
        assert!(large.iter().any(|s| s.name() == "E7"));
        assert!(large.iter().any(|s| s.name() == "H4"));
        assert_eq!(base.len(), 27);
    }
}
