//! Command-line front end.
//!
//! Subcommands expose the operator-model checks (`rep check`), the
//! per-degree spanning dimensions (`basis dim`), the singular families
//! (`singular list`), the branching tables (`branch table`), and the exact
//! dimension identities (`identity <name>`, `sweep <name>`).
//!
//! Output goes to stdout as JSON Lines, CSV, or plain text; diagnostics go
//! to stderr. Exit codes: `0` when every check passes, `1` on a failed
//! check or invalid input, `2` when a size guard refuses the computation.
//! Setting `OSCREP_GUARD_OVERRIDE=1` lifts the guards. Runs are
//! deterministic: the same arguments and seed produce byte-identical
//! stdout.
//!
//! # Examples
//!
//! ```
//! use oscrep::cli::run_to;
//!
//! let mut out = String::new();
//! let code = run_to(
//!     ["oscrep", "identity", "steinberg-odd", "--n", "3", "--k", "5"],
//!     &mut out,
//! );
//! assert_eq!(code, 0);
//! assert!(out.contains("\"pass\":true"));
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use crate::exact::{HalfInt, Int, Rat};
use crate::identities::{self, IdentityReport};
use crate::liealg::{bracket, canonical_elems, weyl_dim, Weight};
use crate::modbasis::{graded_dims_formula, spanning_cut_basis, SpanReducer};
use crate::oscrep::{DiffOp, RepContext};
use crate::singular::{enumerate_basis_specs, to_pattern, verify_singular};
use crate::{Error, Guards, Parity, Result};

/// Argument grammar. The shared flags are global, so they may be written
/// before or after the subcommand words.
#[derive(Parser, Debug)]
#[command(
    name = "oscrep",
    about = "Exact differential-operator models of the orthogonal pairs: \
             bracket checks, module bases, singular vectors, branching \
             tables, and dimension identities.",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Tower index `n` (the model uses variable rows `0..=n`).
    #[arg(long, global = true)]
    n: Option<u32>,

    /// Family selector: `odd` or `even`.
    #[arg(long, global = true)]
    parity: Option<String>,

    /// Weight as comma-separated exact entries, e.g. `0,1` or `1/2,3/2`.
    #[arg(long, global = true)]
    lambda: Option<String>,

    /// Number of extra seeded dominant weights to run.
    #[arg(long, global = true)]
    random_weights: Option<usize>,

    /// Seed for every pseudo-random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format: `json` (JSON Lines), `csv`, or `text`.
    #[arg(long, global = true, default_value = "json")]
    output: String,

    /// Worker-pool size for the parallel sections.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Scaling parameter for the power identities.
    #[arg(long, global = true)]
    k: Option<u32>,

    /// Degree argument for graded commands and filters.
    #[arg(long, global = true)]
    r: Option<u64>,

    /// Largest tower index in a sweep.
    #[arg(long, global = true)]
    n_max: Option<u32>,

    /// Largest scaling parameter in a sweep.
    #[arg(long, global = true)]
    k_max: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Checks the operator model itself.
    Rep {
        #[command(subcommand)]
        sub: RepCmd,
    },
    /// Spanning families of the irreducible modules.
    Basis {
        #[command(subcommand)]
        sub: BasisCmd,
    },
    /// Singular vectors for the subalgebra one step down the tower.
    Singular {
        #[command(subcommand)]
        sub: SingularCmd,
    },
    /// Branching data for the subalgebra one step down the tower.
    Branch {
        #[command(subcommand)]
        sub: BranchCmd,
    },
    /// Evaluates one named identity cell exactly.
    Identity { name: String },
    /// Runs a named identity over a parameter grid.
    Sweep { name: String },
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Verifies every canonical bracket relation and the highest-vector
    /// conditions for the requested weights.
    Check,
}

#[derive(Subcommand, Debug)]
enum BasisCmd {
    /// Prints per-degree counts and exact dimensions of the spanning set.
    Dim,
}

#[derive(Subcommand, Debug)]
enum SingularCmd {
    /// Enumerates the singular family and verifies each vector.
    List,
}

#[derive(Subcommand, Debug)]
enum BranchCmd {
    /// Prints the (kappa, nu) table and the dimension-sum check.
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutputKind {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputKind::Json),
            "csv" => Ok(OutputKind::Csv),
            "text" => Ok(OutputKind::Text),
            other => Err(Error::InvalidArgument(format!(
                "output must be `json`, `csv`, or `text`, got `{other}`"
            ))),
        }
    }
}

/// Process entry point: parses the real argument list, writes stdout, and
/// returns the exit code.
pub fn run() -> i32 {
    let mut out = String::new();
    let code = run_to(std::env::args_os(), &mut out);
    {
        use std::io::Write as _;
        let mut stdout = std::io::stdout();
        let _ = stdout.write_all(out.as_bytes());
        let _ = stdout.flush();
    }
    code
}

/// Testable entry point: parses `args` (the first item is the program
/// name) and appends every stdout line to `out`.
pub fn run_to<I, T>(args: I, out: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprintln!("{e}");
                    1
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e @ Error::GuardExceeded { .. }) => {
            eprintln!("{e}");
            2
        }
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<bool> {
    if let Some(workers) = cli.workers {
        // The pool can be initialized only once per process; later calls
        // keep the existing pool, which never changes any output.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let kind: OutputKind = cli.output.parse()?;
    match &cli.command {
        Cmd::Rep { sub: RepCmd::Check } => rep_check(cli, kind, out),
        Cmd::Basis { sub: BasisCmd::Dim } => basis_dim(cli, kind, out),
        Cmd::Singular {
            sub: SingularCmd::List,
        } => singular_list(cli, kind, out),
        Cmd::Branch {
            sub: BranchCmd::Table,
        } => branch_table(cli, kind, out),
        Cmd::Identity { name } => {
            let report = identity_cell(cli, name)?;
            Ok(emit_reports(kind, std::slice::from_ref(&report), out))
        }
        Cmd::Sweep { name } => {
            let reports = sweep_cells(cli, name)?;
            Ok(emit_reports(kind, &reports, out))
        }
    }
}

fn guards_from_env() -> Guards {
    let lifted = std::env::var("OSCREP_GUARD_OVERRIDE")
        .map(|v| v == "1")
        .unwrap_or(false);
    if lifted {
        Guards::unlimited()
    } else {
        Guards::default()
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidArgument(format!("missing required flag --{flag}")))
}

fn parse_parity(cli: &Cli) -> Result<Parity> {
    need(cli.parity.as_deref(), "parity")?.parse()
}

fn parse_lambda(cli: &Cli) -> Result<Weight> {
    need(cli.lambda.as_deref(), "lambda")?.parse()
}

fn expect_rank(w: &Weight, n: u32) -> Result<()> {
    if w.rank() != n as usize + 1 {
        return Err(Error::InvalidArgument(format!(
            "lambda has {} entries but n = {n} needs {}",
            w.rank(),
            n + 1
        )));
    }
    Ok(())
}

fn join_halfints(v: &[HalfInt]) -> String {
    let parts: Vec<String> = v.iter().map(|h| h.to_string()).collect();
    parts.join(",")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `rep check`: every canonical pair gets its own bracket-check row, then
/// each weight gets a highest-vector row and a summary row.
fn rep_check(cli: &Cli, kind: OutputKind, out: &mut String) -> Result<bool> {
    let n = need(cli.n, "n")?;
    guards_from_env().check_n(n)?;
    let parity = parse_parity(cli)?;
    let rank = n as usize + 1;

    let mut weights: Vec<Weight> = Vec::new();
    if let Some(l) = cli.lambda.as_deref() {
        weights.push(l.parse()?);
    }
    if let Some(count) = cli.random_weights {
        weights.extend(identities::random_dominant_weights(
            parity, n + 1, count, cli.seed, 4,
        )?);
    }
    if weights.is_empty() {
        weights.push(Weight::new(vec![HalfInt::from_twice(Int::from(0)); rank]));
    }

    if kind == OutputKind::Csv {
        let _ = writeln!(out, "check,lambda,detail,pass,note");
    }

    let elems = canonical_elems(n, parity);
    let pairs: Vec<_> = elems
        .iter()
        .flat_map(|&x| elems.iter().map(move |&y| (x, y)))
        .collect();

    let mut all = true;
    for w in &weights {
        expect_rank(w, n)?;
        let lam = w.to_string();
        let mu: Vec<Rat> = w.coords().iter().map(HalfInt::to_rat).collect();
        let ctx = RepContext::new(n, parity, mu);

        let results: Vec<(String, bool)> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let lhs = ctx.op_ref(x).commutator(ctx.op_ref(y));
                let mut rhs = DiffOp::zero();
                for (e, c) in bracket(x, y, n, parity) {
                    rhs = rhs.add(&ctx.op_ref(e).scale(&Rat::from_integer(c.into())));
                }
                (format!("[{x},{y}]"), lhs == rhs)
            })
            .collect();

        let mut weight_pass = true;
        for (pair, ok) in &results {
            weight_pass &= ok;
            match kind {
                OutputKind::Json => {
                    let row = json!({
                        "check": "bracket",
                        "lambda": lam,
                        "n": n,
                        "parity": parity.to_string(),
                        "pair": pair,
                        "pass": ok,
                    });
                    let _ = writeln!(out, "{row}");
                }
                OutputKind::Csv => {
                    let _ = writeln!(
                        out,
                        "bracket,{},{},{},",
                        csv_field(&lam),
                        csv_field(pair),
                        ok
                    );
                }
                OutputKind::Text => {
                    let _ = writeln!(out, "bracket {pair} lambda={lam}: {}", pass_word(*ok));
                }
            }
        }

        let highest = ctx.verify_highest_vector();
        let hv_pass = highest.is_ok();
        weight_pass &= hv_pass;
        let note = highest.err();
        match kind {
            OutputKind::Json => {
                let row = json!({
                    "check": "highest-vector",
                    "lambda": lam,
                    "n": n,
                    "parity": parity.to_string(),
                    "pass": hv_pass,
                    "note": note,
                });
                let _ = writeln!(out, "{row}");
            }
            OutputKind::Csv => {
                let _ = writeln!(
                    out,
                    "highest-vector,{},,{},{}",
                    csv_field(&lam),
                    hv_pass,
                    csv_field(note.as_deref().unwrap_or(""))
                );
            }
            OutputKind::Text => {
                let _ = writeln!(out, "highest-vector lambda={lam}: {}", pass_word(hv_pass));
            }
        }

        match kind {
            OutputKind::Json => {
                let row = json!({
                    "check": "summary",
                    "lambda": lam,
                    "pairs": results.len(),
                    "pass": weight_pass,
                });
                let _ = writeln!(out, "{row}");
            }
            OutputKind::Csv => {
                let _ = writeln!(
                    out,
                    "summary,{},{},{},",
                    csv_field(&lam),
                    results.len(),
                    weight_pass
                );
            }
            OutputKind::Text => {
                let _ = writeln!(
                    out,
                    "summary lambda={lam}: {} pairs, {}",
                    results.len(),
                    pass_word(weight_pass)
                );
            }
        }
        all &= weight_pass;
    }
    Ok(all)
}

/// `basis dim`: one row per degree with the spanning-word count, the exact
/// span dimension, and the closed-form dimension, plus a total row.
fn basis_dim(cli: &Cli, kind: OutputKind, out: &mut String) -> Result<bool> {
    let n = need(cli.n, "n")?;
    let guards = guards_from_env();
    guards.check_n(n)?;
    let parity = parse_parity(cli)?;
    let w = parse_lambda(cli)?;
    expect_rank(&w, n)?;
    let ctx = RepContext::for_weight(n, parity, &w)?;

    let cut = spanning_cut_basis(&ctx, &guards)?;
    let formula = graded_dims_formula(parity, &w)?;

    // The module splits over the top-row degree, so the homogeneous
    // components of the cut spanning set span the graded pieces.
    let mut per: BTreeMap<u32, (usize, SpanReducer)> = BTreeMap::new();
    let mut max_d = formula.len().saturating_sub(1) as u32;
    for p in &cut {
        for d in 0..=p.row_degree(n) {
            let comp = p.row_component(n, d);
            if comp.is_zero() {
                continue;
            }
            max_d = max_d.max(d);
            let entry = per.entry(d).or_insert_with(|| (0, SpanReducer::new()));
            entry.0 += 1;
            entry.1.insert(&comp);
        }
    }

    if kind == OutputKind::Csv {
        let _ = writeln!(out, "lambda,parity,n,r,count,span_dim,formula_dim,pass");
    }
    let lam = w.to_string();
    let mut all = true;
    let mut total_count = 0usize;
    let mut total_span = 0usize;
    for r in 0..=max_d {
        let (count, span) = per
            .get(&r)
            .map_or((0usize, 0usize), |(c, red)| (*c, red.dim()));
        let fdim = formula.get(r as usize).cloned().unwrap_or_else(|| Int::from(0));
        let row_pass = Int::from(span as u64) == fdim;
        all &= row_pass;
        total_count += count;
        total_span += span;
        match kind {
            OutputKind::Json => {
                let row = json!({
                    "lambda": lam,
                    "parity": parity.to_string(),
                    "n": n,
                    "r": r,
                    "count": count,
                    "span_dim": span,
                    "formula_dim": fdim.to_string(),
                    "pass": row_pass,
                });
                let _ = writeln!(out, "{row}");
            }
            OutputKind::Csv => {
                let _ = writeln!(
                    out,
                    "{},{parity},{n},{r},{count},{span},{fdim},{row_pass}",
                    csv_field(&lam)
                );
            }
            OutputKind::Text => {
                let _ = writeln!(
                    out,
                    "r={r}: count={count} span_dim={span} formula_dim={fdim} {}",
                    pass_word(row_pass)
                );
            }
        }
    }

    let total = weyl_dim(parity, &w)?;
    all &= Int::from(total_span as u64) == total;
    match kind {
        OutputKind::Json => {
            let row = json!({
                "lambda": lam,
                "parity": parity.to_string(),
                "n": n,
                "r": "total",
                "count": total_count,
                "span_dim": total_span,
                "formula_dim": total.to_string(),
                "pass": all,
            });
            let _ = writeln!(out, "{row}");
        }
        OutputKind::Csv => {
            let _ = writeln!(
                out,
                "{},{parity},{n},total,{total_count},{total_span},{total},{all}",
                csv_field(&lam)
            );
        }
        OutputKind::Text => {
            let _ = writeln!(
                out,
                "total: count={total_count} span_dim={total_span} formula_dim={total} {}",
                pass_word(all)
            );
        }
    }
    Ok(all)
}

/// `singular list`: the deduplicated singular family, one verified row per
/// vector, optionally filtered to one degree via `--r`.
fn singular_list(cli: &Cli, kind: OutputKind, out: &mut String) -> Result<bool> {
    let n = need(cli.n, "n")?;
    guards_from_env().check_n(n)?;
    let parity = parse_parity(cli)?;
    let w = parse_lambda(cli)?;
    expect_rank(&w, n)?;
    let ctx = RepContext::for_weight(n, parity, &w)?;
    let specs = enumerate_basis_specs(parity, &w, cli.r)?;

    if kind == OutputKind::Csv {
        let _ = writeln!(out, "gamma,leading_monomial,weight,kappa,nu,degree,verified");
    }
    let mut all = true;
    for spec in &specs {
        let pattern = to_pattern(spec, &w)?;
        let verified = verify_singular(&ctx, spec)?;
        all &= verified;
        let gamma_text = format!(
            "zero={};pos={:?};neg={:?};primed={:?}",
            spec.gamma0, spec.gamma, spec.gamma_neg, spec.gamma_pr
        );
        let monomial = spec.leading_monomial().to_string();
        let weight = spec.weight(&w).to_string();
        let kappa = join_halfints(&pattern.kappa);
        let nu = join_halfints(&pattern.nu);
        let degree = spec.degree();
        match kind {
            OutputKind::Json => {
                let row = json!({
                    "gamma": {
                        "zero": spec.gamma0,
                        "pos": spec.gamma.clone(),
                        "neg": spec.gamma_neg.clone(),
                        "primed": spec.gamma_pr.clone(),
                    },
                    "leading_monomial": monomial,
                    "weight": weight,
                    "kappa": kappa,
                    "nu": nu,
                    "degree": degree,
                    "verified": verified,
                });
                let _ = writeln!(out, "{row}");
            }
            OutputKind::Csv => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{degree},{verified}",
                    csv_field(&gamma_text),
                    csv_field(&monomial),
                    csv_field(&weight),
                    csv_field(&kappa),
                    csv_field(&nu)
                );
            }
            OutputKind::Text => {
                let _ = writeln!(
                    out,
                    "degree={degree} gamma=({gamma_text}) leading={monomial} weight={weight} \
                     kappa={kappa} nu={nu} verified={verified}"
                );
            }
        }
    }
    Ok(all)
}

/// `branch table`: one row per singular vector with its (kappa, nu) pair
/// and the subalgebra dimension, plus the dimension-sum check. With `--r`
/// the sum is compared against the graded dimension of that degree.
fn branch_table(cli: &Cli, kind: OutputKind, out: &mut String) -> Result<bool> {
    let n = need(cli.n, "n")?;
    guards_from_env().check_n(n)?;
    let parity = parse_parity(cli)?;
    let w = parse_lambda(cli)?;
    expect_rank(&w, n)?;
    let specs = enumerate_basis_specs(parity, &w, cli.r)?;

    let expected = match cli.r {
        None => weyl_dim(parity, &w)?,
        Some(r) => graded_dims_formula(parity, &w)?
            .get(r as usize)
            .cloned()
            .unwrap_or_else(|| Int::from(0)),
    };

    if kind == OutputKind::Csv {
        let _ = writeln!(out, "row,kappa,nu,degree,dim,pass");
    }
    let mut sum = Int::from(0);
    let rows = specs.len();
    for spec in &specs {
        let pattern = to_pattern(spec, &w)?;
        let sub = Weight::new(pattern.nu.clone());
        let dim = weyl_dim(parity, &sub)?;
        let kappa = join_halfints(&pattern.kappa);
        let nu = join_halfints(&pattern.nu);
        let degree = spec.degree();
        match kind {
            OutputKind::Json => {
                let row = json!({
                    "kappa": kappa,
                    "nu": nu,
                    "degree": degree,
                    "sub_dim": dim.to_string(),
                });
                let _ = writeln!(out, "{row}");
            }
            OutputKind::Csv => {
                let _ = writeln!(
                    out,
                    "entry,{},{},{degree},{dim},",
                    csv_field(&kappa),
                    csv_field(&nu)
                );
            }
            OutputKind::Text => {
                let _ = writeln!(out, "kappa={kappa} nu={nu} degree={degree} sub_dim={dim}");
            }
        }
        sum += dim;
    }

    let pass = sum == expected;
    match kind {
        OutputKind::Json => {
            let row = json!({
                "rows": rows,
                "sum": sum.to_string(),
                "expected": expected.to_string(),
                "pass": pass,
            });
            let _ = writeln!(out, "{row}");
        }
        OutputKind::Csv => {
            let _ = writeln!(out, "summary,,,,{sum},{pass}");
        }
        OutputKind::Text => {
            let _ = writeln!(
                out,
                "summary: rows={rows} sum={sum} expected={expected} {}",
                pass_word(pass)
            );
        }
    }
    Ok(pass)
}

fn identity_cell(cli: &Cli, name: &str) -> Result<IdentityReport> {
    match name {
        "steinberg-odd" => Ok(identities::steinberg_odd(
            need(cli.n, "n")?,
            need(cli.k, "k")?,
        )),
        "steinberg-even" => Ok(identities::steinberg_even(
            need(cli.n, "n")?,
            need(cli.k, "k")?,
        )),
        "steinberg-dims" => identities::steinberg_dims(
            need(cli.n, "n")?,
            need(cli.k, "k")?,
            parse_parity(cli)?,
        ),
        "macdonald-odd" | "macdonald-even" => {
            let w = parse_lambda(cli)?;
            let n = w.rank() as u32 - 1;
            if let Some(given) = cli.n {
                if given != n {
                    return Err(Error::InvalidArgument(format!(
                        "--n {given} conflicts with a rank-{} lambda (expected --n {n})",
                        w.rank()
                    )));
                }
            }
            if name == "macdonald-odd" {
                identities::macdonald_odd(n, &w)
            } else {
                identities::macdonald_even(n, &w)
            }
        }
        "decomposition-odd" | "decomposition-even" => {
            let w = parse_lambda(cli)?;
            let parity = if name.ends_with("odd") {
                Parity::Odd
            } else {
                Parity::Even
            };
            let n = cli.n.unwrap_or(w.rank() as u32);
            identities::decomposition_identity(n, &w, need(cli.r, "r")?, parity)
        }
        "graded-sum" => identities::graded_consistency(parse_parity(cli)?, &parse_lambda(cli)?),
        other => Err(Error::InvalidArgument(format!(
            "unknown identity `{other}`; valid names: macdonald-odd, macdonald-even, \
             steinberg-odd, steinberg-even, steinberg-dims, decomposition-odd, \
             decomposition-even, graded-sum"
        ))),
    }
}

fn sweep_cells(cli: &Cli, name: &str) -> Result<Vec<IdentityReport>> {
    match name {
        "steinberg-odd" => Ok(identities::sweep_steinberg(
            Parity::Odd,
            cli.n_max.unwrap_or(6),
            cli.k_max.unwrap_or(10),
        )),
        "steinberg-even" => Ok(identities::sweep_steinberg(
            Parity::Even,
            cli.n_max.unwrap_or(6),
            cli.k_max.unwrap_or(10),
        )),
        "macdonald-odd" => identities::sweep_macdonald(
            Parity::Odd,
            need(cli.n, "n")?,
            cli.random_weights.unwrap_or(20),
            cli.seed,
        ),
        "macdonald-even" => identities::sweep_macdonald(
            Parity::Even,
            need(cli.n, "n")?,
            cli.random_weights.unwrap_or(20),
            cli.seed,
        ),
        other => Err(Error::InvalidArgument(format!(
            "unknown sweep `{other}`; valid names: steinberg-odd, steinberg-even, \
             macdonald-odd, macdonald-even"
        ))),
    }
}

/// Serializes identity reports in the requested format and returns whether
/// every cell passed.
fn emit_reports(kind: OutputKind, reports: &[IdentityReport], out: &mut String) -> bool {
    if kind == OutputKind::Csv {
        let _ = writeln!(out, "id,params,lhs,rhs,pass,note");
    }
    let mut all = true;
    for r in reports {
        all &= r.pass;
        match kind {
            OutputKind::Json => {
                let row = json!({
                    "id": r.id,
                    "params": r.params,
                    "lhs": r.lhs.to_string(),
                    "rhs": r.rhs.to_string(),
                    "pass": r.pass,
                    "note": r.note.as_deref(),
                });
                let _ = writeln!(out, "{row}");
            }
            OutputKind::Csv => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    csv_field(&r.id),
                    csv_field(&r.params),
                    r.lhs,
                    r.rhs,
                    r.pass,
                    csv_field(r.note.as_deref().unwrap_or(""))
                );
            }
            OutputKind::Text => {
                let note = r
                    .note
                    .as_deref()
                    .map(|s| format!(" ({s})"))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{} {}: lhs={} rhs={} {}{note}",
                    r.id,
                    r.params,
                    r.lhs,
                    r.rhs,
                    pass_word(r.pass)
                );
            }
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = String::new();
        let full: Vec<&str> = std::iter::once("oscrep").chain(args.iter().copied()).collect();
        let code = run_to(full, &mut out);
        (code, out)
    }

    fn json_lines(out: &str) -> Vec<serde_json::Value> {
        out.lines()
            .map(|l| serde_json::from_str(l).expect("valid JSON line"))
            .collect()
    }

    #[test]
    fn rep_check_passes_for_a_rank_one_weight() {
        let (code, out) = run_args(&["rep", "check", "--n", "0", "--parity", "odd", "--lambda", "2"]);
        assert_eq!(code, 0, "output was:\n{out}");
        let rows = json_lines(&out);
        assert!(rows.iter().any(|r| r["check"] == "highest-vector" && r["pass"] == true));
        let summary = rows.last().unwrap();
        assert_eq!(summary["check"], "summary");
        assert_eq!(summary["pass"], true);
    }

    #[test]
    fn rep_check_passes_for_a_half_integral_rank_two_weight() {
        let (code, out) = run_args(&[
            "rep", "check", "--n", "1", "--parity", "odd", "--lambda", "1/2,3/2",
        ]);
        assert_eq!(code, 0, "output was:\n{out}");
    }

    #[test]
    fn rep_check_guard_exit_code_is_two() {
        let (code, _) = run_args(&["rep", "check", "--n", "9"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn rep_check_random_weights_are_reproducible() {
        let args = [
            "rep", "check", "--n", "0", "--parity", "odd", "--random-weights", "2", "--seed", "7",
        ];
        let (code1, out1) = run_args(&args);
        let (code2, out2) = run_args(&args);
        assert_eq!(code1, 0);
        assert_eq!(code2, 0);
        assert_eq!(out1, out2);
        assert!(!out1.is_empty());
    }

    #[test]
    fn identity_cell_prints_one_json_report() {
        let (code, out) = run_args(&["identity", "steinberg-odd", "--n", "3", "--k", "5"]);
        assert_eq!(code, 0, "output was:\n{out}");
        let rows = json_lines(&out);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["id"], "steinberg-odd");
        assert_eq!(rows[0]["pass"], true);
        assert_eq!(rows[0]["lhs"], rows[0]["rhs"]);
    }

    #[test]
    fn identity_requires_its_flags() {
        let (code, _) = run_args(&["identity", "macdonald-odd"]);
        assert_eq!(code, 1);
        let (code, _) = run_args(&["identity", "no-such-identity"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn identity_decomposition_cell_passes() {
        let (code, out) = run_args(&[
            "identity",
            "decomposition-odd",
            "--lambda",
            "1/2",
            "--r",
            "2",
        ]);
        assert_eq!(code, 0, "output was:\n{out}");
        let rows = json_lines(&out);
        assert_eq!(rows[0]["pass"], true);
    }

    #[test]
    fn sweep_emits_csv_with_header() {
        let (code, out) = run_args(&[
            "sweep",
            "steinberg-odd",
            "--n-max",
            "2",
            "--k-max",
            "2",
            "--output",
            "csv",
        ]);
        assert_eq!(code, 0, "output was:\n{out}");
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("id,params,lhs,rhs,pass,note"));
        // Grid is n in 1..=2 crossed with k in 0..=2.
        assert_eq!(lines.count(), 6);
        assert!(!out.contains(",false,"));
    }

    #[test]
    fn sweep_macdonald_runs_seeded_cells() {
        let args = [
            "sweep",
            "macdonald-odd",
            "--n",
            "1",
            "--random-weights",
            "3",
            "--seed",
            "5",
        ];
        let (code, out1) = run_args(&args);
        assert_eq!(code, 0, "output was:\n{out1}");
        assert_eq!(json_lines(&out1).len(), 3);
        let (_, out2) = run_args(&args);
        assert_eq!(out1, out2);
    }

    #[test]
    fn basis_dim_reports_the_product_formula_total() {
        let (code, out) = run_args(&[
            "basis", "dim", "--n", "1", "--parity", "even", "--lambda", "1,2",
        ]);
        assert_eq!(code, 0, "output was:\n{out}");
        let rows = json_lines(&out);
        let total = rows.last().unwrap();
        assert_eq!(total["r"], "total");
        assert_eq!(total["span_dim"], 8);
        assert_eq!(total["formula_dim"], "8");
        assert_eq!(total["pass"], true);
        // Every graded row matches the closed form as well.
        for row in &rows[..rows.len() - 1] {
            assert_eq!(row["pass"], true);
        }
    }

    #[test]
    fn singular_list_rows_are_verified() {
        let (code, out) = run_args(&[
            "singular", "list", "--n", "1", "--parity", "odd", "--lambda", "0,1",
        ]);
        assert_eq!(code, 0, "output was:\n{out}");
        let rows = json_lines(&out);
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert_eq!(row["verified"], true);
            assert!(row["leading_monomial"].is_string());
        }
    }

    #[test]
    fn branch_table_sums_to_the_ambient_dimension() {
        let (code, out) = run_args(&[
            "branch", "table", "--n", "1", "--parity", "odd", "--lambda", "0,1",
        ]);
        assert_eq!(code, 0, "output was:\n{out}");
        let rows = json_lines(&out);
        assert_eq!(rows.len(), 4, "three entries plus a summary");
        let summary = rows.last().unwrap();
        assert_eq!(summary["rows"], 3);
        assert_eq!(summary["sum"], "5");
        assert_eq!(summary["expected"], "5");
        assert_eq!(summary["pass"], true);
    }

    #[test]
    fn branch_table_degree_filter_checks_the_graded_dimension() {
        let (code, out) = run_args(&[
            "branch", "table", "--n", "1", "--parity", "odd", "--lambda", "0,1", "--r", "1",
        ]);
        assert_eq!(code, 0, "output was:\n{out}");
        let summary = json_lines(&out).last().unwrap().clone();
        assert_eq!(summary["pass"], true);
    }

    #[test]
    fn text_output_prints_pass_lines() {
        let (code, out) = run_args(&[
            "identity", "steinberg-odd", "--n", "2", "--k", "3", "--output", "text",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS"), "output was:\n{out}");
    }

    #[test]
    fn invalid_flags_map_to_exit_one() {
        let (code, _) = run_args(&["rep", "check", "--parity", "odd"]);
        assert_eq!(code, 1, "missing --n");
        let (code, _) = run_args(&["basis", "dim", "--n", "1", "--parity", "odd", "--lambda", "1"]);
        assert_eq!(code, 1, "rank mismatch");
        let (code, _) = run_args(&["rep", "check", "--n", "0", "--parity", "sideways"]);
        assert_eq!(code, 1, "bad parity");
        let (code, _) = run_args(&["rep", "check", "--n", "0", "--parity", "odd", "--output", "xml"]);
        assert_eq!(code, 1, "bad output kind");
    }

    #[test]
    fn help_exits_zero() {
        let (code, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
    }
}
