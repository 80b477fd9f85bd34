use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use killtens::error::Error;
use killtens::geomlab::{run_battery, CheckOutcome, Space, DEFAULT_SEED, DEFAULT_TOL};
use killtens::repdim::{cpn_killing_dim, rank2_su_summands, sphere_killing_dim, TensorSpaceSpec};
use killtens::series::{g_numerator, h_numerator, verify_poincare};
use killtens::tensorlab::{
    generation_rank_with, oracle_cpn_space_with, rank2_branching_check, young_space_on,
    OracleBudget, BUDGET_ENV,
};

#[derive(Parser, Debug)]
#[command(
    name = "killtens",
    version,
    about = "Killing tensors on spheres and complex projective spaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled geometry checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SpaceKind {
    Sphere,
    Cpn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Cpn,
    Sphere,
    #[value(alias = "generation")]
    Generate,
    Branching,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the rank-k Killing tensors on S^n or CP_n.
    Dim {
        #[arg(value_enum)]
        space: SpaceKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Dimensions for a range of n and k.
    Table {
        #[arg(long, value_enum, default_value_t = SpaceKind::Cpn)]
        space: SpaceKind,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        /// Smallest rank listed; lowered to max-k when max-k is smaller.
        #[arg(long, default_value_t = 1)]
        min_k: usize,
    },
    /// Numerator of the Poincaré series over a power of (1-t).
    Series {
        #[arg(long, value_enum, default_value_t = SpaceKind::Cpn)]
        space: SpaceKind,
        #[arg(long)]
        n: usize,
        /// Compare the conjectured closed form with the dimensions.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
    /// Brute-force tensor computations, checked against the formulas.
    Oracle {
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Write the basis of the computed space to this file (sparse text).
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
    /// Numeric curvature and parallelism checks on a chart.
    Geom {
        #[arg(long, value_enum)]
        space: SpaceKind,
        /// Sphere dimension m, or n for CP_n.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

/// Rendered output plus whether every check in it passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Serialize)]
struct DimRow {
    space: SpaceKind,
    n: usize,
    k: usize,
    dim: String,
}

fn dimension(space: SpaceKind, n: usize, k: usize) -> Result<String> {
    let spec = TensorSpaceSpec::new(n, k)?;
    Ok(match space {
        SpaceKind::Cpn => cpn_killing_dim(spec)?,
        SpaceKind::Sphere => sphere_killing_dim(spec)?,
    }
    .to_string())
}

fn cmd_dim(format: Format, space: SpaceKind, n: usize, k: usize) -> Result<Output> {
    let row = DimRow {
        space,
        n,
        k,
        dim: dimension(space, n, k)?,
    };
    Ok(Output::ok(match format {
        Format::Text => format!("{}\n", row.dim),
        Format::Json => json(&row)?,
        Format::Csv => csv_rows(&[row])?,
    }))
}

fn cmd_table(
    format: Format,
    space: SpaceKind,
    max_n: usize,
    max_k: usize,
    min_k: usize,
) -> Result<Output> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for k in min_k.min(max_k)..=max_k {
            rows.push(DimRow {
                space,
                n,
                k,
                dim: dimension(space, n, k)?,
            });
        }
    }
    Ok(Output::ok(match format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Plain<'a> {
                n: usize,
                k: usize,
                dim: &'a str,
            }
            let plain: Vec<Plain> = rows
                .iter()
                .map(|r| Plain {
                    n: r.n,
                    k: r.k,
                    dim: &r.dim,
                })
                .collect();
            csv_rows(&plain)?
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.dim.len()).max().unwrap_or(3).max(3);
            let mut s = format!("{:>3} {:>3} {:>width$}\n", "n", "k", "dim");
            for r in &rows {
                s += &format!("{:>3} {:>3} {:>width$}\n", r.n, r.k, r.dim);
            }
            s
        }
    }))
}

#[derive(Serialize)]
struct SeriesCheck {
    terms: usize,
    first_mismatch: Option<usize>,
    verified: bool,
}

#[derive(Serialize)]
struct SeriesOut {
    space: SpaceKind,
    n: usize,
    numerator: String,
    coefficients: Vec<String>,
    denominator_exponent: usize,
    palindromic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<SeriesCheck>,
}

#[derive(Serialize)]
struct CoeffRow<'a> {
    degree: usize,
    coefficient: &'a str,
}

fn cmd_series(
    format: Format,
    space: SpaceKind,
    n: usize,
    check: bool,
    terms: usize,
) -> Result<Output> {
    let (num, e) = match space {
        SpaceKind::Cpn => (h_numerator(n)?, 4 * n - 1),
        SpaceKind::Sphere => (g_numerator(n)?, 2 * n - 1),
    };
    let check = if check {
        if space != SpaceKind::Cpn {
            bail!("--check compares the conjectured CP_n series; it has no sphere counterpart");
        }
        let r = verify_poincare(n, terms)?;
        Some(SeriesCheck {
            terms,
            first_mismatch: r.first_mismatch,
            verified: r.success(),
        })
    } else {
        None
    };
    let out = SeriesOut {
        space,
        n,
        numerator: num.display_in("t"),
        coefficients: num.coeffs().iter().map(|c| c.to_string()).collect(),
        denominator_exponent: e,
        palindromic: num.is_palindromic(),
        check,
    };
    let ok = out.check.as_ref().map_or(true, |c| c.verified);
    let text = match format {
        Format::Json => json(&out)?,
        Format::Csv => {
            let rows: Vec<CoeffRow> = out
                .coefficients
                .iter()
                .enumerate()
                .map(|(degree, c)| CoeffRow {
                    degree,
                    coefficient: c,
                })
                .collect();
            csv_rows(&rows)?
        }
        Format::Text => {
            let mut s = format!(
                "numerator: {}\ndenominator: (1-t)^{}\n",
                out.numerator, out.denominator_exponent
            );
            if let Some(c) = &out.check {
                match c.first_mismatch {
                    None => s += &format!("verified to {} terms\n", c.terms),
                    Some(i) => s += &format!("MISMATCH at t^{i} (checked {} terms)\n", c.terms),
                }
            }
            s
        }
    };
    Ok(Output { text, ok })
}

fn budget_context(e: Error) -> anyhow::Error {
    match e {
        Error::OracleTooLarge { .. } => {
            anyhow::anyhow!("{e} (raise the cap with the {BUDGET_ENV} environment variable)")
        }
        other => other.into(),
    }
}

#[derive(Serialize)]
struct OracleOut {
    kind: &'static str,
    n: usize,
    k: usize,
    dim: usize,
    closed_form: String,
    agree: bool,
}

fn cmd_oracle(
    format: Format,
    kind: OracleKind,
    n: usize,
    k: usize,
    dump: Option<&std::path::Path>,
) -> Result<Output> {
    let budget = OracleBudget::from_env();
    if dump.is_some() && matches!(kind, OracleKind::Generate | OracleKind::Branching) {
        bail!("--dump is available for --kind cpn and --kind sphere");
    }
    match kind {
        OracleKind::Cpn | OracleKind::Sphere => {
            let (space, closed, name) = if kind == OracleKind::Cpn {
                let s = oracle_cpn_space_with(n, k, &budget).map_err(budget_context)?;
                (s, dimension(SpaceKind::Cpn, n, k)?, "cpn")
            } else {
                if n == 0 {
                    bail!("n must be at least 1");
                }
                let s = young_space_on(n + 1, k, &budget).map_err(budget_context)?;
                (s, dimension(SpaceKind::Sphere, n, k)?, "sphere")
            };
            if let Some(path) = dump {
                std::fs::write(path, space.basis.to_sparse_text())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let out = OracleOut {
                kind: name,
                n,
                k,
                dim: space.dim(),
                agree: space.dim().to_string() == closed,
                closed_form: closed,
            };
            let text = match format {
                Format::Json => json(&out)?,
                Format::Csv => csv_rows(&[&out])?,
                Format::Text => format!(
                    "dim={} (closed form {}: {})\n",
                    out.dim,
                    out.closed_form,
                    if out.agree { "AGREE" } else { "DISAGREE" }
                ),
            };
            Ok(Output {
                text,
                ok: out.agree,
            })
        }
        OracleKind::Generate => {
            let r = generation_rank_with(n, k, &budget).map_err(budget_context)?;
            let text = match format {
                Format::Json => json(&r)?,
                Format::Csv => csv_rows(&[&r])?,
                Format::Text => {
                    let verdict = if r.surjective() {
                        "SURJECTIVE"
                    } else {
                        "NOT SURJECTIVE"
                    };
                    format!(
                        "source={} target={} rank={} {verdict} (kernel {})\n",
                        r.source_dim,
                        r.target_dim,
                        r.rank,
                        r.kernel_dim()
                    )
                }
            };
            Ok(Output {
                text,
                ok: r.surjective(),
            })
        }
        OracleKind::Branching => {
            if k != 2 {
                bail!("the branching check is for rank k = 2");
            }
            let (report, dims) = rank2_branching_check(n, &budget).map_err(budget_context)?;
            let mults: Vec<usize> = report.components.iter().map(|c| c.multiplicity).collect();
            let predicted: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            let ok = mults
                .iter()
                .map(|m| m.to_string())
                .eq(predicted.iter().cloned())
                && report.accounted == report.space_dim;
            let text = match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct B<'a> {
                        report: &'a killtens::tensorlab::CasimirReport,
                        predicted: &'a [String],
                        summands: Vec<killtens::repdim::SuSummand>,
                        agree: bool,
                    }
                    json(&B {
                        report: &report,
                        predicted: &predicted,
                        summands: rank2_su_summands(n)?,
                        agree: ok,
                    })?
                }
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Row {
                        labels: String,
                        eigenvalue: String,
                        multiplicity: usize,
                        predicted: String,
                    }
                    let rows: Vec<Row> = report
                        .components
                        .iter()
                        .zip(&predicted)
                        .map(|(c, p)| Row {
                            labels: format!("{:?}", c.labels).replace(", ", " "),
                            eigenvalue: c.eigenvalue.clone(),
                            multiplicity: c.multiplicity,
                            predicted: p.clone(),
                        })
                        .collect();
                    csv_rows(&rows)?
                }
                Format::Text => {
                    let mut s = String::new();
                    for (c, p) in report.components.iter().zip(&predicted) {
                        s += &format!(
                            "labels={:?} casimir={} multiplicity={} predicted={}\n",
                            c.labels, c.eigenvalue, c.multiplicity, p
                        );
                    }
                    s += &format!(
                        "space={} accounted={} {}\n",
                        report.space_dim,
                        report.accounted,
                        if ok { "AGREE" } else { "DISAGREE" }
                    );
                    s
                }
            };
            Ok(Output { text, ok })
        }
    }
}

fn cmd_geom(
    format: Format,
    space: SpaceKind,
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<Output> {
    let space = match space {
        SpaceKind::Sphere if (2..=5).contains(&n) => Space::Sphere { m: n },
        SpaceKind::Cpn if (1..=3).contains(&n) => Space::Cpn { n },
        SpaceKind::Sphere => bail!("unsupported sphere dimension {n} (supported: 2..=5)"),
        SpaceKind::Cpn => bail!("unsupported n = {n} for CP_n (supported: 1..=3)"),
    };
    if samples == 0 {
        bail!("--samples must be positive");
    }
    if !(tol > 0.0) {
        bail!("--tol must be positive");
    }
    let outcomes: Vec<CheckOutcome> = run_battery(space, samples, tol, seed)?;
    let ok = outcomes.iter().all(|o| o.passed);
    let text = match format {
        Format::Json => json(&outcomes)?,
        Format::Csv => csv_rows(&outcomes)?,
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                s += &format!(
                    "{}: {} (max deviation {:.3e}, tol {:e})\n",
                    o.name,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.max_deviation,
                    o.tol
                );
            }
            s
        }
    };
    Ok(Output { text, ok })
}

fn run(cli: Cli) -> Result<Output> {
    let f = cli.format;
    match cli.command {
        Command::Dim { space, n, k } => cmd_dim(f, space, n, k),
        Command::Table {
            space,
            max_n,
            max_k,
            min_k,
        } => cmd_table(f, space, max_n, max_k, min_k),
        Command::Series {
            space,
            n,
            check,
            terms,
        } => cmd_series(f, space, n, check, terms),
        Command::Oracle { kind, n, k, dump } => cmd_oracle(f, kind, n, k, dump.as_deref()),
        Command::Geom {
            space,
            n,
            samples,
            tol,
        } => cmd_geom(f, space, n, samples, tol, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
