use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use cleanqubit::barrington::{compile, parse_formula, Assignment, PermBP};
use cleanqubit::bounds::{self, BoundMode, BoundReport, TheoremParams};
use cleanqubit::encodings::{
    build_family, build_perm_rep_instance, check_bound_difference, overlap_stats,
    permutability_witness, verify_witness, FamilyKind, IndexPermutation, PermRepVariant,
};
use cleanqubit::fraction::parse_rational;
use cleanqubit::mixedsim::{self, bit_string};
use cleanqubit::partitions::{enumerate_partitions, Partition};

mod render;
mod selftest;

use render::{render, Format};

/// Width-5 branching programs on a one-clean-qubit register, and exact
/// checks of the symmetric-group bounds behind its limits.
#[derive(Parser, Debug, Serialize)]
#[command(name = "cleanqubit", version)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Compile a formula to a branching program (same as `barrington compile`).
    Compile(CompileArgs),
    #[command(subcommand)]
    Barrington(BarringtonCmd),
    #[command(subcommand)]
    Sim(SimCmd),
    #[command(subcommand)]
    Bounds(BoundsCmd),
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    #[command(subcommand)]
    Encodings(EncodingsCmd),
    /// Run a reduced invariant suite; exit 1 if any check fails.
    Selftest,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum BarringtonCmd {
    Compile(CompileArgs),
}

#[derive(Args, Debug, Serialize)]
struct CompileArgs {
    /// e.g. "((x1|x2)&!x3)"
    #[arg(long)]
    formula: String,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SimCmd {
    /// Run a compiled program on a fresh register and measure one qubit.
    Run {
        #[arg(long)]
        bp: PathBuf,
        #[arg(long)]
        assign: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// 1-based qubit to measure.
        #[arg(long, default_value_t = 1)]
        measure: usize,
    },
    /// Decide a formula with the accept-on-identity convention.
    Accept {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        assign: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Args, Debug, Serialize)]
struct ScanRange {
    #[arg(long = "M")]
    m: u32,
    /// Scan `M..=M-max` instead of a single `M`.
    #[arg(long = "M-max")]
    m_max: Option<u32>,
}

impl ScanRange {
    fn values(&self) -> anyhow::Result<std::ops::RangeInclusive<u32>> {
        let hi = self.m_max.unwrap_or(self.m);
        if hi < self.m {
            bail!("--M-max {hi} is below --M {}", self.m);
        }
        Ok(self.m..=hi)
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum BoundsCmd {
    /// Two-row lower bounds on dimensions by first-row length.
    Rasala(ScanRange),
    /// Where phi_A(M) stops being the smallest two-row dimension.
    Minimizer(ScanRange),
    /// Shapes without a long row or column have large dimension.
    LongRow {
        #[command(flatten)]
        range: ScanRange,
        /// Dimension budget, a nonnegative integer.
        #[arg(long)]
        budget: String,
    },
    /// Removing the last row or column loses at most a factor M/(M-2l).
    Shape(ScanRange),
    /// Largest number of simulatable qubits.
    Theorem {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, default_value = "general")]
        mode: String,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum PartitionsCmd {
    Dim(ShapeArg),
    Hooks(ShapeArg),
    Restrict(ShapeArg),
    Conjugate(ShapeArg),
    Enumerate {
        #[arg(long = "M")]
        m: u32,
    },
}

#[derive(Args, Debug, Serialize)]
struct ShapeArg {
    /// e.g. "[4,4,2,1]"
    #[arg(long)]
    shape: String,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum EncodingsCmd {
    /// Pairwise overlap statistics of a family.
    Report {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
    },
    /// Find and check a register permutation realising an index permutation.
    Witness {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// identity | swap:a,b | cycle:a,b,... | map:a>b,... | random
        #[arg(long, default_value = "random")]
        perm: String,
    },
    /// dim X - dim X∩Y against (2c lg N / M) N on permutation representations.
    BoundDifference {
        /// coordinate | complement; both if omitted.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value = "1")]
        c: String,
    },
}

/// A finished command: its report and whether it found a counterexample.
pub struct Outcome {
    pub report: Value,
    pub violation: bool,
}

impl Outcome {
    fn ok(report: impl Serialize) -> anyhow::Result<Self> {
        Ok(Outcome {
            report: serde_json::to_value(report)?,
            violation: false,
        })
    }

    fn checked(report: impl Serialize, holds: bool) -> anyhow::Result<Self> {
        Ok(Outcome {
            report: serde_json::to_value(report)?,
            violation: !holds,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            eprintln!("run `cleanqubit --help` for the command grammar");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let (text, violation) = match &cli.command {
        // The program file keeps the bare PermBP schema so `sim run` can read it.
        Command::Compile(a) | Command::Barrington(BarringtonCmd::Compile(a)) => {
            let bp = compile(&parse_formula(&a.formula)?);
            let v = serde_json::to_value(&bp)?;
            (render(&v, cli.format), false)
        }
        cmd => {
            let outcome = dispatch(cmd, cli.seed)?;
            let v = json!({
                "config": {
                    "command": cmd,
                    "format": cli.format,
                    "seed": cli.seed,
                },
                "report": outcome.report,
            });
            (render(&v, cli.format), outcome.violation)
        }
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(if violation {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn dispatch(cmd: &Command, seed: u64) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Compile(_) | Command::Barrington(_) => unreachable!("handled by run"),
        Command::Sim(c) => sim(c),
        Command::Bounds(c) => bounds_cmd(c),
        Command::Partitions(c) => partitions(c),
        Command::Encodings(c) => encodings(c, seed),
        Command::Selftest => {
            let report = selftest::run(seed);
            let holds = report.passed();
            Outcome::checked(report, holds)
        }
    }
}

fn read_bp(path: &PathBuf) -> anyhow::Result<PermBP> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut v: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    // Also accept a program wrapped in a report envelope.
    if let Some(inner) = v.get_mut("report") {
        v = inner.take();
    }
    let bp: PermBP = serde_json::from_value(v).context("not a branching program")?;
    bp.validate()?;
    Ok(bp)
}

fn sim(c: &SimCmd) -> anyhow::Result<Outcome> {
    match c {
        SimCmd::Run {
            bp,
            assign,
            n,
            k,
            measure,
        } => {
            let program = read_bp(bp)?;
            let x: Assignment = assign.parse()?;
            let state = mixedsim::run_bp(&program, &x, &mixedsim::init_register(*n, *k)?)?;
            let (p0, p1) = state.measure(*measure)?;
            Outcome::ok(json!({
                "length": program.len(),
                "num_vars": program.num_vars,
                "qubit": measure,
                "p0": p0,
                "p1": p1,
                "p0_decimal": p0.decimal(),
                "p1_decimal": p1.decimal(),
                "exact": format!("{p0},{p1}"),
            }))
        }
        SimCmd::Accept {
            formula,
            assign,
            n,
            k,
        } => {
            let f = parse_formula(formula)?;
            let x: Assignment = assign.parse()?;
            let out = mixedsim::accept(&f, &x, *n, *k)?;
            // Accepting with P(1) > 0 or rejecting with P(1) = 0 contradicts the construction.
            let consistent = out.accepted == out.formula_value;
            Outcome::checked(
                json!({
                    "formula": f.to_string(),
                    "depth": f.depth(),
                    "p0_decimal": out.p0.decimal(),
                    "p1_decimal": out.p1.decimal(),
                    "outcome": out,
                }),
                consistent,
            )
        }
    }
}

fn scan(
    range: &ScanRange,
    label: &str,
    f: impl Fn(u32) -> cleanqubit::Result<BoundReport>,
) -> anyhow::Result<Outcome> {
    let reports = range
        .values()?
        .map(f)
        .collect::<cleanqubit::Result<Vec<_>>>()?;
    let report = if reports.len() == 1 {
        reports.into_iter().next().expect("one report")
    } else {
        BoundReport::merge(label, reports)
    };
    let holds = report.holds();
    Outcome::checked(report, holds)
}

fn bounds_cmd(c: &BoundsCmd) -> anyhow::Result<Outcome> {
    match c {
        BoundsCmd::Rasala(r) => scan(r, "rasala", bounds::check_rasala),
        BoundsCmd::Minimizer(r) => scan(r, "phi-minimizer", bounds::scan_phi_minimizer),
        BoundsCmd::Shape(r) => scan(r, "shape-lemma", bounds::check_shape_lemma),
        BoundsCmd::LongRow { range, budget } => {
            let budget: BigUint = budget
                .trim()
                .parse()
                .with_context(|| format!("--budget {budget:?} is not a nonnegative integer"))?;
            scan(range, "long-row-or-column", |m| {
                bounds::check_long_row_or_column(m, &budget)
            })
        }
        BoundsCmd::Theorem {
            n,
            k,
            delta,
            c,
            mode,
        } => {
            let mode: BoundMode = mode.parse()?;
            let p = TheoremParams::new(*n, *k, parse_rational(delta)?, parse_rational(c)?)?;
            Outcome::ok(bounds::theorem_report(&p, mode)?)
        }
    }
}

fn shape(text: &str) -> anyhow::Result<Partition> {
    Ok(text.parse()?)
}

fn partitions(c: &PartitionsCmd) -> anyhow::Result<Outcome> {
    match c {
        PartitionsCmd::Dim(s) => {
            let lambda = shape(&s.shape)?;
            Outcome::ok(json!({
                "shape": lambda,
                "size": lambda.size(),
                "dimension": lambda.dimension()?.to_string(),
            }))
        }
        PartitionsCmd::Hooks(s) => {
            let lambda = shape(&s.shape)?;
            let hooks = lambda.hook_lengths();
            let rows: Vec<Vec<u32>> = (1..=lambda.len() as u32)
                .map(|r| {
                    (1..=lambda.part(r))
                        .map(|c| hooks[&cleanqubit::Cell::new(r, c)])
                        .collect()
                })
                .collect();
            Outcome::ok(json!({
                "shape": lambda,
                "hooks": rows,
                "hook_product": lambda.hook_product().to_string(),
            }))
        }
        PartitionsCmd::Restrict(s) => {
            let lambda = shape(&s.shape)?;
            let dim = lambda.dimension()?;
            let mut sum = BigUint::from(0u32);
            let mut parts = Vec::new();
            for cell in lambda.inside_corners() {
                let mu = lambda
                    .remove_cell(cell)
                    .expect("inside corners are removable");
                let d = mu.dimension()?;
                sum += &d;
                parts.push(json!({ "removed": cell, "shape": mu, "dimension": d.to_string() }));
            }
            let holds = sum == dim;
            Outcome::checked(
                json!({
                    "shape": lambda,
                    "dimension": dim.to_string(),
                    "restriction": parts,
                    "dimension_sum": sum.to_string(),
                    "branching_holds": holds,
                }),
                holds,
            )
        }
        PartitionsCmd::Conjugate(s) => {
            let lambda = shape(&s.shape)?;
            Outcome::ok(json!({ "shape": lambda, "conjugate": lambda.conjugate() }))
        }
        PartitionsCmd::Enumerate { m } => {
            if *m > bounds::SCAN_LIMIT {
                bail!("--M {m} above the enumeration limit {}", bounds::SCAN_LIMIT);
            }
            let list: Vec<Value> = enumerate_partitions(*m)
                .map(|p| Ok(json!({ "shape": p, "dimension": p.dimension()?.to_string() })))
                .collect::<cleanqubit::Result<_>>()?;
            Outcome::ok(json!({ "M": m, "count": list.len(), "partitions": list }))
        }
    }
}

/// Witness maps with more moved strings than this are summarised only.
const MAX_LISTED_MOVES: usize = 4096;

fn encodings(c: &EncodingsCmd, seed: u64) -> anyhow::Result<Outcome> {
    match c {
        EncodingsCmd::Report { kind, n } => {
            let f = build_family(*n, kind.parse::<FamilyKind>()?)?;
            Outcome::ok(overlap_stats(&f)?)
        }
        EncodingsCmd::Witness { kind, n, perm } => {
            let f = build_family(*n, kind.parse::<FamilyKind>()?)?;
            let pi = if perm.trim() == "random" {
                IndexPermutation::random(&mut ChaCha8Rng::seed_from_u64(seed), &f)
            } else {
                IndexPermutation::parse(perm, &f)?
            };
            let witness = permutability_witness(&f, &pi)?;
            let Some(g) = witness else {
                return Outcome::ok(
                    json!({ "family": f.kind(), "n": n, "perm": perm, "found": false }),
                );
            };
            let verified = verify_witness(&f, &pi, &g)?;
            let moves = (g.support_len() <= MAX_LISTED_MOVES).then(|| {
                g.moved()
                    .map(|(x, y)| format!("{}>{}", bit_string(x, *n), bit_string(y, *n)))
                    .collect::<Vec<_>>()
            });
            Outcome::checked(
                json!({
                    "family": f.kind(),
                    "n": n,
                    "perm": perm,
                    "found": true,
                    "verified": verified,
                    "moved_strings": g.support_len(),
                    "witness": moves,
                }),
                verified,
            )
        }
        EncodingsCmd::BoundDifference { variant, m, c } => {
            let c = parse_rational(c)?;
            let variants = match variant {
                Some(v) => vec![v.parse::<PermRepVariant>()?],
                None => vec![PermRepVariant::Coordinate, PermRepVariant::Complement],
            };
            let reports = variants
                .into_iter()
                .map(|v| check_bound_difference(&build_perm_rep_instance(*m, v)?, &c))
                .collect::<cleanqubit::Result<Vec<_>>>()?;
            let holds = reports.iter().all(|r| r.holds());
            Outcome::checked(reports, holds)
        }
    }
}
