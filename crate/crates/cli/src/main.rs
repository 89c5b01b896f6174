use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ttstar_core::fusion::{
    fusion_product, gram_matrix, multiplication_table, reduce_u, u_class, Basis, FusionElement, MatrixEntries,
    UClass,
};
use ttstar_core::potential::{build_gauge_ladder, gauge, permutation_block_split, SmythPotential};
use ttstar_core::rational::{to_pq, Rational};
use ttstar_core::rep::{
    asymptotic_data, equivalence_branch, project_to_fusion, rep_to_data, EquivalenceBranch, HolomorphicData,
    Representation,
};
use ttstar_core::solver::output::round12;
use ttstar_core::solver::{solve_system, write_csv, GridParams, SolveSummary, DEFAULT_TOL};
use ttstar_core::verify::{self, CheckResult, CHECKS};
use ttstar_core::Error;

mod aliases;

#[derive(Parser)]
#[command(name = "ttstar", version, about = "Fusion rings, Smyth potentials and radial tt* solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fusion ring R_k: tables, pairing, reduction, products
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// SU(2) representations and holomorphic data
    #[command(subcommand)]
    Rep(RepCmd),
    /// Smyth potentials: gauge equivalence, ladders, block split
    #[command(subcommand)]
    Potential(PotentialCmd),
    /// Solve the radial system for exponents l
    Solve(SolveArgs),
    /// Run the named consistency checks
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    U,
    Monomial,
    Point,
}

#[derive(Subcommand)]
enum FusionCmd {
    /// Multiplication table of the U-basis
    Table {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Gram matrix of the residue pairing (normalized frame unless --raw)
    Pairing {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "u")]
        basis: BasisArg,
        #[arg(long)]
        raw: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Class of U_n in R_k
    Reduce {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u64,
    },
    /// Product [U_a]·[U_b]
    Mult {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Image of ⊕ π_w in R_k
    Project {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u64>,
    },
    /// Exponents l, normalization n and asymptotic data m of ⊕ π_w
    Data {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Whether π_lhs and π_rhs give equivalent solutions
    Equiv {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lhs: u64,
        #[arg(long)]
        rhs: u64,
    },
}

#[derive(Subcommand)]
enum PotentialCmd {
    /// Decide ξ_j ~ ξ_l and verify the ladder exactly
    GaugeEquiv {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// Print the gauge ladder from ξ_j to ξ_l
    Ladder {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Block decomposition of the full potential with exponents l
    Split {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        l: Vec<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-4)]
    r_min: f64,
    #[arg(long, default_value_t = 8.0)]
    r_max: f64,
    #[arg(long, default_value_t = 4000)]
    grid: usize,
    /// Integrator tolerance
    #[arg(long, env = "TTSTAR_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
}

impl GridArgs {
    fn params(&self) -> GridParams {
        GridParams {
            r_min: self.r_min,
            r_max: self.r_max,
            n: self.grid,
            tol: self.tol,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    l: Vec<f64>,
    #[command(flatten)]
    grid: GridArgs,
    /// Also write the CSV table to this path
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// json: summary on stdout; csv: table on stdout
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    /// Run every check
    #[arg(long)]
    all: bool,
    /// Run one check by catalogue number
    #[arg(long)]
    lemma: Option<String>,
    /// Run one check by name
    #[arg(long)]
    check: Vec<String>,
    /// Exhaustive equivalence agreement on 0..10(k+2)
    #[arg(long)]
    exhaustive_equiv: bool,
    /// List check names and exit
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidLevel(_)
            | Error::LengthMismatch { .. }
            | Error::WeightAboveLevel { .. }
            | Error::NonIntegralExponent { .. }
            | Error::PairingCondition { .. }
            | Error::InvalidNormalization(_)
            | Error::ExponentBelowMinusOne { .. }
            | Error::AsymptoticOutOfRange { .. }
            | Error::InvalidProblem(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(format!("i/o: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn check_level(k: usize) -> Outcome {
    if k == 0 {
        return Err(Error::InvalidLevel(0).into());
    }
    Ok(())
}

fn check_len<T>(k: usize, v: &[T]) -> Outcome {
    if v.len() != k + 1 {
        return Err(Error::LengthMismatch {
            expected: k + 1,
            found: v.len(),
        }
        .into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = io::stdout();
    let mut out = out.lock();
    let result = match cli.command {
        Command::Fusion(c) => fusion(c, &mut out),
        Command::Rep(c) => rep(c, &mut out),
        Command::Potential(c) => potential(c, &mut out),
        Command::Solve(a) => solve(a, &mut out),
        Command::Verify(a) => run_verify(a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data")
}

fn pq_rows(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(to_pq).collect()).collect()
}

/// `(1/D)[[..]]` with D the common denominator.
fn scaled_display(m: &[Vec<Rational>]) -> String {
    use num_integer::Integer;
    let d = m
        .iter()
        .flatten()
        .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| (x.numer() * (&d / x.denom())).to_string()).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    let body = format!("[{}]", rows.join(","));
    if d == num_bigint::BigInt::from(1) {
        body
    } else {
        format!("(1/{d}){body}")
    }
}

fn fusion(cmd: FusionCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        FusionCmd::Table { k, format } => {
            check_level(k)?;
            let table = multiplication_table(k)?;
            if format == Format::Json {
                let cells: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                writeln!(out, "{}", to_json(&serde_json::json!({ "k": k, "table": cells })))?;
            } else {
                for (a, row) in table.iter().enumerate() {
                    for (b, e) in row.iter().enumerate() {
                        writeln!(out, "[U_{a}] * [U_{b}] = {}", element_text(e))?;
                    }
                }
            }
        }
        FusionCmd::Pairing { k, basis, raw, format } => {
            check_level(k)?;
            let basis = match basis {
                BasisArg::U => Basis::U,
                BasisArg::Monomial => Basis::Monomial,
                BasisArg::Point => Basis::Point,
            };
            let g = gram_matrix(k, basis)?;
            let g = if raw { g } else { g.frame_normalized() };
            match (&g.entries, format) {
                (MatrixEntries::Exact(m), Format::Json) => {
                    writeln!(out, "{}", to_json(&serde_json::json!({ "k": k, "raw": raw, "entries": pq_rows(m) })))?
                }
                (MatrixEntries::Exact(m), _) => writeln!(out, "{}", scaled_display(m))?,
                (MatrixEntries::Float(m), Format::Json) => {
                    let m: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| round12(x)).collect()).collect();
                    writeln!(out, "{}", to_json(&serde_json::json!({ "k": k, "raw": raw, "entries": m })))?
                }
                (MatrixEntries::Float(m), _) => {
                    for r in m {
                        let cells: Vec<String> = r.iter().map(|x| format!("{:.11e}", round12(*x))).collect();
                        writeln!(out, "[{}]", cells.join(", "))?;
                    }
                }
            }
        }
        FusionCmd::Reduce { k, n } => {
            check_level(k)?;
            match u_class(k, n) {
                UClass::Null => writeln!(out, "0 (null class)")?,
                UClass::Line { .. } => writeln!(out, "{}", reduce_u(k, n))?,
            }
        }
        FusionCmd::Mult { k, a, b } => {
            check_level(k)?;
            for i in [a, b] {
                if i > k {
                    return Err(Failure::Usage(format!("basis index {i} exceeds level {k}")));
                }
            }
            let p = fusion_product(&FusionElement::basis(k, a), &FusionElement::basis(k, b))?;
            writeln!(out, "{}", element_text(&p))?;
        }
    }
    Ok(())
}

fn element_text(e: &FusionElement) -> String {
    if e.is_zero() {
        "0".into()
    } else {
        e.to_string()
    }
}

fn weights_rep(weights: &[u64]) -> Outcome {
    if weights.is_empty() {
        return Err(Failure::Usage("--weights must list at least one highest weight".into()));
    }
    Ok(())
}

fn tuple(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|&x| format!("{}", round12(x))).collect();
    format!("({})", cells.join(","))
}

fn rep(cmd: RepCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        RepCmd::Project { k, weights } => {
            check_level(k)?;
            weights_rep(&weights)?;
            let p = project_to_fusion(&Representation::from_weights(&weights), k);
            if p.is_zero() && weights.iter().all(|&w| u_class(k, w) == UClass::Null) {
                writeln!(out, "0 (null class)")?;
            } else {
                writeln!(out, "{}", element_text(&p))?;
            }
        }
        RepCmd::Data { k, weights, format } => {
            check_level(k)?;
            weights_rep(&weights)?;
            let d = rep_to_data(&Representation::from_weights(&weights), k)?;
            let n = d.normalization()?;
            let m = asymptotic_data(&d, n)?.m;
            if format == Format::Json {
                writeln!(out, "{}", to_json(&serde_json::json!({ "k": k, "l": d.l, "n": n, "m": m })))?;
            } else {
                writeln!(out, "l={}, n={}, m={}", tuple(&d.l), round12(n), tuple(&m))?;
            }
        }
        RepCmd::Equiv { k, lhs, rhs } => {
            check_level(k)?;
            match equivalence_branch(k, lhs as i64, rhs as i64) {
                Some(EquivalenceBranch::Even) => writeln!(out, "equivalent (branch 1)")?,
                Some(EquivalenceBranch::Odd) => writeln!(out, "equivalent (branch 2)")?,
                None => writeln!(out, "not equivalent")?,
            }
        }
    }
    Ok(())
}

fn potential(cmd: PotentialCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        PotentialCmd::GaugeEquiv { k, j, l } => {
            check_level(k)?;
            match build_gauge_ladder(k, j, l) {
                Ok(ladder) => {
                    writeln!(out, "equivalent; ladder verified symbolically")?;
                    writeln!(out, "ladder: {}", ladder.word())?;
                }
                Err(Error::NotReachable { .. }) => writeln!(out, "not equivalent")?,
                Err(e) => return Err(e.into()),
            }
        }
        PotentialCmd::Ladder { k, j, l, format } => {
            check_level(k)?;
            let ladder = build_gauge_ladder(k, j, l)?;
            if format == Format::Json {
                writeln!(out, "{}", to_json(&ladder))?;
            } else {
                let xi = SmythPotential::pair(k, j).to_matrix();
                writeln!(out, "ladder: {}", ladder.word())?;
                for f in &ladder.factors {
                    writeln!(out, "  {} at xi_{}", f.step.symbol(), f.at)?;
                }
                writeln!(out, "product:\n{}", ladder.product)?;
                writeln!(out, "xi_{j} . C:\n{}", gauge(&xi, &ladder.product)?)?;
            }
        }
        PotentialCmd::Split { k, l, format } => {
            check_level(k)?;
            check_len(k, &l)?;
            let split = permutation_block_split(&SmythPotential::full(k, l)?)?;
            if format == Format::Json {
                writeln!(out, "{}", to_json(&split))?;
            } else {
                let blocks: Vec<String> = split.blocks.iter().map(|(a, b)| format!("({a},{b})")).collect();
                writeln!(out, "blocks [{}]", blocks.join(", "))?;
                match split.singleton {
                    Some(s) => writeln!(out, "singleton [{s}]")?,
                    None => writeln!(out, "singleton []")?,
                }
            }
        }
    }
    Ok(())
}

fn solve(a: SolveArgs, out: &mut impl Write) -> Outcome {
    check_level(a.k)?;
    check_len(a.k, &a.l)?;
    let d = HolomorphicData::new(a.k, a.l)?;
    let n = d.normalization()?;
    let sol = solve_system(&d, n, &a.grid.params())?;
    if let Some(path) = &a.out {
        write_csv(&sol, BufWriter::new(File::create(path)?))?;
    }
    match a.format {
        Format::Csv => write_csv(&sol, &mut *out)?,
        _ => writeln!(out, "{}", SolveSummary::new(&sol).to_json())?,
    }
    Ok(())
}

fn run_verify(a: VerifyArgs, out: &mut impl Write) -> Outcome {
    if a.list {
        for c in CHECKS {
            writeln!(out, "{:<24} {}", c.name, c.summary)?;
        }
        return Ok(());
    }
    check_level(a.k)?;
    let mut names: Vec<&str> = a.check.iter().map(String::as_str).collect();
    if let Some(label) = &a.lemma {
        match aliases::check_for(label) {
            Some(name) => names.push(name),
            None => return Err(Failure::Usage(format!("no check registered under {label:?}"))),
        }
    }
    if a.exhaustive_equiv {
        names.push("equivalence");
    }
    if a.all {
        names = CHECKS.iter().map(|c| c.name).collect();
    }
    if names.is_empty() {
        return Err(Failure::Usage("pass --all, --lemma, --check or --exhaustive-equiv".into()));
    }
    let grid = a.grid.params();
    let mut results: Vec<CheckResult> = Vec::new();
    for name in names {
        let check = verify::find_check(name).ok_or_else(|| Failure::Usage(format!("unknown check {name:?}")))?;
        results.push(check.run(a.k, &grid));
    }
    if a.format == Format::Json {
        writeln!(out, "{}", to_json(&results))?;
    } else {
        for r in &results {
            writeln!(out, "{}", r.line())?;
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(Failure::Compute(format!("{failed} of {} checks failed", results.len())));
    }
    if a.format != Format::Json {
        writeln!(out, "all {} checks passed", results.len())?;
    }
    Ok(())
}
