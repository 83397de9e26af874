use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use jigsaw::config;
use jigsaw::experiments::{self, QRule, SweepConfig};
use jigsaw::io;
use jigsaw_core::constraint::{build_constraint_graph, feasibility_probability, tiles_of};
use jigsaw_core::oracle::{uniqueness_report, DEFAULT_LIMIT};
use jigsaw_core::typical::{check_typical, default_c_prime};
use jigsaw_core::variant::{brute_force_variant_solve_with, make_involution, InvolutionKind, VariantSolveOptions};
use jigsaw_core::window::{candidate_neighborhoods, DEFAULT_BUDGET};
use jigsaw_core::{disassemble, generate, is_feasible, solve_detailed, RngSeed, SolveOutcome};

#[derive(Parser)]
#[command(name = "jigsaw", version, about = "Random jigsaw puzzles and their reconstruction")]
#[command(args_override_self = true)]
#[command(after_help = "Any subcommand accepts --config FILE with key = value lines naming its flags; \
command-line flags take precedence.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Involution {
    Identity,
    Pairing,
}

impl From<Involution> for InvolutionKind {
    fn from(i: Involution) -> Self {
        match i {
            Involution::Identity => InvolutionKind::Identity,
            Involution::Pairing => InvolutionKind::Pairing,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random puzzle.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generate a rotation-model puzzle instead.
        #[arg(long)]
        variant: bool,
        #[arg(long, value_enum, default_value = "identity")]
        involution: Involution,
        #[arg(long)]
        out: PathBuf,
    },
    /// Shuffle a puzzle into a piece bag, optionally saving the planted assembly.
    Disassemble {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        planted_out: Option<PathBuf>,
    },
    /// Reassemble a piece bag.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Compare the result with this planted assembly.
        #[arg(long)]
        planted: Option<PathBuf>,
        /// Write the assembly found here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count all feasible assemblies of a small puzzle.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Check the typicality properties of a puzzle.
    Typical {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Threshold constant for the color-pair property, as a fraction.
        #[arg(long)]
        c_prime: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Candidate neighborhood statistics of a piece bag.
    Candidates {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Constraint graph statistics of a window map.
    AnalyzeWindow {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also print the feasibility probability for this many colors.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Enumerate all feasible assemblies of a small rotation-model puzzle.
    VariantOracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        involution: Involution,
        #[arg(long)]
        boundary_fixed: bool,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Run a Monte Carlo sweep and write one CSV row per trial.
    Sweep {
        /// Comma separated side lengths.
        #[arg(long, default_value = "30")]
        n: String,
        /// Comma separated exponents, q = ceil(n^alpha).
        #[arg(long, conflicts_with = "q")]
        alpha: Option<String>,
        /// Comma separated color counts.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| anyhow::anyhow!("bad {what} value {t:?}")))
        .collect()
}

enum Status {
    Ok,
    SolveFailed,
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Generate { n, q, seed, variant, involution, out } => {
            let text = if variant {
                let iota = make_involution(q, involution.into())?;
                io::format_variant(&jigsaw_core::gen::generate_variant(n, q, &iota, RngSeed(seed))?)
            } else {
                io::format_puzzle(&generate(n, q, RngSeed(seed))?)
            };
            write(&out, &text)?;
        }
        Command::Disassemble { input, seed, out, planted_out } => {
            let puzzle = io::parse_puzzle(&read(&input)?)?;
            let (bag, planted) = disassemble(&puzzle, RngSeed(seed));
            write(&out, &io::format_bag(&bag))?;
            if let Some(p) = planted_out {
                write(&p, &io::format_assembly(&planted))?;
            }
        }
        Command::Solve { input, k, budget, planted, out } => {
            let bag = io::parse_bag(&read(&input)?)?;
            let report = solve_detailed(&bag, k, budget)?;
            println!("candidate windows explored: {}", report.enum_stats.explored);
            println!("pieces with several candidate neighborhoods: {}", report.multiple_candidates);
            println!("largest component: {} pieces", report.largest_component);
            println!("core guesses tried: {}", report.attempts.len());
            let assembly = match &report.outcome {
                SolveOutcome::Solved(a) => {
                    debug_assert!(is_feasible(&bag, a)?);
                    println!("outcome: solved");
                    a
                }
                SolveOutcome::Failed(reason) => {
                    println!("outcome: failed ({reason:?})");
                    return Ok(Status::SolveFailed);
                }
            };
            if let Some(path) = planted {
                let planted = io::parse_assembly(&read(&path)?)?;
                println!("planted match: {}", *assembly == planted);
                println!("equal up to identical pieces: {}", assembly.equivalent_in(&planted, &bag));
            }
            if let Some(path) = out {
                write(&path, &io::format_assembly(assembly))?;
            }
        }
        Command::Oracle { input, limit } => {
            let puzzle = io::parse_puzzle(&read(&input)?)?;
            let r = uniqueness_report(&puzzle, limit)?;
            println!("feasible assemblies: {}", r.num_feasible);
            println!("unique vertex assembly: {}", r.unique_vertex);
            println!("unique edge assembly: {}", r.unique_edge);
        }
        Command::Typical { input, k, c_prime, budget } => {
            let puzzle = io::parse_puzzle(&read(&input)?)?;
            let c_prime = match c_prime {
                Some(s) => s.parse::<Ratio<u64>>().map_err(|_| anyhow::anyhow!("bad fraction {s:?}"))?,
                None => default_c_prime(),
            };
            let r = check_typical(&puzzle, k, c_prime, budget)?;
            println!("k = {}, c' = {}", r.k, r.c_prime);
            for (i, (name, check)) in r.properties().iter().enumerate() {
                match check.witness {
                    None => println!("({}) {name}: holds", i + 1),
                    Some(w) => println!("({}) {name}: fails, {w:?}", i + 1),
                }
            }
            println!("typical: {}", r.typical());
        }
        Command::Candidates { input, k, budget } => {
            let bag = io::parse_bag(&read(&input)?)?;
            let c = candidate_neighborhoods(&bag, k as i32, budget)?;
            println!("none: {}", c.none_count());
            println!("unique: {}", c.unique_count());
            println!("multiple: {}", c.multiple_count());
            println!("partial windows explored: {}", c.stats.explored);
        }
        Command::AnalyzeWindow { input, q } => {
            let wm = io::parse_window_map(&read(&input)?)?;
            let (graph, stats) = build_constraint_graph(&wm);
            let tiles = tiles_of(&wm);
            println!("tiles: {}", tiles.len());
            for t in &tiles {
                let pts: Vec<String> = t.iter().map(|p| p.to_string()).collect();
                println!("  {}", pts.join(" "));
            }
            println!("constraint vertices: {}", stats.num_vertices);
            println!("constraints: {}", graph.edges().len());
            println!("components: {}", stats.num_components);
            println!("gamma: {}", stats.gamma);
            println!("w: {}", stats.w);
            println!("u: {}", stats.u);
            if let Some(q) = q {
                if q == 0 {
                    bail!("q must be positive");
                }
                println!("feasibility probability: {}", feasibility_probability(&stats, q));
            }
        }
        Command::VariantOracle { input, involution, boundary_fixed, limit } => {
            let text = read(&input)?;
            let q: u32 = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .and_then(|l| l.split_whitespace().nth(1))
                .and_then(|t| t.parse().ok())
                .context("missing header \"n q\"")?;
            let vp = io::parse_variant(&text, make_involution(q, involution.into())?)?;
            let opts = VariantSolveOptions { boundary_fixed, allow_rotations: true };
            let all = brute_force_variant_solve_with(&vp, limit, opts)?;
            println!("feasible assemblies: {}", all.len());
            println!("unique vertex assembly: {}", all.len() == 1);
        }
        Command::Sweep { n, alpha, q, k, trials, master_seed, budget, out } => {
            let q_rule = match (alpha, q) {
                (_, Some(q)) => QRule::Explicit(list(&q, "q")?),
                (Some(a), None) => QRule::Exponents(list(&a, "alpha")?),
                (None, None) => QRule::Exponents(vec![1.6]),
            };
            let config = SweepConfig { ns: list(&n, "n")?, q_rule, k, trials, master_seed, budget };
            let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            let records = experiments::sweep(&config, std::io::BufWriter::new(file))?;
            for ((n, q), rate) in experiments::success_rates(&config, &records) {
                println!("n = {n}, q = {q}: planted match rate {rate:.3}");
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let mut args: Vec<String> = std::env::args().collect();
    if let Some(path) = config::take_config_flag(&mut args) {
        let entries = fs::read_to_string(&path)
            .map_err(anyhow::Error::from)
            .and_then(|t| config::parse_config(&t).map_err(anyhow::Error::from));
        match entries {
            Ok(e) => config::splice(&mut args, &e),
            Err(e) => {
                eprintln!("error: config {path}: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::SolveFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
