//! Command-line front end for the `davenport-core` searches: parallel
//! solvers, a result cache, report formats and catalog sweeps.

pub mod cache;
pub mod catalog;
pub mod error;
pub mod load;
pub mod parallel;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use davenport_core::bounds::{large_d_inputs, verify_group, GroupFacts, VerifyOptions};
use davenport_core::factorizer::{factorization_failures, factorize, FactorizerConfig};
use davenport_core::lattice::{is_atom, is_product_one_free};
use davenport_core::search::{Invariant, SearchConfig, Solver};
use davenport_core::seq::parse_terms;
use davenport_core::witness::{Claim, WitnessKind};
use davenport_core::{FiniteGroup, OrderedSequence, DEFAULT_DP_BUDGET};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cache::Cache;
use crate::error::CliError;
use crate::load::load_group;
use crate::parallel::{Budget, ParallelSolver};
use crate::report::{write, CatalogView, FactorizeView, Format, InfoView, InvariantView, Render, VerifyView, WitnessView};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "davenport", version, about = "Davenport constants of small finite groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Search nodes allowed per invariant computation.
    #[arg(long, global = true, default_value_t = 2_000_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: u64,
    /// Wall-clock seconds allowed per invariant computation.
    #[arg(long, global = true, value_parser = positive_seconds)]
    pub budget_seconds: Option<f64>,
    /// Lattice states allowed per sequence in product-set computations.
    #[arg(long, global = true, default_value_t = DEFAULT_DP_BUDGET, value_parser = positive_usize)]
    pub dp_budget: usize,
    /// Disable automorphism pruning of the first search level.
    #[arg(long, global = true)]
    pub no_aut: bool,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for cached exhaustive results.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural data of a group.
    Info { group: String },
    /// Compute d, D or eta.
    Invariant {
        #[arg(value_parser = parse_invariant)]
        invariant: Invariant,
        group: String,
    },
    /// Compute all invariants and check every bound and witness.
    Verify {
        group: String,
        /// Random sequences used to test the eta value.
        #[arg(long, default_value_t = 200)]
        eta_samples: usize,
    },
    /// Build and check a family witness (fpq_atom, fpq_free, mpn_atom,
    /// near_dihedral_free).
    Witness { kind: String, params: Vec<u64> },
    /// Run the block factorization on an ordered sequence.
    Factorize {
        group: String,
        /// Ordered terms, e.g. "t, a, t^2a, a[3]".
        sequence: String,
        #[arg(long)]
        omega: usize,
        #[arg(long, allow_hyphen_values = true)]
        omega_h: i64,
        #[arg(long, default_value_t = 0)]
        omega_0: usize,
        /// Generators of the abelian subgroup H (trivial when omitted).
        #[arg(long, default_value = "")]
        h: String,
    },
    /// Verify every group listed in a catalog file.
    Catalog {
        path: PathBuf,
        #[arg(long, default_value_t = 200)]
        eta_samples: usize,
    },
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number of seconds")),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn parse_invariant(s: &str) -> Result<Invariant, String> {
    s.parse().map_err(|_| format!("unknown invariant `{s}` (expected d, D or eta)"))
}

impl GlobalOpts {
    fn solver(&self) -> Result<ParallelSolver, CliError> {
        let config = SearchConfig { dp_budget: self.dp_budget, use_automorphisms: !self.no_aut, ..Default::default() };
        let budget = Budget { nodes: self.budget_nodes, seconds: self.budget_seconds };
        let cache = self.cache_dir.as_ref().map(Cache::new).transpose()?;
        Ok(ParallelSolver::new(config, budget, cache))
    }
}

/// Parse `args` (including the program name), run the command and return
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit<R: Render>(out: &mut dyn Write, format: Format, view: &R) -> Result<(), CliError> {
    write(out, format, view).map_err(|e| CliError::io("<stdout>", e))
}

fn verify_view(g: &FiniteGroup, solver: &ParallelSolver, seed: u64, opts: &VerifyOptions) -> VerifyView {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    VerifyView::new(g, &verify_group(g, solver, &mut rng, opts))
}

/// Run a parsed command.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let opts = &cli.global;
    let format = opts.format;
    match &cli.command {
        Command::Info { group } => {
            let g = load_group(group, None)?;
            emit(out, format, &InfoView::new(&g))?;
            Ok(EXIT_OK)
        }
        Command::Invariant { invariant, group } => {
            let g = load_group(group, None)?;
            let solver = opts.solver()?;
            let r = match invariant {
                Invariant::SmallD => solver.small_davenport(&g),
                Invariant::Eta => solver.eta(&g),
                Invariant::LargeD => {
                    let small = solver.small_davenport(&g);
                    let (_, hints) = large_d_inputs(&g, &GroupFacts::new(&g), &solver, &small);
                    solver.large_davenport(&g, &hints)
                }
            };
            emit(out, format, &InvariantView::new(&g, &r))?;
            Ok(if r.exhaustive { EXIT_OK } else { EXIT_BUDGET })
        }
        Command::Verify { group, eta_samples } => {
            let g = load_group(group, None)?;
            let solver = opts.solver()?;
            let vopts = VerifyOptions { eta_samples: *eta_samples, dp_budget: opts.dp_budget };
            let view = verify_view(&g, &solver, opts.seed, &vopts);
            emit(out, format, &view)?;
            Ok(if view.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Witness { kind, params } => {
            let k = WitnessKind::parse(kind, params).map_err(|e| CliError::Usage(e.to_string()))?;
            let w = k.build().map_err(|source| CliError::Group { spec: k.spec().to_string(), source })?;
            let valid = match w.claim {
                Claim::Atom => is_atom(&w.group, &w.sequence, opts.dp_budget)?,
                Claim::ProductOneFree => is_product_one_free(&w.group, &w.sequence, opts.dp_budget)?,
            };
            let check = valid && w.sequence.len() == w.expected_len;
            emit(out, format, &WitnessView::new(&k, &w, check))?;
            Ok(if check { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Factorize { group, sequence, omega, omega_h, omega_0, h } => {
            let g = load_group(group, None)?;
            let parse = |text: &str| parse_terms(&g, text).map_err(|source| CliError::Group { spec: group.clone(), source });
            let input = OrderedSequence::new(parse(sequence)?);
            let h = g.subgroup_generated(parse(h)?);
            let cfg = FactorizerConfig { h, omega: *omega, omega_h: *omega_h, omega_0: *omega_0 };
            let f = factorize(&g, &input, &cfg)?;
            let failures = factorization_failures(&g, &f, &input, &cfg);
            let valid = failures.is_empty();
            emit(out, format, &FactorizeView::new(&g, &input, &cfg, &f, failures))?;
            Ok(if valid { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Catalog { path, eta_samples } => {
            let groups = catalog::read_catalog(path)?;
            let solver = opts.solver()?;
            let vopts = VerifyOptions { eta_samples: *eta_samples, dp_budget: opts.dp_budget };
            let entries: Vec<VerifyView> = groups
                .par_iter()
                .enumerate()
                .map(|(i, g)| verify_view(g, &solver, opts.seed.wrapping_add(i as u64), &vopts))
                .collect();
            let view = CatalogView::new(entries);
            emit(out, format, &view)?;
            Ok(if view.summary.violations == 0 { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}
