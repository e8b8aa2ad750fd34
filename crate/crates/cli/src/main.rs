mod config;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use log::info;

use semilie::catalog::{describe, render, CatalogEntry, EntryRecord, Format, KnownModelRegistry};
use semilie::cayley::text::{parse_tables, write_tables};
use semilie::closure::{verify_multiplicative_closure_with, TrialSettings};
use semilie::constructors::{equivariant_model, fixture, group_based_model, GroupSpec};
use semilie::symmetry::generate_group;
use semilie::{enumerate_semigroups, run_pipeline, ModelSubspace, Perm, Source};

use config::Config;

/// Semigroup-based Lie-Markov models.
#[derive(Parser, Debug)]
#[command(name = "semilie", version, about)]
struct Cli {
    /// TOML file with defaults for tolerance, trials, seed and output directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Log pipeline stages to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List semigroups of order k up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the model catalog for order k.
    Derive {
        #[arg(long)]
        order: usize,
        /// Cayley tables to use instead of the enumeration (1-based, blank-line separated).
        #[arg(long)]
        tables: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Show the catalog entry of one model.
    Classify {
        #[arg(long)]
        model_id: String,
        /// Restrict the search to one order (default: 2, 3 and 4).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check multiplicative closure numerically.
    VerifyClosure(VerifyArgs),
    /// Build a model directly.
    #[command(subcommand)]
    Construct(Construct),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, requires = "model_id", conflicts_with_all = ["fixture", "label"])]
    order: Option<usize>,
    #[arg(long, requires = "order")]
    model_id: Option<String>,
    /// SYM, GM2 or JJ3.
    #[arg(long, conflicts_with = "label")]
    fixture: Option<String>,
    /// A known-model label such as F81 or K3ST.
    #[arg(long)]
    label: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Group-based model of C2, C3, C4, V4 or S3.
    GroupBased {
        #[arg(long)]
        group: String,
    },
    /// Model of all rate matrices invariant under a permutation group.
    Equivariant {
        #[arg(long)]
        order: usize,
        /// Group generators in cycle notation, e.g. "(12)(34)"; the group they generate is used.
        #[arg(long = "perm", value_delimiter = ',')]
        perms: Vec<String>,
    },
    /// A reference model: SYM, GM2 or JJ3.
    Fixture { name: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for a violated internal invariant anywhere in the chain, 1 otherwise.
fn exit_code(e: &anyhow::Error) -> u8 {
    let invariant = e
        .chain()
        .any(|c| matches!(c.downcast_ref::<semilie::Error>(), Some(semilie::Error::InvariantViolation(_))));
    if invariant {
        2
    } else {
        1
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Enumerate { order, out } => {
            let tables = enumerate_semigroups(order)?;
            info!("{} semigroups of order {order}", tables.len());
            emit(&config, out.as_deref(), &write_tables(&tables))
        }
        Command::Derive {
            order,
            tables,
            out,
            format,
        } => {
            let format: Format = format.parse()?;
            let source = match tables {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    Source::Tables(parse_tables(&text).with_context(|| format!("parsing {}", path.display()))?)
                }
                None => Source::Enumerate,
            };
            let catalog = run_pipeline(order, source)?;
            eprintln!("{}", catalog.funnel);
            emit(&config, out.as_deref(), &render(&catalog, format)?)
        }
        Command::Classify { model_id, order } => {
            let orders = match order {
                Some(k) => vec![k],
                None => vec![2, 3, 4],
            };
            for k in orders {
                let catalog = run_pipeline(k, Source::Enumerate)?;
                if let Some(entry) = catalog.find(&model_id) {
                    return print_entry(entry);
                }
            }
            bail!("no model with id {model_id}")
        }
        Command::VerifyClosure(args) => verify(&config, args),
        Command::Construct(c) => {
            let model = match c {
                Construct::GroupBased { group } => group_based_model(&named_group(&group)?),
                Construct::Equivariant { order, perms } => {
                    let gens = perms
                        .iter()
                        .map(|p| Perm::parse_cycles(p, order))
                        .collect::<semilie::Result<Vec<_>>>()?;
                    let group = generate_group(order, &gens)?;
                    equivariant_model(group.elements(), order)?
                }
                Construct::Fixture { name } => fixture(&name)?.subspace,
            };
            print_entry(&describe(model))
        }
    }
}

fn named_group(name: &str) -> anyhow::Result<GroupSpec> {
    Ok(match name.to_ascii_uppercase().as_str() {
        "C2" | "Z2" => GroupSpec::cyclic(2),
        "C3" | "Z3" => GroupSpec::cyclic(3),
        "C4" | "Z4" => GroupSpec::cyclic(4),
        "V4" | "KLEIN" => GroupSpec::klein(),
        "S3" => GroupSpec::symmetric(3),
        _ => bail!("unknown group {name} (expected C2, C3, C4, V4 or S3)"),
    })
}

fn verify(config: &Config, args: VerifyArgs) -> anyhow::Result<()> {
    let (name, model): (String, ModelSubspace) = match (&args.order, &args.model_id, &args.fixture, &args.label) {
        (Some(k), Some(id), None, None) => {
            let catalog = run_pipeline(*k, Source::Enumerate)?;
            let entry = catalog.find(id).ok_or_else(|| anyhow!("no model with id {id} at order {k}"))?;
            (id.clone(), entry.report.subspace.clone())
        }
        (None, None, Some(f), None) => {
            let fx = fixture(f)?;
            (fx.name, fx.subspace)
        }
        (None, None, None, Some(label)) => {
            let m = KnownModelRegistry::global()
                .model(label)
                .ok_or_else(|| anyhow!("unknown label {label}"))?;
            (label.clone(), m.clone())
        }
        _ => bail!("give either --order with --model-id, --fixture, or --label"),
    };
    let settings = TrialSettings::new(
        args.trials.unwrap_or(config.trials),
        args.tol.unwrap_or(config.tolerance),
        args.seed.unwrap_or(config.seed),
    );
    let report = verify_multiplicative_closure_with(&model, settings)?;
    let line = format!(
        "{} {name}: max residual {:.3e} over {} trials (tol {:.1e}, seed {})",
        report.verdict, report.max_residual, report.numeric_trials, report.tolerance, report.seed
    );
    stdout(&format!("{line}\n{}\n", serde_json::to_string_pretty(&report)?))
}

fn print_entry(entry: &CatalogEntry) -> anyhow::Result<()> {
    stdout(&format!("{}\n", serde_json::to_string_pretty(&EntryRecord::from(entry))?))
}

/// Writes to `out` (relative paths resolve against the configured output
/// directory) or to stdout.
fn emit(config: &Config, out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let path = config.resolve(path);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            info!("wrote {}", path.display());
            Ok(())
        }
        None => stdout(text),
    }
}

/// A closed pipe on the reader's side is not an error.
fn stdout(text: &str) -> anyhow::Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}
