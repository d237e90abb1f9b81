mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{LatticeInput, OrderInput, Verdict};
use config::{FileConfig, Flags};

/// Eichler orders over F_q(t): splitting types, idempotent search and
/// classifying graphs.
#[derive(Parser)]
#[command(name = "eichler", version)]
struct Cli {
    /// Size of the constant field (2, 3, 4, 5, 7, 8, 9, ...).
    #[arg(long, global = true)]
    q: Option<u8>,
    /// Output file, or output directory for `verify`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Splitting type (a, b) of a rank-two bundle.
    SplitType {
        #[command(flatten)]
        input: LatticeArgs,
        /// Also print h0(L(-n inf)) for n around the exponents.
        #[arg(long)]
        certificate: bool,
    },
    /// Search for a non-trivial idempotent in the global sections of an
    /// order. Exits 0 when split, 1 when not.
    IsSplit {
        #[command(flatten)]
        input: OrderArgs,
        /// Place for --f-order (default inf).
        #[arg(long, requires = "f_order")]
        place: Option<String>,
    },
    /// Build a window of the classifying graph at a place.
    Cgraph {
        /// Level divisor D, e.g. "inf+t" or "2*inf".
        #[arg(long, default_value = "0")]
        level: String,
        /// Place Q off the support of D; defaults to the first such place.
        #[arg(long)]
        place: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        /// JSON list of orders to start from instead of E[D, 0].
        #[arg(long)]
        seed_file: Option<PathBuf>,
        /// dot or json.
        #[arg(long)]
        format: Option<String>,
    },
    /// Rebuild a named window or table and check it. Exits 0 on PASS.
    Verify {
        /// fig1a, fig1c, fig1d, fig4b, thm2 or thm1-desk.
        id: String,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LatticeArgs {
    /// Divisors "B,C" for O(B) + O(C).
    #[arg(long)]
    pair: Option<String>,
    /// JSON file {"fin": [[..]], "inf": [[..]]}.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// JSON 2x2 transition matrix T of strings; the lattice has the
    /// identity at finite places and T^-1 at inf, so diag(t^-a, t^-b)
    /// gives O(a) + O(b).
    #[arg(long)]
    transition: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OrderArgs {
    /// Divisors "B,B2" for E[B, B2].
    #[arg(long)]
    pair: Option<String>,
    /// The order F_r at --place.
    #[arg(long)]
    f_order: Option<i64>,
    /// The maximal order D_B.
    #[arg(long)]
    maximal: Option<String>,
    /// JSON file {"corner_a": .., "corner_b": ..}.
    #[arg(long)]
    order_file: Option<PathBuf>,
}

fn lattice_input(a: LatticeArgs) -> LatticeInput {
    match (a.pair, a.lattice, a.transition) {
        (Some(s), _, _) => LatticeInput::Pair(s),
        (_, Some(p), _) => LatticeInput::LatticeFile(p),
        (_, _, Some(p)) => LatticeInput::TransitionFile(p),
        _ => unreachable!("clap enforces one input"),
    }
}

fn order_input(a: OrderArgs, place: Option<String>) -> OrderInput {
    match (a.pair, a.f_order, a.maximal, a.order_file) {
        (Some(s), ..) => OrderInput::Pair(s),
        (_, Some(r), ..) => OrderInput::FOrder { r, place },
        (_, _, Some(b), _) => OrderInput::Maximal(b),
        (.., Some(p)) => OrderInput::File(p),
        _ => unreachable!("clap enforces one input"),
    }
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let file = FileConfig::from_env()?;
    let mut flags = Flags {
        q: cli.q,
        out: cli.out,
        ..Flags::default()
    };
    match cli.cmd {
        Command::SplitType { input, certificate } => {
            let cfg = config::resolve(&flags, &file, 0)?;
            commands::split_type(&lattice_input(input), certificate, &cfg)
        }
        Command::IsSplit { input, place } => {
            let cfg = config::resolve(&flags, &file, 0)?;
            commands::is_split_cmd(&order_input(input, place), &cfg)
        }
        Command::Cgraph {
            level,
            place,
            depth,
            seed_file,
            format,
        } => {
            flags.depth = depth;
            flags.format = format;
            let cfg = config::resolve(&flags, &file, 4)?;
            commands::cgraph(&level, place.as_deref(), seed_file.as_deref(), &cfg)
        }
        Command::Verify { id, depth } => {
            flags.depth = depth;
            let cfg = config::resolve(&flags, &file, 5)?;
            commands::verify(&id, &cfg)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
