//! `tte`: run observations, scans and decompositions from the command line.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "tte",
    version,
    about = "Explore fueled prefix machines, jump names and Borel sets"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Step budget; defaults to 1024 for observe and eval, 256 for
    /// mindchanges, 2048 hit entries for overt images and 16384 for scans.
    #[arg(long, global = true, env = "TTE_FUEL")]
    fuel: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Watch the membership name of a base-level open set at a point.
    Observe {
        #[arg(long)]
        set: String,
        #[arg(long)]
        point: String,
    },
    /// Run a machine on a point name and print the output prefix.
    Eval {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        point: String,
    },
    /// Split a jump^1 open subset of Cantor space into closed pieces.
    Decompose {
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 16)]
        pieces: usize,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Hit words of the image of a Baire-to-Cantor machine, or the
    /// jump-level nonemptiness of a jump^1 open subset of Cantor space.
    Overt {
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        machine: Option<String>,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Convert a complementary pair of jump names into a mindchange name.
    Mindchanges {
        #[arg(long)]
        pair: String,
    },
    /// Stabilization scan of a set at a point, or of a jump name.
    Estimate {
        #[arg(
            long,
            requires = "point",
            conflicts_with = "jump",
            required_unless_present = "jump"
        )]
        set: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        jump: Option<String>,
        #[arg(long, default_value_t = 8)]
        rows: u64,
    },
    /// Send a jump pair through the mindchange space and back.
    Roundtrip {
        #[arg(long)]
        pair: String,
    },
}

fn run(cli: &Cli) -> tte_core::Result<Report> {
    let scan = cli.fuel.unwrap_or(commands::SCAN_FUEL);
    let short = cli.fuel.unwrap_or(commands::OBSERVE_FUEL);
    match &cli.verb {
        Verb::Observe { set, point } => commands::observe(set, point, short),
        Verb::Eval { machine, point } => commands::eval(machine, point, short),
        Verb::Decompose { set, pieces, depth } => commands::decompose(set, *pieces, *depth),
        Verb::Overt {
            machine: Some(m),
            depth,
            ..
        } => commands::overt_image(m, *depth, cli.fuel.unwrap_or(commands::IMAGE_FUEL)),
        Verb::Overt { set, depth, .. } => {
            commands::overt_set(set.as_deref().unwrap_or_default(), *depth, scan)
        }
        Verb::Mindchanges { pair } => {
            commands::mindchanges(pair, cli.fuel.unwrap_or(commands::TRACE_FUEL))
        }
        Verb::Estimate {
            set: Some(s),
            point,
            rows,
            ..
        } => commands::estimate_set(s, point.as_deref().unwrap_or_default(), *rows, scan),
        Verb::Estimate { jump, rows, .. } => {
            commands::estimate_jump(jump.as_deref().unwrap_or_default(), *rows, scan)
        }
        Verb::Roundtrip { pair } => commands::roundtrip(pair, scan),
    }
}

fn exit_status(e: &tte_core::Error) -> u8 {
    match e {
        tte_core::Error::Parse { .. } | tte_core::Error::UnknownTable(_) => 2,
        tte_core::Error::UnsupportedLevel(_) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}
