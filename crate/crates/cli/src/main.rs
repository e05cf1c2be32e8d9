mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{CliError, Format};

#[derive(Parser)]
#[command(name = "freeplanar", version, about = "Non-crossing partitions, planar tangles and graph planar algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Largest degree exercised by `verify` and the default length of generated profiles.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=12))]
    pub max_n: u64,

    /// Algebra spec JSON file, e.g. {"name":"M2","blocks":[1,1]}. Repeatable.
    #[arg(long, global = true)]
    pub spec: Vec<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Non-crossing partition calculus.
    Nc {
        #[command(subcommand)]
        op: commands::NcOp,
    },
    /// Free and Boolean cumulants of a moment profile.
    Cum {
        #[command(subcommand)]
        op: commands::CumOp,
    },
    /// Free multiplicative convolution.
    Conv {
        #[command(subcommand)]
        op: commands::ConvOp,
    },
    /// Tangle expressions.
    Tangle {
        #[command(subcommand)]
        op: commands::TangleOp,
    },
    /// Graph planar algebra of a finite-dimensional algebra.
    Gpa {
        #[command(subcommand)]
        op: commands::GpaOp,
    },
    /// Free products of planar algebras.
    Fp {
        #[command(subcommand)]
        op: commands::FpOp,
    },
    /// Permutation group character moments.
    Group {
        #[command(subcommand)]
        op: commands::GroupOp,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let result = match cli.command {
        Command::Nc { op } => commands::nc(op, &g),
        Command::Cum { op } => commands::cum(op, &g),
        Command::Conv { op } => commands::conv(op, &g),
        Command::Tangle { op } => commands::tangle(op, &g),
        Command::Gpa { op } => commands::gpa(op, &g),
        Command::Fp { op } => commands::fp(op, &g),
        Command::Group { op } => commands::group(op, &g),
        Command::Verify { suite } => verify::run(suite, &g),
    };
    match result {
        Ok(out) => {
            println!("{}", out.render(g.format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
