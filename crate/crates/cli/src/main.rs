//! `aont`: construct, verify and search for all-or-nothing transforms.
//!
//! Exit status: 0 success or verdict true, 1 verdict false, 2 usage, format
//! or construction error, 3 search stopped by the candidate cap.

mod construct;
mod output;
mod search;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use aont_core::arrays::DEFAULT_CELL_CAP;
use aont_core::search::DEFAULT_CANDIDATE_CAP;
use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Output;

#[derive(Parser, Debug)]
#[command(name = "aont", version, about = "Finite-field toolkit for generalized all-or-nothing transforms")]
struct Cli {
    /// Emit line-delimited JSON records instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Largest array representation (rows x columns) built for brute force.
    #[arg(long, global = true, env = "AONT_CELL_CAP", default_value_t = DEFAULT_CELL_CAP)]
    cell_cap: u128,
    /// Largest normalized search space explored exhaustively.
    #[arg(long, global = true, env = "AONT_CANDIDATE_CAP", default_value_t = DEFAULT_CANDIDATE_CAP)]
    candidate_cap: u128,
    /// Search worker threads (default: all cores).
    #[arg(long, global = true, env = "AONT_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a matrix, array or difference matrix and write it in text form.
    Construct(construct::ConstructArgs),
    /// Check a claim against a matrix or array file.
    Verify(verify::VerifyArgs),
    /// Exhaustive search for strong transforms.
    Search(search::SearchArgs),
    /// Analytic bounds on the largest strong 2-transform over GF(q).
    Bounds {
        #[arg(long)]
        q: u64,
    },
    /// Rewrite a file canonically or turn a matrix into its array.
    Convert(ConvertArgs),
}

#[derive(clap::Args, Debug)]
struct ConvertArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Target::Canonical)]
    to: Target,
    /// How a matrix is read as a transform.
    #[arg(long, value_enum, default_value_t = Dir::Inverse)]
    direction: Dir,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Canonical,
    Array,
    /// Array with inputs and outputs exchanged (needs s = n).
    Swapped,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    /// `y = x M^-1`
    Inverse,
    /// `y = x M`
    Forward,
}

impl From<Dir> for aont_core::Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Inverse => aont_core::Direction::Inverse,
            Dir::Forward => aont_core::Direction::Forward,
        }
    }
}

pub struct Context {
    pub out: Output,
    pub cell_cap: u128,
    pub candidate_cap: u128,
    pub jobs: Option<usize>,
}

fn convert(args: &ConvertArgs, ctx: &Context) -> anyhow::Result<i32> {
    use aont_core::format::{self, Object};
    use aont_core::TransformArray;

    let object = output::read_object(&args.input)?;
    let to_array = |object: Object| -> anyhow::Result<TransformArray> {
        Ok(match object {
            Object::Matrix(m) => TransformArray::from_linear_capped(&m, args.direction.into(), ctx.cell_cap)?,
            Object::Array(a) => a,
            Object::Dm(_) => anyhow::bail!("a difference matrix has no array representation"),
        })
    };
    let result = match args.to {
        Target::Canonical => object,
        Target::Array => Object::Array(to_array(object)?),
        Target::Swapped => Object::Array(to_array(object)?.swap_halves()?),
    };
    output::write_object(&format::Object::write(&result), args.out.as_deref())?;
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let ctx = Context {
        out: Output { json: cli.json },
        cell_cap: cli.cell_cap,
        candidate_cap: cli.candidate_cap,
        jobs: cli.jobs,
    };
    match &cli.command {
        Command::Construct(args) => construct::run(args, &ctx),
        Command::Verify(args) => verify::run(args, &ctx),
        Command::Search(args) => search::run(args, &ctx),
        Command::Bounds { q } => search::bounds(*q, &ctx),
        Command::Convert(args) => convert(args, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
