mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "nichols", version, about = "Exact computations for Nichols algebras over finite groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
pub struct GroupArg {
    /// Catalog spec such as `heisenberg:n=1,m=3`.
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,
    /// JSON group document `{order, mul_table, generators, labels?}`.
    #[arg(long)]
    group_file: Option<std::path::PathBuf>,
}

#[derive(Args, Clone)]
pub struct ModuleArg {
    #[command(flatten)]
    group: GroupArg,
    /// Label (or index) of the basepoint.
    #[arg(long)]
    class_rep: String,
    /// Index into the characters of the centralizer.
    #[arg(long, conflicts_with = "q")]
    character: Option<usize>,
    /// Pick the first character with this value at the basepoint, e.g. `1/3`.
    #[arg(long)]
    q: Option<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Order, generators, center, commutator subgroup and nilpotency.
    GroupInfo(GroupArg),
    /// Conjugacy classes with centralizer orders and rack type.
    Classes(GroupArg),
    /// Search one class for a type C witness.
    Typec {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        class_rep: String,
        /// Interacting pairs to examine; unlimited when omitted.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check that every class of a nilpotent odd-order group is abelian or of type C.
    Audit21 {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = nichols_core::rack::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build a Yetter-Drinfeld module M(O, χ) and describe its braiding.
    YdBuild(ModuleArg),
    /// Export the braiding of M(O, χ) as JSON.
    BraidingExport {
        #[command(flatten)]
        module: ModuleArg,
        /// Write to this path instead of standard output.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Degreewise dimensions of a Nichols algebra.
    NicholsDim {
        /// Diagonal braiding matrix such as `[[w,w],[w,w]]`.
        #[arg(long, conflicts_with = "braiding_file")]
        diagonal: Option<String>,
        /// A braiding exported by `braiding-export`.
        #[arg(long)]
        braiding_file: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Symbolic finiteness verdict for a diagonal braiding.
    DiagonalVerdict {
        #[arg(long)]
        diagonal: String,
    },
    /// Classify finite-dimensional Nichols algebras over a nilpotent odd-order group.
    Algorithm38(GroupArg),
    /// Braided subspace spanned by an orbit of ⟨h⟩ in an abelian class.
    Yz {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        h: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.verb, cli.format) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.violation { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
