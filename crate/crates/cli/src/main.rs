mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plie_core::group::DEFAULT_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "plie", version, about = "Lie algebras mod p^k and their uniformly powerful p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the Jacobi form.
    CheckLie(AlgebraArgs),
    /// Chevalley–Eilenberg cohomology with trivial, adjoint or S^k coefficients.
    Cohomology {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// trivial, ad or sym:k
        #[arg(long, default_value = "trivial")]
        coeff: String,
        #[arg(long, value_enum, default_value_t = Convention::Forms)]
        sym_convention: Convention,
        /// Print cocycle representatives of each class.
        #[arg(long)]
        reps: bool,
    },
    /// The Bockstein page B₂, computed directly and from Lie algebra cohomology.
    B2 {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Truncation degree; rows cover degrees below it.
        #[arg(short = 'D', long = "degree", default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..=40))]
        degree: u32,
        /// JSON file with the 3-forms η_t.
        #[arg(long)]
        eta: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Convention::Forms)]
        sym_convention: Convention,
    },
    /// The bracket group Exp(L) over Z/p².
    Exp {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The congruence group Γ_{n,k}(p).
    Gamma {
        #[arg(short = 'n', default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        n: u32,
        #[arg(short = 'k', default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=6))]
        k: u32,
        #[arg(short = 'p', default_value_t = 5)]
        p: u64,
        /// Also check the tower below and identify the Log.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// The obstruction to lifting from Z/p^k to Z/p^{k+1}.
    Lift {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Confirm the verdict by exhaustive search.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The E₃ page of the extension spectral sequence for Ω₁ → G → G/Ω₁.
    E3 {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(short = 'D', long = "degree", default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..=40))]
        degree: u32,
    },
    /// Summary of every check for one algebra.
    Report {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(short = 'D', long = "degree", default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..=40))]
        degree: u32,
    },
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// A library algebra: abelian(n), heisenberg, solvable_S, sl2, so3, gln(n), sln(n).
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    named: Option<String>,
    /// A JSON algebra file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(short = 'p')]
    p: Option<u64>,
    #[arg(short = 'k')]
    k: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Largest group enumerated exhaustively.
    #[arg(long, env = "PLIE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Convention {
    Forms,
    Polynomial,
}

impl From<Convention> for plie_core::cohomology::SymConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Forms => Self::Forms,
            Convention::Polynomial => Self::Polynomial,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
