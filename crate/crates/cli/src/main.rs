mod commands;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "iwk", version, about = "Exact Iwasawa-algebra, Fitting-ideal, sl2 and L-invariant computations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Odd prime.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,
    /// p-adic working precision N.
    #[arg(long, global = true, env = "IWK_PRECISION", default_value_t = 32)]
    pub precision: u32,
    /// Series truncation M.
    #[arg(long, global = true, default_value_t = 64)]
    pub truncation: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// M_{m,k,i} table, or one entry with --k and --i.
    Mcoeff {
        #[arg(long)]
        m: usize,
        #[arg(long, requires = "i")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        i: Option<usize>,
    },
    /// Hecke polynomial of the symmetric-power transfer of (alpha, beta).
    Symtransfer {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        norm: u64,
    },
    /// Polynomial whose roots are the f-th powers of the input's roots.
    Adams {
        /// Literal such as `x2-5x+6`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "poly_file", required_unless_present = "poly_file")]
        poly: Option<String>,
        /// Polynomial file: degree, then coefficients low to high.
        #[arg(long)]
        poly_file: Option<std::path::PathBuf>,
        #[arg(long)]
        f: usize,
    },
    /// Frobenius characteristic polynomial at p for ordinary data.
    Frobpoly {
        /// u_1,...,u_n (u_0 = 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<String>,
        /// lambda_1,...,lambda_n
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<i64>,
        #[arg(long)]
        norm: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        varpi: String,
        /// Read --u and --lambda as the first n-1 values and append u_n = 1, lambda_n = 0.
        #[arg(long)]
        normalized: bool,
    },
    /// Weierstrass preparation of a series.
    Weierstrass {
        /// Polynomial literal in S.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "file", required_unless_present = "file")]
        series: Option<String>,
        /// Series file (`p N M` header, then `index valuation unit` lines).
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Fitting ideals of a presentation file.
    Fitting {
        #[arg(long)]
        file: std::path::PathBuf,
        /// Only this index; default is every index up to the row count.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Characteristic ideal of a presentation file.
    Charideal {
        #[arg(long)]
        file: std::path::PathBuf,
        /// Also compare with the characteristic ideal of the S = 0 reduction.
        #[arg(long)]
        mod_s: bool,
    },
    /// Congruence ideal of B[X]/(f) with section X -> root.
    Congruence {
        /// Distinct roots a,b[,c]; the section sends X to the first.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["poly", "root"])]
        roots: Vec<String>,
        #[arg(long, allow_hyphen_values = true, requires = "root")]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "poly")]
        root: Option<String>,
    },
    /// L matrix, det L and Greenberg L-invariants of a log-Jacobian file.
    Linv {
        #[arg(long)]
        file: std::path::PathBuf,
        /// Direction y (n+1 rationals summing to 0); default is an admissible one.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        direction: Vec<String>,
    },
    /// The ideal I_k in B_k from an n x n matrix file.
    Ikideal {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Product of Greenberg L-invariants against det L for a D vector.
    Compare {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "file")]
        d: Vec<String>,
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Character identities for Sym^{n-1} and the M determinant relation.
    Decomp {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// The full randomized acceptance battery.
    Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.global.json));
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Math(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
