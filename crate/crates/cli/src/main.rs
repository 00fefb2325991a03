use std::path::PathBuf;
use std::process::ExitCode;

use biform::commands::{self, PontrjaginSelection, VerifyOptions};
use clap::{Parser, Subcommand};

/// Exact double-form algebra from the command line.
#[derive(Debug, Parser)]
#[command(name = "biform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run identities on seeded random rational inputs.
    Verify {
        /// Identity to run (repeatable); all default identities when absent.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Dimension for every selected identity; each uses its own default otherwise.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where counterexamples of failing identities are written.
        #[arg(long, value_name = "DIR", default_value = "biform-counterexamples")]
        counterexample_dir: PathBuf,
        /// List the identities and exit.
        #[arg(long)]
        list: bool,
    },
    /// Characteristic coefficients, Newton transformations and residuals of a bilinear form.
    Invariants { file: PathBuf },
    /// The Pontrjagin form P_k, or a product of them, of a curvature tensor.
    Pontrjagin {
        file: PathBuf,
        #[arg(long, conflicts_with = "exponents", required_unless_present = "exponents")]
        k: Option<usize>,
        /// Exponents k1,k2,... of P_1^k1 P_2^k2 ...
        #[arg(long, value_delimiter = ',')]
        exponents: Option<Vec<usize>>,
        /// Also print the normalization constant in decimal.
        #[arg(long)]
        decimal: bool,
        /// Accept a (2,2) form that fails the symmetry or Bianchi checks.
        #[arg(long)]
        allow_non_bianchi: bool,
    },
    /// Whether R^p is diagonal in an orthonormal basis (the standard one by default).
    Purity {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// The determinant of a bilinear form.
    Det { file: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { list: true, .. } => Ok(commands::list_identities()),
        Command::Verify {
            suites,
            n,
            trials,
            seed,
            counterexample_dir,
            list: false,
        } => commands::verify_report(&VerifyOptions {
            suites,
            n,
            trials,
            seed,
            counterexample_dir,
        }),
        Command::Invariants { file } => commands::invariants_report(&file),
        Command::Pontrjagin {
            file,
            k,
            exponents,
            decimal,
            allow_non_bianchi,
        } => {
            let selection = match (k, exponents) {
                (Some(k), _) => PontrjaginSelection::Single(k),
                (None, Some(ks)) => PontrjaginSelection::Product(ks),
                (None, None) => unreachable!("clap requires one of --k and --exponents"),
            };
            commands::pontrjagin_report(&file, &selection, decimal, allow_non_bianchi)
        }
        Command::Purity { file, p, basis } => commands::purity_report(&file, p, basis.as_deref()),
        Command::Det { file } => commands::det_report(&file),
    };
    match result {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
