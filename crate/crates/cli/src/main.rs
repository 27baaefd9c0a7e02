use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use divalg_cli::commands::{run, Command, Options};
use divalg_cli::config::Config;

#[derive(Parser)]
#[command(
    name = "divalg",
    version,
    about = "Exact experiments in finite-dimensional division algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Configuration file; defaults to the quaternions (-1, -1) over Q.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Element expression such as "1/2 + 3*i - j".
    #[arg(long, global = true, allow_hyphen_values = true)]
    element: Option<String>,
    #[arg(long, global = true)]
    degree: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Search budget, sample size or rewrite step limit.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Word such as "x1 x2 x1".
    #[arg(long, global = true)]
    word: Option<String>,
    /// Rewrite length cap.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Emit one JSON object.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal polynomial over the base field.
    Minpoly,
    /// Left minimal polynomial over the subfield K.
    Leftminpoly,
    /// Whether g_d vanishes on the element (degree at most d).
    GdCheck,
    /// Multiplicative and additive commutators of maximal degree.
    CommutatorSearch,
    /// Right regular representation over K.
    Regrep,
    /// Power or Shirshov decomposition of a word.
    WordDecompose,
    /// Rewrite a word into short words over K.
    Rewrite,
    /// Check the [D:F] <= d^2 bound on all element families.
    Verify,
    /// Local Hilbert symbols of a rational quaternion algebra.
    Hilbert,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.config {
        None => Config::default(),
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| Config::parse(&t).map_err(|e| e.to_string()))
        {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
    };
    let command = match cli.command {
        Cmd::Minpoly => Command::Minpoly,
        Cmd::Leftminpoly => Command::LeftMinpoly,
        Cmd::GdCheck => Command::GdCheck,
        Cmd::CommutatorSearch => Command::CommutatorSearch,
        Cmd::Regrep => Command::Regrep,
        Cmd::WordDecompose => Command::WordDecompose,
        Cmd::Rewrite => Command::Rewrite,
        Cmd::Verify => Command::Verify,
        Cmd::Hilbert => Command::Hilbert,
    };
    let opts = Options {
        element: cli.element,
        degree: cli.degree,
        seed: cli.seed,
        budget: cli.budget,
        word: cli.word,
        cap: cli.cap,
        json: cli.json,
    };
    let out = run(command, &config, &opts);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
