use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hironaka_cli::{run_command, CliError, Command, ProblemFile};

#[derive(Parser, Debug)]
#[command(name = "hironaka", version, about = "Standard bases and ring invariants over K[[x]]")]
struct Cli {
    /// Coefficient field, `q` or `zp:<p>`; overrides the problem file.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit a canonical JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Lift the caps on the number of variables and the degree.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Certified standard basis of the generators.
    StdBasis { file: String },
    /// Vertices of the diagram of initial exponents.
    Diagram { file: String },
    /// Hilbert-Samuel function and polynomial.
    Hilbert {
        file: String,
        #[arg(long)]
        eta_max: Option<u32>,
    },
    /// Minimal free resolution.
    Resolve { file: String },
    /// Minimal Betti numbers.
    Betti { file: String },
    /// Dimension, depth data, CM and Gorenstein verdicts.
    RingReport { file: String },
    /// Flatness of the map given by `map_images` (CM rings only).
    FlatCheck { file: String },
    /// Compare the ideal with its mu-jets.
    Truncate {
        file: String,
        #[arg(long)]
        mu: u32,
    },
    /// Truncation comparisons for mu = 0..=mu-max.
    Mu0Scan {
        file: String,
        #[arg(long)]
        mu_max: Option<u32>,
    },
}

impl Sub {
    fn split(self) -> (Command, String) {
        match self {
            Sub::StdBasis { file } => (Command::StdBasis, file),
            Sub::Diagram { file } => (Command::Diagram, file),
            Sub::Hilbert { file, eta_max } => (Command::Hilbert { eta_max }, file),
            Sub::Resolve { file } => (Command::Resolve, file),
            Sub::Betti { file } => (Command::Betti, file),
            Sub::RingReport { file } => (Command::RingReport, file),
            Sub::FlatCheck { file } => (Command::FlatCheck, file),
            Sub::Truncate { file, mu } => (Command::Truncate { mu }, file),
            Sub::Mu0Scan { file, mu_max } => (Command::Mu0Scan { mu_max }, file),
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let (cmd, path) = cli.command.split();
    let file = ProblemFile::from_json(&read_input(&path)?)?;
    let problem = file.resolve(cli.field.as_deref(), cli.allow_large)?;
    let report = run_command(&cmd, &problem)?;
    Ok(if cli.json { report.to_json_string() } else { report.text })
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
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("hironaka: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
