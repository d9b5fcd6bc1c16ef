use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kvfcl_core::corpus;
use kvfcl_core::report::{self, Input, Parameters, Report, ReportError};

#[derive(Parser)]
#[command(name = "kvfcl", version, about = "Killing fields of constant length on homogeneous spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: center, radical, nilradical, declarations, Levi factor.
    Inspect {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Spectral analysis of ad(X).
    Spectrum {
        path: PathBuf,
        #[arg(long)]
        field: String,
        #[command(flatten)]
        common: Common,
    },
    /// Constant-length verdict for a field, and the geodesic-orbit check with --go.
    Check {
        path: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long)]
        go: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the statement verifiers and conjecture probes.
    Verify {
        path: PathBuf,
        #[arg(long, default_value = "all")]
        statements: String,
        /// Extra fields, in addition to the default set.
        #[arg(long)]
        field: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in example spaces.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Writes every built-in space as `<name>.json` into a directory.
    Export { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn parameters(&self) -> Parameters {
        Parameters {
            samples: self.samples,
            order: self.order,
            seed: self.seed,
            tol: self.tol,
            ..Parameters::default()
        }
    }
}

fn emit(report: &Report, common: &Common) -> Result<ExitCode, String> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    match &common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))?,
        None => print!("{text}"),
    }
    if report.exit_code == 1 {
        for s in report.sections.iter().filter(|s| s.title == "Refutations" || s.title == "Constant length" || s.title == "Geodesic orbit") {
            for l in s.lines.iter().filter(|l| l.contains("RefutedAt") || s.title == "Refutations") {
                eprintln!("{l}");
            }
        }
    }
    Ok(ExitCode::from(report.exit_code as u8))
}

fn load(path: &Path) -> Result<Input, String> {
    Input::load(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn field(input: &Input, text: &str) -> Result<kvfcl_core::Vector, String> {
    input.parse_field(text).map_err(|e: ReportError| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Inspect { path, common } => {
            let input = load(&path)?;
            emit(&report::cmd_inspect(&input, &common.parameters()), &common)
        }
        Command::Spectrum { path, field: f, common } => {
            let input = load(&path)?;
            let x = field(&input, &f)?;
            let mut p = common.parameters();
            p.fields = vec![f];
            emit(&report::cmd_spectrum(&input, &p, &x), &common)
        }
        Command::Check { path, field: f, go, common } => {
            let input = load(&path)?;
            let x = field(&input, &f)?;
            let mut p = common.parameters();
            p.fields = vec![f];
            p.go = go;
            emit(&report::cmd_check(&input, &p, &x), &common)
        }
        Command::Verify { path, statements, field: fs, common } => {
            let input = load(&path)?;
            let extra = fs.iter().map(|f| field(&input, f)).collect::<Result<Vec<_>, _>>()?;
            let mut p = common.parameters();
            p.statements = statements;
            p.fields = fs;
            let r = report::cmd_verify(&input, &p, &extra).map_err(|e| e.to_string())?;
            emit(&r, &common)
        }
        Command::Corpus { action: CorpusAction::Export { dir } } => {
            std::fs::create_dir_all(&dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
            for doc in corpus::corpus() {
                let path = dir.join(format!("{}.json", doc.name));
                corpus::save(&doc, &path).map_err(|e| e.to_string())?;
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
