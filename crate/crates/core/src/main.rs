use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cliffverify::cli::{
    run_bench, run_emit, run_verify, BasisName, EmitTarget, Format, FormName, Suite, SystemName, VerifyOptions,
    Workload, EXIT_USAGE,
};

#[derive(Parser)]
#[command(name = "cliffverify", version, about = "Exact checks for Clifford systems, spin algebras and their invariant forms")]
struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Golden directory (defaults to CLIFFVERIFY_GOLDEN_DIR, then the shipped one).
    #[arg(long, global = true)]
    golden_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Only run the named item (or the items whose name starts with it).
        #[arg(long, alias = "check")]
        only: Option<String>,
        /// Restrict the Clifford relation check to one system.
        #[arg(long, value_enum)]
        system: Option<SystemName>,
    },
    /// Print a deterministic serialization.
    Emit {
        #[command(subcommand)]
        target: EmitCommand,
    },
    /// Time a workload and compare its output hash with the golden.
    Bench {
        #[arg(value_enum)]
        workload: Workload,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
    },
}

#[derive(Subcommand)]
enum EmitCommand {
    /// The octonion multiplication table.
    MulTable,
    /// The members of a Clifford system.
    System {
        #[arg(long, value_enum)]
        name: SystemName,
    },
    /// A Lie algebra basis.
    LieBasis {
        #[arg(long, value_enum)]
        name: BasisName,
    },
    /// A form, or a matrix of forms, as JSON lines.
    Form {
        #[arg(long, value_enum)]
        name: FormName,
        /// Write single forms in the dz/dzbar basis.
        #[arg(long)]
        complex: bool,
    },
    /// Regenerate every golden file.
    GoldenAll,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { suite, only, system } => {
            let opts = VerifyOptions { only, system, golden_dir: cli.golden_dir };
            run_verify(suite, &opts).map(|r| {
                let text = match cli.format {
                    Format::Json => serde_json::to_string_pretty(&r).map(|s| s + "\n"),
                    Format::Text => Ok(r.render_text()),
                };
                (text.map_err(Into::into), r.exit_code())
            })
        }
        Command::Emit { target } => {
            let target = match target {
                EmitCommand::MulTable => EmitTarget::MulTable,
                EmitCommand::System { name } => EmitTarget::System(name),
                EmitCommand::LieBasis { name } => EmitTarget::LieBasis(name),
                EmitCommand::Form { name, complex } => EmitTarget::Form { name, complex },
                EmitCommand::GoldenAll => {
                    EmitTarget::GoldenAll(cli.golden_dir.unwrap_or_else(cliffverify::catalog::default_golden_dir))
                }
            };
            run_emit(&target, cli.format).map(|s| (Ok(s), 0))
        }
        Command::Bench { workload, workers, repetitions } => {
            run_bench(workload, workers, repetitions, cli.golden_dir.as_deref()).map(|r| {
                let text = match cli.format {
                    Format::Json => serde_json::to_string_pretty(&r).map(|s| s + "\n"),
                    Format::Text => Ok(r.render_text()),
                };
                (text.map_err(Into::into), r.exit_code())
            })
        }
    };
    match outcome.and_then(|(text, code)| text.map(|t| (t, code))) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
