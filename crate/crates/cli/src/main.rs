use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use opnorm_cli::{describe::describe, exit, run_command, OutputFormat, TOOL, VERSION};

#[derive(Debug, Parser)]
#[command(name = "opnorm", about = "Seeded verification suites for operator-valued norms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the suites listed in a JSON config.
    Run {
        config: PathBuf,
        /// Overrides the config's format.
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Explain a suite or constructor.
    Describe { name: String },
    /// Print the tool version.
    Version,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INVALID } else { exit::PASS });
        }
    };
    let code = match cli.command {
        Command::Run { config, format, output } => {
            match run_command(&config, format, output.as_deref(), &mut std::io::stdout().lock()) {
                Ok(code) => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    exit::INVALID
                }
            }
        }
        Command::Describe { name } => match describe(&name) {
            Ok(text) => {
                print!("{text}");
                exit::PASS
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit::INVALID
            }
        },
        Command::Version => {
            println!("{TOOL} {VERSION} (report schema {})", opnorm_cli::report::SCHEMA_VERSION);
            exit::PASS
        }
    };
    ExitCode::from(code)
}
