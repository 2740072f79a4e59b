mod commands;
mod envelope;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CliError;
use envelope::{envelope, to_json, to_text, Output};

#[derive(Parser)]
#[command(
    name = "osa",
    version,
    about = "One-scale analysis of localized traveling waves"
)]
struct Cli {
    /// Emit one JSON envelope on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EquationArgs {
    /// Equation in the DSL, e.g. "u_t + 6*u*u_x + u_xxx = 0".
    #[arg(required_unless_present = "file")]
    equation: Option<String>,
    /// Read the equation from a file instead.
    #[arg(long, conflicts_with = "equation")]
    file: Option<PathBuf>,
    /// Comma-separated parameter names.
    #[arg(long)]
    params: Option<String>,
    /// Velocity ansatz, e.g. "V = alpha*A^(n-1)".
    #[arg(long)]
    ansatz: Option<String>,
    #[arg(long, default_value = "real")]
    mode: String,
}

#[derive(Subcommand)]
enum Command {
    /// Scale relation and width branches of an equation.
    Analyze(EquationArgs),
    /// Exponent conditions for all terms to balance under the ansatz.
    Balance {
        #[command(flatten)]
        eq: EquationArgs,
        /// constant_width, mass_invariant, width_prop_velocity or power_law:q
        #[arg(long)]
        objective: Option<String>,
    },
    /// Residual of a registered exact solution.
    Verify {
        id: String,
        #[arg(long, default_value_t = 4096)]
        grid_n: usize,
    },
    /// Measured and predicted widths over an amplitude sweep (CSV).
    Scan {
        id: String,
        /// lo:hi:count, log-spaced
        #[arg(long, default_value = "0.1:10:9")]
        amplitude_range: String,
        #[arg(long, default_value_t = 2049)]
        grid_n: usize,
    },
    /// Dyadic wavelet energies of a solution profile (CSV).
    Spectrum {
        id: String,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        jmin: i32,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        jmax: i32,
        #[arg(long, default_value_t = 1.0)]
        k_stride: f64,
        #[arg(long, default_value_t = 4096)]
        grid_n: usize,
    },
    /// Browse the equation catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Markdown table of published vs. engine relations for every entry.
    Report,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { id: String },
}

fn equation_text(a: &EquationArgs) -> Result<String, CliError> {
    match (&a.equation, &a.file) {
        (Some(e), _) => Ok(e.clone()),
        (None, Some(p)) => std::fs::read_to_string(p)
            .map(|s| s.trim().to_string())
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", p.display()))),
        (None, None) => Err(CliError::Parse("no equation given".into())),
    }
}

fn run(cmd: &Command) -> Result<(&'static str, Output), CliError> {
    Ok(match cmd {
        Command::Analyze(a) => {
            let eq = equation_text(a)?;
            let params = commands::split_params(a.params.as_deref());
            (
                "analyze",
                commands::cmd_analyze(
                    &eq,
                    &params,
                    a.ansatz.as_deref(),
                    commands::parse_mode(&a.mode)?,
                )?,
            )
        }
        Command::Balance { eq: a, objective } => {
            let eq = equation_text(a)?;
            let params = commands::split_params(a.params.as_deref());
            let mode = commands::parse_mode(&a.mode)?;
            (
                "balance",
                commands::cmd_balance(
                    &eq,
                    &params,
                    a.ansatz.as_deref(),
                    objective.as_deref(),
                    mode,
                )?,
            )
        }
        Command::Verify { id, grid_n } => ("verify", commands::cmd_verify(id, *grid_n)?),
        Command::Scan {
            id,
            amplitude_range,
            grid_n,
        } => ("scan", commands::cmd_scan(id, amplitude_range, *grid_n)?),
        Command::Spectrum {
            id,
            jmin,
            jmax,
            k_stride,
            grid_n,
        } => (
            "spectrum",
            commands::cmd_spectrum(id, *jmin, *jmax, *k_stride, *grid_n)?,
        ),
        Command::Catalog {
            action: CatalogAction::List,
        } => ("catalog list", commands::cmd_catalog_list()?),
        Command::Catalog {
            action: CatalogAction::Show { id },
        } => ("catalog show", commands::cmd_catalog_show(id)?),
        Command::Report => ("report", commands::cmd_report()?),
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Analyze(_) => "analyze",
        Command::Balance { .. } => "balance",
        Command::Verify { .. } => "verify",
        Command::Scan { .. } => "scan",
        Command::Spectrum { .. } => "spectrum",
        Command::Catalog {
            action: CatalogAction::List,
        } => "catalog list",
        Command::Catalog { .. } => "catalog show",
        Command::Report => "report",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli.command) {
        Ok((name, out)) => {
            if cli.json {
                print!(
                    "{}",
                    to_json(&envelope(name, &echo, out.result, &out.warnings))
                );
            } else {
                match out.body {
                    Some(b) => print!("{b}"),
                    None => print!("{}", to_text(&out.result)),
                }
                for w in &out.warnings {
                    eprintln!("warning: {w}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                print!(
                    "{}",
                    to_json(&envelope(
                        command_name(&cli.command),
                        &echo,
                        e.to_json(),
                        &[]
                    ))
                );
            } else {
                eprintln!("error: {}", e.message());
                if let CliError::Validation {
                    report: Some(r), ..
                } = &e
                {
                    eprint!("{}", to_text(r));
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
