use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use motzeta::elliptic::KodairaType;
use motzeta::jumps::ReductionProfile;
use motzeta::zeta;
use serde::Serialize;

use motzeta_cli::analysis::{self, Check, Options};
use motzeta_cli::input::{self, Input};
use motzeta_cli::report::{self, ExpandReport, Status, TermOut};

/// Exact zeta functions of tamely ramified semi-abelian reduction data.
#[derive(Parser)]
#[command(name = "motzeta", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

const DEFAULT_CHECKS: &str = "oracle,pole,chi,monodromy,degree,table";

#[derive(Subcommand)]
enum Command {
    /// Analyse a reduction profile from a JSON file and verify its
    /// identities
    Analyze {
        /// JSON input: jump spectrum plus divisor data, or a Kodaira tag
        file: PathBuf,
        /// Series order for the oracle and trace-formula checks
        #[arg(long, default_value_t = 200)]
        truncate: u64,
        /// Comma-separated selection of checks to run
        #[arg(long, default_value = DEFAULT_CHECKS)]
        checks: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Keep component counts that contradict the trace formula
        /// (reported as warnings; the chi check will expose them)
        #[arg(long)]
        lenient: bool,
    },
    /// Analyse a Kodaira reduction type of an elliptic curve
    Elliptic {
        /// Kodaira tag: I0, I5, II, III, IV, I0*, I5*, IV*, III*, II*, ...
        tag: String,
        /// Residue characteristic exponent (1 or a prime not dividing
        /// the degree of the type)
        #[arg(long, default_value_t = 1)]
        p: u64,
        #[arg(long, default_value_t = 200)]
        truncate: u64,
        #[arg(long, default_value = DEFAULT_CHECKS)]
        checks: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the zeta series of a profile to a given order
    Expand {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        truncate: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        lenient: bool,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            file,
            truncate,
            checks,
            format,
            lenient,
        } => {
            let (profile, kodaira, warnings) = load(&file, lenient)?;
            analyze_and_emit(&profile, kodaira.as_ref(), warnings, truncate, &checks, format)
        }
        Command::Elliptic {
            tag,
            p,
            truncate,
            checks,
            format,
        } => {
            let ty: KodairaType = tag.parse().map_err(|e: motzeta::Error| e.to_string())?;
            let profile = ty.profile(p).map_err(|e| e.to_string())?;
            analyze_and_emit(&profile, Some(&ty), Vec::new(), truncate, &checks, format)
        }
        Command::Expand {
            file,
            truncate,
            format,
            lenient,
        } => {
            let (profile, _, _) = load(&file, lenient)?;
            check_truncation(truncate, &profile)?;
            let series = zeta::series(&profile, truncate).map_err(|e| e.to_string())?;
            let report = ExpandReport {
                truncation: truncate,
                terms: series
                    .coefficients()
                    .map(|(d, c)| TermOut {
                        degree: d,
                        coefficient: c.to_string(),
                    })
                    .collect(),
                rendered: series.to_string(),
            };
            match format {
                Format::Text => println!("{}", report.rendered),
                Format::Json => emit_json(&report)?,
            }
            Ok(true)
        }
    }
}

fn analyze_and_emit(
    profile: &ReductionProfile,
    kodaira: Option<&KodairaType>,
    warnings: Vec<String>,
    truncate: u64,
    checks: &str,
    format: Format,
) -> Result<bool, String> {
    check_truncation(truncate, profile)?;
    let opts = Options {
        truncate,
        checks: Check::parse_list(checks)?,
    };
    let report = analysis::analyze(profile, kodaira, warnings, &opts).map_err(|e| e.to_string())?;
    match format {
        Format::Text => print!("{}", report::render_text(&report)),
        Format::Json => emit_json(&report)?,
    }
    Ok(report.status == Status::Ok)
}

fn load(
    path: &Path,
    lenient: bool,
) -> Result<(ReductionProfile, Option<KodairaType>, Vec<String>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    match input::parse(&text)? {
        Input::Kodaira { ty, p } => {
            let profile = ty.profile(p).map_err(|e| e.to_string())?;
            Ok((profile, Some(ty), Vec::new()))
        }
        Input::Spectrum(spectrum) => {
            let (profile, warnings) = input::build_profile(&spectrum, lenient)?;
            Ok((profile, None, warnings))
        }
    }
}

fn check_truncation(truncate: u64, profile: &ReductionProfile) -> Result<(), String> {
    let horizon = profile.spectrum().semiabelian_degree() * profile.spectrum().p().max(1);
    if truncate < horizon {
        return Err(format!(
            "truncation {truncate} does not reach one full period {horizon} of the reduction data"
        ));
    }
    Ok(())
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}
