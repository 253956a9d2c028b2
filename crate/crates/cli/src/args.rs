//! Command-line definitions and the key=value config file.
//!
//! A config file line `key = value` acts like `--key=value` placed before
//! the flags actually given, so explicit flags win.

use std::fs;
use std::path::PathBuf;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::range::{parse_int_grid, parse_real_grid, IntGrid, RealGrid};
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "miescat", version, about = "Scattering and bound states of the Mie-type potential")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase shifts on an (l, E) grid.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    PhaseShift(PhaseShiftArgs),
    /// Truncated partial-wave amplitude and differential cross section.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    CrossSection(CrossSectionArgs),
    /// Bound-state energies, sorted by energy.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Bound(BoundArgs),
    /// Scattering or bound radial wave function on an r grid.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Wavefunction(WavefunctionArgs),
    /// Run the verification suites and print the reports.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Kratzer,
    ModifiedKratzer,
    Coulomb,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long)]
    pub a1: Option<f64>,
    #[arg(long)]
    pub a2: Option<f64>,
    #[arg(long)]
    pub a3: Option<f64>,
    /// Named potential instead of a1/a2/a3.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Well depth for the Kratzer presets.
    #[arg(long = "De")]
    pub de: Option<f64>,
    /// Equilibrium distance for the Kratzer presets.
    #[arg(long = "re")]
    pub re: Option<f64>,
    /// Charge for the Coulomb preset.
    #[arg(long = "Z")]
    pub z: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file; flags given on the command line override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Record the wall-clock time in the metadata.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PhaseShiftArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Partial waves: list or start:stop.
    #[arg(long, value_parser = parse_int_grid, default_value = "0")]
    pub l: IntGrid,
    /// Energies: list or start:stop:count.
    #[arg(long, value_parser = parse_real_grid)]
    pub energy: RealGrid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Standard,
    PaperLiteral,
}

#[derive(Debug, Clone, Args)]
pub struct CrossSectionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long)]
    pub energy: f64,
    /// Highest partial wave kept in the sum.
    #[arg(long)]
    pub lmax: u32,
    /// Angles in (0, π]: list or start:stop:count.
    #[arg(long, value_parser = parse_real_grid)]
    pub theta: RealGrid,
    #[arg(long, value_enum, default_value_t = Mode::Standard)]
    pub mode: Mode,
    /// Read and write angles in degrees.
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Shorthand for `--n 0:NMAX`.
    #[arg(long, conflicts_with = "n")]
    pub nmax: Option<u32>,
    /// Shorthand for `--l 0:LMAX`.
    #[arg(long, conflicts_with = "l")]
    pub lmax: Option<u32>,
    /// Radial quantum numbers (node counts): list or start:stop.
    #[arg(long, value_parser = parse_int_grid)]
    pub n: Option<IntGrid>,
    #[arg(long, value_parser = parse_int_grid)]
    pub l: Option<IntGrid>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Scattering,
    Bound,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Energy of the scattering state.
    #[arg(long)]
    pub energy: Option<f64>,
    /// Node count of the bound state.
    #[arg(long)]
    pub n: Option<u32>,
    /// Radii: list or start:stop:count.
    #[arg(long, value_parser = parse_real_grid)]
    pub r: RealGrid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Specfun,
    Model,
    Scattering,
    Bound,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RootArg {
    Regular,
    Irregular,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run a single suite.
    #[arg(long, value_enum)]
    pub only: Option<SuiteArg>,
    /// Root of A used by the closed forms (for mutation testing).
    #[arg(long, value_enum, default_value_t = RootArg::Regular, hide = true)]
    pub root: RootArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub timestamp: bool,
}

/// Position of the subcommand and the `--config` value, if any.
fn locate(argv: &[String]) -> (Option<usize>, Option<String>) {
    let cmd = Cli::command();
    let sub = argv
        .iter()
        .skip(1)
        .position(|a| cmd.find_subcommand(a).is_some())
        .map(|i| i + 1);
    let mut config = None;
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            config = it.next().cloned();
        } else if let Some(v) = a.strip_prefix("--config=") {
            config = Some(v.to_string());
        }
    }
    (sub, config)
}

/// Turns the config file into flags for subcommand `sub`.
fn config_flags(sub: &str, text: &str) -> Result<Vec<String>, String> {
    let cmd = Cli::command();
    let sub_cmd = cmd.find_subcommand(sub).ok_or_else(|| format!("unknown subcommand '{sub}'"))?;
    let mut flags = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let arg = sub_cmd
            .get_arguments()
            .find(|a| a.get_long() == Some(key) && key != "config")
            .ok_or_else(|| format!("config line {}: '{key}' is not an option of {sub}", lineno + 1))?;
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value {
                "true" => flags.push(format!("--{key}")),
                "false" => {}
                _ => return Err(format!("config line {}: '{key}' takes true or false", lineno + 1)),
            }
        } else {
            flags.push(format!("--{key}={value}"));
        }
    }
    Ok(flags)
}

/// `argv` with the config file's flags spliced in right after the
/// subcommand. Errors are config errors.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let (sub, config) = locate(&argv);
    let (Some(sub), Some(path)) = (sub, config) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config '{path}': {e}"))?;
    let flags = config_flags(&argv[sub], &text)?;
    let mut out = argv[..=sub].to_vec();
    out.extend(flags);
    out.extend_from_slice(&argv[sub + 1..]);
    Ok(out)
}
