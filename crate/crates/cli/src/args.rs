use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixfv::SchemeKind;

#[derive(Debug, Parser)]
#[command(name = "mixfv", version, about = "Two-component compressible flow solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one case with one scheme and write its output.
    Run(RunArgs),
    /// Run every combination of the given schemes and cell counts.
    Sweep(SweepArgs),
    /// Build the fine-grid Rusanov reference of a 1D case into the cache.
    Reference(ReferenceArgs),
    /// Print the registered case names, one per line.
    ListCases,
    /// Print the scheme names, one per line.
    ListSchemes,
    /// Print a registered case as TOML, usable with --case-file.
    ShowCase {
        #[arg(long)]
        case: String,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct CaseSource {
    /// Registered case name (see list-cases).
    #[arg(long)]
    pub case: Option<String>,
    /// Case definition in TOML (see show-case).
    #[arg(long, value_name = "PATH")]
    pub case_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// CFL number; defaults to the case's value.
    #[arg(long)]
    pub cfl: Option<f64>,
    /// End time; defaults to the case's value.
    #[arg(long, value_name = "T")]
    pub t_end: Option<f64>,
    /// Output format; inferred from the --out extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Row of a 2D field to write as CSV, e.g. y=0.5.
    #[arg(long, value_name = "y=VALUE", value_parser = parse_slice)]
    pub slice: Option<f64>,
    /// Also write `<stem>.metrics`.
    #[arg(long)]
    pub metrics: bool,
    /// Directory of cached reference solutions used by --metrics.
    #[arg(long, value_name = "DIR", default_value = "refcache")]
    pub ref_cache: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: CaseSource,
    /// Numerical scheme (see list-schemes).
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: SchemeKind,
    /// N for 1D, NXxNY for 2D; defaults to the case's grid.
    #[arg(long, value_name = "N|NXxNY", value_parser = parse_cells)]
    pub cells: Option<Cells>,
    /// Output file; defaults to `<case>_<scheme>.<format>`.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: CaseSource,
    /// Comma-separated schemes.
    #[arg(long = "scheme", value_delimiter = ',', required = true, value_parser = parse_scheme)]
    pub schemes: Vec<SchemeKind>,
    /// Comma-separated grids, e.g. 50,100,200 or 100x100,200x200.
    #[arg(long = "cells", value_delimiter = ',', required = true, value_parser = parse_cells)]
    pub cells: Vec<Cells>,
    /// Directory receiving `<case>_<scheme>_<cells>.<format>` files.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ReferenceArgs {
    #[command(flatten)]
    pub source: CaseSource,
    #[arg(long, default_value_t = mixfv::diagnostics::REFERENCE_CELLS)]
    pub cells: usize,
    /// End time; defaults to the case's value.
    #[arg(long, value_name = "T")]
    pub t_end: Option<f64>,
    #[arg(long, value_name = "DIR", default_value = "refcache")]
    pub ref_cache: PathBuf,
    /// Also copy the reference profile to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Vtk,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Vtk => "vtk",
        }
    }
}

fn parse_scheme(s: &str) -> Result<SchemeKind, String> {
    s.parse::<SchemeKind>().map_err(|e| e.to_string())
}

/// Cell counts per axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cells(pub Vec<usize>);

pub fn parse_cells(s: &str) -> Result<Cells, String> {
    let parts: Vec<&str> = s.split(['x', 'X']).collect();
    if parts.len() > 2 {
        return Err(format!("expected N or NXxNY, got '{s}'"));
    }
    parts
        .iter()
        .map(|p| match p.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("expected N or NXxNY with positive integers, got '{s}'")),
        })
        .collect::<Result<_, _>>()
        .map(Cells)
}

pub fn parse_slice(s: &str) -> Result<f64, String> {
    let value = s
        .strip_prefix("y=")
        .ok_or_else(|| format!("expected y=VALUE, got '{s}'"))?;
    value
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("expected a number after y=, got '{value}'"))
}
