//! Drivers behind the `hypvol` binary.
//!
//! [`RunConfig`] is built from command-line arguments by [`Cli`]; [`render`]
//! produces the report text and [`run`] writes it out.

mod emit;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hypvol::bounds::{cosh_e, cosh_m, v_single, y_piece, Y_PIECES};
use hypvol::certify::{
    grid_123, grid_1235, piece_123, pieces_1235, select_regime, truncate3, CertReport, Certifier,
    GridSpec, Precision, Rect, Regime,
};
use serde::Serialize;

pub use emit::FORMAT_VERSION;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] hypvol::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const CONFIG: u8 = 2;
    pub const DOMAIN: u8 = 3;
    pub const CAMPAIGN_FAILURE: u8 = 4;
    pub const IO: u8 = 5;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use hypvol::Error as E;
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Core(E::InvalidRect { .. } | E::InvalidGrid(_)) => exit::CONFIG,
            CliError::Core(E::CampaignFailure { .. }) => exit::CAMPAIGN_FAILURE,
            CliError::Core(_) => exit::DOMAIN,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => exit::IO,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Single-muffin bounds at the left end of each piece of Y.
    Table1,
    /// The seven rectangles with cosh l1 in [1.24, 1.5).
    Campaign1235,
    /// The rectangle with cosh l1 in [1.23, 1.24] and no (1,1,1)-hexagon.
    Campaign123,
    /// A user rectangle given by --rect.
    Rect,
    /// Curves of the l2 lower bounds and of Y.
    Plot,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table1 => "table1",
            Command::Campaign1235 => "campaign1235",
            Command::Campaign123 => "campaign123",
            Command::Rect => "rect",
            Command::Plot => "plot",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "hypvol",
    version,
    about = "Certified volume bounds for muffin decompositions"
)]
pub struct Cli {
    /// Command to run.
    #[arg(value_enum, required_unless_present = "command_flag")]
    command: Option<Command>,

    /// Command to run, as an option.
    #[arg(long = "command", value_enum, conflicts_with = "command")]
    command_flag: Option<Command>,

    /// Rectangle `a,b,c,d` for the rect command.
    #[arg(long, value_name = "A,B,C,D")]
    rect: Option<String>,

    /// Cell size `DXxDY`.
    #[arg(long, value_name = "DXxDY")]
    grid: Option<String>,

    /// Feasibility regime; chosen per rectangle when omitted.
    #[arg(long)]
    regime: Option<String>,

    /// Evaluate cells in outward-rounded interval arithmetic.
    #[arg(long)]
    rigor: bool,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also write every feasible cell here (JSON for a `.json` path, CSV otherwise).
    #[arg(long, value_name = "PATH")]
    cells: Option<PathBuf>,

    /// Worker threads; defaults to the hardware parallelism.
    #[arg(long, env = "HYPVOL_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub rect: Option<Rect>,
    pub grid: Option<GridSpec>,
    pub regime: Option<Regime>,
    pub rigor: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cells: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn parse_rect(s: &str) -> Result<Rect, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("--rect expects four numbers, got {s:?}")))?;
    let [a, b, c, d] = v[..] else {
        return Err(CliError::Config(format!(
            "--rect expects four numbers, got {s:?}"
        )));
    };
    Ok(Rect::new(a, b, c, d)?)
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let command = cli
            .command
            .or(cli.command_flag)
            .ok_or_else(|| CliError::Config("no command given".into()))?;
        let rect = cli.rect.as_deref().map(parse_rect).transpose()?;
        if command == Command::Rect && rect.is_none() {
            return Err(CliError::Config("rect needs --rect a,b,c,d".into()));
        }
        let grid = cli
            .grid
            .as_deref()
            .map(str::parse::<GridSpec>)
            .transpose()?;
        let regime = cli
            .regime
            .as_deref()
            .map(str::parse::<Regime>)
            .transpose()
            .map_err(CliError::Config)?;
        if cli.threads == Some(0) {
            return Err(CliError::Config("thread count must be positive".into()));
        }
        Ok(RunConfig {
            command,
            rect,
            grid,
            regime,
            rigor: cli.rigor,
            format: cli.format,
            out: cli.out,
            cells: cli.cells,
            threads: cli.threads,
        })
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            rect: None,
            grid: None,
            regime: None,
            rigor: false,
            format: Format::Text,
            out: None,
            cells: None,
            threads: None,
        }
    }

    /// Parses a full argument list, program name first.
    pub fn from_args<I, T>(args: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| CliError::Config(e.to_string()))?;
        RunConfig::try_from(cli)
    }

    fn precision(&self) -> Precision {
        if self.rigor {
            Precision::Binary64Interval
        } else {
            Precision::Binary64
        }
    }
}

/// One row of the single-muffin table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub x: f64,
    pub y: f64,
    pub volume: f64,
    pub volume_truncated: f64,
}

/// One sample of the plotted curves; `None` where a curve is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotRow {
    pub x: f64,
    pub cosh_e: Option<f64>,
    pub cosh_m: Option<f64>,
    pub diagonal: f64,
    pub y: Option<f64>,
}

/// Everything a command produces before formatting.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Table(Vec<TableRow>),
    Reports(Vec<CertReport>),
    Plot(Vec<PlotRow>),
}

/// Sampled `x` range and step of the plot command.
pub const PLOT_RANGE: (f64, f64, f64) = (1.18, 1.5, 0.001);

pub fn table1() -> Result<Vec<TableRow>, CliError> {
    Y_PIECES
        .iter()
        .map(|&(x, _, _)| (x, y_piece(x)))
        .map(|(x, y)| {
            let y = y?;
            let volume = v_single(x, y.acosh() / 2.0)?;
            Ok(TableRow {
                x,
                y,
                volume,
                volume_truncated: truncate3(volume),
            })
        })
        .collect()
}

pub fn plot_rows() -> Vec<PlotRow> {
    let (lo, hi, step) = PLOT_RANGE;
    let n = ((hi - lo) / step).round() as usize;
    (0..=n)
        .map(|i| {
            let x = ((lo + i as f64 * step) * 1e12).round() / 1e12;
            PlotRow {
                x,
                cosh_e: cosh_e(x).ok(),
                cosh_m: cosh_m(x).ok(),
                diagonal: x,
                y: y_piece(x).ok(),
            }
        })
        .collect()
}

/// Runs the command without writing anything.
pub fn compute(config: &RunConfig) -> Result<Output, CliError> {
    let certifier = Certifier::new()
        .precision(config.precision())
        .threads(config.threads)
        .keep_cells(config.cells.is_some());
    let precision = config.precision();
    let output = match config.command {
        Command::Table1 => Output::Table(table1()?),
        Command::Plot => Output::Plot(plot_rows()),
        Command::Campaign1235 => {
            let grid = config.grid.unwrap_or_else(grid_1235);
            let reports = pieces_1235(precision)
                .into_iter()
                .map(|p| certifier.certify(&p.rect, &grid, config.regime.unwrap_or(p.regime)))
                .collect::<Result<_, _>>()?;
            Output::Reports(reports)
        }
        Command::Campaign123 => {
            let grid = config.grid.unwrap_or_else(grid_123);
            let p = piece_123(precision);
            let regime = config.regime.unwrap_or(p.regime);
            Output::Reports(vec![certifier.certify(&p.rect, &grid, regime)?])
        }
        Command::Rect => {
            let rect = config
                .rect
                .ok_or_else(|| CliError::Config("rect needs --rect a,b,c,d".into()))?;
            let grid = config.grid.unwrap_or_else(grid_1235);
            let regime = config
                .regime
                .unwrap_or_else(|| select_regime(rect.a, rect.b));
            Output::Reports(vec![certifier.certify(&rect, &grid, regime)?])
        }
    };
    Ok(output)
}

/// Formatted report, and the cell dump when one was requested.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub report: String,
    pub cells: Option<String>,
}

pub fn render(config: &RunConfig) -> Result<Rendered, CliError> {
    let output = compute(config)?;
    let report = emit::report(config, &output)?;
    let cells = match (&config.cells, &output) {
        (Some(path), Output::Reports(reports)) => {
            let json = path.extension().is_some_and(|e| e == "json");
            Some(emit::cells(reports, json)?)
        }
        _ => None,
    };
    Ok(Rendered { report, cells })
}

/// Runs the command and writes its outputs.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let rendered = render(config)?;
    match &config.out {
        Some(path) => fs::write(path, &rendered.report)?,
        None => io::stdout().lock().write_all(rendered.report.as_bytes())?,
    }
    if let (Some(path), Some(cells)) = (&config.cells, &rendered.cells) {
        fs::write(path, cells)?;
    }
    Ok(())
}
