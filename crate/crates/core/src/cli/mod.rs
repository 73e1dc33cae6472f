//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage and validation errors, 3 when a data
//! file (or the output file) cannot be read, parsed or written.

mod svg;
mod table;

pub use table::format_sig;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dielectrics::{optical_state, AbsorptionWavelength, FrequencyPoint};
use crate::error::Error;
use crate::mediadb::{load_database, MediumDatabase};
use crate::pathloss::{BeamSpec, ChannelGeometry};
use crate::sweep::{
    component_attribution, figure_preset, figure_preset_with_points, linspace, run_sweep, Evaluation, Figure,
    FixedParameters, SweepAxis, SweepRequest, FIGURE_MEDIA,
};

/// Environment variable naming the default data file(s), path-list separated.
pub const DATA_ENV: &str = "THZCHAN_DATA";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "thzchan",
    version,
    about = "Terahertz intrabody channel path loss: media, sweeps, figure presets"
)]
struct Cli {
    /// Medium/particle data file (repeatable). Defaults to $THZCHAN_DATA, then the bundled data.
    #[arg(long = "data", value_name = "PATH", global = true)]
    data: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Output file, or '-' for standard output.
    #[arg(long, value_name = "PATH", default_value = "-", global = true)]
    out: String,

    /// Significant digits for numbers in CSV and SVG output.
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u8).range(3..=17), global = true)]
    precision: u8,

    /// Wavelength dividing 4*pi*n'' in the absorption coefficient.
    #[arg(long = "absorption-wavelength", value_enum, default_value_t = AbsorptionArg::Guided, global = true)]
    absorption: AbsorptionArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AbsorptionArg {
    Guided,
    FreeSpace,
}

impl From<AbsorptionArg> for AbsorptionWavelength {
    fn from(a: AbsorptionArg) -> Self {
        match a {
            AbsorptionArg::Guided => AbsorptionWavelength::Guided,
            AbsorptionArg::FreeSpace => AbsorptionWavelength::FreeSpace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl From<FigureName> for Figure {
    fn from(f: FigureName) -> Self {
        match f {
            FigureName::Fig1 => Figure::Fig1,
            FigureName::Fig2 => Figure::Fig2,
            FigureName::Fig3 => Figure::Fig3,
            FigureName::Fig4 => Figure::Fig4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Frequency,
    Distance,
    BeamWidth,
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Frequency => SweepAxis::Frequency,
            AxisArg::Distance => SweepAxis::Distance,
            AxisArg::BeamWidth => SweepAxis::BeamWidth,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optical state of one medium at the given frequencies.
    Medium(MediumArgs),
    /// Sweep one parameter over a linear grid.
    Sweep(SweepArgs),
    /// Run one of the figure presets.
    Figure(FigureArgs),
    /// Per-medium dB span of the total loss over a sweep.
    Attribution(AttributionArgs),
    /// Load the data files and report what they contain.
    Validate,
}

#[derive(Debug, Args)]
struct MediumArgs {
    id: String,
    /// Frequency in Hz (repeatable).
    #[arg(long = "f", value_name = "HZ")]
    f: Vec<f64>,
    /// Free-space wavelength in m (repeatable).
    #[arg(long, value_name = "M")]
    lambda0: Vec<f64>,
    /// Start of a linear frequency grid, Hz.
    #[arg(long, value_name = "HZ", requires_all = ["to", "points"])]
    from: Option<f64>,
    #[arg(long, value_name = "HZ", requires_all = ["from", "points"])]
    to: Option<f64>,
    #[arg(long, requires_all = ["from", "to"])]
    points: Option<usize>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    axis: Option<AxisArg>,
    /// Grid start (Hz, m or rad depending on the axis).
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Fixed frequency, Hz.
    #[arg(long = "f", value_name = "HZ", conflicts_with = "lambda0")]
    f: Option<f64>,
    /// Fixed free-space wavelength, m.
    #[arg(long, value_name = "M")]
    lambda0: Option<f64>,
    /// Fixed path length, m.
    #[arg(long, value_name = "M")]
    distance: Option<f64>,
    /// Fixed Gaussian beam width, rad.
    #[arg(long, value_name = "RAD")]
    beam: Option<f64>,
    /// Comma-separated medium ids.
    #[arg(long, value_delimiter = ',')]
    media: Vec<String>,
    /// Comma-separated particle population ids.
    #[arg(long, value_delimiter = ',')]
    particles: Vec<String>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(value_enum)]
    name: FigureName,
    /// Grid points (default 101).
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Debug, Args)]
struct AttributionArgs {
    /// Figure preset; omit to describe the sweep with flags.
    #[arg(value_enum)]
    figure: Option<FigureName>,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_data_error() {
            CliError::Data(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DATA
        }
    }
}

fn load_data(cli: &Cli) -> Result<MediumDatabase, CliError> {
    if !cli.data.is_empty() {
        return Ok(load_database(&cli.data)?);
    }
    match std::env::var_os(DATA_ENV).filter(|v| !v.is_empty()) {
        Some(v) => {
            let paths: Vec<PathBuf> = std::env::split_paths(&v).collect();
            Ok(load_database(&paths)?)
        }
        None => Ok(MediumDatabase::bundled()),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let db = load_data(cli)?;
    let digits = cli.precision as usize;
    let absorption = AbsorptionWavelength::from(cli.absorption);
    let content = match &cli.command {
        Command::Medium(args) => {
            let grid = medium_grid(args)?;
            let rec = db.get_medium(&args.id)?;
            let states = grid
                .iter()
                .map(|f| {
                    if !rec.medium.band.contains(f.hz()) {
                        return Err(Error::OutOfBand {
                            medium: rec.id.clone(),
                            f_hz: f.hz(),
                            f_min_hz: rec.medium.band.min_hz,
                            f_max_hz: rec.medium.band.max_hz,
                        });
                    }
                    optical_state(&rec.medium.debye, f, absorption)
                })
                .collect::<crate::Result<Vec<_>>>()?;
            match cli.format {
                Format::Csv => table::optical_csv(&states, digits),
                Format::Json => table::optical_json(&rec.id, absorption, &states),
                Format::Svg => return Err(usage("the medium command supports csv and json output")),
            }
        }
        Command::Sweep(args) => {
            let mut req = sweep_request(args, &db)?;
            req.absorption = absorption;
            let result = run_sweep(&db, &req, Evaluation::Parallel)?;
            match cli.format {
                Format::Csv => table::sweep_csv(&result, digits),
                Format::Json => table::json(&result),
                Format::Svg => svg::render(&result, &db, "Path loss sweep", digits),
            }
        }
        Command::Figure(args) => {
            let figure = Figure::from(args.name);
            let mut req = match args.points {
                Some(n) => figure_preset_with_points(figure, n),
                None => figure_preset(figure),
            };
            req.absorption = absorption;
            let result = run_sweep(&db, &req, Evaluation::Parallel)?;
            match cli.format {
                Format::Csv => table::sweep_csv(&result, digits),
                Format::Json => table::json(&result),
                Format::Svg => svg::render(&result, &db, figure.title(), digits),
            }
        }
        Command::Attribution(args) => {
            let mut req = match args.figure {
                Some(name) => {
                    if args.sweep.has_grid_or_fixed_flags() {
                        return Err(usage(
                            "with a figure name only --points may be given; describe custom sweeps without one",
                        ));
                    }
                    match args.sweep.points {
                        Some(n) => figure_preset_with_points(name.into(), n),
                        None => figure_preset(name.into()),
                    }
                }
                None => sweep_request(&args.sweep, &db)?,
            };
            req.absorption = absorption;
            let result = run_sweep(&db, &req, Evaluation::Parallel)?;
            let spans = component_attribution(&result);
            match cli.format {
                Format::Csv => table::attribution_csv(&spans, digits),
                Format::Json => table::json(&serde_json::json!({ "request": result.request, "attribution": spans })),
                Format::Svg => return Err(usage("the attribution command supports csv and json output")),
            }
        }
        Command::Validate => table::validate_report(&db),
    };
    emit(&cli.out, content.as_bytes(), stdout)
}

fn medium_grid(args: &MediumArgs) -> Result<Vec<FrequencyPoint<f64>>, CliError> {
    let sources = [!args.f.is_empty(), !args.lambda0.is_empty(), args.from.is_some()];
    match sources.iter().filter(|s| **s).count() {
        0 => return Err(usage("give frequencies with --f, --lambda0, or --from/--to/--points")),
        1 => {}
        _ => return Err(usage("use only one of --f, --lambda0 and --from/--to/--points")),
    }
    let points = if let (Some(from), Some(to), Some(n)) = (args.from, args.to, args.points) {
        if n < 1 {
            return Err(usage("--points must be at least 1"));
        }
        if n > 1 && !(from < to) {
            return Err(usage("--from must be below --to"));
        }
        linspace(from, to, n)
            .into_iter()
            .map(FrequencyPoint::from_hz)
            .collect::<crate::Result<Vec<_>>>()?
    } else if !args.f.is_empty() {
        args.f
            .iter()
            .map(|&f| FrequencyPoint::from_hz(f))
            .collect::<crate::Result<Vec<_>>>()?
    } else {
        args.lambda0
            .iter()
            .map(|&l| FrequencyPoint::from_lambda0(l))
            .collect::<crate::Result<Vec<_>>>()?
    };
    Ok(points)
}

impl SweepArgs {
    fn has_grid_or_fixed_flags(&self) -> bool {
        self.axis.is_some()
            || self.from.is_some()
            || self.to.is_some()
            || self.f.is_some()
            || self.lambda0.is_some()
            || self.distance.is_some()
            || self.beam.is_some()
            || !self.media.is_empty()
            || !self.particles.is_empty()
    }
}

fn sweep_request(args: &SweepArgs, db: &MediumDatabase) -> Result<SweepRequest, CliError> {
    let axis: SweepAxis = args
        .axis
        .ok_or_else(|| usage("--axis is required (frequency, distance or beam-width)"))?
        .into();
    let (from, to, points) = match (args.from, args.to, args.points) {
        (Some(a), Some(b), Some(n)) => (a, b, n),
        _ => return Err(usage("--from, --to and --points are required")),
    };
    if points < 2 {
        return Err(usage(format!("--points must be at least 2, got {points}")));
    }
    if !(from < to) {
        return Err(usage(format!("--from ({from}) must be below --to ({to})")));
    }
    let frequency = match (args.f, args.lambda0) {
        (Some(f), _) => Some(FrequencyPoint::from_hz(f)?),
        (None, Some(l)) => Some(FrequencyPoint::from_lambda0(l)?),
        (None, None) => None,
    };
    let geometry = args.distance.map(ChannelGeometry::new).transpose()?;
    let beam = args.beam.map(BeamSpec::new).transpose()?;
    let fixed = FixedParameters {
        frequency,
        geometry,
        beam,
    };
    let provided = |present: bool, flag: &str| -> Result<(), CliError> {
        if present {
            Err(usage(format!("{flag} conflicts with --axis {axis}")))
        } else {
            Ok(())
        }
    };
    let required = |present: bool, flag: &str| -> Result<(), CliError> {
        if present {
            Ok(())
        } else {
            Err(usage(format!("a {axis} sweep needs {flag}")))
        }
    };
    match axis {
        SweepAxis::Frequency => {
            provided(fixed.frequency.is_some(), "--f/--lambda0")?;
            required(fixed.geometry.is_some(), "--distance")?;
            required(fixed.beam.is_some(), "--beam")?;
        }
        SweepAxis::Distance => {
            provided(fixed.geometry.is_some(), "--distance")?;
            required(fixed.frequency.is_some(), "--f or --lambda0")?;
            required(fixed.beam.is_some(), "--beam")?;
        }
        SweepAxis::BeamWidth => {
            provided(fixed.beam.is_some(), "--beam")?;
            required(fixed.frequency.is_some(), "--f or --lambda0")?;
            required(fixed.geometry.is_some(), "--distance")?;
        }
    }
    let medium_ids = if args.media.is_empty() {
        FIGURE_MEDIA.iter().map(|s| s.to_string()).collect()
    } else {
        args.media.clone()
    };
    let populations = args
        .particles
        .iter()
        .map(|id| db.get_particle(id).map(|p| p.population))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(SweepRequest {
        medium_ids,
        axis,
        grid: linspace(from, to, points),
        fixed,
        populations,
        absorption: AbsorptionWavelength::Guided,
    })
}

/// Writes to stdout for "-", otherwise replaces `out` atomically.
fn emit(out: &str, content: &[u8], stdout: &mut dyn Write) -> Result<(), CliError> {
    let io_err = |path: &Path, e: std::io::Error| CliError::Data(format!("{}: {e}", path.display()));
    if out == "-" {
        return stdout
            .write_all(content)
            .and_then(|_| stdout.flush())
            .map_err(|e| io_err(Path::new("<stdout>"), e));
    }
    let path = Path::new(out);
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(dir, e))?;
    tmp.write_all(content).map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}
