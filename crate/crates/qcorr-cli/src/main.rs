//! Command-line front end: sweeps, plots, single-point reports, presets and
//! the verification suite.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on numerical or
//! verification failures.

use std::fs;
use std::path::PathBuf;
use std::process;

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use qcorr::{analyze, OptimizerOpts, WernerFamily, WernerParams};
use qcorr_cli::csvio::{emit_csv, parse_csv, row_to_json, table_to_json};
use qcorr_cli::presets::{run_preset, Preset};
use qcorr_cli::range::parse_values;
use qcorr_cli::svg::{emit_svg_plot, PlotAxis, BOTH_SERIES};
use qcorr_cli::sweep::{run_sweep, SweepConfig, SweepRow};
use qcorr_cli::verify::{print_report, run_verification, VerifyMode};
use qcorr_cli::UsageError;

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Quantum discord and concurrence for Werner states built from squeezed-state qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Perfect,
    Quasi,
}

impl From<FamilyArg> for WernerFamily {
    fn from(value: FamilyArg) -> Self {
        match value {
            FamilyArg::Perfect => WernerFamily::Perfect,
            FamilyArg::Quasi => WernerFamily::Quasi,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    A,
    R,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig2,
}

impl From<PresetArg> for Preset {
    fn from(value: PresetArg) -> Self {
        match value {
            PresetArg::Fig1a => Preset::Fig1a,
            PresetArg::Fig1b => Preset::Fig1b,
            PresetArg::Fig1c => Preset::Fig1c,
            PresetArg::Fig2 => Preset::Fig2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the correlation measures over (a, r) and write CSV or JSON.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Mixing values: `start:stop:step`, a comma list, or one number.
        #[arg(long)]
        a: String,
        /// Squeeze values (quasi family only), same syntax.
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Measurement-grid density per angle for the discord optimizer.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Refinement tolerance on the minimized conditional entropy, bits.
        #[arg(long, default_value_t = 1e-9)]
        refine_tol: f64,
    },
    /// Render a sweep CSV as a self-contained SVG line plot.
    Plot {
        /// Input CSV produced by `sweep` or `preset`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Horizontal axis: the parameter that varies in the input.
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyze one state and print its correlation report.
    Point {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        r: Option<f64>,
        /// Emit a flat JSON object instead of key = value lines.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        refine_tol: f64,
    },
    /// Re-run the oracle equivalence checks and report residuals.
    Verify {
        /// Use the dense 1024x1024 measurement grid at five states.
        #[arg(long)]
        full: bool,
    },
    /// Run a bundled figure sweep, writing `<name>.csv` and `<name>.svg`.
    Preset {
        #[arg(value_enum)]
        name: PresetArg,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        let code = if err.is::<UsageError>() { 1 } else { 2 };
        process::exit(code);
    }
}

fn optimizer_opts(grid: usize, refine_tol: f64) -> Result<OptimizerOpts, UsageError> {
    if grid < 2 {
        return Err(UsageError::new("--grid must be at least 2"));
    }
    if !refine_tol.is_finite() || refine_tol <= 0.0 {
        return Err(UsageError::new("--refine-tol must be > 0"));
    }
    Ok(OptimizerOpts {
        grid_theta: grid,
        grid_phi: grid,
        refine_tol,
        ..OptimizerOpts::default()
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep {
            family,
            a,
            r,
            out,
            format,
            grid,
            refine_tol,
        } => {
            let a_values = parse_values(&a)?;
            let r_values = match &r {
                Some(spec) => parse_values(spec)?,
                None => Vec::new(),
            };
            let opts = optimizer_opts(grid, refine_tol)?;
            let config = SweepConfig::new(family.into(), a_values, r_values, opts)?;
            let table = run_sweep(&config)?;
            match format {
                FormatArg::Csv => emit_csv(&table, &out)?,
                FormatArg::Json => fs::write(&out, table_to_json(&table))
                    .with_context(|| format!("cannot write JSON to {}", out.display()))?,
            }
            eprintln!("wrote {} rows to {}", table.rows.len(), out.display());
            Ok(())
        }
        Command::Plot { input, axis, out } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let table = parse_csv(&text)?;
            let axis = match axis {
                AxisArg::A => PlotAxis::MixingA,
                AxisArg::R => PlotAxis::SqueezeR,
            };
            emit_svg_plot(&table, axis, &BOTH_SERIES, &out)?;
            eprintln!("wrote {}", out.display());
            Ok(())
        }
        Command::Point {
            family,
            a,
            r,
            json,
            grid,
            refine_tol,
        } => {
            let params = match (family, r) {
                (FamilyArg::Perfect, _) => WernerParams::perfect(a),
                (FamilyArg::Quasi, Some(r)) => WernerParams::quasi(a, r),
                (FamilyArg::Quasi, None) => {
                    return Err(UsageError::new("the quasi family needs --r").into())
                }
            }
            .map_err(|e| UsageError::new(e.to_string()))?;
            let opts = optimizer_opts(grid, refine_tol)?;
            let report = analyze(&params.density()?, &opts)?;
            let row = SweepRow {
                a,
                r: params.r(),
                concurrence: report.concurrence,
                discord: report.discord,
                mutual_information: report.mutual_information,
                classical_correlation: report.classical_correlation,
                theta_star: report.theta_star,
                phi_star: report.phi_star,
            };
            if json {
                println!("{}", row_to_json(&row));
            } else {
                println!("family = {}", params.family().label());
                println!("a = {}", fmt12(row.a));
                match row.r {
                    Some(r) => println!("r = {}", fmt12(r)),
                    None => println!("r ="),
                }
                println!("concurrence = {}", fmt12(row.concurrence));
                println!("discord = {}", fmt12(row.discord));
                println!("mutual_information = {}", fmt12(row.mutual_information));
                println!(
                    "classical_correlation = {}",
                    fmt12(row.classical_correlation)
                );
                println!("theta_star = {}", fmt12(row.theta_star));
                println!("phi_star = {}", fmt12(row.phi_star));
            }
            Ok(())
        }
        Command::Verify { full } => {
            let mode = if full {
                VerifyMode::Full
            } else {
                VerifyMode::Quick
            };
            let checks = run_verification(mode)?;
            if print_report(&checks) {
                Ok(())
            } else {
                Err(anyhow!("verification failed"))
            }
        }
        Command::Preset { name, out_dir } => {
            let (csv, svg) = run_preset(name.into(), &out_dir)?;
            eprintln!("wrote {} and {}", csv.display(), svg.display());
            Ok(())
        }
    }
}

fn fmt12(x: f64) -> String {
    qcorr_cli::csvio::format_significant(x, 12)
}
