//! Named figure sweeps bundled with the tool.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use qcorr::{OptimizerOpts, WernerFamily};

use crate::csvio::emit_csv;
use crate::svg::{emit_svg_plot, PlotAxis, BOTH_SERIES};
use crate::sweep::{run_sweep, SweepConfig};

/// The bundled figure presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Quasi family, r = 0.7, mixing sweep a = 0..1.
    Fig1a,
    /// Quasi family, r = 2.5, mixing sweep a = 0..1.
    Fig1b,
    /// Quasi family, a = 0.7, squeeze sweep r = 0.05..3.
    Fig1c,
    /// Perfect family, mixing sweep a = 0..1.
    Fig2,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1a, Preset::Fig1b, Preset::Fig1c, Preset::Fig2];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig1a => "fig1a",
            Preset::Fig1b => "fig1b",
            Preset::Fig1c => "fig1c",
            Preset::Fig2 => "fig2",
        }
    }

    pub fn axis(&self) -> PlotAxis {
        match self {
            Preset::Fig1c => PlotAxis::SqueezeR,
            _ => PlotAxis::MixingA,
        }
    }

    pub fn config(&self) -> SweepConfig {
        let opts = OptimizerOpts::default();
        let a_grid: Vec<f64> = (0..=20).map(|i| (i as f64 * 0.05).min(1.0)).collect();
        let config = match self {
            Preset::Fig1a => SweepConfig::new(WernerFamily::Quasi, a_grid, vec![0.7], opts),
            Preset::Fig1b => SweepConfig::new(WernerFamily::Quasi, a_grid, vec![2.5], opts),
            Preset::Fig1c => {
                let r_grid: Vec<f64> = (1..=60).map(|i| i as f64 * 0.05).collect();
                SweepConfig::new(WernerFamily::Quasi, vec![0.7], r_grid, opts)
            }
            Preset::Fig2 => SweepConfig::new(WernerFamily::Perfect, a_grid, vec![], opts),
        };
        config.expect("preset configurations are valid")
    }
}

/// Runs the preset and writes `<name>.csv` and `<name>.svg` under `out_dir`.
/// Returns the two written paths.
pub fn run_preset(preset: Preset, out_dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    let table = run_sweep(&preset.config())?;
    let csv_path = out_dir.join(format!("{}.csv", preset.name()));
    let svg_path = out_dir.join(format!("{}.svg", preset.name()));
    emit_csv(&table, &csv_path)?;
    emit_svg_plot(&table, preset.axis(), &BOTH_SERIES, &svg_path)?;
    Ok((csv_path, svg_path))
}
