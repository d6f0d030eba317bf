//! Cartesian parameter sweeps over (a, r) with per-cell correlation reports.

use anyhow::{Context, Result};
use rayon::prelude::*;

use qcorr::{analyze, OptimizerOpts, WernerFamily, WernerParams};

use crate::UsageError;

/// A validated sweep request: which family, which parameter values, and the
/// optimizer settings every cell runs with.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub family: WernerFamily,
    pub a_values: Vec<f64>,
    /// Squeeze values for the quasi family; ignored (and normalized to
    /// empty) for the perfect family.
    pub r_values: Vec<f64>,
    pub opts: OptimizerOpts,
}

impl SweepConfig {
    pub fn new(
        family: WernerFamily,
        a_values: Vec<f64>,
        r_values: Vec<f64>,
        opts: OptimizerOpts,
    ) -> Result<Self, UsageError> {
        if a_values.is_empty() {
            return Err(UsageError::new("sweep needs at least one value of a"));
        }
        for &a in &a_values {
            if !(0.0..=1.0).contains(&a) {
                return Err(UsageError::new(format!(
                    "mixing parameter a = {a} is outside [0, 1]"
                )));
            }
        }
        let r_values = match family {
            WernerFamily::Perfect => Vec::new(),
            WernerFamily::Quasi => {
                if r_values.is_empty() {
                    return Err(UsageError::new(
                        "the quasi family needs at least one value of r (use --r)",
                    ));
                }
                for &r in &r_values {
                    if r <= 0.0 {
                        return Err(UsageError::new(format!(
                            "squeeze parameter r = {r} must be > 0"
                        )));
                    }
                }
                r_values
            }
        };
        Ok(Self {
            family,
            a_values,
            r_values,
            opts,
        })
    }
}

/// One sweep cell; the columns of the CSV format, in order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub a: f64,
    pub r: Option<f64>,
    pub concurrence: f64,
    pub discord: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub theta_star: f64,
    pub phi_star: f64,
}

/// Ordered sweep results: outer loop over a, inner loop over r.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// Runs every cell of the sweep. Cells are evaluated in parallel but the row
/// order is fixed by the config, so the output is deterministic. A numerical
/// failure in any cell aborts the sweep with that cell's coordinates.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable> {
    let cells: Vec<(f64, Option<f64>)> = match config.family {
        WernerFamily::Perfect => config.a_values.iter().map(|&a| (a, None)).collect(),
        WernerFamily::Quasi => config
            .a_values
            .iter()
            .flat_map(|&a| config.r_values.iter().map(move |&r| (a, Some(r))))
            .collect(),
    };

    let rows = cells
        .par_iter()
        .map(|&(a, r)| {
            compute_row(config.family, a, r, &config.opts).with_context(|| match r {
                Some(r) => format!("sweep cell a = {a}, r = {r}"),
                None => format!("sweep cell a = {a}"),
            })
        })
        .collect::<Result<Vec<SweepRow>>>()?;

    Ok(SweepTable { rows })
}

fn compute_row(
    family: WernerFamily,
    a: f64,
    r: Option<f64>,
    opts: &OptimizerOpts,
) -> Result<SweepRow> {
    let params = match family {
        WernerFamily::Perfect => WernerParams::perfect(a)?,
        WernerFamily::Quasi => WernerParams::quasi(a, r.expect("quasi cells carry r"))?,
    };
    let rho = params.density()?;
    let report = analyze(&rho, opts)?;
    Ok(SweepRow {
        a,
        r,
        concurrence: report.concurrence,
        discord: report.discord,
        mutual_information: report.mutual_information,
        classical_correlation: report.classical_correlation,
        theta_star: report.theta_star,
        phi_star: report.phi_star,
    })
}
