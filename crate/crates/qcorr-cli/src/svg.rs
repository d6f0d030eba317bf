//! Self-contained SVG line plots of sweep tables.
//!
//! Fixed styling on purpose: an 800x600 viewport, one solid polyline per
//! series, numeric tick labels and a legend, so the output is
//! regression-testable byte for byte.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use crate::csvio::format_significant;
use crate::sweep::SweepTable;
use crate::UsageError;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 52.0;
const MARGIN_BOTTOM: f64 = 62.0;
const TICKS: usize = 5;

/// Which swept parameter runs along the horizontal axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotAxis {
    MixingA,
    SqueezeR,
}

impl PlotAxis {
    fn label(&self) -> &'static str {
        match self {
            PlotAxis::MixingA => "a",
            PlotAxis::SqueezeR => "r",
        }
    }
}

/// Plottable quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    Discord,
    Concurrence,
}

impl Series {
    fn label(&self) -> &'static str {
        match self {
            Series::Discord => "discord",
            Series::Concurrence => "concurrence",
        }
    }

    fn color(&self) -> &'static str {
        match self {
            Series::Discord => "#1f77b4",
            Series::Concurrence => "#d62728",
        }
    }

    fn value(&self, row: &crate::sweep::SweepRow) -> f64 {
        match self {
            Series::Discord => row.discord,
            Series::Concurrence => row.concurrence,
        }
    }
}

pub const BOTH_SERIES: [Series; 2] = [Series::Discord, Series::Concurrence];

/// Renders the plot, or explains why the table cannot be plotted along the
/// requested axis.
pub fn render_svg(
    table: &SweepTable,
    axis: PlotAxis,
    series: &[Series],
) -> Result<String, UsageError> {
    if series.is_empty() {
        return Err(UsageError::new("no series selected"));
    }
    if table.rows.len() < 2 {
        return Err(UsageError::new(
            "nothing to plot: need at least two points along the axis",
        ));
    }

    let xs: Vec<f64> = match axis {
        PlotAxis::MixingA => {
            ensure_fixed("r", table.rows.iter().map(|row| row.r.unwrap_or(f64::NAN)))?;
            table.rows.iter().map(|row| row.a).collect()
        }
        PlotAxis::SqueezeR => {
            if table.rows.iter().any(|row| row.r.is_none()) {
                return Err(UsageError::new(
                    "cannot plot against r: the table has empty r fields (perfect family)",
                ));
            }
            ensure_fixed("a", table.rows.iter().map(|row| row.a))?;
            table.rows.iter().map(|row| row.r.unwrap()).collect()
        }
    };

    let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let x_max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if x_max - x_min < 1e-12 {
        return Err(UsageError::new(
            "nothing to plot: the chosen axis does not vary",
        ));
    }

    let mut y_max: f64 = 0.0;
    for s in series {
        for row in &table.rows {
            y_max = y_max.max(s.value(row));
        }
    }
    let y_max = (y_max * 1.08).max(1e-9);
    let y_min = 0.0;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| -> (f64, f64) {
        (
            MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w,
            MARGIN_TOP + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h,
        )
    };

    let title = plot_title(table, axis);
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"400\" y=\"28\" font-family=\"sans-serif\" font-size=\"17\" text-anchor=\"middle\">{}</text>\n",
        escape_xml(&title)
    ));

    // Axes.
    let (x0, y0) = (MARGIN_LEFT, MARGIN_TOP + plot_h);
    svg.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y0}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        MARGIN_LEFT + plot_w
    ));
    svg.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{MARGIN_TOP}\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));

    // Ticks and numeric labels.
    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let xv = x_min + frac * (x_max - x_min);
        let (px, _) = to_px(xv, 0.0);
        svg.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{y0}\" x2=\"{px:.2}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            y0 + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            y0 + 20.0,
            format_significant(xv, 4)
        ));

        let yv = y_min + frac * (y_max - y_min);
        let (_, py) = to_px(x_min, yv);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{py:.2}\" x2=\"{x0}\" y2=\"{py:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            x0 - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
            x0 - 9.0,
            py + 4.0,
            format_significant(yv, 4)
        ));
    }

    // Axis titles.
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        axis.label()
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">correlation (bits)</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    ));

    // One polyline per series.
    for s in series {
        let points: Vec<String> = table
            .rows
            .iter()
            .zip(&xs)
            .map(|(row, &x)| {
                let (px, py) = to_px(x, s.value(row));
                format!("{px:.2},{py:.2}")
            })
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
            s.color(),
            points.join(" ")
        ));
    }

    // Legend, top-right corner of the plot area.
    let legend_x = MARGIN_LEFT + plot_w - 170.0;
    let mut legend_y = MARGIN_TOP + 16.0;
    svg.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"160\" height=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"0.5\"/>\n",
        legend_x - 8.0,
        legend_y - 14.0,
        series.len() as f64 * 20.0 + 8.0
    ));
    for s in series {
        svg.push_str(&format!(
            "<line x1=\"{legend_x:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
            legend_y - 4.0,
            legend_x + 28.0,
            legend_y - 4.0,
            s.color()
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{legend_y:.2}\" font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
            legend_x + 36.0,
            s.label()
        ));
        legend_y += 20.0;
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders and writes the plot to `path`.
pub fn emit_svg_plot(
    table: &SweepTable,
    axis: PlotAxis,
    series: &[Series],
    path: &Path,
) -> Result<()> {
    let svg = render_svg(table, axis, series)?;
    fs::write(path, svg).with_context(|| format!("cannot write SVG to {}", path.display()))
}

fn ensure_fixed(name: &str, mut values: impl Iterator<Item = f64>) -> Result<(), UsageError> {
    let first = values.next().expect("table is nonempty");
    for v in values {
        let same = if first.is_nan() {
            v.is_nan()
        } else {
            (v - first).abs() <= 1e-12
        };
        if !same {
            return Err(UsageError::new(format!(
                "mixed fixed parameters: `{name}` varies across rows; sweep one axis at a time"
            )));
        }
    }
    Ok(())
}

fn plot_title(table: &SweepTable, axis: PlotAxis) -> String {
    let first = &table.rows[0];
    match (axis, first.r) {
        (PlotAxis::MixingA, Some(r)) => format!(
            "quasi-Werner (r = {}): discord and concurrence vs a",
            format_significant(r, 6)
        ),
        (PlotAxis::MixingA, None) => "perfect-Werner: discord and concurrence vs a".to_string(),
        (PlotAxis::SqueezeR, _) => format!(
            "quasi-Werner (a = {}): discord and concurrence vs r",
            format_significant(first.a, 6)
        ),
    }
}

fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
