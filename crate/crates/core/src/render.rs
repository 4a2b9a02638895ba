//! Plain-text rendering of traces and comparison reports.

use std::fmt::Write as _;

use crate::engine::ComparisonReport;
use crate::trace::{replay, CarryDirection, Grid, GridSpec, MainStep, Metrics, Pane, Trace};

/// Widest line the grid rendering produces; wider grids are split into bands
/// of columns.
pub const MAX_WIDTH: usize = 120;

pub fn render_trace(trace: &Trace) -> String {
    let mut out = String::new();
    let operands: Vec<String> = trace.operands.iter().map(|o| o.to_string()).collect();
    let _ = writeln!(out, "Method:   {}", trace.method_id);
    let _ = writeln!(out, "Operands: {}", operands.join(", "));
    let _ = writeln!(out, "Result:   {}", trace.result);
    if let Some(rem) = trace.remainder() {
        let _ = writeln!(out, "Remainder: {rem}");
    }
    out.push('\n');

    match replay(trace) {
        Ok(grids) => {
            for (pane, grid) in &grids {
                let _ = writeln!(out, "Grid ({pane}):");
                out.push_str(&render_grid(&trace.layouts[pane], grid));
                out.push('\n');
            }
        }
        Err(e) => {
            let _ = writeln!(out, "Grid unavailable: {e}\n");
        }
    }

    out.push_str("Steps:\n");
    for step in &trace.steps {
        render_step(&mut out, step, trace);
    }
    out.push('\n');
    out.push_str(&render_metrics(&trace.metrics));
    out
}

fn render_step(out: &mut String, step: &MainStep, trace: &Trace) {
    let _ = writeln!(out, "{:>3}. {}", step.index + 1, step.description);
    let pane = step
        .writes
        .first()
        .map(|w| w.cell.pane)
        .or_else(|| trace.layouts.keys().next().copied())
        .unwrap_or(Pane::Vedic);
    if trace.latent_display.shows(pane) {
        for op in &step.sub_ops {
            let _ = writeln!(out, "       {op}");
        }
    }
    if let Some(note) = &step.carry_note {
        let verb = match note.direction {
            CarryDirection::Carry => "carry",
            CarryDirection::Borrow => "borrow",
        };
        let _ = writeln!(out, "       ({verb} {} at column {})", note.value, note.target_col);
    }
}

fn render_metrics(m: &Metrics) -> String {
    format!(
        "Metrics: digit multiplications {}, digit additions {}, carries {}, main steps {}, basic ops {}\n",
        m.digit_multiplications, m.digit_additions, m.carries, m.main_steps, m.basic_ops
    )
}

/// Rows top to bottom, columns most significant first.
pub fn render_grid(spec: &GridSpec, grid: &Grid) -> String {
    let labels: Vec<String> = (0..grid.rows)
        .map(|r| spec.block_for_row(r).map(|b| b.label.clone()).unwrap_or_default())
        .collect();
    let label_width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let cell_width = (0..grid.rows)
        .flat_map(|r| (0..grid.cols).map(move |c| (r, c)))
        .filter_map(|(r, c)| grid.get(r, c))
        .map(str::len)
        .max()
        .unwrap_or(1);
    let prefix = label_width + 5;
    let per_band = ((MAX_WIDTH.saturating_sub(prefix)) / (cell_width + 1)).max(1);

    let mut out = String::new();
    let mut high = grid.cols;
    while high > 0 {
        let low = high.saturating_sub(per_band);
        if grid.cols > per_band {
            let _ = writeln!(out, "  columns {}..{}", high - 1, low);
        }
        for (r, label) in labels.iter().enumerate() {
            let mut line = format!("  {label:<label_width$} |");
            for c in (low..high).rev() {
                let token = grid.get(r, c).unwrap_or("·");
                let _ = write!(line, " {token:>cell_width$}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        high = low;
    }
    out
}

pub fn render_comparison(report: &ComparisonReport) -> String {
    let mut out = String::new();
    out.push_str("== Vedic ==\n");
    out.push_str(&render_trace(&report.vedic));
    out.push_str("\n== Traditional ==\n");
    out.push_str(&render_trace(&report.traditional));
    let d = &report.deltas;
    let (v, t) = (&report.vedic.metrics, &report.traditional.metrics);
    out.push_str("\n== Comparison (vedic − traditional) ==\n");
    let rows = [
        ("digit multiplications", v.digit_multiplications, t.digit_multiplications, d.digit_multiplications),
        ("digit additions", v.digit_additions, t.digit_additions, d.digit_additions),
        ("carries", v.carries, t.carries, d.carries),
        ("main steps", v.main_steps, t.main_steps, d.main_steps),
        ("basic ops", v.basic_ops, t.basic_ops, d.basic_ops),
    ];
    let _ = writeln!(out, "  {:<22} {:>8} {:>12} {:>8}", "metric", "vedic", "traditional", "delta");
    for (name, a, b, delta) in rows {
        let _ = writeln!(out, "  {name:<22} {a:>8} {b:>12} {delta:>+8}");
    }
    out
}
