//! Report files: per-record CSV, summary JSON and an SVG histogram.

use std::fmt::Write as _;

use super::comparison::{ComparisonRecord, ExperimentReport};
use super::stats::DifferenceSummary;
use super::ExperimentError;

pub const RECORDS_HEADER: &str = "string,assembly_index,lzw_codes,lzw_bytes,huffman_bits,entropy";

pub fn records_csv(records: &[ComparisonRecord]) -> Result<String, ExperimentError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        return Ok(format!("{RECORDS_HEADER}\n"));
    }
    let bytes = w.into_inner().map_err(|e| ExperimentError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn summary_json(report: &ExperimentReport) -> Result<String, ExperimentError> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

/// Self-contained SVG bar chart of a difference histogram.
pub fn histogram_svg(summary: &DifferenceSummary, title: &str) -> String {
    const WIDTH: f64 = 640.0;
    const HEIGHT: f64 = 400.0;
    const MARGIN: f64 = 48.0;
    let bins = &summary.histogram;
    let peak = bins.iter().map(|b| b.count).max().unwrap_or(0).max(1) as f64;
    let slot = (WIDTH - 2.0 * MARGIN) / bins.len().max(1) as f64;
    let plot_height = HEIGHT - 2.0 * MARGIN;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
    for (i, b) in bins.iter().enumerate() {
        let h = b.count as f64 / peak * plot_height;
        let x = MARGIN + i as f64 * slot;
        let y = HEIGHT - MARGIN - h;
        let _ = writeln!(
            svg,
            r##"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{h:.2}" fill="#4a78a8"><title>{}: {}</title></rect>"##,
            (slot - 2.0).max(1.0),
            b.lower,
            b.count
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            x + slot / 2.0,
            HEIGHT - MARGIN + 16.0,
            b.lower
        );
    }
    let axis_y = HEIGHT - MARGIN;
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(svg, r#"<text x="{MARGIN}" y="{}">max count {}</text>"#, MARGIN - 8.0, peak as u64);
    svg.push_str("</svg>\n");
    svg
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
