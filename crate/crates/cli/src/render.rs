//! Text output: fixed-precision numbers, CSV rows and SVG frames.

use std::fmt::Write;

use hypkonvex::geom::Vec2;

/// Boundary points per SVG frame.
pub const BOUNDARY_POINTS: usize = 720;

/// Half-width of the SVG viewport.
const VIEW: f64 = 4.0;

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(values: &[f64]) -> String {
    let mut row = values.iter().map(|v| fmt17(*v)).collect::<Vec<_>>().join(",");
    row.push('\n');
    row
}

/// One frame in the fixed viewport `[−4, 4]²`, y pointing up. Bodies that
/// do not fit are shrunk and flagged.
pub fn svg(boundary: &[Vec2], t: f64) -> String {
    let extent = boundary.iter().map(|p| p.x.abs().max(p.y.abs())).fold(0.0, f64::max);
    let scale = if extent > 0.95 * VIEW { 0.95 * VIEW / extent } else { 1.0 };
    if scale < 1.0 {
        log::warn!("frame at t = {t}: body scaled by {scale:.3} to fit the viewport");
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="400" height="400">"#,
        -VIEW,
        -VIEW,
        2.0 * VIEW,
        2.0 * VIEW
    );
    let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#, -VIEW, -VIEW, 2.0 * VIEW, 2.0 * VIEW);
    let points: Vec<String> = boundary.iter().map(|p| format!("{:.6},{:.6}", scale * p.x, -scale * p.y)).collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="0.02"/>"#, points.join(" "));
    let _ = writeln!(s, r#"<circle cx="0" cy="0" r="0.04" fill="red"/>"#);
    let _ = writeln!(s, r#"<text x="-3.9" y="-3.6" font-size="0.3">t = {t:.4}</text>"#);
    if scale < 1.0 {
        let _ = writeln!(s, r#"<text x="-3.9" y="3.8" font-size="0.3" fill="red">scaled by {scale:.4}</text>"#);
    }
    s.push_str("</svg>\n");
    s
}
