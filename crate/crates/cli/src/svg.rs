use std::fmt::Write;

use zchan_core::gauss_dpc::DpcPoint;

const WIDTH: f64 = 520.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const SAMPLES: usize = 201;
const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/// Largest R21 in the union of regions at the given (R11, R22), if any
/// region contains that pair.
fn max_r21(points: &[DpcPoint], r11: f64, r22: f64) -> Option<f64> {
    points
        .iter()
        .filter(|p| r22 <= p.bounds.b65 && r11 <= p.bounds.b63.min(p.bounds.b61))
        .map(|p| p.bounds.b62.min(p.bounds.b64 - r22).min(p.bounds.b61 - r11))
        .filter(|v| *v >= 0.0)
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
}

/// R11 to R21 boundary of the union of per-point regions at `levels`
/// evenly spaced R22 values, as a polyline SVG document.
pub fn slice_plot(points: &[DpcPoint], levels: usize) -> String {
    let r22_top = points.iter().map(|p| p.bounds.b65.min(p.bounds.b64)).fold(0.0f64, f64::max);
    let r11_top = points.iter().map(|p| p.bounds.b63.min(p.bounds.b61)).fold(0.0f64, f64::max);
    let r21_top = points.iter().map(|p| p.bounds.b62.min(p.bounds.b64).min(p.bounds.b61)).fold(0.0f64, f64::max);
    let xs = if r11_top > 0.0 { r11_top } else { 1.0 };
    let ys = if r21_top > 0.0 { r21_top } else { 1.0 };
    let (pw, ph) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let px = |x: f64| MARGIN + pw * x / xs;
    let py = |y: f64| HEIGHT - MARGIN - ph * y / ys;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<polyline points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="black"/>"#,
        px(0.0),
        py(ys),
        px(0.0),
        py(0.0),
        px(xs),
        py(0.0)
    );
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12">R11 (max {xs:.4})</text>"#, px(xs) - 110.0, py(0.0) + 30.0);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12">R21 (max {ys:.4})</text>"#, px(0.0) - 40.0, py(ys) - 12.0);
    let levels = levels.max(1);
    for k in 0..levels {
        let r22 = r22_top * k as f64 / levels as f64;
        let mut pts = Vec::new();
        for i in 0..SAMPLES {
            let r11 = xs * i as f64 / (SAMPLES - 1) as f64;
            match max_r21(points, r11, r22) {
                Some(r21) => pts.push(format!("{:.2},{:.2}", px(r11), py(r21))),
                None => break,
            }
        }
        let color = COLORS[k % COLORS.len()];
        if !pts.is_empty() {
            let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, pts.join(" "));
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" fill="{color}">R22 = {r22:.4}</text>"#,
            WIDTH - MARGIN - 100.0,
            MARGIN + 14.0 * k as f64
        );
    }
    s.push_str("</svg>\n");
    s
}
