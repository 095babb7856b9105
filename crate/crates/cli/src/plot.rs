use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 50.0;

/// Scatter of `(n, trees_found)` over the guarantee line `reference(n)`.
pub fn svg(points: &[(usize, usize)], reference: impl Fn(f64) -> f64, label: &str) -> String {
    let n_lo = points.iter().map(|p| p.0).min().unwrap_or(0) as f64;
    let n_hi = (points.iter().map(|p| p.0).max().unwrap_or(1) as f64).max(n_lo + 1.0);
    let y_hi = points
        .iter()
        .map(|p| p.1 as f64)
        .chain([reference(n_lo), reference(n_hi)])
        .fold(1.0f64, f64::max);
    let x = |n: f64| PAD + (n - n_lo) / (n_hi - n_lo) * (W - 2.0 * PAD);
    let y = |v: f64| H - PAD - v.max(0.0) / y_hi * (H - 2.0 * PAD);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<line x1="{PAD}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/><line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{0}" stroke="black"/>"#,
        H - PAD,
        W - PAD
    )
    .unwrap();
    writeln!(s, r#"<text x="{}" y="{}">n ({n_lo}..{n_hi})</text>"#, W / 2.0 - 30.0, H - 15.0).unwrap();
    writeln!(s, r#"<text x="5" y="{}">trees (max {y_hi})</text>"#, PAD - 15.0).unwrap();
    writeln!(
        s,
        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="red"/><text x="{:.1}" y="{:.1}" fill="red">{label}</text>"#,
        x(n_lo),
        y(reference(n_lo)),
        x(n_hi),
        y(reference(n_hi)),
        W - PAD - 60.0,
        y(reference(n_hi)) - 6.0
    )
    .unwrap();
    for &(n, t) in points {
        writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="navy"/>"#, x(n as f64), y(t as f64)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
