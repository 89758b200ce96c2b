//! Minimal SVG 1.1 writer: one path per curve, knot markers, and axes
//! labelled with the data extents.

use std::fmt::Write;

use super::io::fmt_num;

/// Fraction of the canvas kept free on every side.
const MARGIN: f64 = 0.05;

pub struct Plot<'a> {
    pub x: &'a [f64],
    pub y: &'a [f64],
    pub knots: Option<(&'a [f64], &'a [f64])>,
    pub width: u32,
    pub height: u32,
    pub title: Option<String>,
}

fn extent(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)));
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn px(v: f64) -> String {
    format!("{v:.3}")
}

pub fn render(plot: &Plot<'_>) -> String {
    let (w, h) = (f64::from(plot.width), f64::from(plot.height));
    let knot_x = plot.knots.map(|k| k.0).unwrap_or(&[]);
    let knot_y = plot.knots.map(|k| k.1).unwrap_or(&[]);
    let (x_lo, x_hi) = extent(plot.x.iter().chain(knot_x).copied());
    let (y_lo, y_hi) = extent(plot.y.iter().chain(knot_y).copied());
    let (left, right) = (MARGIN * w, (1.0 - MARGIN) * w);
    let (top, bottom) = (MARGIN * h, (1.0 - MARGIN) * h);
    let sx = |x: f64| left + (x - x_lo) / (x_hi - x_lo) * (right - left);
    let sy = |y: f64| bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        plot.width, plot.height, plot.width, plot.height
    );
    if let Some(title) = &plot.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, plot.width, plot.height);
    let _ = writeln!(
        out,
        r##"<g stroke="#888" stroke-width="1"><line x1="{l}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{l}" y1="{b}" x2="{l}" y2="{t}"/></g>"##,
        l = px(left),
        r = px(right),
        b = px(bottom),
        t = px(top)
    );
    let font = (0.6 * MARGIN * h).clamp(8.0, 14.0);
    let _ = writeln!(out, r##"<g font-family="sans-serif" font-size="{}" fill="#444">"##, px(font));
    let labels = [
        (left, bottom + font, "start", fmt_num(x_lo)),
        (right, bottom + font, "end", fmt_num(x_hi)),
        (left - 2.0, bottom, "end", fmt_num(y_lo)),
        (left - 2.0, top + font, "end", fmt_num(y_hi)),
    ];
    for (x, y, anchor, text) in labels {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="{anchor}">{text}</text>"#, px(x), px(y));
    }
    let _ = writeln!(out, "</g>");

    let mut d = String::with_capacity(plot.x.len() * 20);
    for (k, (&x, &y)) in plot.x.iter().zip(plot.y).enumerate() {
        let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, px(sx(x)), px(sy(y)));
    }
    let _ = writeln!(out, r##"<path d="{d}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##);

    if !knot_x.is_empty() {
        let _ = writeln!(out, r##"<g fill="#c0392b">"##);
        for (&x, &y) in knot_x.iter().zip(knot_y) {
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, px(sx(x)), px(sy(y)));
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_path_inside_margins() {
        let x = [0.0, 1.0, 2.0];
        let y = [0.0, 4.0, 2.0];
        let svg = render(&Plot {
            x: &x,
            y: &y,
            knots: Some((&x, &y)),
            width: 200,
            height: 100,
            title: Some("a < b".into()),
        });
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(r#"d="M10.000 95.000 L100.000 5.000 L190.000 50.000""#));
        assert!(svg.contains("a &lt; b"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(">4</text>"));
    }
}
