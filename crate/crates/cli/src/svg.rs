//! Bare-bones SVG: axes, bars, polylines, dots and heat maps.

use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 50.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone, y_from_zero: bool) -> Self {
        let finite = |it: &mut dyn Iterator<Item = f64>| -> (f64, f64) {
            it.filter(|v| v.is_finite())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)))
        };
        let (mut x0, mut x1) = finite(&mut xs.clone());
        let (mut y0, mut y1) = finite(&mut ys.clone());
        if y_from_zero {
            y0 = y0.min(0.0);
        }
        if !(x1 > x0) {
            x0 -= 0.5;
            x1 = x0 + 1.0;
        }
        if !(y1 > y0) {
            y1 = y0 + 1.0;
        }
        Self { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        H - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * MARGIN)
    }

    fn axes(&self, s: &mut String, title: &str) {
        let (l, r, b, t) = (MARGIN, W - MARGIN, H - MARGIN, MARGIN);
        let _ = writeln!(s, r#"<path d="M{l} {t} L{l} {b} L{r} {b}" stroke="black" fill="none"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
        for (v, x) in [(self.x0, l), (self.x1, r)] {
            let _ = writeln!(s, r#"<text x="{x}" y="{}" text-anchor="middle" font-size="11">{v:.3}</text>"#, b + 16.0);
        }
        for (v, y) in [(self.y0, b), (self.y1, t)] {
            let _ = writeln!(s, r#"<text x="{}" y="{y}" text-anchor="end" font-size="11">{v:.3}</text>"#, l - 4.0);
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open() -> String {
    format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#) + "\n"
}

fn polyline(s: &mut String, f: &Frame, xs: &[f64], ys: &[f64], color: &str) {
    let pts: Vec<String> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(&x, &y)| format!("{:.2},{:.2}", f.px(x), f.py(y.min(f.y1))))
        .collect();
    let _ = writeln!(s, r#"<polyline points="{}" stroke="{color}" fill="none" stroke-width="1.5"/>"#, pts.join(" "));
}

/// Histogram bars with the theory curve drawn through the bin centres.
pub fn histogram(edges: &[f64], empirical: &[f64], theory: &[f64], title: &str) -> String {
    let centres: Vec<f64> = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let f = Frame::new(edges.iter().copied(), empirical.iter().chain(theory).copied(), true);
    let mut s = open();
    f.axes(&mut s, title);
    for (w, &d) in edges.windows(2).zip(empirical) {
        let (x, y) = (f.px(w[0]), f.py(d));
        let _ = writeln!(
            s,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="steelblue" fill-opacity="0.6"/>"#,
            f.px(w[1]) - x,
            f.py(f.y0.max(0.0)) - y
        );
    }
    polyline(&mut s, &f, &centres, theory, "red");
    s.push_str("</svg>\n");
    s
}

/// Curves plus optional dots.
pub fn lines(curves: &[(&[f64], &[f64])], dots: Option<(&[f64], &[f64])>, title: &str) -> String {
    let xs = curves.iter().flat_map(|c| c.0.iter()).chain(dots.iter().flat_map(|d| d.0.iter())).copied();
    let ys = curves.iter().flat_map(|c| c.1.iter()).chain(dots.iter().flat_map(|d| d.1.iter())).copied();
    let f = Frame::new(xs.clone(), ys.clone(), true);
    let mut s = open();
    f.axes(&mut s, title);
    for (i, (x, y)) in curves.iter().enumerate() {
        polyline(&mut s, &f, x, y, ["red", "blue", "green", "black"][i % 4]);
    }
    if let Some((x, y)) = dots {
        for (&a, &b) in x.iter().zip(y) {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="red"/>"#, f.px(a), f.py(b));
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Row-major `values[j * xs.len() + i]` at `(xs[i], ys[j])`, grey scale.
pub fn heatmap(xs: &[f64], ys: &[f64], values: &[f64], title: &str) -> String {
    let f = Frame::new(xs.iter().copied(), ys.iter().copied(), false);
    let vmax = values.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let (dx, dy) = ((W - 2.0 * MARGIN) / xs.len() as f64, (H - 2.0 * MARGIN) / ys.len() as f64);
    let mut s = open();
    f.axes(&mut s, title);
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let v = values[j * xs.len() + i];
            let level = if vmax > 0.0 && v.is_finite() { (255.0 * (1.0 - v.max(0.0) / vmax)) as u8 } else { 255 };
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({level},{level},255)"/>"#,
                f.px(x) - dx / 2.0,
                f.py(y) - dy / 2.0,
                dx,
                dy
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
