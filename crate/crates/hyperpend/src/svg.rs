//! Deterministic SVG emission for reduced phase portraits.
//!
//! Output is plain path/circle elements in a fixed 800x600 viewBox with
//! coordinates printed at fixed precision, so a given input always produces
//! byte-identical files.

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;

/// A polyline in data coordinates with a stroke color.
#[derive(Clone, Debug)]
pub struct Curve {
    pub points: Vec<(f64, f64)>,
    pub color: String,
}

/// A marked point (stationary points are drawn red).
#[derive(Clone, Debug)]
pub struct Marker {
    pub at: (f64, f64),
    pub color: String,
}

/// Figure description in data coordinates.
#[derive(Clone, Debug, Default)]
pub struct Figure {
    pub curves: Vec<Curve>,
    pub markers: Vec<Marker>,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

impl Figure {
    fn data_bounds(&self) -> (f64, f64, f64, f64) {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for c in &self.curves {
            for &(x, y) in &c.points {
                xs.push(x);
                ys.push(y);
            }
        }
        for m in &self.markers {
            xs.push(m.at.0);
            ys.push(m.at.1);
        }
        if xs.is_empty() {
            return (-1.0, 1.0, -1.0, 1.0);
        }
        let (mut xlo, mut xhi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ylo, mut yhi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &x in &xs {
            xlo = xlo.min(x);
            xhi = xhi.max(x);
        }
        for &y in &ys {
            ylo = ylo.min(y);
            yhi = yhi.max(y);
        }
        let pad = |lo: f64, hi: f64| {
            let span = (hi - lo).max(1e-9);
            (lo - 0.05 * span, hi + 0.05 * span)
        };
        let (xlo, xhi) = pad(xlo, xhi);
        let (ylo, yhi) = pad(ylo, yhi);
        (xlo, xhi, ylo, yhi)
    }

    /// Render to an SVG document string.
    pub fn render(&self) -> String {
        let (xlo, xhi, ylo, yhi) = self.data_bounds();
        let sx = (WIDTH - 2.0 * MARGIN) / (xhi - xlo);
        let sy = (HEIGHT - 2.0 * MARGIN) / (yhi - ylo);
        let px = |x: f64| MARGIN + (x - xlo) * sx;
        let py = |y: f64| HEIGHT - MARGIN - (y - ylo) * sy;

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH:.0} {HEIGHT:.0}\">"
        );
        let _ = writeln!(
            out,
            "<rect width=\"{WIDTH:.0}\" height=\"{HEIGHT:.0}\" fill=\"white\"/>"
        );
        if !self.title.is_empty() {
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"24\" font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
                WIDTH / 2.0,
                xml_escape(&self.title)
            );
        }
        // Axes through zero when visible, otherwise along the frame.
        let x_axis_y = if ylo < 0.0 && yhi > 0.0 {
            py(0.0)
        } else {
            HEIGHT - MARGIN
        };
        let y_axis_x = if xlo < 0.0 && xhi > 0.0 {
            px(0.0)
        } else {
            MARGIN
        };
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#888\" stroke-width=\"1\"/>",
            MARGIN, x_axis_y, WIDTH - MARGIN, x_axis_y
        );
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#888\" stroke-width=\"1\"/>",
            y_axis_x, MARGIN, y_axis_x, HEIGHT - MARGIN
        );
        if !self.x_label.is_empty() {
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{}</text>",
                WIDTH - MARGIN,
                HEIGHT - MARGIN + 30.0,
                xml_escape(&self.x_label)
            );
        }
        if !self.y_label.is_empty() {
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\">{}</text>",
                MARGIN - 35.0,
                MARGIN - 10.0,
                xml_escape(&self.y_label)
            );
        }
        for curve in &self.curves {
            if curve.points.len() < 2 {
                continue;
            }
            let mut d = String::new();
            for (k, &(x, y)) in curve.points.iter().enumerate() {
                let cmd = if k == 0 { 'M' } else { 'L' };
                let _ = write!(d, "{}{:.3} {:.3} ", cmd, px(x), py(y));
            }
            let _ = writeln!(
                out,
                "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
                d.trim_end(),
                curve.color
            );
        }
        for m in &self.markers {
            let _ = writeln!(
                out,
                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"{}\"/>",
                px(m.at.0),
                py(m.at.1),
                m.color
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
