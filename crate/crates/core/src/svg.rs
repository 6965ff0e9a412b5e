//! Minimal deterministic SVG output on a fixed 1000×1000 canvas.

use std::fmt::Write;

pub const SIZE: f64 = 1000.0;
const MARGIN: f64 = 50.0;

/// Maps plane coordinates onto the canvas with a uniform scale and y pointing up.
pub struct Canvas {
    min: (f64, f64),
    max_y: f64,
    scale: f64,
    body: String,
}

impl Canvas {
    /// A canvas whose drawable area holds every point given.
    pub fn fit(points: impl IntoIterator<Item = (f64, f64)>) -> Canvas {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for (x, y) in points {
            if x.is_finite() && y.is_finite() {
                lo = (lo.0.min(x), lo.1.min(y));
                hi = (hi.0.max(x), hi.1.max(y));
            }
        }
        if !lo.0.is_finite() {
            (lo, hi) = ((-1.0, -1.0), (1.0, 1.0));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        Canvas { min: lo, max_y: hi.1, scale: (SIZE - 2.0 * MARGIN) / span, body: String::new() }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        (MARGIN + (p.0 - self.min.0) * self.scale, MARGIN + (self.max_y - p.1) * self.scale)
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#,
            coords.join(" ")
        );
    }

    /// Filled disc of radius `r` pixels.
    pub fn dot(&mut self, p: (f64, f64), r: f64, fill: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.1}" fill="{fill}" stroke="black"/>"#);
    }

    /// Unfilled circle of radius `r` pixels.
    pub fn ring(&mut self, p: (f64, f64), r: f64, stroke: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.1}" fill="none" stroke="{stroke}" stroke-width="2"/>"#
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_inside() {
        let draw = || {
            let mut c = Canvas::fit([(0.0, 0.0), (2.0, 1.0)]);
            c.polyline(&[(0.0, 0.0), (2.0, 1.0)], "black");
            c.dot((1.0, 0.5), 4.0, "black");
            c.finish()
        };
        let s = draw();
        assert_eq!(s, draw());
        assert!(s.contains(r#"points="50.00,500.00 950.00,50.00""#));
    }
}
