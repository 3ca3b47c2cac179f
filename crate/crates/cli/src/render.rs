//! Static SVG plots of real curves `f(x, y, 1) = 0` by marching squares.

use std::fmt::Write;

use logjump::algebra::{Field, Rationals};
use logjump::forms::HForm;
use logjump::geom::PointConfig;
use num_rational::BigRational;

use crate::CliError;

pub const SIZE: f64 = 600.0;
pub const GRID: usize = 240;

/// Affine window `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    /// Bounding box of the affine points, padded by a third on every side.
    pub fn around(points: &[(f64, f64)]) -> Result<Window, CliError> {
        if points.is_empty() {
            return Err(CliError::Degenerate("no affine points to frame".into()));
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let side = (x1 - x0).max(y1 - y0);
        if !side.is_finite() || side <= 0.0 {
            return Err(CliError::Degenerate("window has zero extent".into()));
        }
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let half = side * (0.5 + 1.0 / 3.0);
        Ok(Window { x0: cx - half, x1: cx + half, y0: cy - half, y1: cy + half })
    }

    fn to_screen(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.x0) / (self.x1 - self.x0) * SIZE, (self.y1 - y) / (self.y1 - self.y0) * SIZE)
    }
}

pub type Segment = ((f64, f64), (f64, f64));

/// Zero-level segments of `f` sampled on a `res × res` grid over `w`.
pub fn marching_squares(f: impl Fn(f64, f64) -> f64, w: &Window, res: usize) -> Vec<Segment> {
    let xs: Vec<f64> = (0..=res).map(|i| w.x0 + (w.x1 - w.x0) * i as f64 / res as f64).collect();
    let ys: Vec<f64> = (0..=res).map(|j| w.y0 + (w.y1 - w.y0) * j as f64 / res as f64).collect();
    let vals: Vec<Vec<f64>> = ys.iter().map(|&y| xs.iter().map(|&x| f(x, y)).collect()).collect();
    let mut out = Vec::new();
    let cross = |a: (f64, f64, f64), b: (f64, f64, f64)| {
        let t = a.2 / (a.2 - b.2);
        (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
    };
    for j in 0..res {
        for i in 0..res {
            // corners counter-clockwise from bottom left
            let c = [
                (xs[i], ys[j], vals[j][i]),
                (xs[i + 1], ys[j], vals[j][i + 1]),
                (xs[i + 1], ys[j + 1], vals[j + 1][i + 1]),
                (xs[i], ys[j + 1], vals[j + 1][i]),
            ];
            let mut hits = Vec::with_capacity(4);
            for k in 0..4 {
                let (a, b) = (c[k], c[(k + 1) % 4]);
                if (a.2 > 0.0) != (b.2 > 0.0) {
                    hits.push(cross(a, b));
                }
            }
            match hits.len() {
                2 => out.push((hits[0], hits[1])),
                4 => {
                    // saddle: pair edges by the sign at the centre
                    let centre = f((c[0].0 + c[1].0) / 2.0, (c[0].1 + c[3].1) / 2.0);
                    if (centre > 0.0) == (c[0].2 > 0.0) {
                        out.push((hits[0], hits[1]));
                        out.push((hits[2], hits[3]));
                    } else {
                        out.push((hits[0], hits[3]));
                        out.push((hits[1], hits[2]));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn to_f64(q: &BigRational) -> f64 {
    Rationals.to_f64(q).unwrap_or(f64::NAN)
}

/// `f(x, y, 1)` in floating point.
pub fn affine_evaluator(f: &HForm<BigRational>) -> impl Fn(f64, f64) -> f64 {
    let terms: Vec<(f64, [usize; 3])> = logjump::forms::monomials(f.degree())
        .into_iter()
        .zip(f.coeffs())
        .filter(|(_, c)| !Rationals.is_zero(c))
        .map(|(e, c)| (to_f64(c), e))
        .collect();
    move |x, y| terms.iter().map(|(c, e)| c * x.powi(e[0] as i32) * y.powi(e[1] as i32)).sum()
}

/// One curve with a stroke colour and a label.
pub struct Layer<'a> {
    pub form: &'a HForm<BigRational>,
    pub colour: &'a str,
    pub label: String,
}

/// SVG document with the curves of `layers` and a marker per point of `z`.
pub fn render_svg(z: &PointConfig<Rationals>, layers: &[Layer<'_>]) -> Result<String, CliError> {
    let affine: Vec<(f64, f64)> = z
        .points()
        .iter()
        .filter(|p| !Rationals.is_zero(&p.coords()[2]))
        .map(|p| {
            let c = p.coords();
            (to_f64(&c[0]) / to_f64(&c[2]), to_f64(&c[1]) / to_f64(&c[2]))
        })
        .collect();
    let w = Window::around(&affine)?;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(svg, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    for layer in layers {
        let segs = marching_squares(affine_evaluator(layer.form), &w, GRID);
        let mut d = String::new();
        for (a, b) in segs {
            let (a, b) = (w.to_screen(a), w.to_screen(b));
            write!(d, "M{:.2} {:.2}L{:.2} {:.2}", a.0, a.1, b.0, b.1).unwrap();
        }
        writeln!(
            svg,
            r#"<path d="{d}" fill="none" stroke="{}" stroke-width="1.2"><title>{}</title></path>"#,
            layer.colour, layer.label
        )
        .unwrap();
    }
    for &(x, y) in &affine {
        let (sx, sy) = w.to_screen((x, y));
        writeln!(svg, r##"<circle cx="{sx:.2}" cy="{sy:.2}" r="4" fill="#c0392b"/>"##).unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_segments_lie_on_the_circle() {
        let w = Window { x0: -2.0, x1: 2.0, y0: -2.0, y1: 2.0 };
        let segs = marching_squares(|x, y| x * x + y * y - 1.0, &w, 100);
        assert!(!segs.is_empty());
        for (a, b) in segs {
            for p in [a, b] {
                assert!(((p.0 * p.0 + p.1 * p.1).sqrt() - 1.0).abs() < 1e-2);
            }
        }
    }

    #[test]
    fn window_rejects_a_single_point() {
        assert!(Window::around(&[(1.0, 1.0)]).is_err());
        assert!(Window::around(&[]).is_err());
    }
}
