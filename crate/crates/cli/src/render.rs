//! SVG output: a fixed affine map from the arrangement's bounding box to
//! an 800 x 600 viewport, one path per pseudo-line.

use std::fmt::Write;

use anyhow::Result;
use approaching::arrgeom::{crossing_abscissae, crossings, Point, PolyArrangement};
use approaching::Rational;
use num_traits::ToPrimitive;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

#[derive(Clone, Debug, Default)]
pub struct Style {
    /// Mark every crossing with a dot.
    pub crossings: bool,
    /// Triangles to fill, by their vertices.
    pub triangles: Vec<[Point; 3]>,
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn safe_color(c: &str) -> Option<&str> {
    (!c.is_empty() && c.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '#')).then_some(c)
}

pub fn render_svg(arr: &PolyArrangement, style: &Style) -> Result<String> {
    let events = crossings(arr).unwrap_or_default();
    let mut xs: Vec<Rational> = arr.columns().to_vec();
    xs.extend(crossing_abscissae(&events));
    xs.sort();
    let (lo, hi) = (f(&xs[0]), f(&xs[xs.len() - 1]));
    let pad = ((hi - lo) * 0.15).max(1.0);
    let (x0, x1) = (lo - pad, hi + pad);
    let to_q = |v: f64| Rational::from_float(v).unwrap_or_default();
    let mut samples = vec![to_q(x0)];
    samples.extend(arr.columns().iter().cloned());
    samples.push(to_q(x1));

    let paths: Vec<Vec<(f64, f64)>> = (0..arr.n())
        .map(|i| samples.iter().map(|x| (f(x), f(&arr.evaluate(i, x)))).collect())
        .collect();
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in paths.iter().flatten() {
        y0 = y0.min(p.1);
        y1 = y1.max(p.1);
    }
    if !(y1 > y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let sx = (WIDTH - 2.0 * MARGIN) / (x1 - x0);
    let sy = (HEIGHT - 2.0 * MARGIN) / (y1 - y0);
    let map = |x: f64, y: f64| (MARGIN + (x - x0) * sx, HEIGHT - MARGIN - (y - y0) * sy);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    for tri in &style.triangles {
        let pts: Vec<String> = tri
            .iter()
            .map(|p| {
                let (a, b) = map(f(&p.x), f(&p.y));
                format!("{a:.2},{b:.2}")
            })
            .collect();
        writeln!(out, r#"<polygon class="triangle" points="{}" fill="gold" fill-opacity="0.6"/>"#, pts.join(" "))?;
    }
    for (i, path) in paths.iter().enumerate() {
        let color = arr
            .colors()
            .and_then(|c| safe_color(&c[i]))
            .unwrap_or(PALETTE[i % PALETTE.len()]);
        let mut d = String::new();
        for (k, &(x, y)) in path.iter().enumerate() {
            let (a, b) = map(x, y);
            write!(d, "{}{a:.2} {b:.2} ", if k == 0 { "M" } else { "L" })?;
        }
        writeln!(
            out,
            r#"<path id="line{}" d="{}" stroke="{color}" stroke-width="2" fill="none"/>"#,
            i + 1,
            d.trim_end()
        )?;
        let (a, b) = map(path[0].0, path[0].1);
        writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#, a + 2.0, b - 4.0, i + 1)?;
    }
    if style.crossings {
        for e in &events {
            let p = e.point();
            let (a, b) = map(f(&p.x), f(&p.y));
            writeln!(out, r#"<circle class="crossing" cx="{a:.2}" cy="{b:.2}" r="3" fill="black"/>"#)?;
        }
    }
    writeln!(out, "</svg>")?;
    Ok(out)
}
