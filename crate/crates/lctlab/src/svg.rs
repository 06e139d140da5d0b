//! Deterministic SVG drawings: planar Newton polygons and step plots.

use std::fmt::Write;

use lctlab_core::ratlp::to_f64;
use lctlab_core::Rational;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n\
         <rect x=\"0\" y=\"0\" width=\"{w:.0}\" height=\"{h:.0}\" fill=\"white\"/>\n"
    )
}

/// A planar polygon `conv(vertices) + R²_{≥0}` with the lattice points of the
/// view, the ray `t·w` and its entry point `t*·w`.
pub struct PolygonPlot<'a> {
    pub vertices: &'a [Vec<Rational>],
    pub ray: &'a [Rational],
    pub entry: Option<&'a Rational>,
    pub contains: &'a dyn Fn(&[Rational]) -> bool,
}

pub fn polygon(plot: &PolygonPlot) -> String {
    let mut verts: Vec<(f64, f64)> = plot.vertices.iter().map(|v| (to_f64(&v[0]), to_f64(&v[1]))).collect();
    verts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    let hit = plot
        .entry
        .map(|t| (to_f64(&(&plot.ray[0] * t)), to_f64(&(&plot.ray[1] * t))));
    let extent = |pick: fn(&(f64, f64)) -> f64| {
        verts
            .iter()
            .map(pick)
            .chain(hit.iter().map(pick))
            .fold(1.0f64, f64::max)
            .ceil()
            + 2.0
    };
    let (xmax, ymax) = (extent(|p| p.0), extent(|p| p.1));
    let (w, h) = (xmax * UNIT + 2.0 * MARGIN, ymax * UNIT + 2.0 * MARGIN);
    let px = |x: f64| MARGIN + x * UNIT;
    let py = |y: f64| h - MARGIN - y * UNIT;

    let mut s = header(w, h);
    // Region boundary, closed off at the top and right of the view.
    let mut pts = Vec::new();
    if let Some(first) = verts.first() {
        pts.push((first.0, ymax));
        pts.extend(verts.iter().copied());
        pts.push((xmax, verts.last().expect("nonempty").1));
        pts.push((xmax, ymax));
    }
    let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
    writeln!(s, "<polygon points=\"{}\" fill=\"#dbe8f5\" stroke=\"#1f4e79\" stroke-width=\"2\"/>", path.join(" ")).unwrap();
    // Axes.
    writeln!(s, "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>", px(0.0), py(0.0), px(xmax), py(0.0)).unwrap();
    writeln!(s, "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>", px(0.0), py(0.0), px(0.0), py(ymax)).unwrap();
    // Lattice points, filled inside the region.
    for i in 0..=xmax as i64 {
        for j in 0..=ymax as i64 {
            let p = [Rational::from_integer(i.into()), Rational::from_integer(j.into())];
            let fill = if (plot.contains)(&p) { "#1f4e79" } else { "none" };
            writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{fill}\" stroke=\"#1f4e79\"/>", px(i as f64), py(j as f64)).unwrap();
        }
    }
    for v in &verts {
        writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"#c00000\"/>", px(v.0), py(v.1)).unwrap();
    }
    // The ray through u + e, drawn to the edge of the view.
    let (rx, ry) = (to_f64(&plot.ray[0]), to_f64(&plot.ray[1]));
    let reach = (xmax / rx).min(ymax / ry);
    writeln!(
        s,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#7f6000\" stroke-dasharray=\"6,4\"/>",
        px(0.0),
        py(0.0),
        px(rx * reach),
        py(ry * reach)
    )
    .unwrap();
    if let (Some((hx, hy)), Some(t)) = (hit, plot.entry) {
        writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"#7f6000\"/>", px(hx), py(hy)).unwrap();
        let label = format!("({}, {})", &plot.ray[0] * t, &plot.ray[1] * t);
        writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"12\">{label}</text>", px(hx) + 8.0, py(hy) - 8.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Staircase plot of `(n, value)` pairs; an empty series gives the bare frame.
pub fn step_plot(title: &str, points: &[(usize, f64)]) -> String {
    let n = points.len().max(1) as f64;
    let top = points.iter().map(|p| p.1).fold(0.0f64, f64::max);
    let top = if top > 0.0 { top * 1.1 } else { 1.0 };
    let (w, h) = (n * 60.0 + 2.0 * MARGIN + 40.0, 300.0);
    let plot_h = h - 2.0 * MARGIN;
    let px = |x: f64| MARGIN + 40.0 + x * 60.0;
    let py = |y: f64| h - MARGIN - y / top * plot_h;
    let mut s = header(w, h);
    writeln!(s, "<text x=\"{:.2}\" y=\"18\" font-family=\"monospace\" font-size=\"12\">{title}</text>", MARGIN).unwrap();
    writeln!(s, "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>", px(0.0), py(top), n * 60.0, plot_h).unwrap();
    if !points.is_empty() {
        let mut d = String::new();
        for (k, &(i, v)) in points.iter().enumerate() {
            let cmd = if k == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{:.2},{:.2} H{:.2} ", px(i as f64), py(v), px(i as f64 + 1.0)).unwrap();
        }
        writeln!(s, "<path d=\"{}\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"2\"/>", d.trim_end()).unwrap();
        for &(i, v) in points {
            writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"10\">{v:.4}</text>", px(i as f64) + 4.0, py(v) - 4.0).unwrap();
            writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"10\">{i}</text>", px(i as f64 + 0.5), h - MARGIN + 14.0).unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
