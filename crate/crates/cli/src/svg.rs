//! Standalone SVG rendering of one dimension of a diagram.

use std::fmt::Write;

use bigraded_pd::parse::Parsed;
use bigraded_pd::{Grade, SignedDiagram};

const MARGIN: f64 = 56.0;
const AREA: f64 = 400.0;
const MAX_TICKS: u32 = 10;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Frame {
    sx: f64,
    sy: f64,
}

impl Frame {
    fn px(&self, g: Grade) -> (f64, f64) {
        (MARGIN + g.x as f64 * self.sx, MARGIN + AREA - g.y as f64 * self.sy)
    }
}

/// Each interval `[a, b]` becomes one element spanning `a` to `b`: a rectangle,
/// or a line or dot when it is flat. Class `pos` or `neg` gives the sign, and
/// opacity grows with the absolute multiplicity.
pub fn render(parsed: &Parsed, d: &SignedDiagram, dim: usize, curves: bool) -> String {
    let grid = parsed.bifiltration.grid;
    let frame = Frame { sx: AREA / grid.nx.max(1) as f64, sy: AREA / grid.ny.max(1) as f64 };
    let side = AREA + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    s.push_str(
        "<style>.pos{fill:#2166ac;stroke:#2166ac}.neg{fill:#b2182b;stroke:#b2182b}\
         .curve{fill:none;stroke:#999;stroke-dasharray:3 2}\
         .axis{stroke:#333;fill:none}text{font:11px sans-serif;fill:#333}</style>\n",
    );
    let _ = writeln!(s, r#"<rect width="{side}" height="{side}" fill="white"/>"#);
    let (x0, y0) = frame.px(Grade::new(0, 0));
    let (x1, y1) = frame.px(grid.top());
    let _ = writeln!(s, r#"<rect class="axis" x="{x0}" y="{y1}" width="{}" height="{}"/>"#, x1 - x0, y0 - y1);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{}">dimension {dim}</text>"#, MARGIN / 2.0);
    let step = |n: u32| (n / MAX_TICKS).max(1);
    for x in (0..=grid.nx).step_by(step(grid.nx) as usize) {
        let (px, py) = frame.px(Grade::new(x, 0));
        let label = escape(&parsed.x_labels[x as usize]);
        let _ = writeln!(s, r#"<text x="{px}" y="{}" text-anchor="middle">{label}</text>"#, py + 16.0);
    }
    for y in (0..=grid.ny).step_by(step(grid.ny) as usize) {
        let (px, py) = frame.px(Grade::new(0, y));
        let label = escape(&parsed.y_labels[y as usize]);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{label}</text>"#, px - 6.0, py + 4.0);
    }
    if curves {
        let b = &parsed.bifiltration;
        for (k, c) in b.curves.iter().enumerate() {
            if b.complex.dim(k) != dim {
                continue;
            }
            let cs = c.lower_corners();
            let mut pts = vec![Grade::new(cs[0].x, grid.ny)];
            for (t, g) in cs.iter().enumerate() {
                pts.push(*g);
                let next_x = cs.get(t + 1).map_or(grid.nx, |n| n.x);
                pts.push(Grade::new(next_x, g.y));
            }
            let list: Vec<String> = pts
                .iter()
                .map(|&g| {
                    let (x, y) = frame.px(g);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(s, r#"<polyline class="curve" points="{}"/>"#, list.join(" "));
        }
    }
    let items: Vec<_> = d.iter().filter(|(k, _, _)| *k == dim).collect();
    let peak = items.iter().map(|(_, _, v)| v.abs()).max().unwrap_or(1) as f64;
    for (_, iv, v) in items {
        let class = if v > 0 { "pos" } else { "neg" };
        let alpha = 0.25 + 0.75 * v.abs() as f64 / peak;
        let (ax, ay) = frame.px(iv.lo);
        let (bx, by) = frame.px(iv.hi);
        let tip = format!(
            "<title>{v} [({}, {}), ({}, {})]</title>",
            escape(&parsed.x_labels[iv.lo.x as usize]),
            escape(&parsed.y_labels[iv.lo.y as usize]),
            escape(&parsed.x_labels[iv.hi.x as usize]),
            escape(&parsed.y_labels[iv.hi.y as usize])
        );
        let _ = if iv.lo == iv.hi {
            writeln!(s, r#"<circle class="{class}" cx="{ax}" cy="{ay}" r="3" fill-opacity="{alpha:.3}">{tip}</circle>"#)
        } else if iv.lo.x == iv.hi.x || iv.lo.y == iv.hi.y {
            writeln!(
                s,
                r#"<line class="{class}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke-width="2" stroke-opacity="{alpha:.3}">{tip}</line>"#
            )
        } else {
            writeln!(
                s,
                r#"<rect class="{class}" x="{ax}" y="{by}" width="{}" height="{}" fill-opacity="{:.3}" stroke-opacity="{alpha:.3}">{tip}</rect>"#,
                bx - ax,
                ay - by,
                alpha * 0.4
            )
        };
    }
    s.push_str("</svg>\n");
    s
}
