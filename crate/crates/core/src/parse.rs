//! Text format, one simplex per line:
//!
//! ```text
//! # comment
//! <id> dim <d> vertices <v1> ... <v_{d+1}> corners (<x1>,<y1>) [(<x2>,<y2>) ...]
//! ```
//!
//! Coordinates are decimal numbers. Each axis is rank-compressed to
//! `1..=k`; the original spelling of every coordinate is kept for output.

use crate::complex::{validate, AppearanceCurve, Bifiltration, SimplicialComplex};
use crate::poset::{Grade, Grid};
use crate::Error;

/// A parsed bifiltration on its compressed grid, with coordinate labels.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub bifiltration: Bifiltration,
    /// `x_labels[r]` is the input spelling of compressed x-coordinate `r`;
    /// index 0 is the bottom and has no input spelling.
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
}

impl Parsed {
    pub fn label(&self, g: Grade) -> (String, String) {
        (self.x_labels[g.x as usize].clone(), self.y_labels[g.y as usize].clone())
    }
}

struct Line {
    id: u64,
    vertices: Vec<u32>,
    corners: Vec<(f64, String, f64, String)>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_line(no: usize, text: &str) -> Result<Line, Error> {
    let (head, tail) = text
        .split_once("corners")
        .ok_or_else(|| err(no, "missing `corners`"))?;
    let tok: Vec<&str> = head.split_whitespace().collect();
    if tok.len() < 5 || tok[1] != "dim" || tok[3] != "vertices" {
        return Err(err(no, "expected `<id> dim <d> vertices <v...> corners ...`"));
    }
    let id: u64 = tok[0].parse().map_err(|_| err(no, format!("bad id `{}`", tok[0])))?;
    let dim: usize = tok[2].parse().map_err(|_| err(no, format!("bad dimension `{}`", tok[2])))?;
    let vertices = tok[4..]
        .iter()
        .map(|v| v.parse::<u32>().map_err(|_| err(no, format!("bad vertex `{v}`"))))
        .collect::<Result<Vec<u32>, Error>>()?;
    if vertices.len() != dim + 1 {
        return Err(err(no, format!("dimension {dim} needs {} vertices", dim + 1)));
    }
    let mut corners = Vec::new();
    let mut rest = tail.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| err(no, "corner must start with `(`"))?;
        let close = body.find(')').ok_or_else(|| err(no, "unclosed corner"))?;
        let (x, y) = body[..close].split_once(',').ok_or_else(|| err(no, "corner needs `x,y`"))?;
        let num = |s: &str| -> Result<(f64, String), Error> {
            let s = s.trim();
            match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok((v, s.to_string())),
                _ => Err(err(no, format!("bad coordinate `{s}`"))),
            }
        };
        let (xv, xs) = num(x)?;
        let (yv, ys) = num(y)?;
        corners.push((xv, xs, yv, ys));
        rest = body[close + 1..].trim_start();
    }
    if corners.is_empty() {
        return Err(err(no, "no corners"));
    }
    Ok(Line { id, vertices, corners })
}

/// Sorted distinct values with the first spelling seen for each.
fn ranks(values: impl Iterator<Item = (f64, String)>) -> Vec<(f64, String)> {
    let mut v: Vec<(f64, String)> = values.collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v.dedup_by(|b, a| a.0 == b.0);
    v
}

pub fn parse(text: &str) -> Result<Parsed, Error> {
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        lines.push((k + 1, parse_line(k + 1, t)?));
    }
    let xs = ranks(lines.iter().flat_map(|(_, l)| l.corners.iter().map(|c| (c.0, c.1.clone()))));
    let ys = ranks(lines.iter().flat_map(|(_, l)| l.corners.iter().map(|c| (c.2, c.3.clone()))));
    let rank = |v: &[(f64, String)], c: f64| {
        v.partition_point(|e| e.0 < c) as u32 + 1
    };
    let mut cx = SimplicialComplex::new();
    let mut curves = Vec::new();
    for (no, l) in &lines {
        cx.push(l.id, l.vertices.clone()).map_err(|e| err(*no, e.to_string()))?;
        let cs = l.corners.iter().map(|c| Grade::new(rank(&xs, c.0), rank(&ys, c.2))).collect();
        curves.push(AppearanceCurve::new(cs));
    }
    let grid = Grid { nx: xs.len() as u32, ny: ys.len() as u32 };
    let b = Bifiltration::new(cx, curves, grid);
    validate(&b).map_err(Error::Invalid)?;
    let label = |v: Vec<(f64, String)>| {
        std::iter::once("-inf".to_string()).chain(v.into_iter().map(|e| e.1)).collect()
    };
    Ok(Parsed { bifiltration: b, x_labels: label(xs), y_labels: label(ys) })
}

/// Writes a bifiltration in the text format, using grid coordinates.
pub fn to_text(b: &Bifiltration) -> String {
    let mut out = String::new();
    for (k, s) in b.complex.simplices().iter().enumerate() {
        let verts: Vec<String> = s.vertices.iter().map(u32::to_string).collect();
        let cs: Vec<String> =
            b.curves[k].lower_corners().iter().map(|g| format!("({},{})", g.x, g.y)).collect();
        out.push_str(&format!(
            "{} dim {} vertices {} corners {}\n",
            s.id,
            s.dim(),
            verts.join(" "),
            cs.join(" ")
        ));
    }
    out
}
