//! Deterministic ASCII and SVG pictures of quiver windows and polygon
//! dissections. Rendering is a pure function of its inputs; repeated calls
//! produce byte-identical documents.

use std::collections::BTreeSet;

use crate::polygon::Chord;
use crate::quiver::{DiagramSpec, Family, Sign, Vertex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkStyle {
    Circle,
    Fill,
}

#[derive(Clone, Copy, Debug)]
pub struct RenderConfig {
    pub format: RenderFormat,
    /// Grid pitch in pixels for SVG (at least 8) and scale for ASCII polygons.
    pub cell: u32,
    pub mark: MarkStyle,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            format: RenderFormat::Ascii,
            cell: 24,
            mark: MarkStyle::Circle,
        }
    }
}

impl RenderConfig {
    fn checked_cell(&self) -> u32 {
        match self.format {
            RenderFormat::Svg => self.cell.max(8),
            RenderFormat::Ascii => self.cell.max(1),
        }
    }
}

/// Picture height slot of a vertex: fork `+` on top, then fork `-`, then the
/// trunk rows descending. One slot per diagram row.
fn level(spec: &DiagramSpec, v: Vertex) -> u32 {
    match v.sign() {
        Some(Sign::Plus) => 0,
        Some(Sign::Minus) => 1,
        None if spec.family() == Family::D => spec.m() - v.row() + 2,
        None => spec.row_max() - v.row(),
    }
}

/// Renders the vertices of a column window with a marked subset.
///
/// ASCII output is a fixed-width grid, one line per row of the diagram (type
/// `D` forks split into `+` and `-` lines); SVG output draws the mesh arrows
/// (double-stroked when the valuation is not `(1,1)`) with marked vertices
/// encircled or filled.
pub fn render_quiver(
    spec: &DiagramSpec,
    window: (i64, i64),
    marked: &BTreeSet<Vertex>,
    cfg: &RenderConfig,
) -> Result<String> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::WindowTooSmall {
            lo,
            hi,
            vertex: "(empty window)".into(),
        });
    }
    for v in marked {
        spec.check(*v)?;
        if v.i() < lo || v.i() > hi {
            return Err(Error::WindowTooSmall {
                lo,
                hi,
                vertex: v.to_string(),
            });
        }
    }
    match cfg.format {
        RenderFormat::Ascii => Ok(render_quiver_ascii(spec, window, marked, cfg)),
        RenderFormat::Svg => Ok(render_quiver_svg(spec, window, marked, cfg)),
    }
}

/// Horizontal slot of a vertex inside the window, in half-column units.
fn xslot(lo: i64, v: Vertex) -> i64 {
    (v.i() + v.j()) - (2 * lo + 2)
}

fn render_quiver_ascii(
    spec: &DiagramSpec,
    (lo, hi): (i64, i64),
    marked: &BTreeSet<Vertex>,
    cfg: &RenderConfig,
) -> String {
    let width = (xslot(lo, Vertex::trunk(hi, hi + spec.row_max() as i64)) + 1) as usize;
    let levels = spec.slots_per_column() as usize;
    let mut grid = vec![vec!["   ".to_string(); width]; levels];
    for v in spec.window_vertices(lo, hi) {
        let cell = if marked.contains(&v) {
            match cfg.mark {
                MarkStyle::Circle => "(o)",
                MarkStyle::Fill => "(*)",
            }
        } else {
            " o "
        };
        grid[level(spec, v) as usize][xslot(lo, v) as usize] = cell.to_string();
    }
    let mut out = String::new();
    out.push_str(&format!(
        "{} window [{lo}, {hi}] marked {}\n",
        spec.name(),
        marked.len()
    ));
    for (lv, row) in grid.iter().enumerate() {
        let label = row_label(spec, lv as u32);
        out.push_str(&format!("{label:>7} |"));
        for cell in row {
            out.push_str(cell);
        }
        out.push('\n');
    }
    out
}

fn row_label(spec: &DiagramSpec, lv: u32) -> String {
    if spec.family() == Family::D {
        match lv {
            0 => format!("r{}+", spec.m() + 1),
            1 => format!("r{}-", spec.m() + 1),
            _ => format!("r{}", spec.m() + 2 - lv),
        }
    } else {
        format!("r{}", spec.row_max() - lv)
    }
}

fn render_quiver_svg(
    spec: &DiagramSpec,
    (lo, hi): (i64, i64),
    marked: &BTreeSet<Vertex>,
    cfg: &RenderConfig,
) -> String {
    let cell = cfg.checked_cell() as i64;
    let half = cell / 2;
    let pad = cell;
    let levels = spec.slots_per_column() as i64 - 1;
    let width = xslot(lo, Vertex::trunk(hi, hi + spec.row_max() as i64)) * half + 2 * pad;
    let height = levels * cell + 2 * pad;
    let pos = |v: Vertex| -> (i64, i64) {
        (
            pad + xslot(lo, v) * half,
            pad + level(spec, v) as i64 * cell,
        )
    };
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    s.push_str("<g stroke=\"black\" fill=\"none\">\n");
    // arrows first, vertices on top
    for v in spec.window_vertices(lo, hi) {
        for arrow in spec.arrows_into(v).expect("window vertices are valid") {
            let src = arrow.source;
            if src.i() < lo || src.i() > hi {
                continue;
            }
            let (x1, y1) = pos(src);
            let (x2, y2) = pos(v);
            let w = if arrow.valuation == (1, 1) { 1 } else { 3 };
            s.push_str(&format!(
                "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke-width=\"{w}\"/>\n"
            ));
        }
    }
    s.push_str("</g>\n");
    for v in spec.window_vertices(lo, hi) {
        let (x, y) = pos(v);
        let r = (cell / 10).max(2);
        s.push_str(&format!(
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"{r}\" fill=\"black\"/>\n"
        ));
        if marked.contains(&v) {
            match cfg.mark {
                MarkStyle::Circle => s.push_str(&format!(
                    "<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                    cell / 3
                )),
                MarkStyle::Fill => s.push_str(&format!(
                    "<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"black\"/>\n",
                    cell / 3
                )),
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Renders the regular `l`-gon with the given chords. Vertices are labeled
/// `0..l-1` clockwise from the top; the circumradius is one `cell`.
pub fn render_polygon(l: u32, chords: &[Chord], cfg: &RenderConfig) -> String {
    match cfg.format {
        RenderFormat::Svg => render_polygon_svg(l, chords, cfg),
        RenderFormat::Ascii => render_polygon_ascii(l, chords, cfg),
    }
}

fn corner(l: u32, k: u32, radius: f64, cx: f64, cy: f64) -> (f64, f64) {
    let angle = 2.0 * std::f64::consts::PI * k as f64 / l as f64;
    (cx + radius * angle.sin(), cy - radius * angle.cos())
}

fn render_polygon_svg(l: u32, chords: &[Chord], cfg: &RenderConfig) -> String {
    let r = cfg.checked_cell().max(8) as f64;
    let pad = r * 0.25 + 10.0;
    let c = r + pad;
    let size = 2.0 * c;
    let mut chords: Vec<Chord> = chords.to_vec();
    chords.sort();
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size:.2}\" height=\"{size:.2}\" viewBox=\"0 0 {size:.2} {size:.2}\">\n"
    ));
    let ring: Vec<(f64, f64)> = (0..l).map(|k| corner(l, k, r, c, c)).collect();
    let pts: Vec<String> = ring.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    s.push_str(&format!(
        "<polygon points=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        pts.join(" ")
    ));
    for ch in &chords {
        let (a, b) = ch.endpoints();
        let (x1, y1) = ring[a as usize];
        let (x2, y2) = ring[b as usize];
        let w = if ch.is_main(l) { 2 } else { 1 };
        s.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\" stroke-width=\"{w}\"/>\n"
        ));
    }
    for (k, (x, y)) in ring.iter().enumerate() {
        s.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2\" fill=\"black\"/>\n"
        ));
        let (lx, ly) = corner(l, k as u32, r + pad * 0.6, c, c);
        s.push_str(&format!(
            "<text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"10\" text-anchor=\"middle\">{k}</text>\n"
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn render_polygon_ascii(l: u32, chords: &[Chord], cfg: &RenderConfig) -> String {
    let r = cfg.cell.clamp(8, 40) as i64;
    let size = (2 * r + 1) as usize;
    let mut grid = vec![vec![b' '; size]; size];
    let place = |k: u32| -> (i64, i64) {
        let (x, y) = corner(l, k, r as f64, r as f64, r as f64);
        (x.round() as i64, y.round() as i64)
    };
    let mut chords: Vec<Chord> = chords.to_vec();
    chords.sort();
    for ch in &chords {
        let (a, b) = ch.endpoints();
        let (x1, y1) = place(a);
        let (x2, y2) = place(b);
        // Bresenham segment
        let (mut x, mut y) = (x1, y1);
        let dx = (x2 - x1).abs();
        let dy = -(y2 - y1).abs();
        let sx = if x1 < x2 { 1 } else { -1 };
        let sy = if y1 < y2 { 1 } else { -1 };
        let mut err = dx + dy;
        loop {
            grid[y as usize][x as usize] = b'*';
            if x == x2 && y == y2 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }
    for k in 0..l {
        let (x, y) = place(k);
        grid[y as usize][x as usize] = b'0' + (k % 10) as u8;
    }
    let mut out = String::with_capacity(size * (size + 1));
    for row in grid {
        let line = String::from_utf8(row).unwrap();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonal::enumerate_maximal_orthogonal;
    use crate::quiver::Family;

    fn cfg(format: RenderFormat) -> RenderConfig {
        RenderConfig {
            format,
            ..RenderConfig::default()
        }
    }

    #[test]
    fn ascii_a1_strip_alternates() {
        let a1 = DiagramSpec::new(Family::A, 1).unwrap();
        let subsets = enumerate_maximal_orthogonal(&a1, 1).unwrap();
        let marked: BTreeSet<Vertex> = subsets[0]
            .members
            .iter()
            .map(|v| Vertex::trunk(v.i(), v.j()))
            .collect();
        let doc = render_quiver(&a1, (0, 3), &marked, &cfg(RenderFormat::Ascii)).unwrap();
        let line = doc.lines().nth(1).unwrap();
        assert!(line.contains("(o)"));
        assert!(line.contains(" o "));
    }

    #[test]
    fn ascii_plain_window() {
        let a2 = DiagramSpec::new(Family::A, 2).unwrap();
        let doc = render_quiver(&a2, (-2, 2), &BTreeSet::new(), &cfg(RenderFormat::Ascii)).unwrap();
        assert!(!doc.contains("(o)"));
        assert_eq!(doc.lines().count(), 3); // header + 2 rows
    }

    #[test]
    fn window_too_small() {
        let a2 = DiagramSpec::new(Family::A, 2).unwrap();
        let marked = BTreeSet::from([Vertex::trunk(5, 7)]);
        assert!(matches!(
            render_quiver(&a2, (-2, 2), &marked, &cfg(RenderFormat::Ascii)),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn svg_quiver_shape() {
        let d4 = DiagramSpec::new(Family::D, 3).unwrap();
        let (lo, hi) = (0, 2 * d4.l() as i64);
        let doc = render_quiver(&d4, (lo, hi), &BTreeSet::new(), &cfg(RenderFormat::Svg)).unwrap();
        assert!(doc.starts_with("<svg"));
        assert_eq!(doc.matches("<svg").count(), 1);
        assert!(doc.ends_with("</svg>\n"));
        // thick arrows only exist for B/C
        assert!(!doc.contains("stroke-width=\"3\""));
        let b2 = DiagramSpec::new(Family::B, 2).unwrap();
        let doc = render_quiver(&b2, (0, 4), &BTreeSet::new(), &cfg(RenderFormat::Svg)).unwrap();
        assert!(doc.contains("stroke-width=\"3\""));
    }

    #[test]
    fn svg_polygon_shape() {
        let chords: Vec<Chord> = (0..4).map(|p| Chord::new(8, p, p + 4).unwrap()).collect();
        let doc = render_polygon(8, &chords, &cfg(RenderFormat::Svg));
        assert!(doc.starts_with("<svg"));
        assert_eq!(doc.matches("<line").count(), 4);
        assert_eq!(doc.matches("<text").count(), 8);
        // square with one diagonal
        let one = [Chord::new(4, 0, 2).unwrap()];
        let doc = render_polygon(4, &one, &cfg(RenderFormat::Svg));
        assert_eq!(doc.matches("<line").count(), 1);
        // any pentagon triangulation has exactly two chords
        let fan = [Chord::new(5, 0, 2).unwrap(), Chord::new(5, 0, 3).unwrap()];
        let doc = render_polygon(5, &fan, &cfg(RenderFormat::Svg));
        assert_eq!(doc.matches("<line").count(), 2);
    }

    #[test]
    fn rendering_is_deterministic() {
        let d4 = DiagramSpec::new(Family::D, 3).unwrap();
        let marked: BTreeSet<Vertex> = [Vertex::trunk(0, 2), Vertex::fork(1, 5, Sign::Plus)]
            .into_iter()
            .collect();
        let a = render_quiver(&d4, (-3, 3), &marked, &cfg(RenderFormat::Svg)).unwrap();
        let b = render_quiver(&d4, (-3, 3), &marked, &cfg(RenderFormat::Svg)).unwrap();
        assert_eq!(a, b);
        let chords = [Chord::new(6, 0, 2).unwrap(), Chord::new(6, 3, 5).unwrap()];
        assert_eq!(
            render_polygon(6, &chords, &cfg(RenderFormat::Ascii)),
            render_polygon(6, &chords, &cfg(RenderFormat::Ascii))
        );
    }
}
