//! Deterministic SVG rendering of node sets.
//!
//! All geometry is computed in exact rational arithmetic and only converted
//! to fixed three-decimal strings at output time, so the same input always
//! produces byte-identical SVG. Lines are clipped exactly against the padded
//! bounding box. Curve factors that are not lines are drawn as a polyline
//! through the on-curve nodes and flagged with `data-exact="false"`.

use crate::analysis::{maximal_lines, nodes_on_curve, NodeSet};
use crate::poly::{Curve, Line, Point};
use crate::rat::{decimal_string, rat_int, Rat};
use num_traits::Zero;
use std::fmt::Write as _;

const CANVAS: i64 = 800;
/// 5% margin on each side of an 800-unit canvas.
const MARGIN: i64 = 40;

struct Frame {
    min_x: Rat,
    min_y: Rat,
    scale: Rat,
    offset_x: Rat,
    offset_y: Rat,
}

impl Frame {
    /// Uniform scale fitting the node bounding box into the drawable area,
    /// centered on both axes. Degenerate extents are padded by one unit.
    fn fit(x: &NodeSet) -> Frame {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = if x.is_empty() {
            (rat_int(0), rat_int(1), rat_int(0), rat_int(1))
        } else {
            let p0 = x.node(0);
            (p0.x.clone(), p0.x.clone(), p0.y.clone(), p0.y.clone())
        };
        for p in x.nodes() {
            if p.x < min_x {
                min_x = p.x.clone();
            }
            if p.x > max_x {
                max_x = p.x.clone();
            }
            if p.y < min_y {
                min_y = p.y.clone();
            }
            if p.y > max_y {
                max_y = p.y.clone();
            }
        }
        if min_x == max_x {
            min_x -= rat_int(1);
            max_x += rat_int(1);
        }
        if min_y == max_y {
            min_y -= rat_int(1);
            max_y += rat_int(1);
        }
        let width = &max_x - &min_x;
        let height = &max_y - &min_y;
        let drawable = rat_int(CANVAS - 2 * MARGIN);
        let scale = if width >= height { &drawable / &width } else { &drawable / &height };
        let offset_x = (&drawable - &(&width * &scale)) / rat_int(2);
        let offset_y = (&drawable - &(&height * &scale)) / rat_int(2);
        Frame { min_x, min_y, scale, offset_x, offset_y }
    }

    fn sx(&self, x: &Rat) -> Rat {
        rat_int(MARGIN) + &self.offset_x + &(&(x - &self.min_x) * &self.scale)
    }

    /// SVG y grows downward; flip so larger y is higher on screen.
    fn sy(&self, y: &Rat) -> Rat {
        rat_int(CANVAS - MARGIN) - &self.offset_y - &(&(y - &self.min_y) * &self.scale)
    }

    /// Math-coordinate preimage of the full canvas: lines clipped to this
    /// window reach the canvas edge exactly.
    fn clip_window(&self) -> (Rat, Rat, Rat, Rat) {
        let lead = &rat_int(MARGIN) + &self.offset_x;
        let x0 = &self.min_x - &(&lead / &self.scale);
        let x1 = &self.min_x + &(&(&rat_int(CANVAS) - &lead) / &self.scale);
        let lead_y = &rat_int(MARGIN) + &self.offset_y;
        let y0 = &self.min_y - &(&lead_y / &self.scale);
        let y1 = &self.min_y + &(&(&rat_int(CANVAS) - &lead_y) / &self.scale);
        (x0, x1, y0, y1)
    }
}

/// Exact intersection of a line with the rectangle, as the two extreme
/// boundary points, or `None` when the line misses the window.
fn clip_line(line: &Line, window: &(Rat, Rat, Rat, Rat)) -> Option<(Point, Point)> {
    let (x0, x1, y0, y1) = window;
    let mut hits: Vec<Point> = Vec::new();
    let mut push = |p: Point| {
        if !hits.contains(&p) {
            hits.push(p);
        }
    };
    if !line.b().is_zero() {
        for xe in [x0, x1] {
            let y = -(&(&(line.a() * xe) + line.c()) / line.b());
            if &y >= y0 && &y <= y1 {
                push(Point { x: xe.clone(), y });
            }
        }
    }
    if !line.a().is_zero() {
        for ye in [y0, y1] {
            let x = -(&(&(line.b() * ye) + line.c()) / line.a());
            if &x >= x0 && &x <= x1 {
                push(Point { x, y: ye.clone() });
            }
        }
    }
    hits.sort();
    match hits.len() {
        0 | 1 => None,
        _ => Some((hits[0].clone(), hits[hits.len() - 1].clone())),
    }
}

fn fmt3(r: &Rat) -> String {
    decimal_string(r, 3)
}

fn line_element(s: &mut String, frame: &Frame, a: &Point, b: &Point, style: &str) {
    let _ = writeln!(
        s,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
        fmt3(&frame.sx(&a.x)),
        fmt3(&frame.sy(&a.y)),
        fmt3(&frame.sx(&b.x)),
        fmt3(&frame.sy(&b.y)),
    );
}

/// Renders the node set with its maximal lines highlighted and any extra
/// curves overlaid. Pure function of the inputs.
pub fn render_svg(x: &NodeSet, n: usize, curves: &[Curve]) -> String {
    let frame = Frame::fit(x);
    let window = frame.clip_window();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(s, r#"  <rect width="{CANVAS}" height="{CANVAS}" fill="white"/>"#);

    for line in maximal_lines(x, n) {
        if let Some((a, b)) = clip_line(&line, &window) {
            line_element(
                &mut s,
                &frame,
                &a,
                &b,
                r##"stroke="#d62728" stroke-width="2" class="maximal-line""##,
            );
        }
    }

    for curve in curves {
        match curve.line_factors() {
            Some(lines) => {
                for line in lines {
                    if let Some((a, b)) = clip_line(&line, &window) {
                        line_element(
                            &mut s,
                            &frame,
                            &a,
                            &b,
                            r##"stroke="#1f77b4" stroke-width="1.5" class="curve-line""##,
                        );
                    }
                }
            }
            None => {
                // Not a union of lines: approximate by the polyline through
                // its nodes, ordered lexicographically, and say so.
                let mut on: Vec<Point> = nodes_on_curve(x, curve)
                    .into_iter()
                    .map(|i| x.node(i).clone())
                    .collect();
                on.sort();
                if on.len() >= 2 {
                    let pts: Vec<String> = on
                        .iter()
                        .map(|p| format!("{},{}", fmt3(&frame.sx(&p.x)), fmt3(&frame.sy(&p.y))))
                        .collect();
                    let _ = writeln!(
                        s,
                        r##"  <polyline points="{}" fill="none" stroke="#2ca02c" stroke-width="1.5" stroke-dasharray="6 3" class="curve-sketch" data-exact="false"/>"##,
                        pts.join(" ")
                    );
                }
            }
        }
    }

    for p in x.nodes() {
        let _ = writeln!(
            s,
            r##"  <circle cx="{}" cy="{}" r="5" fill="#111111" class="node"/>"##,
            fmt3(&frame.sx(&p.x)),
            fmt3(&frame.sy(&p.y)),
        );
    }
    s.push_str("</svg>\n");
    s
}
