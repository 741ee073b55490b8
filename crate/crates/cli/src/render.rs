//! CSV and SVG renderings of partitions and flattened trees.

use std::collections::HashMap;
use std::fmt::Write as _;

use twotuple::export::round_significant;
use twotuple::NodeTuple;
use twotuple::{BinaryNode, Partition, Side};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Shortest decimal form of `v` rounded to `digits` significant digits.
pub fn number(v: f64, digits: u8) -> String {
    let r = round_significant(v, digits as usize);
    if r == 0.0 {
        "0".to_string()
    } else {
        r.to_string()
    }
}

/// `samples` evenly spaced points of `[0, span]`, both ends included.
fn grid(span: f64, samples: u32) -> impl Iterator<Item = f64> {
    let last = samples - 1;
    (0..samples).map(move |i| {
        if i == last {
            span
        } else {
            span * f64::from(i) / f64::from(last)
        }
    })
}

/// One header line (`u` and the term names) and one row per sample.
pub fn partition_csv(p: &Partition, samples: u32, digits: u8) -> String {
    let mut out = String::from("u");
    for t in p.terms() {
        out.push(',');
        out.push_str(&t.name);
    }
    out.push('\n');
    let span = p.span();
    for u in grid(span, samples) {
        out.push_str(&number(p.universe().to_external(u), digits));
        for t in p.terms() {
            out.push(',');
            out.push_str(&number(t.degree(u, span), digits));
        }
        out.push('\n');
    }
    out
}

fn x_of(u: f64, span: f64) -> f64 {
    MARGIN + u / span * (WIDTH - 2.0 * MARGIN)
}

fn y_of(degree: f64) -> f64 {
    HEIGHT - MARGIN - degree * (HEIGHT - 2.0 * MARGIN)
}

fn svg_open(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn axes(out: &mut String) {
    let (left, right) = (MARGIN, WIDTH - MARGIN);
    let (top, bottom) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>"#
    );
}

/// One polyline per term side over a membership plot with both axes.
pub fn partition_svg(p: &Partition, samples: u32, digits: u8) -> String {
    let span = p.span();
    let coord = |v: f64| number(v, digits.max(4));
    let mut out = String::new();
    svg_open(&mut out);
    axes(&mut out);
    for (k, term) in p.terms().iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        for side in term.sides() {
            let g = side.grain(span);
            let (lo, hi) = match side.side {
                Side::Upside => ((term.kernel - g).max(0.0), term.kernel),
                Side::Downside => (term.kernel, (term.kernel + g).min(span)),
            };
            let mut us = vec![lo];
            us.extend(grid(span, samples).filter(|&u| u > lo && u < hi));
            us.push(hi);
            let points: Vec<String> = us
                .iter()
                .map(|&u| {
                    format!(
                        "{},{}",
                        coord(x_of(u, span)),
                        coord(y_of(term.degree(u, span)))
                    )
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline class="{}" data-term="{}" fill="none" stroke="{color}" points="{}"/>"#,
                side.side,
                term.name,
                points.join(" ")
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
            coord(x_of(term.kernel, span)),
            MARGIN - 8.0,
            term.name
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn tree_csv(nodes: &[NodeTuple], digits: u8) -> String {
    let mut out = String::from("name,level,labels,index,position\n");
    for n in nodes {
        let t = &n.two_tuple;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            n.name,
            t.level.number(),
            t.level.label_count(),
            t.index,
            number(n.position(), digits)
        );
    }
    out
}

/// Nodes placed at their normalized position (x) and depth (y), joined to their children.
pub fn tree_svg(root: &BinaryNode, nodes: &[NodeTuple], digits: u8) -> String {
    let depth = nodes.iter().map(|n| n.depth()).max().unwrap_or(0);
    let row = (HEIGHT - 2.0 * MARGIN) / f64::from(depth.max(1));
    let coord = |v: f64| number(v, digits.max(4));
    let at: HashMap<&str, (f64, f64)> = nodes
        .iter()
        .map(|n| {
            (
                n.name.as_str(),
                (x_of(n.position(), 1.0), MARGIN + f64::from(n.depth()) * row),
            )
        })
        .collect();
    let mut out = String::new();
    svg_open(&mut out);
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        let (x1, y1) = at[node.name.as_str()];
        for child in [&node.left, &node.right].into_iter().flatten() {
            let (x2, y2) = at[child.name.as_str()];
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
                coord(x1),
                coord(y1),
                coord(x2),
                coord(y2)
            );
            stack.push(child);
        }
    }
    for n in nodes {
        let (x, y) = at[n.name.as_str()];
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#,
            coord(x),
            coord(y)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{} {}</text>"#,
            coord(x),
            coord(y - 8.0),
            n.name,
            n.two_tuple
        );
    }
    out.push_str("</svg>\n");
    out
}
