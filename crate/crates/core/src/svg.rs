//! SVG 1.1 output. Coordinates are written as-is inside a group that flips
//! the y axis, so files can be read back exactly.

use std::fmt::Write;

use crate::drawing::{Drawing, Rect};
use crate::geometry::{bounding_box, Point};

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn emit_svg(d: &Drawing) -> String {
    let (lo, hi) = bounding_box(d.points()).unwrap_or((Point::new(0, 0), Point::new(0, 0)));
    let (w, h) = ((hi.x - lo.x).max(1), (hi.y - lo.y).max(1));
    let pad = (w.max(h) / 20).max(1);
    let r = (w.max(h) as f64 / 150.0).max(0.15);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        lo.x - pad,
        -hi.y - pad,
        w + 2 * pad,
        h + 2 * pad
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" stroke="black" fill="none">"#);
    for (name, rc) in &d.rects {
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" vector-effect="non-scaling-stroke"><title>{}</title></rect>"#,
            rc.x0,
            rc.y0,
            rc.x1 - rc.x0,
            rc.y1 - rc.y0,
            escape(name)
        );
    }
    for &(a, b) in &d.edges {
        let (p, q) = (d.vertices[a].1, d.vertices[b].1);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" vector-effect="non-scaling-stroke"/>"#,
            p.x, p.y, q.x, q.y
        );
    }
    for (name, p) in &d.vertices {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{r:.2}" fill="black" stroke="none"><title>{}</title></circle>"#,
            p.x,
            p.y,
            escape(name)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn attr(tag: &str, key: &str) -> Option<i64> {
    let start = tag.find(&format!(" {key}=\""))? + key.len() + 3;
    let end = start + tag[start..].find('"')?;
    tag[start..end].parse().ok()
}

/// Rectangles written by [`emit_svg`], in file order.
pub fn parse_svg_rects(svg: &str) -> Vec<(String, Rect)> {
    let mut out = Vec::new();
    for line in svg.lines().filter(|l| l.starts_with("<rect ")) {
        let (Some(x), Some(y), Some(w), Some(h)) = (attr(line, "x"), attr(line, "y"), attr(line, "width"), attr(line, "height"))
        else {
            continue;
        };
        let name = line
            .split("<title>")
            .nth(1)
            .and_then(|t| t.split("</title>").next())
            .unwrap_or("")
            .replace("&quot;", "\"")
            .replace("&gt;", ">")
            .replace("&lt;", "<")
            .replace("&amp;", "&");
        out.push((name, Rect { x0: x, y0: y, x1: x + w, y1: y + h }));
    }
    out
}
