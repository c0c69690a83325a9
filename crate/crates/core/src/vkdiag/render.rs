use std::collections::BTreeSet;
use std::fmt::Write;

use super::Diagram;
use crate::freeprod::FreeProduct;

/// Boundary vertices evenly on the unit circle in walk order, the rest at
/// the barycentre of their neighbours (Gauss-Seidel sweeps).
pub fn tutte_layout(d: &Diagram, sweeps: usize) -> Vec<(f64, f64)> {
    let n = d.num_vertices;
    let mut xy = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    let mut ring = Vec::new();
    let mut seen = BTreeSet::new();
    for &x in &d.boundary {
        let v = d.tail(x);
        if seen.insert(v) {
            ring.push(v);
        }
    }
    if ring.is_empty() {
        ring.push(d.base);
    }
    let k = ring.len() as f64;
    for (i, &v) in ring.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / k;
        xy[v] = (t.cos(), -t.sin());
        fixed[v] = true;
    }
    for _ in 0..sweeps {
        for v in 0..n {
            if fixed[v] || d.rotation[v].is_empty() {
                continue;
            }
            let (mut sx, mut sy) = (0.0, 0.0);
            for &x in &d.rotation[v] {
                let w = d.head(x);
                sx += xy[w].0;
                sy += xy[w].1;
            }
            let m = d.rotation[v].len() as f64;
            xy[v] = (sx / m, sy / m);
        }
    }
    xy
}

pub fn to_dot(d: &Diagram, fp: &FreeProduct) -> String {
    let mut s = String::from("digraph diagram {\n  node [shape=point];\n");
    for (i, e) in d.edges.iter().enumerate() {
        let _ = writeln!(s, "  {} -> {} [label=\"{}\", id=\"e{i}\"];", e.u, e.v, fp.letter_name(e.label));
    }
    for (i, f) in d.faces.iter().enumerate() {
        let _ = writeln!(
            s,
            "  // face {i}{}: {}",
            if f.trivial { " (trivial)" } else { "" },
            fp.format_word(&d.face_word(i, fp))
        );
    }
    s.push_str("}\n");
    s
}

pub fn to_svg(d: &Diagram, fp: &FreeProduct) -> String {
    let xy = tutte_layout(d, 500);
    let size = 600.0;
    let map = |p: (f64, f64)| (size / 2.0 + p.0 * size * 0.42, size / 2.0 + p.1 * size * 0.42);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    for (i, f) in d.faces.iter().enumerate() {
        let pts: Vec<String> = f
            .darts
            .iter()
            .map(|&x| {
                let (a, b) = map(xy[d.tail(x)]);
                format!("{a:.2},{b:.2}")
            })
            .collect();
        let fill = if f.trivial { "#eeeeee" } else { "#dde8f4" };
        let _ = writeln!(s, r#"  <polygon id="f{i}" points="{}" fill="{fill}" stroke="none"/>"#, pts.join(" "));
    }
    for (i, e) in d.edges.iter().enumerate() {
        let (x1, y1) = map(xy[e.u]);
        let (x2, y2) = map(xy[e.v]);
        let _ = writeln!(
            s,
            r#"  <line id="e{i}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"  <text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
            (x1 + x2) / 2.0,
            (y1 + y2) / 2.0,
            fp.letter_name(e.label)
        );
    }
    for v in 0..d.num_vertices {
        let (x, y) = map(xy[v]);
        let r = if v == d.base { 4 } else { 2 };
        let _ = writeln!(s, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="{r}"/>"#);
    }
    s.push_str("</svg>\n");
    s
}
