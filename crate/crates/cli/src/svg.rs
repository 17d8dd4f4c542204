//! Minimal SVG rendering of a classified grid: domain fills, K cells,
//! accessible-sample markers, and highlighted cut paths.

use dsets::accessibility::EndCut;
use dsets::raster::{ComplementDecomposition, Grid};
use dsets::Point;
use std::fmt::Write;

const DOMAIN_FILLS: [&str; 6] = [
    "#eceff1", // unbounded
    "#cfe3f7", "#f7e3cf", "#e3f7cf", "#f7cfe3", "#cff7f3",
];

fn domain_fill(decomp: &ComplementDecomposition, id: u32) -> &'static str {
    if id == decomp.unbounded_id() {
        DOMAIN_FILLS[0]
    } else {
        let k = decomp
            .domains
            .iter()
            .filter(|d| !d.unbounded)
            .position(|d| d.id == id)
            .unwrap_or(0);
        DOMAIN_FILLS[1 + k % (DOMAIN_FILLS.len() - 1)]
    }
}

/// Row-major run-length rectangles for every label (0 = K, drawn black).
fn cell_layers(grid: &Grid, decomp: &ComplementDecomposition, out: &mut String) {
    for r in 0..grid.rows {
        let mut c = 0usize;
        while c < grid.cols {
            let label = decomp.labels[grid.idx(r, c)];
            let start = c;
            while c < grid.cols && decomp.labels[grid.idx(r, c)] == label {
                c += 1;
            }
            let fill = if label == 0 {
                "#111111"
            } else {
                domain_fill(decomp, label)
            };
            let y = grid.rows - 1 - r;
            let _ = writeln!(
                out,
                r#"<rect x="{start}" y="{y}" width="{}" height="1" fill="{fill}"/>"#,
                c - start
            );
        }
    }
}

fn to_px(grid: &Grid, p: Point) -> (f64, f64) {
    (
        (p.x - grid.origin.x) / grid.h,
        grid.rows as f64 - (p.y - grid.origin.y) / grid.h,
    )
}

pub struct SvgLayers<'a> {
    pub a1_samples: &'a [Point],
    pub a2_samples: &'a [Point],
    pub cuts: &'a [EndCut],
}

pub fn render(grid: &Grid, decomp: &ComplementDecomposition, layers: &SvgLayers) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {} {}">"#,
        grid.cols, grid.rows
    );
    cell_layers(grid, decomp, &mut s);
    for (pts, color, r) in [
        (layers.a1_samples, "#d62728", 1.4),
        (layers.a2_samples, "#2ca02c", 0.9),
    ] {
        for &p in pts {
            let (x, y) = to_px(grid, p);
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{color}"/>"#);
        }
    }
    for cut in layers.cuts {
        let pts: Vec<String> = cut
            .path
            .vertices()
            .iter()
            .map(|&p| {
                let (x, y) = to_px(grid, p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline points="{}" fill="none" stroke="#ff7f0e" stroke-width="1.2"/>"##,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}
