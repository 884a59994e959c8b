//! Static SVG of the cell decomposition on a 2-D slice of `R^E`.
//!
//! For `|E| = 3` the slice is `α_1 = 0`; for `|E| = 4` it is
//! `α_1 = α_4 = 0`. The two middle coordinates are plotted.

use std::collections::BTreeMap;
use std::fmt::Write;

use valflock::{ExtInt, IntVec, Subset, Valuation};

use crate::Failure;

/// Samples per unit length.
const SCALE: i64 = 4;
const PX: i64 = 6;
const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

fn point(n: usize, u: i64, v: i64) -> IntVec {
    let mut a = IntVec::zeros(n);
    a.0[1] = u;
    a.0[2] = v;
    a
}

pub fn cell_slice(nu: &Valuation, radius: Option<i64>) -> Result<String, Failure> {
    let n = nu.n();
    if !(3..=4).contains(&n) {
        return Err(Failure::Input(format!(
            "--svg needs a ground set of size 3 or 4, found {n}"
        )));
    }
    let radius = radius.unwrap_or(2 * nu.spread() + 2);
    if !(1..=50).contains(&radius) {
        return Err(Failure::Input(format!("radius {radius} outside 1..=50")));
    }
    // Scaling ν by SCALE lets integer points sample a finer grid.
    let fine = Valuation::from_fn(nu.ground().clone(), nu.d(), |b| match nu.get(b) {
        ExtInt::Fin(x) => ExtInt::Fin(SCALE * x),
        ExtInt::Inf => ExtInt::Inf,
    });
    let r = radius * SCALE;
    let side = (2 * r + 1) * PX;
    let mut colors: BTreeMap<Vec<Subset>, &str> = BTreeMap::new();
    let mut svg = String::new();
    writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"##,
        w = side + 40,
        h = side + 40
    )
    .unwrap();
    writeln!(svg, r#"<g transform="translate(30,10)" shape-rendering="crispEdges">"#).unwrap();
    let w = (2 * r + 1) as usize;
    let grid: Vec<Vec<Subset>> = (0..w * w)
        .map(|k| {
            let (u, v) = ((k % w) as i64 - r, r - (k / w) as i64);
            fine.optimal_bases(&point(n, u, v))
        })
        .collect();
    // Samples whose family differs from a neighbour's lie on a wall.
    let on_wall = |k: usize| {
        let (x, y) = (k % w, k / w);
        let mut nbrs = Vec::new();
        if x > 0 {
            nbrs.push(k - 1);
        }
        if x + 1 < w {
            nbrs.push(k + 1);
        }
        if y > 0 {
            nbrs.push(k - w);
        }
        if y + 1 < w {
            nbrs.push(k + w);
        }
        nbrs.into_iter().any(|j| grid[j] != grid[k])
    };
    for (k, family) in grid.iter().enumerate() {
        let fill = if on_wall(k) {
            "#444444"
        } else {
            let next = PALETTE[colors.len() % PALETTE.len()];
            *colors.entry(family.clone()).or_insert(next)
        };
        writeln!(
            svg,
            r##"<rect x="{}" y="{}" width="{PX}" height="{PX}" fill="{fill}"/>"##,
            (k % w) as i64 * PX,
            (k / w) as i64 * PX
        )
        .unwrap();
    }
    writeln!(svg, "</g>").unwrap();
    let labels = nu.ground().labels();
    for p in nu.zero_dimensional_cells(0, radius) {
        if n == 4 && p[3] != 0 {
            continue;
        }
        let (cx, cy) = ((p[1] * SCALE + r) * PX + PX / 2 + 30, (r - p[2] * SCALE) * PX + PX / 2 + 10);
        writeln!(svg, r##"<circle cx="{cx}" cy="{cy}" r="4" fill="none" stroke="#cc0000" stroke-width="2"/>"##).unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">alpha_{} from {} to {}</text>"#,
        30,
        side + 32,
        labels[1],
        -radius,
        radius
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="12" y="{}" font-family="sans-serif" font-size="12" transform="rotate(-90 12 {})">alpha_{}</text>"#,
        side / 2,
        side / 2,
        labels[2]
    )
    .unwrap();
    svg.push_str("</svg>\n");
    Ok(svg)
}
