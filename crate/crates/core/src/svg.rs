//! Deterministic SVG output. Shapes live in a group flipped so that `y`
//! points up; text is flipped back locally.

use std::fmt::Write as _;

use crate::coding::Window;
use crate::geometry::Partition;
use crate::induction::Substitution2d;
use crate::tiles::{Label, TileSet, WangTile};

const BLUE: &str = "#6fa8dc";
const YELLOW: &str = "#ffd966";
const GREEN: &str = "#93c47d";
const WHITE: &str = "#ffffff";

/// Fill of an edge: `00*` blue, `01*` yellow, `11*` white; on a tile with
/// both blue and yellow edges the colored edges are drawn green.
pub fn edge_color(tile: &WangTile, label: Label) -> &'static str {
    let blue = |l: Label| l.v0() == 0 && l.v1() == 0;
    let yellow = |l: Label| l.v0() == 0 && l.v1() == 1;
    let labels = tile.labels();
    let overlap = labels.iter().any(|&l| blue(l)) && labels.iter().any(|&l| yellow(l));
    if overlap && (blue(label) || yellow(label)) {
        GREEN
    } else if blue(label) {
        BLUE
    } else if yellow(label) {
        YELLOW
    } else {
        WHITE
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

struct Canvas {
    width: f64,
    height: f64,
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(width: f64, height: f64, scale: f64) -> Self {
        Canvas { width, height, scale, body: String::new() }
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str) {
        let p: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        writeln!(self.body, r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="{}"/>"#, p.join(" "), num(0.02)).unwrap();
    }

    fn text(&mut self, x: f64, y: f64, size: f64, s: &str) {
        writeln!(
            self.body,
            r#"<text transform="scale(1,-1)" x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="middle">{s}</text>"#,
            num(x),
            num(-y),
            num(size)
        )
        .unwrap();
    }

    fn tile(&mut self, x: f64, y: f64, t: &WangTile, labels: bool) {
        let c = (x + 0.5, y + 0.5);
        let (a, b, cc, d) = ((x, y), (x + 1.0, y), (x + 1.0, y + 1.0), (x, y + 1.0));
        self.polygon(&[b, cc, c], edge_color(t, t.right));
        self.polygon(&[cc, d, c], edge_color(t, t.top));
        self.polygon(&[d, a, c], edge_color(t, t.left));
        self.polygon(&[a, b, c], edge_color(t, t.bottom));
        if labels {
            self.text(x + 0.82, y + 0.5, 0.16, &t.right.word());
            self.text(x + 0.5, y + 0.85, 0.16, &t.top.word());
            self.text(x + 0.18, y + 0.5, 0.16, &t.left.word());
            self.text(x + 0.5, y + 0.15, 0.16, &t.bottom.word());
        }
    }

    fn finish(self) -> String {
        let (w, h, s) = (self.width, self.height, self.scale);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"-0.1 -0.1 {} {}\">\n\
             <g transform=\"translate(0,{}) scale(1,-1)\">\n{}</g>\n</svg>\n",
            num(w * s),
            num(h * s),
            num(w + 0.2),
            num(h + 0.2),
            num(h),
            self.body
        )
    }
}

/// Tiles in rows of `columns`, index printed under each.
pub fn render_tileset(ts: &TileSet, columns: usize) -> String {
    let columns = columns.max(1);
    let rows = ts.len().div_ceil(columns);
    let (cw, ch) = (1.3, 1.5);
    let mut c = Canvas::new(columns as f64 * cw, rows as f64 * ch, 60.0);
    for (k, t) in ts.tiles().iter().enumerate() {
        let (i, j) = (k % columns, rows - 1 - k / columns);
        let (x, y) = (i as f64 * cw, j as f64 * ch + 0.4);
        c.tile(x, y, t, true);
        c.text(x + 0.5, y - 0.2, 0.22, &k.to_string());
    }
    c.finish()
}

pub fn render_window(w: &Window) -> String {
    let mut c = Canvas::new(w.width() as f64, w.height() as f64, 50.0);
    for j in 0..w.height() {
        for i in 0..w.width() {
            c.tile(i as f64, j as f64, w.tile(i, j), true);
        }
    }
    c.finish()
}

/// Atoms filled with a deterministic palette and labeled at their centroid.
pub fn render_partition<L: Ord + Clone>(part: &Partition<L>, label: impl Fn(&L) -> String) -> String {
    const PALETTE: [&str; 8] = ["#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6"];
    let size = 10.0;
    let mut c = Canvas::new(size, size, 60.0);
    for (k, (l, pieces)) in part.atoms().iter().enumerate() {
        for p in pieces {
            let pts: Vec<(f64, f64)> = p.vertices().iter().map(|v| (v.x.to_f64() * size, v.y.to_f64() * size)).collect();
            c.polygon(&pts, PALETTE[k % PALETTE.len()]);
            if let Some(ctr) = p.vertex_centroid() {
                c.text(ctr.x.to_f64() * size, ctr.y.to_f64() * size, 0.18, &label(l));
            }
        }
    }
    c.finish()
}

/// Each rule as the tile `a` next to its image block.
pub fn render_substitution(s: &Substitution2d, tiles: &TileSet, columns: usize) -> String {
    let columns = columns.max(1);
    let maxw = s.rules().values().map(|b| b.width()).max().unwrap_or(1) as f64;
    let maxh = s.rules().values().map(|b| b.height()).max().unwrap_or(1) as f64;
    let (cw, ch) = (maxw + 3.0, maxh + 1.5);
    let rows = s.len().div_ceil(columns);
    let mut c = Canvas::new(columns as f64 * cw, rows as f64 * ch, 30.0);
    for (k, (a, block)) in s.rules().iter().enumerate() {
        let x0 = (k % columns) as f64 * cw;
        let y0 = (rows - 1 - k / columns) as f64 * ch + 0.5;
        let tile = |l: usize| tiles.get(l).copied();
        if let Ok(t) = tile(*a) {
            c.tile(x0, y0 + (block.height() as f64 - 1.0) / 2.0, &t, false);
        }
        c.text(x0 + 0.5, y0 - 0.25, 0.4, &a.to_string());
        c.text(x0 + 1.5, y0 + block.height() as f64 / 2.0, 0.5, "↦");
        for j in 0..block.height() {
            for i in 0..block.width() {
                let l = block.get(i, j);
                if let Ok(t) = tile(l) {
                    c.tile(x0 + 2.0 + i as f64, y0 + j as f64, &t, false);
                }
            }
        }
    }
    c.finish()
}
