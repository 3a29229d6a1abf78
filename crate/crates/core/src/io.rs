//! JSON documents for tile sets, windows, partitions and substitutions.
//!
//! Every document carries `"schema": "metallic-tiler/v1"` and a `"document"`
//! tag. Two-dimensional arrays list their top row first.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coding::{window_in, TorusPoint, Violation, Window};
use crate::error::IoError;
use crate::geometry::{ConvexPolygon, Partition, Point};
use crate::induction::{Block, Substitution2d};
use crate::quadfield::{FieldSpec, QuadNum, QuadNumRepr};
use crate::tiles::{chip_tiles, classify, extended_tiles, metallic_tiles, TileSet, TileSetKind, WangTile};

pub const SCHEMA: &str = "metallic-tiler/v1";

fn schema() -> String {
    SCHEMA.to_string()
}

fn field(n: u32) -> Result<FieldSpec, IoError> {
    Ok(FieldSpec::new(n)?)
}

pub fn tileset_of_kind(n: u32, kind: TileSetKind) -> TileSet {
    match kind {
        TileSetKind::Chip => chip_tiles(n),
        TileSetKind::Extended => extended_tiles(n),
        TileSetKind::Base => metallic_tiles(n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileEntry {
    pub index: usize,
    #[serde(flatten)]
    pub tile: WangTile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileSetDoc {
    pub schema: String,
    pub n: u32,
    pub set: TileSetKind,
    pub tiles: Vec<TileEntry>,
}

impl TileSetDoc {
    pub fn new(ts: &TileSet) -> Self {
        let tiles = ts
            .tiles()
            .iter()
            .enumerate()
            .map(|(index, &tile)| TileEntry { index, tile, family: classify(ts.n(), &tile).map(|f| f.name()) })
            .collect();
        TileSetDoc { schema: schema(), n: ts.n(), set: ts.kind(), tiles }
    }

    pub fn to_tileset(&self) -> Result<TileSet, IoError> {
        field(self.n)?;
        for (k, e) in self.tiles.iter().enumerate() {
            if e.index != k {
                return Err(IoError::Malformed(format!("tile {k} has index {}", e.index)));
            }
        }
        let ts = TileSet::from_tiles(self.n, self.set, self.tiles.iter().map(|e| e.tile));
        if ts.tiles() != self.tiles.iter().map(|e| e.tile).collect::<Vec<_>>().as_slice() {
            return Err(IoError::Malformed("tiles must be sorted and distinct".into()));
        }
        Ok(ts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub x: QuadNumRepr,
    pub y: QuadNumRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub schema: String,
    pub n: u32,
    pub set: TileSetKind,
    /// Absolute position of the lower-left cell.
    pub origin: [i64; 2],
    pub width: usize,
    pub height: usize,
    /// Generating torus point, when the window comes from one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointDoc>,
    /// Tile indices, top row first.
    pub rows: Vec<Vec<usize>>,
    /// The tile set the indices refer to.
    pub tiles: Vec<WangTile>,
}

impl WindowDoc {
    pub fn new(w: &Window, point: Option<&TorusPoint>) -> Self {
        WindowDoc {
            schema: schema(),
            n: w.n(),
            set: w.tileset().kind(),
            origin: [w.origin().0, w.origin().1],
            width: w.width(),
            height: w.height(),
            point: point.map(|p| PointDoc { x: p.x.to_repr(), y: p.y.to_repr() }),
            rows: w.cells().iter().rev().cloned().collect(),
            tiles: w.tileset().tiles().to_vec(),
        }
    }

    pub fn to_window(&self) -> Result<Window, IoError> {
        field(self.n)?;
        let ts = TileSet::from_tiles(self.n, self.set, self.tiles.iter().copied());
        if ts.tiles() != self.tiles.as_slice() {
            return Err(IoError::Malformed("tiles must be sorted and distinct".into()));
        }
        if self.rows.len() != self.height || self.rows.iter().any(|r| r.len() != self.width) {
            return Err(IoError::Malformed("rows do not match width and height".into()));
        }
        let cells = self.rows.iter().rev().cloned().collect();
        Window::new(Arc::new(ts), (self.origin[0], self.origin[1]), cells).map_err(|e| IoError::Malformed(e.to_string()))
    }

    pub fn point(&self) -> Result<Option<TorusPoint>, IoError> {
        let f = field(self.n)?;
        self.point
            .as_ref()
            .map(|p| Ok(TorusPoint::new(QuadNum::from_repr(f, &p.x)?, QuadNum::from_repr(f, &p.y)?)))
            .transpose()
    }
}

/// Outcome of validating a window document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCheck {
    /// The listed tiles are exactly the named set for `n`.
    pub tileset_matches: bool,
    pub violations: Vec<Violation>,
    /// `Some(false)` when a generating point is given and the cells differ
    /// from its coding.
    pub matches_point: Option<bool>,
}

impl WindowCheck {
    pub fn ok(&self) -> bool {
        self.tileset_matches && self.violations.is_empty() && self.matches_point != Some(false)
    }
}

pub fn check_window_doc(doc: &WindowDoc) -> Result<WindowCheck, IoError> {
    let w = doc.to_window()?;
    let expected = tileset_of_kind(doc.n, doc.set);
    let tileset_matches = expected.tiles() == w.tileset().tiles();
    let matches_point = match doc.point()? {
        Some(p) if tileset_matches => {
            let coded = window_in(Arc::clone(w.tileset()), &p, w.origin(), w.width(), w.height())
                .map_err(|e| IoError::Malformed(e.to_string()))?;
            Some(coded.cells() == w.cells())
        }
        Some(_) => Some(false),
        None => None,
    };
    Ok(WindowCheck { tileset_matches, violations: w.violations(), matches_point })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tile: Option<WangTile>,
    pub area: QuadNumRepr,
    /// Convex pieces, vertices counterclockwise.
    pub pieces: Vec<Vec<[QuadNumRepr; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub schema: String,
    pub n: u32,
    pub which: String,
    pub domain: Vec<[QuadNumRepr; 2]>,
    pub atoms: Vec<AtomDoc>,
}

fn polygon_doc(p: &ConvexPolygon) -> Vec<[QuadNumRepr; 2]> {
    p.vertices().iter().map(|v| [v.x.to_repr(), v.y.to_repr()]).collect()
}

fn polygon_from(f: FieldSpec, vs: &[[QuadNumRepr; 2]]) -> Result<ConvexPolygon, IoError> {
    let pts = vs
        .iter()
        .map(|[x, y]| Ok(Point::new(QuadNum::from_repr(f, x)?, QuadNum::from_repr(f, y)?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    let poly = ConvexPolygon::from_vertices(pts);
    if poly.vertices().len() != vs.len() {
        return Err(IoError::Malformed("polygon is not strictly convex".into()));
    }
    Ok(poly)
}

impl PartitionDoc {
    /// `label` names each atom; `tile` optionally attaches its Wang tile.
    pub fn new<L: Ord + Clone>(
        n: u32,
        which: &str,
        part: &Partition<L>,
        label: impl Fn(&L) -> String,
        tile: impl Fn(&L) -> Option<WangTile>,
    ) -> Self {
        let atoms = part
            .atoms()
            .iter()
            .map(|(l, pieces)| AtomDoc {
                label: label(l),
                tile: tile(l),
                area: part.atom_area(l).to_repr(),
                pieces: pieces.iter().map(polygon_doc).collect(),
            })
            .collect();
        PartitionDoc { schema: schema(), n, which: which.to_string(), domain: polygon_doc(part.domain()), atoms }
    }

    pub fn to_partition(&self) -> Result<Partition<String>, IoError> {
        let f = field(self.n)?;
        let mut part = Partition::new(f, polygon_from(f, &self.domain)?);
        for a in &self.atoms {
            let mut area = QuadNum::zero(f);
            for piece in &a.pieces {
                let poly = polygon_from(f, piece)?;
                area = area + poly.area_in(f);
                part.insert(a.label.clone(), poly);
            }
            if area != QuadNum::from_repr(f, &a.area)? {
                return Err(IoError::Malformed(format!("area of atom {} does not match its pieces", a.label)));
            }
        }
        Ok(part)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionDoc {
    pub schema: String,
    pub n: u32,
    /// Label index ↦ block, top row first.
    pub rules: BTreeMap<String, Vec<Vec<String>>>,
    pub tile_order: Vec<WangTile>,
}

impl SubstitutionDoc {
    pub fn new(n: u32, s: &Substitution2d, tiles: &TileSet) -> Self {
        let rules = s
            .rules()
            .iter()
            .map(|(a, b)| {
                let rows = b.cells().iter().rev().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                (a.to_string(), rows)
            })
            .collect();
        SubstitutionDoc { schema: schema(), n, rules, tile_order: tiles.tiles().to_vec() }
    }

    pub fn to_substitution(&self) -> Result<Substitution2d, IoError> {
        let parse = |s: &str| s.parse::<usize>().map_err(|_| IoError::Malformed(format!("bad label `{s}`")));
        let mut rules = BTreeMap::new();
        for (a, rows) in &self.rules {
            let cells = rows
                .iter()
                .rev()
                .map(|r| r.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            rules.insert(parse(a)?, Block::new(cells).map_err(|e| IoError::Malformed(e.to_string()))?);
        }
        Ok(Substitution2d::new(rules))
    }
}

/// Any document, dispatched on its `"document"` tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "document", rename_all = "lowercase")]
pub enum Document {
    Tileset(TileSetDoc),
    Window(WindowDoc),
    Partition(PartitionDoc),
    Substitution(SubstitutionDoc),
}

impl Document {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(SCHEMA) => {}
        Some(other) => return Err(IoError::Schema(other.to_string())),
        None => return Err(IoError::Schema(String::new())),
    }
    Ok(serde_json::from_value(value)?)
}
