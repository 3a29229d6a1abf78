//! The coding `Λ_n` by floors of three linear forms, the tile-valued map
//! `TILE_n`, and rectangular windows of the configurations
//! `(i, j) ↦ TILE_n(x + iβ⁻¹, y + jβ⁻¹)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::TileError;
use crate::quadfield::{FieldSpec, QuadNum, SmallQuad};
use crate::tiles::{metallic_tiles, theta_raw, FamilyTag, Label, TileSet, WangTile};

/// Windows larger than this are refused.
pub const MAX_WINDOW_CELLS: u64 = 4_000_000;

/// A point of the torus `[0,1)²`, stored reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    pub x: QuadNum,
    pub y: QuadNum,
}

impl TorusPoint {
    /// Reduces both coordinates modulo 1.
    pub fn new(x: QuadNum, y: QuadNum) -> Self {
        TorusPoint { x: x.frac(), y: y.frac() }
    }

    pub fn field(&self) -> FieldSpec {
        self.x.field()
    }

    /// The point moved by `β⁻¹·(a, b)` on the torus.
    pub fn rotate(&self, a: i64, b: i64) -> TorusPoint {
        let bi = QuadNum::beta_inv(self.field());
        TorusPoint::new(&self.x + bi.scale_int(a), &self.y + bi.scale_int(b))
    }
}

fn in_unit_interval(x: &QuadNum) -> bool {
    x.signum() >= 0 && (x - QuadNum::one(x.field())).signum() < 0
}

fn floor_i64(x: &QuadNum) -> i64 {
    x.floor().to_i64().expect("floor of a bounded linear form fits in i64")
}

/// `Λ_n(x, y)` without the domain check.
pub fn lambda_unchecked(x: &QuadNum, y: &QuadNum) -> Label {
    let field = x.field();
    let n = field.n() as i64;
    // β* + 1 = n + 1 − β
    let shift = QuadNum::new(
        field,
        num_rational::BigRational::from_integer(BigInt::from(n + 1)),
        -num_rational::BigRational::from_integer(BigInt::from(1)),
    );
    let base = y + &shift;
    let v0 = floor_i64(&base);
    let v1 = floor_i64(&(QuadNum::beta_inv(field) * x + &base));
    let v2 = floor_i64(&(QuadNum::beta(field) * x + &base));
    Label::new(v0, v1, v2)
}

/// `Λ_n(x, y)` for `x, y ∈ [0, 1)`.
pub fn lambda_floor(x: &QuadNum, y: &QuadNum) -> Result<Label, TileError> {
    for c in [x, y] {
        if !in_unit_interval(c) {
            return Err(TileError::OutsideUnitSquare(c.to_string()));
        }
    }
    Ok(lambda_unchecked(x, y))
}

/// Both sides of `Λ_n(x, y) = θ_n(Λ_n({x + β*}, y), Λ_n({y + β*}, x))`.
pub fn lemma72(x: &QuadNum, y: &QuadNum) -> Result<(Label, Label), TileError> {
    let field = x.field();
    let bc = QuadNum::beta_conj(field);
    let lhs = lambda_floor(x, y)?;
    let rhs = theta_raw(field.n(), lambda_floor(&(x + &bc).frac(), y)?, lambda_floor(&(y + &bc).frac(), x)?);
    Ok((lhs, rhs))
}

fn lambda_small(x: SmallQuad, y: SmallQuad) -> Option<Label> {
    let base = y.checked_add(SmallQuad { a: x.n + 1, b: -1, q: 1, n: x.n })?;
    let v0 = base.floor()?;
    let v1 = x.mul_beta_inv()?.checked_add(base)?.floor()?;
    let v2 = x.mul_beta()?.checked_add(base)?.floor()?;
    Some(Label::new(v0 as i64, v1 as i64, v2 as i64))
}

/// `TILE_n` on reduced machine-size coordinates; `None` on overflow.
fn tile_small(x: SmallQuad, y: SmallQuad) -> Option<WangTile> {
    // β* = n − β
    let bc = SmallQuad { a: x.n, b: -1, q: 1, n: x.n };
    let sx = x.checked_add(bc)?.frac()?;
    let sy = y.checked_add(bc)?.frac()?;
    Some(WangTile::new(
        lambda_small(x, y)?,
        lambda_small(y, x)?,
        lambda_small(sx, y)?,
        lambda_small(sy, x)?,
    ))
}

/// `TILE_n(x, y)`; fractional parts are taken internally.
pub fn tile_at(x: &QuadNum, y: &QuadNum) -> WangTile {
    let (fx, fy) = (x.frac(), y.frac());
    if let (Some(sx), Some(sy)) = (SmallQuad::from_quad(&fx), SmallQuad::from_quad(&fy)) {
        if let Some(t) = tile_small(sx, sy) {
            return t;
        }
    }
    tile_exact(&fx, &fy)
}

fn tile_exact(x: &QuadNum, y: &QuadNum) -> WangTile {
    let field = x.field();
    let bc = QuadNum::beta_conj(field);
    let sx = (x + &bc).frac();
    let sy = (y + &bc).frac();
    WangTile::new(
        lambda_unchecked(x, y),
        lambda_unchecked(y, x),
        lambda_unchecked(&sx, y),
        lambda_unchecked(&sy, x),
    )
}

/// A rectangular patch of a configuration. `cells[j][i]` is the index (into
/// the tile set) of the tile at position `(origin.0 + i, origin.1 + j)`, so
/// rows run upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    tileset: Arc<TileSet>,
    origin: (i64, i64),
    width: usize,
    height: usize,
    cells: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    /// Between `(i, j)` and `(i + 1, j)`.
    Horizontal,
    /// Between `(i, j)` and `(i, j + 1)`.
    Vertical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Absolute position of the left or lower cell of the mismatched pair.
    pub position: (i64, i64),
    pub adjacency: Adjacency,
    /// Right (or top) label of the first cell.
    pub first: Label,
    /// Left (or bottom) label of the second cell.
    pub second: Label,
}

impl Window {
    pub fn new(
        tileset: Arc<TileSet>,
        origin: (i64, i64),
        cells: Vec<Vec<usize>>,
    ) -> Result<Self, TileError> {
        let height = cells.len();
        let width = cells.first().map_or(0, Vec::len);
        if width == 0 || height == 0 {
            return Err(TileError::EmptyWindow { width: width as i64, height: height as i64 });
        }
        for row in &cells {
            if row.len() != width {
                return Err(TileError::Ragged);
            }
            for &idx in row {
                tileset.get(idx)?;
            }
        }
        Ok(Window { tileset, origin, width, height, cells })
    }

    pub fn tileset(&self) -> &Arc<TileSet> {
        &self.tileset
    }

    pub fn n(&self) -> u32 {
        self.tileset.n()
    }

    pub fn origin(&self) -> (i64, i64) {
        self.origin
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Tile index at offset `(di, dj)` from the origin.
    pub fn index(&self, di: usize, dj: usize) -> usize {
        self.cells[dj][di]
    }

    pub fn tile(&self, di: usize, dj: usize) -> &WangTile {
        &self.tileset.tiles()[self.cells[dj][di]]
    }

    /// The sub-window with offset `(di, dj)` and the given size.
    pub fn sub_window(&self, di: usize, dj: usize, width: usize, height: usize) -> Result<Window, TileError> {
        if di + width > self.width || dj + height > self.height {
            return Err(TileError::EmptyWindow { width: width as i64, height: height as i64 });
        }
        let cells = self.cells[dj..dj + height].iter().map(|r| r[di..di + width].to_vec()).collect();
        Window::new(
            self.tileset.clone(),
            (self.origin.0 + di as i64, self.origin.1 + dj as i64),
            cells,
        )
    }

    /// Copy of the window with one cell replaced.
    pub fn with_cell(&self, di: usize, dj: usize, index: usize) -> Result<Window, TileError> {
        self.tileset.get(index)?;
        let mut out = self.clone();
        out.cells[dj][di] = index;
        Ok(out)
    }

    /// Every mismatched pair of adjacent edges; empty iff the window is valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for dj in 0..self.height {
            for di in 0..self.width {
                let t = self.tile(di, dj);
                let pos = (self.origin.0 + di as i64, self.origin.1 + dj as i64);
                if di + 1 < self.width {
                    let u = self.tile(di + 1, dj);
                    if t.right != u.left {
                        out.push(Violation {
                            position: pos,
                            adjacency: Adjacency::Horizontal,
                            first: t.right,
                            second: u.left,
                        });
                    }
                }
                if dj + 1 < self.height {
                    let u = self.tile(di, dj + 1);
                    if t.top != u.bottom {
                        out.push(Violation {
                            position: pos,
                            adjacency: Adjacency::Vertical,
                            first: t.top,
                            second: u.bottom,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn check_valid(&self) -> Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }
}

/// The window `[i0, i0+width) × [j0, j0+height)` of the configuration
/// `c_p(i, j) = TILE_n(p + β⁻¹(i, j))`, indexed into `tileset` (normally
/// the base set).
pub fn window_in(
    tileset: Arc<TileSet>,
    p: &TorusPoint,
    origin: (i64, i64),
    width: usize,
    height: usize,
) -> Result<Window, TileError> {
    if width == 0 || height == 0 {
        return Err(TileError::EmptyWindow { width: width as i64, height: height as i64 });
    }
    let cells_total = width as u64 * height as u64;
    if cells_total > MAX_WINDOW_CELLS {
        return Err(TileError::WindowTooLarge { cells: cells_total, limit: MAX_WINDOW_CELLS });
    }
    let field = p.field();
    if field.n() != tileset.n() {
        return Err(TileError::Field(crate::error::FieldError::Mismatch {
            left: field.n(),
            right: tileset.n(),
        }));
    }
    let bi = QuadNum::beta_inv(field);
    let xs: Vec<QuadNum> = (0..width)
        .map(|di| (&p.x + bi.scale_int(origin.0 + di as i64)).frac())
        .collect();
    let ys: Vec<QuadNum> = (0..height)
        .map(|dj| (&p.y + bi.scale_int(origin.1 + dj as i64)).frac())
        .collect();
    let small_xs: Vec<Option<SmallQuad>> = xs.iter().map(SmallQuad::from_quad).collect();
    let small_ys: Vec<Option<SmallQuad>> = ys.iter().map(SmallQuad::from_quad).collect();
    let mut cells = Vec::with_capacity(height);
    for (y, sy) in ys.iter().zip(&small_ys) {
        let mut row = Vec::with_capacity(width);
        for (x, sx) in xs.iter().zip(&small_xs) {
            let t = match (sx, sy) {
                (Some(a), Some(b)) => tile_small(*a, *b),
                _ => None,
            }
            .unwrap_or_else(|| tile_exact(x, y));
            let idx = tileset
                .index_of(&t)
                .ok_or_else(|| TileError::NotInSet(t.to_string()))?;
            row.push(idx);
        }
        cells.push(row);
    }
    Window::new(tileset, origin, cells)
}

/// Window over the base set `T_n`.
pub fn window(p: &TorusPoint, origin: (i64, i64), width: usize, height: usize) -> Result<Window, TileError> {
    window_in(Arc::new(metallic_tiles(p.field().n())), p, origin, width, height)
}

/// A point whose tile is named explicitly, used to show that every tile of
/// the base set occurs in the image of `TILE_n`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub tag: FamilyTag,
    /// Coordinates as given, in `[0, 1]`, not reduced modulo 1.
    pub x: QuadNum,
    pub y: QuadNum,
}

/// Explicit points `(x, y)` with `TILE_n(x, y)` equal to a named tile, for
/// every family of the base set except the vertical variants, which follow
/// by swapping coordinates.
pub fn witnesses(field: FieldSpec) -> Vec<Witness> {
    let n = field.n();
    let one = QuadNum::one(field);
    let zero = QuadNum::zero(field);
    let beta = QuadNum::beta(field);
    let bi = QuadNum::beta_inv(field);
    let bi2 = &bi * &bi;
    let inv_b1 = (&beta + &one).recip().expect("β + 1 ≠ 0");
    let nq = QuadNum::from_int(field, n as i64);
    let ratio = |k: i64| QuadNum::from_ratio(field, k, n as i64);
    let mut out = Vec::new();
    let mut push = |tag: FamilyTag, x: QuadNum, y: QuadNum| {
        out.push(Witness { tag, x, y })
    };
    let half = QuadNum::from_ratio(field, 1, 2);
    let mid = |a: &QuadNum, b: &QuadNum| (a + b) * &half;

    push(FamilyTag::Junction { k: 0, l: 0, r: 0, s: 0 }, zero.clone(), zero.clone());
    push(FamilyTag::Junction { k: 0, l: 1, r: 0, s: 0 }, bi2.clone(), zero.clone());
    push(FamilyTag::Junction { k: 0, l: 0, r: 0, s: 1 }, zero.clone(), bi2.clone());
    let c = (&beta * (&beta + &one)).recip().expect("nonzero");
    push(FamilyTag::Junction { k: 0, l: 1, r: 0, s: 1 }, c.clone(), c);
    // Midpoints of the segments (0, β⁻¹) → (1/(β+1), 1/(β+1)) and its mirror.
    push(FamilyTag::Junction { k: 1, l: 1, r: 0, s: 1 }, mid(&zero, &inv_b1), mid(&bi, &inv_b1));
    push(FamilyTag::Junction { k: 0, l: 1, r: 1, s: 1 }, mid(&bi, &inv_b1), mid(&zero, &inv_b1));
    push(FamilyTag::Junction { k: 1, l: 1, r: 1, s: 1 }, inv_b1.clone(), inv_b1.clone());

    push(FamilyTag::BlueH { i: 0 }, bi.clone(), zero.clone());
    for i in 1..n {
        push(FamilyTag::BlueH { i }, &bi2 + bi.scale_int(i as i64), zero.clone());
    }
    push(FamilyTag::GreenH { i: 0 }, bi.clone(), &bi2 * (&beta - &one));
    for i in 1..=n {
        let t = ratio(i as i64);
        push(FamilyTag::GreenH { i }, t.clone(), &bi * (&one - &t));
    }
    let eps = QuadNum::from_ratio(field, 1, 1000);
    push(FamilyTag::YellowH { i: 1 }, &bi + &eps, &bi - &eps * &bi);
    for i in 2..=n {
        let x = (QuadNum::from_int(field, i as i64) - &bi2) / &nq;
        let y = (&bi / &nq) * (&nq - QuadNum::from_int(field, i as i64) + &bi - &bi2);
        push(FamilyTag::YellowH { i }, x, y);
    }
    push(FamilyTag::White { i: 1, j: 1 }, bi.clone(), bi.clone());
    for j in 2..=n {
        push(FamilyTag::White { i: 1, j }, bi.clone(), bi.scale_int(j as i64) - &bi2);
    }
    for i in 2..=n {
        push(FamilyTag::White { i, j: 1 }, bi.scale_int(i as i64) - &bi2, bi.clone());
    }
    for i in 2..=n {
        for j in 2..=n {
            let (a, b) = ((i - 1) as i64, (j - 1) as i64);
            let x = &bi + (QuadNum::from_int(field, a) - bi.scale_int(b)) / &nq;
            let y = &bi + (QuadNum::from_int(field, b) - bi.scale_int(a)) / &nq;
            push(FamilyTag::White { i, j }, x, y);
        }
    }
    out
}

/// Swaps the coordinates of a witness, turning a horizontal family member
/// into its vertical counterpart.
pub fn reflect_tag(tag: FamilyTag) -> FamilyTag {
    match tag {
        FamilyTag::White { i, j } => FamilyTag::White { i: j, j: i },
        FamilyTag::BlueH { i } => FamilyTag::BlueV { i },
        FamilyTag::BlueV { i } => FamilyTag::BlueH { i },
        FamilyTag::YellowH { i } => FamilyTag::YellowV { i },
        FamilyTag::YellowV { i } => FamilyTag::YellowH { i },
        FamilyTag::GreenH { i } => FamilyTag::GreenV { i },
        FamilyTag::GreenV { i } => FamilyTag::GreenH { i },
        FamilyTag::AntigreenH { i } => FamilyTag::AntigreenV { i },
        FamilyTag::AntigreenV { i } => FamilyTag::AntigreenH { i },
        FamilyTag::Junction { k, l, r, s } => FamilyTag::Junction { k: r, l: s, r: k, s: l },
    }
}

/// Floor of `v + ε·dv` for infinitesimal `ε > 0`.
fn floor_towards(v: &QuadNum, dv: &QuadNum) -> i64 {
    let f = floor_i64(v);
    if dv.signum() < 0 && v.frac().is_zero() {
        f - 1
    } else {
        f
    }
}

/// `Λ_n` at `(x, y) + ε·(dx, dy)` for infinitesimal `ε > 0`; `x, y` are
/// already reduced to `[0, 1]` along the direction.
fn lambda_towards(x: &QuadNum, y: &QuadNum, dx: &QuadNum, dy: &QuadNum) -> Label {
    let field = x.field();
    let shift = QuadNum::from_int(field, field.n() as i64 + 1) - QuadNum::beta(field);
    let base = y + &shift;
    let bi = QuadNum::beta_inv(field);
    let beta = QuadNum::beta(field);
    Label::new(
        floor_towards(&base, dy),
        floor_towards(&(&bi * x + &base), &(&bi * dx + dy)),
        floor_towards(&(&beta * x + &base), &(&beta * dx + dy)),
    )
}

/// Fractional part of `v + ε·dv` as `ε → 0⁺`; lands in `[0, 1]`.
fn frac_towards(v: &QuadNum, dv: &QuadNum) -> QuadNum {
    v - QuadNum::from_int(v.field(), floor_towards(v, dv))
}

/// The limit of `TILE_n((x, y) + ε·(dx, dy))` as `ε → 0⁺`. Every point of
/// the closure of the region where `TILE_n` takes a given value is a limit
/// of this kind.
pub fn tile_towards(x: &QuadNum, y: &QuadNum, dx: &QuadNum, dy: &QuadNum) -> WangTile {
    let bc = QuadNum::beta_conj(x.field());
    let (fx, fy) = (frac_towards(x, dx), frac_towards(y, dy));
    let sx = frac_towards(&(x + &bc), dx);
    let sy = frac_towards(&(y + &bc), dy);
    WangTile::new(
        lambda_towards(&fx, &fy, dx, dy),
        lambda_towards(&fy, &fx, dy, dx),
        lambda_towards(&sx, &fy, dx, dy),
        lambda_towards(&sy, &fx, dy, dx),
    )
}

/// Directions tried when a witness point lies on the boundary of its
/// region, shortest first. Both components are nonzero, so none is parallel
/// to a boundary line (slopes 0, ∞, −β⁻¹, −β).
fn nudge_directions(n: u32) -> Vec<(i64, i64)> {
    let m = n as i64 + 2;
    let mut dirs = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            if a != 0 && b != 0 && num_integer::gcd(a, b) == 1 {
                dirs.push((a, b));
            }
        }
    }
    dirs.sort_by_key(|&(a, b)| (a.abs() + b.abs(), -a, -b));
    dirs
}

#[derive(Clone, Debug)]
pub struct WitnessOutcome {
    pub tag: FamilyTag,
    pub x: QuadNum,
    pub y: QuadNum,
    /// `TILE_n` at the point itself.
    pub value: WangTile,
    /// Direction along which `TILE_n` tends to the named tile, when the
    /// value at the point differs.
    pub direction: Option<(i64, i64)>,
    /// A point near `point` where `TILE_n` equals the named tile exactly.
    pub interior_point: Option<TorusPoint>,
}

impl WitnessOutcome {
    pub fn exact(&self) -> bool {
        self.direction.is_none() && self.interior_point.is_some()
    }

    pub fn realized(&self) -> bool {
        self.interior_point.is_some()
    }
}

fn check_witness(tag: FamilyTag, x: QuadNum, y: QuadNum) -> WitnessOutcome {
    let field = x.field();
    let n = field.n();
    let expected = tag.tile(n).expect("witness tags are in range");
    let value = tile_at(&x, &y);
    if value == expected {
        return WitnessOutcome {
            tag,
            interior_point: Some(TorusPoint::new(x.clone(), y.clone())),
            x,
            y,
            value,
            direction: None,
        };
    }
    for (a, b) in nudge_directions(n) {
        let (dx, dy) = (QuadNum::from_int(field, a), QuadNum::from_int(field, b));
        if tile_towards(&x, &y, &dx, &dy) != expected {
            continue;
        }
        let mut eps = QuadNum::from_ratio(field, 1, 16);
        let half = QuadNum::from_ratio(field, 1, 2);
        for _ in 0..200 {
            let q = TorusPoint::new(&x + &dx * &eps, &y + &dy * &eps);
            if tile_at(&q.x, &q.y) == expected {
                return WitnessOutcome {
                    tag,
                    x,
                    y,
                    value,
                    direction: Some((a, b)),
                    interior_point: Some(q),
                };
            }
            eps = &eps * &half;
        }
    }
    WitnessOutcome { tag, x, y, value, direction: None, interior_point: None }
}

/// Checks every witness and its mirror image.
pub fn witness_outcomes(field: FieldSpec) -> Vec<WitnessOutcome> {
    let mut out = Vec::new();
    for w in witnesses(field) {
        out.push(check_witness(w.tag, w.x.clone(), w.y.clone()));
        out.push(check_witness(reflect_tag(w.tag), w.y, w.x));
    }
    out
}
