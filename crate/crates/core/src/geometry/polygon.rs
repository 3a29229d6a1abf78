//! Convex polygons with vertices in `Q(β)²`.

use std::cmp::Ordering;
use std::fmt;

use crate::quadfield::{FieldSpec, QuadNum};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: QuadNum,
    pub y: QuadNum,
}

impl Point {
    pub fn new(x: QuadNum, y: QuadNum) -> Self {
        Point { x, y }
    }

    pub fn field(&self) -> FieldSpec {
        self.x.field()
    }

    pub fn translate(&self, dx: &QuadNum, dy: &QuadNum) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The closed half-plane `c0 + cx·x + cy·y ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub c0: QuadNum,
    pub cx: QuadNum,
    pub cy: QuadNum,
}

impl HalfPlane {
    pub fn new(c0: QuadNum, cx: QuadNum, cy: QuadNum) -> Self {
        HalfPlane { c0, cx, cy }
    }

    /// `x ≥ t`.
    pub fn x_at_least(t: &QuadNum) -> Self {
        let f = t.field();
        HalfPlane::new(-t, QuadNum::one(f), QuadNum::zero(f))
    }

    /// `x ≤ t`.
    pub fn x_at_most(t: &QuadNum) -> Self {
        let f = t.field();
        HalfPlane::new(t.clone(), -QuadNum::one(f), QuadNum::zero(f))
    }

    /// `y ≥ t`.
    pub fn y_at_least(t: &QuadNum) -> Self {
        let f = t.field();
        HalfPlane::new(-t, QuadNum::zero(f), QuadNum::one(f))
    }

    /// `y ≤ t`.
    pub fn y_at_most(t: &QuadNum) -> Self {
        let f = t.field();
        HalfPlane::new(t.clone(), QuadNum::zero(f), -QuadNum::one(f))
    }

    pub fn eval(&self, p: &Point) -> QuadNum {
        &self.c0 + &self.cx * &p.x + &self.cy * &p.y
    }

    /// The opposite closed half-plane.
    pub fn complement(&self) -> HalfPlane {
        HalfPlane::new(-&self.c0, -&self.cx, -&self.cy)
    }
}

/// A convex polygon with vertices listed counterclockwise, starting from
/// the lexicographically smallest, with no repeated or collinear vertices.
/// The empty polygon has no vertices; anything of zero area is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

fn cross(o: &Point, a: &Point, b: &Point) -> QuadNum {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        ConvexPolygon { vertices: Vec::new() }
    }

    /// Builds a polygon from counterclockwise vertices of a convex region,
    /// dropping duplicates and collinear points.
    pub fn from_ccw(vertices: Vec<Point>) -> Self {
        let mut pts: Vec<Point> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if pts.last() != Some(&v) {
                pts.push(v);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        // Remove vertices where the boundary does not turn.
        let mut changed = true;
        while changed && pts.len() >= 3 {
            changed = false;
            let m = pts.len();
            for i in 0..m {
                let prev = &pts[(i + m - 1) % m];
                let next = &pts[(i + 1) % m];
                if cross(prev, &pts[i], next).signum() == 0 {
                    pts.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if pts.len() < 3 {
            return ConvexPolygon::empty();
        }
        let start = (0..pts.len()).min_by(|&a, &b| pts[a].cmp(&pts[b])).expect("nonempty");
        pts.rotate_left(start);
        ConvexPolygon { vertices: pts }
    }

    /// Builds a polygon from vertices listed in either orientation.
    pub fn from_vertices(mut vertices: Vec<Point>) -> Self {
        if signed_area2(&vertices).signum() < 0 {
            vertices.reverse();
        }
        ConvexPolygon::from_ccw(vertices)
    }

    /// The rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: &QuadNum, y0: &QuadNum, x1: &QuadNum, y1: &QuadNum) -> Self {
        ConvexPolygon::from_ccw(vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0.clone()),
            Point::new(x1.clone(), y1.clone()),
            Point::new(x0.clone(), y1.clone()),
        ])
    }

    pub fn unit_square(field: FieldSpec) -> Self {
        let (z, o) = (QuadNum::zero(field), QuadNum::one(field));
        ConvexPolygon::rectangle(&z, &z, &o, &o)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> Option<QuadNum> {
        if self.is_empty() {
            return None;
        }
        Some(signed_area2(&self.vertices).scale(&half()))
    }

    /// Area, with the empty polygon having area zero.
    pub fn area_in(&self, field: FieldSpec) -> QuadNum {
        self.area().unwrap_or_else(|| QuadNum::zero(field))
    }

    /// Intersection with a closed half-plane.
    pub fn clip(&self, h: &HalfPlane) -> ConvexPolygon {
        if self.is_empty() {
            return ConvexPolygon::empty();
        }
        let vals: Vec<QuadNum> = self.vertices.iter().map(|p| h.eval(p)).collect();
        let signs: Vec<i32> = vals.iter().map(QuadNum::signum).collect();
        if signs.iter().all(|&s| s >= 0) {
            return self.clone();
        }
        if signs.iter().all(|&s| s <= 0) {
            return ConvexPolygon::empty();
        }
        let m = self.vertices.len();
        let mut out = Vec::with_capacity(m + 1);
        for i in 0..m {
            let j = (i + 1) % m;
            let (p, q) = (&self.vertices[i], &self.vertices[j]);
            if signs[i] >= 0 {
                out.push(p.clone());
            }
            if signs[i] * signs[j] < 0 {
                let t = &vals[i] / (&vals[i] - &vals[j]);
                out.push(Point::new(&p.x + &t * (&q.x - &p.x), &p.y + &t * (&q.y - &p.y)));
            }
        }
        ConvexPolygon::from_ccw(out)
    }

    pub fn clip_all<'a>(&self, hs: impl IntoIterator<Item = &'a HalfPlane>) -> ConvexPolygon {
        let mut cur = self.clone();
        for h in hs {
            if cur.is_empty() {
                break;
            }
            cur = cur.clip(h);
        }
        cur
    }

    /// The closed half-planes bounding the polygon, one per edge.
    pub fn edge_halfplanes(&self) -> Vec<HalfPlane> {
        let m = self.vertices.len();
        (0..m)
            .map(|i| {
                let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % m]);
                // Left of p→q: (q−p) × (z−p) ≥ 0.
                let dx = &q.x - &p.x;
                let dy = &q.y - &p.y;
                let c0 = &dy * &p.x - &dx * &p.y;
                HalfPlane::new(c0, -dy, dx)
            })
            .collect()
    }

    pub fn intersection(&self, other: &ConvexPolygon) -> ConvexPolygon {
        if self.is_empty() || other.is_empty() || !self.bbox_overlaps(other) {
            return ConvexPolygon::empty();
        }
        self.clip_all(&other.edge_halfplanes())
    }

    fn bbox(&self) -> (QuadNum, QuadNum, QuadNum, QuadNum) {
        let xs = self.vertices.iter().map(|p| &p.x);
        let ys = self.vertices.iter().map(|p| &p.y);
        (
            xs.clone().min().expect("nonempty").clone(),
            ys.clone().min().expect("nonempty").clone(),
            xs.max().expect("nonempty").clone(),
            ys.max().expect("nonempty").clone(),
        )
    }

    /// Whether the bounding boxes overlap with positive area.
    pub fn bbox_overlaps(&self, other: &ConvexPolygon) -> bool {
        let (ax0, ay0, ax1, ay1) = self.bbox();
        let (bx0, by0, bx1, by1) = other.bbox();
        ax0 < bx1 && bx0 < ax1 && ay0 < by1 && by0 < ay1
    }

    /// Closed containment.
    pub fn contains(&self, p: &Point) -> bool {
        !self.is_empty() && self.edge_halfplanes().iter().all(|h| h.eval(p).signum() >= 0)
    }

    /// Strict interior containment.
    pub fn contains_interior(&self, p: &Point) -> bool {
        !self.is_empty() && self.edge_halfplanes().iter().all(|h| h.eval(p).signum() > 0)
    }

    /// Average of the vertices, an interior point.
    pub fn vertex_centroid(&self) -> Option<Point> {
        if self.is_empty() {
            return None;
        }
        let f = self.vertices[0].field();
        let m = QuadNum::from_int(f, self.vertices.len() as i64);
        let sx = self.vertices.iter().fold(QuadNum::zero(f), |acc, p| acc + &p.x);
        let sy = self.vertices.iter().fold(QuadNum::zero(f), |acc, p| acc + &p.y);
        Some(Point::new(sx / &m, sy / m))
    }

    pub fn translate(&self, dx: &QuadNum, dy: &QuadNum) -> ConvexPolygon {
        ConvexPolygon { vertices: self.vertices.iter().map(|p| p.translate(dx, dy)).collect() }
    }

    /// Image under `p ↦ factor·p + offset`.
    pub fn affine(&self, factor: &QuadNum, offset: &Point) -> ConvexPolygon {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|p| Point::new(factor * &p.x + &offset.x, factor * &p.y + &offset.y))
            .collect();
        // A negative factor is a rotation by π, which keeps orientation.
        ConvexPolygon::from_ccw(pts)
    }

    /// Mirror image in the diagonal `x = y`.
    pub fn swap_xy(&self) -> ConvexPolygon {
        let mut pts: Vec<Point> =
            self.vertices.iter().map(|p| Point::new(p.y.clone(), p.x.clone())).collect();
        pts.reverse();
        ConvexPolygon::from_ccw(pts)
    }
}

fn half() -> num_rational::BigRational {
    num_rational::BigRational::new(1.into(), 2.into())
}

fn signed_area2(pts: &[Point]) -> QuadNum {
    let f = match pts.first() {
        Some(p) => p.field(),
        None => return QuadNum::zero(FieldSpec::new(1).expect("1 ≥ 1")),
    };
    let m = pts.len();
    let mut s = QuadNum::zero(f);
    for i in 0..m {
        let (p, q) = (&pts[i], &pts[(i + 1) % m]);
        s = s + (&p.x * &q.y - &q.x * &p.y);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> FieldSpec {
        FieldSpec::new(3).unwrap()
    }

    fn q(a: i64, b: i64) -> QuadNum {
        QuadNum::from_ratio(f(), a, b)
    }

    fn pt(a: i64, b: i64, d: i64) -> Point {
        Point::new(q(a, d), q(b, d))
    }

    #[test]
    fn clip_examples() {
        let sq = ConvexPolygon::unit_square(f());
        let bi = QuadNum::beta_inv(f());
        let left = sq.clip(&HalfPlane::x_at_most(&bi));
        assert_eq!(left.area().unwrap(), bi);
        assert!(sq.clip(&HalfPlane::x_at_least(&q(2, 1))).is_empty());
        let tri = ConvexPolygon::from_ccw(vec![pt(0, 0, 1), pt(1, 0, 1), pt(0, 1, 1)]);
        let h = HalfPlane::new(q(1, 1), q(-1, 1), q(-1, 1));
        assert_eq!(tri.clip(&h), tri);
        // Touching along an edge leaves nothing of positive area.
        assert!(sq.clip(&HalfPlane::x_at_most(&q(0, 1))).is_empty());
    }

    #[test]
    fn canonical_form() {
        let a = ConvexPolygon::from_ccw(vec![pt(1, 0, 1), pt(1, 1, 1), pt(0, 1, 1), pt(0, 0, 1), pt(1, 0, 2)]);
        let b = ConvexPolygon::unit_square(f());
        assert_eq!(a, b);
        let cw = ConvexPolygon::from_vertices(vec![pt(0, 0, 1), pt(0, 1, 1), pt(1, 1, 1), pt(1, 0, 1)]);
        assert_eq!(cw, b);
        assert_eq!(b.swap_xy(), b);
        assert!(ConvexPolygon::from_ccw(vec![pt(0, 0, 1), pt(1, 1, 1), pt(2, 2, 1)]).is_empty());
    }

    #[test]
    fn rescale_by_minus_beta() {
        let field = f();
        let bi = QuadNum::beta_inv(field);
        let z = QuadNum::zero(field);
        let small = ConvexPolygon::rectangle(&z, &z, &bi, &bi);
        let one = QuadNum::one(field);
        let img = small.affine(&-QuadNum::beta(field), &Point::new(one.clone(), one));
        assert_eq!(img, ConvexPolygon::unit_square(field));
        let back = img.affine(&-bi.clone(), &Point::new(bi.clone(), bi.clone()));
        assert_eq!(back, small);
    }

    #[test]
    fn containment() {
        let sq = ConvexPolygon::unit_square(f());
        assert!(sq.contains(&pt(0, 0, 1)));
        assert!(!sq.contains_interior(&pt(0, 0, 1)));
        assert!(sq.contains_interior(&pt(1, 1, 2)));
        assert!(!sq.contains(&pt(3, 1, 2)));
        assert_eq!(sq.vertex_centroid().unwrap(), pt(1, 1, 2));
    }

    proptest! {
        #[test]
        fn clip_conserves_area(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
            let field = f();
            let sq = ConvexPolygon::unit_square(field);
            let h = HalfPlane::new(q(a, 7), q(b, 3) + QuadNum::beta_inv(field).scale_int(c), q(d, 5));
            let total = sq.clip(&h).area_in(field) + sq.clip(&h.complement()).area_in(field);
            prop_assert_eq!(total, QuadNum::one(field));
        }

        #[test]
        fn intersection_is_commutative(a in 1i64..9, b in 1i64..9, c in 1i64..9) {
            let field = f();
            let sq = ConvexPolygon::unit_square(field);
            let tri = ConvexPolygon::from_vertices(vec![pt(a, 0, 10), pt(10, b, 10), pt(0, c, 10)]);
            let x = sq.translate(&q(a, 10), &q(-b, 10));
            prop_assert_eq!(tri.intersection(&x).area_in(field), x.intersection(&tri).area_in(field));
        }
    }
}
