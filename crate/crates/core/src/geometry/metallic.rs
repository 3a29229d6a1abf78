//! The partitions of the torus coding the right, top, left and bottom
//! labels of `TILE_n`, and their common refinement.

use crate::coding::{tile_at, Window};
use crate::quadfield::{FieldSpec, QuadNum};
use crate::tiles::{enumerate_vn, Label, TileSet, TileSetKind, WangTile};

use super::partition::{translate_mod1, Partition};
use super::polygon::{ConvexPolygon, HalfPlane, Point};

/// Closure of `Λ_n⁻¹(v)` inside the unit square; empty when `v` is not
/// attained on a set of positive area.
pub fn atom(field: FieldSpec, v: Label) -> ConvexPolygon {
    let one = QuadNum::one(field);
    let zero = QuadNum::zero(field);
    let bi = QuadNum::beta_inv(field);
    let beta = QuadNum::beta(field);
    // Each coordinate is ⌊cx·x + y + 1 − β⁻¹⌋ for cx ∈ {0, β⁻¹, β}.
    let offset = &one - &bi;
    let mut hs = Vec::new();
    for (k, cx) in [zero.clone(), bi.clone(), beta].into_iter().enumerate() {
        let a = QuadNum::from_int(field, v.0[k]);
        // a ≤ cx·x + y + 1 − β⁻¹ ≤ a + 1
        hs.push(HalfPlane::new(&offset - &a, cx.clone(), one.clone()));
        hs.push(HalfPlane::new(&a + &one - &offset, -cx, -one.clone()));
    }
    ConvexPolygon::unit_square(field).clip_all(&hs)
}

/// Partitions by the right, top, left and bottom labels of `TILE_n`.
#[derive(Clone, Debug)]
pub struct EdgePartitions {
    pub east: Partition<Label>,
    pub north: Partition<Label>,
    pub west: Partition<Label>,
    pub south: Partition<Label>,
}

pub fn east(field: FieldSpec) -> Partition<Label> {
    let mut p = Partition::new(field, ConvexPolygon::unit_square(field));
    for v in enumerate_vn(field.n()) {
        p.insert(v, atom(field, v));
    }
    p
}

pub fn build_partitions(field: FieldSpec) -> EdgePartitions {
    let east = east(field);
    let north = east.swap_xy();
    let bi = QuadNum::beta_inv(field);
    let zero = QuadNum::zero(field);
    let west = east.translate_mod1(&bi, &zero);
    let south = north.translate_mod1(&zero, &bi);
    EdgePartitions { east, north, west, south }
}

/// The refinement of the four edge partitions, labeled by tiles.
pub fn tile_partition(field: FieldSpec) -> Partition<WangTile> {
    let e = build_partitions(field);
    e.east
        .refine(&e.north)
        .refine(&e.west)
        .refine(&e.south)
        .map_labels(|(((r, t), l), b)| WangTile::new(*r, *t, *l, *b))
}

/// Tiles whose region in the refined partition has nonempty interior.
pub fn tiles_of_partition(field: FieldSpec) -> TileSet {
    TileSet::from_tiles(field.n(), TileSetKind::Base, tile_partition(field).labels().copied())
}

/// The set of points `p` whose configuration `c_p` shows the window's
/// pattern at the window's position: the intersection over cells `(i, j)`
/// of the tile regions translated by `−(i, j)β⁻¹`. Empty if the pattern
/// never occurs.
pub fn pattern_region(partition: &Partition<WangTile>, w: &Window) -> Vec<ConvexPolygon> {
    let field = partition.field();
    let bi = QuadNum::beta_inv(field);
    let mut region = vec![ConvexPolygon::unit_square(field)];
    for dj in 0..w.height() {
        for di in 0..w.width() {
            let (i, j) = (w.origin().0 + di as i64, w.origin().1 + dj as i64);
            let dx = bi.scale_int(-i).frac();
            let dy = bi.scale_int(-j).frac();
            let moved: Vec<ConvexPolygon> = partition
                .pieces(w.tile(di, dj))
                .iter()
                .flat_map(|p| translate_mod1(p, &dx, &dy))
                .collect();
            let mut next = Vec::new();
            for r in &region {
                for m in &moved {
                    let x = r.intersection(m);
                    if !x.is_empty() {
                        next.push(x);
                    }
                }
            }
            region = next;
            if region.is_empty() {
                return region;
            }
        }
    }
    region
}

/// Pieces of the refined partition where `TILE_n` at an interior point
/// disagrees with the piece's label.
pub fn inconsistent_pieces(partition: &Partition<WangTile>) -> Vec<(WangTile, Point)> {
    let mut bad = Vec::new();
    for (t, pieces) in partition.atoms() {
        for p in pieces {
            let c = p.vertex_centroid().expect("pieces are nonempty");
            if tile_at(&c.x, &c.y) != *t {
                bad.push((*t, c));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{window, TorusPoint};
    use crate::tiles::metallic_tiles;

    fn f(n: u32) -> FieldSpec {
        FieldSpec::new(n).unwrap()
    }

    #[test]
    fn east_atoms() {
        for n in 1..=5 {
            let field = f(n);
            let e = east(field);
            assert_eq!(e.total_area(), QuadNum::one(field));
            assert!(atom(field, Label::new(0, 0, n as i64 + 1)).is_empty());
            assert_eq!(e.len(), 3 * n as usize + 3);
        }
        let field = f(3);
        let a = atom(field, Label::new(0, 0, 0));
        let expected = QuadNum::beta(field).scale_int(5) - QuadNum::from_ratio(field, 33, 2);
        assert_eq!(a.area().unwrap(), expected);
        let bi = QuadNum::beta_inv(field);
        let z = QuadNum::zero(field);
        let tri = ConvexPolygon::from_vertices(vec![
            Point::new(z.clone(), z.clone()),
            Point::new(&bi * &bi, z.clone()),
            Point::new(z, bi),
        ]);
        assert_eq!(a, tri);
    }

    #[test]
    fn edge_partitions_are_partitions() {
        for n in 1..=3 {
            let e = build_partitions(f(n));
            for p in [&e.east, &e.north, &e.west, &e.south] {
                assert!(p.is_partition());
                assert!(p.len() <= 3 * n as usize + 3);
            }
            for v in e.east.atoms().keys() {
                let mirrored = Label::new(v.0[0], v.0[1], v.0[2]);
                assert_eq!(e.east.atom_area(v), e.north.atom_area(&mirrored));
            }
        }
    }

    #[test]
    fn refinement_gives_base_tiles() {
        for n in 1..=4 {
            let field = f(n);
            let p = tile_partition(field);
            assert_eq!(p.len(), (n as usize + 3).pow(2));
            assert_eq!(p.total_area(), QuadNum::one(field));
            assert!(tiles_of_partition(field).same_tiles(&metallic_tiles(n)));
            assert_eq!(inconsistent_pieces(&p), vec![]);
        }
    }

    #[test]
    fn regions_contain_generating_point() {
        let field = f(2);
        let part = tile_partition(field);
        for (a, b) in [(1, 7), (3, 11), (0, 0), (5, 13)] {
            let p = TorusPoint::new(QuadNum::from_ratio(field, a, 17), QuadNum::from_ratio(field, b, 19));
            let w = window(&p, (-2, -2), 5, 5).unwrap();
            let region = pattern_region(&part, &w);
            let pt = Point::new(p.x.clone(), p.y.clone());
            assert!(region.iter().any(|r| r.contains(&pt)));
        }
    }

    #[test]
    fn single_tile_region_is_its_atom() {
        let field = f(3);
        let part = tile_partition(field);
        let p = TorusPoint::new(QuadNum::from_ratio(field, 1, 3), QuadNum::from_ratio(field, 1, 5));
        let w = window(&p, (0, 0), 1, 1).unwrap();
        let region = pattern_region(&part, &w);
        let area = region.iter().fold(QuadNum::zero(field), |a, r| a + r.area().unwrap());
        assert_eq!(area, part.atom_area(w.tile(0, 0)));
    }
}
