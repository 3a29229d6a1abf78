//! Labeled partitions of a rectangle into unions of convex polygons.

use std::collections::BTreeMap;

use crate::quadfield::{FieldSpec, QuadNum};

use super::polygon::{ConvexPolygon, HalfPlane, Point};

/// Atoms indexed by label; an atom is a union of interior-disjoint convex
/// pieces, all of positive area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition<L: Ord> {
    field: FieldSpec,
    domain: ConvexPolygon,
    atoms: BTreeMap<L, Vec<ConvexPolygon>>,
}

impl<L: Ord + Clone> Partition<L> {
    pub fn new(field: FieldSpec, domain: ConvexPolygon) -> Self {
        Partition { field, domain, atoms: BTreeMap::new() }
    }

    pub fn from_atoms(
        field: FieldSpec,
        domain: ConvexPolygon,
        atoms: impl IntoIterator<Item = (L, Vec<ConvexPolygon>)>,
    ) -> Self {
        let mut p = Partition::new(field, domain);
        for (label, pieces) in atoms {
            for piece in pieces {
                p.insert(label.clone(), piece);
            }
        }
        p
    }

    /// Adds a piece to an atom; empty pieces are ignored.
    pub fn insert(&mut self, label: L, piece: ConvexPolygon) {
        if !piece.is_empty() {
            self.atoms.entry(label).or_default().push(piece);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn domain(&self) -> &ConvexPolygon {
        &self.domain
    }

    pub fn atoms(&self) -> &BTreeMap<L, Vec<ConvexPolygon>> {
        &self.atoms
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.atoms.keys()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn pieces(&self, label: &L) -> &[ConvexPolygon] {
        self.atoms.get(label).map_or(&[], Vec::as_slice)
    }

    pub fn atom_area(&self, label: &L) -> QuadNum {
        self.pieces(label).iter().fold(QuadNum::zero(self.field), |acc, p| acc + p.area_in(self.field))
    }

    pub fn total_area(&self) -> QuadNum {
        self.atoms.keys().fold(QuadNum::zero(self.field), |acc, l| acc + self.atom_area(l))
    }

    /// Whether pieces cover the domain with total area equal to its area,
    /// lie inside it and are pairwise interior-disjoint.
    pub fn is_partition(&self) -> bool {
        if self.total_area() != self.domain.area_in(self.field) {
            return false;
        }
        let all: Vec<&ConvexPolygon> = self.atoms.values().flatten().collect();
        let dom = self.domain.edge_halfplanes();
        for p in &all {
            if p.vertices().iter().any(|v| dom.iter().any(|h| h.eval(v).signum() < 0)) {
                return false;
            }
        }
        for i in 0..all.len() {
            for j in 0..i {
                if !all[i].intersection(all[j]).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Labels of the atoms whose closure contains `p`.
    pub fn locate(&self, p: &Point) -> Vec<L> {
        self.atoms
            .iter()
            .filter(|(_, pieces)| pieces.iter().any(|q| q.contains(p)))
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// Labels of the atoms containing `p` in the interior of a piece.
    pub fn locate_interior(&self, p: &Point) -> Vec<L> {
        self.atoms
            .iter()
            .filter(|(_, pieces)| pieces.iter().any(|q| q.contains_interior(p)))
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// Common refinement; labels are `(self label, other label)` pairs.
    pub fn refine<M: Ord + Clone>(&self, other: &Partition<M>) -> Partition<(L, M)> {
        let mut out = Partition::new(self.field, self.domain.clone());
        for (a, pa) in &self.atoms {
            for (b, pb) in &other.atoms {
                for x in pa {
                    for y in pb {
                        out.insert((a.clone(), b.clone()), x.intersection(y));
                    }
                }
            }
        }
        out
    }

    pub fn map_labels<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> M) -> Partition<M> {
        let mut out = Partition::new(self.field, self.domain.clone());
        for (l, pieces) in &self.atoms {
            let m = f(l);
            for p in pieces {
                out.insert(m.clone(), p.clone());
            }
        }
        out
    }

    pub fn map_pieces(&self, domain: ConvexPolygon, mut f: impl FnMut(&ConvexPolygon) -> Vec<ConvexPolygon>) -> Partition<L> {
        let mut out = Partition::new(self.field, domain);
        for (l, pieces) in &self.atoms {
            for p in pieces {
                for q in f(p) {
                    out.insert(l.clone(), q);
                }
            }
        }
        out
    }

    /// Restriction to a half-plane.
    pub fn clip(&self, h: &HalfPlane) -> Partition<L> {
        let domain = self.domain.clip(h);
        self.map_pieces(domain, |p| vec![p.clip(h)])
    }

    /// Image under `p ↦ factor·p + offset`.
    pub fn affine(&self, factor: &QuadNum, offset: &Point) -> Partition<L> {
        let domain = self.domain.affine(factor, offset);
        self.map_pieces(domain, |p| vec![p.affine(factor, offset)])
    }

    /// Mirror image in the diagonal.
    pub fn swap_xy(&self) -> Partition<L> {
        let domain = self.domain.swap_xy();
        self.map_pieces(domain, |p| vec![p.swap_xy()])
    }

    /// Translation by `(dx, dy)` on the torus `R²/Z²`, for a partition of
    /// the unit square; `dx, dy ∈ [0, 1)`. Pieces are cut along the lines
    /// that wrap around.
    pub fn translate_mod1(&self, dx: &QuadNum, dy: &QuadNum) -> Partition<L> {
        self.map_pieces(self.domain.clone(), |p| translate_mod1(p, dx, dy))
    }

    /// A label bijection `self → other` under which corresponding atoms
    /// cover the same region (exact area test), if one exists.
    pub fn equal_up_to_relabeling<M: Ord + Clone>(&self, other: &Partition<M>) -> Option<BTreeMap<L, M>> {
        if self.len() != other.len() || self.domain != other.domain {
            return None;
        }
        let mut map = BTreeMap::new();
        let mut used = std::collections::BTreeSet::new();
        for (a, pa) in &self.atoms {
            let area_a = self.atom_area(a);
            let mut found = None;
            for (b, pb) in &other.atoms {
                if used.contains(b) {
                    continue;
                }
                let mut overlap = QuadNum::zero(self.field);
                for x in pa {
                    for y in pb {
                        overlap = overlap + x.intersection(y).area_in(self.field);
                    }
                }
                if overlap.is_zero() {
                    continue;
                }
                if overlap == area_a && overlap == other.atom_area(b) {
                    found = Some(b.clone());
                }
                break;
            }
            let b = found?;
            used.insert(b.clone());
            map.insert(a.clone(), b);
        }
        Some(map)
    }
}

/// Pieces of `p + (dx, dy)` reduced into the unit square, for `p` inside the
/// unit square and `dx, dy ∈ [0, 1)`.
pub fn translate_mod1(p: &ConvexPolygon, dx: &QuadNum, dy: &QuadNum) -> Vec<ConvexPolygon> {
    let f = dx.field();
    let one = QuadNum::one(f);
    let cx = &one - dx;
    let cy = &one - dy;
    let mut out = Vec::new();
    let xs = [
        (HalfPlane::x_at_most(&cx), dx.clone()),
        (HalfPlane::x_at_least(&cx), dx - &one),
    ];
    let ys = [
        (HalfPlane::y_at_most(&cy), dy.clone()),
        (HalfPlane::y_at_least(&cy), dy - &one),
    ];
    for (hx, tx) in &xs {
        let px = p.clip(hx);
        if px.is_empty() {
            continue;
        }
        for (hy, ty) in &ys {
            let q = px.clip(hy);
            if !q.is_empty() {
                out.push(q.translate(tx, ty));
            }
        }
    }
    out
}
