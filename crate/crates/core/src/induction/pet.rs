//! Polyhedron exchange transformations and their first-return maps.

use std::collections::BTreeMap;

use crate::error::InductionError;
use crate::geometry::{ConvexPolygon, HalfPlane, Partition, Point};
use crate::quadfield::{FieldSpec, QuadNum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    E1,
    E2,
}

/// Piecewise translation of a convex domain, defined almost everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pet {
    field: FieldSpec,
    domain: ConvexPolygon,
    pieces: Vec<(ConvexPolygon, Point)>,
}

/// One branch of a first-return computation: the points of `region`
/// return after `word.len()` steps, translated by `shift`.
#[derive(Clone, Debug)]
pub struct ReturnBranch<L> {
    pub region: ConvexPolygon,
    pub shift: Point,
    pub word: Vec<L>,
}

fn add(a: &Point, b: &Point) -> Point {
    Point::new(&a.x + &b.x, &a.y + &b.y)
}

impl Pet {
    /// Checks that the pieces tile the domain and that their images stay in it.
    pub fn new(field: FieldSpec, domain: ConvexPolygon, pieces: Vec<(ConvexPolygon, Point)>) -> Result<Self, InductionError> {
        let pet = Pet { field, domain, pieces };
        let total = pet.pieces.iter().fold(QuadNum::zero(field), |a, (p, _)| a + p.area_in(field));
        let missing = pet.domain.area_in(field) - total;
        if !missing.is_zero() {
            return Err(InductionError::NotAPartition { missing: missing.to_string() });
        }
        for i in 0..pet.pieces.len() {
            for j in 0..i {
                if !pet.pieces[i].0.intersection(&pet.pieces[j].0).is_empty() {
                    return Err(InductionError::Inconsistent("overlapping pieces".into()));
                }
            }
        }
        for (p, t) in &pet.pieces {
            let image = p.translate(&t.x, &t.y);
            if image.intersection(&pet.domain) != image {
                return Err(InductionError::Inconsistent("a piece leaves the domain".into()));
            }
        }
        Ok(pet)
    }

    /// Rotation of the torus by `β⁻¹` along `e1` or `e2`, on the unit square.
    pub fn toral_translation(field: FieldSpec, direction: Direction) -> Pet {
        let one = QuadNum::one(field);
        let zero = QuadNum::zero(field);
        let bi = QuadNum::beta_inv(field);
        let cut = &one - &bi;
        let sq = ConvexPolygon::unit_square(field);
        let (low, high) = match direction {
            Direction::E1 => (HalfPlane::x_at_most(&cut), HalfPlane::x_at_least(&cut)),
            Direction::E2 => (HalfPlane::y_at_most(&cut), HalfPlane::y_at_least(&cut)),
        };
        let (t_low, t_high) = match direction {
            Direction::E1 => (Point::new(bi.clone(), zero.clone()), Point::new(&bi - &one, zero)),
            Direction::E2 => (Point::new(zero.clone(), bi.clone()), Point::new(zero, &bi - &one)),
        };
        Pet { field, domain: sq.clone(), pieces: vec![(sq.clip(&low), t_low), (sq.clip(&high), t_high)] }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn domain(&self) -> &ConvexPolygon {
        &self.domain
    }

    pub fn pieces(&self) -> &[(ConvexPolygon, Point)] {
        &self.pieces
    }

    /// Image of a point lying in the interior of some piece.
    pub fn apply(&self, p: &Point) -> Option<Point> {
        self.pieces.iter().find(|(q, _)| q.contains_interior(p)).map(|(_, t)| add(p, t))
    }

    pub fn inverse(&self) -> Pet {
        let pieces = self
            .pieces
            .iter()
            .map(|(p, t)| (p.translate(&t.x, &t.y), Point::new(-t.x.clone(), -t.y.clone())))
            .collect();
        Pet { field: self.field, domain: self.domain.clone(), pieces }
    }

    /// Conjugate by `z ↦ factor·z`.
    pub fn scale(&self, factor: &QuadNum) -> Pet {
        let zero = QuadNum::zero(self.field);
        let o = Point::new(zero.clone(), zero);
        let pieces = self
            .pieces
            .iter()
            .map(|(p, t)| (p.affine(factor, &o), Point::new(factor * &t.x, factor * &t.y)))
            .collect();
        Pet { field: self.field, domain: self.domain.affine(factor, &o), pieces }
    }

    /// Equality as maps defined almost everywhere.
    pub fn same_map(&self, other: &Pet) -> bool {
        if self.domain != other.domain {
            return false;
        }
        for (p, t) in &self.pieces {
            for (q, u) in &other.pieces {
                if t != u && !p.intersection(q).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Image of a partition of the domain.
    pub fn apply_partition<L: Ord + Clone>(&self, part: &Partition<L>) -> Partition<L> {
        part.map_pieces(part.domain().clone(), |piece| {
            self.pieces
                .iter()
                .map(|(q, t)| piece.intersection(q).translate(&t.x, &t.y))
                .collect()
        })
    }

    /// Follows every orbit starting in `domain ∩ window` until it comes
    /// back to the window, splitting by the pieces of `self` and the atoms
    /// of `labels`. The window is half-open on its boundary line.
    pub fn trace_returns<L: Ord + Clone>(
        &self,
        window: &HalfPlane,
        labels: &Partition<L>,
        cap: usize,
    ) -> Result<Vec<ReturnBranch<L>>, InductionError> {
        let zero = QuadNum::zero(self.field);
        let outside = window.complement();
        let start = self.domain.clip(window);
        if start.is_empty() {
            return Err(InductionError::Inconsistent("window has empty interior".into()));
        }
        // (current image, total shift, word)
        let mut open = vec![(start, Point::new(zero.clone(), zero), Vec::new())];
        let mut done = Vec::new();
        while let Some((image, shift, word)) = open.pop() {
            if word.len() >= cap {
                return Err(InductionError::ReturnTimeExceeded { cap });
            }
            for (label, atoms) in labels.atoms() {
                for atom in atoms {
                    let x = image.intersection(atom);
                    if x.is_empty() {
                        continue;
                    }
                    for (q, t) in &self.pieces {
                        let y = x.intersection(q);
                        if y.is_empty() {
                            continue;
                        }
                        let moved = y.translate(&t.x, &t.y);
                        let total = add(&shift, t);
                        let mut w = word.clone();
                        w.push(label.clone());
                        let back = moved.clip(window);
                        if !back.is_empty() {
                            let region = back.translate(&-total.x.clone(), &-total.y.clone());
                            done.push(ReturnBranch { region, shift: total.clone(), word: w.clone() });
                        }
                        let away = moved.clip(&outside);
                        if !away.is_empty() {
                            open.push((away, total, w));
                        }
                    }
                }
            }
        }
        Ok(done)
    }

    /// First-return map to `window`, with the return time of each piece.
    pub fn induced_transformation(&self, window: &HalfPlane, cap: usize) -> Result<(Pet, Vec<usize>), InductionError> {
        let trivial = Partition::from_atoms(self.field, self.domain.clone(), [((), vec![self.domain.clone()])]);
        let branches = self.trace_returns(window, &trivial, cap)?;
        let domain = self.domain.clip(window);
        let times = branches.iter().map(|b| b.word.len()).collect();
        let pieces = branches.into_iter().map(|b| (b.region, b.shift)).collect();
        Ok((Pet { field: self.field, domain, pieces }, times))
    }

    /// Induced partition on `window`: atoms are the sets of points sharing a
    /// return word, numbered in lexicographic order of the words. Words are
    /// given as indices into the label order of `part`.
    pub fn induced_partition<L: Ord + Clone>(
        &self,
        window: &HalfPlane,
        part: &Partition<L>,
        cap: usize,
    ) -> Result<(Partition<usize>, Vec<Vec<usize>>), InductionError> {
        let index: BTreeMap<&L, usize> = part.labels().enumerate().map(|(i, l)| (l, i)).collect();
        let branches = self.trace_returns(window, part, cap)?;
        let mut by_word: BTreeMap<Vec<usize>, Vec<ConvexPolygon>> = BTreeMap::new();
        for b in branches {
            let w = b.word.iter().map(|l| index[l]).collect();
            by_word.entry(w).or_default().push(b.region);
        }
        let domain = self.domain.clip(window);
        let words: Vec<Vec<usize>> = by_word.keys().cloned().collect();
        let induced = Partition::from_atoms(self.field, domain, by_word.into_values().enumerate());
        Ok((induced, words))
    }
}
