//! Self-similarity of the coding of `R_n` by `P_n`, from two first-return
//! inductions on `[0, β⁻¹]²`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::InductionError;
use crate::geometry::{tile_partition, HalfPlane, Partition, Point};
use crate::quadfield::{FieldSpec, QuadNum};
use crate::tiles::{metallic_tiles, TileSet};

use super::known::KNOWN_N3;
use super::pet::{Direction, Pet};
use super::substitution::{Block, Substitution2d, WordAxis};

/// Orbits longer than this abort the induction; actual return times are
/// `n` or `n + 1`.
pub fn return_cap(n: u32) -> usize {
    10 * (n as usize + 2)
}

#[derive(Clone, Debug)]
pub struct SelfSimilarity {
    pub n: u32,
    /// Labels of every substitution below index into this set.
    pub tiles: TileSet,
    /// Row words of the induction along `e1` on `x ≤ β⁻¹`.
    pub s1: Substitution2d,
    /// Column words of the induction along `e2` on `y ≤ β⁻¹`.
    pub s2: Substitution2d,
    /// Relabeling of `P_n` onto the rescaled induced partition.
    pub s3: Substitution2d,
    /// `s1 ∘ s2 ∘ s3`.
    pub s123: Substitution2d,
    pub row_return_times: BTreeSet<usize>,
    pub column_return_times: BTreeSet<usize>,
    /// Whether `R^{e_i} = (β · R2^{e_i})⁻¹` for `i = 1, 2`.
    pub actions_renormalize: [bool; 2],
}

impl SelfSimilarity {
    pub fn shapes(&self) -> BTreeSet<(usize, usize)> {
        self.s123.rules().values().map(Block::shape).collect()
    }

    /// Every block is `w × h` with `w, h ∈ {n, n + 1}`.
    pub fn shapes_ok(&self) -> bool {
        let ok = |k: usize| k == self.n as usize || k == self.n as usize + 1;
        self.shapes().iter().all(|&(w, h)| ok(w) && ok(h))
    }
}

fn indexed_partition(field: FieldSpec, tiles: &TileSet) -> Partition<usize> {
    tile_partition(field).map_labels(|t| tiles.index_of(t).expect("partition labels are base tiles"))
}

pub fn self_similarity(n: u32) -> Result<SelfSimilarity, InductionError> {
    let field = FieldSpec::new(n).map_err(|e| InductionError::Inconsistent(e.to_string()))?;
    let cap = return_cap(n);
    let tiles = metallic_tiles(n);
    let p = indexed_partition(field, &tiles);
    let bi = QuadNum::beta_inv(field);
    let beta = QuadNum::beta(field);
    let xw = HalfPlane::x_at_most(&bi);
    let yw = HalfPlane::y_at_most(&bi);
    let re1 = Pet::toral_translation(field, Direction::E1);
    let re2 = Pet::toral_translation(field, Direction::E2);

    let (p1, w1) = re1.induced_partition(&xw, &p, cap)?;
    let s1 = Substitution2d::from_words(&w1, WordAxis::Row)?;
    let (r1e1, _) = re1.induced_transformation(&xw, cap)?;
    let (r1e2, _) = re2.induced_transformation(&xw, cap)?;

    let (p2, w2) = r1e2.induced_partition(&yw, &p1, cap)?;
    let s2 = Substitution2d::from_words(&w2, WordAxis::Column)?;
    let (r2e1, _) = r1e1.induced_transformation(&yw, cap)?;
    let (r2e2, _) = r1e2.induced_transformation(&yw, cap)?;

    let one = QuadNum::one(field);
    let scaled = p2.affine(&-beta.clone(), &Point::new(one.clone(), one));
    let p3 = re2.apply_partition(&re1.apply_partition(&scaled));
    let relabel = p.equal_up_to_relabeling(&p3).ok_or(InductionError::RelabelingNotFound)?;
    let s3 = Substitution2d::from_permutation(&relabel);
    let s123 = s1.compose(&s2.compose(&s3)?)?;

    let actions_renormalize = [
        re1.same_map(&r2e1.scale(&beta).inverse()),
        re2.same_map(&r2e2.scale(&beta).inverse()),
    ];
    Ok(SelfSimilarity {
        n,
        tiles,
        row_return_times: w1.iter().map(Vec::len).collect(),
        column_return_times: w2.iter().map(Vec::len).collect(),
        s1,
        s2,
        s3,
        s123,
        actions_renormalize,
    })
}

/// The published `n = 3` substitution on its own tile numbering.
pub fn known_n3() -> Substitution2d {
    Substitution2d::new(
        KNOWN_N3
            .iter()
            .enumerate()
            .map(|(k, rows)| (k, Block::from_rows_top_down(rows).expect("rectangular")))
            .collect(),
    )
}

/// Shape of a block together with the sorted multiplicities of its labels;
/// preserved by relabeling.
fn signature(b: &Block) -> ((usize, usize), Vec<usize>) {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for l in b.labels() {
        *counts.entry(l).or_default() += 1;
    }
    let mut c: Vec<usize> = counts.into_values().collect();
    c.sort_unstable();
    (b.shape(), c)
}

struct Matcher<'a> {
    ours: &'a Substitution2d,
    theirs: &'a Substitution2d,
    /// Labels of `ours` whose rules are not required to agree.
    skip: BTreeSet<usize>,
    forward: BTreeMap<usize, usize>,
    backward: BTreeMap<usize, usize>,
}

impl Matcher<'_> {
    /// Assigns `a ↦ b` and everything it forces; returns the new pairs, or
    /// `None` (with nothing changed) on contradiction.
    fn assign(&mut self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut added = Vec::new();
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            match (self.forward.get(&a), self.backward.get(&b)) {
                (Some(&x), _) if x == b => continue,
                (None, None) => {}
                _ => {
                    self.undo(&added);
                    return None;
                }
            }
            let (Ok(ba), Ok(bb)) = (self.ours.image(a), self.theirs.image(b)) else {
                self.undo(&added);
                return None;
            };
            let enforced = !self.skip.contains(&a);
            if enforced && ba.shape() != bb.shape() {
                self.undo(&added);
                return None;
            }
            self.forward.insert(a, b);
            self.backward.insert(b, a);
            added.push(a);
            if enforced {
                for (x, y) in ba.labels().zip(bb.labels()) {
                    queue.push((x, y));
                }
            }
        }
        Some(added)
    }

    fn undo(&mut self, added: &[usize]) {
        for a in added {
            if let Some(b) = self.forward.remove(a) {
                self.backward.remove(&b);
            }
        }
    }

    fn search(&mut self, candidates: &BTreeMap<usize, Vec<usize>>) -> bool {
        let Some((&a, cands)) = candidates
            .iter()
            .filter(|(a, _)| !self.forward.contains_key(a))
            .min_by_key(|(_, c)| c.len())
        else {
            return true;
        };
        for &b in cands {
            if self.backward.contains_key(&b) {
                continue;
            }
            if let Some(added) = self.assign(a, b) {
                if self.search(candidates) {
                    return true;
                }
                self.undo(&added);
            }
        }
        false
    }
}

fn search_with_skip(
    ours: &Substitution2d,
    theirs: &Substitution2d,
    skip: BTreeSet<usize>,
) -> Option<BTreeMap<usize, usize>> {
    let sig_theirs: Vec<(usize, _)> = theirs.rules().iter().map(|(&b, blk)| (b, signature(blk))).collect();
    let candidates: BTreeMap<usize, Vec<usize>> = ours
        .rules()
        .iter()
        .map(|(&a, blk)| {
            let s = signature(blk);
            let c = sig_theirs.iter().filter(|(_, t)| skip.contains(&a) || *t == s).map(|(b, _)| *b).collect();
            (a, c)
        })
        .collect();
    let mut m = Matcher { ours, theirs, skip, forward: BTreeMap::new(), backward: BTreeMap::new() };
    if m.search(&candidates) {
        Some(m.forward)
    } else {
        None
    }
}

/// A bijection `π` with `theirs(π(a)) = π(ours(a))` for every label `a`,
/// found by backtracking over labels with matching block signatures.
pub fn find_conjugacy(ours: &Substitution2d, theirs: &Substitution2d) -> Option<BTreeMap<usize, usize>> {
    if ours.len() != theirs.len() {
        return None;
    }
    search_with_skip(ours, theirs, BTreeSet::new())
}

/// Outcome of comparing a computed substitution with a reference table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMatch {
    /// Computed label ↦ reference label.
    pub bijection: BTreeMap<usize, usize>,
    /// Computed labels whose rules disagree with the reference under the
    /// bijection; empty for an exact match.
    pub exceptions: Vec<usize>,
}

impl TableMatch {
    pub fn exact(&self) -> bool {
        self.exceptions.is_empty()
    }
}

/// Smallest set of at most `max_exceptions` rules whose removal makes the
/// two substitutions conjugate, with the bijection. Labels in the exception
/// set are still required to map bijectively.
pub fn match_table(ours: &Substitution2d, theirs: &Substitution2d, max_exceptions: usize) -> Option<TableMatch> {
    if ours.len() != theirs.len() {
        return None;
    }
    let labels: Vec<usize> = ours.rules().keys().copied().collect();
    let mut sets: Vec<Vec<usize>> = vec![vec![]];
    for size in 0..=max_exceptions {
        let mut next = Vec::new();
        for set in &sets {
            if set.len() == size {
                let skip: BTreeSet<usize> = set.iter().copied().collect();
                if let Some(bijection) = search_with_skip(ours, theirs, skip) {
                    let exceptions = set
                        .iter()
                        .copied()
                        .filter(|&a| {
                            let img = ours.image(a).expect("label").map(|l| bijection[&l]);
                            theirs.image(bijection[&a]).ok() != Some(&img)
                        })
                        .collect();
                    return Some(TableMatch { bijection, exceptions });
                }
                let start = set.last().map_or(0, |&l| labels.iter().position(|&x| x == l).unwrap() + 1);
                for &l in &labels[start..] {
                    let mut s = set.clone();
                    s.push(l);
                    next.push(s);
                }
            }
        }
        sets = next;
    }
    None
}
#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{window, TorusPoint};

    #[test]
    fn known_table_shapes() {
        let k = known_n3();
        assert_eq!(k.len(), 36);
        assert_eq!(k.image(0).unwrap().shape(), (4, 4));
        assert_eq!(k.image(5).unwrap().shape(), (3, 4));
        assert_eq!(k.image(18).unwrap().shape(), (4, 3));
        assert_eq!(k.image(35).unwrap().shape(), (3, 3));
        assert_eq!(k.image(0).unwrap().get(0, 0), 3);
    }

    #[test]
    fn conjugacy_search_recovers_a_permutation() {
        let k = known_n3();
        let perm = |a: usize| (a * 5 + 7) % 36;
        let shuffled = k.relabel(perm);
        let pi = find_conjugacy(&shuffled, &k).unwrap();
        for a in 0..36 {
            assert_eq!(pi[&perm(a)], a);
        }
        let mut broken = shuffled.rules().clone();
        let img = broken[&perm(4)].clone();
        broken.insert(perm(3), img);
        let broken = Substitution2d::new(broken);
        assert!(find_conjugacy(&broken, &k).is_none());
        let m = match_table(&broken, &k, 1).unwrap();
        assert_eq!(m.exceptions, vec![perm(3)]);
        assert!((0..36).all(|a| m.bijection[&perm(a)] == a));
    }

    #[test]
    fn pipeline_n1() {
        let s = self_similarity(1).unwrap();
        assert_eq!(s.s123.len(), 16);
        assert_eq!(s.actions_renormalize, [true, true]);
        assert!(s.shapes_ok());
        assert_eq!(s.row_return_times, [1, 2].into());
        assert_eq!(s.column_return_times, [1, 2].into());
    }

    #[test]
    fn pipeline_n3_against_published_table() {
        let s = self_similarity(3).unwrap();
        assert_eq!(s.s123.len(), 36);
        assert!(s.shapes_ok());
        assert_eq!(s.shapes().len(), 4);
        assert_eq!(s.row_return_times, [3, 4].into());
        assert_eq!(s.column_return_times, [3, 4].into());
        assert_eq!(s.actions_renormalize, [true, true]);
        let k = known_n3();
        assert!(find_conjugacy(&s.s123, &k).is_none());
        let m = match_table(&s.s123, &k, 1).unwrap();
        assert_eq!(m.exceptions, vec![17]);
        assert!(m.bijection.iter().all(|(a, b)| a == b));
        // The published rule 17 has one extra row.
        assert_eq!(s.s123.image(17).unwrap().shape(), (4, 3));
        assert_eq!(k.image(17).unwrap().shape(), (4, 4));
    }

    #[test]
    fn published_rule_17_does_not_assemble() {
        let s = self_similarity(3).unwrap();
        let k = known_n3();
        let field = FieldSpec::new(3).unwrap();
        let mut ragged = 0;
        for a in 1..40 {
            let p = TorusPoint::new(QuadNum::from_ratio(field, a, 41), QuadNum::from_ratio(field, 7 * a % 41, 41));
            let w = window(&p, (0, 0), 6, 6).unwrap();
            assert!(s.s123.apply(&w).unwrap().check_valid().is_ok());
            let has17 = w.cells().iter().flatten().any(|&c| c == 17);
            match k.apply(&w) {
                Ok(x) => assert!(!has17 && x.check_valid().is_ok()),
                Err(e) => {
                    assert!(has17 && matches!(e, InductionError::Ragged));
                    ragged += 1;
                }
            }
        }
        assert!(ragged > 0);
    }
}
