//! Two-dimensional substitutions on integer labels.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coding::Window;
use crate::error::InductionError;

/// A dense rectangle of labels; `cells[j][i]` is column `i` of row `j`,
/// rows running upward as in [`Window`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    cells: Vec<Vec<usize>>,
}

impl Block {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<Self, InductionError> {
        let width = cells.first().map_or(0, Vec::len);
        if width == 0 || cells.iter().any(|r| r.len() != width) {
            return Err(InductionError::Ragged);
        }
        Ok(Block { cells })
    }

    pub fn single(label: usize) -> Block {
        Block { cells: vec![vec![label]] }
    }

    pub fn row(labels: Vec<usize>) -> Result<Block, InductionError> {
        Block::new(vec![labels])
    }

    pub fn column(labels: Vec<usize>) -> Result<Block, InductionError> {
        Block::new(labels.into_iter().map(|l| vec![l]).collect())
    }

    /// Rows given from the top down, as they are usually printed.
    pub fn from_rows_top_down(rows: &[&[usize]]) -> Result<Block, InductionError> {
        Block::new(rows.iter().rev().map(|r| r.to_vec()).collect())
    }

    pub fn width(&self) -> usize {
        self.cells[0].len()
    }

    pub fn height(&self) -> usize {
        self.cells.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.width(), self.height())
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[j][i]
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().flatten().copied()
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Block {
        Block { cells: self.cells.iter().map(|r| r.iter().map(|&l| f(l)).collect()).collect() }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.labels().map(|l| l.to_string().len()).max().unwrap_or(1);
        for (k, row) in self.cells.iter().rev().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|l| format!("{l:>w$}")).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Which axis a one-dimensional induction step reads its return words along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordAxis {
    Row,
    Column,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution2d {
    rules: BTreeMap<usize, Block>,
    axis: Option<WordAxis>,
}

impl Substitution2d {
    pub fn new(rules: BTreeMap<usize, Block>) -> Self {
        Substitution2d { rules, axis: None }
    }

    /// Rules mapping label `k` to `words[k]`, laid out along `axis`.
    pub fn from_words(words: &[Vec<usize>], axis: WordAxis) -> Result<Self, InductionError> {
        let mut rules = BTreeMap::new();
        for (k, w) in words.iter().enumerate() {
            let b = match axis {
                WordAxis::Row => Block::row(w.clone())?,
                WordAxis::Column => Block::column(w.clone())?,
            };
            rules.insert(k, b);
        }
        Ok(Substitution2d { rules, axis: Some(axis) })
    }

    pub fn from_permutation(map: &BTreeMap<usize, usize>) -> Self {
        Substitution2d::new(map.iter().map(|(&a, &b)| (a, Block::single(b))).collect())
    }

    pub fn identity(labels: impl IntoIterator<Item = usize>) -> Self {
        Substitution2d::new(labels.into_iter().map(|a| (a, Block::single(a))).collect())
    }

    pub fn rules(&self) -> &BTreeMap<usize, Block> {
        &self.rules
    }

    pub fn axis(&self) -> Option<WordAxis> {
        self.axis
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn image(&self, label: usize) -> Result<&Block, InductionError> {
        self.rules.get(&label).ok_or(InductionError::UnknownLabel(label))
    }

    /// Replaces every cell by its image and glues the images together.
    pub fn assemble(&self, cells: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, InductionError> {
        let height = cells.len();
        let width = cells.first().map_or(0, Vec::len);
        if width == 0 || cells.iter().any(|r| r.len() != width) {
            return Err(InductionError::Ragged);
        }
        let images: Vec<Vec<&Block>> =
            cells.iter().map(|r| r.iter().map(|&l| self.image(l)).collect()).collect::<Result<_, _>>()?;
        let widths: Vec<usize> = (0..width).map(|i| images[0][i].width()).collect();
        let heights: Vec<usize> = (0..height).map(|j| images[j][0].height()).collect();
        for (j, row) in images.iter().enumerate() {
            for (i, b) in row.iter().enumerate() {
                if b.width() != widths[i] || b.height() != heights[j] {
                    return Err(InductionError::Ragged);
                }
            }
        }
        let mut out = Vec::with_capacity(heights.iter().sum());
        for (j, row) in images.iter().enumerate() {
            for jj in 0..heights[j] {
                out.push(row.iter().flat_map(|b| b.cells[jj].iter().copied()).collect());
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`: apply `inner`, then `self` to every resulting cell.
    pub fn compose(&self, inner: &Substitution2d) -> Result<Substitution2d, InductionError> {
        let mut rules = BTreeMap::new();
        for (&a, b) in &inner.rules {
            rules.insert(a, Block::new(self.assemble(&b.cells)?)?);
        }
        Ok(Substitution2d::new(rules))
    }

    /// Image of a window of base tiles; labels are tile indices.
    pub fn apply(&self, w: &Window) -> Result<Window, InductionError> {
        let cells = self.assemble(w.cells())?;
        Window::new(Arc::clone(w.tileset()), (0, 0), cells).map_err(|e| InductionError::Inconsistent(e.to_string()))
    }

    /// Same substitution with labels renamed by `f` on both sides.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Substitution2d {
        Substitution2d {
            rules: self.rules.iter().map(|(&a, b)| (f(a), b.map(&f))).collect(),
            axis: self.axis,
        }
    }

    pub fn incidence(&self) -> IncidenceMatrix {
        let labels: Vec<usize> = self.rules.keys().copied().collect();
        let pos: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        let mut entries = vec![vec![0u64; labels.len()]; labels.len()];
        for (u, b) in self.rules.values().enumerate() {
            for t in b.labels() {
                if let Some(&k) = pos.get(&t) {
                    entries[k][u] += 1;
                }
            }
        }
        IncidenceMatrix { labels, entries }
    }
}

impl fmt::Display for Substitution2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, b)) in self.rules.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let pad = " ".repeat(a.to_string().len() + 3);
            for (j, line) in b.to_string().lines().enumerate() {
                if j == 0 {
                    writeln!(f, "{a} ↦ {line}")?;
                } else {
                    writeln!(f, "{pad}{line}")?;
                }
            }
        }
        Ok(())
    }
}

/// Entry `(t, u)` counts the occurrences of label `t` in the image of `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceMatrix {
    pub labels: Vec<usize>,
    pub entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.size()).map(|u| self.entries.iter().map(|r| r[u]).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fib() -> Substitution2d {
        // 0 ↦ [0 1], 1 ↦ [0] along rows.
        Substitution2d::from_words(&[vec![0, 1], vec![0]], WordAxis::Row).unwrap()
    }

    #[test]
    fn blocks_are_rectangular() {
        assert!(matches!(Block::new(vec![vec![1, 2], vec![3]]), Err(InductionError::Ragged)));
        assert!(Block::new(vec![]).is_err());
        let b = Block::from_rows_top_down(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(b.get(0, 0), 3);
        assert_eq!(b.get(1, 1), 2);
        assert_eq!(b.to_string(), "1 2\n3 4");
    }

    #[test]
    fn identity_composition() {
        let s = fib();
        let id = Substitution2d::identity([0, 1]);
        assert_eq!(s.compose(&id).unwrap().rules(), s.rules());
        assert_eq!(id.compose(&s).unwrap().rules(), s.rules());
    }

    #[test]
    fn ragged_composition_is_an_error() {
        let rows = fib();
        let cols = Substitution2d::from_words(&[vec![0, 1]], WordAxis::Column).unwrap();
        // The column [0; 1] maps to rows of lengths 2 and 1.
        assert!(matches!(rows.compose(&cols), Err(InductionError::Ragged)));
        let unknown = Substitution2d::from_words(&[vec![7]], WordAxis::Row).unwrap();
        assert!(matches!(rows.compose(&unknown), Err(InductionError::UnknownLabel(7))));
    }

    #[test]
    fn incidence_counts() {
        let m = fib().incidence();
        assert_eq!(m.entries, vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(m.column_sums(), vec![2, 1]);
    }

    fn arb_square() -> impl Strategy<Value = Substitution2d> {
        // Images of a fixed shape per label keep every composition rectangular.
        prop::collection::vec(prop::collection::vec(0usize..3, 4), 3).prop_map(|imgs| {
            let rules = imgs
                .into_iter()
                .enumerate()
                .map(|(a, v)| (a, Block::new(vec![v[..2].to_vec(), v[2..].to_vec()]).unwrap()))
                .collect();
            Substitution2d::new(rules)
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative(a in arb_square(), b in arb_square(), c in arb_square()) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left.rules(), right.rules());
        }

        #[test]
        fn incidence_is_multiplicative(a in arb_square(), b in arb_square()) {
            let ab = a.compose(&b).unwrap().incidence().entries;
            let (ma, mb) = (a.incidence().entries, b.incidence().entries);
            for t in 0..3 {
                for u in 0..3 {
                    let prod: u64 = (0..3).map(|k| ma[t][k] * mb[k][u]).sum();
                    prop_assert_eq!(ab[t][u], prod);
                }
            }
        }
    }
}
