//! Additive equations satisfied by the labels of single tiles, of valid
//! rectangles, and of cylinders.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coding::{Violation, Window};
use crate::tiles::{Label, WangTile};

/// `⟨d, v⟩` with `d = (0, −1, 1)`.
pub fn inner_d(v: Label) -> i64 {
    v.v2() - v.v1()
}

/// `⟨e, v⟩` with `e = (1, 0, 0)`.
pub fn inner_e(v: Label) -> i64 {
    v.v0()
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationResidual {
    /// `[⟨d, t+ℓ⟩/n − ℓ0] − [⟨d, b+r⟩/n − b0]`.
    pub main: BigRational,
    /// `ℓ0 − r0`.
    pub leftright: i64,
    /// `b0 − t0`.
    pub bottomtop: i64,
}

impl EquationResidual {
    pub fn is_zero(&self) -> bool {
        self.main.is_zero() && self.leftright == 0 && self.bottomtop == 0
    }
}

pub fn tile_residual(n: u32, t: &WangTile) -> EquationResidual {
    let n = n as i64;
    let lhs = rat(inner_d(t.top) + inner_d(t.left), n) - rat(inner_e(t.left), 1);
    let rhs = rat(inner_d(t.bottom) + inner_d(t.right), n) - rat(inner_e(t.bottom), 1);
    EquationResidual {
        main: lhs - rhs,
        leftright: t.left.v0() - t.right.v0(),
        bottomtop: t.bottom.v0() - t.top.v0(),
    }
}

/// Average boundary labels of a rectangle, as rational vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryAverages {
    /// Right labels of the last column.
    pub right: [BigRational; 3],
    /// Top labels of the top row.
    pub top: [BigRational; 3],
    /// Left labels of the first column.
    pub left: [BigRational; 3],
    /// Bottom labels of the bottom row.
    pub bottom: [BigRational; 3],
}

fn average(labels: impl Iterator<Item = Label>) -> [BigRational; 3] {
    let mut sum = [0i64; 3];
    let mut count = 0i64;
    for l in labels {
        for (s, v) in sum.iter_mut().zip(l.0) {
            *s += v;
        }
        count += 1;
    }
    sum.map(|s| rat(s, count))
}

fn d_of(v: &[BigRational; 3]) -> BigRational {
    &v[2] - &v[1]
}

pub fn boundary_averages(w: &Window) -> BoundaryAverages {
    let (h, k) = (w.width(), w.height());
    BoundaryAverages {
        right: average((0..k).map(|j| w.tile(h - 1, j).right)),
        top: average((0..h).map(|i| w.tile(i, k - 1).top)),
        left: average((0..k).map(|j| w.tile(0, j).left)),
        bottom: average((0..h).map(|i| w.tile(i, 0).bottom)),
    }
}

/// Difference of the two sides of
/// `(1/k)⟨d/n, T − B⟩ − ⟨e, L⟩ = (1/h)⟨d/n, R − L⟩ − ⟨e, B⟩`
/// for a valid `h × k` window (width `h`, height `k`).
pub fn rectangle_residual(w: &Window) -> Result<BigRational, Vec<Violation>> {
    w.check_valid()?;
    let n = BigRational::from_integer(BigInt::from(w.n()));
    let h = BigRational::from_integer(BigInt::from(w.width()));
    let k = BigRational::from_integer(BigInt::from(w.height()));
    let a = boundary_averages(w);
    let lhs = (d_of(&a.top) - d_of(&a.bottom)) / (&k * &n) - &a.left[0];
    let rhs = (d_of(&a.right) - d_of(&a.left)) / (&h * &n) - &a.bottom[0];
    Ok(lhs - rhs)
}

fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderStep {
    /// Whether `⟨d/n, T⟩ ≡ ⟨d/n, B⟩ − k⟨e, B⟩ (mod 1)`.
    pub holds: bool,
    /// `−⟨e, B⟩ mod 1`, the rotation from one row to the next.
    pub shift: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CylinderError {
    Invalid(Vec<Violation>),
    /// Left and right boundary columns differ at this row offset.
    NotCylindrical { row: usize },
}

/// Checks the mod-1 rotation law on a window whose left boundary column
/// equals its right boundary column.
pub fn cylinder_step(w: &Window) -> Result<CylinderStep, CylinderError> {
    w.check_valid().map_err(CylinderError::Invalid)?;
    let h = w.width();
    for j in 0..w.height() {
        if w.tile(0, j).left != w.tile(h - 1, j).right {
            return Err(CylinderError::NotCylindrical { row: j });
        }
    }
    let n = BigRational::from_integer(BigInt::from(w.n()));
    let k = BigRational::from_integer(BigInt::from(w.height()));
    let a = boundary_averages(w);
    let t = d_of(&a.top) / &n;
    let b = d_of(&a.bottom) / &n;
    let e = a.bottom[0].clone();
    let holds = frac(&(t - b + &k * &e)).is_zero();
    Ok(CylinderStep { holds, shift: frac(&(BigRational::zero() - e)) })
}

/// Per-row averages `⟨d/n, ·⟩` of the bottom labels of each row of a
/// cylinder, bottom to top; consecutive rows differ by the shift mod 1.
pub fn cylinder_row_values(w: &Window) -> Vec<BigRational> {
    let n = BigRational::from_integer(BigInt::from(w.n()));
    let h = BigRational::from_integer(BigInt::from(w.width()));
    (0..w.height())
        .map(|j| {
            let s: i64 = (0..w.width()).map(|i| inner_d(w.tile(i, j).bottom)).sum();
            frac(&(BigRational::from_integer(BigInt::from(s)) / (&h * &n)))
        })
        .chain(std::iter::once({
            let s: i64 = (0..w.width()).map(|i| inner_d(w.tile(i, w.height() - 1).top)).sum();
            frac(&(BigRational::from_integer(BigInt::from(s)) / (&h * &n)))
        }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{window, TorusPoint};
    use crate::quadfield::{FieldSpec, QuadNum};
    use crate::tiles::{chip_tiles, enumerate_vn, theta_raw};

    fn l(a: i64, b: i64, c: i64) -> Label {
        Label::new(a, b, c)
    }

    #[test]
    fn blue_example() {
        let t = WangTile::new(l(0, 0, 3), l(1, 1, 1), l(0, 0, 2), l(1, 1, 3));
        assert!(tile_residual(3, &t).is_zero());
    }

    #[test]
    fn counterexample_for_n4() {
        let t = WangTile::new(l(1, 1, 3), l(0, 0, 3), l(1, 1, 5), l(0, 0, 1));
        assert!(tile_residual(4, &t).is_zero());
        let lhs = rat(inner_d(t.top) + inner_d(t.left), 4) - rat(inner_e(t.left), 1);
        assert_eq!(lhs, rat(3, 4));
        assert_ne!(theta_raw(4, t.left, t.bottom), t.right);
        assert!(!chip_tiles(4).contains(&t));
    }

    #[test]
    fn chip_tiles_have_zero_residual() {
        for n in 1..=8 {
            for t in chip_tiles(n).tiles() {
                assert!(tile_residual(n, t).is_zero(), "n = {n}, {t}");
            }
        }
    }

    #[test]
    fn zero_residual_quadruples_strictly_contain_chip_tiles() {
        // Brute force over V_4⁴ restricted by the two linear equations.
        let n = 4;
        let vn = enumerate_vn(n);
        let chips = chip_tiles(n);
        let mut extra = 0;
        for &r in &vn {
            for &t in &vn {
                for &lft in &vn {
                    for &b in &vn {
                        let tile = WangTile::new(r, t, lft, b);
                        if tile_residual(n, &tile).is_zero() && !chips.contains(&tile) {
                            extra += 1;
                        }
                    }
                }
            }
        }
        assert!(extra > 0);
    }

    #[test]
    fn windows_have_zero_rectangle_residual() {
        let field = FieldSpec::new(3).unwrap();
        let p = TorusPoint::new(QuadNum::from_ratio(field, 1, 7), QuadNum::from_ratio(field, 2, 7));
        let w = window(&p, (0, 0), 12, 12).unwrap();
        assert_eq!(rectangle_residual(&w).unwrap(), BigRational::zero());
        let single = w.sub_window(5, 5, 1, 1).unwrap();
        assert_eq!(rectangle_residual(&single).unwrap(), BigRational::zero());
        let idx = (0..w.tileset().len()).find(|&k| k != w.index(3, 3)).unwrap();
        let broken = w.with_cell(3, 3, idx).unwrap();
        assert!(rectangle_residual(&broken).is_err());
    }

    /// Scans windows of the given width for a block of `height` rows whose
    /// left and right boundary columns coincide.
    pub(crate) fn find_cylinder(n: u32, width: usize, height: usize) -> Option<Window> {
        let field = FieldSpec::new(n).unwrap();
        let p = TorusPoint::new(QuadNum::from_ratio(field, 1, 5), QuadNum::from_ratio(field, 1, 3));
        let w = window(&p, (0, 0), 200, 40).unwrap();
        for j0 in 0..=w.height() - height {
            for i0 in 0..=w.width() - width {
                let ok = (j0..j0 + height).all(|j| w.tile(i0, j).left == w.tile(i0 + width - 1, j).right);
                if ok {
                    return Some(w.sub_window(i0, j0, width, height).unwrap());
                }
            }
        }
        None
    }

    #[test]
    fn ten_wide_cylinder_for_n3() {
        let c = find_cylinder(3, 10, 5).expect("a 10-wide cylinder occurs");
        let step = cylinder_step(&c).unwrap();
        assert!(step.holds);
        assert_eq!(step.shift, rat(3, 10));
        let rows = cylinder_row_values(&c);
        for pair in rows.windows(2) {
            assert_eq!(frac(&(&pair[1] - &pair[0])), step.shift);
        }
    }

    #[test]
    fn single_row_cylinders() {
        for n in 1..=3 {
            for width in 1..=12 {
                if let Some(c) = find_cylinder(n, width, 1) {
                    assert!(cylinder_step(&c).unwrap().holds, "n = {n}, width = {width}");
                }
            }
        }
    }

    #[test]
    fn non_cylinder_rejected() {
        let field = FieldSpec::new(3).unwrap();
        let p = TorusPoint::new(QuadNum::from_ratio(field, 1, 7), QuadNum::from_ratio(field, 2, 7));
        let w = window(&p, (0, 0), 7, 3).unwrap();
        let cyl = (0..w.height()).all(|j| w.tile(0, j).left == w.tile(6, j).right);
        if !cyl {
            assert!(matches!(cylinder_step(&w), Err(CylinderError::NotCylindrical { .. })));
        }
    }
}
