//! Finite-horizon label averages recovering the torus point of a
//! configuration `c_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::coding::{lambda_floor, lambda_unchecked, TorusPoint};
use crate::equations::inner_d;
use crate::error::TileError;
use crate::quadfield::{QuadNum, SmallQuad};
use crate::tiles::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Top labels along row `j = 0`; estimates `y`.
    Row,
    /// Right labels along column `i = 0`; estimates `x`.
    Column,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageEstimate {
    pub value: BigRational,
    pub k: u64,
    pub axis: Axis,
}

impl AverageEstimate {
    /// `|value − target|`, exact.
    pub fn error(&self, target: &QuadNum) -> QuadNum {
        let diff = QuadNum::from_rational(target.field(), self.value.clone()) - target;
        if diff.signum() < 0 {
            -diff
        } else {
            diff
        }
    }
}

/// Both sides of `⟨d, Λ_n(x, y)⟩ = ⌊nx⌋ + 1[{δ_x + y} ∈ [1 − {nx}, 1)]`
/// with `δ_x = 1 − β⁻¹(1 − x)`.
pub fn lemma81(x: &QuadNum, y: &QuadNum) -> Result<(i64, i64), TileError> {
    let field = x.field();
    let lhs = inner_d(lambda_floor(x, y)?);
    let one = QuadNum::one(field);
    let nx = x.scale_int(field.n() as i64);
    let floor_nx = nx.floor().to_i64().expect("bounded");
    let frac_nx = nx.frac();
    let delta = &one - QuadNum::beta_inv(field) * (&one - x);
    let t = (delta + y).frac();
    let lower = &one - &frac_nx;
    let indicator = (&t - &lower).signum() >= 0;
    Ok((lhs, floor_nx + indicator as i64))
}

/// Sum of `⟨d, Λ_n(u, v_i)⟩` over `v_i = {v + iβ⁻¹}`, `i = −k..=k`.
fn strip_sum(u: &QuadNum, v: &QuadNum, k: u64) -> i64 {
    let field = u.field();
    let bi = QuadNum::beta_inv(field);
    let start = (v - bi.scale_int(k as i64)).frac();
    if let (Some(su), Some(sv), Some(sb)) =
        (SmallQuad::from_quad(u), SmallQuad::from_quad(&start), SmallQuad::from_quad(&bi))
    {
        if let Some(total) = strip_sum_small(su, sv, sb, k) {
            return total;
        }
    }
    let mut total = 0;
    let mut cur = start;
    for _ in 0..=2 * k {
        total += inner_d(lambda_unchecked(u, &cur));
        cur = (&cur + &bi).frac();
    }
    total
}

fn strip_sum_small(u: SmallQuad, mut v: SmallQuad, step: SmallQuad, k: u64) -> Option<i64> {
    let shift = SmallQuad { a: u.n + 1, b: -1, q: 1, n: u.n };
    let mut total = 0i64;
    for _ in 0..=2 * k {
        let base = v.checked_add(shift)?;
        let v1 = u.mul_beta_inv()?.checked_add(base)?.floor()?;
        let v2 = u.mul_beta()?.checked_add(base)?.floor()?;
        total += inner_d(Label::new(0, v1 as i64, v2 as i64));
        v = v.checked_add(step)?.frac()?;
    }
    Some(total)
}

/// `(1/(2k+1)) Σ_{i=−k..k} ⟨d/n, label_i⟩`, where `label_i` is the top label
/// of `c_p(i, 0)` (row) or the right label of `c_p(0, i)` (column).
pub fn phi_estimate(p: &TorusPoint, k: u64, axis: Axis) -> AverageEstimate {
    let n = p.field().n() as i64;
    // TOP(c_p(i, 0)) = Λ(y, {x + iβ⁻¹}); RIGHT(c_p(0, i)) = Λ(x, {y + iβ⁻¹}).
    let total = match axis {
        Axis::Row => strip_sum(&p.y, &p.x, k),
        Axis::Column => strip_sum(&p.x, &p.y, k),
    };
    let den = BigInt::from(n) * BigInt::from(2 * k + 1);
    AverageEstimate { value: BigRational::new(BigInt::from(total), den), k, axis }
}

/// `(column estimate ≈ x, row estimate ≈ y)`.
pub fn factor_estimate(p: &TorusPoint, k: u64) -> (AverageEstimate, AverageEstimate) {
    (phi_estimate(p, k, Axis::Column), phi_estimate(p, k, Axis::Row))
}

/// Distance on the circle between `a` and `b`.
pub fn circle_distance(a: &QuadNum, b: &QuadNum) -> QuadNum {
    let d = (a - b).frac();
    let other = QuadNum::one(d.field()) - &d;
    if d < other {
        d
    } else {
        other
    }
}

/// How far the estimate at the shifted configuration `σ^{e} c_p` is from
/// the estimate at `c_p` plus `β⁻¹`, modulo 1. The shift is along `e2` for
/// the row estimate and along `e1` for the column estimate.
pub fn shift_law_error(p: &TorusPoint, k: u64, axis: Axis) -> QuadNum {
    let field = p.field();
    let shifted = match axis {
        Axis::Row => p.rotate(0, 1),
        Axis::Column => p.rotate(1, 0),
    };
    let a = QuadNum::from_rational(field, phi_estimate(&shifted, k, axis).value);
    let b = QuadNum::from_rational(field, phi_estimate(p, k, axis).value);
    circle_distance(&(a - b), &QuadNum::beta_inv(field))
}

/// Bound `2(n+1)/(2k+1)` on [`shift_law_error`].
pub fn shift_law_bound(n: u32, k: u64) -> BigRational {
    BigRational::new(BigInt::from(2 * (n as i64 + 1)), BigInt::from(2 * k + 1))
}
