//! The identity suite behind `metallic-tiler verify`, also used by the
//! acceptance checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::averages::lemma81;
use crate::coding::lemma72;
use crate::equations::tile_residual;
use crate::geometry::{east, tile_partition};
use crate::quadfield::{FieldSpec, QuadNum};
use crate::tiles::{
    check_deterministic, chip_tiles, extended_tiles, metallic_tiles, psi_raw, theta_raw, Corner, TileSet,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name, passed, detail: detail.into() }
}

/// A rational point `(a/q, b/q)` of the unit square with `q ≤ 10⁴`.
pub fn random_rational_point(rng: &mut impl Rng, field: FieldSpec) -> (QuadNum, QuadNum) {
    let q = rng.gen_range(1..=10_000);
    let a = rng.gen_range(0..q);
    let b = rng.gen_range(0..q);
    (QuadNum::from_ratio(field, a, q), QuadNum::from_ratio(field, b, q))
}

pub fn counts(n: u32) -> CheckResult {
    let (base, chip) = (metallic_tiles(n).len(), chip_tiles(n).len());
    let nn = n as usize;
    check(
        "counts",
        base == (nn + 3).pow(2) && chip == nn * nn + 8 * nn + 13,
        format!("{base} base tiles, {chip} chip tiles"),
    )
}

pub fn chip_is_extended(n: u32) -> CheckResult {
    check("chip = extended", chip_tiles(n).same_tiles(&extended_tiles(n)), "")
}

pub fn residuals(n: u32) -> CheckResult {
    let bad: Vec<String> = chip_tiles(n)
        .tiles()
        .iter()
        .filter(|t| !tile_residual(n, t).is_zero())
        .map(ToString::to_string)
        .collect();
    check("tile equations", bad.is_empty(), format!("{} tiles with nonzero residual", bad.len()))
}

/// `ψ_n` recovers left and bottom from right and top, and `θ_n` goes back.
pub fn inverse_map(n: u32) -> CheckResult {
    let chips = chip_tiles(n);
    let bad = chips
        .tiles()
        .iter()
        .filter(|t| {
            psi_raw(n, t.right, t.top) != t.left
                || psi_raw(n, t.top, t.right) != t.bottom
                || theta_raw(n, t.left, t.bottom) != t.right
                || theta_raw(n, t.bottom, t.left) != t.top
        })
        .count();
    check("ψ/θ round trip", bad == 0, format!("{bad} failures over {} tiles", chips.len()))
}

pub fn determinism(ts: &TileSet) -> CheckResult {
    let ne = check_deterministic(ts, Corner::NE);
    let sw = check_deterministic(ts, Corner::SW);
    check(
        "NE/SW determinism",
        ne.deterministic() && sw.deterministic(),
        format!("NE clash {:?}, SW clash {:?}", ne.violation, sw.violation),
    )
}

pub fn lemma72_sample(n: u32, samples: usize, seed: u64) -> CheckResult {
    let field = FieldSpec::new(n).expect("n ≥ 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let (x, y) = random_rational_point(&mut rng, field);
        let (l, r) = lemma72(&x, &y).expect("point in the unit square");
        bad += usize::from(l != r || !l.in_vn(n));
    }
    check("Λ factors through θ", bad == 0, format!("{bad} of {samples} points fail"))
}

pub fn lemma81_sample(n: u32, samples: usize, seed: u64) -> CheckResult {
    let field = FieldSpec::new(n).expect("n ≥ 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let (x, y) = random_rational_point(&mut rng, field);
        let (l, r) = lemma81(&x, &y).expect("point in the unit square");
        bad += usize::from(l != r);
    }
    check("⟨d, Λ⟩ formula", bad == 0, format!("{bad} of {samples} points fail"))
}

pub fn partition_areas(n: u32) -> CheckResult {
    let field = FieldSpec::new(n).expect("n ≥ 1");
    let e = east(field);
    let one = QuadNum::one(field);
    let empty = crate::geometry::atom(field, crate::tiles::Label::new(0, 0, n as i64 + 1)).is_empty();
    let p = tile_partition(field);
    check(
        "partition areas",
        e.total_area() == one && p.total_area() == one && empty,
        format!("EAST sums to {}, refinement to {}, atom 0 0 n+1 empty: {empty}", e.total_area(), p.total_area()),
    )
}

pub fn partition_tiles(n: u32) -> CheckResult {
    let field = FieldSpec::new(n).expect("n ≥ 1");
    let p = tile_partition(field);
    let base = metallic_tiles(n);
    let same = p.len() == base.len() && p.labels().all(|t| base.contains(t));
    check("partition tiles = base set", same, format!("{} atoms", p.len()))
}

pub fn run(n: u32, samples: usize, seed: u64) -> Vec<CheckResult> {
    vec![
        counts(n),
        chip_is_extended(n),
        residuals(n),
        inverse_map(n),
        determinism(&chip_tiles(n)),
        lemma72_sample(n, samples, seed),
        lemma81_sample(n, samples, seed.wrapping_add(1)),
        partition_areas(n),
        partition_tiles(n),
    ]
}
