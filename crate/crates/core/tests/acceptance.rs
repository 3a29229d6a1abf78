//! Exit-gate checks, one line per criterion. Run with
//! `cargo test -p metallic-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use metallic_core::averages::{phi_estimate, shift_law_bound, shift_law_error, Axis};
use metallic_core::coding::{lemma72, window, witness_outcomes, TorusPoint};
use metallic_core::equations::{rectangle_residual, tile_residual};
use metallic_core::geometry::{east, pattern_region, tile_partition, tiles_of_partition, Point};
use metallic_core::induction::selfsim::match_table;
use metallic_core::induction::{known_n3, self_similarity, spectral_check};
use metallic_core::tiles::{
    chip_tiles, extended_tiles, metallic_tiles, psi, theta, check_deterministic, Corner, FamilyTag, TileSet,
};
use metallic_core::verify::random_rational_point;
use metallic_core::{FieldSpec, Label, QuadNum, WangTile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails for a reason recorded in the decision ledger.
    KnownFail(String),
}

fn field(n: u32) -> FieldSpec {
    FieldSpec::new(n).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn point(rng: &mut ChaCha8Rng, n: u32) -> TorusPoint {
    let (x, y) = random_rational_point(rng, field(n));
    TorusPoint::new(x, y)
}

fn as_set(ts: &TileSet) -> BTreeSet<WangTile> {
    ts.tiles().iter().copied().collect()
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn c1() -> Outcome {
    let bad: Vec<u32> = (1..=8)
        .filter(|&n| {
            let n64 = n as usize;
            metallic_tiles(n).len() != (n64 + 3).pow(2) || chip_tiles(n).len() != n64 * n64 + 8 * n64 + 13
        })
        .collect();
    verdict(bad.is_empty(), format!("n = 1..8, mismatches at {bad:?}"))
}

fn c2() -> Outcome {
    let bad: Vec<u32> = (1..=8).filter(|&n| as_set(&chip_tiles(n)) != as_set(&extended_tiles(n))).collect();
    verdict(bad.is_empty(), format!("n = 1..8, mismatches at {bad:?}"))
}

fn c3() -> Outcome {
    let bad: Vec<u32> = (1..=8).filter(|&n| !chip_tiles(n).tiles().iter().all(|t| tile_residual(n, t).is_zero())).collect();
    let l = Label::new;
    let q = WangTile::new(l(1, 1, 3), l(0, 0, 3), l(1, 1, 5), l(0, 0, 1));
    let extra = tile_residual(4, &q).is_zero() && !chip_tiles(4).contains(&q);
    verdict(bad.is_empty() && extra, format!("nonzero residuals at {bad:?}; n = 4 quadruple zero and outside C_4: {extra}"))
}

fn c4() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=8 {
        let ts = chip_tiles(n);
        let inverse = ts.tiles().iter().all(|t| {
            psi(n, t.right, t.top) == Ok(t.left)
                && psi(n, t.top, t.right) == Ok(t.bottom)
                && theta(n, t.left, t.bottom) == Ok(t.right)
        });
        let det = check_deterministic(&ts, Corner::SW).deterministic() && check_deterministic(&ts, Corner::NE).deterministic();
        if !(inverse && det) {
            bad.push(n);
        }
    }
    verdict(bad.is_empty(), format!("n = 1..8, failures at {bad:?}"))
}

fn c5() -> Outcome {
    let mut r = rng(5);
    let mut failures = 0;
    for n in 1..=3 {
        let base = metallic_tiles(n);
        for _ in 0..200 {
            let p = point(&mut r, n);
            let (w, h) = (r.gen_range(1..=15), r.gen_range(1..=15));
            let origin = (r.gen_range(-50..50), r.gen_range(-50..50));
            let win = window(&p, origin, w, h).unwrap();
            let ok = win.check_valid().is_ok()
                && win.tileset().tiles() == base.tiles()
                && (0..h).all(|j| (0..w).all(|i| base.contains(win.tile(i, j))))
                && rectangle_residual(&win).map(|v| v.numer() == &0.into()).unwrap_or(false);
            if !ok {
                failures += 1;
            }
        }
    }
    verdict(failures == 0, format!("600 windows, {failures} failures"))
}

/// Witness formulas whose printed coordinates land on the neighbouring
/// tile of lower index (see the decision ledger).
fn misprinted(tag: FamilyTag) -> bool {
    matches!(tag,
        FamilyTag::White { i: 1, j } if j >= 2)
        || matches!(tag, FamilyTag::White { i, j: 1 } if i >= 2)
        || matches!(tag, FamilyTag::YellowH { i } | FamilyTag::YellowV { i } if i >= 2)
}

fn c6() -> Outcome {
    let mut missed = Vec::new();
    let mut total = 0;
    for n in 1..=3 {
        for w in witness_outcomes(field(n)) {
            total += 1;
            if !w.realized() {
                missed.push((n, w.tag));
            }
        }
    }
    let detail = format!(
        "{} of {total} witnesses realized; missed: {}",
        total - missed.len(),
        missed.iter().map(|(n, t)| format!("n={n} {}", t.name())).collect::<Vec<_>>().join(", ")
    );
    if missed.is_empty() {
        Outcome::Pass(detail)
    } else if missed.iter().all(|(_, t)| misprinted(*t)) {
        Outcome::KnownFail(format!("{detail}; these printed points lie inside a neighbouring tile's region"))
    } else {
        Outcome::Fail(detail)
    }
}

fn c7() -> Outcome {
    let mut r = rng(7);
    let mut failures = 0;
    for n in 1..=3 {
        for _ in 0..500 {
            let (x, y) = random_rational_point(&mut r, field(n));
            let ok72 = lemma72(&x, &y).map(|(a, b)| a == b).unwrap_or(false);
            let ok81 = metallic_core::averages::lemma81(&x, &y).map(|(a, b)| a == b).unwrap_or(false);
            if !(ok72 && ok81) {
                failures += 1;
            }
        }
    }
    verdict(failures == 0, format!("1500 points, {failures} failures"))
}

fn c8() -> Outcome {
    let mut r = rng(8);
    let mut problems = Vec::new();
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for _ in 0..20 {
            let p = point(&mut r, n);
            let e4 = phi_estimate(&p, 10_000, Axis::Row).error(&p.y);
            let e2 = phi_estimate(&p, 100, Axis::Row).error(&p.y);
            worst = worst.max(e4.to_f64());
            if e4 >= QuadNum::from_ratio(field(n), 1, 50) || e4 >= e2 {
                problems.push(format!("n={n} convergence at ({}, {})", p.x.to_f64(), p.y.to_f64()));
            }
            for axis in [Axis::Row, Axis::Column] {
                let k = 100;
                let bound = QuadNum::from_rational(field(n), shift_law_bound(n, k));
                if shift_law_error(&p, k, axis) > bound {
                    problems.push(format!("n={n} shift law {axis:?}"));
                }
            }
        }
    }
    verdict(problems.is_empty(), format!("60 points, worst error at k = 10⁴: {worst:.2e}; {problems:?}"))
}

fn c9() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=5 {
        let f = field(n);
        let e = east(f);
        let sum_one = e.total_area() == QuadNum::one(f);
        let empty = e.pieces(&Label::new(0, 0, n as i64 + 1)).iter().all(|p| p.area_in(f).is_zero());
        let tiles = tiles_of_partition(f);
        let refined = tile_partition(f).len() == tiles.len() && tiles.len() == ((n + 3) * (n + 3)) as usize && as_set(&tiles) == as_set(&metallic_tiles(n));
        if !(sum_one && empty && refined) {
            bad.push(n);
        }
    }
    verdict(bad.is_empty(), format!("n = 1..5, failures at {bad:?}"))
}

fn c10() -> Outcome {
    let mut r = rng(10);
    let mut failures = 0;
    for n in 1..=3 {
        let part = tile_partition(field(n));
        for _ in 0..100 {
            let p = point(&mut r, n);
            let origin = (r.gen_range(-20..20), r.gen_range(-20..20));
            let w = window(&p, origin, 5, 5).unwrap();
            let region = pattern_region(&part, &w);
            let pt = Point::new(p.x.clone(), p.y.clone());
            if region.iter().all(|q| q.is_empty()) || !region.iter().any(|q| q.contains(&pt)) {
                failures += 1;
            }
        }
    }
    verdict(failures == 0, format!("300 windows, {failures} failures"))
}

fn c11() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=5 {
        let start = Instant::now();
        let s = match self_similarity(n) {
            Ok(s) => s,
            Err(e) => {
                ok = false;
                notes.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let elapsed = start.elapsed();
        let spectral = spectral_check(&s.s123.incidence(), n);
        let good = s.actions_renormalize.iter().all(|&b| b)
            && spectral.multiplicity_beta_squared > 0
            && spectral.other_rational_roots.is_empty()
            && (n != 3 || elapsed < Duration::from_secs(300));
        ok &= good;
        notes.push(format!("n={n} {:.1}s{}", elapsed.as_secs_f64(), if good { "" } else { " FAILED" }));
    }
    verdict(ok, notes.join(", "))
}

fn c12() -> Outcome {
    let s = match self_similarity(3) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let shapes_ok = s.s123.len() == 36
        && s.s123.rules().values().all(|b| (3..=4).contains(&b.width()) && (3..=4).contains(&b.height()));
    if !shapes_ok {
        return Outcome::Fail(format!("shapes {:?}", s.shapes()));
    }
    match match_table(&s.s123, &known_n3(), 2) {
        Some(m) if m.exact() => Outcome::Pass("36 rules, exact match under a bijection".into()),
        Some(m) if m.exceptions == [17] => Outcome::KnownFail(
            "35 of 36 rules equal under the identity bijection; the printed image of 17 has an extra row \
             and does not assemble, the computed one is 4×3"
                .into(),
        ),
        Some(m) => Outcome::Fail(format!("rules differing: {:?}", m.exceptions)),
        None => Outcome::Fail("no bijection within two exceptions".into()),
    }
}

fn c13() -> Outcome {
    let mut r = rng(13);
    let mut failures = 0;
    let mut total = 0;
    for n in 1..=3 {
        let s = self_similarity(n).unwrap().s123;
        let count = if n == 3 { 166 } else { 167 };
        for _ in 0..count {
            let p = point(&mut r, n);
            let (w, h) = (r.gen_range(1..=8), r.gen_range(1..=8));
            let win = window(&p, (r.gen_range(-30..30), r.gen_range(-30..30)), w, h).unwrap();
            total += 1;
            if !s.apply(&win).map(|img| img.check_valid().is_ok()).unwrap_or(false) {
                failures += 1;
            }
        }
    }
    verdict(failures == 0, format!("{total} windows, {failures} failures"))
}

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("cardinalities", c1, 1),
        ("chip = extended", c2, 1),
        ("tile equations", c3, 1),
        ("inverse map and determinism", c4, 1),
        ("valid tilings", c5, 30),
        ("witness points", c6, 5),
        ("coding identities", c7, 10),
        ("factor map convergence", c8, 60),
        ("partitions", c9, 60),
        ("allowed patterns", c10, 60),
        ("self-similarity pipeline", c11, 300),
        ("published n = 3 table", c12, 300),
        ("substitution validity", c13, 60),
    ];
    let mut unexpected = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let slow = secs > *limit as f64;
        let timing = format!("{secs:.2}s / {limit}s");
        let line = match outcome {
            Outcome::Pass(d) if !slow => format!("PASS {:>2} {name} [{timing}]: {d}", k + 1),
            Outcome::Pass(d) | Outcome::Fail(d) => {
                unexpected += 1;
                let why = if slow { " (over time limit)" } else { "" };
                format!("FAIL {:>2} {name} [{timing}]{why}: {d}", k + 1)
            }
            Outcome::KnownFail(d) => format!("FAIL {:>2} {name} [{timing}] (known, see decisions): {d}", k + 1),
        };
        println!("{line}");
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
