//! Exact characteristic polynomials of incidence matrices and the checks on
//! their roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::substitution::IncidenceMatrix;

/// Integer polynomial, coefficients from the constant term up.
pub type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

/// Characteristic polynomial `det(xI − M)` by Hessenberg reduction over `Q`.
pub fn charpoly(m: &IncidenceMatrix) -> Poly {
    let n = m.size();
    let mut a: Vec<Vec<BigRational>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect())
        .collect();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            a.swap(piv, j + 1);
            for row in a.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        for k in j + 2..n {
            if a[k][j].is_zero() {
                continue;
            }
            let u = &a[k][j] / &a[j + 1][j];
            let pivot = a[j + 1].clone();
            for (v, p) in a[k].iter_mut().zip(&pivot) {
                *v -= &u * p;
            }
            for row in a.iter_mut() {
                let t = &u * &row[k];
                row[j + 1] += t;
            }
        }
    }
    // p_k = (x − h_kk) p_{k−1} − Σ_{i<k} h_ik (Π_{m=i+1..k} h_{m,m−1}) p_{i−1}
    let mut ps: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for k in 0..n {
        let prev = &ps[k];
        let mut next = vec![BigRational::zero(); k + 2];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= &a[k][k] * c;
        }
        let mut prod = BigRational::one();
        for i in (0..k).rev() {
            prod *= &a[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let coef = &a[i][k] * &prod;
            if coef.is_zero() {
                continue;
            }
            for (d, c) in ps[i].iter().enumerate() {
                next[d] -= &coef * c;
            }
        }
        ps.push(next);
    }
    let mut out: Poly = ps[n].iter().map(|c| {
        assert!(c.is_integer(), "characteristic polynomial of an integer matrix");
        c.to_integer()
    }).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder by a monic divisor.
pub fn divmod_monic(p: &Poly, d: &Poly) -> (Poly, Poly) {
    assert!(d.last().is_some_and(One::is_one), "monic divisor");
    let dd = degree(d);
    if degree(p) < dd || p.len() < d.len() {
        return (vec![BigInt::zero()], p.clone());
    }
    let mut r = p.clone();
    let mut q = vec![BigInt::zero(); p.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in d.iter().enumerate() {
            r[k + i] -= &c * di;
        }
        q[k] = c;
    }
    r.truncate(dd.max(1));
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

pub fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// `x² − (n² + 2)x + 1`, the minimal polynomial of `β²`.
pub fn beta_squared_minpoly(n: u32) -> Poly {
    vec![BigInt::one(), BigInt::from(-(n as i64 * n as i64 + 2)), BigInt::one()]
}

/// Divides out `d` as many times as possible.
fn strip(p: &mut Poly, d: &Poly) -> usize {
    let mut k = 0;
    while degree(p) >= degree(d) {
        let (q, r) = divmod_monic(p, d);
        if !is_zero_poly(&r) {
            break;
        }
        *p = q;
        k += 1;
    }
    k
}

fn rpoly(p: &Poly) -> Vec<BigRational> {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn reval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn rrem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[shift + i] -= t;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn sign_changes(vals: &[BigRational]) -> usize {
    let signs: Vec<bool> = vals.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in `(a, b]`, by Sturm's theorem.
pub fn count_real_roots(p: &Poly, a: &BigRational, b: &BigRational) -> usize {
    if degree(p) == 0 {
        return 0;
    }
    let p0 = rpoly(p);
    let p1: Vec<BigRational> = p0
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect();
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        let r = rrem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let at = |x: &BigRational| -> Vec<BigRational> { seq.iter().map(|q| reval(q, x)).collect() };
    sign_changes(&at(a)).saturating_sub(sign_changes(&at(b)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: u32,
    /// Coefficients of the characteristic polynomial, constant term first.
    pub charpoly: Vec<String>,
    pub multiplicity_beta_squared: usize,
    pub multiplicity_zero: usize,
    pub multiplicity_one: usize,
    pub multiplicity_minus_one: usize,
    /// What is left after removing the factors above.
    pub remainder: Vec<String>,
    /// Integer (hence rational) roots of the remainder.
    pub other_rational_roots: Vec<i64>,
    /// Real roots of the remainder at or above `β²`.
    pub roots_above_beta_squared: usize,
    pub perron_root: f64,
}

impl SpectralReport {
    pub fn ok(&self) -> bool {
        self.multiplicity_beta_squared >= 1 && self.other_rational_roots.is_empty() && self.roots_above_beta_squared == 0
    }
}

pub fn spectral_check(m: &IncidenceMatrix, n: u32) -> SpectralReport {
    let cp = charpoly(m);
    let mut rest = cp.clone();
    let minpoly = beta_squared_minpoly(n);
    let mq = strip(&mut rest, &minpoly);
    let m0 = strip(&mut rest, &vec![BigInt::zero(), BigInt::one()]);
    let m1 = strip(&mut rest, &vec![BigInt::from(-1), BigInt::one()]);
    let mm1 = strip(&mut rest, &vec![BigInt::one(), BigInt::one()]);
    // Eigenvalues are bounded by the largest column sum.
    let bound = m.column_sums().into_iter().max().unwrap_or(0) as i64;
    let other: Vec<i64> = (-bound..=bound)
        .filter(|&r| eval(&rest, &BigRational::from_integer(BigInt::from(r))).is_zero())
        .collect();
    // β² = n² + 1 + nβ⁻¹ lies in (n² + 1, n² + 2); isolate it to 1e-12 by
    // bisection on the minimal polynomial.
    let nn = BigRational::from_integer(BigInt::from(n as i64 * n as i64 + 1));
    let mut lo = nn.clone();
    let mut hi = nn + BigRational::one();
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)));
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if eval(&minpoly, &mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let top = BigRational::from_integer(BigInt::from(bound + 1));
    let above = count_real_roots(&rest, &lo, &top);
    let perron = if above == 0 && mq > 0 {
        ((lo + hi) / BigRational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    SpectralReport {
        n,
        charpoly: cp.iter().map(ToString::to_string).collect(),
        multiplicity_beta_squared: mq,
        multiplicity_zero: m0,
        multiplicity_one: m1,
        multiplicity_minus_one: mm1,
        remainder: rest.iter().map(ToString::to_string).collect(),
        other_rational_roots: other,
        roots_above_beta_squared: above,
        perron_root: perron,
    }
}

/// Largest eigenvalue modulus by power iteration, as an independent check.
pub fn power_iteration(m: &IncidenceMatrix, steps: usize) -> f64 {
    let n = m.size();
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..steps {
        // Average M and I to avoid oscillation for imprimitive matrices.
        let mut w: Vec<f64> = (0..n).map(|t| (0..n).map(|u| m.entries[t][u] as f64 * v[u]).sum::<f64>()).collect();
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi = 0.5 * (*wi + vi);
        }
        let norm: f64 = w.iter().sum();
        lambda = 2.0 * norm / v.iter().sum::<f64>() - 1.0;
        v = w.into_iter().map(|x| x / norm).collect();
    }
    lambda
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[u64]]) -> IncidenceMatrix {
        IncidenceMatrix { labels: (0..rows.len()).collect(), entries: rows.iter().map(|r| r.to_vec()).collect() }
    }

    fn ints(v: &[i64]) -> Poly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_charpolys() {
        assert_eq!(charpoly(&mat(&[&[1, 1], &[1, 0]])), ints(&[-1, -1, 1]));
        assert_eq!(charpoly(&mat(&[&[0, 1], &[1, 0]])), ints(&[-1, 0, 1]));
        // Needs a row swap during reduction.
        assert_eq!(charpoly(&mat(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]])), ints(&[-1, -38, -2, 1]));
    }

    #[test]
    fn charpoly_against_cofactor_expansion() {
        // det(xI − M) at integer x by Bareiss-free Leibniz on 4×4.
        let m = mat(&[&[2, 0, 1, 3], &[1, 1, 0, 0], &[0, 4, 1, 2], &[1, 1, 1, 0]]);
        let p = charpoly(&m);
        fn det(a: &[Vec<i64>]) -> i64 {
            if a.len() == 1 {
                return a[0][0];
            }
            (0..a.len())
                .map(|c| {
                    let minor: Vec<Vec<i64>> =
                        a[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| *v).collect()).collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * a[0][c] * det(&minor)
                })
                .sum()
        }
        for x in -3..=3i64 {
            let a: Vec<Vec<i64>> = (0..4)
                .map(|i| (0..4).map(|j| if i == j { x } else { 0 } - m.entries[i][j] as i64).collect())
                .collect();
            assert_eq!(eval(&p, &BigRational::from_integer(x.into())), BigRational::from_integer(det(&a).into()));
        }
    }

    #[test]
    fn division_and_sturm() {
        let p = ints(&[1, -11, 1]);
        let prod = ints(&[0, -1, 12, -12, 1]); // x(x − 1)(x² − 11x + 1)
        let (q, r) = divmod_monic(&prod, &p);
        assert_eq!(q, ints(&[0, -1, 1]));
        assert!(is_zero_poly(&r));
        let zero = BigRational::zero();
        let big = BigRational::from_integer(20.into());
        assert_eq!(count_real_roots(&p, &zero, &big), 2);
        assert_eq!(count_real_roots(&prod, &BigRational::from_integer((-1).into()), &big), 4);
        assert_eq!(count_real_roots(&ints(&[1, 0, 1]), &BigRational::from_integer((-5).into()), &big), 0);
    }

    #[test]
    fn report_on_a_known_matrix() {
        // Companion-like matrix with eigenvalues β², β⁻² (n = 3), 0 and 1.
        let m = mat(&[&[10, 3, 0, 0], &[3, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]]);
        let r = spectral_check(&m, 3);
        assert_eq!(r.multiplicity_beta_squared, 1);
        assert_eq!((r.multiplicity_zero, r.multiplicity_one), (1, 1));
        assert!(r.ok());
        assert!((r.perron_root - 3.302775637731995f64.powi(2)).abs() < 1e-9);
        assert!((power_iteration(&m, 200) - r.perron_root).abs() < 1e-6);
        let bad = mat(&[&[2, 0], &[0, 1]]);
        assert!(!spectral_check(&bad, 3).ok());
    }
}
