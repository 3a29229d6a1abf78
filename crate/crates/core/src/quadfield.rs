//! Exact arithmetic in the real quadratic field `Q(β)` where `β` is the
//! positive root of `x² − n·x − 1` (the n-th metallic mean).
//!
//! Every number is stored as `a + b·β` with arbitrary-precision rational
//! coefficients. Since `β` is irrational the representation is unique, so
//! structural equality is numerical equality. Products are reduced with
//! `β² = n·β + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// The integer parameter `n ≥ 1` selecting the metallic mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec(u32);

impl FieldSpec {
    pub fn new(n: u32) -> Result<Self, FieldError> {
        if n == 0 {
            return Err(FieldError::InvalidParameter(n));
        }
        Ok(FieldSpec(n))
    }

    pub fn n(self) -> u32 {
        self.0
    }

    /// Discriminant `n² + 4` of the minimal polynomial; never a perfect square.
    pub fn discriminant(self) -> BigInt {
        let n = BigInt::from(self.0);
        &n * &n + 4
    }

    /// `β` as a double, for display and plotting only.
    pub fn beta_f64(self) -> f64 {
        let n = self.0 as f64;
        (n + (n * n + 4.0).sqrt()) / 2.0
    }
}

impl TryFrom<u32> for FieldSpec {
    type Error = FieldError;

    fn try_from(n: u32) -> Result<Self, Self::Error> {
        FieldSpec::new(n)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.0
    }
}

/// An element `a + b·β` of `Q(β)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    field: FieldSpec,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl QuadNum {
    pub fn new(field: FieldSpec, a: BigRational, b: BigRational) -> Self {
        QuadNum { a, b, field }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::new(field, BigRational::zero(), BigRational::zero())
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: FieldSpec, v: i64) -> Self {
        Self::new(field, int(v), BigRational::zero())
    }

    pub fn from_ratio(field: FieldSpec, num: i64, den: i64) -> Self {
        Self::new(
            field,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(field: FieldSpec, r: BigRational) -> Self {
        Self::new(field, r, BigRational::zero())
    }

    /// `β`, the positive root.
    pub fn beta(field: FieldSpec) -> Self {
        Self::new(field, BigRational::zero(), BigRational::one())
    }

    /// `β⁻¹ = β − n`.
    pub fn beta_inv(field: FieldSpec) -> Self {
        Self::new(field, int(-(field.n() as i64)), BigRational::one())
    }

    /// The conjugate root `β* = n − β = −β⁻¹`.
    pub fn beta_conj(field: FieldSpec) -> Self {
        Self::new(field, int(field.n() as i64), -BigRational::one())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Rational part `a`.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient `b` of `β`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check_field(&self, other: &QuadNum) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch {
                left: self.field.n(),
                right: other.field.n(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &QuadNum) -> Result<QuadNum, FieldError> {
        self.check_field(other)?;
        Ok(QuadNum::new(self.field, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn checked_sub(&self, other: &QuadNum) -> Result<QuadNum, FieldError> {
        self.check_field(other)?;
        Ok(QuadNum::new(self.field, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn checked_mul(&self, other: &QuadNum) -> Result<QuadNum, FieldError> {
        self.check_field(other)?;
        // (a + bβ)(c + dβ) = ac + bd + (ad + bc + n·bd)β
        let bd = &self.b * &other.b;
        let n = int(self.field.n() as i64);
        let a = &self.a * &other.a + &bd;
        let b = &self.a * &other.b + &self.b * &other.a + n * bd;
        Ok(QuadNum::new(self.field, a, b))
    }

    pub fn checked_div(&self, other: &QuadNum) -> Result<QuadNum, FieldError> {
        self.check_field(other)?;
        let inv = other.recip()?;
        self.checked_mul(&inv)
    }

    /// Galois conjugate: `β ↦ β* = n − β`.
    pub fn conj(&self) -> QuadNum {
        let n = int(self.field.n() as i64);
        QuadNum::new(self.field, &self.a + &self.b * n, -&self.b)
    }

    /// Field norm `x·conj(x) = a² + n·ab − b²`, a rational.
    pub fn norm(&self) -> BigRational {
        let n = int(self.field.n() as i64);
        &self.a * &self.a + n * &self.a * &self.b - &self.b * &self.b
    }

    pub fn recip(&self) -> Result<QuadNum, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let norm = self.norm();
        let c = self.conj();
        Ok(QuadNum::new(self.field, c.a / &norm, c.b / norm))
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> QuadNum {
        QuadNum::new(self.field, &self.a * r, &self.b * r)
    }

    pub fn scale_int(&self, k: i64) -> QuadNum {
        self.scale(&int(k))
    }

    /// Exact sign of `a + b·β`, decided with rational arithmetic only.
    ///
    /// For `b ≠ 0` the value is `b·(β − t)` with `t = −a/b`. For `t < 0` we
    /// have `β > t`; for `t ≥ 0`, `β > t` iff `t² − n·t − 1 < 0`.
    pub fn signum(&self) -> i32 {
        if self.b.is_zero() {
            return rational_sign(&self.a);
        }
        let t = -(&self.a / &self.b);
        let beta_above_t = if t.is_negative() {
            true
        } else {
            let n = int(self.field.n() as i64);
            let q = &t * &t - n * &t - BigRational::one();
            // q = 0 would make t a rational root of x² − nx − 1, impossible.
            q.is_negative()
        };
        let s = if beta_above_t { 1 } else { -1 };
        s * rational_sign(&self.b)
    }

    /// Largest integer `m` with `m ≤ self`.
    ///
    /// Writes the number as `(P + Q·√D)/R` with integers `P, Q, R > 0` and
    /// `D = n² + 4`. As `D` is not a square, `Q·√D` lies strictly between two
    /// consecutive integers that an integer square root determines exactly.
    pub fn floor(&self) -> BigInt {
        let two = int(2);
        let n = int(self.field.n() as i64);
        // β = (n + √D)/2, so a + bβ = (a + bn/2) + (b/2)√D.
        let c = &self.a + &self.b * &n / &two;
        let e = &self.b / &two;
        if e.is_zero() {
            return c.floor().to_integer();
        }
        let den = c.denom().lcm(e.denom());
        let p = c.numer() * (&den / c.denom());
        let q = e.numer() * (&den / e.denom());
        let s = (&q * &q * self.field.discriminant()).sqrt();
        let top = if q.is_positive() { p + s } else { p - s - 1 };
        top.div_floor(&den)
    }

    /// `self − floor(self)`, in `[0, 1)`.
    pub fn frac(&self) -> QuadNum {
        let f = BigRational::from_integer(self.floor());
        QuadNum::new(self.field, &self.a - f, self.b.clone())
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * self.field.beta_f64()
    }

    /// Parses the grammar `rational`, `rational*beta`, or a sum/difference
    /// of one of each, e.g. `1/2`, `-3+beta`, `1/7+2/3*beta`.
    pub fn parse_expr(field: FieldSpec, text: &str) -> Result<QuadNum, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(FieldError::Parse(text.to_string()));
        }
        let bad = || FieldError::Parse(text.to_string());
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*' && bytes[i - 1] != b'/'
            {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        if terms.len() > 2 {
            return Err(bad());
        }
        let mut a: Option<BigRational> = None;
        let mut b: Option<BigRational> = None;
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let (coef, is_beta) = if body == "beta" {
                (BigRational::one(), true)
            } else if let Some(c) = body.strip_suffix("*beta") {
                (parse_rational(c).ok_or_else(bad)?, true)
            } else {
                (parse_rational(body).ok_or_else(bad)?, false)
            };
            let coef = if neg { -coef } else { coef };
            let slot = if is_beta { &mut b } else { &mut a };
            if slot.is_some() {
                return Err(bad());
            }
            *slot = Some(coef);
        }
        Ok(QuadNum::new(
            field,
            a.unwrap_or_else(BigRational::zero),
            b.unwrap_or_else(BigRational::zero),
        ))
    }

    pub fn to_repr(&self) -> QuadNumRepr {
        QuadNumRepr {
            a: render_rational(&self.a),
            b: render_rational(&self.b),
        }
    }

    pub fn from_repr(field: FieldSpec, repr: &QuadNumRepr) -> Result<QuadNum, FieldError> {
        let a = parse_rational(&repr.a).ok_or_else(|| FieldError::Parse(repr.a.clone()))?;
        let b = parse_rational(&repr.b).ok_or_else(|| FieldError::Parse(repr.b.clone()))?;
        Ok(QuadNum::new(field, a, b))
    }
}

/// `(a + b·β)/q` with machine integers and `q > 0`, used on hot paths.
/// Every operation reports overflow as `None`; callers fall back to
/// [`QuadNum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallQuad {
    pub a: i128,
    pub b: i128,
    pub q: i128,
    pub n: i128,
}

impl SmallQuad {
    pub fn from_quad(x: &QuadNum) -> Option<SmallQuad> {
        let q = x.a.denom().lcm(x.b.denom());
        let a = x.a.numer() * (&q / x.a.denom());
        let b = x.b.numer() * (&q / x.b.denom());
        Some(SmallQuad {
            a: a.to_i128()?,
            b: b.to_i128()?,
            q: q.to_i128()?,
            n: x.field.n() as i128,
        })
    }

    pub fn to_quad(self, field: FieldSpec) -> QuadNum {
        let q = BigInt::from(self.q);
        QuadNum::new(
            field,
            BigRational::new(BigInt::from(self.a), q.clone()),
            BigRational::new(BigInt::from(self.b), q),
        )
    }

    pub fn checked_add(self, o: SmallQuad) -> Option<SmallQuad> {
        if self.q == o.q {
            return Some(SmallQuad { a: self.a.checked_add(o.a)?, b: self.b.checked_add(o.b)?, ..self });
        }
        let a = self.a.checked_mul(o.q)?.checked_add(o.a.checked_mul(self.q)?)?;
        let b = self.b.checked_mul(o.q)?.checked_add(o.b.checked_mul(self.q)?)?;
        Some(SmallQuad { a, b, q: self.q.checked_mul(o.q)?, n: self.n })
    }

    /// Adds the integer `k`.
    pub fn add_int(self, k: i128) -> Option<SmallQuad> {
        Some(SmallQuad { a: self.a.checked_add(k.checked_mul(self.q)?)?, ..self })
    }

    /// `β·x = (b + (a + n·b)β)/q`.
    pub fn mul_beta(self) -> Option<SmallQuad> {
        let b = self.a.checked_add(self.n.checked_mul(self.b)?)?;
        Some(SmallQuad { a: self.b, b, ..self })
    }

    /// `β⁻¹·x = ((b − n·a) + a·β)/q`.
    pub fn mul_beta_inv(self) -> Option<SmallQuad> {
        let a = self.b.checked_sub(self.n.checked_mul(self.a)?)?;
        Some(SmallQuad { a, b: self.a, ..self })
    }

    /// Exact floor, as in [`QuadNum::floor`].
    pub fn floor(self) -> Option<i128> {
        // (a + bβ)/q = (2a + nb + b√D)/(2q)
        let p = self.a.checked_mul(2)?.checked_add(self.n.checked_mul(self.b)?)?;
        let r = self.q.checked_mul(2)?;
        if self.b == 0 {
            return Some(p.div_euclid(r));
        }
        let d = self.n.checked_mul(self.n)?.checked_add(4)?;
        let sq = self.b.checked_mul(self.b)?.checked_mul(d)?;
        let s = isqrt_i128(sq);
        let top = if self.b > 0 { p.checked_add(s)? } else { p.checked_sub(s)?.checked_sub(1)? };
        Some(top.div_euclid(r))
    }

    /// `x − floor(x)`.
    pub fn frac(self) -> Option<SmallQuad> {
        let f = self.floor()?;
        self.add_int(-f)
    }
}

fn isqrt_i128(v: i128) -> i128 {
    debug_assert!(v >= 0);
    let mut r = (v as f64).sqrt() as i128;
    while r > 0 && r.checked_mul(r).is_none_or(|rr| rr > v) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|rr| rr <= v) {
        r += 1;
    }
    r
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Renders a rational as `p/q` in lowest terms with `q > 0`.
pub fn render_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// JSON form `{"a": "p/q", "b": "r/s"}`; the parameter `n` lives in the
/// enclosing document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadNumRepr {
    pub a: String,
    pub b: String,
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    /// Panics when the two numbers live in different fields.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*beta", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}*beta", self.a, -&self.b)
                } else {
                    write!(f, "{}+{}*beta", self.a, self.b)
                }
            }
        }
    }
}

// Operators panic on a field mismatch; the `checked_*` methods report it.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $trait<&'b QuadNum> for &'a QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &'b QuadNum) -> QuadNum {
                self.$checked(rhs).expect(concat!("QuadNum ", stringify!($method)))
            }
        }
        impl $trait<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &'b QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<QuadNum> for &'a QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(self.field, -self.a, -self.b)
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(self.field, -&self.a, -&self.b)
    }
}
