//! Exact arithmetic in the real quadratic field Q(√2).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{rational_sqrt, ExactField, Sign};

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar literal: {0}")]
    Literal(String),
}

/// The real number `a + b·√2` with rational `a`, `b`.
///
/// `BigRational` keeps both components reduced with a positive denominator,
/// so derived equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    a: Rational,
    b: Rational,
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_parts(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        QSqrt2 {
            a: rat(a_num, a_den),
            b: rat(b_num, b_den),
        }
    }

    /// `√2`.
    pub fn sqrt2() -> Self {
        QSqrt2 {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    /// The Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        QSqrt2 {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat(2, 1)
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QSqrt2 {
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    /// Sign of `a + b√2`, decided by comparing `a²` with `2b²` when the
    /// components disagree in sign.
    pub fn sign(&self) -> Sign {
        let sa = self.a.signum_exact();
        let sb = self.b.signum_exact();
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * rat(2, 1);
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    // a² = 2b² has no rational solution with a,b ≠ 0
                    Ordering::Equal => unreachable!("√2 is irrational"),
                }
            }
        }
    }

    /// The four-integer literal `[a_num, a_den, b_num, b_den]`.
    pub fn to_literal(&self) -> [BigInt; 4] {
        [
            self.a.numer().clone(),
            self.a.denom().clone(),
            self.b.numer().clone(),
            self.b.denom().clone(),
        ]
    }

    pub fn from_literal(parts: [BigInt; 4]) -> Result<Self, ScalarError> {
        let [an, ad, bn, bd] = parts;
        if ad.is_zero() || bd.is_zero() {
            return Err(ScalarError::Literal("zero denominator".into()));
        }
        Ok(QSqrt2 {
            a: Rational::new(an, ad),
            b: Rational::new(bn, bd),
        })
    }

    /// Decimal rendering for presentation output only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }

    /// `⌊x · 10^digits⌋`, computed exactly.
    pub fn floor_scaled(&self, digits: u32) -> BigInt {
        let scale = QSqrt2::from(Rational::from_integer(BigInt::from(10).pow(digits)));
        let y = self * &scale;
        floor(&y)
    }

    /// Decimal expansion truncated toward −∞ after `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        render_scaled(self.floor_scaled(digits), digits)
    }

    /// Decimal expansion of `√x` truncated after `digits` places; `None`
    /// when `x < 0`.
    pub fn sqrt_decimal(&self, digits: u32) -> Option<String> {
        if self.lt_zero() {
            return None;
        }
        // ⌊√x · 10^d⌋ is the largest m ≥ 0 with m² ≤ x · 10^{2d}
        let target = self * &QSqrt2::from(Rational::from_integer(BigInt::from(10).pow(2 * digits)));
        let le = |m: &BigInt| {
            let m = QSqrt2::from(Rational::from_integer(m.clone()));
            !(&m * &m - &target).gt_zero()
        };
        let mut m = floor(&target).max(BigInt::zero()).sqrt();
        while m > BigInt::zero() && !le(&m) {
            m -= 1;
        }
        while le(&(&m + 1)) {
            m += 1;
        }
        Some(render_scaled(m, digits))
    }
}

/// `⌊x⌋`: start from an estimate within a few units and step to the answer.
fn floor(x: &QSqrt2) -> BigInt {
    let a = x.a.floor().to_integer();
    let bn = x.b.numer();
    let root = (bn * bn * BigInt::from(2)).sqrt() / x.b.denom();
    let mut m = if bn.is_negative() { a - root } else { a + root };
    let le = |m: &BigInt| !(QSqrt2::from(Rational::from_integer(m.clone())) - x.clone()).gt_zero();
    while !le(&m) {
        m -= 1;
    }
    while le(&(&m + 1)) {
        m += 1;
    }
    m
}

fn render_scaled(m: BigInt, digits: u32) -> String {
    if digits == 0 {
        return m.to_string();
    }
    if m.is_negative() {
        return format!("-{}", render_scaled(-m, digits));
    }
    let scale = BigInt::from(10).pow(digits);
    let (q, r) = (&m / &scale, &m % &scale);
    format!("{q}.{:0>width$}", r.to_string(), width = digits as usize)
}

trait RationalSign {
    fn signum_exact(&self) -> Sign;
}

impl RationalSign for Rational {
    fn signum_exact(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√2", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}√2", self.a, -self.b.clone())
                } else {
                    write!(f, "{}+{}√2", self.a, self.b)
                }
            }
        }
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.clone() - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl From<i64> for QSqrt2 {
    fn from(v: i64) -> Self {
        QSqrt2 {
            a: rat(v, 1),
            b: Rational::zero(),
        }
    }
}

impl From<Rational> for QSqrt2 {
    fn from(a: Rational) -> Self {
        QSqrt2 {
            a,
            b: Rational::zero(),
        }
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::default()
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2 {
            a: Rational::one(),
            b: Rational::zero(),
        }
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;

    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;

    fn neg(self) -> QSqrt2 {
        -self.clone()
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;

    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;

    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;

    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let bd = &self.b * &o.b;
        QSqrt2 {
            a: &self.a * &o.a + &bd + &bd,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;

            fn $m(self, o: QSqrt2) -> QSqrt2 {
                (&self).$m(&o)
            }
        }

        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;

            fn $m(self, o: &QSqrt2) -> QSqrt2 {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Div for QSqrt2 {
    type Output = QSqrt2;

    /// Panics on division by zero; use [`QSqrt2::inverse`] to handle it.
    fn div(self, o: QSqrt2) -> QSqrt2 {
        self * o.inverse().expect("division by zero in Q(√2)")
    }
}

impl ExactField for QSqrt2 {
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }

    fn signum(&self) -> Sign {
        self.sign()
    }

    fn sqrt_exact(&self) -> Option<Self> {
        match self.sign() {
            Sign::Negative => return None,
            Sign::Zero => return Some(QSqrt2::zero()),
            Sign::Positive => {}
        }
        // (p + q√2)² = a + b√2 means p² + 2q² = a and 2pq = b, so p² and 2q²
        // are the roots of X² − aX + b²/2.
        let disc = self.norm();
        let s = rational_sqrt(&disc)?;
        let two = rat(2, 1);
        for p2 in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            let Some(p) = rational_sqrt(&p2) else { continue };
            let cand = if p.is_zero() {
                // b = 0 and a = 2q²
                let q = rational_sqrt(&(&self.a / &two));
                match q {
                    Some(q) => QSqrt2::new(Rational::zero(), q),
                    None => continue,
                }
            } else {
                let q = &self.b / (&p * &two);
                QSqrt2::new(p, q)
            };
            if &cand * &cand == *self {
                return Some(if cand.sign() == Sign::Negative { -cand } else { cand });
            }
        }
        None
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        QSqrt2 {
            a: rat(num, den),
            b: Rational::zero(),
        }
    }
}

impl FromStr for QSqrt2 {
    type Err = ScalarError;

    /// Parses the bracketed literal `[a_num, a_den, b_num, b_den]`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ScalarError::Literal(s.to_string()))?;
        let parts: Vec<BigInt> = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .trim_matches('"')
                    .parse::<BigInt>()
                    .map_err(|_| ScalarError::Literal(s.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let parts: [BigInt; 4] = parts
            .try_into()
            .map_err(|_| ScalarError::Literal(s.to_string()))?;
        QSqrt2::from_literal(parts)
    }
}

/// JSON integers are emitted as numbers when they fit in `i64`, otherwise
/// as decimal strings.
fn serialize_int<S: SerializeTuple>(t: &mut S, v: &BigInt) -> Result<(), S::Error> {
    match v.to_i64() {
        Some(x) => t.serialize_element(&x),
        None => t.serialize_element(&v.to_string()),
    }
}

impl Serialize for QSqrt2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(4)?;
        for v in self.to_literal().iter() {
            serialize_int(&mut t, v)?;
        }
        t.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for QSqrt2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LitVisitor;

        impl<'de> Visitor<'de> for LitVisitor {
            type Value = QSqrt2;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a four-integer scalar literal [a_num, a_den, b_num, b_den]")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<QSqrt2, A::Error> {
                let mut parts = Vec::with_capacity(4);
                while let Some(v) = seq.next_element::<IntRepr>()? {
                    parts.push(match v {
                        IntRepr::Num(x) => BigInt::from(x),
                        IntRepr::Str(s) => s
                            .parse::<BigInt>()
                            .map_err(|_| de::Error::custom(format!("bad integer {s:?}")))?,
                    });
                }
                let parts: [BigInt; 4] = parts
                    .try_into()
                    .map_err(|_| de::Error::custom("scalar literal needs exactly 4 integers"))?;
                QSqrt2::from_literal(parts).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(LitVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(an: i64, ad: i64, bn: i64, bd: i64) -> QSqrt2 {
        QSqrt2::from_parts(an, ad, bn, bd)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(q(1, 1, 0, 1) * q(0, 1, 1, 1), q(0, 1, 1, 1));
        assert_eq!(q(0, 1, 1, 1) * q(0, 1, 1, 1), q(2, 1, 0, 1));
        assert_eq!(q(1, 1, 1, 1) * q(-1, 1, 1, 1), q(1, 1, 0, 1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(q(1, 1, 1, 1).inverse().unwrap(), q(-1, 1, 1, 1));
        assert_eq!(q(0, 1, 1, 1).inverse().unwrap(), q(0, 1, 1, 2));
        assert_eq!(q(2, 1, 0, 1).inverse().unwrap(), q(1, 2, 0, 1));
        assert_eq!(QSqrt2::zero().inverse(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(3, 1, -2, 1).sign(), Sign::Positive);
        assert_eq!(QSqrt2::zero().sign(), Sign::Zero);
        assert_eq!(q(-3, 1, 2, 1).sign(), Sign::Negative);
        assert_eq!(q(-1, 1, 1, 1).sign(), Sign::Positive);
        assert_eq!(q(1, 1, -1, 1).sign(), Sign::Negative);
    }

    #[test]
    fn square_roots() {
        assert_eq!(QSqrt2::from(2).sqrt_exact(), Some(QSqrt2::sqrt2()));
        assert_eq!(QSqrt2::from(9).sqrt_exact(), Some(QSqrt2::from(3)));
        // (1 + √2)² = 3 + 2√2
        assert_eq!(q(3, 1, 2, 1).sqrt_exact(), Some(q(1, 1, 1, 1)));
        // (√2 − 1)² = 3 − 2√2
        assert_eq!(q(3, 1, -2, 1).sqrt_exact(), Some(q(-1, 1, 1, 1)));
        assert_eq!(q(1, 2, 0, 1).sqrt_exact(), Some(q(0, 1, 1, 2)));
        assert_eq!(QSqrt2::from(3).sqrt_exact(), None);
        assert_eq!(QSqrt2::from(-2).sqrt_exact(), None);
    }

    #[test]
    fn literal_roundtrip() {
        let x: QSqrt2 = "[0, 1, 1, 2]".parse().unwrap();
        assert_eq!(x, q(0, 1, 1, 2));
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[0,1,1,2]");
        let back: QSqrt2 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!("[1,0,0,1]".parse::<QSqrt2>().is_err());
        assert!("[1,2,3]".parse::<QSqrt2>().is_err());
    }

    #[test]
    fn big_literals_use_strings() {
        let big = QSqrt2::new(
            Rational::from_integer(BigInt::from(10).pow(30)),
            Rational::zero(),
        );
        let json = serde_json::to_string(&big).unwrap();
        assert!(json.contains('"'));
        let back: QSqrt2 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, big);
    }
}
