//! Exact arithmetic over `Q` and a single real quadratic field `Q(sqrt(D))`.
//!
//! A [`FieldElement`] stores `(a + b*sqrt(D)) / c` with big-integer
//! coefficients. Every constructor and operation returns the canonical
//! form: `c > 0`, `gcd(a, b, c) = 1`, `D` square-free and `> 1` for
//! irrational values, and `b = 0, D = 0` for rationals. Equality is
//! therefore structural.
//!
//! Rationals embed in every quadratic field, so an element with `D = 0`
//! combines with any other element. Two irrational elements with
//! different radicands cannot be combined.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Radicands above this bound are rejected because square-freeness is
/// checked by trial division.
const MAX_RADICAND: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("field mismatch: sqrt({0}) and sqrt({1}) cannot be combined")]
    FieldMismatch(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed number `{0}`")]
    Parse(String),
    #[error("radicand {0} is negative or too large")]
    BadRadicand(BigInt),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Sign of `a + b*sqrt(d)` for `d >= 0` not a perfect square (or `b = 0`).
pub fn sign_of_surd(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    if b.is_zero() || d.is_zero() {
        return a.cmp(&BigInt::zero());
    }
    match (a.sign(), b.is_positive()) {
        (num_bigint::Sign::Minus, false) => Ordering::Less,
        (num_bigint::Sign::Minus, true) => (b * b * d).cmp(&(a * a)),
        (_, true) => Ordering::Greater,
        (num_bigint::Sign::NoSign, false) => Ordering::Less,
        (num_bigint::Sign::Plus, false) => (a * a).cmp(&(b * b * d)),
    }
}

/// Same as [`sign_of_surd`] for machine integers; `None` when an
/// intermediate square overflows.
pub(crate) fn sign_of_surd_i128(a: i128, b: i128, d: i128) -> Option<Ordering> {
    if b == 0 || d == 0 {
        return Some(a.cmp(&0));
    }
    let scaled = |x: i128| x.checked_mul(x);
    Some(match (a.signum(), b > 0) {
        (-1, false) => Ordering::Less,
        (-1, true) => scaled(b)?.checked_mul(d)?.cmp(&scaled(a)?),
        (_, true) => Ordering::Greater,
        (0, false) => Ordering::Less,
        (_, false) => scaled(a)?.cmp(&scaled(b)?.checked_mul(d)?),
    })
}

/// Splits `n = s^2 * r` with `r` square-free and returns `(s, r)`.
fn square_free_part(n: u64) -> (u64, u64) {
    let mut rem = n;
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut p = 2u64;
    while p * p <= rem {
        while rem.is_multiple_of(p * p) {
            rem /= p * p;
            outside *= p;
        }
        if rem.is_multiple_of(p) {
            rem /= p;
            inside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outside, inside * rem)
}

impl FieldElement {
    fn canonical(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: BigInt) -> Self {
        debug_assert!(!c.is_zero());
        if b.is_zero() || d.is_zero() {
            b = BigInt::zero();
            d = BigInt::zero();
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        FieldElement { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        FieldElement {
            a: n.into(),
            b: BigInt::zero(),
            c: BigInt::one(),
            d: BigInt::zero(),
        }
    }

    /// The rational `p / q`.
    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, ArithError> {
        let q = q.into();
        if q.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::canonical(p.into(), BigInt::zero(), q, BigInt::zero()))
    }

    /// `(a + b*sqrt(radicand)) / c`. Square factors of the radicand are
    /// pulled out, so `sqrt(8)` becomes `2*sqrt(2)` and `sqrt(9)` becomes 3.
    pub fn quadratic(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        radicand: impl Into<BigInt>,
    ) -> Result<Self, ArithError> {
        let (a, mut b, c, radicand) = (a.into(), b.into(), c.into(), radicand.into());
        if c.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let raw = radicand
            .to_u64()
            .filter(|&r| r <= MAX_RADICAND)
            .ok_or_else(|| ArithError::BadRadicand(radicand.clone()))?;
        let (outside, inside) = square_free_part(raw);
        b *= outside;
        if inside == 1 {
            return Ok(Self::canonical(a + b, BigInt::zero(), c, BigInt::zero()));
        }
        Ok(Self::canonical(a, b, c, BigInt::from(inside)))
    }

    /// Integer coefficients `(a, b, c)` of `(a + b*sqrt(D)) / c`.
    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// The radicand `D`; zero for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt, ArithError> {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(ArithError::FieldMismatch(self.d.clone(), other.d.clone())),
        }
    }

    /// Checks that the two elements live in a common field.
    pub fn compatible(&self, other: &Self) -> bool {
        self.common_radicand(other).is_ok()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(
            &self.a * &other.a + &self.b * &other.b * &d,
            &self.a * &other.b + &self.b * &other.a,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // 1 / ((a + b r)/c) = c (a - b r) / (a^2 - b^2 D); the norm is
        // non-zero because D is not a perfect square.
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        Ok(Self::canonical(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.common_radicand(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn signum(&self) -> Ordering {
        sign_of_surd(&self.a, &self.b, &self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Exact total order; fails only on a field mismatch.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ArithError> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// The unique integer `m` with `m <= self < m + 1`.
    pub fn floor(&self) -> BigInt {
        // floor(x / c) = floor(floor(x) / c) for a positive integer c.
        let surd_floor = if self.b.is_zero() {
            BigInt::zero()
        } else {
            let root = (&self.b * &self.b * &self.d).sqrt();
            if self.b.is_positive() {
                root
            } else {
                // b^2 D is never a perfect square here.
                -root - 1
            }
        };
        (&self.a + surd_floor).div_floor(&self.c)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::canonical(&self.a * &k, &self.b * &k, self.c.clone(), self.d.clone())
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a / c
        } else {
            (a + b * d.sqrt()) / c
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics on a field mismatch (and on division by zero); use the
            /// `checked_*` method to handle those cases.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl std::ops::$trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);
panicking_op!(Div, div, checked_div);

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}*sqrt({}))/{}", self.a, op, self.b.abs(), self.d, self.c)
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ArithError> {
    BigInt::from_str(s).map_err(|_| ArithError::Parse(whole.to_string()))
}

impl FromStr for FieldElement {
    type Err = ArithError;

    /// Accepts `p/q`, `p`, `(a+b*sqrt(D))/c` and `(a-b*sqrt(D))/c`,
    /// ignoring whitespace. The coefficient `b*` and the denominator
    /// `/c` may be omitted.
    fn from_str(text: &str) -> Result<Self, ArithError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ArithError::Parse(text.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        if !s.contains("sqrt") {
            return match s.split_once('/') {
                Some((p, q)) => FieldElement::rational(parse_int(p, text)?, parse_int(q, text)?),
                None => Ok(FieldElement::from_integer(parse_int(&s, text)?)),
            };
        }
        let body = s.strip_prefix('(').ok_or_else(bad)?;
        let close = body.rfind(')').ok_or_else(bad)?;
        let (inner, tail) = (&body[..close], &body[close + 1..]);
        let c = match tail {
            "" => BigInt::one(),
            t => parse_int(t.strip_prefix('/').ok_or_else(bad)?, text)?,
        };
        let start = inner.find("sqrt(").ok_or_else(bad)?;
        let radicand = inner[start + 5..]
            .strip_suffix(')')
            .ok_or_else(bad)
            .and_then(|r| parse_int(r, text))?;
        let prefix = &inner[..start];
        let prefix = prefix.strip_suffix('*').unwrap_or(prefix);
        let split = prefix
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&prefix[..i], &prefix[i..]),
            None => ("0", prefix),
        };
        let a = parse_int(a_str, text)?;
        let b = match b_str {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            other => parse_int(other.strip_prefix('+').unwrap_or(other), text)?,
        };
        if radicand.is_negative() {
            return Err(ArithError::BadRadicand(radicand));
        }
        FieldElement::quadratic(a, b, c, radicand)
    }
}
