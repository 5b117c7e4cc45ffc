//! Exact rational numbers.
//!
//! Values whose numerator and denominator fit in an `i64` are stored inline
//! and combined with checked machine arithmetic; anything larger lives in a
//! `num_rational::BigRational`. The representation is canonical: lowest
//! terms, positive denominator, zero is `0/1`, and the inline form is used
//! whenever it fits. The textual form is `num/den`, with `/den` omitted when
//! the denominator is one.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Lowest terms, denominator > 0, numerator ≠ i64::MIN.
    Small(i64, i64),
    Big(BigRational),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

impl Default for Rat {
    fn default() -> Rat {
        Rat::zero()
    }
}

fn fits(n: &BigInt) -> Option<i64> {
    n.to_i64().filter(|&v| v != i64::MIN)
}

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rat {
        let d = denom.into();
        assert!(!d.is_zero(), "zero denominator");
        Rat::from_big(BigRational::new(numer.into(), d))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        let n = n.into();
        match fits(&n) {
            Some(v) => Rat(Repr::Small(v, 1)),
            None => Rat(Repr::Big(BigRational::from_integer(n))),
        }
    }

    /// `n/d` from machine integers that may not be in lowest terms.
    fn small(n: i64, d: i64) -> Rat {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(a), Some(b)) => {
                    n = a;
                    d = b;
                }
                _ => return Rat::from_big(BigRational::new(n.into(), d.into())),
            }
        }
        if n == i64::MIN {
            return Rat::from_big(BigRational::new(n.into(), d.into()));
        }
        Rat(Repr::Small(n, d))
    }

    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_inv(&self) -> Option<Rat> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) => Some(Rat::small(*d, *n)),
            Repr::Big(r) => Some(Rat::from_big(r.recip())),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check invertibility first.
    pub fn inv(&self) -> Rat {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn square(&self) -> Rat {
        self * self
    }

    pub fn pow(&self, exp: i32) -> Rat {
        Rat::from_big(num_traits::Pow::pow(&self.to_big(), exp))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        match (fits(r.numer()), fits(r.denom())) {
            (Some(n), Some(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(r)),
        }
    }

    fn add_small(a: i64, b: i64, c: i64, d: i64) -> Option<Rat> {
        if b == d {
            return Some(Rat::small(a.checked_add(c)?, b));
        }
        let g = b.gcd(&d);
        let (b1, d1) = (b / g, d / g);
        let n = a.checked_mul(d1)?.checked_add(c.checked_mul(b1)?)?;
        let den = b.checked_mul(d1)?;
        Some(Rat::small(n, den))
    }

    fn mul_small(a: i64, b: i64, c: i64, d: i64) -> Option<Rat> {
        let g1 = a.gcd(&d);
        let g2 = c.gcd(&b);
        let (a, d) = if g1 > 1 { (a / g1, d / g1) } else { (a, d) };
        let (c, b) = if g2 > 1 { (c / g2, b / g2) } else { (c, b) };
        let n = a.checked_mul(c)?;
        let den = b.checked_mul(d)?;
        (n != i64::MIN).then_some(Rat(Repr::Small(n, den)))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Rat {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts only the canonical form: lowest terms, positive denominator,
    /// no denominator when it would be one.
    fn from_str(s: &str) -> Result<Rat, Error> {
        let bad = || Error::Parse(format!("not a canonical rational: {s:?}"));
        let int = |t: &str| -> Result<BigInt, Error> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            if digits.len() > 1 && digits.starts_with('0') {
                return Err(bad());
            }
            if t.starts_with('-') && digits == "0" {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rat::from_int(int(s)?)),
            Some((n, d)) => {
                let n = int(n)?;
                let d = int(d)?;
                if !d.is_positive() || d.is_one() {
                    return Err(bad());
                }
                let r = Rat::new(n.clone(), d.clone());
                if r.numer() != n || r.denom() != d {
                    return Err(bad());
                }
                Ok(r)
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn add_ref(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        if let Some(r) = Rat::add_small(*a, *b, *c, *d) {
            return r;
        }
    }
    Rat::from_big(x.to_big() + y.to_big())
}

fn mul_ref(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        if let Some(r) = Rat::mul_small(*a, *b, *c, *d) {
            return r;
        }
    }
    Rat::from_big(x.to_big() * y.to_big())
}

fn sub_ref(x: &Rat, y: &Rat) -> Rat {
    add_ref(x, &-y)
}

fn div_ref(x: &Rat, y: &Rat) -> Rat {
    mul_ref(x, &y.checked_inv().expect("division by zero"))
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $f:ident) => {
        impl $Trait<&Rat> for &Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: &Rat) -> Rat {
                $f(self, rhs)
            }
        }
        impl $Trait<Rat> for Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: Rat) -> Rat {
                $f(&self, &rhs)
            }
        }
        impl $Trait<&Rat> for Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: &Rat) -> Rat {
                $f(&self, rhs)
            }
        }
        impl $Trait<Rat> for &Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: Rat) -> Rat {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = add_ref(self, rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = sub_ref(self, rhs);
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = mul_ref(self, rhs);
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            // the inline numerator is never i64::MIN, so negation cannot overflow
            Repr::Small(n, d) => Rat(Repr::Small(-n, *d)),
            Repr::Big(r) => Rat::from_big(-r),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rat> for Rat {
    fn product<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

/// Shorthand for building rationals in code and tests: `rat(3)`, `rat((1, 2))`.
pub fn rat<T: IntoRat>(v: T) -> Rat {
    v.into_rat()
}

pub trait IntoRat {
    fn into_rat(self) -> Rat;
}

impl IntoRat for i64 {
    fn into_rat(self) -> Rat {
        Rat::from_int(self)
    }
}

impl IntoRat for i32 {
    fn into_rat(self) -> Rat {
        Rat::from_int(self)
    }
}

impl IntoRat for (i64, i64) {
    fn into_rat(self) -> Rat {
        Rat::new(self.0, self.1)
    }
}

impl IntoRat for (i32, i32) {
    fn into_rat(self) -> Rat {
        Rat::new(self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_form() {
        assert_eq!(rat((6, -4)).to_string(), "-3/2");
        assert_eq!(rat(0).to_string(), "0");
        assert_eq!(rat((10, 5)).to_string(), "2");
        assert_eq!("-3/2".parse::<Rat>().unwrap(), rat((-3, 2)));
        assert_eq!("17".parse::<Rat>().unwrap(), rat(17));
    }

    #[test]
    fn inline_and_big_forms_agree() {
        let big = Rat::new(BigInt::from(i64::MAX) * 3, BigInt::from(7));
        let back = &(&big * &rat((7, 3))) - &rat(i64::MAX);
        assert!(back.is_zero());
        assert_eq!(back, Rat::zero());
        let m = rat(i64::MAX) + rat(1);
        assert_eq!(m.to_string(), "9223372036854775808");
        assert_eq!(-(-m.clone()), m);
        assert_eq!(rat((-1, i64::MAX)) * rat((i64::MAX, 2)), rat((-1, 2)));
        assert!(rat((1, 3)) < rat((1, 2)) && rat(-1) < m);
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_bigrational(a in proptest::num::i64::ANY, b in 1i64..i64::MAX, c in proptest::num::i64::ANY, d in 1i64..i64::MAX) {
            let x = Rat::new(a, b);
            let y = Rat::new(c, d);
            let (bx, by) = (BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()));
            proptest::prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            proptest::prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            proptest::prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            if c != 0 {
                proptest::prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            proptest::prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            proptest::prop_assert_eq!(Rat::from_big(bx.clone()), x);
        }
    }

    #[test]
    fn rejects_non_canonical_text() {
        for s in ["6/4", "3/1", "1/-2", "-0", "007", "", "1/", "x", "1/0", "+3"] {
            assert!(s.parse::<Rat>().is_err(), "{s} should be rejected");
        }
    }
}
