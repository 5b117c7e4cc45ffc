//! Square classes of ℚ× and exact square roots.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::factor;
use crate::error::Result;
use crate::rat::Rat;

/// An element of ℚ×/ℚ×², represented by its unique squarefree integer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_rat(&self) -> Rat {
        Rat::from_int(self.0.clone())
    }

    /// The class of the product of two representatives.
    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        square_class(&(self.to_rat() * other.to_rat()))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<SquareClass, D::Error> {
        let s = String::deserialize(deserializer)?;
        let n: BigInt = s.parse().map_err(serde::de::Error::custom)?;
        if n.is_zero() {
            return Err(serde::de::Error::custom("square class representative must be nonzero"));
        }
        let c = square_class(&Rat::from_int(n.clone())).map_err(serde::de::Error::custom)?;
        if c.0 != n {
            return Err(serde::de::Error::custom(format!("{n} is not squarefree")));
        }
        Ok(c)
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareClass({})", self.0)
    }
}

/// Product of the primes that divide `n` to an odd power.
fn squarefree_part(n: &BigUint) -> Result<BigUint> {
    Ok(factor(n)?
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p))
}

/// The squarefree integer `s` with `r = s·q²` for some rational `q`.
pub fn square_class(r: &Rat) -> Result<SquareClass> {
    assert!(!r.is_zero(), "square class of zero");
    // r = n/d and n/d ≡ n·d modulo squares
    let n = r.numer().magnitude().clone();
    let d = r.denom().magnitude().clone();
    let s = squarefree_part(&(n * d))?;
    let sign = if r.is_negative() { Sign::Minus } else { Sign::Plus };
    Ok(SquareClass(BigInt::from_biguint(sign, s)))
}

/// Exact nonnegative integer square root, if `n` is a perfect square.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// The nonnegative `s` with `s² = r`, or `None` when `r` is not a square.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(&r.numer())?;
    let d = integer_sqrt(&r.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_square(r: &Rat) -> bool {
    rational_sqrt(r).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn sc(r: Rat) -> i64 {
        square_class(&r).unwrap().representative().try_into().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(sc(rat(18)), 2);
        assert_eq!(sc(rat((-4, 9))), -1);
        assert_eq!(sc(rat((50, 27))), 6);
        assert_eq!(sc(rat(1)), 1);
    }

    #[test]
    fn square_class_of_fifty_over_twenty_seven_by_hand() {
        // 50 = 2·5², 27 = 3³: the odd-exponent primes are 2 and 3
        let q = rat((5, 9));
        assert_eq!(rat(6) * q.square(), rat((50, 27)));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(rational_sqrt(&rat((49, 4))), Some(rat((7, 2))));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
        assert_eq!(rational_sqrt(&rat(0)), Some(rat(0)));
        let big = Rat::new(BigInt::from(15_241_383_936i64), BigInt::from(25));
        assert_eq!(rational_sqrt(&big), Some(rat((123_456, 5))));
    }

    #[test]
    fn sqrt_of_large_square_by_newton_oracle() {
        // Newton iteration on integers, independent of num-integer's sqrt
        fn newton(n: &BigInt) -> BigInt {
            let mut x = n.clone();
            let mut y = (&x + 1) / 2;
            while y < x {
                x = y;
                y = (&x + n / &x) / 2;
            }
            x
        }
        let n = BigInt::from(15_241_383_936i64);
        let r = newton(&n);
        assert_eq!(&r * &r, n);
        assert_eq!(r, BigInt::from(123_456));
    }

    proptest! {
        #[test]
        fn class_is_invariant_under_squares(
            rn in -500i64..500, rd in 1i64..500, sn in 1i64..300, sd in 1i64..300
        ) {
            prop_assume!(rn != 0);
            let r = rat((rn, rd));
            let s = rat((sn, sd));
            prop_assert_eq!(square_class(&r).unwrap(), square_class(&(&r * &s.square())).unwrap());
        }

        #[test]
        fn sqrt_squares_back(n in -2000i64..2000, d in 1i64..2000) {
            let r = rat((n, d));
            if let Some(s) = rational_sqrt(&r) {
                prop_assert_eq!(s.square(), r.clone());
            }
            if n != 0 && !square_class(&r).unwrap().is_trivial() {
                prop_assert!(rational_sqrt(&r).is_none());
            }
        }
    }
}
