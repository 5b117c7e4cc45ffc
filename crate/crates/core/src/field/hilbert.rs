//! Places of ℚ and the local Hilbert symbol.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rat::Rat;

/// A place of ℚ: a finite prime or the real place.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(BigInt),
    Infinite,
}

impl Place {
    pub fn prime(p: impl Into<BigInt>) -> Place {
        Place::Prime(p.into())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place, Error> {
        if s == "inf" {
            return Ok(Place::Infinite);
        }
        let p: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad place {s:?}")))?;
        if !p.is_positive() || !super::factor::is_probable_prime(p.magnitude()) {
            return Err(Error::Parse(format!("place {s:?} is not a prime")));
        }
        Ok(Place::Prime(p))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Place, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Splits a nonzero rational as `p^v · u` with `u` a p-adic unit.
pub fn split_valuation(r: &Rat, p: &BigInt) -> (i64, Rat) {
    let vn = int_valuation(&r.numer(), p);
    let vd = int_valuation(&r.denom(), p);
    let n = r.numer() / p.pow(vn);
    let d = r.denom() / p.pow(vd);
    (vn as i64 - vd as i64, Rat::new(n, d))
}

/// Legendre symbol (n/p) for an odd prime p; 0 when p divides n.
pub fn legendre(n: &BigInt, p: &BigInt) -> i8 {
    let r = n.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Residue of a p-adic unit rational modulo `m` (coprime denominators only).
pub fn unit_residue(u: &Rat, m: &BigInt) -> BigInt {
    let d_inv = u
        .denom()
        .modinv(m)
        .expect("denominator must be invertible modulo m");
    (u.numer() * d_inv).mod_floor(m)
}

fn sign_to_symbol(negative: bool) -> i8 {
    if negative {
        -1
    } else {
        1
    }
}

/// The Hilbert symbol (a, b)_v: +1 iff z² = ax² + by² has a nontrivial
/// solution over the completion of ℚ at v.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match v {
        Place::Infinite => sign_to_symbol(a.is_negative() && b.is_negative()),
        Place::Prime(p) if p == &BigInt::from(2) => {
            let two = BigInt::from(2);
            let eight = BigInt::from(8);
            let (alpha, u) = split_valuation(a, &two);
            let (beta, w) = split_valuation(b, &two);
            let u = unit_residue(&u, &eight).to_i64().unwrap();
            let w = unit_residue(&w, &eight).to_i64().unwrap();
            let eps = |x: i64| ((x - 1) / 2) & 1;
            let omega = |x: i64| ((x * x - 1) / 8) & 1;
            let e = eps(u) * eps(w) + alpha.rem_euclid(2) * omega(w) + beta.rem_euclid(2) * omega(u);
            sign_to_symbol(e % 2 == 1)
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, w) = split_valuation(b, p);
            let alpha = alpha.rem_euclid(2);
            let beta = beta.rem_euclid(2);
            let mut s: i8 = 1;
            // (-1)^{αβ(p-1)/2}
            if alpha == 1 && beta == 1 && (p % 4u32) == BigInt::from(3) {
                s = -s;
            }
            if beta == 1 {
                s *= legendre(&unit_residue(&u, p), p);
            }
            if alpha == 1 {
                s *= legendre(&unit_residue(&w, p), p);
            }
            s
        }
    }
}
