//! Local Hilbert symbols over a quadratic field L = ℚ(√d).
//!
//! Odd places use the tame symbol on the residue field. Split places are
//! handled through the p-adic embeddings √d ↦ ±s, s ∈ ℤ_p, including the
//! dyadic split case where the ℚ₂ formula applies. A non-split dyadic place
//! is the only place of L over 2, so its symbol follows from the product
//! formula.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::factor;
use super::hilbert::{hilbert_symbol, int_valuation, legendre, split_valuation, unit_residue, Place};
use super::square::{rational_sqrt, square_class};
use crate::error::{Error, Result};
use crate::field::etale::EtaleElement;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decomposition {
    Inert,
    Ramified,
    /// One of the two places over a split prime; `+1` is the embedding
    /// `√d ↦ s` with `s mod p` in `1..=(p-1)/2` (for p = 2: `s ≡ 1 mod 4`).
    Split(i8),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuadPlace {
    Finite(BigInt, Decomposition),
    /// A real embedding `√d ↦ ±√d`.
    Real(i8),
}

impl QuadPlace {
    fn conj(&self) -> QuadPlace {
        match self {
            QuadPlace::Finite(p, Decomposition::Split(s)) => QuadPlace::Finite(p.clone(), Decomposition::Split(-s)),
            QuadPlace::Real(s) => QuadPlace::Real(-s),
            other => other.clone(),
        }
    }
}

impl fmt::Display for QuadPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadPlace::Finite(p, Decomposition::Inert) => write!(f, "{p}:inert"),
            QuadPlace::Finite(p, Decomposition::Ramified) => write!(f, "{p}:ram"),
            QuadPlace::Finite(p, Decomposition::Split(s)) => write!(f, "{p}:{}", if *s > 0 { "+" } else { "-" }),
            QuadPlace::Real(s) => write!(f, "inf{}", if *s > 0 { "+" } else { "-" }),
        }
    }
}

/// Ramification of a quaternion algebra over a quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRamification {
    pub d: BigInt,
    pub places: BTreeSet<QuadPlace>,
}

impl QuadRamification {
    pub fn conj(&self) -> QuadRamification {
        QuadRamification { d: self.d.clone(), places: self.places.iter().map(QuadPlace::conj).collect() }
    }

    /// Equality up to the nontrivial automorphism of L.
    pub fn equivalent(&self, other: &QuadRamification) -> bool {
        self.d == other.d && (self.places == other.places || self.places == other.conj().places)
    }

    /// The lexicographically smaller of the set and its conjugate.
    pub fn canonical(&self) -> QuadRamification {
        let c = self.conj();
        if c.places < self.places {
            c
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for QuadRamification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.places.iter().map(|p| p.to_string()).collect();
        write!(f, "Q(sqrt {}): {{{}}}", self.d, items.join(", "))
    }
}

/// L = ℚ(√d) with `d` squarefree and ≠ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    d: BigInt,
}

/// `x + y√d` with rational coordinates.
#[derive(Clone, Debug)]
struct Coords {
    x: Rat,
    y: Rat,
}

impl Coords {
    fn norm(&self, d: &BigInt) -> Rat {
        self.x.square() - Rat::from_int(d.clone()) * self.y.square()
    }
}

impl QuadraticField {
    pub fn new(e: &Rat) -> Result<QuadraticField> {
        let d = square_class(e)?.representative().clone();
        if d.is_one() {
            return Err(Error::InvalidAlgebra(format!("{e} is a square; ℚ(√e) is not a field")));
        }
        Ok(QuadraticField { d })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Rewrites `x + y√e` over the squarefree generator: `x + (y·g)√d`, `g = √(e/d) > 0`.
    fn normalize(&self, u: &EtaleElement) -> Coords {
        let ratio = u.e() / Rat::from_int(self.d.clone());
        let g = rational_sqrt(&ratio).expect("e and d share a square class");
        Coords { x: u.x.clone(), y: &u.y * &g }
    }

    fn decomposition(&self, p: &BigInt) -> Vec<Decomposition> {
        if p == &BigInt::from(2) {
            match self.d.mod_floor(&BigInt::from(8)).to_u32().unwrap() {
                1 => vec![Decomposition::Split(1), Decomposition::Split(-1)],
                5 => vec![Decomposition::Inert],
                _ => vec![Decomposition::Ramified],
            }
        } else if (&self.d % p).is_zero() {
            vec![Decomposition::Ramified]
        } else if legendre(&self.d, p) == 1 {
            vec![Decomposition::Split(1), Decomposition::Split(-1)]
        } else {
            vec![Decomposition::Inert]
        }
    }

    /// Places of L at which the quaternion algebra (α, β)_L is ramified.
    pub fn ramification(&self, alpha: &EtaleElement, beta: &EtaleElement) -> Result<QuadRamification> {
        let a = self.normalize(alpha);
        let b = self.normalize(beta);
        if a.norm(&self.d).is_zero() || b.norm(&self.d).is_zero() {
            return Err(Error::NotInvertible("quaternion slot with zero norm".into()));
        }
        let mut primes: BTreeSet<BigInt> = BTreeSet::new();
        primes.insert(BigInt::from(2));
        let mut note = |n: &BigInt| -> Result<()> {
            if !n.is_zero() {
                for p in factor(n.magnitude())?.into_keys() {
                    primes.insert(BigInt::from(p));
                }
            }
            Ok(())
        };
        note(&self.d)?;
        for c in [&a, &b] {
            note(&c.x.denom())?;
            note(&c.y.denom())?;
            let n = c.norm(&self.d);
            note(&n.numer())?;
            note(&n.denom())?;
        }

        let mut places = BTreeSet::new();
        let mut product: i8 = 1;
        let mut dyadic_by_reciprocity = None;
        if self.d.is_positive() {
            for s in [1i8, -1] {
                let sym = if real_sign(&a, &self.d, s) < 0 && real_sign(&b, &self.d, s) < 0 { -1 } else { 1 };
                product *= sym;
                if sym < 0 {
                    places.insert(QuadPlace::Real(s));
                }
            }
        }
        for p in &primes {
            for dec in self.decomposition(p) {
                let place = QuadPlace::Finite(p.clone(), dec);
                let dyadic = p == &BigInt::from(2);
                let sym = match dec {
                    Decomposition::Split(sign) => self.split_symbol(&a, &b, p, sign),
                    _ if dyadic => {
                        dyadic_by_reciprocity = Some(place);
                        continue;
                    }
                    Decomposition::Inert => self.inert_symbol(&a, &b, p),
                    Decomposition::Ramified => self.ramified_symbol(&a, &b, p),
                };
                product *= sym;
                if sym < 0 {
                    places.insert(place);
                }
            }
        }
        if let Some(place) = dyadic_by_reciprocity {
            if product < 0 {
                places.insert(place);
            }
        }
        Ok(QuadRamification { d: self.d.clone(), places })
    }

    fn inert_symbol(&self, a: &Coords, b: &Coords, p: &BigInt) -> i8 {
        let (va, ua) = inert_split(a, p);
        let (vb, ub) = inert_split(b, p);
        // residue field F_{p²}; χ(x + y√d) = legendre(x² − d y²)
        let chi = |(x, y): &(BigInt, BigInt)| legendre(&(x * x - &self.d * y * y), p);
        tame(va, vb, chi(&ua), chi(&ub), 1)
    }

    fn ramified_symbol(&self, a: &Coords, b: &Coords, p: &BigInt) -> i8 {
        let (va, ua) = ramified_split(a, &self.d, p);
        let (vb, ub) = ramified_split(b, &self.d, p);
        let minus_one = legendre(&BigInt::from(-1), p);
        tame(va, vb, legendre(&ua, p), legendre(&ub, p), minus_one)
    }

    fn split_symbol(&self, a: &Coords, b: &Coords, p: &BigInt, sign: i8) -> i8 {
        let dyadic = p == &BigInt::from(2);
        let r = if dyadic { 3 } else { 1 };
        let (va, ua) = embed_split(a, &self.d, p, sign, r);
        let (vb, ub) = embed_split(b, &self.d, p, sign, r);
        if dyadic {
            let pa = Rat::from_int(BigInt::from(2).pow(va.rem_euclid(2) as u32)) * Rat::from_int(ua);
            let pb = Rat::from_int(BigInt::from(2).pow(vb.rem_euclid(2) as u32)) * Rat::from_int(ub);
            hilbert_symbol(&pa, &pb, &Place::Prime(p.clone()))
        } else {
            let minus_one = legendre(&BigInt::from(-1), p);
            tame(va, vb, legendre(&ua, p), legendre(&ub, p), minus_one)
        }
    }
}

/// Tame symbol from valuations and residue characters:
/// χ(−1)^{ab} · χ(u)^b · χ(w)^a.
fn tame(va: i64, vb: i64, chi_u: i8, chi_w: i8, chi_minus_one: i8) -> i8 {
    let a = va.rem_euclid(2);
    let b = vb.rem_euclid(2);
    let mut s = 1;
    if a == 1 && b == 1 {
        s *= chi_minus_one;
    }
    if b == 1 {
        s *= chi_u;
    }
    if a == 1 {
        s *= chi_w;
    }
    s
}

fn valuation_or_max(r: &Rat, p: &BigInt) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(split_valuation(r, p).0)
    }
}

/// Valuation at the inert prime p and the residue of α/p^v in F_p[√d].
fn inert_split(c: &Coords, p: &BigInt) -> (i64, (BigInt, BigInt)) {
    let v = [valuation_or_max(&c.x, p), valuation_or_max(&c.y, p)].into_iter().flatten().min().unwrap();
    let scale = Rat::from_int(p.clone()).pow(-(v as i32));
    let res = |r: &Rat| {
        let s = r * &scale;
        if s.is_zero() {
            BigInt::zero()
        } else {
            unit_residue(&s, p)
        }
    };
    (v, (res(&c.x), res(&c.y)))
}

/// Valuation at the ramified prime (uniformizer √d) and the residue of α/π^v in F_p.
fn ramified_split(c: &Coords, d: &BigInt, p: &BigInt) -> (i64, BigInt) {
    let v = [valuation_or_max(&c.x, p).map(|v| 2 * v), valuation_or_max(&c.y, p).map(|v| 2 * v + 1)]
        .into_iter()
        .flatten()
        .min()
        .unwrap();
    let dr = Rat::from_int(d.clone());
    let k = v.div_euclid(2);
    let scale = dr.pow(-(k as i32));
    // (x + y√d)/√d = y + (x/d)√d, and only the rational part survives mod π
    let x = if v.rem_euclid(2) == 1 { &c.y * &scale } else { &c.x * &scale };
    (v, unit_residue(&x, p))
}

/// Valuation and unit residue mod p^r of x + y·(±s) in ℚ_p, where s² = d.
fn embed_split(c: &Coords, d: &BigInt, p: &BigInt, sign: i8, r: u32) -> (i64, BigInt) {
    let den = c.x.denom().lcm(&c.y.denom());
    let xi = c.x.numer() * (&den / c.x.denom());
    let yi = c.y.numer() * (&den / c.y.denom());
    let norm = &xi * &xi - &yi * &yi * d;
    let prec = int_valuation(&norm, p) + r + 1;
    let modulus = p.pow(prec);
    let mut s = sqrt_mod_prime_power(d, p, prec);
    if sign < 0 {
        s = (-s).mod_floor(&modulus);
    }
    let val_elem = (&xi + &yi * &s).mod_floor(&modulus);
    debug_assert!(!val_elem.is_zero());
    let v = int_valuation(&val_elem, p);
    let mr = p.pow(r);
    let unit = (&val_elem / p.pow(v)).mod_floor(&mr);
    let vd = int_valuation(&den, p);
    let den_unit = &den / p.pow(vd);
    let inv = den_unit.modinv(&mr).expect("unit denominator");
    (v as i64 - vd as i64, (unit * inv).mod_floor(&mr))
}

/// Square root of `d` modulo `p^k`, normalized to the `+` embedding.
fn sqrt_mod_prime_power(d: &BigInt, p: &BigInt, k: u32) -> BigInt {
    let modulus = p.pow(k);
    if p == &BigInt::from(2) {
        // d ≡ 1 mod 8: lift bit by bit, keeping s ≡ 1 mod 4
        let mut s = BigInt::one();
        for j in 3..k {
            let m = BigInt::from(2).pow(j + 1);
            if !(&s * &s - d).mod_floor(&m).is_zero() {
                s += BigInt::from(2).pow(j - 1);
            }
        }
        let s = s.mod_floor(&modulus);
        return if (&s % 4u32) == BigInt::one() { s } else { (-s).mod_floor(&modulus) };
    }
    let mut s = tonelli_shanks(&d.mod_floor(p), p);
    let half = (p - 1u32) / 2u32;
    if s > half {
        s = p - s;
    }
    // Newton lifting: s ← s − (s² − d)/(2s)
    let mut prec = 1;
    while prec < k {
        prec = (prec * 2).min(k);
        let m = p.pow(prec);
        let inv = (BigInt::from(2) * &s).modinv(&m).expect("2s is a unit");
        s = (&s - (&s * &s - d) * inv).mod_floor(&m);
    }
    s.mod_floor(&modulus)
}

fn tonelli_shanks(n: &BigInt, p: &BigInt) -> BigInt {
    let one = BigInt::one();
    if p == &BigInt::from(2) || n.is_zero() {
        return n.clone();
    }
    let pm1 = p - &one;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while legendre(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = n.modpow(&q, p);
    let mut r = n.modpow(&((&q + &one) / 2u32), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&BigInt::from(2).pow(m - i - 1), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    r
}

/// Sign of x + y·(s√d) at a real embedding.
fn real_sign(c: &Coords, d: &BigInt, s: i8) -> i32 {
    let x = c.x.signum();
    let y = c.y.signum() * s as i32;
    if y == 0 {
        return x;
    }
    if x == 0 || x == y {
        return y;
    }
    // opposite signs: compare x² with y²d
    let lhs = c.x.square();
    let rhs = c.y.square() * Rat::from_int(d.clone());
    if lhs > rhs {
        x
    } else {
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::hilbert::hilbert_symbol;
    use crate::rat::rat;

    fn el(x: i64, y: i64, e: i64) -> EtaleElement {
        EtaleElement::new(rat(x), rat(y), rat(e))
    }

    #[test]
    fn sqrt_lifting() {
        for (d, p, k) in [(2i64, 7i64, 5u32), (10, 3, 4), (17, 2, 10), (-7, 2, 12), (5, 11, 3)] {
            let d = BigInt::from(d);
            let p = BigInt::from(p);
            let s = sqrt_mod_prime_power(&d, &p, k);
            let m = p.pow(k);
            assert_eq!((&s * &s - &d).mod_floor(&m), BigInt::zero(), "d={d} p={p}");
        }
    }

    #[test]
    fn rational_slots_split_exactly_where_the_rational_algebra_does() {
        // (-1,-1) ramifies at 2 and ∞ over ℚ. Over ℚ(√-7) (2 splits, complex) it
        // ramifies at both places over 2; over ℚ(√5) (2 inert) it splits at 2
        // and ramifies at both real places.
        let l = QuadraticField::new(&rat(-7)).unwrap();
        let ram = l.ramification(&el(-1, 0, -7), &el(-1, 0, -7)).unwrap();
        let names: Vec<String> = ram.places.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["2:-", "2:+"]);

        let l = QuadraticField::new(&rat(5)).unwrap();
        let ram = l.ramification(&el(-1, 0, 5), &el(-1, 0, 5)).unwrap();
        let names: Vec<String> = ram.places.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["inf-", "inf+"]);
    }

    #[test]
    fn rational_slots_against_rational_symbols() {
        // For α, β ∈ ℚ: split places inherit (α,β)_p, non-split places are split.
        for e in [-7i64, -15, 17, 33, 5, 3, -1, 2, 6, -2] {
            let l = QuadraticField::new(&rat(e)).unwrap();
            for a in [-6i64, -3, -1, 2, 3, 5, 7, 10] {
                for b in [-5i64, -2, -1, 3, 11, 13] {
                    let ram = l.ramification(&el(a, 0, e), &el(b, 0, e)).unwrap();
                    for place in &ram.places {
                        match place {
                            QuadPlace::Finite(p, Decomposition::Split(_)) => {
                                assert_eq!(hilbert_symbol(&rat(a), &rat(b), &Place::Prime(p.clone())), -1);
                            }
                            QuadPlace::Real(_) => assert!(a < 0 && b < 0),
                            other => panic!("unexpected ramified place {other} for ({a},{b}) over √{e}"),
                        }
                    }
                    assert_eq!(ram.places.len() % 2, 0);
                }
            }
        }
    }

    #[test]
    fn reciprocity_when_every_place_is_computed_directly() {
        // 2 splits in ℚ(√d) for d ≡ 1 mod 8, so no place is filled in by reciprocity
        for d in [17i64, -7, 33, -15, 41] {
            let l = QuadraticField::new(&rat(d)).unwrap();
            for (x1, y1, x2, y2) in [(1, 1, 3, -1), (2, 5, -1, 1), (7, 2, 3, 4), (0, 1, 5, 3), (-3, 1, 1, -2)] {
                let a = el(x1, y1, d);
                let b = el(x2, y2, d);
                if a.norm().is_zero() || b.norm().is_zero() {
                    continue;
                }
                let ram = l.ramification(&a, &b).unwrap();
                assert_eq!(ram.places.len() % 2, 0, "d={d} a={a} b={b} ram={ram}");
            }
        }
    }

    #[test]
    fn symbol_is_invariant_under_rescaling_the_generator() {
        let l = QuadraticField::new(&rat(20)).unwrap();
        // 2 + √5 written over e = 20 is 2 + (1/2)√20
        let a = EtaleElement::new(rat(2), rat((1, 2)), rat(20));
        let b = EtaleElement::new(rat(1), rat((1, 2)), rat(20));
        let l5 = QuadraticField::new(&rat(5)).unwrap();
        assert_eq!(
            l.ramification(&a, &b).unwrap(),
            l5.ramification(&el(2, 1, 5), &el(1, 1, 5)).unwrap()
        );
    }
}
