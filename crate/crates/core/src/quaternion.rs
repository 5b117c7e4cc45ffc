//! Symbol quaternion algebras (a, b) over ℚ or a quadratic étale algebra.
//!
//! Basis 1, i, j, k with i² = a, j² = b, k = ij = −ji.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::etale::{EtaleElement, EtaleQuadratic, EtaleShape};
use crate::field::factor::factor;
use crate::field::{hilbert_symbol, rational_sqrt, Place};
use crate::linalg::RatMatrix;
use crate::rat::Rat;

/// Coefficient rings a quaternion algebra can be defined over.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    /// The rational `r` inside the ring of `self`.
    fn lift(&self, r: Rat) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
}

impl Scalar for Rat {
    fn zero_like(&self) -> Rat {
        Rat::zero()
    }
    fn lift(&self, r: Rat) -> Rat {
        r
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Rat) -> Rat {
        self + o
    }
    fn minus(&self, o: &Rat) -> Rat {
        self - o
    }
    fn times(&self, o: &Rat) -> Rat {
        self * o
    }
    fn negated(&self) -> Rat {
        -self
    }
    fn inverse(&self) -> Result<Rat> {
        self.checked_inv().ok_or_else(|| Error::NotInvertible("0".into()))
    }
}

impl Scalar for EtaleElement {
    fn zero_like(&self) -> EtaleElement {
        EtaleElement::new(Rat::zero(), Rat::zero(), self.e().clone())
    }
    fn lift(&self, r: Rat) -> EtaleElement {
        EtaleElement::new(r, Rat::zero(), self.e().clone())
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &EtaleElement) -> EtaleElement {
        self + o
    }
    fn minus(&self, o: &EtaleElement) -> EtaleElement {
        self - o
    }
    fn times(&self, o: &EtaleElement) -> EtaleElement {
        self * o
    }
    fn negated(&self) -> EtaleElement {
        -self
    }
    fn inverse(&self) -> Result<EtaleElement> {
        self.inv()
    }
}

/// `x₀ + x₁i + x₂j + x₃k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuaternionElement<S = Rat> {
    pub c: [S; 4],
}

impl<S: Scalar> QuaternionElement<S> {
    pub fn new(c: [S; 4]) -> QuaternionElement<S> {
        QuaternionElement { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_nil)
    }

    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(Scalar::is_nil)
    }

    pub fn is_pure(&self) -> bool {
        self.c[0].is_nil()
    }

    /// γ(x) = trd(x) − x.
    pub fn conj(&self) -> QuaternionElement<S> {
        let [x0, x1, x2, x3] = &self.c;
        QuaternionElement::new([x0.clone(), x1.negated(), x2.negated(), x3.negated()])
    }

    pub fn trd(&self) -> S {
        self.c[0].plus(&self.c[0])
    }

    pub fn pure_part(&self) -> QuaternionElement<S> {
        let mut c = self.c.clone();
        c[0] = c[0].zero_like();
        QuaternionElement::new(c)
    }

    pub fn scale(&self, s: &S) -> QuaternionElement<S> {
        QuaternionElement::new(self.c.clone().map(|x| x.times(s)))
    }
}

impl QuaternionElement<Rat> {
    pub fn from_ints(c: [i64; 4]) -> QuaternionElement<Rat> {
        QuaternionElement::new(c.map(Rat::from))
    }

    pub fn scalar(r: Rat) -> QuaternionElement<Rat> {
        QuaternionElement::new([r, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn scale_rat(&self, r: &Rat) -> QuaternionElement<Rat> {
        self.scale(r)
    }
}

impl<S: Scalar> Add for &QuaternionElement<S> {
    type Output = QuaternionElement<S>;
    fn add(self, rhs: &QuaternionElement<S>) -> QuaternionElement<S> {
        QuaternionElement::new(std::array::from_fn(|t| self.c[t].plus(&rhs.c[t])))
    }
}

impl<S: Scalar> Sub for &QuaternionElement<S> {
    type Output = QuaternionElement<S>;
    fn sub(self, rhs: &QuaternionElement<S>) -> QuaternionElement<S> {
        QuaternionElement::new(std::array::from_fn(|t| self.c[t].minus(&rhs.c[t])))
    }
}

impl<S: Scalar> Neg for &QuaternionElement<S> {
    type Output = QuaternionElement<S>;
    fn neg(self) -> QuaternionElement<S> {
        QuaternionElement::new(self.c.clone().map(|x| x.negated()))
    }
}

impl<S: Scalar> fmt::Display for QuaternionElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2, x3] = &self.c;
        write!(f, "({x0}) + ({x1})i + ({x2})j + ({x3})k")
    }
}

impl<S: Scalar> fmt::Debug for QuaternionElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra<S = Rat> {
    a: S,
    b: S,
}

impl<S: Scalar> QuaternionAlgebra<S> {
    pub fn new(a: S, b: S) -> Result<QuaternionAlgebra<S>> {
        a.inverse().map_err(|_| Error::InvalidAlgebra(format!("a = {a} is not invertible")))?;
        b.inverse().map_err(|_| Error::InvalidAlgebra(format!("b = {b} is not invertible")))?;
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn scalar(&self, s: S) -> QuaternionElement<S> {
        let z = s.zero_like();
        QuaternionElement::new([s, z.clone(), z.clone(), z])
    }

    pub fn rational(&self, r: Rat) -> QuaternionElement<S> {
        self.scalar(self.a.lift(r))
    }

    pub fn zero(&self) -> QuaternionElement<S> {
        self.rational(Rat::zero())
    }

    pub fn one(&self) -> QuaternionElement<S> {
        self.rational(Rat::one())
    }

    /// The basis vector of index 0..4 (1, i, j, k).
    pub fn basis(&self, t: usize) -> QuaternionElement<S> {
        let z = self.a.zero_like();
        let mut c = [z.clone(), z.clone(), z.clone(), z];
        c[t] = self.a.lift(Rat::one());
        QuaternionElement::new(c)
    }

    pub fn i(&self) -> QuaternionElement<S> {
        self.basis(1)
    }

    pub fn j(&self) -> QuaternionElement<S> {
        self.basis(2)
    }

    pub fn k(&self) -> QuaternionElement<S> {
        self.basis(3)
    }

    pub fn mul(&self, x: &QuaternionElement<S>, y: &QuaternionElement<S>) -> QuaternionElement<S> {
        let (a, b) = (&self.a, &self.b);
        let ab = a.times(b);
        let [x0, x1, x2, x3] = &x.c;
        let [y0, y1, y2, y3] = &y.c;
        let c0 = x0.times(y0).plus(&a.times(&x1.times(y1))).plus(&b.times(&x2.times(y2))).minus(&ab.times(&x3.times(y3)));
        let c1 = x0.times(y1).plus(&x1.times(y0)).minus(&b.times(&x2.times(y3))).plus(&b.times(&x3.times(y2)));
        let c2 = x0.times(y2).plus(&x2.times(y0)).plus(&a.times(&x1.times(y3))).minus(&a.times(&x3.times(y1)));
        let c3 = x0.times(y3).plus(&x3.times(y0)).plus(&x1.times(y2)).minus(&x2.times(y1));
        QuaternionElement::new([c0, c1, c2, c3])
    }

    pub fn square(&self, x: &QuaternionElement<S>) -> QuaternionElement<S> {
        self.mul(x, x)
    }

    /// Nrd(x) = x₀² − a x₁² − b x₂² + ab x₃².
    pub fn nrd(&self, x: &QuaternionElement<S>) -> S {
        let (a, b) = (&self.a, &self.b);
        let [x0, x1, x2, x3] = &x.c;
        x0.times(x0).minus(&a.times(&x1.times(x1))).minus(&b.times(&x2.times(x2))).plus(&a.times(b).times(&x3.times(x3)))
    }

    pub fn canonical_involution(&self, x: &QuaternionElement<S>) -> QuaternionElement<S> {
        x.conj()
    }

    pub fn inv(&self, x: &QuaternionElement<S>) -> Result<QuaternionElement<S>> {
        let n = self.nrd(x).inverse().map_err(|_| Error::NotInvertible(x.to_string()))?;
        Ok(x.conj().scale(&n))
    }

    /// Whether `xy = yx`.
    pub fn commute(&self, x: &QuaternionElement<S>, y: &QuaternionElement<S>) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }
}

impl QuaternionAlgebra<Rat> {
    pub fn from_ints(a: i64, b: i64) -> Result<QuaternionAlgebra<Rat>> {
        QuaternionAlgebra::new(Rat::from(a), Rat::from(b))
    }

    /// Left multiplication by `x` as a 4×4 matrix on coordinates.
    pub fn left_matrix(&self, x: &QuaternionElement<Rat>) -> RatMatrix {
        let cols: Vec<Vec<Rat>> = (0..4).map(|t| self.mul(x, &self.basis(t)).c.to_vec()).collect();
        RatMatrix::from_columns(&cols)
    }

    /// The scalar value of a square of a pure element.
    pub fn pure_square(&self, x: &QuaternionElement<Rat>) -> Rat {
        debug_assert!(x.is_pure());
        -self.nrd(x)
    }

    pub fn ramification_set(&self) -> Result<RamificationSet> {
        ramification_set(&self.a, &self.b)
    }

    pub fn is_isomorphic(&self, other: &QuaternionAlgebra<Rat>) -> Result<bool> {
        Ok(self.ramification_set()? == other.ramification_set()?)
    }

    /// The `c` for which `p` and `q − cp` anticommute.
    pub fn anticommutation_shift(&self, p: &QuaternionElement<Rat>, q: &QuaternionElement<Rat>) -> Result<Rat> {
        debug_assert!(p.is_pure() && q.is_pure());
        let p2 = self.pure_square(p);
        if p2.is_zero() {
            return Err(Error::IsotropicEntry(p.to_string()));
        }
        if dependent(p, q) {
            return Err(Error::LinearlyDependent(format!("{q} is a multiple of {p}")));
        }
        let trd_pq = self.mul(p, q).trd();
        Ok(trd_pq / (Rat::from(2) * p2))
    }

    /// Coordinates of `r` in the basis p, q′, pq′ of the pure quaternions.
    pub fn rebase_pure(
        &self,
        r: &QuaternionElement<Rat>,
        p: &QuaternionElement<Rat>,
        q: &QuaternionElement<Rat>,
    ) -> Result<(Rat, Rat, Rat)> {
        let pq = self.mul(p, q);
        let cols: Vec<Vec<Rat>> = [p, q, &pq].iter().map(|v| v.c[1..].to_vec()).collect();
        let m = RatMatrix::from_columns(&cols);
        if m.rank() < 3 || !pq.is_pure() {
            return Err(Error::SingularBasis(format!("{p}, {q}, {pq}")));
        }
        let t = m.solve(&r.c[1..]).ok_or_else(|| Error::SingularBasis(r.to_string()))?;
        let [t1, t2, t3]: [Rat; 3] = t.try_into().expect("three coordinates");
        Ok((t1, t2, t3))
    }

    /// A nonzero pure `u` with `u² = 0`, searching integer (x₁, x₂) by height.
    pub fn split_point(&self) -> Result<QuaternionElement<Rat>> {
        self.split_point_within(SPLIT_POINT_BOUND)
    }

    pub fn split_point_within(&self, bound: u64) -> Result<QuaternionElement<Rat>> {
        if !self.ramification_set()?.is_empty() {
            return Err(Error::NotSplit);
        }
        // u = x₁i + x₂j + x₃k is isotropic iff ab·x₃² = a x₁² + b x₂²
        let ab = &self.a * &self.b;
        for h in 1..=bound as i64 {
            for x1 in signed_order(h) {
                for x2 in signed_order(h) {
                    if x1.abs().max(x2.abs()) != h {
                        continue;
                    }
                    let (r1, r2) = (Rat::from(x1), Rat::from(x2));
                    let rhs = (&self.a * &r1.square() + &self.b * &r2.square()) / &ab;
                    let Some(x3) = rational_sqrt(&rhs) else { continue };
                    return Ok(QuaternionElement::new([Rat::zero(), r1, r2, x3]));
                }
            }
        }
        Err(Error::SearchLimit(format!("no isotropic vector of height ≤ {bound} for ({}, {})", self.a, self.b)))
    }
}

pub const SPLIT_POINT_BOUND: u64 = 10_000;

/// 0, 1, −1, 2, −2, …, h, −h.
fn signed_order(h: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=h).flat_map(|v| [v, -v]))
}

/// Whether the pure elements `p ≠ 0` and `q` are proportional.
fn dependent(p: &QuaternionElement<Rat>, q: &QuaternionElement<Rat>) -> bool {
    let m = RatMatrix::from_columns(&[p.c.to_vec(), q.c.to_vec()]);
    m.rank() < 2
}

impl QuaternionAlgebra<EtaleElement> {
    /// Over a split base ℚ × ℚ, the two component algebras over ℚ.
    pub fn components(&self, base: &EtaleQuadratic) -> Option<(QuaternionAlgebra<Rat>, QuaternionAlgebra<Rat>)> {
        let (a1, a2) = base.components(&self.a)?;
        let (b1, b2) = base.components(&self.b)?;
        Some((QuaternionAlgebra { a: a1, b: b1 }, QuaternionAlgebra { a: a2, b: b2 }))
    }

    pub fn base(&self) -> EtaleQuadratic {
        EtaleQuadratic::new(self.a.e().clone()).expect("base was valid at construction")
    }

    pub fn is_over_field(&self) -> bool {
        self.base().shape() == &EtaleShape::Field
    }
}

/// The finite set of places where a quaternion algebra over ℚ ramifies.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RamificationSet {
    pub places: BTreeSet<Place>,
}

impl RamificationSet {
    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    /// Symmetric difference, i.e. the sum in the 2-torsion of the Brauer group.
    pub fn sum(&self, other: &RamificationSet) -> RamificationSet {
        RamificationSet { places: self.places.symmetric_difference(&other.places).cloned().collect() }
    }
}

impl fmt::Display for RamificationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.places.iter().map(Place::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl Serialize for RamificationSet {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> std::result::Result<Se::Ok, Se::Error> {
        serializer.collect_seq(self.places.iter().map(Place::to_string))
    }
}

impl<'de> Deserialize<'de> for RamificationSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<RamificationSet, D::Error> {
        let places = BTreeSet::<Place>::deserialize(deserializer)?;
        Ok(RamificationSet { places })
    }
}

/// The primes dividing the numerator or denominator of `r`.
pub(crate) fn primes_of(r: &Rat) -> Result<BTreeSet<BigInt>> {
    let mut out = BTreeSet::new();
    for n in [r.numer(), r.denom()] {
        if !n.is_zero() {
            out.extend(factor(n.magnitude())?.into_keys().map(BigInt::from));
        }
    }
    Ok(out)
}

/// { v : (a, b)_v = −1 }.
pub fn ramification_set(a: &Rat, b: &Rat) -> Result<RamificationSet> {
    let mut primes = primes_of(a)?;
    primes.extend(primes_of(b)?);
    primes.insert(BigInt::from(2));
    let mut places: BTreeSet<Place> = primes
        .into_iter()
        .map(Place::Prime)
        .filter(|v| hilbert_symbol(a, b, v) < 0)
        .collect();
    if hilbert_symbol(a, b, &Place::Infinite) < 0 {
        places.insert(Place::Infinite);
    }
    debug_assert!(places.len() % 2 == 0, "Hilbert reciprocity");
    Ok(RamificationSet { places })
}

pub fn quaternion_isomorphic(q1: &QuaternionAlgebra<Rat>, q2: &QuaternionAlgebra<Rat>) -> Result<bool> {
    q1.is_isomorphic(q2)
}
