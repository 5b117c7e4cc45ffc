//! Quadratic étale algebras ℚ[t]/(t² − e).
//!
//! Elements are pairs `(x, y)` meaning `x + y√e`. When `e` is a square the
//! algebra is split, ℚ × ℚ via `√e ↦ (s, −s)` with `s > 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::square::rational_sqrt;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaleShape {
    Field,
    /// Carries the positive square root of `e`.
    Split { root: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleQuadratic {
    e: Rat,
    shape: EtaleShape,
}

impl EtaleQuadratic {
    pub fn new(e: Rat) -> Result<EtaleQuadratic> {
        if e.is_zero() {
            return Err(Error::InvalidAlgebra("e must be nonzero".into()));
        }
        let shape = match rational_sqrt(&e) {
            Some(root) => EtaleShape::Split { root },
            None => EtaleShape::Field,
        };
        Ok(EtaleQuadratic { e, shape })
    }

    pub fn e(&self) -> &Rat {
        &self.e
    }

    pub fn shape(&self) -> &EtaleShape {
        &self.shape
    }

    pub fn is_field(&self) -> bool {
        self.shape == EtaleShape::Field
    }

    pub fn element(&self, x: Rat, y: Rat) -> EtaleElement {
        EtaleElement { x, y, e: self.e.clone() }
    }

    pub fn embed(&self, x: Rat) -> EtaleElement {
        self.element(x, Rat::zero())
    }

    pub fn sqrt_e(&self) -> EtaleElement {
        self.element(Rat::zero(), Rat::one())
    }

    pub fn add(&self, u: &EtaleElement, v: &EtaleElement) -> EtaleElement {
        u + v
    }

    pub fn mul(&self, u: &EtaleElement, v: &EtaleElement) -> EtaleElement {
        u * v
    }

    pub fn conj(&self, u: &EtaleElement) -> EtaleElement {
        u.conj()
    }

    pub fn norm(&self, u: &EtaleElement) -> Rat {
        u.norm()
    }

    pub fn inv(&self, u: &EtaleElement) -> Result<EtaleElement> {
        u.inv()
    }

    /// The two coordinates `(x + ys, x − ys)` of an element in split shape.
    pub fn components(&self, u: &EtaleElement) -> Option<(Rat, Rat)> {
        match &self.shape {
            EtaleShape::Field => None,
            EtaleShape::Split { root } => {
                let ys = &u.y * root;
                Some((&u.x + &ys, &u.x - &ys))
            }
        }
    }
}

/// An element `x + y√e`. The element carries `e` so it can be multiplied
/// without a reference to its algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EtaleElement {
    pub x: Rat,
    pub y: Rat,
    e: Rat,
}

impl EtaleElement {
    pub fn new(x: Rat, y: Rat, e: Rat) -> EtaleElement {
        EtaleElement { x, y, e }
    }

    pub fn e(&self) -> &Rat {
        &self.e
    }

    pub fn conj(&self) -> EtaleElement {
        EtaleElement { x: self.x.clone(), y: -&self.y, e: self.e.clone() }
    }

    pub fn norm(&self) -> Rat {
        self.x.square() - &self.e * self.y.square()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn scale(&self, r: &Rat) -> EtaleElement {
        EtaleElement { x: &self.x * r, y: &self.y * r, e: self.e.clone() }
    }

    /// Inverse `conj(u)/norm(u)`; in either shape `u` is a unit iff its norm is nonzero.
    pub fn inv(&self) -> Result<EtaleElement> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(self.conj().scale(&n.inv()))
    }

    fn check(&self, other: &EtaleElement) {
        assert_eq!(self.e, other.e, "elements of different étale algebras");
    }
}

impl fmt::Display for EtaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.x, self.y, self.e)
    }
}

impl fmt::Debug for EtaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &EtaleElement {
    type Output = EtaleElement;
    fn add(self, rhs: &EtaleElement) -> EtaleElement {
        self.check(rhs);
        EtaleElement { x: &self.x + &rhs.x, y: &self.y + &rhs.y, e: self.e.clone() }
    }
}

impl Sub for &EtaleElement {
    type Output = EtaleElement;
    fn sub(self, rhs: &EtaleElement) -> EtaleElement {
        self.check(rhs);
        EtaleElement { x: &self.x - &rhs.x, y: &self.y - &rhs.y, e: self.e.clone() }
    }
}

impl Mul for &EtaleElement {
    type Output = EtaleElement;
    fn mul(self, rhs: &EtaleElement) -> EtaleElement {
        self.check(rhs);
        EtaleElement {
            x: &self.x * &rhs.x + &self.e * (&self.y * &rhs.y),
            y: &self.x * &rhs.y + &self.y * &rhs.x,
            e: self.e.clone(),
        }
    }
}

impl Neg for &EtaleElement {
    type Output = EtaleElement;
    fn neg(self) -> EtaleElement {
        EtaleElement { x: -&self.x, y: -&self.y, e: self.e.clone() }
    }
}
