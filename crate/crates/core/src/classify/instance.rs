//! Instances of every category, with encode/decode dispatch and the
//! isomorphism invariants used to compare an instance with its round trip.

use super::hermitian::{decode_hermitian, decode_skew, decode_skew_trivial_disc};
use super::pgo4::{decode_pgo4, pgo4_invariants, Pgo4Invariants};
use super::symplectic::{decode_c2, decompose_symplectic_deg4, form_class, FormClass};
use super::{
    decode_c1, encode_c1, encode_c2, encode_hermitian, encode_pgo4, encode_skew, encode_skew_trivial_disc, Category,
    Encoded, Pgo4Instance, Witness,
};
use crate::error::{Error, Result};
use crate::field::SquareClass;
use crate::forms::{diagonalize_form, disc_skew, involution_type, Epsilon, HermitianForm, InvolutionType};
use crate::quaternion::{QuaternionAlgebra, RamificationSet};
use crate::tensor::{self, LinearInvolution, StructureAlgebra};

#[derive(Clone, Debug)]
pub enum Instance {
    /// A hermitian (ε = +1) or skew-hermitian (ε = −1) form.
    Hermitian(HermitianForm),
    Pgo4(Pgo4Instance),
    Symplectic { algebra: StructureAlgebra, involution: LinearInvolution },
    /// A quaternion algebra with its canonical involution.
    Canonical(QuaternionAlgebra),
}

impl Instance {
    /// The `n` a witness of this instance records.
    pub fn n(&self) -> usize {
        match self {
            Instance::Hermitian(h) => h.n(),
            Instance::Pgo4(_) | Instance::Symplectic { .. } => 2,
            Instance::Canonical(_) => 1,
        }
    }

    /// Whether the instance can be encoded in `category`.
    pub fn fits(&self, category: Category) -> bool {
        matches!(
            (self, category),
            (Instance::Hermitian(h), Category::QhPlus) if h.epsilon() == Epsilon::Plus
        ) || matches!(
            (self, category),
            (Instance::Hermitian(h), Category::QhMinus | Category::QhMinusDisc1) if h.epsilon() == Epsilon::Minus
        ) || matches!(
            (self, category),
            (Instance::Pgo4(_), Category::A12) | (Instance::Symplectic { .. }, Category::C2) | (Instance::Canonical(_), Category::C1)
        )
    }
}

pub fn encode(category: Category, x: &Instance, seed: u64) -> Result<Encoded> {
    if !x.fits(category) {
        return Err(Error::ShapeMismatch(format!("instance does not belong to {category}")));
    }
    let enc = match x {
        Instance::Hermitian(h) => match category {
            Category::QhPlus => encode_hermitian(h, seed),
            Category::QhMinus => encode_skew(h, seed),
            _ => encode_skew_trivial_disc(h, seed),
        },
        Instance::Pgo4(p) => encode_pgo4(p, seed),
        Instance::Symplectic { algebra, involution } => encode_c2(algebra, involution, seed),
        Instance::Canonical(q) => Ok(encode_c1(q)),
    }?;
    debug_assert_eq!(enc.witness.params.len(), category.witness_len(x.n()));
    Ok(enc)
}

pub fn decode(w: &Witness) -> Result<Instance> {
    w.check_shape()?;
    Ok(match w.category {
        Category::QhPlus => Instance::Hermitian(decode_hermitian(w)?),
        Category::QhMinus => Instance::Hermitian(decode_skew(w)?),
        Category::QhMinusDisc1 => Instance::Hermitian(decode_skew_trivial_disc(w)?),
        Category::A12 => Instance::Pgo4(decode_pgo4(w)?),
        Category::C2 => {
            let (algebra, involution) = decode_c2(w)?;
            Instance::Symplectic { algebra, involution }
        }
        Category::C1 => Instance::Canonical(decode_c1(w)?),
    })
}

/// Isomorphism invariants of the algebra with involution an instance defines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariants {
    Hermitian { degree: usize, ramification: RamificationSet, kind: InvolutionType, disc: Option<SquareClass> },
    Pgo4(Pgo4Invariants),
    Symplectic { degree: usize, kind: InvolutionType, brauer: RamificationSet, form: FormClass },
    Canonical { ramification: RamificationSet },
}

pub fn invariants(x: &Instance) -> Result<Invariants> {
    match x {
        Instance::Hermitian(h) => {
            let disc = if h.epsilon() == Epsilon::Minus && h.n() % 2 == 1 {
                let d = if h.is_diagonal() { h.clone() } else { diagonalize_form(h, 0)?.form };
                Some(disc_skew(&d)?)
            } else {
                None
            };
            Ok(Invariants::Hermitian {
                degree: 2 * h.n(),
                ramification: h.algebra().ramification_set()?,
                kind: involution_type(h)?,
                disc,
            })
        }
        Instance::Pgo4(p) => Ok(Invariants::Pgo4(pgo4_invariants(p)?)),
        Instance::Symplectic { algebra, involution } => {
            let d = decompose_symplectic_deg4(algebra, involution, 0)?;
            Ok(Invariants::Symplectic {
                degree: algebra.degree().unwrap_or(0),
                kind: tensor::involution_type(algebra, involution)?,
                brauer: d.q_ramification()?.sum(&d.q_prime_ramification()?),
                form: form_class(algebra, involution)?,
            })
        }
        Instance::Canonical(q) => Ok(Invariants::Canonical { ramification: q.ramification_set()? }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Quat;
    use crate::rat::rat;

    fn skew3() -> Instance {
        let q = QuaternionAlgebra::from_ints(-1, -1).unwrap();
        let e = [Quat::from_ints([0, 1, 0, 0]), Quat::from_ints([0, 0, 1, 0]), Quat::from_ints([0, 0, 0, 1])];
        Instance::Hermitian(HermitianForm::diagonal(q, Epsilon::Minus, &e).unwrap())
    }

    #[test]
    fn dispatch_round_trip() {
        let x = skew3();
        for c in [Category::QhMinus, Category::QhMinusDisc1] {
            let w = encode(c, &x, 0).unwrap().witness;
            let back = decode(&w).unwrap();
            assert_eq!(invariants(&back).unwrap(), invariants(&x).unwrap());
        }
        assert_eq!(encode(Category::QhPlus, &x, 0).unwrap_err().name(), "SHAPE_MISMATCH");
    }

    #[test]
    fn decode_checks_shape() {
        let w = Witness::new(Category::C1, 1, vec![rat(1)]);
        assert_eq!(decode(&w).unwrap_err().name(), "WITNESS_INVALID");
        let w = Witness::new(Category::C1, 1, vec![rat(-1), rat(-1)]);
        assert!(matches!(decode(&w).unwrap(), Instance::Canonical(_)));
    }

    #[test]
    fn c1_presentation_change() {
        // (−2, −2) ≅ (−1, −1): the presentation changes, the ramification set does not
        let x = Instance::Canonical(QuaternionAlgebra::from_ints(-2, -2).unwrap());
        let w = encode(Category::C1, &x, 0).unwrap().witness;
        let y = Instance::Canonical(QuaternionAlgebra::from_ints(-1, -1).unwrap());
        assert_eq!(invariants(&decode(&w).unwrap()).unwrap(), invariants(&y).unwrap());
    }
}
