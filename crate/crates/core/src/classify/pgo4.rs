//! Quaternion algebras over quadratic étale algebras, as points of
//! e(a² − b²e)(c² − e) ≠ 0.
//!
//! Over a field L = ℚ(√e) the point (a, b, c, e) is (a + b√e, c + √e); over
//! ℚ × ℚ it is the pair (a, b) × (c, √e).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse_sign, sign_text, Category, Certificate, Encoded, Witness};
use crate::error::{Error, Result};
use crate::field::quadratic_local::{QuadRamification, QuadraticField};
use crate::field::{rational_sqrt, square_class, EtaleElement, EtaleQuadratic};
use crate::quaternion::{QuaternionAlgebra, QuaternionElement};
use crate::rat::Rat;

type EQuat = QuaternionElement<EtaleElement>;

const SPLIT_DETERMINISTIC: i64 = 64;
const SPLIT_RANDOM: usize = 64;

/// An algebra of type A₁²: a quaternion algebra over a quadratic field, or a
/// pair of quaternion algebras over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub enum Pgo4Instance {
    Field(QuaternionAlgebra<EtaleElement>),
    Split(QuaternionAlgebra, QuaternionAlgebra),
}

impl Pgo4Instance {
    /// A quaternion algebra over any étale quadratic algebra; over ℚ × ℚ it
    /// becomes its pair of components.
    pub fn from_etale(q: QuaternionAlgebra<EtaleElement>) -> Result<Pgo4Instance> {
        let base = q.base();
        if base.is_field() {
            return Ok(Pgo4Instance::Field(q));
        }
        let (q1, q2) = q
            .components(&base)
            .ok_or_else(|| Error::InvalidAlgebra("split base without components".into()))?;
        Ok(Pgo4Instance::Split(q1, q2))
    }
}

/// Whether the variety inequations hold at (a, b, c, e).
pub fn on_variety(a: &Rat, b: &Rat, c: &Rat, e: &Rat) -> bool {
    !e.is_zero() && !(a.square() - b.square() * e).is_zero() && !(c.square() - e).is_zero()
}

pub fn encode_pgo4(x: &Pgo4Instance, seed: u64) -> Result<Encoded> {
    match x {
        Pgo4Instance::Field(q) => encode_field(q, seed),
        Pgo4Instance::Split(q1, q2) => encode_split(q1, q2, seed),
    }
}

fn ramification(q: &QuaternionAlgebra<EtaleElement>) -> Result<QuadRamification> {
    QuadraticField::new(q.a().e())?.ramification(q.a(), q.b())
}

fn encode_field(q: &QuaternionAlgebra<EtaleElement>, seed: u64) -> Result<Encoded> {
    let e = q.a().e().clone();
    let base = EtaleQuadratic::new(e.clone())?;
    if !base.is_field() {
        return Err(Error::ShapeMismatch(format!("e = {e} is a square")));
    }
    for s in [q.a(), q.b()] {
        if s.norm().is_zero() {
            return Err(Error::NotInvertible(s.to_string()));
        }
    }
    let (alpha, beta) = (q.a().clone(), q.b().clone());
    let (i, j) = (q.i(), q.j());
    // (α′, β′) over L with generators I, J of q satisfying I² = α′, J² = β′
    let (alpha2, beta2, gen_i, gen_j, step) = if !beta.y.is_zero() {
        (alpha, beta, i, j, "none")
    } else if !alpha.y.is_zero() {
        (beta, alpha, j, i, "swap")
    } else {
        // β ↦ β·Nrd(x) for x = (1 + √e) + i in L(√α)
        let one_root = base.element(Rat::one(), Rat::one());
        let x = EQuat::new([one_root.clone(), base.embed(Rat::one()), base.embed(Rat::zero()), base.embed(Rat::zero())]);
        let n = &(&one_root * &one_root) - &alpha;
        let gen_j = q.mul(&x, &j);
        (alpha, &beta * &n, i, gen_j, "norm")
    };
    let d = beta2.y.clone();
    let e2 = &e * &d.square();
    let params = vec![alpha2.x.clone(), &alpha2.y / &d, beta2.x.clone(), e2.clone()];

    let mut cert = Certificate::new(seed);
    // φ: ℚ(√e′) → L, √e′ ↦ d√e
    let phi = |x: &Rat, y: &Rat| base.element(x.clone(), y * &d);
    let phi_a = phi(&params[0], &params[1]);
    let phi_b = phi(&params[2], &Rat::one());
    cert.push_eq("I_squared", &q.square(&gen_i), &q.scalar(phi_a.clone()));
    cert.push_eq("J_squared", &q.square(&gen_j), &q.scalar(phi_b.clone()));
    let anti = &q.mul(&gen_i, &gen_j) + &q.mul(&gen_j, &gen_i);
    cert.push_eq("anticommutation", &anti, &q.zero());
    cert.push("variety", format!("{params:?}"), "e(a² − b²e)(c² − e) ≠ 0", on_variety(&params[0], &params[1], &params[2], &e2));
    let before = ramification(q)?;
    let after = ramification(&QuaternionAlgebra::new(
        EtaleElement::new(params[0].clone(), params[1].clone(), e2.clone()),
        EtaleElement::new(params[2].clone(), Rat::one(), e2.clone()),
    )?)?;
    cert.push("ramification", &before, &after, before.equivalent(&after));
    let witness = Witness::new(Category::A12, 2, params).with_meta("branch", "field").with_meta("normalization", step);
    Ok(Encoded { witness, certificate: cert.into_result()? })
}

fn encode_split(q1: &QuaternionAlgebra, q2: &QuaternionAlgebra, seed: u64) -> Result<Encoded> {
    let (a, b) = (q1.a().clone(), q1.b().clone());
    let (u, v) = (q2.a().clone(), q2.b().clone());
    let fits = |t: &Rat| {
        let s = &v * &t.square();
        on_variety(&a, &b, &u, &s.square())
    };
    let t = (1..=SPLIT_DETERMINISTIC)
        .map(Rat::from_int)
        .find(|t| fits(t))
        .or_else(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..SPLIT_RANDOM)
                .map(|_| Rat::new(rng.gen_range(1..=1000), rng.gen_range(1..=1000)))
                .find(|t| fits(t))
        })
        .ok_or_else(|| Error::VarietyConstraintUnsatisfied(format!("no rescaling of ({u}, {v}) found with seed {seed}")))?;
    let s = &v * &t.square();
    let e = s.square();
    let params = vec![a.clone(), b.clone(), u.clone(), e.clone()];

    let mut cert = Certificate::new(seed);
    cert.push_eq("first_factor", &q1.ramification_set()?, &crate::quaternion::ramification_set(&a, &b)?);
    // (u, v) ≅ (u, v t²) by J = t·j
    let gen_j = q2.j().scale_rat(&t);
    cert.push_eq("J_squared", &q2.square(&gen_j), &q2.scalar(s.clone()));
    cert.push_eq("sqrt_e", &s.square(), &e);
    cert.push("variety", format!("{params:?}"), "e(a² − b²e)(c² − e) ≠ 0", on_variety(&a, &b, &u, &e));
    let witness = Witness::new(Category::A12, 2, params)
        .with_meta("branch", "split")
        .with_meta("sqrt_sign", sign_text(&s));
    Ok(Encoded { witness, certificate: cert.into_result()? })
}

pub(crate) fn decode_pgo4(w: &Witness) -> Result<Pgo4Instance> {
    let [a, b, c, e] = [&w.params[0], &w.params[1], &w.params[2], &w.params[3]];
    if !on_variety(a, b, c, e) {
        return Err(Error::WitnessInvalid("e(a² − b²e)(c² − e) vanishes".into()));
    }
    match rational_sqrt(e) {
        None => Ok(Pgo4Instance::Field(QuaternionAlgebra::new(
            EtaleElement::new(a.clone(), b.clone(), e.clone()),
            EtaleElement::new(c.clone(), Rat::one(), e.clone()),
        )?)),
        Some(root) => {
            let sign = match w.meta("sqrt_sign") {
                None => 1,
                s => parse_sign(s, "sqrt_sign")?,
            };
            if sign == 0 {
                return Err(Error::WitnessInvalid("sqrt_sign is 0".into()));
            }
            let s = if sign > 0 { root } else { -root };
            let q1 = QuaternionAlgebra::new(a.clone(), b.clone()).map_err(|e| Error::WitnessInvalid(e.to_string()))?;
            let q2 = QuaternionAlgebra::new(c.clone(), s).map_err(|e| Error::WitnessInvalid(e.to_string()))?;
            Ok(Pgo4Instance::Split(q1, q2))
        }
    }
}

/// Invariants of an A₁² algebra: over a field, the square class of e and the
/// ramification up to conjugation; over ℚ × ℚ, the unordered pair of
/// ramification sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pgo4Invariants {
    Field { class: String, ramification: String },
    Split(Vec<String>),
}

pub fn pgo4_invariants(x: &Pgo4Instance) -> Result<Pgo4Invariants> {
    match x {
        Pgo4Instance::Field(q) => Ok(Pgo4Invariants::Field {
            class: square_class(q.a().e())?.to_string(),
            ramification: ramification(q)?.canonical().to_string(),
        }),
        Pgo4Instance::Split(q1, q2) => {
            let mut v = vec![q1.ramification_set()?.to_string(), q2.ramification_set()?.to_string()];
            v.sort();
            Ok(Pgo4Invariants::Split(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn field(a: (i64, i64), b: (i64, i64), e: i64) -> Pgo4Instance {
        let el = |(x, y): (i64, i64)| EtaleElement::new(rat(x), rat(y), rat(e));
        Pgo4Instance::from_etale(QuaternionAlgebra::new(el(a), el(b)).unwrap()).unwrap()
    }

    fn params(w: &Witness) -> Vec<Rat> {
        w.params.clone()
    }

    #[test]
    fn field_examples() {
        let w = encode_pgo4(&field((2, 1), (1, 1), 5), 0).unwrap().witness;
        assert_eq!(params(&w), vec![rat(2), rat(1), rat(1), rat(5)]);
        let w = encode_pgo4(&field((2, 1), (1, 2), 5), 0).unwrap().witness;
        assert_eq!(params(&w), vec![rat(2), rat((1, 2)), rat(1), rat(20)]);
        // 2 + (1/2)·2√5 = 2 + √5 and 1 + 2√5 under √20 ↦ 2√5
        let enc = encode_pgo4(&field((3, 0), (7, 0), 5), 0).unwrap();
        assert_eq!(params(&enc.witness), vec![rat(3), rat(0), rat(21), rat(980)]);
        assert_eq!(enc.witness.meta("normalization"), Some("norm"));
        // (3 + 2√5)·7 = 21 + 14√5, and 5·14² = 980
        assert_eq!(5 * 14 * 14, 980);
    }

    #[test]
    fn field_swap() {
        let enc = encode_pgo4(&field((2, 1), (3, 0), 7), 0).unwrap();
        assert_eq!(params(&enc.witness), vec![rat(3), rat(0), rat(2), rat(7)]);
        assert_eq!(enc.witness.meta("normalization"), Some("swap"));
    }

    #[test]
    fn field_round_trip() {
        for x in [field((2, 1), (1, 2), 5), field((3, 0), (7, 0), 5), field((-1, 3), (2, -5), -3), field((5, 0), (-2, 0), 2)] {
            let w = encode_pgo4(&x, 0).unwrap().witness;
            let back = decode_pgo4(&w).unwrap();
            assert_eq!(pgo4_invariants(&back).unwrap(), pgo4_invariants(&x).unwrap());
        }
    }

    #[test]
    fn split_pair() {
        let q1 = QuaternionAlgebra::from_ints(-1, -1).unwrap();
        let q2 = QuaternionAlgebra::from_ints(-1, -3).unwrap();
        let x = Pgo4Instance::Split(q1, q2);
        let w = encode_pgo4(&x, 0).unwrap().witness;
        assert_eq!(params(&w), vec![rat(-1), rat(-1), rat(-1), rat(9)]);
        assert_eq!(w.meta("sqrt_sign"), Some("-1"));
        let back = decode_pgo4(&w).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn split_needs_rescaling() {
        // t = 1 gives c² − e = 4 − 4 = 0
        let x = Pgo4Instance::Split(QuaternionAlgebra::from_ints(3, 5).unwrap(), QuaternionAlgebra::from_ints(2, 2).unwrap());
        let w = encode_pgo4(&x, 0).unwrap().witness;
        assert_eq!(params(&w), vec![rat(3), rat(5), rat(2), rat(64)]);
        let back = decode_pgo4(&w).unwrap();
        assert_eq!(pgo4_invariants(&back).unwrap(), pgo4_invariants(&x).unwrap());
    }

    #[test]
    fn split_base_becomes_pair() {
        let el = |x: i64, y: i64| EtaleElement::new(rat(x), rat(y), rat(4));
        let q = QuaternionAlgebra::new(el(1, 1), el(-1, 0)).unwrap();
        // √4 ↦ (2, −2): components (3, −1) and (−1, −1)
        match Pgo4Instance::from_etale(q).unwrap() {
            Pgo4Instance::Split(q1, q2) => {
                assert_eq!((q1.a().clone(), q1.b().clone()), (rat(3), rat(-1)));
                assert_eq!((q2.a().clone(), q2.b().clone()), (rat(-1), rat(-1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decode_rejects_off_variety() {
        let w = Witness::new(Category::A12, 2, vec![rat(1), rat(1), rat(1), rat(1)]);
        assert_eq!(decode_pgo4(&w).unwrap_err().name(), "WITNESS_INVALID");
        let w = Witness::new(Category::A12, 2, vec![rat(2), rat(1), rat(1), rat(0)]);
        assert_eq!(decode_pgo4(&w).unwrap_err().name(), "WITNESS_INVALID");
        // the split reading needs b ≠ 0
        let w = Witness::new(Category::A12, 2, vec![rat(2), rat(0), rat(1), rat(4)]);
        assert_eq!(decode_pgo4(&w).unwrap_err().name(), "WITNESS_INVALID");
    }
}
