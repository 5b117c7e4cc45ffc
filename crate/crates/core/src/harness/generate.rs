//! Seeded random instances of every category.
//!
//! Forms are built diagonal and then moved by a random unitriangular
//! congruence, so encoders see non-diagonal Gram matrices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{Category, Instance, Pgo4Instance};
use crate::error::Result;
use crate::field::{rational_sqrt, EtaleElement};
use crate::forms::{Epsilon, HermitianForm, QuatMatrix};
use crate::quaternion::{QuaternionAlgebra, QuaternionElement};
use crate::rat::Rat;
use crate::tensor::{tensor_with_involutions, LinearInvolution, StructureAlgebra};

type Quat = QuaternionElement<Rat>;

pub const DEFAULT_HEIGHT: i64 = 20;

/// Bound on the coordinates of the off-diagonal congruence entries.
const CONGRUENCE_HEIGHT: i64 = 2;

fn nonzero(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    loop {
        let v = rng.gen_range(-h..=h);
        if v != 0 {
            return v;
        }
    }
}

fn nonzero_rat(rng: &mut ChaCha8Rng, h: i64) -> Rat {
    Rat::new(nonzero(rng, h), rng.gen_range(1..=h.clamp(1, 4)))
}

fn algebra(rng: &mut ChaCha8Rng, h: i64) -> QuaternionAlgebra {
    QuaternionAlgebra::new(Rat::from(nonzero(rng, h)), Rat::from(nonzero(rng, h))).expect("nonzero slots")
}

fn pure(rng: &mut ChaCha8Rng, q: &QuaternionAlgebra, h: i64) -> Quat {
    loop {
        let x = Quat::from_ints([0, rng.gen_range(-h..=h), rng.gen_range(-h..=h), rng.gen_range(-h..=h)]);
        if !q.nrd(&x).is_zero() {
            return x;
        }
    }
}

fn small_quat(rng: &mut ChaCha8Rng) -> Quat {
    Quat::from_ints(std::array::from_fn(|_| rng.gen_range(-CONGRUENCE_HEIGHT..=CONGRUENCE_HEIGHT)))
}

/// The form γ(P)ᵀ·D·P for a random unit upper triangular P.
fn congruence(rng: &mut ChaCha8Rng, q: QuaternionAlgebra, epsilon: Epsilon, entries: &[Quat]) -> Result<HermitianForm> {
    let n = entries.len();
    let mut p = QuatMatrix::identity(n);
    for k in 0..n {
        for l in k + 1..n {
            if rng.gen_bool(0.5) {
                p.set(k, l, small_quat(rng));
            }
        }
    }
    HermitianForm::diagonal(q, epsilon, entries)?.transform(&p)
}

/// p, q′, pq′ followed by pairs (u, λ·vuγ(v)); the reduced norms multiply to a
/// square, so the discriminant is trivial.
fn trivial_disc_entries(rng: &mut ChaCha8Rng, q: &QuaternionAlgebra, n: usize, h: i64) -> Vec<Quat> {
    loop {
        let p = pure(rng, q, h);
        let raw = pure(rng, q, h);
        let Ok(c) = q.anticommutation_shift(&p, &raw) else { continue };
        let qp = &raw - &p.scale_rat(&c);
        let pq = q.mul(&p, &qp);
        if q.nrd(&qp).is_zero() {
            continue;
        }
        let mut out = vec![p, qp, pq];
        while out.len() < n {
            let u = pure(rng, q, h);
            let v = loop {
                let v = small_quat(rng);
                if !q.nrd(&v).is_zero() {
                    break v;
                }
            };
            let conj = q.mul(&q.mul(&v, &u), &q.canonical_involution(&v));
            out.push(u);
            out.push(conj.scale_rat(&nonzero_rat(rng, h)));
        }
        out.shuffle(rng);
        return out;
    }
}

fn etale_slot(rng: &mut ChaCha8Rng, e: &Rat, h: i64, rational: bool) -> EtaleElement {
    let y = if rational { Rat::zero() } else { Rat::from(nonzero(rng, h)) };
    loop {
        let x = EtaleElement::new(Rat::from(rng.gen_range(-h..=h)), y.clone(), e.clone());
        if !x.norm().is_zero() {
            return x;
        }
    }
}

/// A random instance of `category` with coefficients bounded by `height`.
pub fn generate(category: Category, n: usize, seed: u64, height: i64) -> Result<Instance> {
    category.check_n(n)?;
    let h = height.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    Ok(match category {
        Category::QhPlus => {
            let q = algebra(rng, h);
            let entries: Vec<Quat> = (0..n).map(|_| Quat::scalar(nonzero_rat(rng, h))).collect();
            Instance::Hermitian(congruence(rng, q, Epsilon::Plus, &entries)?)
        }
        Category::QhMinus => {
            let q = algebra(rng, h);
            let entries: Vec<Quat> = (0..n).map(|_| pure(rng, &q, h)).collect();
            Instance::Hermitian(congruence(rng, q, Epsilon::Minus, &entries)?)
        }
        Category::QhMinusDisc1 => {
            let q = algebra(rng, h);
            let entries = trivial_disc_entries(rng, &q, n, h);
            Instance::Hermitian(congruence(rng, q, Epsilon::Minus, &entries)?)
        }
        Category::A12 => {
            let e = Rat::from(nonzero(rng, h));
            if rational_sqrt(&e).is_some() {
                Instance::Pgo4(Pgo4Instance::Split(algebra(rng, h), algebra(rng, h)))
            } else {
                let mode = rng.gen_range(0..4);
                let a = etale_slot(rng, &e, h, mode == 1 || mode == 3);
                let b = etale_slot(rng, &e, h, mode == 2 || mode == 3);
                Instance::Pgo4(Pgo4Instance::Field(QuaternionAlgebra::new(a, b)?))
            }
        }
        Category::C2 => {
            let left = StructureAlgebra::from_quaternion(&algebra(rng, h));
            let right = StructureAlgebra::from_quaternion(&algebra(rng, h));
            let sigma = LinearInvolution::orthogonal_standard(&left)?;
            let gamma = LinearInvolution::canonical(&right)?;
            let (algebra, involution) = tensor_with_involutions(&left, &sigma, &right, &gamma)?;
            Instance::Symplectic { algebra, involution }
        }
        Category::C1 => Instance::Canonical(algebra(rng, h)),
    })
}
