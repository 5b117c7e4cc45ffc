//! Degree-4 algebras with symplectic involution.
//!
//! (A, σ) is split as (Q, σ|_Q) ⊗ (Q′, γ) with Q = ⟨i₀, j⟩, σ(i₀) = i₀,
//! σ(j) = j, i₀j = −ji₀ and Q′ the centralizer of Q. The witness is
//! (i₀², j², z, w) with Q′ = (z, w); when Q splits it is (1, y, z, w) for
//! (M₂(ℚ), ad_⟨1,y⟩) ⊗ (Q′, γ).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Category, Certificate, Encoded, Witness};
use crate::error::{Error, Result};
use crate::field::factor::factor;
use crate::field::{hilbert_symbol, square_class, Place, SquareClass};
use crate::forms::InvolutionType;
use crate::linalg::{diagonalize_symmetric, RatMatrix};
use crate::quaternion::{ramification_set, QuaternionAlgebra, RamificationSet};
use crate::rat::Rat;
use crate::tensor::{
    format_element, involution_type, sym_space, tensor_with_involutions, Element, LinearInvolution,
    StructureAlgebra, Subalgebra,
};

const RANDOM_COMBOS: usize = 256;
const MAX_I_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Division,
    Split,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Division => "division",
            Branch::Split => "split",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub i0: Element,
    pub j: Element,
    /// i₀² and j².
    pub x: Rat,
    pub y: Rat,
    pub q_prime: Subalgebra,
    /// Anticommuting pure generators of Q′ and their squares.
    pub z_gen: Element,
    pub w_gen: Element,
    pub z: Rat,
    pub w: Rat,
    pub branch: Branch,
    /// In the split branch, a nonzero u ∈ Q with u² = 0.
    pub zero_divisor: Option<Element>,
    pub certificate: Certificate,
}

impl Decomposition {
    pub fn q_ramification(&self) -> Result<RamificationSet> {
        ramification_set(&self.x, &self.y)
    }

    pub fn q_prime_ramification(&self) -> Result<RamificationSet> {
        ramification_set(&self.z, &self.w)
    }
}

fn combination(basis: &[Element], coeffs: &[Rat]) -> Element {
    let mut out = vec![Rat::zero(); basis[0].len()];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(b) {
            *o += &(v * c);
        }
    }
    out
}

/// Basis vectors, then sums and differences of pairs, then seeded random
/// integer combinations.
fn candidates<'a>(basis: &'a [Element], rng: &'a mut ChaCha8Rng) -> impl Iterator<Item = Element> + 'a {
    let n = basis.len();
    let unit = move |k: usize, s: i64| -> Vec<Rat> { (0..n).map(|t| Rat::from(if t == k { s } else { 0 })).collect() };
    let singles = (0..n).map(move |k| basis[k].clone());
    let pairs = (0..n).flat_map(move |k| {
        (k + 1..n).flat_map(move |l| {
            [1i64, -1].into_iter().map(move |s| {
                let mut c = unit(k, 1);
                c[l] = Rat::from(s);
                combination(basis, &c)
            })
        })
    });
    let random = (0..RANDOM_COMBOS).map(move |_| {
        let c: Vec<Rat> = (0..n).map(|_| Rat::from(rng.gen_range(-3i64..=3))).collect();
        combination(basis, &c)
    });
    singles.chain(pairs).chain(random)
}

fn anticommutator(alg: &StructureAlgebra, x: &[Rat], y: &[Rat]) -> Element {
    alg.add(&alg.mul(x, y), &alg.mul(y, x))
}

fn commutator(alg: &StructureAlgebra, x: &[Rat], y: &[Rat]) -> Element {
    alg.sub(&alg.mul(x, y), &alg.mul(y, x))
}

/// A symmetric i₀ with i₀² ∈ ℚ×, i₀ ∉ ℚ.
fn quadratic_symmetric(alg: &StructureAlgebra, x: &[Rat]) -> Option<(Element, Rat)> {
    if alg.as_scalar(x).is_some() {
        return None;
    }
    let poly = alg.min_poly(x);
    if poly.len() != 2 {
        return None;
    }
    let (c0, c1) = (&poly[0], &poly[1]);
    if (c1.square() + Rat::from(4) * c0).is_zero() {
        return None;
    }
    let half = c1 / &Rat::from(2);
    let i0 = alg.sub(x, &alg.scalar(&half));
    let sq = alg.as_scalar(&alg.mul(&i0, &i0))?;
    Some((i0, sq))
}

/// An invertible j with σ(j) = j, j·i₀ = −i₀·j and j² ∈ ℚ×.
fn find_j(alg: &StructureAlgebra, sigma: &LinearInvolution, i0: &[Rat], seed: u64) -> Option<(Element, Rat)> {
    let dim = alg.dim();
    let system = sigma
        .matrix()
        .sub(&RatMatrix::identity(dim))
        .vstack(&alg.left_matrix(i0).add(&alg.right_matrix(i0)));
    let kernel = system.kernel();
    if kernel.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a);
    let found = candidates(&kernel, &mut rng).find_map(|j| {
        let sq = alg.as_scalar(&alg.mul(&j, &j))?;
        (!sq.is_zero()).then_some((j, sq))
    });
    found
}

/// Pure generators P, W of a quaternion subalgebra with PW = −WP.
fn pure_generators(alg: &StructureAlgebra, sub: &Subalgebra) -> Result<(Element, Element, Rat, Rat)> {
    let square = |v: &[Rat]| alg.as_scalar(&alg.mul(v, v));
    let mut pure: Vec<Element> = Vec::new();
    for (t, b) in sub.basis.iter().enumerate() {
        let mut e = vec![Rat::zero(); sub.basis.len()];
        e[t] = Rat::one();
        let trd = sub.algebra.reduced_trace(&e);
        let v = alg.sub(b, &alg.scalar(&(trd / Rat::from(2))));
        let mut trial = pure.clone();
        trial.push(v.clone());
        if RatMatrix::from_columns(&trial).rank() == trial.len() {
            pure = trial;
        }
    }
    if pure.len() != 3 {
        return Err(Error::InvalidAlgebra(format!("centralizer has {} pure directions", pure.len())));
    }
    let pairs = [(0, 1), (0, 2), (1, 2)].map(|(k, l)| alg.add(&pure[k], &pure[l]));
    let (p, p2) = pure
        .iter()
        .chain(pairs.iter())
        .find_map(|v| square(v).filter(|s| !s.is_zero()).map(|s| (v.clone(), s)))
        .ok_or_else(|| Error::InvalidAlgebra("centralizer has no anisotropic pure element".into()))?;
    let mut comp: Vec<Element> = Vec::new();
    for v in &pure {
        let s = alg.as_scalar(&anticommutator(alg, &p, v)).ok_or_else(|| Error::InvalidAlgebra("pv + vp is not scalar".into()))?;
        let c = s / (Rat::from(2) * &p2);
        let u = alg.sub(v, &alg.scale(&p, &c));
        let mut trial = comp.clone();
        trial.push(u);
        if trial.iter().any(|x| x.iter().any(|r| !r.is_zero())) && RatMatrix::from_columns(&trial).rank() == trial.len() {
            comp = trial;
        }
    }
    if comp.len() != 2 {
        return Err(Error::InvalidAlgebra("degenerate norm form on the centralizer".into()));
    }
    let sum = alg.add(&comp[0], &comp[1]);
    let (w, w2) = [comp[0].clone(), comp[1].clone(), sum]
        .into_iter()
        .find_map(|v| square(&v).filter(|s| !s.is_zero()).map(|s| (v, s)))
        .ok_or_else(|| Error::InvalidAlgebra("degenerate norm form on the centralizer".into()))?;
    Ok((p, w, p2, w2))
}

/// (A, σ) ≃ (Q, σ|_Q) ⊗ (Q′, γ), found by searching symmetric quadratic
/// elements and solving for j.
pub fn decompose_symplectic_deg4(alg: &StructureAlgebra, sigma: &LinearInvolution, seed: u64) -> Result<Decomposition> {
    if alg.dim() != 16 {
        return Err(Error::ShapeMismatch(format!("dimension {} is not 16", alg.dim())));
    }
    if involution_type(alg, sigma)? != InvolutionType::Symplectic {
        return Err(Error::NotSymplectic);
    }
    let sym = sym_space(sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    let mut found = None;
    for cand in candidates(&sym, &mut rng) {
        let Some((i0, x)) = quadratic_symmetric(alg, &cand) else { continue };
        attempts += 1;
        if let Some((j, y)) = find_j(alg, sigma, &i0, seed.wrapping_add(attempts as u64)) {
            found = Some((i0, x, j, y));
            break;
        }
        if attempts >= MAX_I_ATTEMPTS {
            break;
        }
    }
    let (i0, x, j, y) =
        found.ok_or_else(|| Error::SearchLimit(format!("no symmetric quadratic i with a matching j (seed {seed})")))?;
    let k = alg.mul(&i0, &j);
    let zero = alg.zero();

    let mut cert = Certificate::new(seed);
    let show = |v: &[Rat]| format_element(v);
    cert.push("sigma_i0", show(&sigma.apply(&i0)), show(&i0), sigma.apply(&i0) == i0);
    cert.push("sigma_j", show(&sigma.apply(&j)), show(&j), sigma.apply(&j) == j);
    let minus_k = alg.scale(&k, &Rat::from(-1));
    cert.push("sigma_i0j", show(&sigma.apply(&k)), show(&minus_k), sigma.apply(&k) == minus_k);
    let anti = anticommutator(alg, &i0, &j);
    cert.push("anticommutation", show(&anti), show(&zero), anti == zero);

    let q_prime = alg.centralizer(&[i0.clone(), j.clone()]);
    if q_prime.basis.len() != 4 {
        return Err(Error::InvalidAlgebra(format!("centralizer of Q has dimension {}", q_prime.basis.len())));
    }
    let gens = [&i0, &j, &k];
    let commuting =
        q_prime.basis.iter().flat_map(|b| gens.iter().map(move |g| (b, *g))).filter(|(b, g)| commutator(alg, b, g) == zero).count();
    cert.push("centralizing", commuting, 12, commuting == 12);
    let mut gamma_ok = 0;
    for (t, b) in q_prime.basis.iter().enumerate() {
        let mut e = vec![Rat::zero(); 4];
        e[t] = Rat::one();
        let trd = q_prime.algebra.reduced_trace(&e);
        if sigma.apply(b) == alg.sub(&alg.scalar(&trd), b) {
            gamma_ok += 1;
        }
    }
    cert.push("sigma_on_centralizer", gamma_ok, 4, gamma_ok == 4);

    let (z_gen, w_gen, z, w) = pure_generators(alg, &q_prime)?;
    for (name, g, s) in [("z_square", &z_gen, &z), ("w_square", &w_gen, &w)] {
        let (lhs, rhs) = (alg.mul(g, g), alg.scalar(s));
        cert.push(name, show(&lhs), show(&rhs), lhs == rhs);
    }
    let zw = anticommutator(alg, &z_gen, &w_gen);
    cert.push("zw_anticommute", show(&zw), show(&zero), zw == zero);

    let ram = ramification_set(&x, &y)?;
    let (branch, zero_divisor) = if ram.is_empty() {
        let u = QuaternionAlgebra::new(x.clone(), y.clone())?.split_point()?;
        let image = combination(&[alg.unit().clone(), i0.clone(), j.clone(), k.clone()], &u.c);
        let sq = alg.mul(&image, &image);
        cert.push("zero_divisor", show(&sq), show(&zero), sq == zero && image != zero);
        (Branch::Split, Some(image))
    } else {
        (Branch::Division, None)
    };
    Ok(Decomposition { i0, j, x, y, q_prime, z_gen, w_gen, z, w, branch, zero_divisor, certificate: cert })
}

pub fn encode_c2(alg: &StructureAlgebra, sigma: &LinearInvolution, seed: u64) -> Result<Encoded> {
    let d = decompose_symplectic_deg4(alg, sigma, seed)?;
    let params = match d.branch {
        Branch::Division => vec![d.x.clone(), d.y.clone(), d.z.clone(), d.w.clone()],
        // ((x, y), σ|_Q) ≅ (M₂, ad_⟨1, xy⟩): both have discriminant −xy
        Branch::Split => vec![Rat::one(), square_class(&(&d.x * &d.y))?.to_rat(), d.z.clone(), d.w.clone()],
    };
    let mut cert = d.certificate;
    let witness = Witness::new(Category::C2, 2, params).with_meta("branch", d.branch);
    let (back, tau) = decode_c2(&witness)?;
    let (before, after) = (form_class(alg, sigma)?, form_class(&back, &tau)?);
    cert.push("square_form", &before, &after, before == after);
    Ok(Encoded { witness, certificate: cert.into_result()? })
}

/// ((x, y), σ₀) ⊗ ((z, w), γ), or (M₂, ad_⟨1,y⟩) ⊗ ((z, w), γ) when x = 1.
pub fn decode_c2(w: &Witness) -> Result<(StructureAlgebra, LinearInvolution)> {
    if w.params.iter().any(Rat::is_zero) {
        return Err(Error::WitnessInvalid("C2 parameters must be nonzero".into()));
    }
    let [x, y, z, wv] = [&w.params[0], &w.params[1], &w.params[2], &w.params[3]];
    let right = StructureAlgebra::from_quaternion(&QuaternionAlgebra::new(z.clone(), wv.clone())?);
    let gamma = LinearInvolution::canonical(&right)?;
    let (left, sigma) = if x.is_one() {
        let m2 = StructureAlgebra::matrix_algebra_m2();
        let ad = LinearInvolution::adjoint_m2(&m2, y)?;
        (m2, ad)
    } else {
        let q = StructureAlgebra::from_quaternion(&QuaternionAlgebra::new(x.clone(), y.clone())?);
        let s = LinearInvolution::orthogonal_standard(&q)?;
        (q, s)
    };
    tensor_with_involutions(&left, &sigma, &right, &gamma)
}

/// The isometry class of a nondegenerate quadratic form over ℚ: dimension,
/// determinant, number of positive entries and the places with Hasse
/// invariant −1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClass {
    pub dim: usize,
    pub det: SquareClass,
    pub positive: usize,
    pub hasse: BTreeSet<Place>,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places: Vec<String> = self.hasse.iter().map(|p| p.to_string()).collect();
        write!(f, "dim {} det {} pos {} hasse {{{}}}", self.dim, self.det, self.positive, places.join(", "))
    }
}

pub fn diagonal_form_class(entries: &[Rat]) -> Result<FormClass> {
    if entries.iter().any(Rat::is_zero) {
        return Err(Error::DegenerateForm);
    }
    let mut primes: BTreeSet<BigInt> = BTreeSet::from([BigInt::from(2)]);
    for e in entries {
        for n in [e.numer(), e.denom()] {
            if !n.is_zero() {
                primes.extend(factor(n.magnitude())?.into_keys().map(BigInt::from));
            }
        }
    }
    let places = primes.into_iter().map(Place::Prime).chain(std::iter::once(Place::Infinite));
    let mut hasse = BTreeSet::new();
    for v in places {
        let mut s = 1i8;
        for a in 0..entries.len() {
            for b in a + 1..entries.len() {
                s *= hilbert_symbol(&entries[a], &entries[b], &v);
            }
        }
        if s < 0 {
            hasse.insert(v);
        }
    }
    Ok(FormClass {
        dim: entries.len(),
        det: square_class(&entries.iter().cloned().product())?,
        positive: entries.iter().filter(|e| e.signum() > 0).count(),
        hasse,
    })
}

/// The 5-dimensional form x ↦ x² on trace-zero symmetric elements.
pub fn form_class(alg: &StructureAlgebra, sigma: &LinearInvolution) -> Result<FormClass> {
    let mut basis: Vec<Element> = Vec::new();
    for s in sym_space(sigma) {
        let v = alg.sub(&s, &alg.scalar(&(alg.trace(&s) / Rat::from(16))));
        let mut trial = basis.clone();
        trial.push(v);
        if trial.last().unwrap().iter().any(|r| !r.is_zero()) && RatMatrix::from_columns(&trial).rank() == trial.len() {
            basis = trial;
        }
    }
    let n = basis.len();
    let mut gram = RatMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let s = alg.trace(&anticommutator(alg, &basis[a], &basis[b])) / Rat::from(32);
            gram[(a, b)] = s.clone();
            gram[(b, a)] = s;
        }
    }
    diagonal_form_class(&diagonalize_symmetric(&gram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn quat(a: i64, b: i64) -> StructureAlgebra {
        StructureAlgebra::from_quaternion(&QuaternionAlgebra::from_ints(a, b).unwrap())
    }

    fn product(x: i64, y: i64, z: i64, w: i64) -> (StructureAlgebra, LinearInvolution) {
        let q = quat(x, y);
        let s = LinearInvolution::orthogonal_standard(&q).unwrap();
        let r = quat(z, w);
        let g = LinearInvolution::canonical(&r).unwrap();
        tensor_with_involutions(&q, &s, &r, &g).unwrap()
    }

    #[test]
    fn round_trip_division() {
        let (alg, sigma) = product(-1, -1, -1, -3);
        let d = decompose_symplectic_deg4(&alg, &sigma, 0).unwrap();
        assert!(d.certificate.passed());
        assert_eq!(d.branch, Branch::Division);
        assert_eq!(d.q_ramification().unwrap(), ramification_set(&rat(-1), &rat(-1)).unwrap());
        assert_eq!(d.q_prime_ramification().unwrap(), ramification_set(&rat(-1), &rat(-3)).unwrap());
        let enc = encode_c2(&alg, &sigma, 0).unwrap();
        assert_eq!(enc.witness.params.len(), 4);
        let (back, tau) = decode_c2(&enc.witness).unwrap();
        assert_eq!(involution_type(&back, &tau).unwrap(), InvolutionType::Symplectic);
        assert_eq!(back.degree(), Some(4));
    }

    #[test]
    fn orthogonal_input_is_rejected() {
        let q = quat(-1, -1);
        let g = LinearInvolution::canonical(&q).unwrap();
        let r = quat(-1, -3);
        let g2 = LinearInvolution::canonical(&r).unwrap();
        let (alg, sigma) = tensor_with_involutions(&q, &g, &r, &g2).unwrap();
        assert_eq!(sym_space(&sigma).len(), 10);
        assert_eq!(decompose_symplectic_deg4(&alg, &sigma, 0).unwrap_err().name(), "NOT_SYMPLECTIC");
    }

    #[test]
    fn split_factor() {
        let (alg, sigma) = product(1, 1, -1, -3);
        let d = decompose_symplectic_deg4(&alg, &sigma, 0).unwrap();
        assert_eq!(d.branch, Branch::Split);
        let u = d.zero_divisor.clone().unwrap();
        assert!(u.iter().any(|r| !r.is_zero()));
        assert!(!alg.is_invertible(&u));
        let enc = encode_c2(&alg, &sigma, 0).unwrap();
        assert_eq!(enc.witness.params[0], rat(1));
        assert_eq!(enc.witness.meta("branch"), Some("split"));
    }

    #[test]
    fn split_adjoint_input() {
        let m2 = StructureAlgebra::matrix_algebra_m2();
        let ad = LinearInvolution::adjoint_m2(&m2, &rat(3)).unwrap();
        let r = quat(-1, -1);
        let g = LinearInvolution::canonical(&r).unwrap();
        let (alg, sigma) = tensor_with_involutions(&m2, &ad, &r, &g).unwrap();
        let enc = encode_c2(&alg, &sigma, 2).unwrap();
        assert_eq!(enc.witness.params[0], rat(1));
        let (back, tau) = decode_c2(&enc.witness).unwrap();
        assert_eq!(form_class(&back, &tau).unwrap(), form_class(&alg, &sigma).unwrap());
    }

    #[test]
    fn conjugated_basis() {
        // the same algebra after a unitriangular change of basis
        let (alg, sigma) = product(-1, -7, 2, 5);
        let dim = alg.dim();
        let mut change = RatMatrix::identity(dim);
        for a in 0..dim - 1 {
            change[(a, a + 1)] = Rat::from(((a % 3) as i64) - 1);
        }
        let inv = change.inverse().unwrap();
        let col = |a: usize| change.column(a);
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let prod = alg.mul(&col(a), &col(b));
                table[a][b] = inv.mul_vec(&prod);
            }
        }
        let unit = inv.mul_vec(alg.unit());
        let alg2 = StructureAlgebra::new(table, unit).unwrap();
        let sigma2 = LinearInvolution::new(&alg2, inv.mul(sigma.matrix()).mul(&change)).unwrap();
        let d = decompose_symplectic_deg4(&alg2, &sigma2, 9).unwrap();
        assert!(d.certificate.passed());
        let brauer = d.q_ramification().unwrap().sum(&d.q_prime_ramification().unwrap());
        let want = ramification_set(&rat(-1), &rat(-7)).unwrap().sum(&ramification_set(&rat(2), &rat(5)).unwrap());
        assert_eq!(brauer, want);
        let enc = encode_c2(&alg2, &sigma2, 9).unwrap();
        let (back, tau) = decode_c2(&enc.witness).unwrap();
        assert_eq!(form_class(&back, &tau).unwrap(), form_class(&alg, &sigma).unwrap());
    }

    #[test]
    fn form_class_by_hand() {
        // ⟨1, 1⟩ and ⟨2, 2⟩ are isometric; ⟨1, 1⟩ and ⟨3, 3⟩ differ at 3
        assert_eq!(diagonal_form_class(&[rat(1), rat(1)]).unwrap(), diagonal_form_class(&[rat(2), rat(2)]).unwrap());
        let c = diagonal_form_class(&[rat(3), rat(3)]).unwrap();
        assert!(c.hasse.contains(&Place::prime(3)));
        assert_eq!(diagonal_form_class(&[rat(-1), rat(-1)]).unwrap().positive, 0);
    }

    #[test]
    fn decode_rejects_zero() {
        let w = Witness::new(Category::C2, 2, vec![rat(0), rat(1), rat(1), rat(1)]);
        assert_eq!(decode_c2(&w).unwrap_err().name(), "WITNESS_INVALID");
    }
}
