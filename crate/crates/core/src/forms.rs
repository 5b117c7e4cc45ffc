//! ε-hermitian forms over a quaternion algebra with its canonical involution.
//!
//! A form on the right Q-module Qⁿ is h(x, y) = γ(x)ᵀ·H·y for a Gram matrix
//! H with γ(H)ᵀ = εH. Changing the basis by P gives γ(P)ᵀ·H·P, and the
//! adjoint involution on M_n(Q) is m ↦ H⁻¹·γ(m)ᵀ·H.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{square_class, SquareClass};
use crate::linalg::RatMatrix;
use crate::quaternion::{QuaternionAlgebra, QuaternionElement};
use crate::rat::Rat;

type Quat = QuaternionElement<Rat>;

/// +1 for hermitian forms, −1 for skew-hermitian forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn apply(self, x: &Quat) -> Quat {
        match self {
            Epsilon::Plus => x.clone(),
            Epsilon::Minus => -x,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Plus => "+1",
            Epsilon::Minus => "-1",
        })
    }
}

impl std::str::FromStr for Epsilon {
    type Err = Error;
    fn from_str(s: &str) -> Result<Epsilon> {
        match s {
            "+1" => Ok(Epsilon::Plus),
            "-1" => Ok(Epsilon::Minus),
            _ => Err(Error::Parse(format!("epsilon must be \"+1\" or \"-1\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionType::Orthogonal => "ORTHOGONAL",
            InvolutionType::Symplectic => "SYMPLECTIC",
        })
    }
}

/// The type of an involution of the first kind on a central simple algebra of
/// the given degree, from the dimension of its symmetric elements.
pub fn type_from_sym_dim(sym: usize, degree: usize) -> Result<InvolutionType> {
    if sym == degree * (degree + 1) / 2 {
        Ok(InvolutionType::Orthogonal)
    } else if sym == degree * (degree - 1) / 2 {
        Ok(InvolutionType::Symplectic)
    } else {
        Err(Error::TypeUndetermined { sym, dim: degree * degree })
    }
}

/// A square matrix over a quaternion algebra over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct QuatMatrix {
    n: usize,
    e: Vec<Quat>,
}

impl QuatMatrix {
    pub fn zeros(n: usize) -> QuatMatrix {
        QuatMatrix { n, e: vec![Quat::scalar(Rat::zero()); n * n] }
    }

    pub fn identity(n: usize) -> QuatMatrix {
        let mut m = QuatMatrix::zeros(n);
        for k in 0..n {
            m.set(k, k, Quat::scalar(Rat::one()));
        }
        m
    }

    pub fn diagonal(entries: &[Quat]) -> QuatMatrix {
        let mut m = QuatMatrix::zeros(entries.len());
        for (k, x) in entries.iter().enumerate() {
            m.set(k, k, x.clone());
        }
        m
    }

    /// The matrix with `x` at (k, l) and zeros elsewhere.
    pub fn unit(n: usize, k: usize, l: usize, x: Quat) -> QuatMatrix {
        let mut m = QuatMatrix::zeros(n);
        m.set(k, l, x);
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quat>>) -> Result<QuatMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("gram matrix must be square".into()));
        }
        Ok(QuatMatrix { n, e: rows.into_iter().flatten().collect() })
    }

    pub fn to_rows(&self) -> Vec<Vec<Quat>> {
        self.e.chunks(self.n).map(<[Quat]>::to_vec).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> &Quat {
        &self.e[k * self.n + l]
    }

    pub fn set(&mut self, k: usize, l: usize, x: Quat) {
        self.e[k * self.n + l] = x;
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|k| (0..self.n).all(|l| k == l || self.get(k, l).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Quat> {
        (0..self.n).map(|k| self.get(k, k).clone()).collect()
    }

    /// γ applied entrywise, then transposed.
    pub fn conj_transpose(&self) -> QuatMatrix {
        let mut m = QuatMatrix::zeros(self.n);
        for k in 0..self.n {
            for l in 0..self.n {
                m.set(l, k, self.get(k, l).conj());
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&Quat) -> Quat) -> QuatMatrix {
        QuatMatrix { n: self.n, e: self.e.iter().map(f).collect() }
    }

    pub fn scale(&self, r: &Rat) -> QuatMatrix {
        self.map(|x| x.scale_rat(r))
    }

    pub fn mul(&self, q: &QuaternionAlgebra, other: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = QuatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = &out.e[i * n + j] + &q.mul(a, b);
                        out.e[i * n + j] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QuatMatrix) -> QuatMatrix {
        QuatMatrix { n: self.n, e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect() }
    }

    /// The 4n×4n rational matrix of left multiplication on Qⁿ.
    pub fn realize(&self, q: &QuaternionAlgebra) -> RatMatrix {
        let n = self.n;
        let mut m = RatMatrix::zeros(4 * n, 4 * n);
        for k in 0..n {
            for l in 0..n {
                let x = self.get(k, l);
                if x.is_zero() {
                    continue;
                }
                let block = q.left_matrix(x);
                for r in 0..4 {
                    for c in 0..4 {
                        m[(4 * k + r, 4 * l + c)] = block[(r, c)].clone();
                    }
                }
            }
        }
        m
    }

    pub fn is_invertible(&self, q: &QuaternionAlgebra) -> bool {
        self.realize(q).rank() == 4 * self.n
    }

    pub fn inverse(&self, q: &QuaternionAlgebra) -> Result<QuatMatrix> {
        let inv = self.realize(q).inverse().ok_or_else(|| Error::NotInvertible("quaternion matrix".into()))?;
        let n = self.n;
        let mut out = QuatMatrix::zeros(n);
        for k in 0..n {
            for l in 0..n {
                // the first column of a left-multiplication block is the element itself
                let c = std::array::from_fn(|r| inv[(4 * k + r, 4 * l)].clone());
                out.set(k, l, Quat::new(c));
            }
        }
        Ok(out)
    }

    /// γ(P)ᵀ·self·P.
    pub fn congruent(&self, q: &QuaternionAlgebra, p: &QuatMatrix) -> QuatMatrix {
        p.conj_transpose().mul(q, &self.mul(q, p))
    }
}

impl fmt::Debug for QuatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.e.chunks(self.n)).finish()
    }
}

/// An ε-hermitian form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    q: QuaternionAlgebra,
    epsilon: Epsilon,
    gram: QuatMatrix,
}

impl HermitianForm {
    /// Checks the ε-symmetry of `gram` and that the form is nondegenerate.
    pub fn new(q: QuaternionAlgebra, epsilon: Epsilon, gram: QuatMatrix) -> Result<HermitianForm> {
        let n = gram.n();
        for k in 0..n {
            for l in k..n {
                if gram.get(l, k).conj() != epsilon.apply(gram.get(k, l)) {
                    return Err(Error::ShapeMismatch(format!(
                        "gram entry ({l}, {k}) is not {epsilon} times the conjugate of ({k}, {l})"
                    )));
                }
            }
        }
        if !gram.is_invertible(&q) {
            return Err(Error::DegenerateForm);
        }
        Ok(HermitianForm { q, epsilon, gram })
    }

    pub fn diagonal(q: QuaternionAlgebra, epsilon: Epsilon, entries: &[Quat]) -> Result<HermitianForm> {
        HermitianForm::new(q, epsilon, QuatMatrix::diagonal(entries))
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.q
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn gram(&self) -> &QuatMatrix {
        &self.gram
    }

    pub fn n(&self) -> usize {
        self.gram.n()
    }

    pub fn is_diagonal(&self) -> bool {
        self.gram.is_diagonal()
    }

    /// Diagonal entries, if the Gram matrix is diagonal.
    pub fn entries(&self) -> Option<Vec<Quat>> {
        self.is_diagonal().then(|| self.gram.diagonal_entries())
    }

    pub fn scale(&self, lambda: &Rat) -> HermitianForm {
        HermitianForm { q: self.q.clone(), epsilon: self.epsilon, gram: self.gram.scale(lambda) }
    }

    /// The form in the basis given by the columns of `p`.
    pub fn transform(&self, p: &QuatMatrix) -> Result<HermitianForm> {
        HermitianForm::new(self.q.clone(), self.epsilon, self.gram.congruent(&self.q, p))
    }

    pub fn adjoint(&self) -> AdjointInvolution {
        AdjointInvolution::new(self)
    }
}

/// The adjoint involution σ_h on M_n(Q).
#[derive(Clone, Debug)]
pub struct AdjointInvolution {
    q: QuaternionAlgebra,
    gram: QuatMatrix,
    gram_inv: QuatMatrix,
}

impl AdjointInvolution {
    pub fn new(h: &HermitianForm) -> AdjointInvolution {
        let gram_inv = h.gram.inverse(&h.q).expect("forms are nondegenerate");
        AdjointInvolution { q: h.q.clone(), gram: h.gram.clone(), gram_inv }
    }

    pub fn apply(&self, m: &QuatMatrix) -> Result<QuatMatrix> {
        if m.n() != self.gram.n() {
            return Err(Error::ShapeMismatch(format!("{}×{} matrix for a form of rank {}", m.n(), m.n(), self.gram.n())));
        }
        Ok(self.gram_inv.mul(&self.q, &m.conj_transpose().mul(&self.q, &self.gram)))
    }
}

pub fn adjoint_apply(sigma: &AdjointInvolution, m: &QuatMatrix) -> Result<QuatMatrix> {
    sigma.apply(m)
}

/// The ℚ-basis E_kl·x (x ∈ {1, i, j, k}) of M_n(Q).
pub fn matrix_units(q: &QuaternionAlgebra, n: usize) -> Vec<QuatMatrix> {
    let mut out = Vec::with_capacity(4 * n * n);
    for k in 0..n {
        for l in 0..n {
            for t in 0..4 {
                out.push(QuatMatrix::unit(n, k, l, q.basis(t)));
            }
        }
    }
    out
}

/// A diagonal form congruent to the input, with the change of basis.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub form: HermitianForm,
    pub p: QuatMatrix,
    /// Set when the seeded pivot repair had to be used.
    pub seed_used: Option<u64>,
}

const REPAIR_ATTEMPTS: usize = 64;

/// Congruence diagonalization with invertible pivots.
pub fn diagonalize_form(h: &HermitianForm, seed: u64) -> Result<Diagonalization> {
    let q = &h.q;
    let n = h.n();
    let mut g = h.gram.clone();
    let mut p = QuatMatrix::identity(n);
    let mut seed_used = None;
    let small: Vec<Quat> = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0], [1, 0, 1, 0]]
        .into_iter()
        .map(Quat::from_ints)
        .collect();
    for k in 0..n {
        if q.nrd(g.get(k, k)).is_zero() {
            let repaired = repair_pivot(q, &mut g, &mut p, k, &small)
                || {
                    seed_used = Some(seed);
                    repair_pivot_random(q, &mut g, &mut p, k, seed)
                };
            if !repaired {
                return Err(Error::ZeroDiagonalUnrepairable(k));
            }
        }
        let inv = q.inv(g.get(k, k)).expect("pivot has nonzero norm");
        for l in k + 1..n {
            if g.get(k, l).is_zero() {
                continue;
            }
            let mu = -&q.mul(&inv, g.get(k, l));
            add_column(q, &mut g, &mut p, l, k, &mu);
        }
    }
    debug_assert!(g.is_diagonal());
    let form = HermitianForm { q: q.clone(), epsilon: h.epsilon, gram: g };
    Ok(Diagonalization { form, p, seed_used })
}

/// e_k ← e_k + e_l·λ on the Gram matrix and the basis.
fn add_column(q: &QuaternionAlgebra, g: &mut QuatMatrix, p: &mut QuatMatrix, k: usize, l: usize, lambda: &Quat) {
    let n = g.n();
    for i in 0..n {
        let v = g.get(i, k) + &q.mul(g.get(i, l), lambda);
        g.set(i, k, v);
        let v = p.get(i, k) + &q.mul(p.get(i, l), lambda);
        p.set(i, k, v);
    }
    let lc = lambda.conj();
    for j in 0..n {
        let v = g.get(k, j) + &q.mul(&lc, g.get(l, j));
        g.set(k, j, v);
    }
}

fn swap_basis(g: &mut QuatMatrix, p: &mut QuatMatrix, k: usize, l: usize) {
    let n = g.n();
    for i in 0..n {
        let t = g.get(i, k).clone();
        g.set(i, k, g.get(i, l).clone());
        g.set(i, l, t);
        let t = p.get(i, k).clone();
        p.set(i, k, p.get(i, l).clone());
        p.set(i, l, t);
    }
    for j in 0..n {
        let t = g.get(k, j).clone();
        g.set(k, j, g.get(l, j).clone());
        g.set(l, j, t);
    }
}

/// The new (k, k) entry after e_k ← e_k + e_l·λ.
fn trial_pivot(q: &QuaternionAlgebra, g: &QuatMatrix, k: usize, l: usize, lambda: &Quat) -> Quat {
    let lc = lambda.conj();
    let t = &(g.get(k, k) + &q.mul(g.get(k, l), lambda)) + &q.mul(&lc, g.get(l, k));
    &t + &q.mul(&lc, &q.mul(g.get(l, l), lambda))
}

fn repair_pivot(q: &QuaternionAlgebra, g: &mut QuatMatrix, p: &mut QuatMatrix, k: usize, small: &[Quat]) -> bool {
    let n = g.n();
    if let Some(l) = (k + 1..n).find(|&l| !q.nrd(g.get(l, l)).is_zero()) {
        swap_basis(g, p, k, l);
        return true;
    }
    for l in k + 1..n {
        for lambda in small {
            if !q.nrd(&trial_pivot(q, g, k, l, lambda)).is_zero() {
                add_column(q, g, p, k, l, lambda);
                return true;
            }
        }
    }
    false
}

fn repair_pivot_random(q: &QuaternionAlgebra, g: &mut QuatMatrix, p: &mut QuatMatrix, k: usize, seed: u64) -> bool {
    let n = g.n();
    if k + 1 >= n {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for _ in 0..REPAIR_ATTEMPTS {
        let l = rng.gen_range(k + 1..n);
        let lambda = Quat::from_ints(std::array::from_fn(|_| rng.gen_range(-4..=4)));
        if !q.nrd(&trial_pivot(q, g, k, l, &lambda)).is_zero() {
            add_column(q, g, p, k, l, &lambda);
            return true;
        }
    }
    false
}

/// Dimension of {x ∈ Q : h⁻¹·γ(x)·h = x} for an invertible h.
fn block_sym_dim(q: &QuaternionAlgebra, h: &Quat) -> usize {
    let hinv = q.inv(h).expect("diagonal entries are invertible");
    let cols: Vec<Vec<Rat>> = (0..4)
        .map(|t| {
            let x = q.basis(t);
            let image = q.mul(&hinv, &q.mul(&x.conj(), h));
            (&image - &x).c.to_vec()
        })
        .collect();
    4 - RatMatrix::from_columns(&cols).rank()
}

/// Type of σ_h, counting symmetric elements block by block on a diagonal form.
///
/// For diagonal H, σ(m)_kl = h_k⁻¹·γ(m_lk)·h_l, so each pair k < l contributes
/// four dimensions and each diagonal block is a 4×4 problem.
pub fn involution_type(h: &HermitianForm) -> Result<InvolutionType> {
    let diag = if h.is_diagonal() { h.clone() } else { diagonalize_form(h, 0)?.form };
    let n = diag.n();
    let sym = 2 * n * (n - 1) + diag.gram.diagonal_entries().iter().map(|x| block_sym_dim(&diag.q, x)).sum::<usize>();
    type_from_sym_dim(sym, 2 * n)
}

/// Dimension of the symmetric elements of σ_h from the full 4n²-dimensional
/// linear map; slow, used to cross-check the block count.
pub fn sym_dim_dense(h: &HermitianForm) -> usize {
    let sigma = h.adjoint();
    let units = matrix_units(&h.q, h.n());
    let cols: Vec<Vec<Rat>> = units
        .iter()
        .map(|m| {
            let d = sigma.apply(m).expect("shapes agree").add(&m.scale(&-Rat::one()));
            d.e.iter().flat_map(|x| x.c.iter().cloned()).collect()
        })
        .collect();
    units.len() - RatMatrix::from_columns(&cols).rank()
}

/// Square class of ∏ Nrd(qᵢ) for a diagonal skew-hermitian form of odd rank.
pub fn disc_skew(h: &HermitianForm) -> Result<SquareClass> {
    if h.epsilon != Epsilon::Minus || h.n() % 2 == 0 {
        return Err(Error::ShapeMismatch("discriminant needs a skew-hermitian form of odd rank".into()));
    }
    let entries = h.entries().ok_or_else(|| Error::ShapeMismatch("discriminant needs a diagonal form".into()))?;
    let mut prod = Rat::one();
    for x in &entries {
        let nrd = h.q.nrd(x);
        if nrd.is_zero() {
            return Err(Error::IsotropicEntry(x.to_string()));
        }
        prod *= &nrd;
    }
    square_class(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;
    use rand::Rng;


    fn qe(c: [i64; 4]) -> Quat {
        Quat::from_ints(c)
    }

    fn hamilton() -> QuaternionAlgebra {
        QuaternionAlgebra::from_ints(-1, -1).unwrap()
    }

    #[test]
    fn diagonal_input_is_unchanged() {
        let h = HermitianForm::diagonal(hamilton(), Epsilon::Plus, &[qe([2, 0, 0, 0]), qe([-3, 0, 0, 0])]).unwrap();
        let d = diagonalize_form(&h, 1).unwrap();
        assert_eq!(d.form, h);
        assert_eq!(d.p, QuatMatrix::identity(2));
        let s = HermitianForm::diagonal(hamilton(), Epsilon::Minus, &[qe([0, 1, 0, 0]), qe([0, 0, 1, 0])]).unwrap();
        assert_eq!(diagonalize_form(&s, 1).unwrap().form, s);
    }

    #[test]
    fn hyperbolic_plane_by_hand() {
        let q = hamilton();
        let gram = QuatMatrix::from_rows(vec![vec![qe([0, 0, 0, 0]), qe([1, 0, 0, 0])], vec![qe([1, 0, 0, 0]), qe([0, 0, 0, 0])]]).unwrap();
        let h = HermitianForm::new(q.clone(), Epsilon::Plus, gram.clone()).unwrap();
        let d = diagonalize_form(&h, 1).unwrap();
        // e₁ ↦ e₁ + e₂ gives pivot 2, then e₂ ← e₂ − e₁/2 leaves −1/2
        assert_eq!(d.form.entries().unwrap(), vec![QuaternionElement::scalar(rat(2)), QuaternionElement::scalar(rat((-1, 2)))]);
        let mut expected = QuatMatrix::identity(2);
        expected.set(1, 0, qe([1, 0, 0, 0]));
        expected.set(0, 1, QuaternionElement::scalar(rat((-1, 2))));
        expected.set(1, 1, QuaternionElement::scalar(rat((1, 2))));
        assert_eq!(d.p, expected);
        assert_eq!(gram.congruent(&q, &d.p), *d.form.gram());
    }

    #[test]
    fn degenerate_and_asymmetric_grams_are_rejected() {
        let q = hamilton();
        let one = qe([1, 0, 0, 0]);
        let degenerate = QuatMatrix::from_rows(vec![vec![one.clone(), one.clone()], vec![one.clone(), one.clone()]]).unwrap();
        assert_eq!(HermitianForm::new(q.clone(), Epsilon::Plus, degenerate).unwrap_err().name(), "DEGENERATE_FORM");
        let not_skew = QuatMatrix::diagonal(&[one.clone(), one]);
        assert_eq!(HermitianForm::new(q, Epsilon::Minus, not_skew).unwrap_err().name(), "SHAPE_MISMATCH");
    }

    #[test]
    fn adjoint_examples() {
        let q = hamilton();
        let h = HermitianForm::diagonal(q.clone(), Epsilon::Plus, &vec![qe([1, 0, 0, 0]); 3]).unwrap();
        let sigma = h.adjoint();
        assert_eq!(sigma.apply(&QuatMatrix::identity(3)).unwrap(), QuatMatrix::identity(3));
        for m in matrix_units(&q, 3) {
            assert_eq!(sigma.apply(&m).unwrap(), m.conj_transpose());
        }
        let h2 = h.scale(&rat(2)).adjoint();
        for m in matrix_units(&q, 3) {
            assert_eq!(h2.apply(&m).unwrap(), sigma.apply(&m).unwrap());
        }
    }

    #[test]
    fn involution_type_examples() {
        let q = QuaternionAlgebra::from_ints(2, -5).unwrap();
        let herm = HermitianForm::diagonal(q.clone(), Epsilon::Plus, &[qe([1, 0, 0, 0]), qe([3, 0, 0, 0]), qe([-1, 0, 0, 0])]).unwrap();
        let skew = HermitianForm::diagonal(q, Epsilon::Minus, &[qe([0, 1, 0, 0]), qe([0, 0, 1, 0]), qe([0, 1, 1, 1])]).unwrap();
        assert_eq!(involution_type(&herm).unwrap(), InvolutionType::Symplectic);
        assert_eq!(involution_type(&skew).unwrap(), InvolutionType::Orthogonal);
        assert_eq!(sym_dim_dense(&herm), 15);
        assert_eq!(sym_dim_dense(&skew), 21);
    }

    #[test]
    fn disc_examples() {
        let q = hamilton();
        let ijk = HermitianForm::diagonal(q.clone(), Epsilon::Minus, &[qe([0, 1, 0, 0]), qe([0, 0, 1, 0]), qe([0, 0, 0, 1])]).unwrap();
        assert!(disc_skew(&ijk).unwrap().is_trivial());
        let q5 = QuaternionAlgebra::from_ints(-1, -5).unwrap();
        let iij = HermitianForm::diagonal(q5, Epsilon::Minus, &[qe([0, 1, 0, 0]), qe([0, 1, 0, 0]), qe([0, 0, 1, 0])]).unwrap();
        assert_eq!(disc_skew(&iij).unwrap().representative(), &5.into());
        assert_eq!(disc_skew(&iij.scale(&rat((7, 3)))).unwrap(), disc_skew(&iij).unwrap());
    }

    fn random_form(seed: u64, n: usize, eps: Epsilon) -> HermitianForm {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nz = |rng: &mut ChaCha8Rng| loop {
            let v: i64 = rng.gen_range(-6..=6);
            if v != 0 {
                return v;
            }
        };
        let q = QuaternionAlgebra::from_ints(nz(&mut rng), nz(&mut rng)).unwrap();
        loop {
            let mut g = QuatMatrix::zeros(n);
            for k in 0..n {
                for l in k..n {
                    let mut c: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
                    if k == l {
                        match eps {
                            Epsilon::Plus => c[1..].fill(0),
                            Epsilon::Minus => c[0] = 0,
                        }
                    }
                    let x = qe(c);
                    g.set(l, k, eps.apply(&x.conj()));
                    g.set(k, l, x);
                }
            }
            if let Ok(h) = HermitianForm::new(q.clone(), eps, g) {
                return h;
            }
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> QuatMatrix {
        let mut m = QuatMatrix::zeros(n);
        for k in 0..n {
            for l in 0..n {
                m.set(k, l, Quat::from_ints(std::array::from_fn(|_| rng.gen_range(-4..=4))));
            }
        }
        m
    }

    #[test]
    fn adjoint_is_an_anti_automorphism_of_order_two() {
        for n in [2usize, 3, 5] {
            let h = random_form(n as u64, n, if n == 3 { Epsilon::Minus } else { Epsilon::Plus });
            let q = h.algebra().clone();
            let sigma = h.adjoint();
            let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
            for _ in 0..200 {
                let m1 = random_matrix(&mut rng, n);
                let m2 = random_matrix(&mut rng, n);
                let s1 = sigma.apply(&m1).unwrap();
                assert_eq!(sigma.apply(&s1).unwrap(), m1);
                let lhs = sigma.apply(&m1.mul(&q, &m2)).unwrap();
                assert_eq!(lhs, sigma.apply(&m2).unwrap().mul(&q, &s1));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn diagonalization_is_an_exact_congruence(seed in 0u64..10_000, n in 2usize..5, skew in any::<bool>()) {
            let eps = if skew { Epsilon::Minus } else { Epsilon::Plus };
            let h = random_form(seed, n, eps);
            let d = diagonalize_form(&h, seed).unwrap();
            prop_assert_eq!(h.gram().congruent(h.algebra(), &d.p), d.form.gram().clone());
            prop_assert!(d.p.is_invertible(h.algebra()));
            for x in d.form.entries().unwrap() {
                match eps {
                    Epsilon::Plus => prop_assert!(x.is_scalar()),
                    Epsilon::Minus => prop_assert!(x.is_pure()),
                }
                prop_assert!(!h.algebra().nrd(&x).is_zero());
            }
        }

        #[test]
        fn type_matches_epsilon(seed in 0u64..10_000, n in 2usize..4, skew in any::<bool>()) {
            let eps = if skew { Epsilon::Minus } else { Epsilon::Plus };
            let h = random_form(seed, n, eps);
            let expected = if skew { InvolutionType::Orthogonal } else { InvolutionType::Symplectic };
            prop_assert_eq!(involution_type(&h).unwrap(), expected);
            prop_assert_eq!(type_from_sym_dim(sym_dim_dense(&h), 2 * n).unwrap(), expected);
        }

        #[test]
        fn adjoint_ignores_scalar_multiples(seed in 0u64..10_000, n in 2usize..4, skew in any::<bool>(), num in -9i64..9, den in 1i64..9) {
            prop_assume!(num != 0);
            let eps = if skew { Epsilon::Minus } else { Epsilon::Plus };
            let h = random_form(seed, n, eps);
            let (s1, s2) = (h.adjoint(), h.scale(&rat((num, den))).adjoint());
            for m in matrix_units(h.algebra(), n) {
                prop_assert_eq!(s1.apply(&m).unwrap(), s2.apply(&m).unwrap());
            }
        }

        #[test]
        fn disc_is_a_congruence_invariant(seed in 0u64..10_000, u in proptest::array::uniform4(-3i64..4), shift in 0usize..3) {
            let h = random_form(seed, 3, Epsilon::Minus);
            let q = h.algebra().clone();
            let d = diagonalize_form(&h, seed).unwrap().form;
            let mut entries = d.entries().unwrap();
            let base = disc_skew(&d).unwrap();
            entries.rotate_left(shift);
            let rotated = HermitianForm::diagonal(q.clone(), Epsilon::Minus, &entries).unwrap();
            prop_assert_eq!(disc_skew(&rotated).unwrap(), base.clone());
            let u = qe(u);
            prop_assume!(!q.nrd(&u).is_zero());
            entries[0] = q.mul(&u, &q.mul(&entries[0], &u.conj()));
            let moved = HermitianForm::diagonal(q, Epsilon::Minus, &entries).unwrap();
            prop_assert_eq!(disc_skew(&moved).unwrap(), base);
        }
    }
}
