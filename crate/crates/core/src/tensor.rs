//! Finite-dimensional algebras over ℚ given by structure constants, and
//! involutions given as linear maps on the basis.
//!
//! Elements are coordinate vectors. The product `e_a·e_b` is stored sparsely;
//! the dense `dim × dim` array of coordinate vectors is the interchange form.

use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{type_from_sym_dim, InvolutionType};
use crate::linalg::RatMatrix;
use crate::quaternion::QuaternionAlgebra;
use crate::rat::Rat;

pub type Element = Vec<Rat>;

#[derive(Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    table: Vec<Vec<Vec<(usize, Rat)>>>,
    unit: Element,
}

impl fmt::Debug for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureAlgebra(dim {})", self.dim)
    }
}

fn sparse(v: &[Rat]) -> Vec<(usize, Rat)> {
    v.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, r)| (i, r.clone())).collect()
}

impl StructureAlgebra {
    /// `constants[a][b]` holds the coordinates of `e_a·e_b`. Associativity and
    /// the unit law are checked on every basis triple.
    pub fn new(constants: Vec<Vec<Element>>, unit: Element) -> Result<StructureAlgebra> {
        let dim = unit.len();
        if dim == 0 {
            return Err(Error::ShapeMismatch("algebra of dimension 0".into()));
        }
        if constants.len() != dim || constants.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::ShapeMismatch(format!("structure constants are not {dim}×{dim}×{dim}")));
        }
        let table = constants.iter().map(|row| row.iter().map(|v| sparse(v)).collect()).collect();
        let alg = StructureAlgebra { dim, table, unit };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        for a in 0..self.dim {
            let ea = self.basis(a);
            if self.mul(&self.unit, &ea) != ea || self.mul(&ea, &self.unit) != ea {
                return Err(Error::InvalidAlgebra(format!("unit law fails on e{a}")));
            }
        }
        for a in 0..self.dim {
            for b in 0..self.dim {
                let ab = self.basis_product(a, b);
                for c in 0..self.dim {
                    let left = self.mul(&ab, &self.basis(c));
                    let right = self.mul(&self.basis(a), &self.basis_product(b, c));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("(e{a}·e{b})·e{c} ≠ e{a}·(e{b}·e{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The quaternion algebra on the basis 1, i, j, k.
    pub fn from_quaternion(q: &QuaternionAlgebra) -> StructureAlgebra {
        let constants = (0..4)
            .map(|a| (0..4).map(|b| q.mul(&q.basis(a), &q.basis(b)).c.to_vec()).collect())
            .collect();
        StructureAlgebra::new(constants, q.one().c.to_vec()).expect("quaternion tables are associative")
    }

    /// M₂(ℚ) on the basis E₁₁, E₁₂, E₂₁, E₂₂.
    pub fn matrix_algebra_m2() -> StructureAlgebra {
        let mut constants = vec![vec![vec![Rat::zero(); 4]; 4]; 4];
        for (a, (i, j)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            for (b, (k, l)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
                if j == k {
                    constants[a][b][2 * i + l] = Rat::one();
                }
            }
        }
        let unit = vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::one()];
        StructureAlgebra::new(constants, unit).expect("matrix units multiply associatively")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The degree √dim, if dim is a perfect square.
    pub fn degree(&self) -> Option<usize> {
        let d = (self.dim as f64).sqrt().round() as usize;
        (d * d == self.dim).then_some(d)
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn zero(&self) -> Element {
        vec![Rat::zero(); self.dim]
    }

    pub fn basis(&self, a: usize) -> Element {
        let mut v = self.zero();
        v[a] = Rat::one();
        v
    }

    pub fn scalar(&self, r: &Rat) -> Element {
        self.unit.iter().map(|u| u * r).collect()
    }

    /// The dense table, `[a][b]` = coordinates of `e_a·e_b`.
    pub fn structure_constants(&self) -> Vec<Vec<Element>> {
        (0..self.dim).map(|a| (0..self.dim).map(|b| self.basis_product(a, b)).collect()).collect()
    }

    fn basis_product(&self, a: usize, b: usize) -> Element {
        let mut v = self.zero();
        for (c, r) in &self.table[a][b] {
            v[*c] = r.clone();
        }
        v
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Element {
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xa * yb;
                for (c, r) in &self.table[a][b] {
                    out[*c] += &(&s * r);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Rat], y: &[Rat]) -> Element {
        x.iter().zip(y).map(|(u, v)| u + v).collect()
    }

    pub fn sub(&self, x: &[Rat], y: &[Rat]) -> Element {
        x.iter().zip(y).map(|(u, v)| u - v).collect()
    }

    pub fn scale(&self, x: &[Rat], r: &Rat) -> Element {
        x.iter().map(|u| u * r).collect()
    }

    /// Left multiplication by `x`; column `b` is `x·e_b`.
    pub fn left_matrix(&self, x: &[Rat]) -> RatMatrix {
        let cols: Vec<Element> = (0..self.dim).map(|b| self.mul(x, &self.basis(b))).collect();
        RatMatrix::from_columns(&cols)
    }

    pub fn right_matrix(&self, x: &[Rat]) -> RatMatrix {
        let cols: Vec<Element> = (0..self.dim).map(|b| self.mul(&self.basis(b), x)).collect();
        RatMatrix::from_columns(&cols)
    }

    /// Trace of left multiplication.
    pub fn trace(&self, x: &[Rat]) -> Rat {
        (0..self.dim).map(|b| self.mul(x, &self.basis(b))[b].clone()).sum()
    }

    /// Reduced trace, for algebras of square dimension.
    pub fn reduced_trace(&self, x: &[Rat]) -> Rat {
        let d = self.degree().expect("reduced trace needs a square dimension");
        self.trace(x) / Rat::from(d as i64)
    }

    /// The rational `c` with `x = c·1`, if `x` is a scalar.
    pub fn as_scalar(&self, x: &[Rat]) -> Option<Rat> {
        let c = self.trace(x) / Rat::from(self.dim as i64);
        (self.scalar(&c) == x).then_some(c)
    }

    pub fn is_invertible(&self, x: &[Rat]) -> bool {
        self.left_matrix(x).rank() == self.dim
    }

    pub fn inverse(&self, x: &[Rat]) -> Result<Element> {
        self.left_matrix(x).solve(&self.unit).ok_or_else(|| Error::NotInvertible(format_element(x)))
    }

    /// Coefficients `c₀, …, c_{d−1}` of the monic minimal polynomial
    /// `x^d = c₀ + c₁x + … + c_{d−1}x^{d−1}`.
    pub fn min_poly(&self, x: &[Rat]) -> Vec<Rat> {
        let mut powers = vec![self.unit.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = RatMatrix::from_columns(&powers);
            if let Some(c) = m.solve(&next) {
                return c;
            }
            powers.push(next);
        }
    }

    pub fn min_poly_degree(&self, x: &[Rat]) -> usize {
        self.min_poly(x).len()
    }

    /// `{x : x·s = s·x for all s ∈ set}`, with the induced multiplication.
    pub fn centralizer(&self, set: &[Element]) -> Subalgebra {
        let mut system = RatMatrix::zeros(0, self.dim);
        for s in set {
            system = system.vstack(&self.right_matrix(s).sub(&self.left_matrix(s)));
        }
        let basis = if set.is_empty() { (0..self.dim).map(|a| self.basis(a)).collect() } else { system.kernel() };
        Subalgebra::new(self, basis).expect("centralizers are subalgebras")
    }
}

pub fn format_element(x: &[Rat]) -> String {
    let items: Vec<String> = x.iter().map(Rat::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// A subalgebra given by a basis of the ambient algebra, with the induced
/// structure constants.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub basis: Vec<Element>,
    pub algebra: StructureAlgebra,
}

impl Subalgebra {
    pub fn new(ambient: &StructureAlgebra, basis: Vec<Element>) -> Result<Subalgebra> {
        let m = RatMatrix::from_columns(&basis);
        if m.rank() < basis.len() {
            return Err(Error::SingularBasis("subalgebra basis is dependent".into()));
        }
        let coords = |v: &Element| m.solve(v).ok_or_else(|| Error::InvalidAlgebra("not closed under multiplication".into()));
        let mut constants = Vec::with_capacity(basis.len());
        for x in &basis {
            let row = basis.iter().map(|y| coords(&ambient.mul(x, y))).collect::<Result<Vec<_>>>()?;
            constants.push(row);
        }
        let unit = coords(ambient.unit())?;
        let algebra = StructureAlgebra::new(constants, unit)?;
        Ok(Subalgebra { basis, algebra })
    }

    /// The ambient element with the given coordinates.
    pub fn embed(&self, c: &[Rat]) -> Element {
        let dim = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![Rat::zero(); dim];
        for (b, cb) in self.basis.iter().zip(c) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += &(v * cb);
            }
        }
        out
    }

    /// Coordinates of an ambient element lying in the subalgebra.
    pub fn coordinates(&self, x: &[Rat]) -> Option<Element> {
        RatMatrix::from_columns(&self.basis).solve(x)
    }
}

/// An involution of the first kind on a `StructureAlgebra`, as the matrix
/// whose column `a` holds σ(e_a).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInvolution {
    matrix: RatMatrix,
}

impl LinearInvolution {
    /// Checks σ² = 1, σ(1) = 1 and σ(e_a e_b) = σ(e_b)σ(e_a).
    pub fn new(alg: &StructureAlgebra, matrix: RatMatrix) -> Result<LinearInvolution> {
        let dim = alg.dim();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::ShapeMismatch(format!("involution matrix is not {dim}×{dim}")));
        }
        if matrix.mul(&matrix) != RatMatrix::identity(dim) {
            return Err(Error::InvalidAlgebra("involution does not square to the identity".into()));
        }
        let sigma = LinearInvolution { matrix };
        if &sigma.apply(alg.unit()) != alg.unit() {
            return Err(Error::InvalidAlgebra("involution moves the unit".into()));
        }
        let images: Vec<Element> = (0..dim).map(|a| sigma.matrix.column(a)).collect();
        for a in 0..dim {
            for b in 0..dim {
                let lhs = sigma.apply(&alg.mul(&alg.basis(a), &alg.basis(b)));
                if lhs != alg.mul(&images[b], &images[a]) {
                    return Err(Error::InvalidAlgebra(format!("σ(e{a}·e{b}) ≠ σ(e{b})·σ(e{a})")));
                }
            }
        }
        Ok(sigma)
    }

    /// The involution fixing exactly the given basis positions up to sign:
    /// e_a ↦ signs[a]·e_a.
    pub fn diagonal(alg: &StructureAlgebra, signs: &[i64]) -> Result<LinearInvolution> {
        let mut m = RatMatrix::zeros(signs.len(), signs.len());
        for (a, s) in signs.iter().enumerate() {
            m[(a, a)] = Rat::from(*s);
        }
        LinearInvolution::new(alg, m)
    }

    /// γ on a quaternion algebra in the basis 1, i, j, k.
    pub fn canonical(alg: &StructureAlgebra) -> Result<LinearInvolution> {
        LinearInvolution::diagonal(alg, &[1, -1, -1, -1])
    }

    /// x₀ + x₁i + x₂j + x₃k ↦ x₀ + x₁i + x₂j − x₃k.
    pub fn orthogonal_standard(alg: &StructureAlgebra) -> Result<LinearInvolution> {
        LinearInvolution::diagonal(alg, &[1, 1, 1, -1])
    }

    /// ad_⟨1,y⟩ on M₂(ℚ): m ↦ Q⁻¹mᵀQ with Q = diag(1, y).
    pub fn adjoint_m2(alg: &StructureAlgebra, y: &Rat) -> Result<LinearInvolution> {
        if y.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let mut m = RatMatrix::zeros(4, 4);
        m[(0, 0)] = Rat::one();
        m[(3, 3)] = Rat::one();
        // E₁₂ ↦ y⁻¹E₂₁, E₂₁ ↦ yE₁₂
        m[(2, 1)] = y.inv();
        m[(1, 2)] = y.clone();
        LinearInvolution::new(alg, m)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rat]) -> Element {
        self.matrix.mul_vec(x)
    }
}

/// A basis of `{x : σ(x) = x}`.
pub fn sym_space(sigma: &LinearInvolution) -> Vec<Element> {
    let dim = sigma.matrix.rows();
    sigma.matrix.sub(&RatMatrix::identity(dim)).kernel()
}

/// A basis of `{x : σ(x) = −x}`.
pub fn skew_space(sigma: &LinearInvolution) -> Vec<Element> {
    let dim = sigma.matrix.rows();
    sigma.matrix.add(&RatMatrix::identity(dim)).kernel()
}

pub fn involution_type(alg: &StructureAlgebra, sigma: &LinearInvolution) -> Result<InvolutionType> {
    let degree = alg.degree().ok_or_else(|| Error::ShapeMismatch(format!("dimension {} is not a square", alg.dim())))?;
    type_from_sym_dim(sym_space(sigma).len(), degree)
}

/// A ⊗ B on the product basis, `e_(a,b) = e_a ⊗ e_b` at index `a·dim B + b`.
pub fn tensor_product(a: &StructureAlgebra, b: &StructureAlgebra) -> StructureAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let mut constants = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for (x1, x2) in (0..da).flat_map(|x| (0..db).map(move |y| (x, y))) {
        for (y1, y2) in (0..da).flat_map(|x| (0..db).map(move |y| (x, y))) {
            let out = &mut constants[x1 * db + x2][y1 * db + y2];
            for (c1, r1) in &a.table[x1][y1] {
                for (c2, r2) in &b.table[x2][y2] {
                    out[c1 * db + c2] = r1 * r2;
                }
            }
        }
    }
    let unit = kron(a.unit(), b.unit());
    StructureAlgebra::new(constants, unit).expect("tensor products of associative algebras are associative")
}

pub fn kron(x: &[Rat], y: &[Rat]) -> Element {
    x.iter().flat_map(|u| y.iter().map(move |v| u * v)).collect()
}

/// (A, σ) ⊗ (B, τ) on the product basis.
pub fn tensor_with_involutions(
    a: &StructureAlgebra,
    sigma: &LinearInvolution,
    b: &StructureAlgebra,
    tau: &LinearInvolution,
) -> Result<(StructureAlgebra, LinearInvolution)> {
    let alg = tensor_product(a, b);
    let (da, db) = (a.dim(), b.dim());
    let mut m = RatMatrix::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    m[(i * db + k, j * db + l)] = &sigma.matrix[(i, j)] * &tau.matrix[(k, l)];
                }
            }
        }
    }
    let inv = LinearInvolution::new(&alg, m)?;
    Ok((alg, inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::QuaternionAlgebra;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn quat(a: i64, b: i64) -> StructureAlgebra {
        StructureAlgebra::from_quaternion(&QuaternionAlgebra::from_ints(a, b).unwrap())
    }

    fn tensor(a: (i64, i64), sa: &[i64], b: (i64, i64), sb: &[i64]) -> (StructureAlgebra, LinearInvolution) {
        let (qa, qb) = (quat(a.0, a.1), quat(b.0, b.1));
        let s1 = LinearInvolution::diagonal(&qa, sa).unwrap();
        let s2 = LinearInvolution::diagonal(&qb, sb).unwrap();
        tensor_with_involutions(&qa, &s1, &qb, &s2).unwrap()
    }

    #[test]
    fn quaternion_sym_spaces() {
        let q = quat(-1, -1);
        let gamma = LinearInvolution::canonical(&q).unwrap();
        assert_eq!(sym_space(&gamma), vec![q.unit().clone()]);
        let s0 = LinearInvolution::orthogonal_standard(&q).unwrap();
        assert_eq!(sym_space(&s0).len(), 3);
        assert_eq!(involution_type(&q, &gamma).unwrap(), InvolutionType::Symplectic);
        assert_eq!(involution_type(&q, &s0).unwrap(), InvolutionType::Orthogonal);
    }

    #[test]
    fn non_involutions_are_rejected() {
        let q = quat(-1, -1);
        // the identity map is not anti-multiplicative on a noncommutative algebra
        assert!(LinearInvolution::diagonal(&q, &[1, 1, 1, 1]).is_err());
        assert!(LinearInvolution::diagonal(&q, &[-1, 1, 1, 1]).is_err());
        let mut m = RatMatrix::identity(4);
        m[(0, 1)] = rat(1);
        assert!(LinearInvolution::new(&q, m).is_err());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let mut t = quat(-1, -1).structure_constants();
        t[1][2] = vec![rat(0), rat(0), rat(0), rat(2)];
        assert_eq!(StructureAlgebra::new(t, vec![rat(1), rat(0), rat(0), rat(0)]).unwrap_err().name(), "INVALID_ALGEBRA");
        let t = quat(-1, -1).structure_constants();
        assert_eq!(StructureAlgebra::new(t, vec![rat(1), rat(0)]).unwrap_err().name(), "SHAPE_MISMATCH");
    }

    #[test]
    fn tensor_types() {
        let (a, s) = tensor((-1, -1), &[1, -1, -1, -1], (-1, -1), &[1, -1, -1, -1]);
        assert_eq!(a.dim(), 16);
        assert_eq!(sym_space(&s).len(), 10);
        assert_eq!(involution_type(&a, &s).unwrap(), InvolutionType::Orthogonal);
        let (a, s) = tensor((-1, -1), &[1, 1, 1, -1], (-1, -3), &[1, -1, -1, -1]);
        assert_eq!(sym_space(&s).len(), 6);
        assert_eq!(skew_space(&s).len(), 10);
        assert_eq!(involution_type(&a, &s).unwrap(), InvolutionType::Symplectic);
        assert_eq!(a.unit(), &kron(quat(-1, -1).unit(), quat(-1, -3).unit()));
    }

    #[test]
    fn sym_dimension_by_hand() {
        // σ₀ ⊗ γ fixes e_s ⊗ e_t iff the signs agree: (3 fixed)·(1 fixed) + (1 negated)·(3 negated)
        let (_, s) = tensor((-1, -1), &[1, 1, 1, -1], (-1, -3), &[1, -1, -1, -1]);
        assert_eq!(sym_space(&s).len(), 3 + 3);
    }

    #[test]
    fn min_poly_examples() {
        let (a, _) = tensor((2, -1), &[1, 1, 1, -1], (-1, -3), &[1, -1, -1, -1]);
        assert_eq!(a.min_poly_degree(&a.scalar(&rat(7))), 1);
        let i1 = kron(&[rat(0), rat(1), rat(0), rat(0)], &[rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(a.min_poly(&i1), vec![rat(2), rat(0)]);
        let generic: Element = (0..16).map(|t| rat(((t * 7 + 3) % 5) as i64 - 2)).collect();
        assert_eq!(a.min_poly_degree(&generic), 4);
    }

    #[test]
    fn generic_degree_by_moment_matrix() {
        // 1, x, x², x³, x⁴ span a space of rank 4 for a generic x in a division algebra of degree 4
        let (a, _) = tensor((-1, -1), &[1, 1, 1, -1], (-1, -3), &[1, -1, -1, -1]);
        let x: Element = (0..16).map(|t| rat((t % 3) as i64 + (t / 5) as i64)).collect();
        let mut powers = vec![a.unit().clone()];
        for _ in 0..4 {
            powers.push(a.mul(powers.last().unwrap(), &x));
        }
        assert_eq!(RatMatrix::from_rows(powers).rank(), 4);
        assert_eq!(a.min_poly_degree(&x), 4);
    }

    #[test]
    fn centralizer_examples() {
        let (a, _) = tensor((-1, -1), &[1, 1, 1, -1], (-1, -3), &[1, -1, -1, -1]);
        assert_eq!(a.centralizer(&[a.unit().clone()]).basis.len(), 16);
        assert_eq!(a.centralizer(&[]).basis.len(), 16);
        let e = |s: usize| kron(&quat(-1, -1).basis(s), quat(-1, -3).unit());
        let c = a.centralizer(&[e(1), e(2)]);
        assert_eq!(c.basis.len(), 4);
        for t in 0..4 {
            let x = kron(quat(-1, -1).unit(), &quat(-1, -3).basis(t));
            assert!(c.coordinates(&x).is_some());
        }
        let all: Vec<Element> = (0..16).map(|t| a.basis(t)).collect();
        assert_eq!(a.centralizer(&all).basis, vec![a.unit().clone()]);
    }

    #[test]
    fn centralizer_is_closed() {
        let (a, _) = tensor((-1, -1), &[1, 1, 1, -1], (-1, -3), &[1, -1, -1, -1]);
        let x: Element = (0..16).map(|t| rat(if t == 1 || t == 6 { 1 } else { 0 })).collect();
        let c = a.centralizer(&[x.clone()]);
        for u in &c.basis {
            for v in &c.basis {
                let w = a.mul(u, v);
                assert!(c.coordinates(&w).is_some());
                assert_eq!(a.mul(&w, &x), a.mul(&x, &w));
            }
        }
    }

    #[test]
    fn invertibility() {
        let qa = QuaternionAlgebra::from_ints(1, 1).unwrap();
        let u = qa.split_point().unwrap();
        let (a, _) = tensor((1, 1), &[1, 1, 1, -1], (-1, -3), &[1, -1, -1, -1]);
        assert!(a.is_invertible(a.unit()));
        assert!(!a.is_invertible(&a.zero()));
        let x = kron(&u.c, quat(-1, -3).unit());
        assert!(a.mul(&x, &x).iter().all(Rat::is_zero));
        assert!(!a.is_invertible(&x));
    }

    #[test]
    fn m2_with_adjoint_is_orthogonal() {
        let m2 = StructureAlgebra::matrix_algebra_m2();
        let ad = LinearInvolution::adjoint_m2(&m2, &rat(-3)).unwrap();
        assert_eq!(involution_type(&m2, &ad).unwrap(), InvolutionType::Orthogonal);
        // E₁₂·E₂₁ = E₁₁
        assert_eq!(m2.mul(&m2.basis(1), &m2.basis(2)), m2.basis(0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn tensor_tables_validate_and_split_sym_skew(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
            prop_assume!(a * b * c * d != 0);
            let (alg, s) = tensor((a, b), &[1, 1, 1, -1], (c, d), &[1, -1, -1, -1]);
            prop_assert_eq!(sym_space(&s).len() + skew_space(&s).len(), alg.dim());
            let again = StructureAlgebra::new(alg.structure_constants(), alg.unit().clone()).unwrap();
            prop_assert_eq!(again, alg);
        }
    }
}
