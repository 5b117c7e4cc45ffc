//! Dense matrices over ℚ with fraction-free elimination.
//!
//! Rows are cleared to integers first; elimination then runs Bareiss-style
//! over ℤ, picking the pivot of smallest magnitude in each column. Rational
//! arithmetic only reappears during back-substitution.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rat>]) -> RatMatrix {
        let r = cols.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(r, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self, self.cols).pivots.len()
    }

    /// A basis of `{x : self·x = 0}`, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let ech = Echelon::new(self, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); self.cols];
                x[f] = Rat::one();
                ech.back_substitute(&mut x, None);
                x
            })
            .collect()
    }

    /// Some solution of `self·x = b` (free variables set to zero).
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let rhs = RatMatrix::from_columns(&[b.to_vec()]);
        self.solve_many(&rhs).map(|x| x.column(0))
    }

    /// Some solution of `self·X = rhs`, column by column.
    pub fn solve_many(&self, rhs: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let ech = Echelon::new(&aug, self.cols);
        let rank = ech.pivots.len();
        if ech.rows[rank..].iter().any(|row| row[self.cols..].iter().any(|v| !v.is_zero())) {
            return None;
        }
        let mut out = RatMatrix::zeros(self.cols, rhs.cols);
        for k in 0..rhs.cols {
            let mut x = vec![Rat::zero(); self.cols];
            ech.back_substitute(&mut x, Some(self.cols + k));
            for (i, v) in x.into_iter().enumerate() {
                out[(i, k)] = v;
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        if self.rank() < self.rows {
            return None;
        }
        self.solve_many(&RatMatrix::identity(self.rows))
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let ech = Echelon::new(self, n);
        if ech.pivots.len() < n {
            return Rat::zero();
        }
        // Bareiss: the last pivot is the determinant of the row-permuted integer matrix.
        let last = Rat::from_int(ech.int_rows[n - 1][n - 1].clone());
        let d = if ech.det_sign < 0 { -last } else { last };
        d / &ech.row_scale
    }

    fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Row echelon form produced by fraction-free elimination.
struct Echelon {
    /// Echelon rows as rationals (for back-substitution).
    rows: Vec<Vec<Rat>>,
    /// The same rows over ℤ, as Bareiss leaves them.
    int_rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    det_sign: i8,
    /// Product of the integer factors used to clear each row.
    row_scale: Rat,
}

impl Echelon {
    /// Eliminates using pivots from the first `pivot_cols` columns only.
    fn new(m: &RatMatrix, pivot_cols: usize) -> Echelon {
        let mut row_scale = Rat::one();
        let mut a: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| {
                let row = m.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.denom()));
                row_scale *= &Rat::from_int(l.clone());
                row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut det_sign = 1i8;
        let mut r = 0;
        for col in 0..pivot_cols {
            if r == a.len() {
                break;
            }
            let best = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].magnitude().cmp(a[y][col].magnitude()));
            let Some(p) = best else { continue };
            if p != r {
                a.swap(p, r);
                det_sign = -det_sign;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let piv_row = &top[r];
            let piv = piv_row[col].clone();
            for row in bottom.iter_mut() {
                let f = row[col].clone();
                for j in col + 1..row.len() {
                    let v = &piv * &row[j] - &f * &piv_row[j];
                    debug_assert!((&v % &prev).is_zero());
                    row[j] = v / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = piv;
            pivots.push(col);
            r += 1;
        }
        let rows = a.iter().map(|row| row.iter().map(|v| Rat::from_int(v.clone())).collect()).collect();
        Echelon { rows, int_rows: a, pivots, det_sign, row_scale }
    }

    /// Fills the pivot entries of `x` so the echelon system holds. `rhs` is the
    /// augmented column holding the right-hand side, if any; free entries of `x`
    /// are taken as already set.
    fn back_substitute(&self, x: &mut [Rat], rhs: Option<usize>) {
        for (r, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[r];
            let mut s = match rhs {
                Some(c) => row[c].clone(),
                None => Rat::zero(),
            };
            for j in pc + 1..x.len() {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s -= &(&row[j] * &x[j]);
                }
            }
            x[pc] = s / &row[pc];
        }
    }
}

/// Diagonalizes a symmetric rational matrix by congruence; returns the diagonal.
pub fn diagonalize_symmetric(m: &RatMatrix) -> Vec<Rat> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(l) = (k + 1..n).find(|&l| !a[(l, l)].is_zero()) {
                swap_sym(&mut a, k, l);
            } else if let Some(l) = (k + 1..n).find(|&l| !a[(k, l)].is_zero()) {
                // e_k ← e_k + e_l makes the pivot 2·a_kl
                add_sym(&mut a, k, l, &Rat::one());
            }
        }
        let p = a[(k, k)].clone();
        if !p.is_zero() {
            for l in k + 1..n {
                if !a[(k, l)].is_zero() {
                    let f = -(&a[(k, l)] / &p);
                    add_sym(&mut a, l, k, &f);
                }
            }
        }
        out.push(p);
    }
    out
}

/// e_k ← e_k + λ·e_l applied on both sides.
fn add_sym(a: &mut RatMatrix, k: usize, l: usize, lambda: &Rat) {
    let n = a.rows();
    for i in 0..n {
        let v = &a[(i, l)] * lambda;
        a[(i, k)] += &v;
    }
    for j in 0..n {
        let v = &a[(l, j)] * lambda;
        a[(k, j)] += &v;
    }
}

fn swap_sym(a: &mut RatMatrix, k: usize, l: usize) {
    let n = a.rows();
    for i in 0..n {
        let t = a[(i, k)].clone();
        a[(i, k)] = a[(i, l)].clone();
        a[(i, l)] = t;
    }
    for j in 0..n {
        let t = a[(k, j)].clone();
        a[(k, j)] = a[(l, j)].clone();
        a[(l, j)] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Rat::is_zero));
    }

    #[test]
    fn inverse_and_det() {
        let a = RatMatrix::from_rows(vec![
            vec![rat((1, 2)), rat(3), rat(0)],
            vec![rat(2), rat((-1, 3)), rat(5)],
            vec![rat(0), rat(7), rat((2, 5))],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(3));
        // cofactor expansion along the first row
        let d = rat((1, 2)) * (rat((-1, 3)) * rat((2, 5)) - rat(5) * rat(7)) - rat(3) * (rat(2) * rat((2, 5)));
        assert_eq!(a.det(), d);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), rat(0));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn det_sign_follows_row_swaps() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), rat(-1));
        assert_eq!(m(&[&[0, 0, 2], &[0, 3, 0], &[5, 0, 0]]).det(), rat(-30));
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&[rat(1), rat(3)]).is_none());
        let x = a.solve(&[rat(1), rat(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat(1), rat(2)]);
    }

    #[test]
    fn symmetric_diagonalization_preserves_determinant_class() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let d = diagonalize_symmetric(&a);
        assert_eq!(d, vec![rat(2), rat((-1, 2))]);
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec((-6i64..6, 1i64..4), n * n).prop_map(move |v| {
            let rows = v.chunks(n).map(|c| c.iter().map(|&(p, q)| rat((p, q))).collect()).collect();
            RatMatrix::from_rows(rows)
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(a in small_matrix(4)) {
            let k = a.kernel();
            prop_assert_eq!(k.len() + a.rank(), 4);
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(Rat::is_zero));
            }
        }

        #[test]
        fn det_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
            prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        }

        #[test]
        fn inverse_round_trip(a in small_matrix(4)) {
            match a.inverse() {
                Some(inv) => {
                    prop_assert_eq!(inv.mul(&a), RatMatrix::identity(4));
                    prop_assert!(!a.det().is_zero());
                }
                None => prop_assert!(a.det().is_zero()),
            }
        }
    }
}
