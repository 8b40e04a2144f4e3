//! Dense square-or-rectangular matrices over [`Scalar`] with exact elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::exactfield::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn adjoint(&self) -> Matrix {
        self.conj().transpose()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)].clone()).sum()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| &self[(r, c)] * &v[c]).sum())
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().unwrap();
            for c in 0..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in 0..m.cols {
                        let t = &f * &m[(row, c)];
                        m[(r, c)] -= &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det *= &piv;
            let inv = piv.inv().unwrap();
            for r in col + 1..m.rows {
                if !m[(r, col)].is_zero() {
                    let f = &m[(r, col)] * &inv;
                    for c in col..m.cols {
                        let t = &f * &m[(col, c)];
                        m[(r, c)] -= &t;
                    }
                }
            }
        }
        det
    }

    /// Coefficients `[c₀, …, cₙ]` of `det(x·𝟙 − M) = Σ cₖ xᵏ` (Faddeev–LeVerrier).
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m_k = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m_k;
            for d in 0..n {
                next[(d, d)] += &coeffs[n - k + 1];
            }
            m_k = next;
            let am = self * &m_k;
            coeffs[n - k] = -(am.trace() / Scalar::from_int(k as i64));
        }
        coeffs
    }
}

/// Number of sign changes in a sequence of real scalars, zeros skipped.
/// `None` if some entry is not real.
pub fn sign_changes(coeffs: &[Scalar]) -> Option<usize> {
    let mut last = None;
    let mut changes = 0;
    for c in coeffs {
        let s = c.real_sign()?;
        if s == std::cmp::Ordering::Equal {
            continue;
        }
        if last.is_some_and(|l| l != s) {
            changes += 1;
        }
        last = Some(s);
    }
    Some(changes)
}

/// Inertia `(positive, negative)` of a Hermitian matrix via Descartes' rule
/// on its characteristic polynomial (exact for real-rooted polynomials).
pub fn hermitian_inertia(m: &Matrix) -> Option<(usize, usize)> {
    let p = m.char_poly();
    // coefficients are listed low to high; p(−x) flips odd-degree terms.
    let pos = sign_changes(&p)?;
    let mirrored: Vec<Scalar> =
        p.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect();
    let neg = sign_changes(&mirrored)?;
    Some((pos, neg))
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).map(|k| &self[(r, k)] * &rhs[(k, c)]).sum()
        })
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for Matrix {
    /// Row-major, one bracketed row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn inverse_rank_det() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]);
        assert_eq!(m.det(), s(1));
        assert_eq!(&m * &m.inverse().unwrap(), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.det(), s(0));
    }

    #[test]
    fn char_poly_of_swap_block() {
        // [[0,I],[I,0]] has char poly (x²−1)² = 1 − 2x² + x⁴
        let k = Matrix::from_fn(4, 4, |r, c| if (r + 2) % 4 == c { s(1) } else { s(0) });
        assert_eq!(k.char_poly(), vec![s(1), s(0), s(-2), s(0), s(1)]);
        assert_eq!(hermitian_inertia(&k), Some((2, 2)));
    }

    #[test]
    fn char_poly_constant_term_is_signed_det() {
        let m = Matrix::from_rows(vec![
            vec![s(1), Scalar::i(), s(0)],
            vec![s(2), s(3), Scalar::sqrt2()],
            vec![s(0), s(-1), s(4)],
        ]);
        let p = m.char_poly();
        assert_eq!(p[0], -m.det());
        assert_eq!(p[2], -m.trace());
    }
}
