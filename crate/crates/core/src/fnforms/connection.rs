use crate::exactfield::Scalar;

use super::{Form, FormError, FormValue, Poly};

/// Section of the trivial bundle `ℝ^m × ℂ^k` with polynomial entries.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyVec(pub Vec<Poly>);

/// `k×k` matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix(pub Vec<Vec<Poly>>);

/// Matrix-valued form, e.g. a connection coefficient form or its curvature.
pub type MatrixForm = Form<PolyMatrix>;
/// Vector-valued form.
pub type VecForm = Form<PolyVec>;

impl PolyVec {
    pub fn zero(nvars: usize, k: usize) -> Self {
        PolyVec(vec![Poly::zero(nvars); k])
    }

    pub fn parse(entries: &[&str], nvars: usize) -> Result<Self, FormError> {
        entries.iter().map(|s| Poly::parse(s, nvars)).collect::<Result<_, _>>().map(PolyVec)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl PolyMatrix {
    pub fn zero(nvars: usize, k: usize) -> Self {
        PolyMatrix(vec![vec![Poly::zero(nvars); k]; k])
    }

    pub fn parse(rows: &[&[&str]], nvars: usize) -> Result<Self, FormError> {
        rows.iter()
            .map(|r| r.iter().map(|s| Poly::parse(s, nvars)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .map(PolyMatrix)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let k = self.size();
        let nvars = self.0[0][0].nvars();
        let mut out = PolyMatrix::zero(nvars, k);
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    out.0[i][j].add_assign(&self.0[i][l].mul(&other.0[l][j]));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &PolyVec) -> PolyVec {
        let nvars = v.0.first().map_or(0, Poly::nvars);
        PolyVec(
            self.0
                .iter()
                .map(|row| {
                    let mut acc = Poly::zero(nvars);
                    for (a, b) in row.iter().zip(&v.0) {
                        acc.add_assign(&a.mul(b));
                    }
                    acc
                })
                .collect(),
        )
    }
}

impl FormValue for PolyVec {
    fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }
    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_assign(b);
        }
    }
    fn scale(&self, s: &Scalar) -> Self {
        PolyVec(self.0.iter().map(|p| p.scale(s)).collect())
    }
    fn deriv(&self, k: usize) -> Self {
        PolyVec(self.0.iter().map(|p| p.deriv(k)).collect())
    }
    fn mul_poly(&self, q: &Poly) -> Self {
        PolyVec(self.0.iter().map(|p| p.mul(q)).collect())
    }
}

impl FormValue for PolyMatrix {
    fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Poly::is_zero)
    }
    fn add_assign(&mut self, other: &Self) {
        for (ra, rb) in self.0.iter_mut().zip(&other.0) {
            for (a, b) in ra.iter_mut().zip(rb) {
                a.add_assign(b);
            }
        }
    }
    fn scale(&self, s: &Scalar) -> Self {
        PolyMatrix(self.0.iter().map(|r| r.iter().map(|p| p.scale(s)).collect()).collect())
    }
    fn deriv(&self, k: usize) -> Self {
        PolyMatrix(self.0.iter().map(|r| r.iter().map(|p| p.deriv(k)).collect()).collect())
    }
    fn mul_poly(&self, q: &Poly) -> Self {
        PolyMatrix(self.0.iter().map(|r| r.iter().map(|p| p.mul(q)).collect()).collect())
    }
}

fn fibre_of_matrix(a: &MatrixForm) -> Option<usize> {
    a.components().next().map(|(_, m)| m.size())
}

fn fibre_of_vec(phi: &VecForm) -> Option<usize> {
    phi.components().next().map(|(_, v)| v.len())
}

fn check_connection(a: &MatrixForm) -> Result<(), FormError> {
    if a.degree() != 1 {
        return Err(FormError::NotConnection { degree: a.degree() });
    }
    Ok(())
}

/// `A ∧ B` with matrix multiplication of the coefficients.
pub fn matrix_wedge(a: &MatrixForm, b: &MatrixForm) -> Result<MatrixForm, FormError> {
    if let (Some(x), Some(y)) = (fibre_of_matrix(a), fibre_of_matrix(b)) {
        if x != y {
            return Err(FormError::FibreMismatch { left: x, right: y });
        }
    }
    a.wedge_with(b, PolyMatrix::mul)
}

/// `A ∧ φ` with the matrix acting on the vector coefficients.
pub fn matrix_wedge_vec(a: &MatrixForm, phi: &VecForm) -> Result<VecForm, FormError> {
    if let (Some(x), Some(y)) = (fibre_of_matrix(a), fibre_of_vec(phi)) {
        if x != y {
            return Err(FormError::FibreMismatch { left: x, right: y });
        }
    }
    a.wedge_with(phi, PolyMatrix::apply)
}

/// `d[A]φ = dφ + A∧φ`.
pub fn covariant_differential(a: &MatrixForm, phi: &VecForm) -> Result<VecForm, FormError> {
    check_connection(a)?;
    phi.d().add(&matrix_wedge_vec(a, phi)?)
}

/// `F = dA + A∧A`.
pub fn curvature(a: &MatrixForm) -> Result<MatrixForm, FormError> {
    check_connection(a)?;
    a.d().add(&matrix_wedge(a, a)?)
}

/// `dF + A∧F − F∧A`, identically zero for every connection.
pub fn bianchi_residual(a: &MatrixForm) -> Result<MatrixForm, FormError> {
    let f = curvature(a)?;
    f.d().add(&matrix_wedge(a, &f)?)?.sub(&matrix_wedge(&f, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nilpotent_connection(dim: usize) -> MatrixForm {
        // A = x dy · [[0,1],[0,0]]
        Form::basis(dim, &[1], PolyMatrix::parse(&[&["0", "x"], &["0", "0"]], dim).unwrap())
    }

    #[test]
    fn flat_covariant_differential_is_d() {
        let a = MatrixForm::zero(2, 1);
        let phi = Form::basis(2, &[], PolyVec::parse(&["x", "0"], 2).unwrap());
        let expected = Form::basis(2, &[0], PolyVec::parse(&["1", "0"], 2).unwrap());
        assert_eq!(covariant_differential(&a, &phi).unwrap(), expected);
    }

    #[test]
    fn nilpotent_connection_on_constant_section() {
        let a = nilpotent_connection(2);
        let phi = Form::basis(2, &[], PolyVec::parse(&["0", "1"], 2).unwrap());
        let expected = Form::basis(2, &[1], PolyVec::parse(&["x", "0"], 2).unwrap());
        assert_eq!(covariant_differential(&a, &phi).unwrap(), expected);
    }

    #[test]
    fn curvature_examples() {
        let a = nilpotent_connection(2);
        let expected = Form::basis(2, &[0, 1], PolyMatrix::parse(&[&["0", "1"], &["0", "0"]], 2).unwrap());
        assert_eq!(curvature(&a).unwrap(), expected);
        assert!(curvature(&MatrixForm::zero(2, 1)).unwrap().is_zero());
        let c = Form::basis(2, &[0], PolyMatrix::parse(&[&["1", "2"], &["3", "4"]], 2).unwrap());
        assert!(curvature(&c).unwrap().is_zero());
    }

    #[test]
    fn bianchi_and_ricci_on_a_mixed_connection() {
        let a = Form::basis(3, &[1], PolyMatrix::parse(&[&["x", "z"], &["1", "y^2"]], 3).unwrap())
            .add(&Form::basis(3, &[2], PolyMatrix::parse(&[&["0", "x*y"], &["z", "2"]], 3).unwrap()))
            .unwrap();
        assert!(bianchi_residual(&nilpotent_connection(3)).unwrap().is_zero());
        assert!(bianchi_residual(&a).unwrap().is_zero());
        let phi = Form::basis(3, &[0], PolyVec::parse(&["y*z", "x"], 3).unwrap());
        let lhs = covariant_differential(&a, &covariant_differential(&a, &phi).unwrap()).unwrap();
        let rhs = matrix_wedge_vec(&curvature(&a).unwrap(), &phi).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fibre_mismatch_is_reported() {
        let a = nilpotent_connection(2);
        let phi = Form::basis(2, &[], PolyVec::parse(&["1", "0", "0"], 2).unwrap());
        assert_eq!(covariant_differential(&a, &phi), Err(FormError::FibreMismatch { left: 2, right: 3 }));
    }
}
