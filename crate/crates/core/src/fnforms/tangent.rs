use crate::exactfield::Scalar;

use super::{FormError, Poly, ScalarForm};

/// Tangent-valued `r`-form `Σ_k ω_k ⊗ ∂_k`; `axes[k]` is the scalar form
/// multiplying `∂_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct TangentForm {
    dim: usize,
    degree: usize,
    axes: Vec<ScalarForm>,
}

/// A vector field is a tangent-valued 0-form; this is its component list.
pub type VectorField = Vec<Poly>;

impl TangentForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        TangentForm { dim, degree, axes: (0..dim).map(|_| ScalarForm::zero(dim, degree)).collect() }
    }

    /// `λ ⊗ ∂_axis`.
    pub fn along(lambda: &ScalarForm, axis: usize) -> Self {
        let mut t = TangentForm::zero(lambda.dim(), lambda.degree());
        t.axes[axis] = lambda.clone();
        t
    }

    /// `λ ⊗ u` for a general vector field `u`.
    pub fn tensor(lambda: &ScalarForm, u: &[Poly]) -> Self {
        assert_eq!(u.len(), lambda.dim());
        TangentForm {
            dim: lambda.dim(),
            degree: lambda.degree(),
            axes: u.iter().map(|uk| lambda.mul_poly(uk)).collect(),
        }
    }

    pub fn from_axes(axes: Vec<ScalarForm>) -> Result<Self, FormError> {
        let dim = axes.len();
        let degree = axes.first().map_or(0, ScalarForm::degree);
        if axes.iter().any(|a| a.dim() != dim) {
            return Err(FormError::ChartMismatch { left: dim, right: axes.iter().map(ScalarForm::dim).max().unwrap_or(0) });
        }
        if let Some(bad) = axes.iter().find(|a| a.degree() != degree) {
            return Err(FormError::DegreeMismatch { left: degree, right: bad.degree() });
        }
        Ok(TangentForm { dim, degree, axes })
    }

    /// A vector field as a tangent-valued 0-form.
    pub fn vector_field(u: &[Poly]) -> Self {
        let dim = u.len();
        TangentForm {
            dim,
            degree: 0,
            axes: u.iter().map(|p| ScalarForm::basis(dim, &[], p.clone())).collect(),
        }
    }

    /// Components of a tangent-valued 0-form.
    pub fn as_vector_field(&self) -> Option<VectorField> {
        if self.degree != 0 {
            return None;
        }
        Some(self.axes.iter().map(|a| a.get(0).cloned().unwrap_or_else(|| Poly::zero(self.dim))).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn axes(&self) -> &[ScalarForm] {
        &self.axes
    }

    pub fn is_zero(&self) -> bool {
        self.axes.iter().all(ScalarForm::is_zero)
    }

    pub fn add(&self, other: &TangentForm) -> Result<TangentForm, FormError> {
        if self.dim != other.dim {
            return Err(FormError::ChartMismatch { left: self.dim, right: other.dim });
        }
        let axes = self.axes.iter().zip(&other.axes).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Ok(TangentForm { dim: self.dim, degree: self.degree, axes })
    }

    pub fn sub(&self, other: &TangentForm) -> Result<TangentForm, FormError> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> TangentForm {
        TangentForm { dim: self.dim, degree: self.degree, axes: self.axes.iter().map(|a| a.scale(s)).collect() }
    }
}

/// Lie bracket `[u, v]^k = u^j ∂_j v^k − v^j ∂_j u^k`.
pub fn lie_bracket(u: &[Poly], v: &[Poly]) -> VectorField {
    let dim = u.len();
    (0..dim)
        .map(|k| {
            let mut acc = Poly::zero(dim);
            for j in 0..dim {
                acc.add_assign(&u[j].mul(&v[k].deriv(j)));
                acc.add_assign(&v[j].mul(&u[k].deriv(j)).neg());
            }
            acc
        })
        .collect()
}

/// Lie derivative of a scalar (or vector/matrix-valued) form along a vector
/// field given as a tangent-valued 0-form.
pub fn lie_derivative<T: super::FormValue>(u: &TangentForm, omega: &super::Form<T>) -> Result<super::Form<T>, FormError> {
    let field = u.as_vector_field().ok_or(FormError::NotVectorField { degree: u.degree() })?;
    if field.len() != omega.dim() {
        return Err(FormError::ChartMismatch { left: field.len(), right: omega.dim() });
    }
    Ok(omega.lie(&field))
}

fn sign_pow(r: usize) -> Scalar {
    Scalar::from_int(if r.is_multiple_of(2) { 1 } else { -1 })
}

/// The bracket of two decomposables `λ⊗u` and `μ⊗v`:
///
/// `λ∧μ⊗[u,v] + λ∧(L[u]μ)⊗v − (L[v]λ)∧μ⊗u + (−1)^r (v⌋λ)∧dμ⊗u + (−1)^r dλ∧(u⌋μ)⊗v`
///
/// with `r = deg λ`.
pub fn fnb_decomposable(
    lambda: &ScalarForm,
    u: &[Poly],
    mu: &ScalarForm,
    v: &[Poly],
) -> Result<TangentForm, FormError> {
    let dim = lambda.dim();
    let r = lambda.degree();
    let out_deg = r + mu.degree();
    if out_deg > dim {
        return Err(FormError::DegreeOverflow { r, s: mu.degree(), dim });
    }
    let sr = sign_pow(r);
    let mut acc = TangentForm::zero(dim, out_deg);
    let uv = lie_bracket(u, v);
    acc = acc.add(&TangentForm::tensor(&lambda.wedge(mu)?, &uv))?;
    acc = acc.add(&TangentForm::tensor(&lambda.wedge(&mu.lie(u))?, v))?;
    acc = acc.sub(&TangentForm::tensor(&lambda.lie(v).wedge(mu)?, u))?;
    if r > 0 {
        acc = acc.add(&TangentForm::tensor(&lambda.interior(v).wedge(&mu.d())?.scale(&sr), u))?;
    }
    if mu.degree() > 0 {
        acc = acc.add(&TangentForm::tensor(&lambda.d().wedge(&mu.interior(u))?.scale(&sr), v))?;
    }
    Ok(acc)
}

fn coordinate_field(dim: usize, k: usize) -> VectorField {
    (0..dim).map(|j| if j == k { Poly::one(dim) } else { Poly::zero(dim) }).collect()
}

/// Froelicher–Nijenhuis bracket, extended by bilinearity from the
/// decomposable rule over the coordinate frame `∂_k`.
pub fn fn_bracket(zeta: &TangentForm, xi: &TangentForm) -> Result<TangentForm, FormError> {
    if zeta.dim != xi.dim {
        return Err(FormError::ChartMismatch { left: zeta.dim, right: xi.dim });
    }
    let dim = zeta.dim;
    if zeta.degree + xi.degree > dim {
        return Err(FormError::DegreeOverflow { r: zeta.degree, s: xi.degree, dim });
    }
    let mut acc = TangentForm::zero(dim, zeta.degree + xi.degree);
    for (i, lambda) in zeta.axes.iter().enumerate() {
        if lambda.is_zero() {
            continue;
        }
        for (j, mu) in xi.axes.iter().enumerate() {
            if mu.is_zero() {
                continue;
            }
            let term = fnb_decomposable(lambda, &coordinate_field(dim, i), mu, &coordinate_field(dim, j))?;
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 2).unwrap()
    }

    #[test]
    fn vector_fields_give_lie_bracket() {
        // fnb(x∂y, ∂x) = [x∂y, ∂x] = −∂y
        let a = TangentForm::vector_field(&[p("0"), p("x")]);
        let b = TangentForm::vector_field(&[p("1"), p("0")]);
        let out = fn_bracket(&a, &b).unwrap();
        assert_eq!(out, TangentForm::vector_field(&[p("0"), p("-1")]));
    }

    #[test]
    fn one_form_against_vector_field() {
        // fnb(x dy⊗∂x, ∂x) = −dy⊗∂x
        let zeta = TangentForm::along(&ScalarForm::term(2, &[1], "x").unwrap(), 0);
        let xi = TangentForm::vector_field(&[p("1"), p("0")]);
        let out = fn_bracket(&zeta, &xi).unwrap();
        let expected = TangentForm::along(&ScalarForm::term(2, &[1], "-1").unwrap(), 0);
        assert_eq!(out, expected);
    }

    #[test]
    fn self_bracket_of_constant_form_vanishes() {
        let z = TangentForm::along(&ScalarForm::term(2, &[0], "1").unwrap(), 0);
        assert!(fn_bracket(&z, &z).unwrap().is_zero());
    }

    #[test]
    fn degree_overflow_is_an_error() {
        let z = TangentForm::along(&ScalarForm::term(2, &[0], "1").unwrap(), 0);
        let w = TangentForm::along(&ScalarForm::term(2, &[0, 1], "1").unwrap(), 1);
        assert_eq!(fn_bracket(&z, &w), Err(FormError::DegreeOverflow { r: 1, s: 2, dim: 2 }));
    }
}
