use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::exactfield::Scalar;

use super::{FormError, Poly, MAX_DIM};

/// Coefficient space of a differential form: polynomials, or vectors and
/// matrices of polynomials.
pub trait FormValue: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scale(&self, s: &Scalar) -> Self;
    fn deriv(&self, k: usize) -> Self;
    fn mul_poly(&self, p: &Poly) -> Self;
}

impl FormValue for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        Poly::add_assign(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        Poly::scale(self, s)
    }
    fn deriv(&self, k: usize) -> Self {
        Poly::deriv(self, k)
    }
    fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(p)
    }
}

/// Axis subset of a basis form `dx^{i₁}∧…∧dx^{i_r}`, bit `k` for axis `k`.
pub type AxisSet = u8;

pub fn axes_of(mask: AxisSet) -> impl Iterator<Item = usize> {
    (0..8).filter(move |k| mask & (1 << k) != 0)
}

fn below(mask: AxisSet, k: usize) -> u32 {
    (mask & ((1u8 << k) - 1)).count_ones()
}

fn parity(n: u32) -> Scalar {
    Scalar::from_int(if n.is_multiple_of(2) { 1 } else { -1 })
}

/// Sign of `dx^I ∧ dx^J` relative to `dx^{I∪J}`, `None` if they overlap.
pub fn wedge_sign(i: AxisSet, j: AxisSet) -> Option<Scalar> {
    if i & j != 0 {
        return None;
    }
    let inversions: u32 = axes_of(j).map(|b| (u32::from(i) >> (b + 1)).count_ones()).sum();
    Some(parity(inversions))
}

/// Differential form of fixed degree on a chart `ℝ^dim`, components stored on
/// strictly increasing axis subsets. Zero components are absent.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<T> {
    dim: usize,
    degree: usize,
    comps: BTreeMap<AxisSet, T>,
}

/// Scalar-valued form with polynomial coefficients.
pub type ScalarForm = Form<Poly>;

impl<T: FormValue> Form<T> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "chart dimension must be in 1..=4");
        Form { dim, degree, comps: BTreeMap::new() }
    }

    /// Single component `value · dx^axes` with `axes` in any order.
    pub fn basis(dim: usize, axes: &[usize], value: T) -> Self {
        let mut f = Form::zero(dim, axes.len());
        let mut mask: AxisSet = 0;
        let mut sign = Scalar::one();
        for &a in axes {
            assert!(a < dim, "axis out of range");
            match wedge_sign(mask, 1 << a) {
                Some(s) => sign *= &s,
                None => return f,
            }
            mask |= 1 << a;
        }
        f.add_component(mask, &value.scale(&sign));
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (AxisSet, &T)> {
        self.comps.iter().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, mask: AxisSet) -> Option<&T> {
        self.comps.get(&mask)
    }

    pub fn add_component(&mut self, mask: AxisSet, value: &T) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if value.is_zero() {
            return;
        }
        match self.comps.entry(mask) {
            Entry::Vacant(v) => {
                v.insert(value.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(value);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), FormError> {
        if self.dim != other.dim {
            return Err(FormError::ChartMismatch { left: self.dim, right: other.dim });
        }
        if self.degree != other.degree {
            return Err(FormError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (m, v) in &other.comps {
            out.add_component(*m, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FormError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Form::zero(self.dim, self.degree);
        for (m, v) in &self.comps {
            out.add_component(*m, &v.scale(s));
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        let mut out = Form::zero(self.dim, self.degree);
        for (m, v) in &self.comps {
            out.add_component(*m, &v.mul_poly(p));
        }
        out
    }

    /// Exterior derivative; a top-degree form maps to zero.
    pub fn d(&self) -> Self {
        let mut out = Form::zero(self.dim, self.degree + 1);
        for (&mask, v) in &self.comps {
            for k in 0..self.dim {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let dv = v.deriv(k);
                if !dv.is_zero() {
                    out.add_component(mask | 1 << k, &dv.scale(&parity(below(mask, k))));
                }
            }
        }
        out
    }

    /// Interior product `i[u]` with a vector field (`u.len() == dim`).
    pub fn interior(&self, u: &[Poly]) -> Self {
        assert_eq!(u.len(), self.dim);
        if self.degree == 0 {
            return Form::zero(self.dim, 0);
        }
        let mut out = Form::zero(self.dim, self.degree - 1);
        for (&mask, v) in &self.comps {
            for (p, a) in axes_of(mask).enumerate() {
                if u[a].is_zero() {
                    continue;
                }
                out.add_component(mask & !(1 << a), &v.mul_poly(&u[a]).scale(&parity(p as u32)));
            }
        }
        out
    }

    /// Lie derivative along a vector field by the coordinate formula
    /// `L[u](f dx^I) = u(f) dx^I + f Σ_p dx^{i₁}∧…∧d(u^{i_p})∧…∧dx^{i_r}`.
    pub fn lie(&self, u: &[Poly]) -> Self {
        assert_eq!(u.len(), self.dim);
        let mut out = Form::zero(self.dim, self.degree);
        for (&mask, v) in &self.comps {
            for (k, uk) in u.iter().enumerate() {
                if !uk.is_zero() {
                    out.add_component(mask, &v.deriv(k).mul_poly(uk));
                }
            }
            for (p, a) in axes_of(mask).enumerate() {
                let rest = mask & !(1 << a);
                for k in 0..self.dim {
                    if rest & (1 << k) != 0 {
                        continue;
                    }
                    let duk = u[a].deriv(k);
                    if duk.is_zero() {
                        continue;
                    }
                    // dx^k sits at position p; move it to the front, then sort into `rest`.
                    let sign = parity(p as u32 + below(rest, k));
                    out.add_component(rest | 1 << k, &v.mul_poly(&duk).scale(&sign));
                }
            }
        }
        out
    }

    /// Wedge product with a bilinear coefficient pairing.
    pub fn wedge_with<U: FormValue, V: FormValue>(
        &self,
        other: &Form<U>,
        mul: impl Fn(&T, &U) -> V,
    ) -> Result<Form<V>, FormError> {
        if self.dim != other.dim {
            return Err(FormError::ChartMismatch { left: self.dim, right: other.dim });
        }
        let mut out = Form::zero(self.dim, self.degree + other.degree);
        if self.degree + other.degree > self.dim {
            return Ok(out);
        }
        for (&a, x) in &self.comps {
            for (&b, y) in &other.comps {
                if let Some(s) = wedge_sign(a, b) {
                    let v = mul(x, y);
                    if !v.is_zero() {
                        out.add_component(a | b, &v.scale(&s));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn map<V: FormValue>(&self, f: impl Fn(&T) -> V) -> Form<V> {
        let mut out = Form::zero(self.dim, self.degree);
        for (&m, v) in &self.comps {
            out.add_component(m, &f(v));
        }
        out
    }
}

impl Form<Poly> {
    /// Scalar wedge product.
    pub fn wedge(&self, other: &Form<Poly>) -> Result<Form<Poly>, FormError> {
        self.wedge_with(other, |a, b| a.mul(b))
    }

    /// `f · dx^{axes}` from a polynomial string.
    pub fn term(dim: usize, axes: &[usize], poly: &str) -> Result<Self, FormError> {
        Ok(Form::basis(dim, axes, Poly::parse(poly, dim)?))
    }

    /// Wedge with a form carrying vector- or matrix-valued coefficients.
    pub fn wedge_value<V: FormValue>(&self, other: &Form<V>) -> Result<Form<V>, FormError> {
        self.wedge_with(other, |p, v| v.mul_poly(p))
    }
}

/// `d` on any form (scalar-, vector- or matrix-valued).
pub fn ext_derivative<T: FormValue>(omega: &Form<T>) -> Form<T> {
    omega.d()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_sign_counts_inversions() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(Scalar::one()));
        assert_eq!(wedge_sign(0b10, 0b01), Some(Scalar::from_int(-1)));
        assert_eq!(wedge_sign(0b110, 0b001), Some(Scalar::one()));
        assert_eq!(wedge_sign(0b100, 0b011), Some(Scalar::one()));
        assert_eq!(wedge_sign(0b010, 0b101), Some(Scalar::from_int(-1)));
        assert_eq!(wedge_sign(0b11, 0b10), None);
    }

    #[test]
    fn d_examples() {
        // d(x dy) = dx∧dy
        let w = ScalarForm::term(2, &[1], "x").unwrap();
        assert_eq!(w.d(), ScalarForm::term(2, &[0, 1], "1").unwrap());
        // top degree maps to zero
        assert!(ScalarForm::term(2, &[0, 1], "x*y").unwrap().d().is_zero());
        // d(x²y dx) = x² dy∧dx = −x² dx∧dy
        let w = ScalarForm::term(2, &[0], "x^2*y").unwrap();
        assert_eq!(w.d(), ScalarForm::term(2, &[0, 1], "-x^2").unwrap());
    }

    #[test]
    fn lie_examples() {
        let dx = |f: &str| vec![Poly::parse(f, 2).unwrap(), Poly::zero(2)];
        let dy = vec![Poly::zero(2), Poly::one(2)];
        let w = ScalarForm::term(2, &[1], "x").unwrap();
        assert_eq!(w.lie(&dx("1")), ScalarForm::term(2, &[1], "1").unwrap());
        assert!(w.lie(&dy).is_zero());
        let ddx = ScalarForm::term(2, &[0], "1").unwrap();
        assert_eq!(ddx.lie(&dx("x")), ddx);
    }

    #[test]
    fn basis_sorts_axes_with_sign() {
        let a = ScalarForm::basis(3, &[2, 0], Poly::one(3));
        assert_eq!(a, ScalarForm::basis(3, &[0, 2], Poly::one(3)).neg());
        assert!(ScalarForm::basis(3, &[1, 1], Poly::one(3)).is_zero());
    }
}
