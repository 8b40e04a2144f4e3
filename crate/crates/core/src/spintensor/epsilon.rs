use crate::exactfield::Scalar;

use super::{ScaledTensor, SpinError, Variance};

/// Normalized complex symplectic form on `U`, fixed up to a phase by
/// `ε(e₁, e₂) = 1` in a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon {
    tensor: ScaledTensor,
}

impl Epsilon {
    /// `ε(e₁, e₂) = 1` in the standard component basis.
    pub fn standard() -> Self {
        Epsilon::with_phase(&Scalar::one())
    }

    /// `phase · ε_standard`.
    pub fn with_phase(phase: &Scalar) -> Self {
        let slots = vec![Variance::UDual, Variance::UDual];
        let mut t = ScaledTensor::zero(slots);
        t.set(vec![1, 2], phase.clone());
        t.set(vec![2, 1], -phase);
        Epsilon { tensor: t }
    }

    /// The symplectic form with `ε(b₁, b₂) = 1` for the given basis.
    pub fn from_basis(b1: &ScaledTensor, b2: &ScaledTensor) -> Result<Self, SpinError> {
        let det = Epsilon::standard().eval(b1, b2)?;
        let inv = det.inv().ok_or(SpinError::DegenerateBasis)?;
        Ok(Epsilon::with_phase(&inv))
    }

    pub fn tensor(&self) -> &ScaledTensor {
        &self.tensor
    }

    /// Overall factor relative to the standard form, i.e. `ε(e₁, e₂)`.
    pub fn phase(&self) -> Scalar {
        self.tensor.get(&[1, 2])
    }

    /// Component `ε_{ab}` with `a, b ∈ {1, 2}`.
    pub fn component(&self, a: u8, b: u8) -> Scalar {
        self.tensor.get(&[a, b])
    }

    /// `ε(u, v)` for `u, v ∈ U`.
    pub fn eval(&self, u: &ScaledTensor, v: &ScaledTensor) -> Result<Scalar, SpinError> {
        u.expect_slots(&[Variance::U])?;
        v.expect_slots(&[Variance::U])?;
        let [u1, u2] = u.components();
        let [v1, v2] = v.components();
        Ok(self.phase() * (u1 * v2 - u2 * v1))
    }

    /// `ε̄(ū, v̄)` for `ū, v̄ ∈ Ū`.
    pub fn eval_bar(&self, u: &ScaledTensor, v: &ScaledTensor) -> Result<Scalar, SpinError> {
        u.expect_slots(&[Variance::UBar])?;
        v.expect_slots(&[Variance::UBar])?;
        Ok(self.eval(&u.conj(), &v.conj())?.conj())
    }

    /// `ε♭ : U → U*`, `⟨ε♭(u), v⟩ = ε(u, v)`.
    pub fn flat(&self, u: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
        u.expect_slots(&[Variance::U])?;
        // ε♭(u)_b = Σ_a u^a ε_{ab}
        self.tensor.tensor(u).contract(0, 2)
    }

    /// `ε̄♭ : Ū → Ū*`.
    pub fn flat_bar(&self, ubar: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
        ubar.expect_slots(&[Variance::UBar])?;
        Ok(self.flat(&ubar.conj())?.conj())
    }

    /// `ε# ≡ −(ε♭)⁻¹ : U* → U`.
    pub fn sharp(&self, lambda: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
        lambda.expect_slots(&[Variance::UDual])?;
        // ε♭(u) = (−u² p, u¹ p) for phase p, so (ε♭)⁻¹(λ) = (λ₂/p, −λ₁/p).
        let p = self.phase();
        let [l1, l2] = lambda.components();
        let pinv = p.inv().expect("ε has nonzero phase");
        let inv = [&l2 * &pinv, -(&l1 * &pinv)];
        let unit = lambda.unit().combine(self.tensor.unit().dual());
        Ok(ScaledTensor::vector(Variance::U, inv).scale(&Scalar::from_int(-1)).with_unit(unit))
    }

    /// `ε̄# : Ū* → Ū`.
    pub fn sharp_bar(&self, lbar: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
        lbar.expect_slots(&[Variance::UBarDual])?;
        Ok(self.sharp(&lbar.conj())?.conj())
    }
}

/// `ε♭` with the standard normalization.
pub fn eps_flat(u: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
    Epsilon::standard().flat(u)
}

/// `ε#` with the standard normalization.
pub fn eps_sharp(lambda: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
    Epsilon::standard().sharp(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: u8) -> ScaledTensor {
        ScaledTensor::basis(Variance::U, k)
    }

    #[test]
    fn flat_of_e1_is_second_dual() {
        let f = eps_flat(&e(1)).unwrap();
        assert_eq!(f.slots(), &[Variance::UDual]);
        assert_eq!(f.components(), [Scalar::zero(), Scalar::one()]);
        assert_eq!(f.pair(&e(2)).unwrap(), Scalar::one());
        assert_eq!(f.unit(), crate::exactfield::UnitExponent::new(-1, 2));
    }

    #[test]
    fn sharp_after_flat_is_minus_identity() {
        let back = eps_sharp(&eps_flat(&e(1)).unwrap()).unwrap();
        assert_eq!(back, e(1).scale(&Scalar::from_int(-1)));
        let z = ScaledTensor::zero(vec![Variance::U]);
        assert!(eps_flat(&z).unwrap().is_zero());
    }

    #[test]
    fn antisymmetric_and_phase_scaled() {
        let eps = Epsilon::with_phase(&Scalar::i());
        let u = ScaledTensor::vector(Variance::U, [Scalar::from_int(2), Scalar::i()]);
        let v = ScaledTensor::vector(Variance::U, [Scalar::sqrt2(), Scalar::from_int(-3)]);
        assert_eq!(eps.eval(&u, &v).unwrap(), -eps.eval(&v, &u).unwrap());
        assert_eq!(eps.flat(&u).unwrap().pair(&v).unwrap(), eps.eval(&u, &v).unwrap());
        assert_eq!(eps.sharp(&eps.flat(&u).unwrap()).unwrap(), u.scale(&Scalar::from_int(-1)));
    }

    #[test]
    fn from_basis_normalizes() {
        let b1 = ScaledTensor::vector(Variance::U, [Scalar::from_int(2), Scalar::one()]);
        let b2 = ScaledTensor::vector(Variance::U, [Scalar::i(), Scalar::from_int(3)]);
        let eps = Epsilon::from_basis(&b1, &b2).unwrap();
        assert!(eps.eval(&b1, &b2).unwrap().is_one());
        assert_eq!(Epsilon::from_basis(&b1, &b1.scale(&Scalar::i())), Err(SpinError::DegenerateBasis));
    }
}
