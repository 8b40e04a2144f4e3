//! Dirac spinors `W = U ⊕ Ū*`: the Dirac map γ, the Hermitian form k,
//! charge conjugation, and the structures an observer induces on `W`.
//!
//! All 4-component arrays and 4×4 matrices use the induced basis ordering
//! `(e₁, e₂, ē*¹, ē*²)` for `W` and `(e*¹, e*², ē₁, ē₂)` for `W*`.

use std::fmt;

use thiserror::Error;

use crate::exactfield::{Scalar, UnitExponent};
use crate::matrix::Matrix;
use crate::spintensor::{Epsilon, Metric, MinkVector, ScaledTensor, SpinError, Variance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiracError {
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error("observer is not normalized: g(tau,tau) = {norm}")]
    NotNormalized { norm: Box<Scalar> },
    #[error("observer is past-oriented")]
    PastOriented,
    #[error("tensor is not a positive Hermitian form: {reason}")]
    NotPositive { reason: &'static str },
}

/// Element `(u, λ̄)` of `W = U ⊕ Ū*`.
///
/// `unit` is the offset from the natural weights of the two summands
/// (`+1/2` for `U`, `−1/2` for `Ū*`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiracVector {
    comps: [Scalar; 4],
    unit: UnitExponent,
}

impl DiracVector {
    pub fn new(comps: [Scalar; 4]) -> Self {
        DiracVector { comps, unit: UnitExponent::ZERO }
    }

    pub fn from_parts(u: &ScaledTensor, lbar: &ScaledTensor) -> Result<Self, SpinError> {
        u.expect_slots(&[Variance::U])?;
        lbar.expect_slots(&[Variance::UBarDual])?;
        let offset_u = u.unit().combine(-Variance::U.unit());
        let offset_l = lbar.unit().combine(-Variance::UBarDual.unit());
        if offset_u != offset_l {
            return Err(SpinError::Unit { left: u.unit(), right: lbar.unit() });
        }
        let [a, b] = u.components();
        let [c, d] = lbar.components();
        Ok(DiracVector { comps: [a, b, c, d], unit: offset_u })
    }

    pub fn basis(k: usize) -> Self {
        let mut comps: [Scalar; 4] = Default::default();
        comps[k] = Scalar::one();
        DiracVector::new(comps)
    }

    pub fn comps(&self) -> &[Scalar; 4] {
        &self.comps
    }

    pub fn unit(&self) -> UnitExponent {
        self.unit
    }

    pub fn u_part(&self) -> ScaledTensor {
        ScaledTensor::vector(Variance::U, [self.comps[0].clone(), self.comps[1].clone()])
            .with_unit(Variance::U.unit().combine(self.unit))
    }

    pub fn lbar_part(&self) -> ScaledTensor {
        ScaledTensor::vector(Variance::UBarDual, [self.comps[2].clone(), self.comps[3].clone()])
            .with_unit(Variance::UBarDual.unit().combine(self.unit))
    }

    pub fn scale(&self, s: &Scalar) -> DiracVector {
        DiracVector { comps: self.comps.clone().map(|c| c * s), unit: self.unit }
    }

    pub fn add(&self, other: &DiracVector) -> DiracVector {
        let mut comps = self.comps.clone();
        for (c, o) in comps.iter_mut().zip(&other.comps) {
            *c += o;
        }
        DiracVector { comps, unit: self.unit }
    }

    pub fn sub(&self, other: &DiracVector) -> DiracVector {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for DiracVector {
    /// `dirac (u: [c1, c2], lbar: [c3, c4])`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.comps;
        write!(f, "dirac (u: [{}, {}], lbar: [{}, {}])", c[0], c[1], c[2], c[3])
    }
}

impl fmt::Debug for DiracVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of `W* = U* ⊕ Ū`, components in the basis `(e*¹, e*², ē₁, ē₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiracCovector {
    comps: [Scalar; 4],
}

impl DiracCovector {
    pub fn new(comps: [Scalar; 4]) -> Self {
        DiracCovector { comps }
    }

    pub fn comps(&self) -> &[Scalar; 4] {
        &self.comps
    }

    /// `⟨(λ, ū), (v, μ̄)⟩ = ⟨λ, v⟩ + ⟨μ̄, ū⟩`.
    pub fn pair(&self, psi: &DiracVector) -> Scalar {
        self.comps.iter().zip(psi.comps()).map(|(a, b)| a * b).sum()
    }

    /// Precomposition with an endomorphism of `W`.
    pub fn compose(&self, m: &EndW) -> DiracCovector {
        let comps = std::array::from_fn(|j| (0..4).map(|i| &self.comps[i] * &m.matrix()[(i, j)]).sum());
        DiracCovector { comps }
    }
}

/// Endomorphism of `W` as a 4×4 matrix in the induced basis; `unit` is the
/// length-unit weight it adds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EndW {
    m: Matrix,
    unit: UnitExponent,
}

impl EndW {
    pub fn from_matrix(m: Matrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (4, 4));
        EndW { m, unit: UnitExponent::ZERO }
    }

    pub fn identity() -> Self {
        EndW::from_matrix(Matrix::identity(4))
    }

    pub fn zero() -> Self {
        EndW::from_matrix(Matrix::zeros(4, 4))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn unit(&self) -> UnitExponent {
        self.unit
    }

    pub fn compose(&self, other: &EndW) -> EndW {
        EndW { m: &self.m * &other.m, unit: self.unit.combine(other.unit) }
    }

    pub fn add(&self, other: &EndW) -> EndW {
        EndW { m: &self.m + &other.m, unit: self.unit }
    }

    pub fn sub(&self, other: &EndW) -> EndW {
        EndW { m: &self.m - &other.m, unit: self.unit }
    }

    pub fn scale(&self, s: &Scalar) -> EndW {
        EndW { m: self.m.scale(s), unit: self.unit }
    }

    pub fn apply(&self, psi: &DiracVector) -> DiracVector {
        let out = self.m.apply(psi.comps());
        DiracVector { comps: out.try_into().unwrap(), unit: psi.unit.combine(self.unit) }
    }

    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &EndW) -> EndW {
        self.compose(other).add(&other.compose(self))
    }
}

impl fmt::Display for EndW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

impl fmt::Debug for EndW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// `γ[p⊗q̄](u, λ̄) = √2 (⟨λ̄, q̄⟩ p, ε(p, u) ε̄♭(q̄))` for a decomposable
/// argument.
fn gamma_decomposable(eps: &Epsilon, p: &ScaledTensor, qbar: &ScaledTensor, psi: &DiracVector) -> Result<DiracVector, SpinError> {
    let r2 = Scalar::sqrt2();
    let top = p.scale(&(&r2 * psi.lbar_part().pair(qbar)?));
    let bottom = eps.flat_bar(qbar)?.scale(&(&r2 * eps.eval(p, &psi.u_part())?));
    let [a, b] = top.components();
    let [c, d] = bottom.components();
    Ok(DiracVector::new([a, b, c, d]))
}

/// The Dirac map `γ : U⊗Ū → End W`, extended linearly from decomposables.
pub fn gamma_with(eps: &Epsilon, y: &ScaledTensor) -> Result<EndW, DiracError> {
    y.expect_slots(&[Variance::U, Variance::UBar])?;
    let mut m = Matrix::zeros(4, 4);
    for (idx, coef) in y.entries() {
        let p = ScaledTensor::basis(Variance::U, idx[0]);
        let qbar = ScaledTensor::basis(Variance::UBar, idx[1]);
        for col in 0..4 {
            let out = gamma_decomposable(eps, &p, &qbar, &DiracVector::basis(col))?;
            for (row, v) in out.comps().iter().enumerate() {
                m[(row, col)] += v * coef;
            }
        }
    }
    // γ[y] shifts weights by unit(y) − 1 (a natural-weight y preserves W).
    let unit = y.unit().combine(UnitExponent::integer(-1));
    Ok(EndW { m, unit })
}

/// `γ` with the standard ε; phase-independent.
pub fn gamma(y: &ScaledTensor) -> Result<EndW, DiracError> {
    gamma_with(&Epsilon::standard(), y)
}

/// Dirac adjoint `ψ = (u, λ̄) ↦ ψ̄ = (λ, ū) ∈ W*`.
pub fn dirac_adjoint(psi: &DiracVector) -> DiracCovector {
    let c = psi.comps();
    DiracCovector::new([c[2].conj(), c[3].conj(), c[0].conj(), c[1].conj()])
}

/// Hermitian form `k(ψ, φ) = ⟨ψ̄, φ⟩`.
pub fn k_form(psi: &DiracVector, phi: &DiracVector) -> Scalar {
    dirac_adjoint(psi).pair(phi)
}

/// Gram matrix `k(e_i, e_j)` in the induced basis.
pub fn k_gram() -> Matrix {
    Matrix::from_fn(4, 4, |i, j| k_form(&DiracVector::basis(i), &DiracVector::basis(j)))
}

/// Whether `γ[y]` is k-Hermitian: `k(γψ, φ) = k(ψ, γφ)` on all basis pairs.
pub fn k_hermiticity_check(y: &ScaledTensor) -> Result<bool, DiracError> {
    let g = gamma(y)?;
    let basis: Vec<DiracVector> = (0..4).map(DiracVector::basis).collect();
    Ok(basis.iter().all(|psi| {
        basis.iter().all(|phi| k_form(&g.apply(psi), phi) == k_form(psi, &g.apply(phi)))
    }))
}

/// `C_ε(u, λ̄) = (ε#(λ), ε̄♭(ū))`, anti-linear.
pub fn charge_conjugate(eps: &Epsilon, psi: &DiracVector) -> Result<DiracVector, DiracError> {
    let lambda = psi.lbar_part().conj();
    let ubar = psi.u_part().conj();
    let top = eps.sharp(&lambda)?;
    let bottom = eps.flat_bar(&ubar)?;
    let [a, b] = top.components();
    let [c, d] = bottom.components();
    Ok(DiracVector { comps: [a, b, c, d], unit: psi.unit })
}

/// Projectors `P± = (𝟙 ± γ[τ])/2` of a normalized future observer.
pub fn observer_projectors(tau: &MinkVector, metric: &Metric) -> Result<(EndW, EndW), DiracError> {
    check_observer(tau, metric)?;
    let g = gamma_with(metric.epsilon(), tau.tensor())?;
    let half = Scalar::frac(1, 2);
    let id = EndW::identity();
    Ok((id.add(&g).scale(&half), id.sub(&g).scale(&half)))
}

fn check_observer(tau: &MinkVector, metric: &Metric) -> Result<(), DiracError> {
    let norm = metric.pair(tau.tensor(), tau.tensor())?;
    if !norm.is_one() {
        return Err(DiracError::NotNormalized { norm: Box::new(norm) });
    }
    // The θ₀-coordinate of a timelike vector fixes its time orientation.
    if !tau.time_component().is_positive() {
        return Err(DiracError::PastOriented);
    }
    Ok(())
}

/// Splits `ψ = ψ⁺ + ψ⁻` into the ±1 eigenspaces of `γ[τ]`.
pub fn observer_split(tau: &MinkVector, psi: &DiracVector, metric: &Metric) -> Result<(DiracVector, DiracVector), DiracError> {
    let (plus, minus) = observer_projectors(tau, metric)?;
    Ok((plus.apply(psi), minus.apply(psi)))
}

/// Components `H_{ab} = h(ē_a, e_b)` of a tensor with slots `[Ubar*, U*]`,
/// checked to be Hermitian and positive (trace and determinant positive).
fn positive_hermitian(h: &ScaledTensor) -> Result<Matrix, DiracError> {
    h.expect_slots(&[Variance::UBarDual, Variance::UDual])?;
    let m = h.matrix();
    let hm = Matrix::from_fn(2, 2, |r, c| m[r][c].clone());
    if hm.adjoint() != hm {
        return Err(DiracError::NotPositive { reason: "not Hermitian" });
    }
    if !hm.trace().is_positive() {
        return Err(DiracError::NotPositive { reason: "trace is not positive" });
    }
    if !hm.det().is_positive() {
        return Err(DiracError::NotPositive { reason: "determinant is not positive" });
    }
    Ok(hm)
}

/// Observer-dependent anti-isomorphism `ψ ↦ ψ†` induced by a positive
/// Hermitian `h ∈ Ū*⊗U*`:
/// `⟨ψ†, (v, μ̄)⟩ = h(ū, v) + h⁻¹(λ, μ̄)`.
pub fn observer_dagger(h: &ScaledTensor, psi: &DiracVector) -> Result<DiracCovector, DiracError> {
    let hm = positive_hermitian(h)?;
    let hinv = hm.inverse().expect("positive matrix is invertible");
    let c = psi.comps();
    let first = |b: usize| (0..2).map(|a| c[a].conj() * &hm[(a, b)]).sum::<Scalar>();
    let second = |b: usize| (0..2).map(|a| c[2 + a].conj() * &hinv[(a, b)]).sum::<Scalar>();
    Ok(DiracCovector::new([first(0), first(1), second(0), second(1)]))
}

/// The timelike vector `τ_h ∈ H` with `g(τ_h, y) = h(y)/√2` for all `y`.
/// It is a normalized future observer exactly when `det h = 1`.
pub fn observer_of(h: &ScaledTensor, metric: &Metric) -> Result<MinkVector, DiracError> {
    let hm = positive_hermitian(h)?;
    // Unknowns τ^{cd}, equations indexed by the basis y = e_a⊗ē_b.
    let idx = [(1u8, 1u8), (1, 2), (2, 1), (2, 2)];
    let basis: Vec<ScaledTensor> = idx
        .iter()
        .map(|&(a, b)| ScaledTensor::basis(Variance::U, a).tensor(&ScaledTensor::basis(Variance::UBar, b)))
        .collect();
    let sys = Matrix::from_fn(4, 4, |r, c| metric.pair(&basis[c], &basis[r]).expect("same space"));
    let inv_r2 = Scalar::sqrt2().inv().unwrap();
    let rhs: Vec<Scalar> = idx.iter().map(|&(a, b)| &hm[(b as usize - 1, a as usize - 1)] * &inv_r2).collect();
    let sol = sys.inverse().expect("g is nondegenerate").apply(&rhs);
    let mut t = ScaledTensor::zero(vec![Variance::U, Variance::UBar]);
    for (&(a, b), v) in idx.iter().zip(sol) {
        t.set(vec![a, b], v);
    }
    Ok(MinkVector::new(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spintensor::standard_tetrad;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn e11() -> ScaledTensor {
        ScaledTensor::basis(Variance::U, 1).tensor(&ScaledTensor::basis(Variance::UBar, 1))
    }

    fn t0() -> ScaledTensor {
        let e22 = ScaledTensor::basis(Variance::U, 2).tensor(&ScaledTensor::basis(Variance::UBar, 2));
        e11().add(&e22).unwrap()
    }

    #[test]
    fn gamma_e11_on_e2() {
        let g = gamma(&e11()).unwrap();
        let out = g.apply(&DiracVector::basis(1));
        assert_eq!(out, DiracVector::new([s(0), s(0), s(0), Scalar::sqrt2()]));
        assert!(g.compose(&g).is_zero());
    }

    #[test]
    fn gamma_t0_matrix_and_square() {
        // Hand-computed: γ[t₀] = √2·[[0, 𝟙], [𝟙, 0]].
        let r2 = Scalar::sqrt2();
        let expected = Matrix::from_fn(4, 4, |r, c| if (r + 2) % 4 == c { r2.clone() } else { s(0) });
        let g = gamma(&t0()).unwrap();
        assert_eq!(g.matrix(), &expected);
        assert_eq!(g.compose(&g), EndW::identity().scale(&s(2)));
        assert_eq!(g.unit(), UnitExponent::ZERO);
    }

    #[test]
    fn gamma_rejects_wrong_variance() {
        let bad = ScaledTensor::basis(Variance::U, 1).tensor(&ScaledTensor::basis(Variance::U, 1));
        assert!(matches!(gamma(&bad), Err(DiracError::Spin(SpinError::Variance { .. }))));
    }

    #[test]
    fn adjoint_examples() {
        let psi = DiracVector::basis(0);
        assert_eq!(dirac_adjoint(&psi), DiracCovector::new([s(0), s(0), s(1), s(0)]));
        assert_eq!(k_form(&psi, &psi), s(0));
        let plus = DiracVector::new([s(1), s(0), s(1), s(0)]);
        assert_eq!(k_form(&plus, &plus), s(2));
        let minus = DiracVector::new([s(1), s(0), s(-1), s(0)]);
        assert_eq!(k_form(&minus, &minus), s(-2));
    }

    #[test]
    fn k_hermiticity_examples() {
        let th = standard_tetrad();
        assert!(k_hermiticity_check(th[0].tensor()).unwrap());
        assert!(k_hermiticity_check(th[2].tensor()).unwrap());
        assert!(!k_hermiticity_check(&th[0].tensor().scale(&Scalar::i())).unwrap());
    }

    #[test]
    fn charge_conjugation_examples() {
        let eps = Epsilon::standard();
        let c1 = charge_conjugate(&eps, &DiracVector::basis(0)).unwrap();
        assert_eq!(c1, DiracVector::basis(3));
        // ε#(e*¹) = −(ε♭)⁻¹(e*¹) = e₂
        let c2 = charge_conjugate(&eps, &DiracVector::basis(2)).unwrap();
        assert_eq!(c2, DiracVector::basis(1));
        let ci = charge_conjugate(&eps, &DiracVector::basis(0).scale(&Scalar::i())).unwrap();
        assert_eq!(ci, c1.scale(&-Scalar::i()));
        for k in 0..4 {
            let b = DiracVector::basis(k);
            let cc = charge_conjugate(&eps, &charge_conjugate(&eps, &b).unwrap()).unwrap();
            assert_eq!(cc, b.scale(&s(-1)));
        }
    }

    #[test]
    fn observer_split_examples() {
        let m = Metric::default();
        let th = standard_tetrad();
        let (p, q) = observer_projectors(&th[0], &m).unwrap();
        assert_eq!((p.rank(), q.rank()), (2, 2));
        let phi = DiracVector::new([s(1), Scalar::i(), s(3), s(-2)]);
        let eig = p.apply(&phi);
        let (plus, minus) = observer_split(&th[0], &eig, &m).unwrap();
        assert!(minus.is_zero());
        assert_eq!(plus, eig);
        assert!(matches!(observer_split(&th[3], &phi, &m), Err(DiracError::NotNormalized { .. })));
        let past = th[0].scale(&s(-1)).unwrap();
        assert_eq!(observer_split(&past, &phi, &m), Err(DiracError::PastOriented));
    }

    fn standard_h() -> ScaledTensor {
        ScaledTensor::from_matrix([Variance::UBarDual, Variance::UDual], [[s(1), s(0)], [s(0), s(1)]])
    }

    #[test]
    fn standard_h_gives_theta0_and_footnote_identity() {
        let m = Metric::default();
        let tau = observer_of(&standard_h(), &m).unwrap();
        assert_eq!(tau, standard_tetrad()[0]);
        let g0 = gamma(tau.tensor()).unwrap();
        let psi = DiracVector::new([s(2), Scalar::i(), Scalar::sqrt2(), s(-1)]);
        let dag = observer_dagger(&standard_h(), &psi).unwrap();
        assert_eq!(dag.compose(&g0), dirac_adjoint(&psi));
        let e1 = DiracVector::basis(0);
        assert!(observer_dagger(&standard_h(), &e1).unwrap().pair(&e1).is_positive());
    }

    #[test]
    fn dagger_rejects_non_positive() {
        let h = ScaledTensor::from_matrix([Variance::UBarDual, Variance::UDual], [[s(1), s(0)], [s(0), s(-1)]]);
        assert!(matches!(observer_dagger(&h, &DiracVector::basis(0)), Err(DiracError::NotPositive { .. })));
        let h = ScaledTensor::from_matrix([Variance::UBarDual, Variance::UDual], [[s(1), Scalar::i()], [Scalar::i(), s(3)]]);
        assert!(matches!(observer_dagger(&h, &DiracVector::basis(0)), Err(DiracError::NotPositive { .. })));
    }
}
