use std::cmp::Ordering;

use crate::exactfield::{Scalar, UnitExponent};
use crate::matrix::Matrix;

use super::{Epsilon, ScaledTensor, SpinError, Variance};

pub(crate) const U_UBAR: [Variance; 2] = [Variance::U, Variance::UBar];

/// Dagger-fixed element of `U ⊗ Ū`, i.e. a vector of the Minkowski space `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkVector(ScaledTensor);

impl MinkVector {
    pub fn new(t: ScaledTensor) -> Result<Self, SpinError> {
        t.expect_slots(&U_UBAR)?;
        if hermitian_transpose(&t)? != t {
            return Err(SpinError::NotHermitian);
        }
        Ok(MinkVector(t))
    }

    /// Builds `Σ c_a θ_a` from real Pauli coordinates and a tetrad.
    pub fn from_coords(coords: &[Scalar; 4], tetrad: &[MinkVector; 4]) -> Result<Self, SpinError> {
        if coords.iter().any(|c| !c.is_real()) {
            return Err(SpinError::NotHermitian);
        }
        let mut acc = ScaledTensor::zero_with_unit(U_UBAR.to_vec(), tetrad[0].0.unit());
        for (c, th) in coords.iter().zip(tetrad) {
            acc = acc.add(&th.0.scale(c))?;
        }
        Ok(MinkVector(acc))
    }

    pub fn tensor(&self) -> &ScaledTensor {
        &self.0
    }

    pub fn into_tensor(self) -> ScaledTensor {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Real scalar multiple.
    pub fn scale(&self, s: &Scalar) -> Result<MinkVector, SpinError> {
        if !s.is_real() {
            return Err(SpinError::NotHermitian);
        }
        Ok(MinkVector(self.0.scale(s)))
    }

    pub fn add(&self, other: &MinkVector) -> Result<MinkVector, SpinError> {
        Ok(MinkVector(self.0.add(&other.0)?))
    }

    /// Time component `tr(y)/√2`, i.e. the coordinate along the standard `θ₀`.
    pub fn time_component(&self) -> Scalar {
        (self.0.get(&[1, 1]) + self.0.get(&[2, 2])) / Scalar::sqrt2()
    }
}

/// `(u ⊗ v̄)† ≡ v ⊗ ū`, extended real-linearly: conjugate-transposes the
/// component matrix.
pub fn hermitian_transpose(t: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
    t.expect_slots(&U_UBAR)?;
    let mut out = ScaledTensor::zero_with_unit(U_UBAR.to_vec(), t.unit());
    for (idx, v) in t.entries() {
        out.set(vec![idx[1], idx[0]], v.conj());
    }
    Ok(out)
}

/// Unique split `t = h + i·h'` with both parts Hermitian.
pub fn hermitian_split(t: &ScaledTensor) -> Result<(MinkVector, MinkVector), SpinError> {
    let dag = hermitian_transpose(t)?;
    let h = t.add(&dag)?.scale(&Scalar::frac(1, 2));
    let two_i = Scalar::from_int(2) * Scalar::i();
    let h2 = t.sub(&dag)?.scale(&two_i.inv().unwrap());
    Ok((MinkVector(h), MinkVector(h2)))
}

/// `u ⊗ ū`.
pub fn outer_conj(u: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
    u.expect_slots(&[Variance::U])?;
    Ok(u.tensor(&u.conj()))
}

/// The metric `g = ε ⊗ ε̄`: `g(u⊗v̄, u'⊗v̄') = ε(u,u') ε̄(v̄,v̄')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    eps: Epsilon,
}

impl Metric {
    pub fn new(eps: Epsilon) -> Self {
        Metric { eps }
    }

    pub fn epsilon(&self) -> &Epsilon {
        &self.eps
    }

    /// Both arguments must carry slots `[U, Ubar]` and the same unit.
    pub fn pair(&self, y: &ScaledTensor, y2: &ScaledTensor) -> Result<Scalar, SpinError> {
        y.expect_slots(&U_UBAR)?;
        y2.expect_slots(&U_UBAR)?;
        if y.unit() != y2.unit() {
            return Err(SpinError::Unit { left: y.unit(), right: y2.unit() });
        }
        let mut acc = Scalar::zero();
        for (i, a) in y.entries() {
            for (j, b) in y2.entries() {
                let e = self.eps.component(i[0], j[0]);
                if e.is_zero() {
                    continue;
                }
                let ebar = self.eps.component(i[1], j[1]).conj();
                acc += a * b * e * ebar;
            }
        }
        Ok(acc)
    }

    /// Unit exponent carried by `g(y, y')` for arguments of unit `p`.
    pub fn pairing_unit(&self, p: UnitExponent) -> UnitExponent {
        p.combine(p).combine(self.eps.tensor().unit()).combine(self.eps.tensor().unit())
    }

    /// Gram matrix `g(θ_a, θ_b)`.
    pub fn gram(&self, vs: &[MinkVector]) -> Result<Matrix, SpinError> {
        let mut m = Matrix::zeros(vs.len(), vs.len());
        for (a, x) in vs.iter().enumerate() {
            for (b, y) in vs.iter().enumerate() {
                m[(a, b)] = self.pair(&x.0, &y.0)?;
            }
        }
        Ok(m)
    }
}

impl Default for Metric {
    fn default() -> Self {
        Metric::new(Epsilon::standard())
    }
}

/// `g(y, y')` with the standard ε.
pub fn g_pairing(y: &ScaledTensor, y2: &ScaledTensor) -> Result<Scalar, SpinError> {
    Metric::default().pair(y, y2)
}

/// Pauli matrices `σ₀ … σ₃`.
pub fn pauli_matrices() -> [[[Scalar; 2]; 2]; 4] {
    let (o, z, i) = (Scalar::one(), Scalar::zero(), Scalar::i());
    [
        [[o.clone(), z.clone()], [z.clone(), o.clone()]],
        [[z.clone(), o.clone()], [o.clone(), z.clone()]],
        [[z.clone(), -&i], [i.clone(), z.clone()]],
        [[o.clone(), z.clone()], [z, -o]],
    ]
}

/// `θ_a = (1/√2) Σ_{jk} (σ_a)_{jk} b_j ⊗ b̄_k`.
///
/// The basis must satisfy `|ε(b₁, b₂)| = 1`, which makes the tetrad
/// `g`-orthonormal with Gram matrix `diag(1, −1, −1, −1)`.
pub fn pauli_tetrad(b1: &ScaledTensor, b2: &ScaledTensor, eps: &Epsilon) -> Result<[MinkVector; 4], SpinError> {
    let det = eps.eval(b1, b2)?;
    if det.is_zero() {
        return Err(SpinError::DegenerateBasis);
    }
    if !det.norm_sqr().is_one() {
        return Err(SpinError::UnnormalizedBasis { eps_value: Box::new(det) });
    }
    if b1.unit() != b2.unit() {
        return Err(SpinError::Unit { left: b1.unit(), right: b2.unit() });
    }
    let basis = [b1, b2];
    let outer: Vec<Vec<ScaledTensor>> =
        basis.iter().map(|bj| basis.iter().map(|bk| bj.tensor(&bk.conj())).collect()).collect();
    let inv_sqrt2 = Scalar::sqrt2().inv().unwrap();
    let unit = b1.unit().combine(b1.unit());
    let build = |sigma: &[[Scalar; 2]; 2]| -> Result<MinkVector, SpinError> {
        let mut acc = ScaledTensor::zero_with_unit(U_UBAR.to_vec(), unit);
        for j in 0..2 {
            for k in 0..2 {
                if !sigma[j][k].is_zero() {
                    acc = acc.add(&outer[j][k].scale(&(&sigma[j][k] * &inv_sqrt2)))?;
                }
            }
        }
        Ok(MinkVector(acc))
    };
    let [s0, s1, s2, s3] = pauli_matrices();
    Ok([build(&s0)?, build(&s1)?, build(&s2)?, build(&s3)?])
}

/// Tetrad of the standard basis `(e₁, e₂)`.
pub fn standard_tetrad() -> [MinkVector; 4] {
    let e1 = ScaledTensor::basis(Variance::U, 1);
    let e2 = ScaledTensor::basis(Variance::U, 2);
    pauli_tetrad(&e1, &e2, &Epsilon::standard()).expect("standard basis is normalized")
}

/// `+1` future (`y = +u⊗ū`), `−1` past (`y = −u⊗ū`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeOrientation {
    Future,
    Past,
}

impl TimeOrientation {
    pub fn sign(self) -> i64 {
        match self {
            TimeOrientation::Future => 1,
            TimeOrientation::Past => -1,
        }
    }
}

/// Null vector written as `sign · u ⊗ ū`, first nonzero component of `u`
/// real and positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullDecomposition {
    pub orientation: TimeOrientation,
    pub spinor: ScaledTensor,
}

/// Always-exact form `y = sign · (w ⊗ w̄) / r` with `r > 0`, used when `√r`
/// is not in the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledNullDecomposition {
    pub orientation: TimeOrientation,
    pub spinor: ScaledTensor,
    pub norm_sqr: Scalar,
}

/// Writes a nonzero null `y ∈ H` as `sign · w⊗w̄ / r`.
pub fn null_decompose_scaled(y: &MinkVector, metric: &Metric) -> Result<ScaledNullDecomposition, SpinError> {
    if y.is_zero() {
        return Err(SpinError::ZeroVector);
    }
    let norm = metric.pair(&y.0, &y.0)?;
    if !norm.is_zero() {
        return Err(SpinError::NotNull { norm: Box::new(norm) });
    }
    let m = y.0.matrix();
    // A Hermitian rank-one matrix has a nonzero diagonal entry.
    let k = (0..2).find(|&k| !m[k][k].is_zero()).ok_or(SpinError::NotNull { norm: Box::new(Scalar::zero()) })?;
    let diag = &m[k][k];
    let orientation = match diag.real_sign() {
        Some(Ordering::Greater) => TimeOrientation::Future,
        Some(Ordering::Less) => TimeOrientation::Past,
        _ => return Err(SpinError::NotHermitian),
    };
    let s = Scalar::from_int(orientation.sign());
    // s·y^{ak} = u^a ū^k, so w = s·y^{·k} = u·ū^k and r = |y^{kk}| = |u^k|².
    let w = [&m[0][k] * &s, &m[1][k] * &s];
    let half = UnitExponent::new(y.0.unit().num(), 2 * y.0.unit().den());
    let spinor = ScaledTensor::vector(Variance::U, w).with_unit(half);
    Ok(ScaledNullDecomposition { orientation, spinor, norm_sqr: diag * &s })
}

/// Writes a nonzero null `y ∈ H` as `±u⊗ū`.
///
/// Fails with [`SpinError::NoFieldRepresentative`] when `|u^k|` for the
/// leading component is not in ℚ(√2); [`null_decompose_scaled`] always succeeds.
pub fn null_decompose(y: &MinkVector, metric: &Metric) -> Result<NullDecomposition, SpinError> {
    let scaled = null_decompose_scaled(y, metric)?;
    let root = scaled
        .norm_sqr
        .real_sqrt()
        .ok_or_else(|| SpinError::NoFieldRepresentative { norm_sqr: Box::new(scaled.norm_sqr.clone()) })?;
    let spinor = scaled.spinor.scale(&root.inv().unwrap());
    Ok(NullDecomposition { orientation: scaled.orientation, spinor })
}
