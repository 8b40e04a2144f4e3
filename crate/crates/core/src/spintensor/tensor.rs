use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::{Scalar, UnitExponent};

use super::SpinError;

/// Which of the four two-dimensional spaces a tensor slot lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    /// `U`
    U,
    /// `U*`
    UDual,
    /// `Ū`
    UBar,
    /// `Ū*`
    UBarDual,
}

impl Variance {
    pub const ALL: [Variance; 4] = [Variance::U, Variance::UDual, Variance::UBar, Variance::UBarDual];

    pub fn dual(self) -> Variance {
        match self {
            Variance::U => Variance::UDual,
            Variance::UDual => Variance::U,
            Variance::UBar => Variance::UBarDual,
            Variance::UBarDual => Variance::UBar,
        }
    }

    pub fn conj(self) -> Variance {
        match self {
            Variance::U => Variance::UBar,
            Variance::UBar => Variance::U,
            Variance::UDual => Variance::UBarDual,
            Variance::UBarDual => Variance::UDual,
        }
    }

    /// Length-unit weight of one slot: `U ≡ 𝕃^{1/2} ⊗ S`, duals carry the inverse.
    pub fn unit(self) -> UnitExponent {
        match self {
            Variance::U | Variance::UBar => UnitExponent::HALF,
            Variance::UDual | Variance::UBarDual => -UnitExponent::HALF,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variance::U => "U",
            Variance::UDual => "U*",
            Variance::UBar => "Ubar",
            Variance::UBarDual => "Ubar*",
        }
    }

    pub fn from_name(s: &str) -> Option<Variance> {
        Variance::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Multi-index with entries in `{1, 2}`.
pub type SpinIndex = Vec<u8>;

/// Sparse tensor over the two-spinor spaces, tagged with slot variances and a
/// length-unit exponent. Zero components are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScaledTensor {
    slots: Vec<Variance>,
    unit: UnitExponent,
    entries: BTreeMap<SpinIndex, Scalar>,
}

fn all_indices(rank: usize) -> impl Iterator<Item = SpinIndex> {
    (0..1usize << rank).map(move |bits| (0..rank).map(|k| 1 + ((bits >> (rank - 1 - k)) & 1) as u8).collect())
}

impl ScaledTensor {
    /// The zero tensor with the natural unit of its slots.
    pub fn zero(slots: Vec<Variance>) -> Self {
        let unit = slots.iter().fold(UnitExponent::ZERO, |u, v| u.combine(v.unit()));
        ScaledTensor { slots, unit, entries: BTreeMap::new() }
    }

    pub fn zero_with_unit(slots: Vec<Variance>, unit: UnitExponent) -> Self {
        ScaledTensor { slots, unit, entries: BTreeMap::new() }
    }

    /// Natural-unit tensor from explicit components.
    pub fn from_entries(
        slots: Vec<Variance>,
        entries: impl IntoIterator<Item = (SpinIndex, Scalar)>,
    ) -> Result<Self, SpinError> {
        let mut t = ScaledTensor::zero(slots);
        for (idx, v) in entries {
            t.add_entry(idx, v)?;
        }
        Ok(t)
    }

    /// Basis vector `e_k` of `U` (or of another single-slot space).
    pub fn basis(v: Variance, k: u8) -> Self {
        let mut t = ScaledTensor::zero(vec![v]);
        t.entries.insert(vec![k], Scalar::one());
        t
    }

    /// Single-slot tensor from its two components.
    pub fn vector(v: Variance, comps: [Scalar; 2]) -> Self {
        let mut t = ScaledTensor::zero(vec![v]);
        for (k, c) in comps.into_iter().enumerate() {
            t.set(vec![k as u8 + 1], c);
        }
        t
    }

    pub fn slots(&self) -> &[Variance] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn unit(&self) -> UnitExponent {
        self.unit
    }

    pub fn with_unit(mut self, unit: UnitExponent) -> Self {
        self.unit = unit;
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SpinIndex, &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[u8]) -> Scalar {
        self.entries.get(idx).cloned().unwrap_or_default()
    }

    fn check_index(&self, idx: &[u8]) -> Result<(), SpinError> {
        if idx.len() != self.rank() || idx.iter().any(|&k| k != 1 && k != 2) {
            return Err(SpinError::BadIndex { index: idx.to_vec(), rank: self.rank() });
        }
        Ok(())
    }

    /// Sets a component; panics on a malformed index.
    pub fn set(&mut self, idx: SpinIndex, v: Scalar) {
        self.check_index(&idx).expect("malformed spin index");
        if v.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, v);
        }
    }

    pub fn add_entry(&mut self, idx: SpinIndex, v: Scalar) -> Result<(), SpinError> {
        self.check_index(&idx)?;
        let cur = self.get(&idx);
        self.set(idx, cur + v);
        Ok(())
    }

    fn check_same_space(&self, other: &ScaledTensor) -> Result<(), SpinError> {
        if self.slots != other.slots {
            return Err(SpinError::Variance { expected: self.slots.clone(), found: other.slots.clone() });
        }
        if self.unit != other.unit {
            return Err(SpinError::Unit { left: self.unit, right: other.unit });
        }
        Ok(())
    }

    pub fn expect_slots(&self, slots: &[Variance]) -> Result<(), SpinError> {
        if self.slots != slots {
            return Err(SpinError::Variance { expected: slots.to_vec(), found: self.slots.clone() });
        }
        Ok(())
    }

    pub fn add(&self, other: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            let cur = out.get(idx);
            out.set(idx.clone(), cur + v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ScaledTensor) -> Result<ScaledTensor, SpinError> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> ScaledTensor {
        let mut out = ScaledTensor::zero_with_unit(self.slots.clone(), self.unit);
        for (idx, v) in &self.entries {
            out.set(idx.clone(), v * s);
        }
        out
    }

    /// Outer product; slots concatenate and units add.
    pub fn tensor(&self, other: &ScaledTensor) -> ScaledTensor {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let mut out = ScaledTensor::zero_with_unit(slots, self.unit.combine(other.unit));
        for (i, a) in &self.entries {
            for (j, b) in &other.entries {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.entries.insert(idx, a * b);
            }
        }
        out
    }

    /// Contracts slot `p` against slot `q`, which must be mutually dual.
    pub fn contract(&self, p: usize, q: usize) -> Result<ScaledTensor, SpinError> {
        if p == q || p >= self.rank() || q >= self.rank() || self.slots[p].dual() != self.slots[q] {
            return Err(SpinError::Contraction { slots: self.slots.clone(), p, q });
        }
        let slots: Vec<Variance> =
            self.slots.iter().enumerate().filter(|&(k, _)| k != p && k != q).map(|(_, v)| *v).collect();
        let mut out = ScaledTensor::zero_with_unit(slots, self.unit);
        for (idx, v) in &self.entries {
            if idx[p] == idx[q] {
                let rest: SpinIndex =
                    idx.iter().enumerate().filter(|&(k, _)| k != p && k != q).map(|(_, i)| *i).collect();
                let cur = out.get(&rest);
                out.set(rest, cur + v);
            }
        }
        Ok(out)
    }

    /// Pairs `self` (single slot) against `other` (single slot of dual variance).
    pub fn pair(&self, other: &ScaledTensor) -> Result<Scalar, SpinError> {
        if self.rank() != 1 || other.rank() != 1 {
            return Err(SpinError::Contraction { slots: [self.slots.clone(), other.slots.clone()].concat(), p: 0, q: 1 });
        }
        Ok(self.tensor(other).contract(0, 1)?.get(&[]))
    }

    /// Complex conjugate: conjugates coefficients and maps each slot to its
    /// conjugate space.
    pub fn conj(&self) -> ScaledTensor {
        let slots = self.slots.iter().map(|v| v.conj()).collect();
        let mut out = ScaledTensor::zero_with_unit(slots, self.unit);
        for (idx, v) in &self.entries {
            out.entries.insert(idx.clone(), v.conj());
        }
        out
    }

    /// Reinterprets the tensor in a new slot signature of the same rank.
    pub fn retag(&self, slots: Vec<Variance>) -> ScaledTensor {
        assert_eq!(slots.len(), self.rank());
        ScaledTensor { slots, unit: self.unit, entries: self.entries.clone() }
    }

    /// Components of a single-slot tensor as `[c₁, c₂]`.
    pub fn components(&self) -> [Scalar; 2] {
        assert_eq!(self.rank(), 1);
        [self.get(&[1]), self.get(&[2])]
    }

    /// Components of a two-slot tensor as a row-major 2×2 array.
    pub fn matrix(&self) -> [[Scalar; 2]; 2] {
        assert_eq!(self.rank(), 2);
        [[self.get(&[1, 1]), self.get(&[1, 2])], [self.get(&[2, 1]), self.get(&[2, 2])]]
    }

    pub fn from_matrix(slots: [Variance; 2], m: [[Scalar; 2]; 2]) -> ScaledTensor {
        let mut t = ScaledTensor::zero(slots.to_vec());
        for (r, row) in m.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                t.set(vec![r as u8 + 1, c as u8 + 1], v);
            }
        }
        t
    }

    /// Every multi-index of this rank, in lexicographic order.
    pub fn index_space(&self) -> impl Iterator<Item = SpinIndex> {
        all_indices(self.rank())
    }

    fn natural_unit(&self) -> UnitExponent {
        self.slots.iter().fold(UnitExponent::ZERO, |u, v| u.combine(v.unit()))
    }
}

impl fmt::Display for ScaledTensor {
    /// `tensor [U,Ubar] { (1,1): 1; (1,2): i }`, with `unit=p/q` after the
    /// slot list only when it differs from the slots' natural weight.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tensor [")?;
        for (k, v) in self.slots.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")?;
        if self.unit != self.natural_unit() {
            write!(f, " unit={}", self.unit)?;
        }
        if self.entries.is_empty() {
            return write!(f, " {{}}");
        }
        write!(f, " {{ ")?;
        for (n, (idx, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, "; ")?;
            }
            write!(f, "(")?;
            for (k, i) in idx.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{i}")?;
            }
            write!(f, "): {v}")?;
        }
        write!(f, " }}")
    }
}

impl fmt::Debug for ScaledTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
