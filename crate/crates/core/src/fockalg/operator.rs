use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exactfield::Scalar;

use super::{contract, DualState, FockError, FockState, Universe};

/// Emission `a†[z_k]` or absorption `a[ζ_k]` of global mode `k`. The derived
/// order puts every emission before every absorption.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    Emit(usize),
    Absorb(usize),
}

impl Gen {
    pub fn mode(self) -> usize {
        match self {
            Gen::Emit(k) | Gen::Absorb(k) => k,
        }
    }

    pub fn name(self, u: &Universe) -> String {
        match self {
            Gen::Emit(k) => format!("emit({})", u.mode_name(k)),
            Gen::Absorb(k) => format!("absorb({})", u.mode_name(k)),
        }
    }
}

fn word_grade(u: &Universe, w: &[Gen]) -> u8 {
    (w.iter().filter(|g| u.is_fermion(g.mode())).count() % 2) as u8
}

/// Scalar combination of normal-ordered words (emissions ascending, then
/// absorptions ascending).
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorElement {
    universe: Arc<Universe>,
    terms: BTreeMap<Vec<Gen>, Scalar>,
}

impl OperatorElement {
    pub fn zero(u: &Arc<Universe>) -> Self {
        OperatorElement { universe: u.clone(), terms: BTreeMap::new() }
    }

    /// `c · 𝟙`.
    pub fn scalar(u: &Arc<Universe>, c: Scalar) -> Self {
        let mut out = OperatorElement::zero(u);
        out.add_term(Vec::new(), c);
        out
    }

    pub fn identity(u: &Arc<Universe>) -> Self {
        OperatorElement::scalar(u, Scalar::one())
    }

    /// `a†[z]` for a rank-1 state `z`.
    pub fn emit(z: &FockState) -> Result<Self, FockError> {
        let mut out = OperatorElement::zero(z.universe());
        for (k, c) in z.rank_one_components()? {
            out.add_term(vec![Gen::Emit(k)], c);
        }
        Ok(out)
    }

    /// `a[ζ]` for a rank-1 dual state `ζ`.
    pub fn absorb(zeta: &DualState) -> Result<Self, FockError> {
        let mut out = OperatorElement::zero(zeta.universe());
        for (k, c) in zeta.rank_one_components()? {
            out.add_term(vec![Gen::Absorb(k)], c);
        }
        Ok(out)
    }

    /// The composition of `word` (rightmost acts first), normal-ordered.
    pub fn from_word(u: &Arc<Universe>, word: &[Gen]) -> Self {
        normal_order(u, word)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Gen>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Vec<Gen>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Universe) -> Result<(), FockError> {
        if *self.universe != *other {
            return Err(FockError::UniverseMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        self.check(&other.universe)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FockError> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = OperatorElement::zero(&self.universe);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// Composition `self ∘ other`, normal-ordered.
    pub fn mul(&self, other: &Self) -> Result<Self, FockError> {
        self.check(&other.universe)?;
        let mut out = OperatorElement::zero(&self.universe);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let word: Vec<Gen> = a.iter().chain(b).copied().collect();
                let prod = ca * cb;
                for (w, c) in normal_order(&self.universe, &word).terms {
                    out.add_term(w, c * &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn grade_parts(&self) -> [Self; 2] {
        let mut parts = [OperatorElement::zero(&self.universe), OperatorElement::zero(&self.universe)];
        for (w, c) in &self.terms {
            parts[word_grade(&self.universe, w) as usize].add_term(w.clone(), c.clone());
        }
        parts
    }

    pub fn grade(&self) -> Option<u8> {
        let mut grades = self.terms.keys().map(|w| word_grade(&self.universe, w));
        let g = grades.next().unwrap_or(0);
        grades.all(|h| h == g).then_some(g)
    }
}

impl fmt::Display for OperatorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "1")?;
            } else {
                let names: Vec<String> = w.iter().map(|g| g.name(&self.universe)).collect();
                write!(f, "{}", names.join(" "))?;
            }
            if !c.is_one() {
                if c.is_rational() && c.is_positive() {
                    write!(f, " * {c}")?;
                } else {
                    write!(f, " * ({c})")?;
                }
            }
        }
        Ok(())
    }
}

/// Rewrites a generator word into normal order using the super-commutation
/// relations `a[ζ_i] a†[z_j] = ±a†[z_j] a[ζ_i] + δ_ij` and graded swaps.
pub fn normal_order(u: &Arc<Universe>, word: &[Gen]) -> OperatorElement {
    let mut out = OperatorElement::zero(u);
    let mut work = vec![(word.to_vec(), Scalar::one())];
    while let Some((w, c)) = work.pop() {
        let Some(i) = (0..w.len().saturating_sub(1))
            .find(|&i| w[i] > w[i + 1] || (w[i] == w[i + 1] && u.is_fermion(w[i].mode())))
        else {
            out.add_term(w, c);
            continue;
        };
        let (x, y) = (w[i], w[i + 1]);
        if x == y {
            continue;
        }
        let sign = if u.is_fermion(x.mode()) && u.is_fermion(y.mode()) { -1 } else { 1 };
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        work.push((swapped, &c * &Scalar::from_int(sign)));
        if let (Gen::Absorb(a), Gen::Emit(b)) = (x, y) {
            if a == b {
                let mut dropped = w;
                dropped.drain(i..i + 2);
                work.push((dropped, c));
            }
        }
    }
    out
}

/// Acts with one generator: `a†[z_k]ψ = z_k ◊ ψ`, `a[ζ_k]ψ = ζ_k|ψ`.
pub fn apply_generator(g: Gen, psi: &FockState) -> FockState {
    let u = psi.universe();
    match g {
        Gen::Emit(k) => FockState::generator(u, k).product(psi).expect("same universe"),
        Gen::Absorb(k) => contract(&DualState::generator(u, k), psi).expect("same universe"),
    }
}

/// Evaluates `X` on `ψ`, rightmost generator first.
pub fn op_apply(x: &OperatorElement, psi: &FockState) -> Result<FockState, FockError> {
    x.check(psi.universe())?;
    let mut out = FockState::zero(psi.universe());
    for (w, c) in &x.terms {
        let mut cur = psi.clone();
        for &g in w.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = apply_generator(g, &cur);
        }
        out = out.add(&cur.scale(c))?;
    }
    Ok(out)
}

/// `⦃X,Y⦄ = XY − (−1)^{|X||Y|}YX`, extended over grade parts.
pub fn super_bracket(x: &OperatorElement, y: &OperatorElement) -> Result<OperatorElement, FockError> {
    x.check(&y.universe)?;
    let mut out = OperatorElement::zero(&x.universe);
    for (gx, xp) in x.grade_parts().iter().enumerate() {
        for (gy, yp) in y.grade_parts().iter().enumerate() {
            if xp.is_zero() || yp.is_zero() {
                continue;
            }
            let sign = Scalar::from_int(if gx * gy == 1 { -1 } else { 1 });
            out = out.add(&xp.mul(yp)?)?.sub(&yp.mul(xp)?.scale(&sign))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni() -> Arc<Universe> {
        Arc::new(Universe::two_sector(2, 2))
    }

    #[test]
    fn ccr_and_car_generators() {
        let u = uni();
        for k in 0..4 {
            let a = OperatorElement::absorb(&DualState::generator(&u, k)).unwrap();
            let ad = OperatorElement::emit(&FockState::generator(&u, k)).unwrap();
            assert_eq!(super_bracket(&a, &ad).unwrap(), OperatorElement::identity(&u));
        }
        let e1 = OperatorElement::emit(&FockState::generator(&u, 0)).unwrap();
        let e2 = OperatorElement::emit(&FockState::generator(&u, 1)).unwrap();
        assert!(super_bracket(&e1, &e2).unwrap().is_zero());
        assert!(e1.mul(&e1).unwrap().is_zero());
    }

    #[test]
    fn normal_order_examples() {
        let u = uni();
        let w = normal_order(&u, &[Gen::Absorb(0), Gen::Emit(0)]);
        assert_eq!(w.to_string(), "1 + emit(f:1) absorb(f:1) * (-1)");
        let w = normal_order(&u, &[Gen::Absorb(2), Gen::Emit(2)]);
        assert_eq!(w.to_string(), "1 + emit(b:1) absorb(b:1)");
        let already = [Gen::Emit(0), Gen::Absorb(0)];
        assert_eq!(normal_order(&u, &already).terms().next().unwrap().0, &already.to_vec());
        let w = normal_order(&u, &[Gen::Absorb(1), Gen::Absorb(0)]);
        assert_eq!(w.to_string(), "absorb(f:1) absorb(f:2) * (-1)");
    }

    #[test]
    fn apply_examples() {
        let u = uni();
        let vac = FockState::vacuum(&u);
        let three = OperatorElement::scalar(&u, Scalar::from_int(3));
        let psi = FockState::generator(&u, 0).add(&FockState::generator(&u, 3)).unwrap();
        assert_eq!(op_apply(&three, &psi).unwrap(), psi.scale(&Scalar::from_int(3)));
        let e = |k| OperatorElement::emit(&FockState::generator(&u, k)).unwrap();
        let a = |k| OperatorElement::absorb(&DualState::generator(&u, k)).unwrap();
        let z12 = FockState::generator(&u, 0).product(&FockState::generator(&u, 1)).unwrap();
        assert_eq!(op_apply(&e(0).mul(&e(1)).unwrap(), &vac).unwrap(), z12);
        assert!(op_apply(&a(0), &vac).unwrap().is_zero());
        assert_eq!(op_apply(&a(0).mul(&e(0)).unwrap(), &vac).unwrap(), vac);
    }
}
