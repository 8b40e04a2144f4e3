use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::exactfield::Scalar;

use super::{FockError, Universe};

/// Occupation numbers per global mode. Fermion entries are 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn vacuum(modes: usize) -> Self {
        Monomial(vec![0; modes])
    }

    pub fn single(modes: usize, k: usize) -> Self {
        let mut m = Monomial::vacuum(modes);
        m.0[k] = 1;
        m
    }

    pub fn rank(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn grade(&self, u: &Universe) -> u8 {
        (self.fermions(u).count() % 2) as u8
    }

    fn fermions<'a>(&'a self, u: &'a Universe) -> impl Iterator<Item = usize> + 'a {
        self.0.iter().enumerate().filter(move |(k, &n)| n > 0 && u.is_fermion(*k)).map(|(k, _)| k)
    }

    /// Generators in canonical order, repeated by multiplicity.
    pub fn generators(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k, n as usize)).collect()
    }

    pub fn name(&self, u: &Universe, dual: bool) -> String {
        let gens = self.generators();
        if gens.is_empty() {
            return "vac".into();
        }
        let prefix = if dual { "~" } else { "" };
        gens.iter().map(|&k| format!("{prefix}{}", u.mode_name(k))).collect::<Vec<_>>().join(" ^ ")
    }
}

impl Ord for Monomial {
    /// Lower rank first; within a rank, earlier modes first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn factorial_ratio(n: u32, k: u32) -> i64 {
    // n! / (n-k)!
    ((n - k + 1)..=n).map(i64::from).product()
}

/// Canonical form of `a ◊ b`: the merged monomial and its Koszul sign, or
/// `None` if a fermion mode repeats.
pub fn monomial_product(u: &Universe, a: &Monomial, b: &Monomial) -> Option<(Monomial, i64)> {
    let mut out = a.clone();
    for (k, &n) in b.0.iter().enumerate() {
        out.0[k] += n;
        if u.is_fermion(k) && out.0[k] > 1 {
            return None;
        }
    }
    let bf: Vec<usize> = b.fermions(u).collect();
    let inversions: usize = a.fermions(u).map(|x| bf.iter().filter(|&&y| y < x).count()).sum();
    Some((out, parity(inversions)))
}

/// `d | m` for `d ≤ m` modewise: the remaining monomial and its coefficient.
/// The leftmost factor of `d` contracts first.
pub fn monomial_contract(u: &Universe, d: &Monomial, m: &Monomial) -> Option<(Monomial, i64)> {
    if d.0.iter().zip(&m.0).any(|(a, b)| a > b) {
        return None;
    }
    let mut coeff = 1i64;
    let mf: Vec<usize> = m.fermions(u).collect();
    for (pos, a) in d.fermions(u).enumerate() {
        let below = mf.iter().filter(|&&b| b < a).count() - pos;
        coeff *= parity(below);
    }
    for (k, (&dk, &mk)) in d.0.iter().zip(&m.0).enumerate() {
        if !u.is_fermion(k) {
            coeff *= factorial_ratio(mk, dk);
        }
    }
    let rest = Monomial(m.0.iter().zip(&d.0).map(|(a, b)| a - b).collect());
    Some((rest, coeff))
}

/// `m | d` with `m ≤ d` modewise, defined by `(m|d)|ψ = d|(m◊ψ)` for every
/// `ψ` of complementary rank.
pub fn monomial_contract_dual(u: &Universe, m: &Monomial, d: &Monomial) -> Option<(Monomial, Scalar)> {
    if m.0.iter().zip(&d.0).any(|(a, b)| a > b) {
        return None;
    }
    let rest = Monomial(d.0.iter().zip(&m.0).map(|(a, b)| a - b).collect());
    let (_, sign) = monomial_product(u, m, &rest)?;
    let (_, full) = monomial_contract(u, d, d)?;
    let (_, part) = monomial_contract(u, &rest, &rest)?;
    Some((rest, Scalar::frac(sign * full, part)))
}

/// Every monomial of rank at most `max_rank`, in canonical order.
pub fn basis_monomials(u: &Universe, max_rank: u32) -> Vec<Monomial> {
    let n = u.mode_count();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(u: &Universe, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        let cap = if u.is_fermion(k) { left.min(1) } else { left };
        for occ in 0..=cap {
            cur[k] = occ;
            rec(u, k + 1, left - occ, cur, out);
        }
        cur[k] = 0;
    }
    rec(u, 0, max_rank, &mut cur, &mut out);
    out.sort();
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ket;
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bra;

pub trait Side: Clone + PartialEq + fmt::Debug {
    const DUAL: bool;
}
impl Side for Ket {
    const DUAL: bool = false;
}
impl Side for Bra {
    const DUAL: bool = true;
}

/// Finite linear combination of monomials; `FockState` for multi-particle
/// states and `DualState` for their duals.
#[derive(Clone, PartialEq, Debug)]
pub struct State<S> {
    universe: Arc<Universe>,
    terms: BTreeMap<Monomial, Scalar>,
    side: PhantomData<S>,
}

pub type FockState = State<Ket>;
pub type DualState = State<Bra>;

impl<S: Side> State<S> {
    pub fn zero(u: &Arc<Universe>) -> Self {
        State { universe: u.clone(), terms: BTreeMap::new(), side: PhantomData }
    }

    pub fn from_monomial(u: &Arc<Universe>, m: Monomial, c: Scalar) -> Self {
        let mut s = State::zero(u);
        s.add_term(m, c);
        s
    }

    pub fn vacuum(u: &Arc<Universe>) -> Self {
        State::scalar(u, Scalar::one())
    }

    pub fn scalar(u: &Arc<Universe>, c: Scalar) -> Self {
        State::from_monomial(u, Monomial::vacuum(u.mode_count()), c)
    }

    /// The rank-1 generator of global mode `k`.
    pub fn generator(u: &Arc<Universe>, k: usize) -> Self {
        State::from_monomial(u, Monomial::single(u.mode_count(), k), Scalar::one())
    }

    pub fn mode(u: &Arc<Universe>, sector: &str, label: &str) -> Result<Self, FockError> {
        Ok(State::generator(u, u.mode_index(sector, label)?))
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    fn check(&self, other_universe: &Universe) -> Result<(), FockError> {
        if *self.universe != *other_universe {
            return Err(FockError::UniverseMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        self.check(&other.universe)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FockError> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = State::zero(&self.universe);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// Exterior (fermion) / symmetric (boson) product `self ◊ other`.
    pub fn product(&self, other: &Self) -> Result<Self, FockError> {
        self.check(&other.universe)?;
        let mut out = State::zero(&self.universe);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, sign)) = monomial_product(&self.universe, a, b) {
                    out.add_term(m, ca * cb * Scalar::from_int(sign));
                }
            }
        }
        Ok(out)
    }

    /// Largest monomial rank present (0 for the zero state).
    pub fn rank(&self) -> u32 {
        self.terms.keys().map(Monomial::rank).max().unwrap_or(0)
    }

    /// Definite grade, if all monomials share one.
    pub fn grade(&self) -> Option<u8> {
        let mut grades = self.terms.keys().map(|m| m.grade(&self.universe));
        let g = grades.next().unwrap_or(0);
        grades.all(|h| h == g).then_some(g)
    }

    /// Split into even and odd parts.
    pub fn grade_parts(&self) -> [Self; 2] {
        let mut parts = [State::zero(&self.universe), State::zero(&self.universe)];
        for (m, c) in &self.terms {
            parts[m.grade(&self.universe) as usize].add_term(m.clone(), c.clone());
        }
        parts
    }

    /// Coefficients of a rank-1 element by global mode.
    pub fn rank_one_components(&self) -> Result<Vec<(usize, Scalar)>, FockError> {
        self.terms
            .iter()
            .map(|(m, c)| match m.generators().as_slice() {
                [k] => Ok((*k, c.clone())),
                g => Err(FockError::RankNotOne { rank: g.len() as u32 }),
            })
            .collect()
    }

    /// Sorted-key JSON dump.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| (m.name(&self.universe, S::DUAL), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::json!({
            "dual": S::DUAL,
            "terms": terms,
            "universe": self.universe.as_ref(),
        })
    }
}

impl<S: Side> fmt::Display for State<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", m.name(&self.universe, S::DUAL))?;
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

/// `λ|ψ` on the state side: monomial pairs where the dual factor has rank
/// at most that of the state. Equal ranks give a multiple of the vacuum.
pub fn contract(lambda: &DualState, psi: &FockState) -> Result<FockState, FockError> {
    lambda.check(&psi.universe)?;
    let u = &psi.universe;
    let mut out = FockState::zero(u);
    for (d, cd) in &lambda.terms {
        for (m, cm) in &psi.terms {
            if let Some((rest, k)) = monomial_contract(u, d, m) {
                out.add_term(rest, cd * cm * Scalar::from_int(k));
            }
        }
    }
    Ok(out)
}

/// `ψ|λ` on the dual side: monomial pairs where the state has rank at most
/// that of the dual factor.
pub fn contract_dual(psi: &FockState, lambda: &DualState) -> Result<DualState, FockError> {
    lambda.check(&psi.universe)?;
    let u = &psi.universe;
    let mut out = DualState::zero(u);
    for (m, cm) in &psi.terms {
        for (d, cd) in &lambda.terms {
            if let Some((rest, k)) = monomial_contract_dual(u, m, d) {
                out.add_term(rest, cd * cm * k);
            }
        }
    }
    Ok(out)
}

/// Full scalar pairing `⟨λ, ψ⟩`; only equal-rank monomials contribute.
pub fn pairing(lambda: &DualState, psi: &FockState) -> Result<Scalar, FockError> {
    let c = contract(lambda, psi)?;
    Ok(c.coefficient(&Monomial::vacuum(psi.universe.mode_count())))
}

#[derive(Clone, PartialEq, Debug)]
pub enum Interior {
    State(FockState),
    Dual(DualState),
}

/// Interior product landing on the side of the factor of higher rank; equal
/// ranks give the scalar pairing as a rank-0 state.
pub fn interior_product(lambda: &DualState, psi: &FockState) -> Result<Interior, FockError> {
    if lambda.rank() <= psi.rank() {
        contract(lambda, psi).map(Interior::State)
    } else {
        contract_dual(psi, lambda).map(Interior::Dual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni() -> Arc<Universe> {
        Arc::new(Universe::two_sector(2, 2))
    }

    #[test]
    fn fermion_products_anticommute() {
        let u = uni();
        let (z1, z2) = (FockState::generator(&u, 0), FockState::generator(&u, 1));
        let a = z1.product(&z2).unwrap();
        let b = z2.product(&z1).unwrap();
        assert_eq!(a.to_string(), "f:1 ^ f:2");
        assert_eq!(b, a.scale(&Scalar::from_int(-1)));
        assert!(z1.product(&z1).unwrap().is_zero());
    }

    #[test]
    fn boson_square_is_unnormalized() {
        let u = uni();
        let b1 = FockState::generator(&u, 2);
        let sq = b1.product(&b1).unwrap();
        assert_eq!(sq.to_string(), "b:1 ^ b:1");
    }

    #[test]
    fn rank_one_contractions() {
        let u = uni();
        let z = |k| FockState::generator(&u, k);
        let zeta = |k| DualState::generator(&u, k);
        assert_eq!(contract(&zeta(0), &z(0)).unwrap(), FockState::vacuum(&u));
        assert_eq!(contract(&zeta(0), &z(0).product(&z(1)).unwrap()).unwrap(), z(1));
        assert_eq!(contract(&zeta(1), &z(0).product(&z(1)).unwrap()).unwrap(), z(0).scale(&Scalar::from_int(-1)));
        assert_eq!(contract(&zeta(2), &z(2).product(&z(2)).unwrap()).unwrap(), z(2).scale(&Scalar::from_int(2)));
        assert!(contract(&zeta(0), &FockState::vacuum(&u)).unwrap().is_zero());
    }

    #[test]
    fn higher_rank_dual_gives_dual() {
        let u = uni();
        let d = DualState::generator(&u, 0).product(&DualState::generator(&u, 1)).unwrap();
        match interior_product(&d, &FockState::generator(&u, 0)).unwrap() {
            Interior::Dual(r) => assert_eq!(r, DualState::generator(&u, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn basis_counts() {
        let u = Universe::two_sector(2, 1);
        // rank ≤ 2: vac; f1 f2 b1; f1f2 f1b1 f2b1 b1b1
        assert_eq!(basis_monomials(&u, 2).len(), 8);
    }

    #[test]
    fn json_keys_are_sorted() {
        let u = uni();
        let s = FockState::generator(&u, 1).add(&FockState::generator(&u, 0).scale(&Scalar::i())).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        assert!(text.starts_with(r#"{"dual":false,"terms":{"f:1":"i","f:2":"1"},"universe""#), "{text}");
    }
}
