use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::random::TrialRng;
use crate::diracw::{gamma, gamma_with, k_gram, k_hermiticity_check, observer_projectors, EndW};
use crate::exactfield::Scalar;
use crate::fnforms::{
    bianchi_residual, covariant_differential, curvature, fn_bracket, matrix_wedge_vec, TangentForm,
};
use crate::fockalg::{
    basis_monomials, contract, normal_order, op_apply, pairing, apply_generator, super_bracket, DualState,
    FockState, Gen, OperatorElement, State, Universe,
};
use crate::matrix::{hermitian_inertia, Matrix};
use crate::spintensor::{pauli_tetrad, Epsilon, Metric};

/// Every named suite, in report order.
pub const SUITES: [&str; 8] =
    ["clifford", "signature", "pauli", "fn-bracket", "bianchi", "car-ccr", "normal-order", "adjunction"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected one of: {list}, all)", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("trials must be positive")]
    NoTrials,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub suite: String,
    pub trials: u64,
    /// Individual identity checks performed across all trials.
    pub checks: u64,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub sections: Vec<SectionReport>,
    pub failures: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    }

    /// One line per section.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let status = if s.failures.is_empty() { "ok" } else { "FAILED" };
            out.push_str(&format!(
                "{:<13} {status:<6} trials={} checks={} failures={}\n",
                s.suite,
                s.trials,
                s.checks,
                s.failures.len()
            ));
        }
        out
    }
}

/// Outcome of one trial: number of checks and any failures.
#[derive(Default)]
struct Trial {
    checks: u64,
    failures: Vec<(String, String, String)>,
}

impl Trial {
    fn check(&mut self, ok: bool, input: impl FnOnce() -> String, expected: impl FnOnce() -> String, got: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push((input(), expected(), got()));
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Display>(&mut self, input: impl FnOnce() -> String, expected: &T, got: &T) {
        self.check(expected == got, input, || expected.to_string(), || got.to_string());
    }
}

/// Runs a suite (or `all`) with a deterministic stream per trial.
pub fn run_suite(name: &str, seed: u64, trials: u64) -> Result<SuiteReport, SuiteError> {
    if trials == 0 {
        return Err(SuiteError::NoTrials);
    }
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(SuiteError::UnknownSuite(name.to_string()));
    };
    let sections: Vec<SectionReport> = names.iter().map(|n| run_section(n, seed, trials)).collect();
    let failures = sections.iter().map(|s| s.failures.len()).sum();
    Ok(SuiteReport { suite: name.to_string(), seed, trials, sections, failures })
}

fn run_section(name: &str, seed: u64, trials: u64) -> SectionReport {
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = TrialRng::new(seed, name, t);
            let mut out = Trial::default();
            run_trial(name, &mut rng, t, &mut out);
            out
        })
        .collect();
    let mut failures = Vec::new();
    let mut checks = 0;
    for (t, o) in outcomes.into_iter().enumerate() {
        checks += o.checks;
        failures.extend(o.failures.into_iter().map(|(input, expected, got)| Failure { trial: t as u64, input, expected, got }));
    }
    SectionReport { suite: name.to_string(), trials, checks, failures }
}

fn run_trial(name: &str, rng: &mut TrialRng, t: u64, out: &mut Trial) {
    match name {
        "clifford" => clifford(rng, out),
        "signature" => signature(rng, out),
        "pauli" => pauli(rng, out),
        "fn-bracket" => fn_bracket_trial(rng, t, out),
        "bianchi" => bianchi(rng, out),
        "car-ccr" => car_ccr(rng, out),
        "normal-order" => normal_order_trial(rng, out),
        "adjunction" => adjunction(rng, out),
        _ => unreachable!("suite names are validated"),
    }
}

fn clifford(rng: &mut TrialRng, out: &mut Trial) {
    let metric = Metric::default();
    let (y, y2) = (rng.hermitian(), rng.hermitian());
    let (gy, gy2) = (gamma(y.tensor()).expect("H"), gamma(y2.tensor()).expect("H"));
    let g = metric.pair(y.tensor(), y2.tensor()).expect("same unit");
    let lhs = gy.anticommutator(&gy2);
    let rhs = EndW::identity().scale(&(Scalar::from_int(2) * g));
    out.check(lhs.matrix() == rhs.matrix(), || format!("y = {}; y' = {}", y.tensor(), y2.tensor()), || rhs.to_string(), || lhs.to_string());

    let tau = rng.observer();
    let gt = gamma(tau.tensor()).expect("H");
    let sq = gt.compose(&gt);
    out.check(sq.matrix() == &Matrix::identity(4), || format!("tau = {}", tau.tensor()), || "identity".into(), || sq.to_string());
    match observer_projectors(&tau, &metric) {
        Ok((p, m)) => {
            let ranks = (p.rank(), m.rank());
            out.check(ranks == (2, 2), || format!("tau = {}", tau.tensor()), || "(2, 2)".into(), || format!("{ranks:?}"));
        }
        Err(e) => out.check(false, || format!("tau = {}", tau.tensor()), || "projectors".into(), || e.to_string()),
    }
}

fn signature(rng: &mut TrialRng, out: &mut Trial) {
    let k = k_gram();
    // Congruence by a random invertible P preserves the inertia (Sylvester).
    let p = loop {
        let p = Matrix::from_fn(4, 4, |_, _| if rng.coin() { rng.scalar() } else { Scalar::zero() });
        if !p.det().is_zero() {
            break p;
        }
    };
    let congruent = &(&p.adjoint() * &k) * &p;
    let inertia = hermitian_inertia(&congruent);
    out.check(inertia == Some((2, 2)), || format!("P =\n{p}"), || "Some((2, 2))".into(), || format!("{inertia:?}"));

    let y = rng.hermitian();
    let herm = k_hermiticity_check(y.tensor()).expect("H");
    out.check(herm, || format!("y = {}", y.tensor()), || "k-Hermitian".into(), || "not k-Hermitian".into());
    if !y.is_zero() {
        let iy = y.tensor().scale(&Scalar::i());
        let herm = k_hermiticity_check(&iy).expect("U⊗Ū");
        out.check(!herm, || format!("i*y with y = {}", y.tensor()), || "not k-Hermitian".into(), || "k-Hermitian".into());
    }
}

fn pauli(rng: &mut TrialRng, out: &mut Trial) {
    let diag = Matrix::from_fn(4, 4, |r, c| match (r, c) {
        (0, 0) => Scalar::one(),
        (r, c) if r == c => Scalar::from_int(-1),
        _ => Scalar::zero(),
    });
    for phase in [Scalar::one(), Scalar::i()] {
        let eps = Epsilon::with_phase(&phase);
        let metric = Metric::new(eps.clone());
        let (b1, b2) = rng.normalized_basis(&eps);
        let gram = pauli_tetrad(&b1, &b2, &eps).and_then(|t| metric.gram(&t));
        let input = || format!("phase = {phase}; b1 = {b1}; b2 = {b2}");
        match gram {
            Ok(g) => out.check(g == diag, input, || diag.to_string(), || g.to_string()),
            Err(e) => out.check(false, input, || diag.to_string(), || e.to_string()),
        }
    }
    // γ does not see the phase of ε.
    let y = rng.hermitian();
    let a = gamma_with(&Epsilon::with_phase(&Scalar::i()), y.tensor()).expect("H");
    let b = gamma(y.tensor()).expect("H");
    out.check(a == b, || format!("y = {}", y.tensor()), || b.to_string(), || a.to_string());
}

fn graded_sign(r: usize, s: usize) -> Scalar {
    Scalar::from_int(if (r * s).is_multiple_of(2) { 1 } else { -1 })
}

fn fn_bracket_trial(rng: &mut TrialRng, t: u64, out: &mut Trial) {
    let dim = 2 + rng.below(2);
    let r = rng.below(dim + 1);
    let s = rng.below(dim - r + 1);
    let (z, x) = (rng.tangent_form(dim, r, 2), rng.tangent_form(dim, s, 2));
    let lhs = fn_bracket(&z, &x).expect("r + s ≤ m");
    let rhs = fn_bracket(&x, &z).expect("r + s ≤ m").scale(&-graded_sign(r, s));
    out.check_eq(|| format!("zeta = {z}; xi = {x}"), &rhs, &lhs);

    if t.is_multiple_of(10) {
        let (a, b, c) = jacobi_degrees(rng, dim);
        let (k, l, m) = (rng.tangent_form(dim, a, 1), rng.tangent_form(dim, b, 1), rng.tangent_form(dim, c, 1));
        let (lhs, rhs) = jacobi_sides(&k, &l, &m);
        out.check_eq(|| format!("K = {k}; L = {l}; M = {m}"), &rhs, &lhs);
    }
}

/// Degrees of a Jacobi triple with total at most `dim`.
pub(crate) fn jacobi_degrees(rng: &mut TrialRng, dim: usize) -> (usize, usize, usize) {
    let a = rng.below(dim + 1);
    let b = rng.below(dim - a + 1);
    let c = rng.below(dim - a - b + 1);
    (a, b, c)
}

/// `[K,[L,M]]` and `[[K,L],M] + (−1)^{kl}[L,[K,M]]`.
pub(crate) fn jacobi_sides(k: &TangentForm, l: &TangentForm, m: &TangentForm) -> (TangentForm, TangentForm) {
    let br = |a: &TangentForm, b: &TangentForm| fn_bracket(a, b).expect("degrees bounded");
    let lhs = br(k, &br(l, m));
    let rhs = br(&br(k, l), m).add(&br(l, &br(k, m)).scale(&graded_sign(k.degree(), l.degree()))).expect("same shape");
    (lhs, rhs)
}

fn bianchi(rng: &mut TrialRng, out: &mut Trial) {
    let a = rng.matrix_form(3, 1, 2, 2);
    let residual = bianchi_residual(&a).expect("connection");
    out.check(residual.is_zero(), || format!("A = {a}"), || "0".into(), || residual.to_string());

    let deg = rng.below(2);
    let phi = rng.vec_form(3, deg, 2, 2);
    let lhs = covariant_differential(&a, &phi).and_then(|d| covariant_differential(&a, &d)).expect("shapes");
    let rhs = matrix_wedge_vec(&curvature(&a).expect("connection"), &phi).expect("shapes");
    out.check_eq(|| format!("A = {a}; phi = {phi}"), &rhs, &lhs);
}

fn small_universe() -> &'static Arc<Universe> {
    static U: OnceLock<Arc<Universe>> = OnceLock::new();
    U.get_or_init(|| Arc::new(Universe::two_sector(3, 3)))
}

fn small_basis() -> &'static [FockState] {
    static B: OnceLock<Vec<FockState>> = OnceLock::new();
    B.get_or_init(|| {
        let u = small_universe();
        basis_monomials(u, 3).into_iter().map(|m| State::from_monomial(u, m, Scalar::one())).collect()
    })
}

/// Whether two operators agree on every basis state of rank `≤ 3`.
pub(crate) fn same_action(x: &OperatorElement, y: &OperatorElement, basis: &[FockState]) -> Result<(), String> {
    for b in basis {
        let (p, q) = (op_apply(x, b).expect("universe"), op_apply(y, b).expect("universe"));
        if p != q {
            return Err(format!("on {b}: {p} vs {q}"));
        }
    }
    Ok(())
}

fn car_ccr(rng: &mut TrialRng, out: &mut Trial) {
    let u = small_universe();
    let basis = small_basis();
    let zeta: DualState = rng.rank_one(u);
    let z: FockState = rng.rank_one(u);
    let (a, ad) = (OperatorElement::absorb(&zeta).expect("rank 1"), OperatorElement::emit(&z).expect("rank 1"));
    let expected = OperatorElement::scalar(u, pairing(&zeta, &z).expect("universe"));
    let got = super_bracket(&a, &ad).expect("universe");
    let input = || format!("zeta = {zeta}; z = {z}");
    out.check_eq(input, &expected, &got);
    let acts = same_action(&got, &expected, basis);
    out.check(acts.is_ok(), input, || "pairing times identity".into(), || acts.clone().unwrap_err());

    let (zeta2, z2): (DualState, FockState) = (rng.rank_one(u), rng.rank_one(u));
    let a2 = OperatorElement::absorb(&zeta2).expect("rank 1");
    let ad2 = OperatorElement::emit(&z2).expect("rank 1");
    let aa = super_bracket(&a, &a2).expect("universe");
    out.check(aa.is_zero(), || format!("zeta = {zeta}; zeta' = {zeta2}"), || "0".into(), || aa.to_string());
    let cc = super_bracket(&ad, &ad2).expect("universe");
    out.check(cc.is_zero(), || format!("z = {z}; z' = {z2}"), || "0".into(), || cc.to_string());
}

/// Generator-by-generator evaluation of a raw word, rightmost first.
pub(crate) fn raw_apply(word: &[Gen], psi: &FockState) -> FockState {
    word.iter().rev().fold(psi.clone(), |acc, &g| apply_generator(g, &acc))
}

fn normal_order_trial(rng: &mut TrialRng, out: &mut Trial) {
    let u = small_universe();
    let basis = small_basis();
    let word = rng.word(u, 4);
    let normal = normal_order(u, &word);
    let input = || format!("word = {}", word.iter().map(|g| g.name(u)).collect::<Vec<_>>().join(" "));
    for b in basis {
        let (p, q) = (op_apply(&normal, b).expect("universe"), raw_apply(&word, b));
        if p != q {
            out.check(false, input, || q.to_string(), || format!("{p} (on {b})"));
            return;
        }
    }
    out.check(true, input, String::new, String::new);

    let ops: Vec<OperatorElement> = (0..3).map(|_| normal_order(u, &rng.word(u, 2))).collect();
    let left = ops[0].mul(&ops[1]).and_then(|x| x.mul(&ops[2])).expect("universe");
    let right = ops[1].mul(&ops[2]).and_then(|x| ops[0].mul(&x)).expect("universe");
    out.check_eq(|| format!("X = {}; Y = {}; Z = {}", ops[0], ops[1], ops[2]), &right, &left);
}

fn adjunction(rng: &mut TrialRng, out: &mut Trial) {
    let u = small_universe();
    let zeta: DualState = rng.dual_state(u, 2);
    let xi: DualState = rng.dual_state(u, 2);
    let psi: FockState = rng.fock_state(u, 3);
    let lhs = contract(&zeta.product(&xi).expect("universe"), &psi).expect("universe");
    let rhs = contract(&xi, &contract(&zeta, &psi).expect("universe")).expect("universe");
    out.check_eq(|| format!("zeta = {zeta}; xi = {xi}; psi = {psi}"), &rhs, &lhs);
}
