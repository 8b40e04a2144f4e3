use proptest::prelude::*;
use spinor_kit::cli::random::TrialRng;
use spinor_kit::diracw::{charge_conjugate, gamma, k_form, observer_split, DiracVector};
use spinor_kit::spintensor::{
    null_decompose, null_decompose_scaled, outer_conj, Epsilon, Metric, MinkVector, ScaledTensor, TimeOrientation, Variance,
};
use spinor_kit::Scalar;

fn rng(seed: u64) -> TrialRng {
    TrialRng::new(seed, "props-spinor", 0)
}

fn dirac(r: &mut TrialRng) -> DiracVector {
    DiracVector::new([r.scalar(), r.scalar(), r.scalar(), r.scalar()])
}

fn det2(m: &[[Scalar; 2]; 2]) -> Scalar {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn mul2(a: &[[Scalar; 2]; 2], b: &[[Scalar; 2]; 2]) -> [[Scalar; 2]; 2] {
    std::array::from_fn(|r| std::array::from_fn(|c| &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c]))
}

fn adj2(a: &[[Scalar; 2]; 2]) -> [[Scalar; 2]; 2] {
    std::array::from_fn(|r| std::array::from_fn(|c| a[c][r].conj()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn g_is_twice_the_determinant(seed in any::<u64>()) {
        let y = rng(seed).hermitian();
        let g = Metric::default().pair(y.tensor(), y.tensor()).unwrap();
        prop_assert_eq!(g, Scalar::from_int(2) * det2(&y.tensor().matrix()));
    }

    #[test]
    fn sl2_action_preserves_g(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (y, a) = (r.hermitian(), r.sl2());
        prop_assert!(det2(&a).is_one());
        let moved = mul2(&mul2(&a, &y.tensor().matrix()), &adj2(&a));
        let y2 = MinkVector::new(ScaledTensor::from_matrix([Variance::U, Variance::UBar], moved)).unwrap();
        let m = Metric::default();
        prop_assert_eq!(m.pair(y.tensor(), y.tensor()).unwrap(), m.pair(y2.tensor(), y2.tensor()).unwrap());
    }

    #[test]
    fn flat_then_sharp_is_minus_identity(seed in any::<u64>(), k in 0usize..4) {
        let mut r = rng(seed);
        let phases = [Scalar::one(), Scalar::i(), -Scalar::one(), -Scalar::i()];
        let eps = Epsilon::with_phase(&phases[k]);
        let u = r.spinor();
        prop_assert_eq!(eps.sharp(&eps.flat(&u).unwrap()).unwrap(), u.scale(&Scalar::from_int(-1)));
        let v = r.spinor();
        prop_assert_eq!(eps.eval(&u, &v).unwrap(), -eps.eval(&v, &u).unwrap());
    }

    #[test]
    fn null_vectors_decompose(seed in any::<u64>(), past in any::<bool>()) {
        let mut r = rng(seed);
        let u = r.spinor();
        prop_assume!(!u.is_zero());
        let sign = Scalar::from_int(if past { -1 } else { 1 });
        let y = MinkVector::new(outer_conj(&u).unwrap().scale(&sign)).unwrap();
        let m = Metric::default();
        let d = null_decompose_scaled(&y, &m).unwrap();
        let want = if past { TimeOrientation::Past } else { TimeOrientation::Future };
        prop_assert_eq!(d.orientation, want);
        let rebuilt = outer_conj(&d.spinor.clone().with_unit(u.unit())).unwrap().scale(&(&sign / &d.norm_sqr));
        prop_assert_eq!(rebuilt.matrix(), y.tensor().matrix());
        if let Ok(exact) = null_decompose(&y, &m) {
            let rebuilt = outer_conj(&exact.spinor.with_unit(u.unit())).unwrap().scale(&sign);
            prop_assert_eq!(rebuilt.matrix(), y.tensor().matrix());
        }
    }

    #[test]
    fn k_is_hermitian_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (psi, phi, c) = (dirac(&mut r), dirac(&mut r), r.scalar());
        prop_assert_eq!(k_form(&psi, &phi), k_form(&phi, &psi).conj());
        prop_assert_eq!(k_form(&psi, &phi.scale(&c)), &c * &k_form(&psi, &phi));
        prop_assert!(k_form(&psi, &psi).is_real());
    }

    #[test]
    fn charge_conjugation_is_antilinear_and_squares_to_minus_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let eps = Epsilon::standard();
        let (psi, c) = (dirac(&mut r), r.scalar());
        let cc = |x: &DiracVector| charge_conjugate(&eps, x).unwrap();
        prop_assert_eq!(cc(&psi.scale(&c)), cc(&psi).scale(&c.conj()));
        prop_assert_eq!(cc(&cc(&psi)), psi.scale(&Scalar::from_int(-1)));
    }

    #[test]
    fn observer_split_is_an_eigen_decomposition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tau = r.observer();
        let psi = dirac(&mut r);
        let (plus, minus) = observer_split(&tau, &psi, &Metric::default()).unwrap();
        let g = gamma(tau.tensor()).unwrap();
        prop_assert_eq!(plus.add(&minus), psi);
        prop_assert_eq!(g.apply(&plus), plus.clone());
        prop_assert_eq!(g.apply(&minus), minus.scale(&Scalar::from_int(-1)));
    }
}
