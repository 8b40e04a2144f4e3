use proptest::prelude::*;
use spinor_kit::cli::random::TrialRng;
use spinor_kit::fnforms::{curvature, fn_bracket, lie_bracket, MatrixForm, Poly, ScalarForm, TangentForm};

fn rng(seed: u64) -> TrialRng {
    TrialRng::new(seed, "props-forms", 0)
}

fn field(r: &mut TrialRng, dim: usize) -> Vec<Poly> {
    (0..dim).map(|_| r.poly(dim, 2, 2)).collect()
}

/// `[X, Y]^k = X^j ∂_j Y^k − Y^j ∂_j X^k`, written out again.
fn bracket_oracle(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let n = x.len();
    (0..n)
        .map(|k| {
            (0..n).fold(Poly::zero(n), |acc, j| acc.add(&x[j].mul(&y[k].deriv(j))).sub(&y[j].mul(&x[k].deriv(j))))
        })
        .collect()
}

fn add_fields(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(p, q)| p.add(q)).collect()
}

fn sub_fields(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(p, q)| p.sub(q)).collect()
}

/// `K(X)` for a tangent-valued 1-form.
fn eval1(k: &TangentForm, x: &[Poly]) -> Vec<Poly> {
    let n = x.len();
    k.axes()
        .iter()
        .map(|w| (0..n).fold(Poly::zero(n), |acc, i| match w.get(1 << i) {
            Some(c) => acc.add(&c.mul(&x[i])),
            None => acc,
        }))
        .collect()
}

/// `T(X, Y)` for a tangent-valued 2-form.
fn eval2(t: &TangentForm, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let n = x.len();
    t.axes()
        .iter()
        .map(|w| {
            let mut acc = Poly::zero(n);
            for i in 0..n {
                for j in i + 1..n {
                    if let Some(c) = w.get((1 << i) | (1 << j)) {
                        acc = acc.add(&c.mul(&x[i].mul(&y[j]).sub(&x[j].mul(&y[i]))));
                    }
                }
            }
            acc
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), dim in 1usize..=4, deg in 0usize..3) {
        prop_assume!(deg <= dim);
        let w = rng(seed).scalar_form(dim, deg, 3);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>(), p in 0usize..2, q in 0usize..2) {
        let mut r = rng(seed);
        let (a, b) = (r.scalar_form(3, p, 2), r.scalar_form(3, q, 2));
        let lhs = a.wedge(&b).unwrap().d();
        let sign = spinor_kit::Scalar::from_int(if p % 2 == 0 { 1 } else { -1 });
        let rhs = a.d().wedge(&b).unwrap().add(&a.wedge(&b.d()).unwrap().scale(&sign)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula(seed in any::<u64>(), dim in 2usize..=3, deg in 0usize..3) {
        prop_assume!(deg <= dim);
        let mut r = rng(seed);
        let w = r.scalar_form(dim, deg, 2);
        let u = field(&mut r, dim);
        let via_cartan = if deg == 0 {
            w.d().interior(&u)
        } else {
            w.d().interior(&u).add(&w.interior(&u).d()).unwrap()
        };
        prop_assert_eq!(w.lie(&u), via_cartan);
    }

    #[test]
    fn zero_forms_bracket_like_vector_fields(seed in any::<u64>(), dim in 2usize..=3) {
        let mut r = rng(seed);
        let (u, v) = (field(&mut r, dim), field(&mut r, dim));
        let fnb = fn_bracket(&TangentForm::vector_field(&u), &TangentForm::vector_field(&v)).unwrap();
        prop_assert_eq!(fnb.as_vector_field().unwrap(), bracket_oracle(&u, &v));
        prop_assert_eq!(lie_bracket(&u, &v), bracket_oracle(&u, &v));
    }

    /// For tangent-valued 1-forms:
    /// `[K,L](X,Y) = [KX,LY] − [KY,LX] − L([KX,Y] − [KY,X]) − K([X,LY] − [Y,LX]) + (LK + KL)[X,Y]`.
    #[test]
    fn one_form_bracket_matches_evaluation_formula(seed in any::<u64>(), dim in 2usize..=3) {
        let mut r = rng(seed);
        let (k, l) = (r.tangent_form(dim, 1, 1), r.tangent_form(dim, 1, 1));
        let (x, y) = (field(&mut r, dim), field(&mut r, dim));
        let br = bracket_oracle;
        let (kx, ky, lx, ly) = (eval1(&k, &x), eval1(&k, &y), eval1(&l, &x), eval1(&l, &y));
        let xy = br(&x, &y);
        let mut want = sub_fields(&br(&kx, &ly), &br(&ky, &lx));
        want = sub_fields(&want, &eval1(&l, &sub_fields(&br(&kx, &y), &br(&ky, &x))));
        want = sub_fields(&want, &eval1(&k, &sub_fields(&br(&x, &ly), &br(&y, &lx))));
        want = add_fields(&want, &add_fields(&eval1(&l, &eval1(&k, &xy)), &eval1(&k, &eval1(&l, &xy))));
        let got = eval2(&fn_bracket(&k, &l).unwrap(), &x, &y);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn abelian_curvature_is_da(seed in any::<u64>()) {
        let a: MatrixForm = rng(seed).matrix_form(3, 1, 1, 2);
        prop_assert_eq!(curvature(&a).unwrap(), a.d());
    }
}

#[test]
fn golden_brackets() {
    let dx = ScalarForm::term(2, &[0], "1").unwrap();
    let z = TangentForm::along(&dx, 0);
    assert!(fn_bracket(&z, &z).unwrap().is_zero());

    // [x dy ⊗ ∂x, ∂x] = −dy ⊗ ∂x
    let zeta = TangentForm::along(&ScalarForm::term(2, &[1], "x").unwrap(), 0);
    let dxf = TangentForm::vector_field(&[Poly::one(2), Poly::zero(2)]);
    let want = TangentForm::along(&ScalarForm::term(2, &[1], "-1").unwrap(), 0);
    assert_eq!(fn_bracket(&zeta, &dxf).unwrap(), want);

    // [x∂y, ∂x] = −∂y
    let a = TangentForm::vector_field(&[Poly::zero(2), Poly::var(2, 0)]);
    assert_eq!(fn_bracket(&a, &dxf).unwrap(), TangentForm::vector_field(&[Poly::zero(2), Poly::parse("-1", 2).unwrap()]));
}
