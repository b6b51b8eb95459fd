mod common;

use hodgelab::exterior::{
    curl, div, double_star_sign, grad, graded_leibniz_check, homotopy_operator, maxwell_field, DifferentialForm,
};
use hodgelab::poly::{int, Polynomial};
use proptest::prelude::*;
use rand::Rng;

fn blade(n: usize, ix: &[usize]) -> DifferentialForm {
    DifferentialForm::blade(n, ix).unwrap()
}

#[test]
fn star_table_in_r3() {
    let vol = blade(3, &[0, 1, 2]);
    assert_eq!(DifferentialForm::constant(3, int(1)).star(), vol);
    assert_eq!(blade(3, &[0]).star(), blade(3, &[1, 2]));
    assert_eq!(blade(3, &[1]).star(), blade(3, &[2, 0]));
    assert_eq!(blade(3, &[2]).star(), blade(3, &[0, 1]));
    assert_eq!(blade(3, &[1, 2]).star(), blade(3, &[0]));
    assert_eq!(blade(3, &[2, 0]).star(), blade(3, &[1]));
    assert_eq!(blade(3, &[0, 1]).star(), blade(3, &[2]));
    assert_eq!(vol.star(), DifferentialForm::constant(3, int(1)));
}

#[test]
fn double_star_on_every_blade() {
    for n in 1..=5 {
        for p in 0..=n {
            for b in hodgelab::exterior::MultiIndex::all(n, p) {
                let w = blade(n, b.indices());
                assert_eq!(w.star().star(), w.scale(&double_star_sign(n, p)));
            }
        }
    }
}

#[test]
fn maxwell_potentials() {
    let mut rng = common::rng(21);
    for _ in 0..10 {
        let a = common::random_form(&mut rng, 4, 1, 2);
        let f = common::random_poly(&mut rng, 4, 3);
        let report = maxwell_field(&a).unwrap();
        assert!(report.bianchi_ok && report.continuity_ok);
        let gauge = &a + &DifferentialForm::scalar(f).d();
        assert_eq!(maxwell_field(&gauge).unwrap().field, report.field);
    }
}

#[test]
fn witten_twist_is_conjugated_derivative() {
    // d_t = e^{-tf} d e^{tf}, so d_t squares to zero for every f and t
    let mut rng = common::rng(22);
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let p = rng.gen_range(0..=n);
        let w = common::random_form(&mut rng, n, p, 2);
        let f = common::random_poly(&mut rng, n, 2);
        let t = common::small_rational(&mut rng);
        let once = w.witten_d(&f, &t).unwrap();
        assert!(once.witten_d(&f, &t).unwrap().is_zero());
        assert_eq!(w.witten_d(&f, &int(0)).unwrap(), w.d());
    }
}

fn form_strategy() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nilpotency_and_poincare((seed, n) in form_strategy()) {
        let mut rng = common::rng(seed);
        let p = rng.gen_range(1..=n);
        let w = common::random_form(&mut rng, n, p, 3);
        prop_assert!(w.d().d().is_zero());
        prop_assert!(w.codiff().codiff().is_zero());
        let k = homotopy_operator(&w).unwrap();
        let recovered = if p == n { k.d() } else { &k.d() + &homotopy_operator(&w.d()).unwrap() };
        prop_assert_eq!(recovered, w);
    }

    #[test]
    fn leibniz_and_anticommutativity((seed, n) in form_strategy()) {
        let mut rng = common::rng(seed);
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(0..=n - p);
        let a = common::random_form(&mut rng, n, p, 2);
        let b = common::random_form(&mut rng, n, q, 2);
        prop_assert!(graded_leibniz_check(&a, &b).unwrap());
        let sign = if p * q % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign));
    }

    #[test]
    fn vector_identities(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = DifferentialForm::scalar(common::random_poly(&mut rng, 3, 3));
        let v = common::random_form(&mut rng, 3, 1, 3);
        prop_assert!(curl(&grad(&f).unwrap()).unwrap().is_zero());
        prop_assert!(div(&curl(&v).unwrap()).unwrap().is_zero());
        // Laplacian of functions is -div grad; on 1-forms it is curl curl - grad div
        prop_assert_eq!(f.laplacian(), -div(&grad(&f).unwrap()).unwrap());
        let curl_curl = curl(&curl(&v).unwrap()).unwrap();
        let grad_div = grad(&div(&v).unwrap()).unwrap();
        prop_assert_eq!(&curl_curl - &grad_div, v.laplacian());
    }
}

#[test]
fn harmonic_examples() {
    let x = |i| Polynomial::var(2, i);
    // x² - y² is harmonic; so is the closed, coclosed 1-form x dy + y dx
    let u = DifferentialForm::scalar(&x(0) * &x(0) - &x(1) * &x(1));
    assert!(u.laplacian().is_zero());
    let w = DifferentialForm::one_form(vec![x(1), x(0)]);
    assert!(w.is_harmonic().is_harmonic());
}
