use num_bigint::BigInt;
use proptest::prelude::*;
use workbench::series::{
    series_a4x, series_gysin, series_quadratic, series_sym_invariants, series_sylow_alt_pipeline,
    series_tau_quadratic, sylow_alternating_series, sylow_symmetric_series, PowerSeries,
};
use workbench::Error;

fn ints(s: &PowerSeries) -> Vec<u64> {
    s.to_u64s().unwrap()
}

#[test]
fn gysin_klein_from_d8() {
    let n = 10;
    let d8 = PowerSeries::inverse_one_minus_t_pow(2, n);
    let t_over = PowerSeries::monomial(1, 1, n).mul(&PowerSeries::inverse_one_minus_t_pow(1, n)).unwrap();
    let mut one_minus_t2_inv = PowerSeries::zero(n);
    for k in (0..=n).step_by(2) {
        one_minus_t2_inv = one_minus_t2_inv.add(&PowerSeries::monomial(1, k, n)).unwrap();
    }
    let ker = t_over.mul(&one_minus_t2_inv).unwrap();
    assert_eq!(series_gysin(&d8, &ker).unwrap(), d8);
}

#[test]
fn s8_gysin_low_degrees() {
    let p = series_sylow_alt_pipeline(3, 4).unwrap();
    let a = series_gysin(&p.s, &p.t).unwrap();
    assert_eq!(a.coeff(1), BigInt::from(3));
    assert_eq!(a.coeff(2), BigInt::from(7));
}

#[test]
fn pipeline_small_values() {
    let p2 = series_sylow_alt_pipeline(2, 8).unwrap();
    assert_eq!(ints(&p2.s), (1..=9).collect::<Vec<u64>>());
    assert_eq!(ints(&p2.t), vec![0, 1, 1, 2, 2, 3, 3, 4, 4]);
    assert_eq!(ints(&p2.a), (1..=9).collect::<Vec<u64>>());
    let p4 = series_sylow_alt_pipeline(4, 3).unwrap();
    assert_eq!(ints(&p4.a)[..3], [1, 4, 13]);
    assert_eq!(series_sylow_alt_pipeline(5, 2).unwrap().a.coeff(2), BigInt::from(23));
    assert_eq!(series_sylow_alt_pipeline(6, 2).unwrap().a.coeff(2), BigInt::from(38));
    assert!(matches!(series_sylow_alt_pipeline(0, 3), Err(Error::Unsupported(_))));
}

#[test]
fn a16_is_not_a4_wreath_s4() {
    let a4 = series_sylow_alt_pipeline(4, 6).unwrap().a;
    let model = series_a4x(&PowerSeries::inverse_one_minus_t_pow(2, 6)).unwrap();
    assert_eq!(a4.coeff(2), BigInt::from(13));
    assert_eq!(model.coeff(2), BigInt::from(15));
    assert_eq!(a4.coeff(1), model.coeff(1));
}

#[test]
fn a8_matches_a4_wreath_z2() {
    let n = 30;
    let a3 = series_sylow_alt_pipeline(3, n).unwrap().a;
    assert_eq!(series_a4x(&PowerSeries::inverse_one_minus_t_pow(1, n)).unwrap(), a3);
}

#[test]
fn symmetric_and_alternating_series() {
    assert_eq!(ints(&sylow_symmetric_series(1, 4).unwrap()), vec![1, 0, 0, 0, 0]);
    assert_eq!(ints(&sylow_symmetric_series(2, 4).unwrap()), vec![1; 5]);
    assert_eq!(ints(&sylow_symmetric_series(3, 4).unwrap()), vec![1; 5]);
    assert_eq!(ints(&sylow_symmetric_series(8, 7).unwrap()), vec![1, 3, 7, 13, 22, 34, 50, 70]);
    assert_eq!(ints(&sylow_alternating_series(16, 2).unwrap()), vec![1, 4, 13]);
    assert_eq!(ints(&sylow_alternating_series(4, 4).unwrap()), vec![1, 2, 3, 4, 5]);
    assert_eq!(ints(&sylow_alternating_series(2, 3).unwrap()), vec![1, 0, 0, 0]);
    let a6 = sylow_alternating_series(6, 6).unwrap();
    assert_eq!(a6.truncation(), 6);
    assert_eq!(a6.coeff(0), BigInt::from(1));
}

#[test]
fn mismatched_truncations_are_rejected() {
    let a = PowerSeries::one(3);
    let b = PowerSeries::one(4);
    assert!(matches!(a.add(&b), Err(Error::DimensionMismatch(_))));
    assert!(a.mul(&b).is_err());
}

#[test]
fn large_coefficients_stay_exact() {
    let p = series_sylow_alt_pipeline(8, 40).unwrap();
    assert!(p.s.to_u64s().is_none());
    assert!(p.a.is_nonnegative());
    let huge = PowerSeries::inverse_one_minus_t_pow(40, 60);
    let json = huge.to_json("big");
    assert!(json.coefficients.iter().any(serde_json::Value::is_string));
}

#[test]
fn parsing() {
    assert_eq!(ints(&PowerSeries::parse("1, 2,3", 4).unwrap()), vec![1, 2, 3, 0, 0]);
    assert!(matches!(PowerSeries::parse("1,x", 4), Err(Error::Parse(_))));
}

fn poincare(max: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..max, 1..12)
}

proptest! {
    #[test]
    fn quadratic_is_nonnegative_and_integral(c in poincare(50), n in 4usize..14) {
        let s = PowerSeries::from_coeffs(&c, n);
        let q = series_quadratic(&s).unwrap();
        prop_assert!(q.is_nonnegative());
        let sym = series_sym_invariants(&s).unwrap();
        prop_assert!(sym.is_nonnegative());
        prop_assert_eq!(q.coeff(0), sym.coeff(0));
    }

    #[test]
    fn quadratic_is_not_additive(c in poincare(20), d in poincare(20), n in 2usize..10) {
        let a = PowerSeries::from_coeffs(&c, n);
        let b = PowerSeries::from_coeffs(&d, n);
        let lhs = series_quadratic(&a.add(&b).unwrap()).unwrap();
        let rhs = series_quadratic(&a).unwrap().add(&series_quadratic(&b).unwrap()).unwrap();
        let cross = a.mul(&b).unwrap();
        prop_assert_eq!(lhs, rhs.add(&cross).unwrap());
    }

    #[test]
    fn a4x_is_integral(c in poincare(30), n in 2usize..16) {
        let s = PowerSeries::from_coeffs(&c, n);
        prop_assert!(series_a4x(&s).unwrap().is_nonnegative());
    }

    #[test]
    fn tau_quadratic_with_trivial_tau(c in poincare(30), n in 2usize..12) {
        let s = PowerSeries::from_coeffs(&c, n);
        let t = series_tau_quadratic(&s, &PowerSeries::zero(n)).unwrap();
        let want = series_quadratic(&s).unwrap().sub(&series_sym_invariants(&s).unwrap()).unwrap();
        prop_assert_eq!(t, want);
    }

    #[test]
    fn pipeline_stays_nonnegative(m in 1u32..7, n in 1usize..25) {
        let p = series_sylow_alt_pipeline(m, n).unwrap();
        prop_assert!(p.s.is_nonnegative() && p.t.is_nonnegative() && p.a.is_nonnegative());
        prop_assert_eq!(p.a.coeff(0), BigInt::from(1));
        prop_assert_eq!(series_gysin(&p.s, &p.t).unwrap(), p.a);
    }
}
