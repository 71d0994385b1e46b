use std::f64::consts::PI;
use std::sync::Arc;

use coxsmooth::algebra::{
    build_field, palindromic_defect, q_integer, two_cos, BivariatePoly, BivariateSeries, CyclotomicReal, Defect,
    FieldContext, QPolynomial,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn elem(ctx: &Arc<FieldContext>, coeffs: &[(i64, i64)]) -> CyclotomicReal {
    CyclotomicReal::from_coefficients(ctx, coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
}

fn eval_f64(coeffs: &[BigInt], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
}

fn eval_exact(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Evaluates a field element from its coefficients at the float value of theta.
fn float_value(x: &CyclotomicReal) -> f64 {
    let theta = (PI / x.context().order() as f64).cos() * 2.0;
    x.coefficients()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * theta + c.to_f64().unwrap())
}

const ORDERS: [u64; 8] = [3, 4, 5, 6, 8, 12, 15, 20];

#[test]
fn minimal_polynomial_degrees_and_roots() {
    for n in 1..=40u64 {
        let ctx = FieldContext::new(n);
        let want = if n <= 2 { 1 } else { euler_phi(2 * n) / 2 };
        assert_eq!(ctx.degree() as u64, want, "degree for N = {n}");
        let mp = ctx.minimal_polynomial();
        assert_eq!(mp.last().unwrap(), &BigInt::from(1), "monic for N = {n}");
        let theta = 2.0 * (PI / n as f64).cos();
        assert!(eval_f64(mp, theta).abs() < 1e-6, "theta is a root for N = {n}");
        // every root 2cos(k pi / N) with gcd(k, 2N) = 1 is at most theta
        for k in (1..2 * n).filter(|&k| num_integer::gcd(k, 2 * n) == 1) {
            let r = 2.0 * (k as f64 * PI / n as f64).cos();
            assert!(eval_f64(mp, r).abs() < 1e-6, "conjugate root k = {k} for N = {n}");
            assert!(r <= theta + 1e-12);
        }
        let (lo, hi) = ctx.isolating_interval();
        let (plo, phi) = (eval_exact(mp, lo), eval_exact(mp, hi));
        assert!(plo.is_zero() || phi.is_zero() || (plo < BigRational::zero()) != (phi < BigRational::zero()));
        let (lo, hi) = (lo.to_f64().unwrap(), hi.to_f64().unwrap());
        assert!(lo - 1e-12 <= theta && theta <= hi + 1e-12, "interval brackets theta for N = {n}");
    }
}

#[test]
fn build_field_takes_the_lcm() {
    assert_eq!(build_field(&[3]).order(), 3);
    assert_eq!(build_field(&[4]).order(), 4);
    assert_eq!(build_field(&[3, 5]).order(), 15);
    assert_eq!(build_field(&[4, 6]).order(), 12);
    assert_eq!(build_field(&[]).order(), 1);
    let f = build_field(&[3, 5]);
    assert_eq!(f.degree(), 4);
    assert!((f.theta_f64() - 1.956_295_201_5).abs() < 1e-9);
}

#[test]
fn two_cos_values() {
    for n in ORDERS {
        let ctx = build_field(&[n]);
        assert_eq!(two_cos(0, &ctx), CyclotomicReal::from_int(&ctx, 2));
        assert_eq!(two_cos(n, &ctx), CyclotomicReal::from_int(&ctx, -2));
        assert_eq!(two_cos(1, &ctx), CyclotomicReal::theta(&ctx));
    }
}

#[test]
fn two_cos_product_rule() {
    for n in ORDERS {
        let ctx = build_field(&[n]);
        let v: Vec<CyclotomicReal> = (0..=2 * n).map(|k| two_cos(k, &ctx)).collect();
        for j in 0..=n as usize {
            for k in 0..=n as usize {
                let lhs = &v[j] * &v[k];
                let rhs = &v[j + k] + &v[j.abs_diff(k)];
                assert_eq!(lhs, rhs, "N = {n}, j = {j}, k = {k}");
            }
        }
    }
}

#[test]
fn sign_examples() {
    let f4 = build_field(&[4]);
    assert_eq!(CyclotomicReal::zero(&f4).sign(), 0);
    let theta_minus_one = &CyclotomicReal::theta(&f4) - &CyclotomicReal::from_int(&f4, 1);
    assert_eq!(theta_minus_one.sign(), 1);
    let f5 = build_field(&[5]);
    let one_minus_theta = &CyclotomicReal::from_int(&f5, 1) - &CyclotomicReal::theta(&f5);
    assert_eq!(one_minus_theta.sign(), -1);
}

fn coeff_strategy(len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), len)
}

fn field_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(ORDERS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(n in field_strategy(), a in coeff_strategy(8), b in coeff_strategy(8), c in coeff_strategy(8)) {
        let ctx = build_field(&[n]);
        let d = ctx.degree();
        let (x, y, z) = (elem(&ctx, &a[..d]), elem(&ctx, &b[..d]), elem(&ctx, &c[..d]));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            let inv = x.inv().expect("nonzero elements are invertible");
            prop_assert_eq!(&x * &inv, CyclotomicReal::from_int(&ctx, 1));
        } else {
            prop_assert!(x.inv().is_none());
        }
    }

    #[test]
    fn sign_matches_float_evaluation(n in field_strategy(), a in coeff_strategy(8)) {
        let ctx = build_field(&[n]);
        let x = elem(&ctx, &a[..ctx.degree()]);
        let f = float_value(&x);
        let scale: f64 = x.coefficients().iter().map(|c| c.to_f64().unwrap().abs()).sum::<f64>().max(1.0);
        if f.abs() > 1e-9 * scale {
            prop_assert_eq!(x.sign() as f64, f.signum());
        }
        prop_assert_eq!(x.sign() == 0, x.is_zero());
    }

    #[test]
    fn q_integers_multiply_at_one(a in 0usize..30, b in 0usize..30) {
        let p = &q_integer(a) * &q_integer(b);
        prop_assert_eq!(p.eval_at_one(), BigInt::from(a * b));
    }
}

#[test]
fn q_integer_examples() {
    assert_eq!(q_integer(1), QPolynomial::one());
    assert_eq!(q_integer(3), QPolynomial::from_i64s(&[1, 1, 1]));
    assert!(q_integer(0).is_zero());
}

#[test]
fn defect_examples() {
    let p = QPolynomial::from_i64s(&[1, 3, 5, 7, 6, 3, 1]);
    let d = palindromic_defect(&p).unwrap();
    assert_eq!(d, Defect::At(2));
    assert!(d.is_k_palindromic(2) && !d.is_k_palindromic(3));
    let sym = &q_integer(2) * &q_integer(3);
    assert_eq!(palindromic_defect(&sym).unwrap(), Defect::Palindromic);
    assert_eq!(palindromic_defect(&QPolynomial::from_i64s(&[1, 2, 0, 1])).unwrap(), Defect::At(1));
    assert!(palindromic_defect(&QPolynomial::zero()).is_err());
}

fn bpoly(terms: &[(i64, usize, usize)]) -> BivariatePoly {
    let mut p = BivariatePoly::new();
    for &(c, q, t) in terms {
        p.add_term(rat(c, 1), q, t);
    }
    p
}

#[test]
fn exp_of_qt_plus_t() {
    let s = bpoly(&[(1, 1, 1), (1, 0, 1)]).truncate(8, 5).exp().unwrap();
    let egf = |n: usize| QPolynomial::from_coeffs(s.egf_coefficient(n).unwrap());
    assert_eq!(egf(2), QPolynomial::from_i64s(&[1, 2, 1]));
    // n! [t^n] exp((1 + q) t) = (1 + q)^n
    for n in 0..5 {
        let want: Vec<BigInt> = (0..=n).map(|k| num_integer::binomial(BigInt::from(n), BigInt::from(k))).collect();
        assert_eq!(egf(n as usize), QPolynomial::from_coeffs(want));
    }
}

#[test]
fn rational_expansion_example() {
    // (q t - q^2 t) / (1 - q - q^2 t): the t coefficient is q (1 - q) / (1 - q)
    let num = bpoly(&[(1, 1, 1), (-1, 2, 1)]);
    let den = bpoly(&[(1, 0, 0), (-1, 1, 0), (-1, 2, 1)]);
    let s = BivariateSeries::expand_rational(&num, &den, 12, 4).unwrap();
    let row = s.t_coefficient(1);
    assert_eq!(row[1], rat(1, 1));
    assert!(row.iter().enumerate().all(|(i, c)| i == 1 || c.is_zero()));
}

#[test]
fn reciprocal_of_one_minus_t() {
    let s = bpoly(&[(1, 0, 0), (-1, 0, 1)]).truncate(3, 7).reciprocal().unwrap();
    for n in 0..7 {
        assert_eq!(s.coeff(0, n), rat(1, 1));
        assert_eq!(s.coeff(1, n), rat(0, 1));
    }
    assert!(bpoly(&[(1, 0, 1)]).truncate(3, 3).reciprocal().is_err());
    assert!(bpoly(&[(1, 0, 0)]).truncate(3, 3).exp().is_err());
}

fn small_poly() -> impl Strategy<Value = Vec<(i64, usize, usize)>> {
    prop::collection::vec((-4i64..=4, 0usize..4, 0usize..3), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_expansion_inverts_multiplication(n in small_poly(), d in small_poly(), d0 in 1i64..4) {
        let mut den = bpoly(&d);
        den.add_term(rat(d0, 1), 0, 0);
        let den_s = den.truncate(6, 4);
        prop_assume!(!den_s.coeff(0, 0).is_zero());
        let num = bpoly(&n);
        let s = BivariateSeries::expand_rational(&num, &den, 6, 4).unwrap();
        prop_assert!(s.mul(&den_s) == num.truncate(6, 4));
    }

    #[test]
    fn exp_of_negation_is_inverse(a in small_poly()) {
        let terms: Vec<_> = a.into_iter().filter(|&(_, q, t)| q + t > 0).collect();
        let s = bpoly(&terms).truncate(5, 4);
        let neg = s.scale(&rat(-1, 1));
        let prod = s.exp().unwrap().mul(&neg.exp().unwrap());
        prop_assert!(prod == BivariateSeries::one(5, 4));
    }

    #[test]
    fn truncated_product_is_exact(a in small_poly(), b in small_poly()) {
        // product of the full polynomials, truncated afterwards
        let (pa, pb) = (bpoly(&a), bpoly(&b));
        let mut full = BivariatePoly::new();
        for (qa, ta, ca) in pa.terms() {
            for (qb, tb, cb) in pb.terms() {
                full.add_term(ca * cb, qa + qb, ta + tb);
            }
        }
        prop_assert!(pa.truncate(4, 3).mul(&pb.truncate(4, 3)) == full.truncate(4, 3));
    }
}
