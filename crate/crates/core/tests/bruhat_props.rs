mod common;

use common::*;
use coxsmooth::algebra::{palindromic_defect, q_integer};
use coxsmooth::bruhat::{
    bruhat_leq, is_bp, lower_interval, lower_interval_from_word, lower_interval_with_cap, max_in_parabolic_interval,
    palindromicity_profile, parabolic_decomposition, poincare, relative_poincare, BpMethod,
};
use coxsmooth::{fixtures, Bond, CoxError, CoxeterSystem, Defect, GenSet, GroupElement, QPolynomial};
use num_bigint::BigInt;
use rand::Rng;

fn poly(c: &[i64]) -> QPolynomial {
    QPolynomial::from_i64s(c)
}

fn el(s: &CoxeterSystem, text: &str) -> GroupElement {
    s.parse_element(text).unwrap()
}

fn genset(s: &CoxeterSystem, text: &str) -> GenSet {
    s.parse_genset(text).unwrap()
}

/// A reduced word built by always peeling off the largest left descent.
fn max_descent_word(s: &CoxeterSystem, w: &GroupElement) -> Vec<u8> {
    let mut cur = w.clone();
    let mut out = Vec::new();
    while let Some(a) = s.left_descents(&cur).max() {
        out.push(a);
        cur = s.left_multiply(a, &cur);
    }
    out
}

#[test]
fn small_intervals() {
    for m in [2, 3, 5] {
        let s = sys(fixtures::dihedral(Bond::Finite(m)));
        let iv = lower_interval(&s, &el(&s, "s,t")).unwrap();
        let names: Vec<String> = iv.members.iter().map(|x| s.format_element(x)).collect();
        assert_eq!(names, vec!["e", "s", "t", "s,t"]);
        assert_eq!(iv.rank_counts, vec![1, 2, 1]);
    }
    let a2 = sys(fixtures::a2());
    let iv = lower_interval(&a2, &el(&a2, "s,t,s")).unwrap();
    assert_eq!(iv.members.len(), 6);
    assert_eq!(iv.rank_counts, vec![1, 2, 2, 1]);
}

#[test]
fn example_one_interval() {
    let s = sys(fixtures::fig1());
    let w = el(&s, "s1,s2,s1,s3,s2,s1,s3,s2,s1,s4");
    let iv = lower_interval(&s, &w).unwrap();
    let want = poly(&[1, 1]) * poly(&[1, 1, 1]) * poly(&[1, 1, 2, 2, 2, 1, 1]) * poly(&[1, 1]);
    assert_eq!(iv.poincare(), want);
    assert_eq!(iv.members.len(), 120);
    assert_eq!(palindromic_defect(&want).unwrap(), Defect::Palindromic);
}

#[test]
fn interval_cap_is_an_error() {
    let s = sys(fixtures::fig1());
    let w = el(&s, "s1,s2,s1,s3,s2,s1,s3,s2,s1,s4");
    assert!(matches!(lower_interval_with_cap(&s, &w, 50), Err(CoxError::IntervalCap { cap: 50 })));
}

#[test]
fn intervals_do_not_depend_on_the_reduced_word() {
    let mut r = rng(10);
    for s in [sys(fixtures::fig1()), sys(fixtures::h3()), w(3, 4), t234()] {
        for _ in 0..100 {
            let x = random_element(&mut r, &s, 12);
            let alt = max_descent_word(&s, &x);
            assert_eq!(alt.len(), x.length());
            assert_eq!(s.element(&alt), x);
            let a = lower_interval(&s, &x).unwrap();
            let b = lower_interval_from_word(&s, &alt, usize::MAX).unwrap();
            assert_eq!(a.members, b.members);
        }
    }
}

#[test]
fn relative_examples() {
    let s = sys(fixtures::fig1());
    assert_eq!(relative_poincare(&s, &el(&s, "s2,s1"), genset(&s, "s1")).unwrap(), q_integer(3));
    let v = el(&s, "s3,s2,s1,s3,s2,s1");
    let want = &q_integer(7) + &q_integer(3).shift(2);
    assert_eq!(relative_poincare(&s, &v, genset(&s, "s1,s2")).unwrap(), want);
    assert_eq!(relative_poincare(&s, &v, GenSet::EMPTY).unwrap(), poincare(&s, &v).unwrap());
    // v must be a minimal coset representative
    assert!(matches!(
        relative_poincare(&s, &el(&s, "s1,s2"), genset(&s, "s1")),
        Err(CoxError::Precondition(_))
    ));
}

#[test]
fn profile_examples() {
    let fig1 = sys(fixtures::fig1());
    let p = palindromicity_profile(&fig1, &el(&fig1, "s2,s4,s2,s4,s1,s2,s4,s1,s2,s4,s2")).unwrap();
    assert_eq!(p.defect, Defect::At(3));
    assert!(p.two_palindromic);
    let t = t234();
    let p = palindromicity_profile(&t, &el(&t, "s,t,s,r,t,s")).unwrap();
    assert_eq!(p.poincare, poly(&[1, 3, 5, 7, 6, 3, 1]));
    assert_eq!(p.defect, Defect::At(2));
    let mut r = rng(11);
    for _ in 0..200 {
        let x = random_element(&mut r, &fig1, 2);
        assert_eq!(palindromicity_profile(&fig1, &x).unwrap().defect, Defect::Palindromic);
    }
}

#[test]
fn parabolic_decomposition_examples() {
    let t = t234();
    let w = el(&t, "t,s,r,t,s,t");
    let all = t.all_generators();
    let d = parabolic_decomposition(&t, &w, GenSet::EMPTY);
    assert!(d.u.is_identity() && d.v == w);
    let d = parabolic_decomposition(&t, &w, all);
    assert!(d.v.is_identity() && d.u == w);
    let d = parabolic_decomposition(&t, &w, genset(&t, "s,t"));
    assert_eq!(d.u, el(&t, "t,s"));
    assert_eq!(d.v, el(&t, "r,t,s,t"));
}

#[test]
fn parabolic_decomposition_invariants() {
    let mut r = rng(12);
    for s in [sys(fixtures::fig1()), sys(fixtures::fig2(Bond::Finite(4))), sys(fixtures::h3())] {
        for _ in 0..500 {
            let x = random_element(&mut r, &s, 14);
            let j: GenSet = (0..s.rank() as u8).filter(|_| r.gen_bool(0.5)).collect();
            let d = parabolic_decomposition(&s, &x, j);
            assert!(d.u.support().is_subset(j));
            assert!(s.left_descents(&d.v).intersection(j).is_empty());
            assert_eq!(s.multiply(&d.u, &d.v).unwrap(), x);
            assert_eq!(d.u.length() + d.v.length(), x.length());
        }
    }
}

#[test]
fn max_in_parabolic_examples() {
    let s = sys(fixtures::fig1());
    let w = el(&s, "s1,s2,s1,s3,s2,s1,s3,s2,s1,s4");
    assert!(max_in_parabolic_interval(&s, &w, GenSet::EMPTY).unwrap().is_identity());
    assert_eq!(
        max_in_parabolic_interval(&s, &w, genset(&s, "s1,s2,s3")).unwrap(),
        el(&s, "s1,s2,s1,s3,s2,s1,s3,s2,s1")
    );
    let t = t234();
    let w = el(&t, "t,s,r,t,s,t");
    assert_ne!(max_in_parabolic_interval(&t, &w, genset(&t, "s,t")).unwrap(), el(&t, "t,s"));
}

#[test]
fn bp_examples() {
    let s = sys(fixtures::fig1());
    let w = el(&s, "s1,s2,s1");
    for m in [BpMethod::Lemma, BpMethod::Definition] {
        assert!(is_bp(&s, &w, genset(&s, "s1"), m).unwrap());
        assert!(is_bp(&s, &w, GenSet::EMPTY, m).unwrap());
    }
    let t = t234();
    let w = el(&t, "t,s,r,t,s,t");
    for m in [BpMethod::Lemma, BpMethod::Definition] {
        assert!(!is_bp(&t, &w, genset(&t, "s,t"), m).unwrap());
    }
}

#[test]
fn coefficient_identities() {
    let groups = [sys(fixtures::a2()), w(3, 3), w(3, 4), sys(fixtures::h3()), sys(fixtures::fig1())];
    for s in &groups {
        for x in elements_up_to(s, 8) {
            let iv = lower_interval(s, &x).unwrap();
            let p = iv.poincare();
            assert_eq!(p.eval_at_one(), BigInt::from(iv.members.len()));
            assert_eq!(p.coeff(0), BigInt::from(1));
            assert_eq!(p.degree(), Some(x.length()));
            if x.length() >= 1 {
                assert_eq!(p.coeff(1), BigInt::from(x.support().len()));
                assert_eq!(p.coeff(x.length() - 1), BigInt::from(s.pred_count(&x)));
                assert_eq!(p.coeff(x.length()), BigInt::from(1));
            }
        }
    }
}

#[test]
fn parabolic_factorization_equivalence() {
    for s in [t234(), w(3, 4)] {
        let subsets: Vec<GenSet> = (0u64..1 << s.rank()).map(|b| (0..s.rank() as u8).filter(|&i| b >> i & 1 == 1).collect()).collect();
        for x in elements_up_to(&s, 6) {
            let px = poincare(&s, &x).unwrap();
            for &j in &subsets {
                let d = parabolic_decomposition(&s, &x, j);
                let lemma = is_bp(&s, &x, j, BpMethod::Lemma).unwrap();
                let def = is_bp(&s, &x, j, BpMethod::Definition).unwrap();
                let product = &poincare(&s, &d.u).unwrap() * &relative_poincare(&s, &d.v, j).unwrap();
                assert_eq!(lemma, def, "{} J = {:?}", s.format_element(&x), j);
                assert_eq!(lemma, product == px, "{} J = {:?}", s.format_element(&x), j);
            }
        }
    }
}

#[test]
fn relative_degree_is_length() {
    let mut r = rng(13);
    let s = sys(fixtures::fig1());
    for _ in 0..200 {
        let x = random_element(&mut r, &s, 10);
        let j: GenSet = (0..4u8).filter(|_| r.gen_bool(0.5)).collect();
        let v = parabolic_decomposition(&s, &x, j).v;
        assert_eq!(relative_poincare(&s, &v, j).unwrap().degree(), Some(v.length()));
    }
}

#[test]
fn bp_associativity() {
    let mut r = rng(14);
    let mut checked = 0;
    for s in tri_avoiding().into_iter().chain([t234(), sys(fixtures::h3())]) {
        for _ in 0..400 {
            let x = random_element(&mut r, &s, 10);
            let j2: GenSet = (0..s.rank() as u8).filter(|_| r.gen_bool(0.6)).collect();
            let j1: GenSet = j2.iter().filter(|_| r.gen_bool(0.5)).collect();
            let outer = parabolic_decomposition(&s, &x, j2);
            let inner = parabolic_decomposition(&s, &outer.u, j1);
            if is_bp(&s, &x, j2, BpMethod::Definition).unwrap() && is_bp(&s, &outer.u, j1, BpMethod::Definition).unwrap() {
                checked += 1;
                let whole = parabolic_decomposition(&s, &x, j1);
                assert_eq!(whole.u, inner.u);
                assert_eq!(whole.v, s.multiply(&inner.v, &outer.v).unwrap());
                assert!(is_bp(&s, &x, j1, BpMethod::Definition).unwrap());
                assert!(is_bp(&s, &x, j1, BpMethod::Lemma).unwrap());
            }
        }
    }
    assert!(checked > 500, "only {checked} chains exercised");
}

#[test]
fn bruhat_comparison_matches_intervals() {
    let mut r = rng(15);
    for s in [sys(fixtures::fig1()), sys(fixtures::h3()), sys(fixtures::fig2(Bond::Finite(4)))] {
        for _ in 0..40 {
            let x = random_element(&mut r, &s, 10);
            let iv = lower_interval(&s, &x).unwrap();
            for _ in 0..50 {
                let y = random_element(&mut r, &s, 10);
                assert_eq!(bruhat_leq(&s, &y, &x), iv.contains(&y));
            }
            for y in iv.members.iter().step_by(7) {
                assert!(bruhat_leq(&s, y, &x));
            }
        }
    }
}
