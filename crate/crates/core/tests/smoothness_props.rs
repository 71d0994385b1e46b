mod common;

use std::collections::BTreeSet;

use common::*;
use coxsmooth::algebra::{palindromic_defect, q_integer};
use coxsmooth::bruhat::{is_bp, poincare, relative_poincare, BpMethod};
use coxsmooth::census::{enumerate_by_length, palindromic_census, CensusMode};
use coxsmooth::smoothness::{
    classify_v, closed_form_relative, fast_poincare, find_h3_counterexample, grassmannian_factorizations,
    hecke_witness, non_bp_witness, separable_factorization, VFactorClass, H3_COUNTEREXAMPLE_WORD,
};
use coxsmooth::{fixtures, Bond, CoxError, CoxeterSystem, Defect, GroupElement, QPolynomial};

fn el(s: &CoxeterSystem, text: &str) -> GroupElement {
    s.parse_element(text).unwrap()
}

fn poly(c: &[i64]) -> QPolynomial {
    QPolynomial::from_i64s(c)
}

fn defect(s: &CoxeterSystem, w: &GroupElement) -> Defect {
    palindromic_defect(&poincare(s, w).unwrap()).unwrap()
}

#[test]
fn grassmannian_steps_of_the_examples() {
    let s = sys(fixtures::fig1());
    let w = el(&s, "s1,s2,s1,s3,s2,s1,s3,s2,s1,s4");
    let steps = grassmannian_factorizations(&s, &w);
    let top = steps.iter().find(|st| st.j == s.parse_genset("s1,s2,s3").unwrap()).unwrap();
    assert_eq!(top.v, el(&s, "s4"));
    assert_eq!(top.u, el(&s, "s1,s2,s1,s3,s2,s1,s3,s2,s1"));

    let u1 = el(&s, "s4,s2,s4,s2");
    let steps = grassmannian_factorizations(&s, &u1);
    assert_eq!(steps.len(), 2);
    let pairs: BTreeSet<(String, String)> = steps
        .iter()
        .map(|st| (s.format_element(&st.u), s.format_element(&st.v)))
        .collect();
    let want: BTreeSet<(String, String)> = [("s4", "s2,s4,s2"), ("s2", "s4,s2,s4")]
        .iter()
        .map(|&(u, v)| (s.format_element(&el(&s, u)), s.format_element(&el(&s, v))))
        .collect();
    assert_eq!(pairs, want);
}

#[test]
fn grassmannian_step_invariants() {
    let mut r = rng(30);
    for s in tri_avoiding().into_iter().chain([t234(), sys(fixtures::h3())]) {
        for _ in 0..300 {
            let w = random_element(&mut r, &s, 14);
            let steps = grassmannian_factorizations(&s, &w);
            assert_eq!(steps.is_empty(), w.is_identity());
            for st in steps {
                assert_eq!(st.u.support(), st.j);
                assert_eq!(st.j.with(st.added), w.support());
                assert!(!st.j.contains(st.added));
                assert!(st.v.support().contains(st.added));
                assert_eq!(s.multiply(&st.u, &st.v).unwrap(), w);
                assert_eq!(st.u.length() + st.v.length(), w.length());
                // v has exactly one left descent, the new generator
                assert_eq!(s.left_descents(&st.v).iter().collect::<Vec<_>>(), vec![st.added]);
            }
        }
    }
}

fn classes_along_chain(s: &CoxeterSystem, w: &GroupElement) -> Vec<VFactorClass> {
    fast_poincare(s, w).unwrap().1.factors.into_iter().map(|f| f.class).collect()
}

#[test]
fn classifier_examples() {
    let s = sys(fixtures::fig1());
    let w = el(&s, "s1,s2,s1,s3,s2,s1,s3,s2,s1,s4");
    let classes = classes_along_chain(&s, &w);
    assert!(classes.iter().any(|c| matches!(c, VFactorClass::Case3 { length: 6, .. })));
    let product: QPolynomial = classes.iter().map(closed_form_relative).product();
    assert_eq!(product, poincare(&s, &w).unwrap());

    let w = el(&s, "s2,s4,s2,s4,s1,s2,s4,s1,s2,s4,s2");
    let classes = classes_along_chain(&s, &w);
    let case2 = classes.iter().find(|c| c.tag() == "Case2").expect("Case2 factor");
    let VFactorClass::Case2 { s: a, t: b, m_st, .. } = *case2 else { unreachable!() };
    assert_eq!(m_st, 4);
    assert_eq!(s.bond(a, b), Bond::Finite(4));
    assert_eq!(closed_form_relative(case2), poly(&[1, 1, 2, 2, 3, 2, 1, 1]));

    let w = el(&s, "s2,s1");
    let steps = grassmannian_factorizations(&s, &w);
    assert_eq!(classify_v(&s, &steps[0]).unwrap(), VFactorClass::RankLE2 { length: steps[0].v.length() });
}

#[test]
fn classifier_rejects_a_tri_pattern() {
    // in (2,3,4) the factor v = r t s t of (t s)(r t s t) has rank 3 but no case applies
    let t = t234();
    let w = el(&t, "t,s,r,t,s,t");
    let step = grassmannian_factorizations(&t, &w)
        .into_iter()
        .find(|st| st.j == t.parse_genset("s,t").unwrap())
        .unwrap();
    assert!(matches!(classify_v(&t, &step), Err(CoxError::TheoremViolation(_))));
}

#[test]
fn closed_forms_from_definitions() {
    // [l+1] + q^2 [l-3] for Case 1, plus q^4 [l-6] for Case 2
    for m in 3..=7u32 {
        let c1 = VFactorClass::Case1 { r: 0, s: 1, t: 2, m_st: m, m_rs: Bond::Finite(3) };
        let l = m as usize + 1;
        assert_eq!(closed_form_relative(&c1), &q_integer(l + 1) + &q_integer(l - 3).shift(2));
        if m > 3 {
            let c2 = VFactorClass::Case2 { r: 0, s: 1, t: 2, m_st: m };
            let l = m as usize + 3;
            let want = &(&q_integer(l + 1) + &q_integer(l - 3).shift(2)) + &q_integer(l - 6).shift(4);
            assert_eq!(closed_form_relative(&c2), want);
        }
    }
    for l in (2..=16).step_by(2) {
        let c3 = VFactorClass::Case3 { length: l, cycle: [0, 1, 2] };
        let want: QPolynomial = (0..=l / 4).map(|i| q_integer(l - 4 * i + 1).shift(2 * i)).sum();
        let p = closed_form_relative(&c3);
        assert_eq!(p, want);
        assert_eq!(p.degree(), Some(l));
        assert_eq!(palindromic_defect(&p).unwrap(), Defect::Palindromic);
    }
}

/// Every class is seen, and the closed form always matches the brute-force
/// relative polynomial.
#[test]
fn classifier_sweep() {
    let mut seen = BTreeSet::new();
    for s in tri_avoiding() {
        let max = if s.rank() >= 5 { 7 } else { 8 };
        let mut elements = elements_up_to(&s, max);
        if s.name() == "FIG1" {
            // Case 2 needs a factor of length 7, which first shows up here
            elements.push(el(&s, "s2,s4,s2,s4,s1,s2,s4,s1,s2,s4,s2"));
        }
        for w in elements {
            if w.is_identity() || !s.is_two_palindromic(&w) {
                continue;
            }
            for st in grassmannian_factorizations(&s, &w) {
                let class = classify_v(&s, &st).unwrap();
                assert!(st.v.support().len() <= 3);
                assert!(is_bp(&s, &w, st.j, BpMethod::Lemma).unwrap());
                assert_eq!(
                    closed_form_relative(&class),
                    relative_poincare(&s, &st.v, st.j).unwrap(),
                    "{} in {}",
                    s.format_element(&w),
                    s.name()
                );
                seen.insert(class.tag());
            }
        }
    }
    assert_eq!(seen, BTreeSet::from(["Case1", "Case2", "Case3", "RankLE2"]), "classes seen");
}

#[test]
fn defect_four_forces_palindromic() {
    for s in tri_avoiding() {
        let max = if s.rank() >= 5 { 7 } else { 8 };
        let no_33c = !s.triangle_report().contains_33c_finite;
        for w in elements_up_to(&s, max) {
            let d = defect(&s, &w);
            if d.is_k_palindromic(4) {
                assert!(d.is_palindromic(), "{} in {}", s.format_element(&w), s.name());
            }
            if no_33c && d.is_k_palindromic(2) {
                assert!(d.is_palindromic(), "{} in {}", s.format_element(&w), s.name());
            }
        }
    }
    // the (3,3,4) triple of FIG1 is what allows defect 3
    let s = sys(fixtures::fig1());
    assert!(s.triangle_report().contains_33c_finite);
    assert_eq!(defect(&s, &el(&s, "s2,s4,s2,s4,s1,s2,s4,s1,s2,s4,s2")), Defect::At(3));
}

#[test]
fn fast_matches_brute() {
    let mut checked = 0;
    for s in tri_avoiding() {
        let max = if s.rank() >= 5 { 7 } else { 8 };
        for w in elements_up_to(&s, max) {
            if !s.is_two_palindromic(&w) {
                assert!(matches!(fast_poincare(&s, &w), Err(CoxError::Precondition(_))));
                continue;
            }
            let (fast, chain) = fast_poincare(&s, &w).unwrap();
            assert_eq!(fast, poincare(&s, &w).unwrap(), "{} in {}", s.format_element(&w), s.name());
            let word: Vec<_> = chain.factors.iter().flat_map(|f| f.step.v.word().to_vec()).collect();
            assert_eq!(s.element(&word), w);
            checked += 1;
        }
    }
    assert!(checked > 1000, "only {checked} elements");
    let s = sys(fixtures::fig1());
    let (p, chain) = fast_poincare(&s, &s.identity()).unwrap();
    assert_eq!(p, QPolynomial::one());
    assert!(chain.factors.is_empty());
    let t = t234();
    assert!(matches!(fast_poincare(&t, &el(&t, "s")), Err(CoxError::Precondition(_))));
}

#[test]
fn separable_examples() {
    let s = sys(fixtures::fig1());
    let w = el(&s, "s4,s2,s4,s2,s3,s1,s3");
    assert_eq!(
        separable_factorization(&s, &w).unwrap(),
        vec![el(&s, "s4,s2,s4,s2"), el(&s, "s3,s1,s3")]
    );
    let w = el(&s, "s1,s2,s1");
    assert_eq!(separable_factorization(&s, &w).unwrap(), vec![w.clone()]);
    assert!(separable_factorization(&s, &s.identity()).unwrap().is_empty());
    let f2 = sys(fixtures::fig2(Bond::Finite(4)));
    assert!(matches!(
        separable_factorization(&f2, &el(&f2, "s1")),
        Err(CoxError::Precondition(_))
    ));
}

#[test]
fn separable_factors_of_palindromic_elements() {
    for s in [w(3, 4), w(3, 3), sys(fixtures::fig1())] {
        for w in elements_up_to(&s, 7) {
            if !defect(&s, &w).is_palindromic() || w.is_identity() {
                continue;
            }
            let factors = separable_factorization(&s, &w).unwrap();
            let word: Vec<_> = factors.iter().flat_map(|f| f.word().to_vec()).collect();
            assert_eq!(s.element(&word), w);
            assert_eq!(word.len(), w.length());
            let total: usize = factors.iter().map(|f| f.support().len()).sum();
            assert_eq!(total, w.support().len(), "supports overlap");
            for f in &factors {
                assert_eq!(separable_factorization(&s, f).unwrap(), vec![f.clone()]);
            }
        }
    }
}

#[test]
fn hecke_family_against_brute_force() {
    for (b, c) in [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5)] {
        let wit = hecke_witness(Bond::Finite(b), c).unwrap();
        let s = &wit.system;
        assert_eq!(wit.w.length(), 2 * c as usize - 2);
        assert_eq!(wit.u.length(), c as usize - 1);
        assert_eq!(wit.v.length(), c as usize - 1);
        let brute = poincare(s, &wit.w).unwrap();
        assert_eq!(wit.closed_form, brute, "(b, c) = ({b}, {c})");
        assert_eq!(palindromic_defect(&brute).unwrap(), Defect::At(c as usize - 2));
    }
}

#[test]
fn non_bp_witnesses() {
    for (b, c) in [(3, 3), (3, 4), (4, 5)] {
        let wit = non_bp_witness(Bond::Finite(b), c).unwrap();
        let s = &wit.system;
        assert!(defect(s, &wit.w).is_palindromic());
        let step = grassmannian_factorizations(s, &wit.w)
            .into_iter()
            .find(|st| st.j == wit.j)
            .expect("Grassmannian at {s, t}");
        assert!(!is_bp(s, &wit.w, wit.j, BpMethod::Lemma).unwrap());
        assert!(!is_bp(s, &wit.w, wit.j, BpMethod::Definition).unwrap());
        let product = &poincare(s, &step.u).unwrap() * &relative_poincare(s, &step.v, wit.j).unwrap();
        assert_ne!(product, poincare(s, &wit.w).unwrap());
    }
}

fn four_palindromic_non_palindromic(s: &CoxeterSystem) -> Vec<GroupElement> {
    enumerate_by_length(s, 15, usize::MAX)
        .unwrap()
        .into_iter()
        .flatten()
        .filter(|w| {
            let d = defect(s, w);
            d.is_k_palindromic(4) && !d.is_palindromic()
        })
        .collect()
}

#[test]
fn h3_counterexample() {
    let found = find_h3_counterexample().unwrap();
    let s = &found.system;
    assert_eq!(found.element.length(), 14);
    assert_eq!(found.defect, Defect::At(4));
    assert_eq!(found.element, el(s, H3_COUNTEREXAMPLE_WORD));
    assert_eq!(four_palindromic_non_palindromic(s), vec![found.element.clone()]);

    // the same element in T(2,3,5), whose labels swap the roles of r and s
    let t = sys(fixtures::triangle_2bc(Bond::Finite(3), Bond::Finite(5)));
    let swapped: Vec<&str> = H3_COUNTEREXAMPLE_WORD
        .split(',')
        .map(|g| match g {
            "r" => "s",
            "s" => "r",
            x => x,
        })
        .collect();
    let image = el(&t, &swapped.join(","));
    assert_eq!(four_palindromic_non_palindromic(&t), vec![image.clone()]);
    assert_eq!(poincare(&t, &image).unwrap(), found.poincare);
}

#[test]
fn palindromic_set_is_finite_in_w43() {
    let s = w(3, 4);
    let bound = s.triangle_report().palindromic_length_bound(s.rank()).unwrap();
    assert_eq!(bound, 21);
    let report = palindromic_census(&s, bound, CensusMode::Palindromic, false).unwrap();
    assert_eq!(report.total, 67);
    assert!(report.counts_by_length[8..].iter().all(|&c| c == 0));
}

#[test]
fn spirals_are_palindromic_in_w33() {
    // s1 s2 s1 followed by an even spiral s3 s2 s1 s3 ..
    let s = w(3, 3);
    assert_eq!(s.triangle_report().palindromic_set_finite, Some(false));
    for l in (2..=12).step_by(2) {
        let mut word = vec![0u8, 1, 0];
        word.extend((0..l).map(|i| [2u8, 1, 0][i % 3]));
        let x = s.element(&word);
        assert_eq!(x.length(), l + 3);
        assert!(defect(&s, &x).is_palindromic(), "spiral of length {l}");
    }
}

#[test]
fn spiral_cases_overlap_at_length_four() {
    let s = w(3, 3);
    let x = el(&s, "s1,s2,s3,s1");
    let step = grassmannian_factorizations(&s, &x).into_iter().find(|st| st.v.length() == 4);
    if let Some(step) = step {
        let class = classify_v(&s, &step).unwrap();
        assert_eq!(closed_form_relative(&class), relative_poincare(&s, &step.v, step.j).unwrap());
    }
    let c1 = VFactorClass::Case1 { r: 0, s: 1, t: 2, m_st: 3, m_rs: Bond::Finite(3) };
    let c3 = VFactorClass::Case3 { length: 4, cycle: [0, 1, 2] };
    assert_eq!(closed_form_relative(&c1), closed_form_relative(&c3));
}
