//! Grassmannian factorizations, the rank-3 classifier with closed-form
//! relative Poincare polynomials, and explicit witness families.

use serde_json::{json, Value};

use crate::algebra::{palindromic_defect, q_integer_signed, Defect, QPolynomial};
use crate::bruhat::{is_bp, parabolic_decomposition, poincare, BpMethod};
use crate::census::enumerate_by_length;
use crate::coxeter::{Bond, CoxeterSystem, Gen, GenSet, GroupElement};
use crate::error::{CoxError, Result};
use crate::fixtures;

/// `w = u v` with `J = supp(u)` and one generator of `w` outside `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannianStep {
    pub j: GenSet,
    /// The generator in `supp(w) \ J`.
    pub added: Gen,
    pub u: GroupElement,
    pub v: GroupElement,
}

/// Shape of the factor `v` of a Grassmannian step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VFactorClass {
    /// `|supp(v)| <= 2`.
    RankLE2 { length: usize },
    /// `v = t r (s t s ..)` with a braid of length `m_st - 1` and `m_rt = 3`.
    Case1 { r: Gen, s: Gen, t: Gen, m_st: u32, m_rs: Bond },
    /// `v = r s t r (s t s ..)` with a braid of length `m_st - 1`,
    /// `m_rt = m_rs = 3 < m_st`.
    Case2 { r: Gen, s: Gen, t: Gen, m_st: u32 },
    /// Even-length spiral `a b c a b c ..` over a `(3, 3, 3)` triple.
    Case3 { length: usize, cycle: [Gen; 3] },
}

impl VFactorClass {
    pub fn tag(&self) -> &'static str {
        match self {
            VFactorClass::RankLE2 { .. } => "RankLE2",
            VFactorClass::Case1 { .. } => "Case1",
            VFactorClass::Case2 { .. } => "Case2",
            VFactorClass::Case3 { .. } => "Case3",
        }
    }

    pub fn length(&self) -> usize {
        match *self {
            VFactorClass::RankLE2 { length } | VFactorClass::Case3 { length, .. } => length,
            VFactorClass::Case1 { m_st, .. } => m_st as usize + 1,
            VFactorClass::Case2 { m_st, .. } => m_st as usize + 3,
        }
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> Value {
        let name = |g: Gen| sys.generator_name(g).to_owned();
        match *self {
            VFactorClass::RankLE2 { length } => json!({"tag": "RankLE2", "length": length}),
            VFactorClass::Case1 { r, s, t, m_st, m_rs } => json!({
                "tag": "Case1", "r": name(r), "s": name(s), "t": name(t),
                "m_st": m_st, "m_rs": m_rs.to_string(),
            }),
            VFactorClass::Case2 { r, s, t, m_st } => json!({
                "tag": "Case2", "r": name(r), "s": name(s), "t": name(t), "m_st": m_st,
            }),
            VFactorClass::Case3 { length, cycle } => json!({
                "tag": "Case3", "length": length,
                "cycle": cycle.iter().map(|&g| name(g)).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Closed-form `P_v^J` for a classified factor.
pub fn closed_form_relative(class: &VFactorClass) -> QPolynomial {
    let l = class.length() as i64;
    let base = q_integer_signed(l + 1);
    match class {
        VFactorClass::RankLE2 { .. } => base,
        VFactorClass::Case1 { .. } => &base + &q_integer_signed(l - 3).shift(2),
        VFactorClass::Case2 { .. } => {
            &(&base + &q_integer_signed(l - 3).shift(2)) + &q_integer_signed(l - 6).shift(4)
        }
        VFactorClass::Case3 { .. } => (0..=l / 4)
            .map(|i| q_integer_signed(l - 4 * i + 1).shift(2 * i as usize))
            .sum(),
    }
}

/// All Grassmannian steps of `w`, ordered by the added generator.
pub fn grassmannian_factorizations(sys: &CoxeterSystem, w: &GroupElement) -> Vec<GrassmannianStep> {
    let supp = w.support();
    supp.iter()
        .filter_map(|s| {
            let j = supp.without(s);
            let dec = parabolic_decomposition(sys, w, j);
            (dec.u.support() == j).then_some(GrassmannianStep {
                j,
                added: s,
                u: dec.u,
                v: dec.v,
            })
        })
        .collect()
}

fn braid(first: Gen, second: Gen, len: usize) -> Vec<Gen> {
    CoxeterSystem::alternating(first, second, len)
}

fn permutations(g: [Gen; 3]) -> [[Gen; 3]; 6] {
    let [a, b, c] = g;
    [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
}

fn finite(b: Bond) -> Option<u32> {
    b.finite()
}

/// Every class whose pattern matches `v`, in match order.
fn matching_classes(sys: &CoxeterSystem, v: &GroupElement) -> Vec<VFactorClass> {
    let supp = v.support();
    if supp.len() <= 2 {
        return vec![VFactorClass::RankLE2 { length: v.length() }];
    }
    if supp.len() > 3 {
        return Vec::new();
    }
    let gens: Vec<Gen> = supp.iter().collect();
    let triple = [gens[0], gens[1], gens[2]];
    let mut out = Vec::new();
    let l = v.length();
    let b3 = Bond::Finite(3);

    let all_three = sys.bond(triple[0], triple[1]) == b3
        && sys.bond(triple[0], triple[2]) == b3
        && sys.bond(triple[1], triple[2]) == b3;
    if all_three && l % 2 == 0 {
        for cycle in permutations(triple) {
            let word: Vec<Gen> = (0..l).map(|i| cycle[i % 3]).collect();
            if sys.element(&word) == *v {
                out.push(VFactorClass::Case3 { length: l, cycle });
                break;
            }
        }
    }
    for [r, s, t] in permutations(triple) {
        let Some(m_st) = finite(sys.bond(s, t)) else { continue };
        if sys.bond(r, t) != b3 || m_st < 3 || l != m_st as usize + 1 {
            continue;
        }
        let mut word = vec![t, r];
        word.extend(braid(s, t, m_st as usize - 1));
        if sys.element(&word) == *v {
            out.push(VFactorClass::Case1 { r, s, t, m_st, m_rs: sys.bond(r, s) });
            break;
        }
    }
    for [r, s, t] in permutations(triple) {
        let Some(m_st) = finite(sys.bond(s, t)) else { continue };
        if sys.bond(r, t) != b3 || sys.bond(r, s) != b3 || m_st <= 3 || l != m_st as usize + 3 {
            continue;
        }
        let mut word = vec![r, s, t, r];
        word.extend(braid(s, t, m_st as usize - 1));
        if sys.element(&word) == *v {
            out.push(VFactorClass::Case2 { r, s, t, m_st });
            break;
        }
    }
    out
}

/// Classifies the factor `v` of a Grassmannian step of a 2-palindromic
/// element in a Tri-avoiding group. Failure to match any case is a
/// theorem violation.
pub fn classify_v(sys: &CoxeterSystem, step: &GrassmannianStep) -> Result<VFactorClass> {
    let matches = matching_classes(sys, &step.v);
    let Some(first) = matches.first() else {
        return Err(CoxError::TheoremViolation(format!(
            "factor v = {} (support size {}) matches no case of the classification",
            sys.format_element(&step.v),
            step.v.support().len()
        )));
    };
    let form = closed_form_relative(first);
    for other in &matches[1..] {
        assert_eq!(
            closed_form_relative(other),
            form,
            "overlapping cases disagree on the closed form"
        );
    }
    Ok(first.clone())
}

/// One factor of a complete Grassmannian factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub step: GrassmannianStep,
    pub bp_verified: bool,
    pub class: VFactorClass,
    pub closed_form: QPolynomial,
}

/// `w = v_1 v_2 .. v_k` with `v_i` the `v` of a Grassmannian step of
/// `v_1 .. v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationChain {
    pub factors: Vec<ChainStep>,
    pub closed_form: QPolynomial,
    pub whole: GroupElement,
}

impl FactorizationChain {
    pub fn to_json(&self, sys: &CoxeterSystem) -> Value {
        json!({
            "whole": sys.format_element(&self.whole),
            "closed_form": self.closed_form,
            "steps": self.factors.iter().map(|f| json!({
                "J": sys.format_genset(f.step.j),
                "u_word": sys.format_element(&f.step.u),
                "v_word": sys.format_element(&f.step.v),
                "bp_verified": f.bp_verified,
                "class": f.class.to_json(sys),
                "closed_form": f.closed_form,
            })).collect::<Vec<_>>(),
        })
    }
}

fn require_fast_preconditions(sys: &CoxeterSystem, w: &GroupElement) -> Result<()> {
    sys.check(w)?;
    if !sys.triangle_report().avoids_tri {
        return Err(CoxError::Precondition(
            "the factored evaluator needs a group avoiding the (2, b, c) triangles".into(),
        ));
    }
    if !sys.is_two_palindromic(w) {
        return Err(CoxError::Precondition(format!(
            "{} is not 2-palindromic",
            sys.format_element(w)
        )));
    }
    Ok(())
}

/// `P_w` as a product of closed forms along a Grassmannian chain, without
/// building any Bruhat interval.
pub fn fast_poincare(sys: &CoxeterSystem, w: &GroupElement) -> Result<(QPolynomial, FactorizationChain)> {
    require_fast_preconditions(sys, w)?;
    let mut cur = w.clone();
    let mut rev_steps = Vec::new();
    while !cur.is_identity() {
        let step = grassmannian_factorizations(sys, &cur)
            .into_iter()
            .next()
            .ok_or_else(|| {
                CoxError::TheoremViolation(format!(
                    "{} has no Grassmannian factorization",
                    sys.format_element(&cur)
                ))
            })?;
        if !is_bp(sys, &cur, step.j, BpMethod::Lemma)? {
            return Err(CoxError::TheoremViolation(format!(
                "Grassmannian step of {} at J = {:?} is not BP",
                sys.format_element(&cur),
                sys.format_genset(step.j)
            )));
        }
        let class = classify_v(sys, &step)?;
        if !step.u.is_identity() && !sys.is_two_palindromic(&step.u) {
            return Err(CoxError::TheoremViolation(format!(
                "factor u = {} of a 2-palindromic element is not 2-palindromic",
                sys.format_element(&step.u)
            )));
        }
        let closed_form = closed_form_relative(&class);
        cur = step.u.clone();
        rev_steps.push(ChainStep {
            step,
            bp_verified: true,
            class,
            closed_form,
        });
    }
    rev_steps.reverse();
    let product: QPolynomial = rev_steps.iter().map(|s| s.closed_form.clone()).product();
    let chain = FactorizationChain {
        factors: rev_steps,
        closed_form: product.clone(),
        whole: w.clone(),
    };
    Ok((product, chain))
}

/// The `v` factors of a complete Grassmannian chain, choosing the first or
/// the last available step at every level.
fn chain_factors(sys: &CoxeterSystem, w: &GroupElement, last: bool) -> Vec<GroupElement> {
    let mut cur = w.clone();
    let mut rev = Vec::new();
    while !cur.is_identity() {
        let mut steps = grassmannian_factorizations(sys, &cur);
        let step = if last { steps.pop() } else { steps.into_iter().next() }
            .expect("every nonidentity element has a Grassmannian step");
        rev.push(step.v);
        cur = step.u;
    }
    rev.reverse();
    rev
}

fn separable_from_chain(sys: &CoxeterSystem, vs: &[GroupElement]) -> Vec<GroupElement> {
    let starts: Vec<usize> = (0..vs.len()).filter(|&i| vs[i].length() == 1).collect();
    starts
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let end = starts.get(k + 1).copied().unwrap_or(vs.len());
            let word: Vec<Gen> = vs[i..end].iter().flat_map(|v| v.word().to_vec()).collect();
            sys.element(&word)
        })
        .collect()
}

/// Factors with pairwise disjoint supports, read off a Grassmannian chain
/// by cutting before every length-one factor.
pub fn separable_factorization(sys: &CoxeterSystem, w: &GroupElement) -> Result<Vec<GroupElement>> {
    sys.check(w)?;
    if !sys.matrix().has_no_commuting_pairs() {
        return Err(CoxError::Precondition(
            "separable factorizations need m_st >= 3 for all s != t".into(),
        ));
    }
    if w.is_identity() {
        return Ok(Vec::new());
    }
    let factors = separable_from_chain(sys, &chain_factors(sys, w, false));
    let mut seen = GenSet::EMPTY;
    for f in &factors {
        if !seen.intersection(f.support()).is_empty() {
            return Err(CoxError::Precondition(format!(
                "{} has no separable factorization along its Grassmannian chain",
                sys.format_element(w)
            )));
        }
        seen = seen.union(f.support());
    }
    let product: Vec<Gen> = factors.iter().flat_map(|f| f.word().to_vec()).collect();
    assert_eq!(sys.element(&product), *w, "separable factors do not multiply to w");
    let palindromic = palindromic_defect(&poincare(sys, w)?)?.is_palindromic();
    if palindromic {
        let other = separable_from_chain(sys, &chain_factors(sys, w, true));
        if other != factors {
            return Err(CoxError::TheoremViolation(format!(
                "{} has two different separable factorizations",
                sys.format_element(w)
            )));
        }
    }
    Ok(factors)
}

fn check_witness_params(b: Bond, c: u32) -> Result<()> {
    if !b.at_least(3) {
        return Err(CoxError::Parameter(format!("need b >= 3, got {b}")));
    }
    if c < 3 {
        return Err(CoxError::Parameter(format!("need 3 <= c < inf, got {c}")));
    }
    Ok(())
}

/// Element of the `(2, b, c)` group whose interval is `(c-2)`-palindromic
/// but not palindromic.
#[derive(Debug, Clone)]
pub struct HeckeWitness {
    pub system: CoxeterSystem,
    pub u: GroupElement,
    pub v: GroupElement,
    pub w: GroupElement,
    pub closed_form: QPolynomial,
}

/// `[2c-1] + q^c + sum_{k=1}^{c-1} 2 q^k [2c-1-2k]`, the Poincare polynomial
/// of the witness of [`hecke_witness`], which has length `2c - 2`.
pub fn hecke_closed_form(c: u32) -> QPolynomial {
    let l = 2 * c as i64 - 2;
    let two = num_bigint::BigInt::from(2);
    let mut p = &q_integer_signed(l + 1) + &QPolynomial::one().shift(c as usize);
    for k in 1..c as i64 {
        p = &p + &q_integer_signed(l - 2 * k + 1).shift(k as usize).scale(&two);
    }
    p
}

/// `w = u v` in the `(2, b, c)` triangle group on `r, s, t` (`m_rs = 2`,
/// `m_rt = b`, `m_st = c`), with `u^-1 = s t s ..` and `v = r t s t ..`,
/// both of length `c - 1`.
pub fn hecke_witness(b: Bond, c: u32) -> Result<HeckeWitness> {
    check_witness_params(b, c)?;
    let system = CoxeterSystem::new(fixtures::triangle_2bc(b, Bond::Finite(c)));
    let (r, s, t) = (0, 1, 2);
    let len = c as usize - 1;
    let mut u_word = braid(s, t, len);
    u_word.reverse();
    let mut v_word = vec![r];
    v_word.extend(braid(t, s, len - 1));
    let u = system.element(&u_word);
    let v = system.element(&v_word);
    let w = system.multiply(&u, &v)?;
    assert_eq!(w.length(), 2 * len, "witness factors must multiply reducedly");
    Ok(HeckeWitness {
        u,
        v,
        w,
        closed_form: hecke_closed_form(c),
        system,
    })
}

/// Palindromic element with a Grassmannian decomposition that is not BP.
#[derive(Debug, Clone)]
pub struct NonBpWitness {
    pub system: CoxeterSystem,
    pub w: GroupElement,
    pub j: GenSet,
}

/// `w = (t s)(r t s t ..)` with the second factor of length `c`, and
/// `J = {s, t}`.
pub fn non_bp_witness(b: Bond, c: u32) -> Result<NonBpWitness> {
    check_witness_params(b, c)?;
    let system = CoxeterSystem::new(fixtures::triangle_2bc(b, Bond::Finite(c)));
    let (r, s, t) = (0, 1, 2);
    let mut word = vec![t, s, r];
    word.extend(braid(t, s, c as usize - 1));
    let w = system.element(&word);
    assert_eq!(w.length(), c as usize + 2, "witness word must be reduced");
    Ok(NonBpWitness {
        w,
        j: GenSet::EMPTY.with(s).with(t),
        system,
    })
}

#[derive(Debug, Clone)]
pub struct H3Counterexample {
    pub system: CoxeterSystem,
    pub element: GroupElement,
    pub defect: Defect,
    pub poincare: QPolynomial,
}

pub const H3_COUNTEREXAMPLE_WORD: &str = "t,s,r,t,s,r,t,s,r,t,s,r,t,r";

/// Sweeps `H3` for elements that are 4-palindromic but not palindromic;
/// there is exactly one, of length 14.
pub fn find_h3_counterexample() -> Result<H3Counterexample> {
    let system = CoxeterSystem::new(fixtures::h3());
    let mut found = Vec::new();
    let levels = enumerate_by_length(&system, 15, usize::MAX)?;
    let total: usize = levels.iter().map(Vec::len).sum();
    if total != 120 {
        return Err(CoxError::TheoremViolation(format!("H3 enumerated to {total} elements")));
    }
    for w in levels.into_iter().flatten() {
        let p = poincare(&system, &w)?;
        let defect = palindromic_defect(&p)?;
        if defect.is_k_palindromic(4) && !defect.is_palindromic() {
            found.push((w, defect, p));
        }
    }
    if found.len() != 1 {
        return Err(CoxError::TheoremViolation(format!(
            "expected one 4-palindromic non-palindromic element in H3, found {}",
            found.len()
        )));
    }
    let (element, defect, poincare) = found.pop().unwrap();
    let expected = system.parse_element(H3_COUNTEREXAMPLE_WORD)?;
    if element != expected || element.length() != 14 {
        return Err(CoxError::TheoremViolation(format!(
            "H3 counterexample is {}, not the expected length-14 element",
            system.format_element(&element)
        )));
    }
    Ok(H3Counterexample {
        system,
        element,
        defect,
        poincare,
    })
}
