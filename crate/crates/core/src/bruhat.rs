//! Bruhat order: lower intervals, Poincare polynomials and parabolic
//! decompositions.

use std::hash::BuildHasher;

use rustc_hash::{FxBuildHasher, FxHashMap};
use serde::Serialize;

use crate::algebra::{palindromic_defect, Defect, QPolynomial};
use crate::coxeter::{CoxeterSystem, Frame, Gen, GenSet, GroupElement};
use crate::error::{CoxError, Result};

pub const DEFAULT_INTERVAL_CAP: usize = 5_000_000;

/// All `x <= apex`, sorted ShortLex.
#[derive(Debug, Clone)]
pub struct LowerInterval {
    pub apex: GroupElement,
    pub members: Vec<GroupElement>,
    pub rank_counts: Vec<usize>,
}

impl LowerInterval {
    pub fn poincare(&self) -> QPolynomial {
        QPolynomial::from_counts(&self.rank_counts)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

/// `whole = u v` with `u` in `W_J` and `D_L(v)` disjoint from `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicDecomposition {
    pub j: GenSet,
    pub u: GroupElement,
    pub v: GroupElement,
    pub whole: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PalindromicityProfile {
    pub defect: Defect,
    /// `|pred(w)| = |supp(w)|`.
    pub two_palindromic: bool,
    pub poincare: QPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpMethod {
    /// `supp(v) & J` is contained in `D_R(u)`.
    Lemma,
    /// `u` is the maximum of `[e, w]` restricted to `W_J`.
    Definition,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    len: u32,
    supp: GenSet,
    parent: u32,
    letter: Gen,
}

/// Subword dynamic program over the frames of interval members. Frames are
/// a faithful representation, so they serve as the dedup key.
pub(crate) struct IntervalDp<'a> {
    sys: &'a CoxeterSystem,
    frames: Vec<Frame>,
    inverse: Option<Vec<Frame>>,
    nodes: Vec<Node>,
    index: FxHashMap<u64, Vec<u32>>,
}

impl<'a> IntervalDp<'a> {
    /// Builds `[e, w]` from any reduced word of `w`. With `track_inverse`,
    /// inverse frames are kept so left descents of members are cheap.
    pub fn build(sys: &'a CoxeterSystem, word: &[Gen], cap: usize, track_inverse: bool) -> Result<Self> {
        let t = sys.tables();
        let mut dp = IntervalDp {
            sys,
            frames: vec![Frame::identity(t)],
            inverse: track_inverse.then(|| vec![Frame::identity(t)]),
            nodes: vec![Node {
                len: 0,
                supp: GenSet::EMPTY,
                parent: u32::MAX,
                letter: 0,
            }],
            index: FxHashMap::default(),
        };
        let h = FxBuildHasher.hash_one(&dp.frames[0]);
        dp.index.insert(h, vec![0]);
        for &s in word {
            let count = dp.frames.len();
            for idx in 0..count {
                if dp.frames[idx].is_negative(t, s) {
                    continue;
                }
                let mut f = dp.frames[idx].clone();
                f.right_mul(t, s);
                let h = FxBuildHasher.hash_one(&f);
                let bucket = dp.index.entry(h).or_default();
                if bucket.iter().any(|&k| dp.frames[k as usize] == f) {
                    continue;
                }
                let new = dp.frames.len();
                if new >= cap {
                    return Err(CoxError::IntervalCap { cap });
                }
                bucket.push(new as u32);
                dp.frames.push(f);
                if let Some(inv) = &mut dp.inverse {
                    let mut g = inv[idx].clone();
                    g.left_mul(t, s);
                    inv.push(g);
                }
                let node = dp.nodes[idx];
                dp.nodes.push(Node {
                    len: node.len + 1,
                    supp: node.supp.with(s),
                    parent: idx as u32,
                    letter: s,
                });
            }
        }
        Ok(dp)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn length(&self, i: usize) -> usize {
        self.nodes[i].len as usize
    }

    pub fn support(&self, i: usize) -> GenSet {
        self.nodes[i].supp
    }

    pub fn rank_counts(&self) -> Vec<usize> {
        let top = self.nodes.iter().map(|n| n.len as usize).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for n in &self.nodes {
            counts[n.len as usize] += 1;
        }
        counts
    }

    /// A reduced word of member `i`.
    pub fn word(&self, mut i: usize) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.nodes[i].len as usize);
        while self.nodes[i].parent != u32::MAX {
            out.push(self.nodes[i].letter);
            i = self.nodes[i].parent as usize;
        }
        out.reverse();
        out
    }

    pub fn element(&self, i: usize) -> GroupElement {
        match &self.inverse {
            Some(inv) => {
                let mut g = inv[i].clone();
                self.sys.element_from_inverse_frame(&mut g)
            }
            None => self.sys.element(&self.word(i)),
        }
    }

    /// Left descents of member `i`; requires inverse tracking.
    pub fn left_descents(&self, i: usize) -> GenSet {
        let inv = self.inverse.as_ref().expect("inverse frames not tracked");
        inv[i].negative_columns(self.sys.tables())
    }

    pub fn members(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = (0..self.len()).map(|i| self.element(i)).collect();
        out.sort();
        out
    }
}

pub fn lower_interval(sys: &CoxeterSystem, w: &GroupElement) -> Result<LowerInterval> {
    lower_interval_with_cap(sys, w, DEFAULT_INTERVAL_CAP)
}

pub fn lower_interval_with_cap(sys: &CoxeterSystem, w: &GroupElement, cap: usize) -> Result<LowerInterval> {
    sys.check(w)?;
    lower_interval_from_word(sys, w.word(), cap)
}

/// The interval below the element of a reduced `word`.
pub fn lower_interval_from_word(sys: &CoxeterSystem, word: &[Gen], cap: usize) -> Result<LowerInterval> {
    if !sys.is_reduced(word) {
        return Err(CoxError::Precondition("interval word must be reduced".into()));
    }
    let dp = IntervalDp::build(sys, word, cap, true)?;
    Ok(LowerInterval {
        apex: sys.element(word),
        members: dp.members(),
        rank_counts: dp.rank_counts(),
    })
}

pub fn poincare(sys: &CoxeterSystem, w: &GroupElement) -> Result<QPolynomial> {
    sys.check(w)?;
    let dp = IntervalDp::build(sys, w.word(), DEFAULT_INTERVAL_CAP, false)?;
    Ok(QPolynomial::from_counts(&dp.rank_counts()))
}

/// `P_v^J`: members `x <= v` with `D_L(x)` disjoint from `J`.
pub fn relative_poincare(sys: &CoxeterSystem, v: &GroupElement, j: GenSet) -> Result<QPolynomial> {
    sys.check(v)?;
    if !sys.left_descents(v).intersection(j).is_empty() {
        return Err(CoxError::Precondition(
            "relative Poincare polynomial needs a minimal coset representative".into(),
        ));
    }
    if j.is_empty() {
        return poincare(sys, v);
    }
    let dp = IntervalDp::build(sys, v.word(), DEFAULT_INTERVAL_CAP, true)?;
    let mut counts = vec![0usize; v.length() + 1];
    for i in 0..dp.len() {
        if dp.left_descents(i).intersection(j).is_empty() {
            counts[dp.length(i)] += 1;
        }
    }
    Ok(QPolynomial::from_counts(&counts))
}

/// Defect of `P_w` together with the `|pred| = |supp|` shortcut; the two
/// must agree on 2-palindromicity.
pub fn palindromicity_profile(sys: &CoxeterSystem, w: &GroupElement) -> Result<PalindromicityProfile> {
    let p = poincare(sys, w)?;
    let defect = palindromic_defect(&p)?;
    let two_palindromic = sys.is_two_palindromic(w);
    assert_eq!(
        defect.is_k_palindromic(2),
        two_palindromic,
        "pred/supp shortcut disagrees with the Poincare polynomial"
    );
    Ok(PalindromicityProfile {
        defect,
        two_palindromic,
        poincare: p,
    })
}

pub fn parabolic_decomposition(sys: &CoxeterSystem, w: &GroupElement, j: GenSet) -> ParabolicDecomposition {
    let t = sys.tables();
    // walk v = a v while keeping the frame of v^-1
    let mut inv_v = sys.inverse_frame(w.word());
    let mut u_word = Vec::new();
    loop {
        let next = j.iter().find(|&a| inv_v.is_negative(t, a));
        match next {
            Some(a) => {
                u_word.push(a);
                inv_v.right_mul(t, a);
            }
            None => break,
        }
    }
    let v = sys.element_from_inverse_frame(&mut inv_v);
    ParabolicDecomposition {
        j,
        u: sys.element(&u_word),
        v,
        whole: w.clone(),
    }
}

/// `x <= w` in Bruhat order, by the lifting property along a reduced word
/// of `w`.
pub fn bruhat_leq(sys: &CoxeterSystem, x: &GroupElement, w: &GroupElement) -> bool {
    if x.length() > w.length() {
        return false;
    }
    let t = sys.tables();
    let mut fx = sys.frame(x.word());
    let mut lx = x.length();
    for (k, &s) in w.word().iter().enumerate().rev() {
        if lx > k + 1 {
            return false;
        }
        if fx.is_negative(t, s) {
            fx.right_mul(t, s);
            lx -= 1;
        }
    }
    lx == 0
}

/// The unique maximum of `[e, w]` restricted to `W_J`.
///
/// Panics if the maximum is not unique or fails to dominate the other
/// members, which would contradict the structure of parabolic intervals.
pub fn max_in_parabolic_interval(sys: &CoxeterSystem, w: &GroupElement, j: GenSet) -> Result<GroupElement> {
    sys.check(w)?;
    let dp = IntervalDp::build(sys, w.word(), DEFAULT_INTERVAL_CAP, false)?;
    let inside: Vec<usize> = (0..dp.len()).filter(|&i| dp.support(i).is_subset(j)).collect();
    let top = inside.iter().map(|&i| dp.length(i)).max().unwrap_or(0);
    let maxima: Vec<usize> = inside.iter().copied().filter(|&i| dp.length(i) == top).collect();
    assert_eq!(maxima.len(), 1, "[e, w] meets W_J without a unique maximum");
    let max = dp.element(maxima[0]);
    for &i in &inside {
        assert!(
            bruhat_leq(sys, &dp.element(i), &max),
            "maximum of [e, w] in W_J does not dominate"
        );
    }
    Ok(max)
}

pub fn is_bp(sys: &CoxeterSystem, w: &GroupElement, j: GenSet, method: BpMethod) -> Result<bool> {
    sys.check(w)?;
    let dec = parabolic_decomposition(sys, w, j);
    match method {
        BpMethod::Lemma => Ok(dec.v.support().intersection(j).is_subset(sys.right_descents(&dec.u))),
        BpMethod::Definition => Ok(max_in_parabolic_interval(sys, w, j)? == dec.u),
    }
}

impl CoxeterSystem {
    /// Consumes the frame of `w^-1` and returns `w`.
    pub(crate) fn element_from_inverse_frame(&self, inv: &mut Frame) -> GroupElement {
        let word = self.drain_left_descents(inv);
        self.element_unchecked(word)
    }
}
