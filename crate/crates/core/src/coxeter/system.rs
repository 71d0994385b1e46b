//! Coxeter systems, the reflection action and group elements.

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use super::frame::{Frame, RootTables};
use super::genset::GenSet;
use super::matrix::{Bond, CoxeterMatrix};
use super::triangle::{triangle_scan, TriangleReport};
use super::Gen;
use crate::algebra::{build_field, two_cos, CyclotomicReal, FieldContext};
use crate::error::{CoxError, Result};

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// A Coxeter system together with its geometric representation.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    id: u64,
    matrix: CoxeterMatrix,
    field: Arc<FieldContext>,
    bond_values: Vec<CyclotomicReal>,
    tables: RootTables,
}

/// A vector in the span of the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector {
    coords: Vec<CyclotomicReal>,
}

impl RootVector {
    pub fn simple(sys: &CoxeterSystem, s: Gen) -> Self {
        let mut coords = vec![CyclotomicReal::zero(&sys.field); sys.rank()];
        coords[s as usize] = CyclotomicReal::from_int(&sys.field, 1);
        RootVector { coords }
    }

    pub fn coords(&self) -> &[CyclotomicReal] {
        &self.coords
    }

    /// `+1` for positive and `-1` for negative roots, `0` for the zero
    /// vector. Panics on mixed signs.
    pub fn sign(&self) -> i8 {
        let mut sign = 0;
        for c in &self.coords {
            let s = c.sign();
            if s == 0 {
                continue;
            }
            if sign == 0 {
                sign = s;
            } else {
                assert_eq!(sign, s, "root with mixed-sign coordinates: representation bug");
            }
        }
        sign
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }
}

/// A group element stored as its ShortLex-minimal reduced word.
///
/// Ordering is ShortLex: by length, then lexicographically by word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    system: u64,
    word: Vec<Gen>,
}

impl GroupElement {
    pub fn word(&self) -> &[Gen] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn system_id(&self) -> u64 {
        self.system
    }

    /// Generators occurring in the word.
    pub fn support(&self) -> GenSet {
        self.word.iter().copied().collect()
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.system.cmp(&other.system))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement{:?}", self.word)
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let labels = matrix.finite_labels();
        let field = build_field(&labels);
        let order = field.order();
        let mut bond_values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = match matrix.bond(i, j) {
                    _ if i == j => CyclotomicReal::from_int(&field, 2),
                    Bond::Finite(m) => -two_cos(order / u64::from(m), &field),
                    Bond::Infinite => CyclotomicReal::from_int(&field, -2),
                };
                bond_values.push(v);
            }
        }
        let tables = RootTables::new(&field, &bond_values, n);
        CoxeterSystem {
            id: NEXT_SYSTEM_ID.fetch_add(1, AtomicOrdering::Relaxed),
            matrix,
            field,
            bond_values,
            tables,
        }
    }

    /// Parses a JSON group document.
    pub fn parse_group(text: &str) -> Result<Self> {
        Ok(Self::new(CoxeterMatrix::from_json(text)?))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_group(&std::fs::read_to_string(path)?)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn name(&self) -> &str {
        self.matrix.name()
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn all_generators(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn bond(&self, s: Gen, t: Gen) -> Bond {
        self.matrix.bond(s as usize, t as usize)
    }

    /// `2B(a_i, a_j)`.
    pub fn bond_value(&self, i: Gen, j: Gen) -> &CyclotomicReal {
        &self.bond_values[i as usize * self.rank() + j as usize]
    }

    pub fn triangle_report(&self) -> TriangleReport {
        triangle_scan(&self.matrix)
    }

    pub(crate) fn tables(&self) -> &RootTables {
        &self.tables
    }

    pub fn generator_name(&self, s: Gen) -> &str {
        &self.matrix.generators()[s as usize]
    }

    pub fn generator_index(&self, name: &str) -> Result<Gen> {
        self.matrix
            .generators()
            .iter()
            .position(|g| g == name)
            .map(|i| i as Gen)
            .ok_or_else(|| CoxError::UnknownGenerator(name.to_owned()))
    }

    /// Parses a comma- or space-separated list of generator names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Gen>> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| self.generator_index(tok))
            .collect()
    }

    /// Parses a set of generator names, in the same syntax as words.
    pub fn parse_genset(&self, text: &str) -> Result<GenSet> {
        Ok(self.parse_word(text)?.into_iter().collect())
    }

    pub fn format_word(&self, word: &[Gen]) -> String {
        word.iter()
            .map(|&s| self.generator_name(s))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn format_element(&self, w: &GroupElement) -> String {
        if w.is_identity() {
            "e".to_owned()
        } else {
            self.format_word(&w.word)
        }
    }

    pub fn format_genset(&self, set: GenSet) -> Vec<String> {
        set.iter().map(|s| self.generator_name(s).to_owned()).collect()
    }

    fn check_word(&self, word: &[Gen]) {
        assert!(
            word.iter().all(|&s| (s as usize) < self.rank()),
            "generator index out of range"
        );
    }

    // ---- reference implementation on exact roots ----

    /// Applies the word to `root`, letters right to left.
    pub fn act(&self, word: &[Gen], root: &RootVector) -> RootVector {
        self.check_word(word);
        let n = self.rank();
        let mut coords = root.coords.clone();
        for &s in word.iter().rev() {
            let s = s as usize;
            // s(v) = v - 2B(v, a_s) a_s
            let mut pairing = CyclotomicReal::zero(&self.field);
            for (i, c) in coords.iter().enumerate() {
                let b = &self.bond_values[i * n + s];
                if !b.is_zero() && !c.is_zero() {
                    pairing = &pairing + &(c * b);
                }
            }
            coords[s] = &coords[s] - &pairing;
        }
        RootVector { coords }
    }

    /// `s` is a right descent of `word` iff the word sends `a_s` negative.
    pub fn is_right_descent(&self, word: &[Gen], s: Gen) -> bool {
        self.act(word, &RootVector::simple(self, s)).is_negative()
    }

    /// Length by a left-to-right scan using [`Self::is_right_descent`].
    pub fn length_reference(&self, word: &[Gen]) -> usize {
        let mut len = 0usize;
        for k in 0..word.len() {
            if self.is_right_descent(&word[..k], word[k]) {
                len -= 1;
            } else {
                len += 1;
            }
        }
        len
    }

    /// Deletion-condition reduction with equality tested by lengths.
    pub fn reduce_reference(&self, word: &[Gen]) -> Vec<Gen> {
        let mut r: Vec<Gen> = Vec::new();
        for &s in word {
            if !self.is_right_descent(&r, s) {
                r.push(s);
                continue;
            }
            let mut target = r.clone();
            target.push(s);
            let j = (0..r.len())
                .find(|&j| {
                    let mut test: Vec<Gen> = r[..j].iter().chain(&r[j + 1..]).copied().collect();
                    test.extend(target.iter().rev());
                    self.length_reference(&test) == 0
                })
                .expect("deletion condition");
            r.remove(j);
        }
        r
    }

    /// ShortLex normal form by repeated extraction of the minimal left
    /// descent, all tested on exact roots.
    pub fn canonical_reference(&self, word: &[Gen]) -> Vec<Gen> {
        let mut rest = self.reduce_reference(word);
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let rev: Vec<Gen> = rest.iter().rev().copied().collect();
            let a = (0..self.rank() as Gen)
                .find(|&a| self.is_right_descent(&rev, a))
                .expect("nonidentity element has a descent");
            out.push(a);
            let mut next = vec![a];
            next.extend(&rest);
            rest = self.reduce_reference(&next);
        }
        out
    }

    // ---- integer frame engine ----

    pub(crate) fn frame(&self, word: &[Gen]) -> Frame {
        self.check_word(word);
        Frame::from_word(&self.tables, word.iter().copied())
    }

    pub(crate) fn inverse_frame(&self, word: &[Gen]) -> Frame {
        self.check_word(word);
        Frame::from_word(&self.tables, word.iter().rev().copied())
    }

    /// Length of the element represented by a free word.
    pub fn length(&self, word: &[Gen]) -> usize {
        self.check_word(word);
        let t = &self.tables;
        let mut f = Frame::identity(t);
        let mut len = 0usize;
        for &s in word {
            if f.is_negative(t, s) {
                len -= 1;
            } else {
                len += 1;
            }
            f.right_mul(t, s);
        }
        len
    }

    pub fn is_reduced(&self, word: &[Gen]) -> bool {
        self.check_word(word);
        let t = &self.tables;
        let mut f = Frame::identity(t);
        for &s in word {
            if f.is_negative(t, s) {
                return false;
            }
            f.right_mul(t, s);
        }
        true
    }

    /// A reduced word for the same element, obtained with the deletion
    /// condition.
    pub fn reduce(&self, word: &[Gen]) -> Vec<Gen> {
        self.check_word(word);
        let t = &self.tables;
        let mut r: Vec<Gen> = Vec::new();
        let mut f = Frame::identity(t);
        for &s in word {
            let descent = f.is_negative(t, s);
            f.right_mul(t, s);
            if !descent {
                r.push(s);
                continue;
            }
            let j = (0..r.len())
                .find(|&j| Frame::from_word(t, r[..j].iter().chain(&r[j + 1..]).copied()) == f)
                .expect("deletion condition");
            r.remove(j);
        }
        r
    }

    /// Canonical (ShortLex) form of a free word.
    pub fn canonical_word(&self, word: &[Gen]) -> Vec<Gen> {
        let mut g = self.inverse_frame(word);
        self.drain_left_descents(&mut g)
    }

    /// Consumes the frame of `w^-1` and returns the ShortLex word of `w`.
    pub(crate) fn drain_left_descents(&self, g: &mut Frame) -> Vec<Gen> {
        let t = &self.tables;
        let mut out = Vec::new();
        while let Some(a) = g.first_negative_column(t) {
            out.push(a);
            g.right_mul(t, a);
        }
        out
    }

    pub fn element(&self, word: &[Gen]) -> GroupElement {
        GroupElement {
            system: self.id,
            word: self.canonical_word(word),
        }
    }

    /// Wraps a word already known to be ShortLex canonical.
    pub(crate) fn element_unchecked(&self, word: Vec<Gen>) -> GroupElement {
        debug_assert_eq!(self.canonical_word(&word), word);
        GroupElement {
            system: self.id,
            word,
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let word = self.parse_word(text)?;
        Ok(self.element(&word))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            system: self.id,
            word: Vec::new(),
        }
    }

    pub fn generator(&self, s: Gen) -> GroupElement {
        self.element(&[s])
    }

    pub fn check(&self, w: &GroupElement) -> Result<()> {
        if w.system == self.id {
            Ok(())
        } else {
            Err(CoxError::MixedSystems)
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let word: Vec<Gen> = a.word.iter().chain(&b.word).copied().collect();
        Ok(self.element(&word))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let word: Vec<Gen> = a.word.iter().rev().copied().collect();
        Ok(self.element(&word))
    }

    /// `s w`.
    pub fn left_multiply(&self, s: Gen, w: &GroupElement) -> GroupElement {
        let mut word = vec![s];
        word.extend(&w.word);
        self.element(&word)
    }

    /// `w s`.
    pub fn right_multiply(&self, w: &GroupElement, s: Gen) -> GroupElement {
        let mut word = w.word.clone();
        word.push(s);
        self.element(&word)
    }

    pub fn right_descents(&self, w: &GroupElement) -> GenSet {
        self.frame(&w.word).negative_columns(&self.tables)
    }

    pub fn left_descents(&self, w: &GroupElement) -> GenSet {
        self.inverse_frame(&w.word).negative_columns(&self.tables)
    }

    /// `(D_L(w), D_R(w))`.
    pub fn descents(&self, w: &GroupElement) -> (GenSet, GenSet) {
        (self.left_descents(w), self.right_descents(w))
    }

    /// Elements covered by `w` in Bruhat order, in ShortLex order.
    pub fn predecessors(&self, w: &GroupElement) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self
            .reduced_deletions(&w.word)
            .into_iter()
            .map(|j| {
                let word: Vec<Gen> = w.word[..j].iter().chain(&w.word[j + 1..]).copied().collect();
                self.element(&word)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `|pred(w)|` without canonicalizing the predecessors.
    pub fn pred_count(&self, w: &GroupElement) -> usize {
        self.reduced_deletions(&w.word).len()
    }

    /// Positions `j` of a reduced word whose deletion leaves a reduced word.
    /// Distinct positions give distinct elements, since the reflections
    /// `w^-1 (w with j deleted)` are the distinct inversions of `w`.
    pub(crate) fn reduced_deletions(&self, word: &[Gen]) -> Vec<usize> {
        self.reduced_deletions_until(word, usize::MAX)
    }

    /// Like [`Self::reduced_deletions`], stopping after `limit + 1` hits.
    /// Positions are tried from the right, where the suffix to re-check is
    /// short, so the early exit usually comes cheaply.
    pub(crate) fn reduced_deletions_until(&self, word: &[Gen], limit: usize) -> Vec<usize> {
        let t = &self.tables;
        let mut prefixes = Vec::with_capacity(word.len());
        let mut f = Frame::identity(t);
        for &s in word {
            prefixes.push(f.clone());
            f.right_mul(t, s);
        }
        let mut hits = Vec::new();
        for j in (0..word.len()).rev() {
            let mut f = prefixes[j].clone();
            let reduced = word[j + 1..].iter().all(|&s| {
                let ok = !f.is_negative(t, s);
                f.right_mul(t, s);
                ok
            });
            if reduced {
                hits.push(j);
                if hits.len() > limit {
                    break;
                }
            }
        }
        hits.reverse();
        hits
    }

    /// `|pred(w)| = |supp(w)|`, i.e. the interval below `w` is
    /// 2-palindromic.
    pub fn is_two_palindromic(&self, w: &GroupElement) -> bool {
        let supp = w.support().len();
        self.reduced_deletions_until(&w.word, supp).len() == supp
    }

    /// The alternating word `first, other, first, ..` of the given length.
    pub fn alternating(first: Gen, other: Gen, len: usize) -> Vec<Gen> {
        (0..len).map(|i| if i % 2 == 0 { first } else { other }).collect()
    }
}
