//! Enumeration of group elements, palindromic censuses and the generating
//! series of uniform groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{palindromic_defect, q_integer, BivariatePoly, BivariateSeries, QPolynomial};
use crate::bruhat::poincare;
use crate::coxeter::{Bond, CoxeterSystem, Frame, Gen, GroupElement};
use crate::error::{CoxError, Result};

pub const DEFAULT_FRONTIER_CAP: usize = 10_000_000;

/// Walks the group one length at a time in ShortLex order. Each element of
/// length `k + 1` is `a y` with `a` its smallest left descent and `y` of
/// length `k`, so it is produced exactly once.
pub(crate) struct LevelWalker<'a> {
    sys: &'a CoxeterSystem,
    /// canonical word and the frame of the inverse element
    level: Vec<(Vec<Gen>, Frame)>,
    length: usize,
}

impl<'a> LevelWalker<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        LevelWalker {
            sys,
            level: vec![(Vec::new(), Frame::identity(sys.tables()))],
            length: 0,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.level.iter().map(|(w, _)| self.sys.element_unchecked(w.clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    pub fn advance(&mut self, cap: usize) -> Result<()> {
        let t = self.sys.tables();
        let n = self.sys.rank();
        let mut buckets: Vec<Vec<(Vec<Gen>, Frame)>> = vec![Vec::new(); n];
        let mut total = 0usize;
        for (word, inv) in &self.level {
            for a in 0..n as Gen {
                if inv.is_negative(t, a) {
                    continue;
                }
                let mut g = inv.clone();
                g.right_mul(t, a);
                if g.first_negative_column(t) != Some(a) {
                    continue;
                }
                total += 1;
                if total > cap {
                    return Err(CoxError::FrontierCap { cap });
                }
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(a);
                w.extend_from_slice(word);
                buckets[a as usize].push((w, g));
            }
        }
        self.level = buckets.into_iter().flatten().collect();
        self.length += 1;
        Ok(())
    }
}

/// All elements of length at most `max_length`, grouped by length, each
/// group in ShortLex order.
pub fn enumerate_by_length(sys: &CoxeterSystem, max_length: usize, cap: usize) -> Result<Vec<Vec<GroupElement>>> {
    let mut out = Vec::with_capacity(max_length + 1);
    let mut walker = LevelWalker::new(sys);
    loop {
        out.push(walker.elements().collect());
        if walker.length() == max_length {
            break;
        }
        walker.advance(cap)?;
    }
    Ok(out)
}

/// Calls `f` on every element of length at most `max_length`, in ShortLex
/// order.
pub fn for_each_element(
    sys: &CoxeterSystem,
    max_length: usize,
    cap: usize,
    mut f: impl FnMut(&GroupElement) -> Result<()>,
) -> Result<()> {
    let mut walker = LevelWalker::new(sys);
    loop {
        for w in walker.elements() {
            f(&w)?;
        }
        if walker.length() == max_length || walker.is_empty() {
            return Ok(());
        }
        walker.advance(cap)?;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    Palindromic,
    TwoPalindromic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub system: String,
    pub max_length: usize,
    pub mode: CensusMode,
    pub counts_by_length: Vec<usize>,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

/// Counts palindromic (or 2-palindromic) elements up to `max_length`.
pub fn palindromic_census(
    sys: &CoxeterSystem,
    max_length: usize,
    mode: CensusMode,
    list: bool,
) -> Result<CensusReport> {
    let mut counts = vec![0usize; max_length + 1];
    let mut listing = list.then(Vec::new);
    for_each_element(sys, max_length, DEFAULT_FRONTIER_CAP, |w| {
        // palindromic implies 2-palindromic, so the cheap test filters first
        if !sys.is_two_palindromic(w) {
            return Ok(());
        }
        let defect = palindromic_defect(&poincare(sys, w)?)?;
        assert!(
            defect.is_k_palindromic(2),
            "pred/supp shortcut disagrees with the Poincare polynomial"
        );
        let hit = match mode {
            CensusMode::Palindromic => defect.is_palindromic(),
            CensusMode::TwoPalindromic => true,
        };
        if hit {
            counts[w.length()] += 1;
            if let Some(l) = &mut listing {
                l.push(sys.format_element(w));
            }
        }
        Ok(())
    })?;
    Ok(CensusReport {
        system: sys.name().to_owned(),
        max_length,
        mode,
        total: counts.iter().sum(),
        counts_by_length: counts,
        elements: listing,
    })
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn check_series_bond(m: Bond) -> Result<()> {
    match m {
        Bond::Finite(k) if k < 3 => Err(CoxError::Parameter(format!(
            "phi_m is defined for m >= 3, got {k}"
        ))),
        _ => Ok(()),
    }
}

/// Numerator and denominator of `phi_m` as exact polynomials in `q, t`.
pub fn phi_rational(m: Bond) -> Result<(BivariatePoly, BivariatePoly)> {
    check_series_bond(m)?;
    let mut num = BivariatePoly::new();
    let mut den = BivariatePoly::new();
    match m {
        Bond::Finite(3) => {
            // ((2q - 2q^3) t - (3q^3 + q^5) t^2) / (2 - 2q^2 - 4q^2 t)
            num.add_term(rat(2), 1, 1);
            num.add_term(rat(-2), 3, 1);
            num.add_term(rat(-3), 3, 2);
            num.add_term(rat(-1), 5, 2);
            den.add_term(rat(2), 0, 0);
            den.add_term(rat(-2), 2, 0);
            den.add_term(rat(-4), 2, 1);
        }
        Bond::Finite(k) => {
            let k = k as usize;
            // (2qt - 3q^m t^2 - q^(m+2) [m-3] t^3) / (2 - 2q^2 t ([m-2] + q^(m-3)))
            num.add_term(rat(2), 1, 1);
            num.add_term(rat(-3), k, 2);
            num.add_qpoly(&rat(-1), &q_integer(k - 3), k + 2, 3);
            den.add_term(rat(2), 0, 0);
            den.add_qpoly(&rat(-2), &q_integer(k - 2), 2, 1);
            den.add_term(rat(-2), k - 1, 1);
        }
        Bond::Infinite => {
            // (qt - q^2 t) / (1 - q - q^2 t)
            num.add_term(rat(1), 1, 1);
            num.add_term(rat(-1), 2, 1);
            den.add_term(rat(1), 0, 0);
            den.add_term(rat(-1), 1, 0);
            den.add_term(rat(-1), 2, 1);
        }
    }
    Ok((num, den))
}

/// `phi_m`: the EGF of inseparable palindromic elements of full support.
pub fn phi_series(m: Bond, q_order: usize, t_order: usize) -> Result<BivariateSeries> {
    let (num, den) = phi_rational(m)?;
    BivariateSeries::expand_rational(&num, &den, q_order, t_order)
}

fn exp_t(q_order: usize, t_order: usize, with_q: bool) -> Result<BivariateSeries> {
    let mut arg = BivariatePoly::new().with_term(rat(1), 0, 1);
    if with_q {
        arg.add_term(rat(1), 1, 1);
    }
    arg.truncate(q_order, t_order).exp()
}

/// `Phi_m`, the EGF of palindromic elements of `W(m, n)` by length.
#[allow(non_snake_case)]
pub fn Phi_series(m: Bond, q_order: usize, t_order: usize) -> Result<BivariateSeries> {
    if m == Bond::Finite(2) {
        return exp_t(q_order, t_order, true);
    }
    let phi = phi_series(m, q_order, t_order)?;
    let one = BivariateSeries::one(q_order, t_order);
    Ok(exp_t(q_order, t_order, false)?.mul(&one.sub(&phi).reciprocal()?))
}

/// `A_n(q)` and `B_n(q)`, scaled by `1/n!`, as `q`-series truncated at
/// `q_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePair {
    pub n: usize,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
}

impl RecurrencePair {
    pub fn total(&self) -> Vec<BigRational> {
        self.a.iter().zip(&self.b).map(|(x, y)| x + y).collect()
    }
}

fn rational_strings<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let last = v.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    s.collect_seq(v[..last].iter().map(crate::algebra::series::rational_string))
}

impl Serialize for RecurrencePair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [BigRational]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                rational_strings(self.0, s)
            }
        }
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RecurrencePair", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("A", &Coeffs(&self.a))?;
        st.serialize_field("B", &Coeffs(&self.b))?;
        st.end()
    }
}

fn series_from_qpoly(p: &QPolynomial, scale: &BigRational, shift: usize, q_order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); q_order];
    for (i, c) in p.coeffs().iter().enumerate() {
        if i + shift < q_order {
            out[i + shift] += scale * BigRational::from_integer(c.clone());
        }
    }
    out
}

fn q_series_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// The pairs `(A_n, B_n)` for `n = 1..=n_max`.
///
/// For `m = 3`, `A_n` vanishes from `n = 2` on and
/// `B_n = q^3/2 (2q^2 / (1 - q^2))^(n-2)`; otherwise the first-order
/// recurrence from `A_2 = q^3 [m-3]`, `B_2 = q^m / 2` is used.
pub fn recurrence_pairs(m: u32, n_max: usize, q_order: usize) -> Result<Vec<RecurrencePair>> {
    if m < 3 {
        return Err(CoxError::Parameter(format!("recurrence needs 3 <= m < inf, got {m}")));
    }
    let m = m as usize;
    let zero = vec![BigRational::zero(); q_order];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out = Vec::new();
    if n_max >= 1 {
        out.push(RecurrencePair {
            n: 1,
            a: series_from_qpoly(&QPolynomial::one(), &rat(1), 1, q_order),
            b: zero.clone(),
        });
    }
    if n_max >= 2 {
        out.push(RecurrencePair {
            n: 2,
            a: series_from_qpoly(&q_integer(m - 3), &rat(1), 3, q_order),
            b: series_from_qpoly(&QPolynomial::one(), &half, m, q_order),
        });
    }
    if m == 3 {
        // 2q^2 / (1 - q^2) = sum_{i >= 1} 2 q^(2i)
        let mut ratio = zero.clone();
        for i in (2..q_order).step_by(2) {
            ratio[i] = rat(2);
        }
        for n in 3..=n_max {
            let prev = &out[n - 2].b;
            out.push(RecurrencePair {
                n,
                a: zero.clone(),
                b: q_series_mul(prev, &ratio),
            });
        }
        return Ok(out);
    }
    let fa = series_from_qpoly(&q_integer(m - 3), &rat(1), 2, q_order);
    let fb = series_from_qpoly(&QPolynomial::one(), &rat(1), m - 1, q_order);
    for n in 3..=n_max {
        let prev = &out[n - 2];
        let base: Vec<BigRational> = prev.a.iter().zip(&prev.b).map(|(a, b)| a + b * rat(2)).collect();
        out.push(RecurrencePair {
            n,
            a: q_series_mul(&fa, &base),
            b: q_series_mul(&fb, &base),
        });
    }
    Ok(out)
}

/// Totals of palindromic elements in `W(m, n)`, rows indexed by `m` and
/// columns by `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Figure3Table {
    pub m_values: Vec<u32>,
    pub n_values: Vec<usize>,
    #[serde(serialize_with = "bigint_rows")]
    pub cells: Vec<Vec<BigInt>>,
}

fn bigint_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    s.collect_seq(rows.iter().map(|row| {
        row.iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect::<Vec<_>>()
    }))
}

impl Figure3Table {
    pub fn get(&self, m: u32, n: usize) -> Option<&BigInt> {
        let i = self.m_values.iter().position(|&x| x == m)?;
        let j = self.n_values.iter().position(|&x| x == n)?;
        Some(&self.cells[i][j])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m");
        for n in &self.n_values {
            out.push_str(&format!(",{n}"));
        }
        out.push('\n');
        for (m, row) in self.m_values.iter().zip(&self.cells) {
            out.push_str(&m.to_string());
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_aligned(&self) -> String {
        let mut rows: Vec<Vec<String>> = vec![std::iter::once("m\\n".to_owned())
            .chain(self.n_values.iter().map(|n| n.to_string()))
            .collect()];
        for (m, row) in self.m_values.iter().zip(&self.cells) {
            rows.push(
                std::iter::once(m.to_string())
                    .chain(row.iter().map(|c| c.to_string()))
                    .collect(),
            );
        }
        let cols = rows[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in rows {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Totals `n! [t^n] Phi_m(1, t)`, from the closed form of `phi_m` at
/// `q = 1`.
pub fn figure3_table(m_values: &[u32], n_values: &[usize]) -> Result<Figure3Table> {
    let t_order = n_values.iter().max().map_or(1, |&n| n + 1);
    let mut cells = Vec::with_capacity(m_values.len());
    for &m in m_values {
        if m < 4 {
            return Err(CoxError::Parameter(format!(
                "W({m}, n) has infinitely many palindromic elements; need 4 <= m < inf"
            )));
        }
        let (num, den) = phi_rational(Bond::Finite(m))?;
        let phi = BivariateSeries::expand_rational(&num.at_q_one(), &den.at_q_one(), 1, t_order)?;
        let exp_t = exp_t(1, t_order, false)?;
        let one = BivariateSeries::one(1, t_order);
        let big_phi = exp_t.mul(&one.sub(&phi).reciprocal()?);
        let row = n_values
            .iter()
            .map(|&n| {
                let c = big_phi
                    .egf_coefficient(n)
                    .expect("palindromic counts are integers");
                c.into_iter().next().unwrap_or_default()
            })
            .collect();
        cells.push(row);
    }
    Ok(Figure3Table {
        m_values: m_values.to_vec(),
        n_values: n_values.to_vec(),
        cells,
    })
}
