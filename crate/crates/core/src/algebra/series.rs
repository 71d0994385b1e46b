//! Truncated power series in `q` and `t` with rational coefficients.
//!
//! Coefficients with a `q`-power at or beyond `q_order`, or a `t`-power at or
//! beyond `t_order`, are dropped. Every retained coefficient is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::qpoly::QPolynomial;
use crate::error::{CoxError, Result};

pub const DEFAULT_Q_ORDER: usize = 64;
pub const DEFAULT_T_ORDER: usize = 8;

/// Sparse exact polynomial in `q` and `t`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BivariatePoly {
    /// keyed by `(q power, t power)`
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl BivariatePoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new().with_term(c, 0, 0)
    }

    pub fn with_term(mut self, c: BigRational, q_pow: usize, t_pow: usize) -> Self {
        self.add_term(c, q_pow, t_pow);
        self
    }

    pub fn add_term(&mut self, c: BigRational, q_pow: usize, t_pow: usize) {
        let entry = self.terms.entry((q_pow, t_pow)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(q_pow, t_pow));
        }
    }

    /// `scale * q^q_shift * p(q) * t^t_pow`.
    pub fn add_qpoly(&mut self, scale: &BigRational, p: &QPolynomial, q_shift: usize, t_pow: usize) {
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                self.add_term(scale * BigRational::from_integer(c.clone()), i + q_shift, t_pow);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.terms.iter().map(|(&(q, t), c)| (q, t, c))
    }

    /// Substitutes `q = 1`, leaving a polynomial in `t` alone.
    pub fn at_q_one(&self) -> BivariatePoly {
        let mut out = BivariatePoly::new();
        for (_, t, c) in self.terms() {
            out.add_term(c.clone(), 0, t);
        }
        out
    }

    pub fn truncate(&self, q_order: usize, t_order: usize) -> BivariateSeries {
        let mut s = BivariateSeries::zero(q_order, t_order);
        for (q, t, c) in self.terms() {
            if q < q_order && t < t_order {
                s.coeffs[t][q] += c;
            }
        }
        s
    }
}

/// Truncated series, stored as `coeffs[t_power][q_power]`.
#[derive(Clone, PartialEq)]
pub struct BivariateSeries {
    coeffs: Vec<Vec<BigRational>>,
    q_order: usize,
    t_order: usize,
}

fn q_mul(a: &[BigRational], b: &[BigRational], q_order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); q_order];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(q_order - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn q_reciprocal(a: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let a0_inv = a[0].recip();
    let mut b = vec![BigRational::zero(); n];
    b[0] = a0_inv.clone();
    for i in 1..n {
        let mut acc = BigRational::zero();
        for j in 1..=i {
            if !a[j].is_zero() {
                acc += &a[j] * &b[i - j];
            }
        }
        b[i] = -acc * &a0_inv;
    }
    b
}

impl BivariateSeries {
    pub fn zero(q_order: usize, t_order: usize) -> Self {
        assert!(q_order > 0 && t_order > 0, "truncation orders must be positive");
        BivariateSeries {
            coeffs: vec![vec![BigRational::zero(); q_order]; t_order],
            q_order,
            t_order,
        }
    }

    pub fn one(q_order: usize, t_order: usize) -> Self {
        let mut s = Self::zero(q_order, t_order);
        s.coeffs[0][0] = BigRational::one();
        s
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn t_order(&self) -> usize {
        self.t_order
    }

    pub fn coeff(&self, q_pow: usize, t_pow: usize) -> BigRational {
        if q_pow < self.q_order && t_pow < self.t_order {
            self.coeffs[t_pow][q_pow].clone()
        } else {
            BigRational::zero()
        }
    }

    /// The `q`-series multiplying `t^n`.
    pub fn t_coefficient(&self, n: usize) -> &[BigRational] {
        &self.coeffs[n]
    }

    /// `n! * [t^n]` as integers, when integral.
    pub fn egf_coefficient(&self, n: usize) -> Option<Vec<BigInt>> {
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let fact = BigRational::from_integer(fact);
        self.coeffs[n]
            .iter()
            .map(|c| {
                let v = c * &fact;
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    fn check_orders(&self, other: &Self) {
        assert_eq!(
            (self.q_order, self.t_order),
            (other.q_order, other.t_order),
            "series truncation orders differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_orders(other);
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().flatten() {
            *c *= k;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_orders(other);
        let mut out = Self::zero(self.q_order, self.t_order);
        for n in 0..self.t_order {
            for k in 0..=n {
                if self.coeffs[k].iter().all(Zero::is_zero) {
                    continue;
                }
                let prod = q_mul(&self.coeffs[k], &other.coeffs[n - k], self.q_order);
                for (c, p) in out.coeffs[n].iter_mut().zip(prod) {
                    *c += p;
                }
            }
        }
        out
    }

    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0][0].is_zero() {
            return Err(CoxError::Series("reciprocal of a series with zero constant term".into()));
        }
        let mut out = Self::zero(self.q_order, self.t_order);
        out.coeffs[0] = q_reciprocal(&self.coeffs[0]);
        let b0 = out.coeffs[0].clone();
        for n in 1..self.t_order {
            let mut acc = vec![BigRational::zero(); self.q_order];
            for k in 1..=n {
                let prod = q_mul(&self.coeffs[k], &out.coeffs[n - k], self.q_order);
                for (a, p) in acc.iter_mut().zip(prod) {
                    *a += p;
                }
            }
            out.coeffs[n] = q_mul(&b0, &acc, self.q_order)
                .into_iter()
                .map(|c| -c)
                .collect();
        }
        Ok(out)
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0][0].is_zero() {
            return Err(CoxError::Series("exp of a series with nonzero constant term".into()));
        }
        let mut result = Self::one(self.q_order, self.t_order);
        let mut term = result.clone();
        for k in 1..=(self.q_order + self.t_order) {
            term = term
                .mul(self)
                .scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term);
        }
        Ok(result)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// `numerator / denominator` expanded to the given orders.
    pub fn expand_rational(
        numerator: &BivariatePoly,
        denominator: &BivariatePoly,
        q_order: usize,
        t_order: usize,
    ) -> Result<Self> {
        let den = denominator.truncate(q_order, t_order);
        if den.coeffs[0][0].is_zero() {
            return Err(CoxError::Series(
                "rational expansion with zero constant term in the denominator".into(),
            ));
        }
        Ok(numerator.truncate(q_order, t_order).mul(&den.reciprocal()?))
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (n, row) in self.coeffs.iter().enumerate() {
            let last = row.iter().rposition(|c| !c.is_zero());
            if let Some(last) = last {
                let shown: Vec<String> = row[..=last].iter().map(|c| c.to_string()).collect();
                m.entry(&n, &shown.join(", "));
            }
        }
        m.finish()
    }
}

/// `{t_power: ["p/q", ...]}` with ascending `q` coefficients.
impl Serialize for BivariateSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, Vec<String>> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, row)| {
                let end = row.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
                (n, row[..end].iter().map(rational_string).collect())
            })
            .collect();
        map.serialize(s)
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
