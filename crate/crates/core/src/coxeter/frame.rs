//! Integer root engine.
//!
//! All bond values `2B(a_i, a_j)` are algebraic integers, so every root lies in
//! `Z[theta]^n`. A [`Frame`] stores the matrix of a group element in the
//! simple-root basis (column `j` is `w(a_j)`), with each coordinate an integer
//! coefficient vector over `1, theta, .., theta^(d-1)`. Frames start out in
//! `i64` and move to `BigInt` once a tracked bound on the coefficients gets
//! close to the `i64` range.

use std::fmt::Debug;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::genset::GenSet;
use super::Gen;
use crate::algebra::{CyclotomicReal, FieldContext};

pub(crate) trait Coef: Clone + Eq + Hash + Debug {
    fn is_zero(&self) -> bool;
    fn negate(&mut self);
    /// `acc[k] -= sum_l mat[k * d + l] * x[l]`
    fn sub_mat_vec(acc: &mut [Self], mat: &[i64], x: &[Self]);
    fn approx(&self) -> f64;
    fn to_bigint(&self) -> BigInt;
    fn signum(&self) -> i8;
}

impl Coef for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn negate(&mut self) {
        *self = -*self;
    }
    fn sub_mat_vec(acc: &mut [i64], mat: &[i64], x: &[i64]) {
        let d = x.len();
        for (k, a) in acc.iter_mut().enumerate() {
            let mut sum: i128 = *a as i128;
            for (l, &xl) in x.iter().enumerate() {
                sum -= mat[k * d + l] as i128 * xl as i128;
            }
            *a = i64::try_from(sum).expect("coefficient bound tracking failed");
        }
    }
    fn approx(&self) -> f64 {
        *self as f64
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn signum(&self) -> i8 {
        i64::signum(*self) as i8
    }
}

impl Coef for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn negate(&mut self) {
        *self = -std::mem::take(self);
    }
    fn sub_mat_vec(acc: &mut [BigInt], mat: &[i64], x: &[BigInt]) {
        let d = x.len();
        for (k, a) in acc.iter_mut().enumerate() {
            for (l, xl) in x.iter().enumerate() {
                let m = mat[k * d + l];
                if m != 0 && !Zero::is_zero(xl) {
                    *a -= xl * m;
                }
            }
        }
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn signum(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Bond multiplication tables shared by every frame of one system.
#[derive(Debug, Clone)]
pub(crate) struct RootTables {
    pub n: usize,
    pub d: usize,
    /// `d x d` integer matrix of multiplication by `2B(a_i, a_j)`, indexed
    /// `i * n + j`; `None` when the bond value is zero or `i == j`.
    bond_mul: Vec<Option<Vec<i64>>>,
    /// Worst-case growth factor of the coefficient bound per multiplication.
    growth: u64,
    field: Arc<FieldContext>,
}

impl RootTables {
    pub fn new(field: &Arc<FieldContext>, bond_values: &[CyclotomicReal], n: usize) -> Self {
        let d = field.degree();
        let mut bond_mul = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let b = &bond_values[i * n + j];
                if i == j || b.is_zero() {
                    continue;
                }
                let mut mat = vec![0i64; d * d];
                for l in 0..d {
                    let mut basis = vec![BigRational::zero(); l + 1];
                    basis[l] = BigRational::from_integer(BigInt::from(1));
                    let prod = b * &CyclotomicReal::from_coefficients(field, basis);
                    for (k, c) in prod.coefficients().iter().enumerate() {
                        assert!(c.is_integer(), "bond value is not an algebraic integer");
                        mat[k * d + l] = c.to_integer().to_i64().expect("bond table fits i64");
                    }
                }
                bond_mul[i * n + j] = Some(mat);
            }
        }
        let row_sum = bond_mul
            .iter()
            .flatten()
            .flat_map(|mat| mat.chunks(d).map(|row| row.iter().map(|x| x.unsigned_abs()).sum::<u64>()))
            .max()
            .unwrap_or(0);
        RootTables {
            n,
            d,
            bond_mul,
            growth: 1 + n as u64 * row_sum,
            field: field.clone(),
        }
    }

    fn bond(&self, i: usize, j: usize) -> Option<&[i64]> {
        self.bond_mul[i * self.n + j].as_deref()
    }

    /// Exact sign of `sum c_k theta^k`.
    pub fn sign<C: Coef>(&self, c: &[C]) -> i8 {
        if c.iter().all(Coef::is_zero) {
            return 0;
        }
        if self.d == 1 {
            return c[0].signum();
        }
        let pows = self.field.theta_powers_f64();
        let mut value = 0.0;
        let mut magnitude = 0.0;
        for (ck, p) in c.iter().zip(pows) {
            let t = ck.approx() * p;
            value += t;
            magnitude += t.abs();
        }
        // rounding error is far below 1e-9 of the magnitude
        if magnitude.is_finite() && value.abs() > magnitude * 1e-9 {
            return if value > 0.0 { 1 } else { -1 };
        }
        let exact = c
            .iter()
            .map(|ck| BigRational::from_integer(ck.to_bigint()))
            .collect();
        CyclotomicReal::from_coefficients(&self.field, exact).sign()
    }
}


#[derive(Clone, Debug)]
enum Data {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// Matrix of a group element acting on the simple-root basis.
///
/// Equality and hashing compare coefficient values, so a frame that was
/// promoted to `BigInt` still matches an equal `i64` frame.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    data: Data,
    /// Upper bound on the absolute value of every coefficient.
    bound: u64,
}

const SMALL_LIMIT: u64 = 1 << 62;
const STACK_COLUMN: usize = 32;

fn right_mul_slice<C: Coef>(data: &mut [C], t: &RootTables, s: usize, col_s: &[C]) {
    let (n, d) = (t.n, t.d);
    let w = n * d;
    for j in 0..n {
        if j == s {
            continue;
        }
        // (w s)(a_j) = w(a_j) - 2B(a_j, a_s) w(a_s)
        if let Some(mat) = t.bond(j, s) {
            let col = &mut data[j * w..(j + 1) * w];
            for i in 0..n {
                C::sub_mat_vec(&mut col[i * d..(i + 1) * d], mat, &col_s[i * d..(i + 1) * d]);
            }
        }
    }
    for c in &mut data[s * w..(s + 1) * w] {
        c.negate();
    }
}

fn left_mul_slice<C: Coef>(data: &mut [C], t: &RootTables, s: usize) {
    let (n, d) = (t.n, t.d);
    let w = n * d;
    let mut new_s: Vec<C> = Vec::with_capacity(d);
    for j in 0..n {
        let col = &mut data[j * w..(j + 1) * w];
        new_s.clear();
        new_s.extend_from_slice(&col[s * d..(s + 1) * d]);
        for c in &mut new_s {
            c.negate();
        }
        for i in 0..n {
            if i == s {
                continue;
            }
            if let Some(mat) = t.bond(i, s) {
                C::sub_mat_vec(&mut new_s, mat, &col[i * d..(i + 1) * d]);
            }
        }
        col[s * d..(s + 1) * d].clone_from_slice(&new_s);
    }
}

fn column_sign_slice<C: Coef>(data: &[C], t: &RootTables, j: usize) -> i8 {
    let w = t.n * t.d;
    let col = &data[j * w..(j + 1) * w];
    let mut sign = 0;
    for i in 0..t.n {
        let si = t.sign(&col[i * t.d..(i + 1) * t.d]);
        if si == 0 {
            continue;
        }
        if sign == 0 {
            sign = si;
        } else {
            assert_eq!(sign, si, "root with mixed-sign coordinates: representation bug");
        }
    }
    assert!(sign != 0, "zero root");
    sign
}

impl Frame {
    pub fn identity(t: &RootTables) -> Self {
        let mut data = vec![0i64; t.n * t.n * t.d];
        for j in 0..t.n {
            data[(j * t.n + j) * t.d] = 1;
        }
        Frame {
            data: Data::Small(data),
            bound: 1,
        }
    }

    pub fn from_word(t: &RootTables, word: impl IntoIterator<Item = Gen>) -> Self {
        let mut f = Self::identity(t);
        for s in word {
            f.right_mul(t, s);
        }
        f
    }

    /// Makes room for one more multiplication without leaving `i64`.
    fn reserve(&mut self, t: &RootTables) {
        if let Data::Small(v) = &self.data {
            if self.bound.saturating_mul(t.growth) < SMALL_LIMIT {
                return;
            }
            self.bound = v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
            if self.bound.saturating_mul(t.growth) >= SMALL_LIMIT {
                self.data = Data::Big(v.iter().map(|&x| BigInt::from(x)).collect());
            }
        }
    }

    /// Right multiplication by the reflection `s`: `w -> w s`.
    pub fn right_mul(&mut self, t: &RootTables, s: Gen) {
        self.reserve(t);
        self.bound = self.bound.saturating_mul(t.growth);
        match &mut self.data {
            Data::Small(v) => {
                let w = t.n * t.d;
                let s = s as usize;
                // copy the pivot column to the stack for the common small case
                if w <= STACK_COLUMN {
                    let mut buf = [0i64; STACK_COLUMN];
                    buf[..w].copy_from_slice(&v[s * w..(s + 1) * w]);
                    right_mul_slice(v, t, s, &buf[..w]);
                } else {
                    let col_s = v[s * w..(s + 1) * w].to_vec();
                    right_mul_slice(v, t, s, &col_s);
                }
            }
            Data::Big(v) => {
                let w = t.n * t.d;
                let s = s as usize;
                let col_s = v[s * w..(s + 1) * w].to_vec();
                right_mul_slice(v, t, s, &col_s);
            }
        }
    }

    /// Left multiplication by the reflection `s`: `w -> s w`. Only the
    /// `s`-coordinate of each column changes.
    pub fn left_mul(&mut self, t: &RootTables, s: Gen) {
        self.reserve(t);
        self.bound = self.bound.saturating_mul(t.growth);
        match &mut self.data {
            Data::Small(v) => left_mul_slice(v, t, s as usize),
            Data::Big(v) => left_mul_slice(v, t, s as usize),
        }
    }

    /// Sign of the root in column `j`: `-1` for negative roots.
    ///
    /// Panics when the coordinates disagree in sign, which no root can do.
    pub fn column_sign(&self, t: &RootTables, j: usize) -> i8 {
        match &self.data {
            Data::Small(v) => column_sign_slice(v, t, j),
            Data::Big(v) => column_sign_slice(v, t, j),
        }
    }

    pub fn is_negative(&self, t: &RootTables, s: Gen) -> bool {
        self.column_sign(t, s as usize) < 0
    }

    /// Generators whose simple roots this element sends negative. For the
    /// frame of `w` these are the right descents of `w`.
    pub fn negative_columns(&self, t: &RootTables) -> GenSet {
        (0..t.n)
            .filter(|&j| self.column_sign(t, j) < 0)
            .map(|j| j as Gen)
            .collect()
    }

    pub fn first_negative_column(&self, t: &RootTables) -> Option<Gen> {
        (0..t.n).find(|&j| self.column_sign(t, j) < 0).map(|j| j as Gen)
    }

    fn coef(&self, i: usize) -> BigInt {
        match &self.data {
            Data::Small(v) => BigInt::from(v[i]),
            Data::Big(v) => v[i].clone(),
        }
    }

    fn len(&self) -> usize {
        match &self.data {
            Data::Small(v) => v.len(),
            Data::Big(v) => v.len(),
        }
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        match (&self.data, &other.data) {
            (Data::Small(a), Data::Small(b)) => a == b,
            (Data::Big(a), Data::Big(b)) => a == b,
            _ => self.len() == other.len() && (0..self.len()).all(|i| self.coef(i) == other.coef(i)),
        }
    }
}

impl Eq for Frame {}

impl Hash for Frame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.data {
            Data::Small(v) => {
                for x in v {
                    x.hash(state);
                }
            }
            Data::Big(v) => {
                // hash like the i64 form whenever a coefficient fits
                for x in v {
                    match x.to_i64() {
                        Some(s) => s.hash(state),
                        None => x.hash(state),
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn system(doc: &str) -> CoxeterSystem {
        CoxeterSystem::parse_group(doc).unwrap()
    }

    #[test]
    fn left_and_right_multiplication_agree() {
        let sys = system(
            r#"{"name": "T", "generators": ["r", "s", "t"], "matrix": [[1, 2, 5], [2, 1, 3], [5, 3, 1]]}"#,
        );
        let t = sys.tables();
        let word = [0u8, 2, 1, 2, 0, 1];
        for s in 0..3u8 {
            let mut f = Frame::from_word(t, word);
            f.left_mul(t, s);
            let g = Frame::from_word(t, std::iter::once(s).chain(word));
            assert_eq!(f, g);
        }
        let mut f = Frame::from_word(t, word);
        for &s in word.iter().rev() {
            f.right_mul(t, s);
        }
        assert_eq!(f, Frame::identity(t));
    }

    #[test]
    fn promotion_to_bigint_preserves_equality() {
        let sys = system(
            r#"{"name": "F", "generators": ["a", "b", "c"], "matrix": [[1, "inf", "inf"], ["inf", 1, "inf"], ["inf", "inf", 1]]}"#,
        );
        let t = sys.tables();
        let word: Vec<Gen> = (0..120).map(|i| (i % 3) as Gen).collect();
        let mut f = Frame::from_word(t, word.iter().copied());
        assert!(matches!(f.data, Data::Big(_)));
        assert_eq!(sys.length(&word), 120);
        // w s s = w, where only the first has been through an extra promotion check
        let g = f.clone();
        f.right_mul(t, 1);
        f.right_mul(t, 1);
        assert_eq!(f, g);
        let short = Frame::from_word(t, [0u8, 1]);
        let mut promoted = short.clone();
        if let Data::Small(v) = &promoted.data {
            promoted.data = Data::Big(v.iter().map(|&x| BigInt::from(x)).collect());
        }
        assert_eq!(short, promoted);
        use std::hash::BuildHasher;
        let h = rustc_hash::FxBuildHasher;
        assert_eq!(h.hash_one(&short), h.hash_one(&promoted));
    }
}
