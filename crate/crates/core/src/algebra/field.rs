//! The real cyclotomic field `Q(2cos(pi/N))`.
//!
//! Every Coxeter system gets one field: `N` is the lcm of its finite bond
//! labels and `theta = 2cos(pi/N)` generates all the scalars that appear in the
//! geometric representation. Elements are stored as rational polynomials in
//! `theta` reduced modulo its minimal polynomial, so equality is
//! coefficient-wise and the zero test is exact. Signs are decided by interval
//! evaluation over an isolating interval of `theta`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Minimal polynomial and root isolation data for `theta = 2cos(pi/N)`.
#[derive(Debug, Clone)]
pub struct FieldContext {
    order: u64,
    /// Ascending integer coefficients; monic.
    min_poly: Vec<BigInt>,
    isolating: (BigRational, BigRational),
    theta: f64,
    theta_pows: Vec<f64>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}
impl Eq for FieldContext {}

fn lcm_all(labels: &[u64]) -> u64 {
    labels.iter().fold(1u64, |acc, &m| acc.lcm(&m))
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact division of integer polynomials by a monic divisor.
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (i, di) in den.iter().enumerate() {
            rem[k - dd + i] -= &c * di;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Cyclotomic polynomial `Phi_k(z)` by dividing `z^k - 1` by `Phi_d` for the
/// proper divisors `d` of `k`.
pub fn cyclotomic_polynomial(k: u64) -> Vec<BigInt> {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(k, &mut memo)
}

fn cyclotomic_memo(k: u64, memo: &mut BTreeMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&k) {
        return p.clone();
    }
    let mut poly = vec![BigInt::zero(); k as usize + 1];
    poly[0] = -BigInt::one();
    poly[k as usize] = BigInt::one();
    for d in 1..k {
        if k % d == 0 {
            let phi_d = cyclotomic_memo(d, memo);
            poly = div_monic(&poly, &phi_d);
        }
    }
    memo.insert(k, poly.clone());
    poly
}

/// Rewrites a palindromic polynomial of degree `2D` in `z` as a polynomial of
/// degree `D` in `x = z + 1/z`.
fn fold_palindromic(f: &[BigInt]) -> Vec<BigInt> {
    let two_d = f.len() - 1;
    assert!(two_d % 2 == 0, "palindromic fold needs even degree");
    let d = two_d / 2;
    // c[e + d] is the coefficient of z^e for e in -d..=d
    let mut c = f.to_vec();
    let mut out = vec![BigInt::zero(); d + 1];
    for deg in (0..=d).rev() {
        let lead = c[deg + d].clone();
        debug_assert_eq!(lead, c[d - deg], "fold of non-palindromic polynomial");
        if lead.is_zero() {
            continue;
        }
        out[deg] = lead.clone();
        // subtract lead * (z + 1/z)^deg
        let mut binom = BigInt::one();
        for i in 0..=deg {
            let exponent = deg as i64 - 2 * i as i64;
            let idx = (exponent + d as i64) as usize;
            c[idx] -= &lead * &binom;
            binom = binom * BigInt::from(deg - i) / BigInt::from(i + 1);
        }
    }
    debug_assert!(c.iter().all(Zero::is_zero));
    out
}

fn eval_rational(poly: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in poly.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Builds the field for a set of finite bond labels (each at least 2).
pub fn build_field(labels: &[u64]) -> Arc<FieldContext> {
    assert!(labels.iter().all(|&m| m >= 2), "bond labels must be >= 2");
    Arc::new(FieldContext::new(lcm_all(labels)))
}

impl FieldContext {
    /// Field for `theta = 2cos(pi/order)`.
    pub fn new(order: u64) -> FieldContext {
        assert!(order >= 1);
        let min_poly = if order == 1 {
            // theta = 2cos(pi) = -2
            vec![BigInt::from(2), BigInt::one()]
        } else {
            fold_palindromic(&cyclotomic_polynomial(2 * order))
        };
        let theta = 2.0 * (std::f64::consts::PI / order as f64).cos();
        let degree = min_poly.len() - 1;
        let isolating = if degree == 1 {
            let root = BigRational::from_integer(-min_poly[0].clone());
            (root.clone(), root)
        } else {
            isolate_largest_root(&min_poly, order, theta)
        };
        let theta_pows = (0..degree).map(|i| theta.powi(i as i32)).collect();
        FieldContext {
            order,
            min_poly,
            isolating,
            theta,
            theta_pows,
        }
    }

    /// `N`, the lcm of the finite bond labels.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Ascending integer coefficients of the minimal polynomial of `theta`.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn isolating_interval(&self) -> (&BigRational, &BigRational) {
        (&self.isolating.0, &self.isolating.1)
    }

    pub fn theta_f64(&self) -> f64 {
        self.theta
    }

    pub(crate) fn theta_powers_f64(&self) -> &[f64] {
        &self.theta_pows
    }

    /// Expected degree: `phi(2N)/2`, or 1 when `N <= 2`.
    pub fn expected_degree(order: u64) -> usize {
        if order <= 2 {
            1
        } else {
            (euler_phi(2 * order) / 2) as usize
        }
    }

    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - d;
            for i in 0..d {
                coeffs[shift + i] -= &top * BigRational::from_integer(self.min_poly[i].clone());
            }
        }
        coeffs.resize(d, BigRational::zero());
        coeffs
    }

    /// Sign of the polynomial `coeffs` (in `theta`) evaluated at `theta`.
    /// The coefficients must not all vanish.
    fn sign_at_theta(&self, coeffs: &[BigRational]) -> i8 {
        if self.degree() == 1 {
            return sign_of(&coeffs[0]);
        }
        let (mut lo, mut hi) = self.isolating.clone();
        let mut f_lo = sign_of(&eval_rational(&self.min_poly, &lo));
        loop {
            let (a, b) = interval_eval(coeffs, &lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            let f_mid = sign_of(&eval_rational(&self.min_poly, &mid));
            if f_mid == 0 {
                // theta is rational only in degree 1, handled above
                unreachable!("minimal polynomial vanished at a rational point");
            }
            if f_mid == f_lo {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
    }
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn interval_mul(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    let products = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let mut lo = products[0].clone();
    let mut hi = products[0].clone();
    for p in &products[1..] {
        if *p < lo {
            lo = p.clone();
        }
        if *p > hi {
            hi = p.clone();
        }
    }
    (lo, hi)
}

/// Horner evaluation of a rational polynomial over `[lo, hi]`.
fn interval_eval(
    coeffs: &[BigRational],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let x = (lo.clone(), hi.clone());
    let mut acc = (BigRational::zero(), BigRational::zero());
    for c in coeffs.iter().rev() {
        let m = interval_mul(&acc, &x);
        acc = (m.0 + c, m.1 + c);
    }
    acc
}

/// Brackets the largest real root `theta` of the minimal polynomial, away
/// from the next root `2cos(k pi / N)`.
fn isolate_largest_root(
    min_poly: &[BigInt],
    order: u64,
    theta: f64,
) -> (BigRational, BigRational) {
    let next_k = (2..)
        .find(|k: &u64| k.gcd(&(2 * order)) == 1)
        .expect("some k is coprime");
    let next_root = 2.0 * (next_k as f64 * std::f64::consts::PI / order as f64).cos();
    let gap = theta - next_root;
    assert!(gap > 0.0);

    let mut delta = 1e-12;
    let (mut lo, mut hi);
    loop {
        lo = rat(theta - delta);
        hi = rat(theta + delta);
        let a = sign_of(&eval_rational(min_poly, &lo));
        let b = sign_of(&eval_rational(min_poly, &hi));
        if a * b < 0 {
            break;
        }
        delta *= 2.0;
        assert!(delta < gap, "failed to bracket 2cos(pi/{order})");
    }
    // shrink until the bracket cannot reach the next root, then tighten so
    // sign evaluation usually settles without bisection
    let target = BigRational::new(BigInt::one(), BigInt::one() << 64u32);
    let gap_rat = rat(gap / 4.0);
    let mut f_lo = sign_of(&eval_rational(min_poly, &lo));
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > gap_rat || &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        let f_mid = sign_of(&eval_rational(min_poly, &mid));
        if f_mid == 0 {
            unreachable!("irrational root hit exactly");
        }
        if f_mid == f_lo {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(lo.to_f64().unwrap() > next_root);
    (lo, hi)
}

/// An exact element of `Q(theta)`.
#[derive(Clone)]
pub struct CyclotomicReal {
    coeffs: Vec<BigRational>,
    ctx: Arc<FieldContext>,
}

impl PartialEq for CyclotomicReal {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}
impl Eq for CyclotomicReal {}

impl std::hash::Hash for CyclotomicReal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*θ"),
                _ => format!("{c}*θ^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CyclotomicReal {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        CyclotomicReal {
            coeffs: vec![BigRational::zero(); ctx.degree()],
            ctx: ctx.clone(),
        }
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, value: BigRational) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = value;
        z
    }

    pub fn from_int(ctx: &Arc<FieldContext>, value: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(BigInt::from(value)))
    }

    /// `theta` itself.
    pub fn theta(ctx: &Arc<FieldContext>) -> Self {
        Self::from_coefficients(ctx, vec![BigRational::zero(), BigRational::one()])
    }

    /// Builds an element from coefficients of `1, theta, theta^2, ...`;
    /// higher powers are reduced.
    pub fn from_coefficients(ctx: &Arc<FieldContext>, coeffs: Vec<BigRational>) -> Self {
        CyclotomicReal {
            coeffs: ctx.reduce(coeffs),
            ctx: ctx.clone(),
        }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exact sign of the real number this element denotes.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else {
            self.ctx.sign_at_theta(&self.coeffs)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * self.ctx.theta + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .min_poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s) = ext_gcd(&modulus, &trim(self.coeffs.clone()));
        // gcd with an irreducible modulus is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let scale = g[0].clone();
        let s = s.into_iter().map(|c| c / &scale).collect();
        Some(Self::from_coefficients(&self.ctx, s))
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.ctx.order, other.ctx.order,
            "arithmetic across different cyclotomic fields"
        );
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_is_zero(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k - db + i] -= &c * bi;
        }
        quot[k - db] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

/// Returns `(g, s)` with `s * a == g (mod m)` and `g = gcd(m, a)`.
fn ext_gcd(m: &[BigRational], a: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !poly_is_zero(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl Add for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn add(self, rhs: &CyclotomicReal) -> CyclotomicReal {
        self.check_same(rhs);
        CyclotomicReal {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            ctx: self.ctx.clone(),
        }
    }
}

impl Sub for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn sub(self, rhs: &CyclotomicReal) -> CyclotomicReal {
        self.check_same(rhs);
        CyclotomicReal {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            ctx: self.ctx.clone(),
        }
    }
}

impl Neg for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn neg(self) -> CyclotomicReal {
        CyclotomicReal {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            ctx: self.ctx.clone(),
        }
    }
}

impl Mul for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn mul(self, rhs: &CyclotomicReal) -> CyclotomicReal {
        self.check_same(rhs);
        let d = self.ctx.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        CyclotomicReal::from_coefficients(&self.ctx, prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CyclotomicReal {
            type Output = CyclotomicReal;
            fn $method(self, rhs: CyclotomicReal) -> CyclotomicReal {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicReal {
    type Output = CyclotomicReal;
    fn neg(self) -> CyclotomicReal {
        -&self
    }
}

/// `2cos(k pi / N)` via `p_k = theta p_{k-1} - p_{k-2}`.
pub fn two_cos(k: u64, ctx: &Arc<FieldContext>) -> CyclotomicReal {
    let theta = CyclotomicReal::theta(ctx);
    let mut prev = CyclotomicReal::from_int(ctx, 2);
    if k == 0 {
        return prev;
    }
    let mut cur = theta.clone();
    for _ in 1..k {
        let next = &(&theta * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
