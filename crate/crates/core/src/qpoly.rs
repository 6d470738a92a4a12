//! Sparse bivariate polynomials in `q` and `x` with arbitrary-precision
//! integer coefficients, and the q-analogues built on them.
//!
//! Terms are kept in canonical form: no stored coefficient is zero, so two
//! polynomials are equal exactly when their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent pair of a monomial `q^q * x^x`.
///
/// Ordered by `x` first, then `q`, which is the order terms are rendered in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    pub x: u32,
    pub q: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QXPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl QXPoly {
    pub fn zero() -> Self {
        QXPoly::default()
    }

    pub fn one() -> Self {
        QXPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QXPoly::monomial(c, 0, 0)
    }

    /// `c * q^q_exp * x^x_exp`.
    pub fn monomial(c: impl Into<BigInt>, q_exp: u32, x_exp: u32) -> Self {
        let mut p = QXPoly::zero();
        p.add_term(q_exp, x_exp, c.into());
        p
    }

    pub fn q() -> Self {
        QXPoly::monomial(1, 1, 0)
    }

    pub fn x() -> Self {
        QXPoly::monomial(1, 0, 1)
    }

    pub fn q_pow(e: u32) -> Self {
        QXPoly::monomial(1, e, 0)
    }

    /// Polynomial in `q` alone from a dense coefficient list, lowest degree first.
    pub fn from_q_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut p = QXPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(i as u32, 0, c.clone().into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(q_exp, x_exp, coeff)` in `(x, q)` ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (e.q, e.x, c))
    }

    pub fn coeff(&self, q_exp: u32, x_exp: u32) -> BigInt {
        self.terms
            .get(&Exponents { x: x_exp, q: q_exp })
            .cloned()
            .unwrap_or_default()
    }

    /// Largest `q` exponent, or `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.q).max()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.x).max()
    }

    /// Dense `q` coefficients of the `x^x_exp` part, from `q^0` up to the
    /// degree of the whole polynomial.
    pub fn q_coeffs_at(&self, x_exp: u32) -> Vec<BigInt> {
        let Some(deg) = self.q_degree() else {
            return Vec::new();
        };
        let mut out = vec![BigInt::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            if e.x == x_exp {
                out[e.q as usize] = c.clone();
            }
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// Dense `q` coefficients of a polynomial that does not involve `x`.
    pub fn q_coeffs(&self) -> Vec<BigInt> {
        debug_assert!(self.x_degree().unwrap_or(0) == 0);
        self.q_coeffs_at(0)
    }

    pub fn add_term(&mut self, q_exp: u32, x_exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = Exponents { x: x_exp, q: q_exp };
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Multiplies by `q^q_exp * x^x_exp`.
    pub fn mul_monomial(&self, q_exp: u32, x_exp: u32) -> Self {
        QXPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        Exponents {
                            x: e.x + x_exp,
                            q: e.q + q_exp,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QXPoly::zero();
        }
        QXPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(QXPoly::one(), |acc, _| &acc * self)
    }

    /// Substitutes `x := value`, leaving a polynomial in `q` alone.
    pub fn eval_x(&self, value: i64) -> Self {
        let v = BigInt::from(value);
        let mut out = QXPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.q, 0, c * v.pow(e.x));
        }
        out
    }

    /// Substitutes `q := 1`, leaving a polynomial in `x` alone.
    pub fn eval_q_one(&self) -> Self {
        let mut out = QXPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(0, e.x, c.clone());
        }
        out
    }

    /// Sum of all coefficients, i.e. the value at `q = x = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `q := q^step`.
    pub fn substitute_q_power(&self, step: u32) -> Self {
        QXPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        Exponents {
                            x: e.x,
                            q: e.q * step,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn render_term(out: &mut String, e: &Exponents, c: &BigInt, first: bool) {
        if c.is_negative() {
            out.push('-');
        } else if !first {
            out.push('+');
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || (e.q == 0 && e.x == 0) {
            factors.push(abs.to_string());
        }
        match e.q {
            0 => {}
            1 => factors.push("q".into()),
            a => factors.push(format!("q^{a}")),
        }
        match e.x {
            0 => {}
            1 => factors.push("x".into()),
            b => factors.push(format!("x^{b}")),
        }
        out.push_str(&factors.join("*"));
    }
}

/// Text form: terms in `(x, q)` ascending order rendered as `c*q^a*x^b`
/// joined by `+`/`-`, omitting `^1` and unit coefficients. Zero is `0`.
impl fmt::Display for QXPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            QXPoly::render_term(&mut out, e, c, i == 0);
        }
        f.write_str(&out)
    }
}

impl FromStr for QXPoly {
    type Err = Error;

    /// Accepts the text form produced by `Display`, and more loosely any sum of
    /// products of integers, `q`, `q^a`, `x`, `x^b` (whitespace ignored).
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::parse(1, "empty polynomial"));
        }
        let mut out = QXPoly::zero();
        let mut pos = 0;
        while pos < chars.len() {
            let start = pos;
            let mut sign = BigInt::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(Error::parse(pos + 1, "expected '+' or '-'"));
            }
            let mut end = pos;
            while end < chars.len() && chars[end] != '+' && chars[end] != '-' {
                end += 1;
            }
            if end == pos {
                return Err(Error::parse(start + 1, "empty term"));
            }
            let term: String = chars[pos..end].iter().collect();
            let (c, q, x) = parse_term(&term).map_err(|m| Error::parse(pos + 1, m))?;
            out.add_term(q, x, sign * c);
            pos = end;
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> std::result::Result<(BigInt, u32, u32), String> {
    let mut coeff = BigInt::one();
    let (mut q, mut x) = (0u32, 0u32);
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(format!("empty factor in '{term}'"));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<u32>()
                    .map_err(|_| format!("bad exponent in '{factor}'"))?,
            ),
            None => (factor, 1),
        };
        match base {
            "q" => q += exp,
            "x" => x += exp,
            digits => {
                let c: BigInt = digits
                    .parse()
                    .map_err(|_| format!("unknown factor '{factor}'"))?;
                coeff *= c.pow(exp);
            }
        }
    }
    Ok((coeff, q, x))
}

/// JSON form: array of `[q_exp, x_exp, "coeff"]`, in rendering order.
impl Serialize for QXPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms().map(|(q, x, c)| (q, x, c.to_string())))
    }
}

impl<'de> Deserialize<'de> for QXPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(u32, u32, String)> = Vec::deserialize(deserializer)?;
        let mut out = QXPoly::zero();
        for (q, x, c) in raw {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            out.add_term(q, x, c);
        }
        Ok(out)
    }
}

impl From<i64> for QXPoly {
    fn from(c: i64) -> Self {
        QXPoly::constant(c)
    }
}

impl From<BigInt> for QXPoly {
    fn from(c: BigInt) -> Self {
        QXPoly::constant(c)
    }
}

impl AddAssign<&QXPoly> for QXPoly {
    fn add_assign(&mut self, rhs: &QXPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.q, e.x, c.clone());
        }
    }
}

impl SubAssign<&QXPoly> for QXPoly {
    fn sub_assign(&mut self, rhs: &QXPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.q, e.x, -c);
        }
    }
}

impl Add<&QXPoly> for &QXPoly {
    type Output = QXPoly;
    fn add(self, rhs: &QXPoly) -> QXPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QXPoly> for &QXPoly {
    type Output = QXPoly;
    fn sub(self, rhs: &QXPoly) -> QXPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&QXPoly> for &QXPoly {
    type Output = QXPoly;
    fn mul(self, rhs: &QXPoly) -> QXPoly {
        let mut out = QXPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.q + b.q, a.x + b.x, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QXPoly {
    type Output = QXPoly;
    fn neg(self) -> QXPoly {
        QXPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr<QXPoly> for QXPoly {
            type Output = QXPoly;
            fn $f(self, rhs: QXPoly) -> QXPoly { (&self).$f(&rhs) }
        }
        impl $tr<&QXPoly> for QXPoly {
            type Output = QXPoly;
            fn $f(self, rhs: &QXPoly) -> QXPoly { (&self).$f(rhs) }
        }
        impl $tr<QXPoly> for &QXPoly {
            type Output = QXPoly;
            fn $f(self, rhs: QXPoly) -> QXPoly { self.$f(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for QXPoly {
    type Output = QXPoly;
    fn neg(self) -> QXPoly {
        -&self
    }
}

impl AddAssign<QXPoly> for QXPoly {
    fn add_assign(&mut self, rhs: QXPoly) {
        *self += &rhs;
    }
}

impl Sum for QXPoly {
    fn sum<I: Iterator<Item = QXPoly>>(iter: I) -> Self {
        iter.fold(QXPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl Product for QXPoly {
    fn product<I: Iterator<Item = QXPoly>>(iter: I) -> Self {
        iter.fold(QXPoly::one(), |acc, p| &acc * &p)
    }
}

/// `[n * step]_q = 1 + q + ... + q^{n*step - 1}`.
///
/// With `step = 1` this is the plain q-integer `[n]_q`; with `step = l` it is
/// the factor `[n l]_q` of the flag product.
pub fn q_integer(n: u32, step: u32) -> Result<QXPoly> {
    if n == 0 || step == 0 {
        return Err(Error::InvalidArgument(format!(
            "q_integer needs n >= 1 and step >= 1, got n={n}, step={step}"
        )));
    }
    let mut p = QXPoly::zero();
    for i in 0..n * step {
        p.add_term(i, 0, BigInt::one());
    }
    Ok(p)
}

/// Gaussian binomial `[n choose k]` in the variable `q^base_exponent`, via
/// the Pascal rule `[n,k] = [n-1,k-1] + q^{base k} [n-1,k]`.
pub fn q_binomial(n: u32, k: u32, base_exponent: u32) -> Result<QXPoly> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "q_binomial needs k <= n, got n={n}, k={k}"
        )));
    }
    if base_exponent == 0 {
        return Err(Error::InvalidArgument(
            "q_binomial needs a positive base exponent".into(),
        ));
    }
    // row[j] = [i choose j] for the current i
    let mut row = vec![QXPoly::one()];
    for i in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=i.min(k) {
            let left = if j == 0 {
                QXPoly::zero()
            } else {
                row[j as usize - 1].clone()
            };
            let right = if j < i && (j as usize) < row.len() {
                row[j as usize].mul_monomial(base_exponent * j, 0)
            } else {
                QXPoly::zero()
            };
            next.push(if j == 0 { QXPoly::one() } else { left + right });
        }
        row = next;
    }
    Ok(row.swap_remove(k as usize))
}

/// `prod_{j=a+1}^{b} [j l]_q`; the empty product (a = b) is 1.
pub fn rising_flag_product(a: u32, b: u32, l: u32) -> Result<QXPoly> {
    if a > b {
        return Err(Error::InvalidArgument(format!(
            "rising_flag_product needs a <= b, got a={a}, b={b}"
        )));
    }
    if l == 0 {
        return Err(Error::InvalidArgument("l must be positive".into()));
    }
    (a + 1..=b).map(|j| q_integer(j, l)).product()
}

/// Ordinary binomial coefficient, used as a q = 1 reference.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
