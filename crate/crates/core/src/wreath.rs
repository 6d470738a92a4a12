//! Colored permutations of `G_{l,n} = C_l ≀ S_n` and their statistics.
//!
//! A colored letter `ζ^j k` is stored as `(color = j, value = k)`. Letters are
//! ordered color-major with the color order reversed, so for `l = 4`
//!
//! ```text
//! 1:3 < 2:3 < .. < 4:3 < 1:2 < .. < 4:1 < 1 < 2 < 3 < 4
//! ```
//!
//! Positions are 1-based throughout, as are the values in every returned set.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of elements an exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredLetter {
    pub color: u32,
    pub value: usize,
}

impl ColoredLetter {
    pub fn new(value: usize, color: u32) -> Self {
        ColoredLetter { color, value }
    }

    pub fn plain(value: usize) -> Self {
        ColoredLetter { color: 0, value }
    }

    pub fn is_colored(&self) -> bool {
        self.color != 0
    }
}

impl Ord for ColoredLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .color
            .cmp(&self.color)
            .then(self.value.cmp(&other.value))
    }
}

impl PartialOrd for ColoredLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `a < b` in the linear order on the colored alphabet.
pub fn letter_less(a: ColoredLetter, b: ColoredLetter) -> bool {
    a < b
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.color == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}:{}", self.value, self.color)
        }
    }
}

/// The window `σ(1) … σ(n)` of an element of `G_{l,n}`; it determines `σ` on
/// the whole colored alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    l: u32,
    letters: Vec<ColoredLetter>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatVector {
    pub fix: usize,
    pub des: usize,
    pub maj: usize,
    pub exc: usize,
    pub col: usize,
    pub maf: usize,
    pub fmaj: usize,
    pub fmaf: usize,
}

impl ColoredPermutation {
    pub fn new(l: u32, letters: Vec<ColoredLetter>) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidArgument("l must be at least 1".into()));
        }
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for (i, x) in letters.iter().enumerate() {
            if x.color >= l {
                return Err(Error::parse(
                    i + 1,
                    format!("color {} out of range for l = {l}", x.color),
                ));
            }
            if x.value == 0 || x.value > n {
                return Err(Error::parse(
                    i + 1,
                    format!("value {} outside 1..={n}", x.value),
                ));
            }
            if std::mem::replace(&mut seen[x.value], true) {
                return Err(Error::parse(i + 1, format!("value {} repeated", x.value)));
            }
        }
        Ok(ColoredPermutation { l, letters })
    }

    pub(crate) fn new_unchecked(l: u32, letters: Vec<ColoredLetter>) -> Self {
        debug_assert!(ColoredPermutation::new(l, letters.clone()).is_ok());
        ColoredPermutation { l, letters }
    }

    /// Uncolored permutation from its one-line notation.
    pub fn from_values(l: u32, values: &[usize]) -> Result<Self> {
        ColoredPermutation::new(l, values.iter().map(|&v| ColoredLetter::plain(v)).collect())
    }

    pub fn identity(l: u32, n: usize) -> Self {
        ColoredPermutation::new_unchecked(l, (1..=n).map(ColoredLetter::plain).collect())
    }

    /// Parses whitespace-separated tokens `v` or `v:c`.
    pub fn parse(l: u32, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (i, tok) in text.split_whitespace().enumerate() {
            let (v, c) = match tok.split_once(':') {
                Some((v, c)) => (v, c),
                None => (tok, "0"),
            };
            let value = v
                .parse::<usize>()
                .map_err(|_| Error::parse(i + 1, format!("bad value in token '{tok}'")))?;
            let color = c
                .parse::<u32>()
                .map_err(|_| Error::parse(i + 1, format!("bad color in token '{tok}'")))?;
            letters.push(ColoredLetter { color, value });
        }
        ColoredPermutation::new(l, letters)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[ColoredLetter] {
        &self.letters
    }

    /// `σ(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> ColoredLetter {
        self.letters[i - 1]
    }

    pub fn is_uncolored(&self) -> bool {
        self.letters.iter().all(|x| !x.is_colored())
    }

    /// Absolute values `|σ(1)| … |σ(n)|`.
    pub fn values(&self) -> Vec<usize> {
        self.letters.iter().map(|x| x.value).collect()
    }

    pub fn is_fixed_point(&self, i: usize) -> bool {
        self.letters[i - 1] == ColoredLetter::plain(i)
    }

    pub fn fix_set(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&i| self.is_fixed_point(i))
            .collect()
    }

    pub fn fix(&self) -> usize {
        self.fix_set().len()
    }

    pub fn is_derangement(&self) -> bool {
        (1..=self.len()).all(|i| !self.is_fixed_point(i))
    }

    pub fn descent_set(&self) -> Vec<usize> {
        self.letters
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn des(&self) -> usize {
        self.letters.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn maj(&self) -> usize {
        self.descent_set().iter().sum()
    }

    /// Positions with `σ(i) > i`; only uncolored letters can exceed.
    pub fn exc(&self) -> usize {
        self.letters
            .iter()
            .enumerate()
            .filter(|(i, x)| **x > ColoredLetter::plain(i + 1))
            .count()
    }

    pub fn col(&self) -> usize {
        self.letters.iter().map(|x| x.color as usize).sum()
    }

    /// Derangement part: drop fixed points, rerank the remaining absolute
    /// values onto `1..=m`, keep colors.
    pub fn der(&self) -> ColoredPermutation {
        let kept: Vec<ColoredLetter> = (1..=self.len())
            .filter(|&i| !self.is_fixed_point(i))
            .map(|i| self.at(i))
            .collect();
        let mut rank = vec![0usize; self.len() + 1];
        let mut sorted: Vec<usize> = kept.iter().map(|x| x.value).collect();
        sorted.sort_unstable();
        for (r, v) in sorted.into_iter().enumerate() {
            rank[v] = r + 1;
        }
        ColoredPermutation::new_unchecked(
            self.l,
            kept.into_iter()
                .map(|x| ColoredLetter::new(rank[x.value], x.color))
                .collect(),
        )
    }

    pub fn maf(&self) -> usize {
        let displacement: usize = self
            .fix_set()
            .iter()
            .enumerate()
            .map(|(j, &i)| i - (j + 1))
            .sum();
        self.der().maj() + displacement
    }

    pub fn fmaj(&self) -> usize {
        self.l as usize * self.maj() + self.col()
    }

    pub fn fmaf(&self) -> usize {
        self.l as usize * self.maf() + self.col()
    }

    pub fn stat_vector(&self) -> StatVector {
        let des_set = self.descent_set();
        let maj: usize = des_set.iter().sum();
        let col = self.col();
        let maf = self.maf();
        let l = self.l as usize;
        StatVector {
            fix: self.fix(),
            des: des_set.len(),
            maj,
            exc: self.exc(),
            col,
            maf,
            fmaj: l * maj + col,
            fmaf: l * maf + col,
        }
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Which subset of `G_{l,n}` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    All,
    Derangements,
    /// `G_{l,n}^m`: every fixed point lies in `{n-m+1, …, n}`.
    FixInSuffix(usize),
}

impl Class {
    pub fn contains(&self, sigma: &ColoredPermutation) -> bool {
        match *self {
            Class::All => true,
            Class::Derangements => sigma.is_derangement(),
            Class::FixInSuffix(m) => {
                let n = sigma.len();
                (1..=n.saturating_sub(m)).all(|i| !sigma.is_fixed_point(i))
            }
        }
    }
}

/// `l^n * n!`, or `None` on overflow.
pub fn cardinality(l: u32, n: usize) -> Option<u128> {
    let mut c: u128 = 1;
    for k in 1..=n as u128 {
        c = c.checked_mul(k)?.checked_mul(l as u128)?;
    }
    Some(c)
}

pub fn check_budget(l: u32, n: usize, budget: u64) -> Result<()> {
    match cardinality(l, n) {
        Some(c) if c <= budget as u128 => Ok(()),
        c => Err(Error::BudgetExceeded {
            cardinality: c.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

/// Streams the elements of `class` in lexicographic order on
/// (underlying permutation, color word).
pub fn enumerate(l: u32, n: usize, class: Class, budget: u64) -> Result<Enumeration> {
    if l == 0 {
        return Err(Error::InvalidArgument("l must be at least 1".into()));
    }
    check_budget(l, n, budget)?;
    Ok(Enumeration {
        l,
        perm: (1..=n).collect(),
        colors: vec![0; n],
        class,
        done: false,
    })
}

pub struct Enumeration {
    l: u32,
    perm: Vec<usize>,
    colors: Vec<u32>,
    class: Class,
    done: bool,
}

impl Enumeration {
    fn current(&self) -> ColoredPermutation {
        ColoredPermutation::new_unchecked(
            self.l,
            self.perm
                .iter()
                .zip(&self.colors)
                .map(|(&v, &c)| ColoredLetter::new(v, c))
                .collect(),
        )
    }

    fn advance(&mut self) {
        for c in self.colors.iter_mut().rev() {
            *c += 1;
            if *c < self.l {
                return;
            }
            *c = 0;
        }
        if !next_permutation(&mut self.perm) {
            self.done = true;
        }
    }
}

impl Iterator for Enumeration {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        while !self.done {
            let sigma = self.current();
            self.advance();
            if self.class.contains(&sigma) {
                return Some(sigma);
            }
        }
        None
    }
}

/// Rearranges into the next permutation in lexicographic order; returns false
/// (leaving the slice sorted descending) when none exists.
pub fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
