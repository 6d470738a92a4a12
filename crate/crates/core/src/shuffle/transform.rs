//! The transformation `F` on words with nonnegative letters.
//!
//! `F` is defined by recursion on the prefix of length `n - 1`. Writing
//! `w = w' a 0^r b` with `a` the last pillar before the final letter `b`:
//!
//! 1. `a <= b`: `F(w) = F(w' a 0^r) b`
//! 2. `a > b`, `r >= 1`: `F(w) = γ(F(w' a 0^r)) b`
//! 3. `a > b`, `r = 0`: `F(w) = δ(F(w' a)) b`
//!
//! and `F(w) = w` whenever `w` has no descent.

use std::fmt;

use serde::Serialize;

use super::{des, index_form, ZWord};
use crate::error::{Error, Result};

/// `γ`: prepend a zero and drop the final letter, which must be a zero.
pub fn gamma(w: &[usize]) -> Result<Vec<usize>> {
    match w.split_last() {
        Some((0, rest)) => {
            let mut out = Vec::with_capacity(w.len());
            out.push(0);
            out.extend_from_slice(rest);
            Ok(out)
        }
        _ => Err(Error::Invariant(format!(
            "gamma needs a word ending in 0, got {w:?}"
        ))),
    }
}

/// `δ`: every positive letter that directly follows a maximal run of zeros
/// moves to the front of that run.
pub fn delta(w: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(w.len());
    let mut run = 0;
    for &x in w {
        if x == 0 {
            run += 1;
        } else {
            out.push(x);
            out.extend(std::iter::repeat_n(0, run));
            run = 0;
        }
    }
    out.extend(std::iter::repeat_n(0, run));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FCase {
    NoDescent,
    /// `a <= b`
    Append,
    /// `a > b`, `r >= 1`: γ
    Gamma,
    /// `a > b`, `r = 0`: δ
    Delta,
}

impl fmt::Display for FCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FCase::NoDescent => "no descent",
            FCase::Append => "case (1)",
            FCase::Gamma => "case (2)",
            FCase::Delta => "case (3)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FStep {
    pub input: ZWord,
    pub case: FCase,
    pub output: ZWord,
}

impl fmt::Display for FStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &ZWord| w.to_compact().unwrap_or_else(|| w.to_string());
        write!(
            f,
            "F({}) = {}  {}",
            show(&self.input),
            show(&self.output),
            self.case
        )
    }
}

/// One recursion step: `F(prefix)` from `F(prefix[..len-1])`.
fn f_step(prefix: &[usize], f_prev: &[usize]) -> (Vec<usize>, FCase) {
    let n = prefix.len();
    if n <= 1 || des(prefix) == 0 {
        return (prefix.to_vec(), FCase::NoDescent);
    }
    let b = prefix[n - 1];
    // a descent exists, so some pillar precedes the final letter
    let a_pos = prefix[..n - 1]
        .iter()
        .rposition(|&x| x != 0)
        .expect("a word with a descent has a pillar before its last letter");
    let a = prefix[a_pos];
    let r = n - 2 - a_pos;
    let (mut out, case) = if a <= b {
        (f_prev.to_vec(), FCase::Append)
    } else if r >= 1 {
        (
            gamma(f_prev).expect("F of a word ending in 0 ends in 0"),
            FCase::Gamma,
        )
    } else {
        (delta(f_prev), FCase::Delta)
    };
    out.push(b);
    (out, case)
}

/// `F(w)` with one step for every prefix of length at least 2.
pub fn f_traced(w: &ZWord) -> (ZWord, Vec<FStep>) {
    let letters = w.letters();
    let mut cur: Vec<usize> = letters.iter().take(1).copied().collect();
    let mut steps = Vec::new();
    for k in 2..=letters.len() {
        let (next, case) = f_step(&letters[..k], &cur);
        steps.push(FStep {
            input: ZWord::new(letters[..k].to_vec()),
            case,
            output: ZWord::new(next.clone()),
        });
        cur = next;
    }
    (ZWord::new(cur), steps)
}

pub fn f_transform(w: &ZWord) -> ZWord {
    f_traced(w).0
}

/// The index sequence `I_μ` of `F(μ)` for `μ = w1 0^r w2`, as predicted
/// from `I_{w1}`, `a = Last(w1)`, `b = First(w2)`, `ν = pil(w1)` and
/// `t = des(w2)`.
///
/// Requires `w1`, `w2` nonempty, `Last(w1) > 0`, `w2` free of zeros and
/// `a != b`.
pub fn lemma_f_prediction(w1: &[usize], r: usize, w2: &[usize]) -> Result<Vec<usize>> {
    let (Some(&a), Some(&b)) = (w1.last(), w2.first()) else {
        return Err(Error::InvalidArgument("w1 and w2 must be nonempty".into()));
    };
    if a == 0 {
        return Err(Error::InvalidArgument("Last(w1) must be positive".into()));
    }
    if w2.contains(&0) {
        return Err(Error::InvalidArgument("w2 must contain no zeros".into()));
    }
    if a == b {
        return Err(Error::InvalidArgument(
            "Last(w1) = First(w2) is not covered".into(),
        ));
    }
    let t = des(w2);
    let nu = w1.iter().filter(|&&x| x != 0).count();
    let w1_zeros = w1.iter().filter(|&&x| x == 0).count();
    let shifted = |by: usize| -> Vec<usize> {
        index_form(&super::f_transform(&ZWord::new(w1.to_vec())))
            .indices
            .into_iter()
            .map(|i| i + by)
            .collect()
    };
    let mut out = Vec::new();
    if w1_zeros != 0 {
        if a > b {
            out.extend(std::iter::repeat_n(t, r));
            out.extend(shifted(t + 1));
        } else if r == 0 {
            out.extend(shifted(t));
        } else {
            out.extend(std::iter::repeat_n(t, r - 1));
            out.extend(shifted(t + 1));
            out.push(nu + t);
        }
    } else if r > 0 {
        if a > b {
            out.extend(std::iter::repeat_n(t, r));
        } else {
            out.extend(std::iter::repeat_n(t, r - 1));
            out.push(nu + t);
        }
    }
    Ok(out)
}

/// Compares [`lemma_f_prediction`] with the indices of `F(w1 0^r w2)`.
pub fn lemma_f_check(w1: &[usize], r: usize, w2: &[usize]) -> Result<bool> {
    let predicted = lemma_f_prediction(w1, r, w2)?;
    let mut mu = w1.to_vec();
    mu.extend(std::iter::repeat_n(0, r));
    mu.extend_from_slice(w2);
    let actual = index_form(&super::f_transform(&ZWord::new(mu))).indices;
    Ok(predicted == actual)
}
