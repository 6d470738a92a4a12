//! Words with zeros and the transformations `Phi` and `F` on them.
//!
//! A word in the shuffle class `Sh(0^{n-m} v)` interleaves `n - m` zeros with
//! a pillar word `v` of length `m`. `ZDer` encodes a permutation of `[n]` as
//! such a word: fixed points become zeros and the other letters are reranked
//! into a derangement of `[m]`.
//!
//! Everything here works on uncolored permutations only.

mod phi;
mod transform;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::insertion::nondecreasing_sequences;
use crate::wreath::ColoredPermutation;

pub use phi::{phi, phi_inv, phi_inv_traced, phi_l, psi_l, ZeroCase, ZeroStep};
pub use transform::{
    delta, f_traced, f_transform, gamma, lemma_f_check, lemma_f_prediction, FCase, FStep,
};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZWord(Vec<usize>);

/// Classification of a letter of a word against the rank of its position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterKind {
    Zero,
    /// pillar `x_k > rank(k)`
    Excedent,
    /// pillar `x_k < rank(k)`
    Subexcedent,
    /// pillar `x_k = rank(k)`; impossible when the pillar word is a derangement
    AtRank,
}

impl LetterKind {
    pub fn is_subexcedent(self) -> bool {
        self == LetterKind::Subexcedent
    }
}

impl ZWord {
    pub fn new(letters: Vec<usize>) -> Self {
        ZWord(letters)
    }

    /// Whitespace-separated letters, or a compact digit string such as
    /// `02001430` when the text contains no whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.split_whitespace().count() > 1 {
            text.split_whitespace()
                .enumerate()
                .map(|(i, tok)| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::parse(i + 1, format!("bad letter '{tok}'")))
                })
                .collect::<Result<Vec<_>>>()
                .map(ZWord)
        } else {
            text.chars()
                .enumerate()
                .map(|(i, c)| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse(i + 1, format!("bad digit '{c}'")))
                })
                .collect::<Result<Vec<_>>>()
                .map(ZWord)
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Pos(w)`: the subword of nonzero letters.
    pub fn pillars(&self) -> Vec<usize> {
        self.0.iter().copied().filter(|&x| x != 0).collect()
    }

    /// `Zero(w)`, 1-based.
    pub fn zero_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.0[i - 1] == 0).collect()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&x| x == 0).count()
    }

    pub fn pil(&self) -> usize {
        self.len() - self.zeros()
    }

    pub fn des(&self) -> usize {
        des(&self.0)
    }

    /// `rank(k)` for every position `k` (1-based index into the result);
    /// zero for positions holding a zero.
    pub fn ranks(&self) -> Vec<usize> {
        ranks(&self.0)
    }

    pub fn classify(&self, k: usize) -> LetterKind {
        let x = self.0[k - 1];
        if x == 0 {
            return LetterKind::Zero;
        }
        let rank = self.ranks()[k];
        match x.cmp(&rank) {
            std::cmp::Ordering::Greater => LetterKind::Excedent,
            std::cmp::Ordering::Less => LetterKind::Subexcedent,
            std::cmp::Ordering::Equal => LetterKind::AtRank,
        }
    }

    /// True when the pillar word is a derangement of `[m]`.
    pub fn has_derangement_pillars(&self) -> bool {
        is_derangement_word(&self.pillars())
    }

    /// Digit-string form, available when every letter is below 10.
    pub fn to_compact(&self) -> Option<String> {
        self.0
            .iter()
            .map(|&x| char::from_digit(x as u32, 10))
            .collect()
    }
}

impl fmt::Display for ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl From<Vec<usize>> for ZWord {
    fn from(v: Vec<usize>) -> Self {
        ZWord(v)
    }
}

impl Serialize for ZWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.letters())
    }
}

/// Every word of `Sh(0^zeros v)`, ordered lexicographically by index sequence.
pub fn shuffle_class(v: &[usize], zeros: usize) -> Vec<ZWord> {
    nondecreasing_sequences(zeros, v.len())
        .into_iter()
        .map(|indices| {
            IndexForm {
                base: v.to_vec(),
                indices,
            }
            .to_word()
        })
        .collect()
}

pub(crate) fn des(w: &[usize]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

pub(crate) fn ranks(w: &[usize]) -> Vec<usize> {
    let mut out = vec![0; w.len() + 1];
    let mut r = 0;
    for (i, &x) in w.iter().enumerate() {
        if x != 0 {
            r += 1;
            out[i + 1] = r;
        }
    }
    out
}

pub fn is_derangement_word(v: &[usize]) -> bool {
    let m = v.len();
    let mut seen = vec![false; m + 1];
    v.iter()
        .enumerate()
        .all(|(i, &x)| x >= 1 && x <= m && x != i + 1 && !std::mem::replace(&mut seen[x], true))
}

fn require_uncolored(tau: &ColoredPermutation) -> Result<()> {
    if tau.l() != 1 {
        return Err(Error::InvalidArgument(format!(
            "only uncolored permutations (l = 1) are supported, got l = {}",
            tau.l()
        )));
    }
    Ok(())
}

/// `ZDer(τ)`: fixed points become 0, the other letters are replaced by their
/// rank among the non-fixed values.
pub fn zder(tau: &ColoredPermutation) -> Result<ZWord> {
    require_uncolored(tau)?;
    let der = tau.der();
    let mut pillars = der.letters().iter();
    Ok(ZWord(
        (1..=tau.len())
            .map(|i| {
                if tau.is_fixed_point(i) {
                    0
                } else {
                    pillars
                        .next()
                        .expect("one pillar per non-fixed point")
                        .value
                }
            })
            .collect(),
    ))
}

/// Inverse of [`zder`]; the pillar word must be a derangement.
pub fn zder_inv(w: &ZWord) -> Result<ColoredPermutation> {
    let v = w.pillars();
    if !is_derangement_word(&v) {
        return Err(Error::NotDerangement(format!("pillar word of {w}")));
    }
    let pillar_positions: Vec<usize> = (1..=w.len()).filter(|&i| w.0[i - 1] != 0).collect();
    let values: Vec<usize> = (1..=w.len())
        .map(|i| match w.0[i - 1] {
            0 => i,
            x => pillar_positions[x - 1],
        })
        .collect();
    ColoredPermutation::from_values(1, &values)
}

/// `[σ, i_1, …, i_m]`: pillar word plus, for each zero from left to right,
/// the number of pillars to its left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexForm {
    pub base: Vec<usize>,
    pub indices: Vec<usize>,
}

impl IndexForm {
    pub fn to_word(&self) -> ZWord {
        let mut out = Vec::with_capacity(self.base.len() + self.indices.len());
        let mut zeros = self.indices.iter().peekable();
        for p in 0..=self.base.len() {
            while zeros.next_if(|&&i| i == p).is_some() {
                out.push(0);
            }
            if p < self.base.len() {
                out.push(self.base[p]);
            }
        }
        ZWord(out)
    }

    /// `(i_m, r)`: the last index and how many trailing indices equal it.
    pub fn last_block(&self) -> Option<(usize, usize)> {
        let &last = self.indices.last()?;
        let r = self
            .indices
            .iter()
            .rev()
            .take_while(|&&i| i == last)
            .count();
        Some((last, r))
    }
}

pub fn index_form(w: &ZWord) -> IndexForm {
    let mut pillars = 0;
    let mut indices = Vec::new();
    for &x in &w.0 {
        if x == 0 {
            indices.push(pillars);
        } else {
            pillars += 1;
        }
    }
    IndexForm {
        base: w.pillars(),
        indices,
    }
}

/// `I_w`: the index sequence of `F(w)`.
pub fn f_indices(w: &ZWord) -> Vec<usize> {
    index_form(&f_transform(w)).indices
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub zder: String,
    pub phi_inv: String,
    pub f: String,
    pub result: String,
}

/// `ZDer^{-1} ∘ F ∘ Φ^{-1} ∘ ZDer`.
pub fn psi_via_factorization(tau: &ColoredPermutation) -> Result<ColoredPermutation> {
    factorize(tau).map(|(p, _)| p)
}

pub fn factorize(tau: &ColoredPermutation) -> Result<(ColoredPermutation, Factorization)> {
    let w = zder(tau)?;
    let u = phi_inv(&w)?;
    let v = f_transform(&u);
    let out = zder_inv(&v)?;
    let record = Factorization {
        zder: w.to_string(),
        phi_inv: u.to_string(),
        f: v.to_string(),
        result: out.to_string(),
    };
    Ok((out, record))
}
