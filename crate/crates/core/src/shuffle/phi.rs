//! The maps `φ_l`, `ψ_l` and their products `Φ = φ_1 ⋯ φ_n`, `Φ^{-1} = ψ_n ⋯ ψ_1`.
//!
//! Each map moves only the `l`-th zero (counted from the left) across a
//! maximal monotone run of subexcedent pillars next to it, using the
//! convention `x_0 = x_{n+1} = +∞`.

use std::fmt;

use serde::Serialize;

use super::{ranks, ZWord};
use crate::error::{Error, Result};

/// Which of the three cases applied, and where the zero ended up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroCase {
    /// both neighbours non-subexcedent; word unchanged
    One,
    /// zero moved to position `k`
    Two {
        k: usize,
    },
    Three {
        k: usize,
    },
}

impl ZeroCase {
    pub fn number(&self) -> u8 {
        match self {
            ZeroCase::One => 1,
            ZeroCase::Two { .. } => 2,
            ZeroCase::Three { .. } => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Neighbour {
    Infinite,
    Zero,
    Pillar { value: usize, sub: bool },
}

impl Neighbour {
    fn sub(self) -> Option<usize> {
        match self {
            Neighbour::Pillar { value, sub: true } => Some(value),
            _ => None,
        }
    }
}

struct View<'a> {
    w: &'a [usize],
    rank: Vec<usize>,
}

impl<'a> View<'a> {
    fn new(w: &'a [usize]) -> Self {
        View { w, rank: ranks(w) }
    }

    fn n(&self) -> usize {
        self.w.len()
    }

    fn x(&self, p: usize) -> usize {
        self.w[p - 1]
    }

    fn at(&self, p: usize) -> Neighbour {
        if p == 0 || p > self.n() {
            return Neighbour::Infinite;
        }
        match self.x(p) {
            0 => Neighbour::Zero,
            v => Neighbour::Pillar {
                value: v,
                sub: v < self.rank[p],
            },
        }
    }

    fn is_sub(&self, p: usize) -> bool {
        self.at(p).sub().is_some()
    }

    fn is_pillar(&self, p: usize) -> bool {
        p >= 1 && p <= self.n() && self.x(p) != 0
    }

    /// Position of the `l`-th zero, if there are that many.
    fn zero(&self, l: usize) -> Option<usize> {
        (1..=self.n())
            .filter(|&p| self.x(p) == 0)
            .nth(l.checked_sub(1)?)
    }
}

fn move_zero(w: &[usize], from: usize, to: usize) -> ZWord {
    let mut out = w.to_vec();
    out.remove(from - 1);
    out.insert(to - 1, 0);
    ZWord::new(out)
}

/// `φ_l(w)`; identity when `w` has fewer than `l` zeros.
pub fn phi_l(w: &ZWord, l: usize) -> (ZWord, ZeroCase) {
    let v = View::new(w.letters());
    let Some(j) = v.zero(l) else {
        return (w.clone(), ZeroCase::One);
    };
    let (left, right) = (v.at(j - 1), v.at(j + 1));
    let case2 = match (left.sub(), right.sub()) {
        (None, Some(_)) => Some(true),
        (Some(a), Some(b)) => Some(a > b),
        (Some(_), None) => Some(false),
        (None, None) => None,
    };
    match case2 {
        None => (w.clone(), ZeroCase::One),
        Some(true) => {
            // greatest k with x_{j+1} < ⋯ < x_k < rank(k)
            let mut k = j + 1;
            while v.is_pillar(k + 1) && v.x(k + 1) > v.x(k) && v.is_sub(k + 1) {
                k += 1;
            }
            (move_zero(w.letters(), j, k), ZeroCase::Two { k })
        }
        Some(false) => {
            // smallest i with rank(i) > x_i > ⋯ > x_{j-1}
            let mut i = j - 1;
            while v.is_pillar(i - 1) && v.x(i - 1) > v.x(i) && v.is_sub(i - 1) {
                i -= 1;
            }
            (move_zero(w.letters(), j, i), ZeroCase::Three { k: i })
        }
    }
}

/// `ψ_l(w)`, the inverse of `φ_l`.
pub fn psi_l(w: &ZWord, l: usize) -> (ZWord, ZeroCase) {
    let v = View::new(w.letters());
    let Some(j) = v.zero(l) else {
        return (w.clone(), ZeroCase::One);
    };
    let (left, right) = (v.at(j - 1), v.at(j + 1));
    let case2 = match (left.sub(), right.sub()) {
        (Some(_), None) => Some(true),
        (Some(a), Some(b)) => Some(a > b),
        (None, Some(_)) => Some(false),
        (None, None) => None,
    };
    match case2 {
        None => (w.clone(), ZeroCase::One),
        Some(true) => {
            // smallest k with x_k < ⋯ < x_{j-1} < rank(j-1)
            let mut k = j - 1;
            while v.is_pillar(k - 1) && v.x(k - 1) < v.x(k) {
                k -= 1;
            }
            (move_zero(w.letters(), j, k), ZeroCase::Two { k })
        }
        Some(false) => {
            // greatest k with rank(j+1) > x_{j+1} > ⋯ > x_k
            let mut k = j + 1;
            while v.is_pillar(k + 1) && v.x(k + 1) < v.x(k) {
                k += 1;
            }
            (move_zero(w.letters(), j, k), ZeroCase::Three { k })
        }
    }
}

fn require_derangement_pillars(w: &ZWord) -> Result<()> {
    if w.has_derangement_pillars() {
        Ok(())
    } else {
        Err(Error::NotDerangement(format!("pillar word of {w}")))
    }
}

/// `Φ(w)`: `φ_n` is applied first and `φ_1` last.
pub fn phi(w: &ZWord) -> Result<ZWord> {
    require_derangement_pillars(w)?;
    Ok((1..=w.zeros())
        .rev()
        .fold(w.clone(), |acc, l| phi_l(&acc, l).0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroStep {
    pub l: usize,
    pub case: ZeroCase,
    pub word: ZWord,
}

impl fmt::Display for ZeroStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self
            .word
            .to_compact()
            .unwrap_or_else(|| self.word.to_string());
        write!(f, "psi_{}: {word}  case ({}')", self.l, self.case.number())?;
        match self.case {
            ZeroCase::One => Ok(()),
            ZeroCase::Two { k } | ZeroCase::Three { k } => write!(f, " with k={k}"),
        }
    }
}

/// `Φ^{-1}(w)`: `ψ_1` is applied first and `ψ_n` last.
pub fn phi_inv(w: &ZWord) -> Result<ZWord> {
    phi_inv_traced(w).map(|(out, _)| out)
}

/// `Φ^{-1}(w)` with one step per zero (the remaining `ψ_l` are identities).
pub fn phi_inv_traced(w: &ZWord) -> Result<(ZWord, Vec<ZeroStep>)> {
    require_derangement_pillars(w)?;
    let mut cur = w.clone();
    let mut steps = Vec::new();
    for l in 1..=w.zeros() {
        let (next, case) = psi_l(&cur, l);
        steps.push(ZeroStep {
            l,
            case,
            word: next.clone(),
        });
        cur = next;
    }
    Ok((cur, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::shuffle_class;
    use crate::wreath::{enumerate, Class, DEFAULT_BUDGET};

    fn word(s: &str) -> ZWord {
        ZWord::parse(s).unwrap()
    }

    #[test]
    fn psi_steps_of_worked_example() {
        let w = word("02001430");
        assert_eq!(psi_l(&w, 1), (w.clone(), ZeroCase::One));
        assert_eq!(psi_l(&w, 2), (w.clone(), ZeroCase::One));
        assert_eq!(psi_l(&w, 3), (word("02010430"), ZeroCase::Three { k: 5 }));
        assert_eq!(
            psi_l(&word("02010430"), 4),
            (word("02010403"), ZeroCase::Two { k: 7 })
        );
        let (out, steps) = phi_inv_traced(&w).unwrap();
        assert_eq!(out, word("02010403"));
        assert_eq!(steps.len(), 4);
        assert_eq!(phi(&out).unwrap(), w);
        let plain = word("2143");
        assert_eq!(phi_inv(&plain).unwrap(), plain);
        assert!(phi_inv(&word("0120")).is_err());
    }

    fn shuffle_classes(max_n: usize) -> Vec<Vec<ZWord>> {
        let mut classes = Vec::new();
        for n in 0..=max_n {
            for m in 0..=n {
                for v in enumerate(1, m, Class::Derangements, DEFAULT_BUDGET).unwrap() {
                    classes.push(shuffle_class(&v.values(), n - m));
                }
            }
        }
        classes
    }

    #[test]
    fn phi_l_and_psi_l_are_inverse() {
        for class in shuffle_classes(6) {
            for w in &class {
                for l in 1..=w.len() {
                    let (p, _) = phi_l(w, l);
                    assert_eq!(psi_l(&p, l).0, *w, "l={l} w={w}");
                    let (s, _) = psi_l(w, l);
                    assert_eq!(phi_l(&s, l).0, *w, "l={l} w={w}");
                    // other zeros stay where they were
                    let zeros = |u: &ZWord| {
                        let mut z = u.zero_positions();
                        z.remove(l - 1);
                        z
                    };
                    if l <= w.zeros() {
                        assert_eq!(zeros(&p), zeros(w), "l={l} w={w}");
                    }
                }
            }
        }
    }
}
