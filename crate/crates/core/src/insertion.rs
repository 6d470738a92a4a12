//! Fixed-point insertion and the bijection `Psi`.
//!
//! For a colored permutation `σ = x_1 … x_n` (with `x_0 = x_{n+1} = +∞`) the
//! pair of positions `(i, i+1)` is the `j`-th slot when `x_i` is not a fixed
//! point and exactly `j` of the positions `1..=i` are not fixed points. So a
//! permutation whose derangement part has order `d` has slots `0..=d`.
//!
//! Inserting into slot `j` at `(i, i+1)` places a new uncolored fixed point
//! `i + 1` there and shifts every absolute value above `i` up by one.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::wreath::{ColoredLetter, ColoredPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotColor {
    Green,
    Red,
}

impl fmt::Display for SlotColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlotColor::Green => "green",
            SlotColor::Red => "red",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub index: usize,
    /// `i` of the position pair `(i, i+1)`.
    pub position: usize,
    pub color: SlotColor,
    /// Slot value `g_j`; only assigned when `σ` is a derangement.
    pub value: Option<usize>,
}

/// Number of slots of `σ`: one more than the order of its derangement part.
pub fn slot_count(sigma: &ColoredPermutation) -> usize {
    sigma.len() - sigma.fix() + 1
}

/// Position `i` of the `j`-th slot `(i, i+1)`.
pub fn slot_position(sigma: &ColoredPermutation, j: usize) -> Result<usize> {
    if j == 0 {
        return Ok(0);
    }
    (1..=sigma.len())
        .filter(|&i| !sigma.is_fixed_point(i))
        .nth(j - 1)
        .ok_or(Error::InvalidSlot {
            index: j,
            max: slot_count(sigma) - 1,
        })
}

/// `⟨σ, j⟩`.
pub fn insert(sigma: &ColoredPermutation, j: usize) -> Result<ColoredPermutation> {
    let i = slot_position(sigma, j)?;
    Ok(insert_at_position(sigma, i))
}

fn insert_at_position(sigma: &ColoredPermutation, i: usize) -> ColoredPermutation {
    let shift = |x: &ColoredLetter| {
        if x.value > i {
            ColoredLetter::new(x.value + 1, x.color)
        } else {
            *x
        }
    };
    let letters = sigma.letters();
    let mut out: Vec<ColoredLetter> = Vec::with_capacity(letters.len() + 1);
    out.extend(letters[..i].iter().map(shift));
    out.push(ColoredLetter::plain(i + 1));
    out.extend(letters[i..].iter().map(shift));
    ColoredPermutation::new_unchecked(sigma.l(), out)
}

/// A colored derangement together with a nondecreasing slot sequence,
/// encoding `⟨σ, i_1, …, i_m⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InsertionSeq {
    base: ColoredPermutation,
    seq: Vec<usize>,
}

impl InsertionSeq {
    pub fn new(base: ColoredPermutation, seq: Vec<usize>) -> Result<Self> {
        if !base.is_derangement() {
            return Err(Error::NotDerangement(base.to_string()));
        }
        check_sequence(&seq, base.len())?;
        Ok(InsertionSeq { base, seq })
    }

    pub fn base(&self) -> &ColoredPermutation {
        &self.base
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn to_permutation(&self) -> ColoredPermutation {
        insert_seq(&self.base, &self.seq).expect("validated on construction")
    }
}

impl fmt::Display for InsertionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.base)?;
        for i in &self.seq {
            write!(f, ", {i}")?;
        }
        f.write_str(">")
    }
}

fn check_sequence(seq: &[usize], d: usize) -> Result<()> {
    if let Some(&bad) = seq.iter().find(|&&i| i > d) {
        return Err(Error::InvalidSlot { index: bad, max: d });
    }
    if seq.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invariant(format!(
            "insertion sequence {seq:?} is not nondecreasing"
        )));
    }
    Ok(())
}

/// `⟨σ, i_1, …, i_m⟩ = ⟨⟨σ, i_1, …, i_{m-1}⟩, i_m⟩`.
pub fn insert_seq(sigma: &ColoredPermutation, seq: &[usize]) -> Result<ColoredPermutation> {
    seq.iter()
        .try_fold(sigma.clone(), |tau, &j| insert(&tau, j))
}

/// The unique `(Der τ; i_1 ≤ … ≤ i_m)` with `τ = ⟨Der τ, i_1, …, i_m⟩`.
///
/// The `k`-th fixed point of `τ` sits at position `i_k + k`.
pub fn decompose(tau: &ColoredPermutation) -> InsertionSeq {
    let seq = tau
        .fix_set()
        .into_iter()
        .enumerate()
        .map(|(k, f)| f - (k + 1))
        .collect();
    InsertionSeq {
        base: tau.der(),
        seq,
    }
}

/// Colours every slot by comparing `des` before and after insertion.
pub fn slot_colors(sigma: &ColoredPermutation) -> Vec<(usize, SlotColor)> {
    let des = sigma.des();
    (0..slot_count(sigma))
        .map(|j| {
            let after = insert(sigma, j).expect("slot index in range").des();
            let color = match after.checked_sub(des) {
                Some(0) => SlotColor::Green,
                Some(1) => SlotColor::Red,
                _ => panic!("inserting into slot {j} of {sigma} changed des from {des} to {after}"),
            };
            (j, color)
        })
        .collect()
}

/// Slot values `(g_0, …, g_n)` of a derangement: green slots numbered
/// `0, 1, …` from right to left, then red slots continuing from left to right.
pub fn slot_values(sigma: &ColoredPermutation) -> Result<Vec<usize>> {
    if !sigma.is_derangement() {
        return Err(Error::NotDerangement(sigma.to_string()));
    }
    Ok(values_from_colors(&slot_colors(sigma)))
}

fn values_from_colors(colors: &[(usize, SlotColor)]) -> Vec<usize> {
    let mut values = vec![0; colors.len()];
    let mut next = 0;
    for &(j, c) in colors.iter().rev() {
        if c == SlotColor::Green {
            values[j] = next;
            next += 1;
        }
    }
    for &(j, c) in colors {
        if c == SlotColor::Red {
            values[j] = next;
            next += 1;
        }
    }
    values
}

/// Every slot with position, colour and (for derangements) value.
pub fn slots(sigma: &ColoredPermutation) -> Vec<Slot> {
    let colors = slot_colors(sigma);
    let values = sigma.is_derangement().then(|| values_from_colors(&colors));
    colors
        .into_iter()
        .map(|(j, color)| Slot {
            index: j,
            position: slot_position(sigma, j).expect("slot index in range"),
            color,
            value: values.as_ref().map(|v| v[j]),
        })
        .collect()
}

/// Which rule of the recursive definition of `Psi` produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiRule {
    /// `m = 1`: `Ψ⟨σ,i⟩ = ⟨σ,g_i⟩`.
    Single,
    /// last slot green: `⟨σ, g_{i_m}, j_2, …, j_m⟩` where `j_2 … j_m` is the image of the prefix.
    Green,
    /// last slot red and the whole sequence constant.
    RedConstant,
    /// last slot red with a shorter prefix `i_1 … i_{m-k}`.
    RedSplit,
}

impl fmt::Display for PsiRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsiRule::Single => "single",
            PsiRule::Green => "green",
            PsiRule::RedConstant => "red, k=m",
            PsiRule::RedSplit => "red, k<m",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiStep {
    pub input: Vec<usize>,
    pub last_slot: usize,
    pub color: SlotColor,
    pub rule: PsiRule,
    pub output: Vec<usize>,
}

/// `Ψ` on insertion sequences over a fixed derangement whose slot colours and
/// values are given. Steps are pushed innermost (shortest prefix) first.
fn psi_sequence(
    colors: &[(usize, SlotColor)],
    values: &[usize],
    seq: &[usize],
    trace: &mut Vec<PsiStep>,
) -> Result<Vec<usize>> {
    let m = seq.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let i = seq[m - 1];
    let g = values[i];
    let color = colors[i].1;
    let (rule, output) = if m == 1 {
        (PsiRule::Single, vec![g])
    } else if color == SlotColor::Green {
        let rest = psi_sequence(colors, values, &seq[..m - 1], trace)?;
        let mut out = Vec::with_capacity(m);
        out.push(g);
        out.extend_from_slice(&rest);
        (PsiRule::Green, out)
    } else {
        let k = seq.iter().rev().take_while(|&&s| s == i).count();
        let low = g.checked_sub(i).ok_or_else(|| {
            Error::Invariant(format!("red slot {i} has value {g} below its index"))
        })?;
        let mut out = vec![low; k - 1];
        let rule = if k == m {
            PsiRule::RedConstant
        } else {
            let rest = psi_sequence(colors, values, &seq[..m - k], trace)?;
            out.extend(rest.into_iter().map(|j| j + 1));
            PsiRule::RedSplit
        };
        out.push(g);
        (rule, out)
    };
    check_sequence(&output, values.len() - 1)
        .map_err(|e| Error::Invariant(format!("Psi produced {output:?} from {seq:?}: {e}")))?;
    trace.push(PsiStep {
        input: seq.to_vec(),
        last_slot: i,
        color,
        rule,
        output: output.clone(),
    });
    Ok(output)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiTrace {
    pub derangement: String,
    pub input_seq: Vec<usize>,
    pub slots: Vec<Slot>,
    pub steps: Vec<PsiStep>,
    pub output_seq: Vec<usize>,
}

/// `Ψ(τ)` together with the decomposition, slot data and recursion steps.
pub fn psi_traced(tau: &ColoredPermutation) -> Result<(ColoredPermutation, PsiTrace)> {
    let dec = decompose(tau);
    let colors = slot_colors(dec.base());
    let values = values_from_colors(&colors);
    let mut steps = Vec::new();
    let out = psi_sequence(&colors, &values, dec.seq(), &mut steps)?;
    let image = insert_seq(dec.base(), &out)?;
    let trace = PsiTrace {
        derangement: dec.base().to_string(),
        input_seq: dec.seq().to_vec(),
        slots: slots(dec.base()),
        steps,
        output_seq: out,
    };
    Ok((image, trace))
}

/// The bijection `Ψ`; it preserves the derangement part and sends `maj` to `maf`.
pub fn psi(tau: &ColoredPermutation) -> Result<ColoredPermutation> {
    let dec = decompose(tau);
    if dec.seq().is_empty() {
        return Ok(tau.clone());
    }
    let colors = slot_colors(dec.base());
    let values = values_from_colors(&colors);
    let out = psi_sequence(&colors, &values, dec.seq(), &mut Vec::new())?;
    insert_seq(dec.base(), &out)
}

/// All nondecreasing sequences of length `m` over `0..=d`, lexicographically.
pub fn nondecreasing_sequences(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(m: usize, d: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in lo..=d {
            cur.push(v);
            rec(m, d, v, cur, out);
            cur.pop();
        }
    }
    rec(m, d, 0, &mut cur, &mut out);
    out
}

/// `Ψ^{-1}` by exhaustive search in the class of `τ` (same derangement part,
/// same number of fixed points).
pub fn psi_inverse(tau: &ColoredPermutation) -> Result<ColoredPermutation> {
    let dec = decompose(tau);
    let target = dec.seq().to_vec();
    let colors = slot_colors(dec.base());
    let values = values_from_colors(&colors);
    for cand in nondecreasing_sequences(target.len(), dec.base().len()) {
        if psi_sequence(&colors, &values, &cand, &mut Vec::new())? == target {
            return insert_seq(dec.base(), &cand);
        }
    }
    Err(Error::Invariant(format!("{tau} has no preimage under Psi")))
}

/// Case labels of the green/red characterisation for uncolored derangements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotCase {
    G1,
    G2,
    G3,
    R1,
    R2,
    R3,
}

impl SlotCase {
    pub fn color(&self) -> SlotColor {
        match self {
            SlotCase::G1 | SlotCase::G2 | SlotCase::G3 => SlotColor::Green,
            _ => SlotColor::Red,
        }
    }
}

/// Classifies slot `(i, i+1)` of an uncolored derangement `x_1 … x_n` by the
/// comparisons of `x_i`, `x_{i+1}` and `i`, with `x_0 = x_{n+1} = +∞`.
/// Returns `None` when no case applies (only for the empty permutation).
pub fn slot_case(values: &[usize], i: usize) -> Option<SlotCase> {
    let inf = usize::MAX;
    let n = values.len();
    let at = |p: usize| if p == 0 || p > n { inf } else { values[p - 1] };
    let (a, b) = (at(i), at(i + 1));
    if a > b && b > i {
        Some(SlotCase::G1)
    } else if a < i && i < b {
        Some(SlotCase::G2)
    } else if i > a && a > b {
        Some(SlotCase::G3)
    } else if i < a && a < b {
        Some(SlotCase::R1)
    } else if a > i && i >= b {
        Some(SlotCase::R2)
    } else if a < b && b <= i {
        Some(SlotCase::R3)
    } else {
        None
    }
}

/// Descents of `⟨σ, i⟩` strictly to the right of position `i`.
pub fn descents_right_of_insertion(sigma: &ColoredPermutation, j: usize) -> Result<usize> {
    let i = slot_position(sigma, j)?;
    let tau = insert(sigma, j)?;
    Ok(tau.descent_set().into_iter().filter(|&p| p > i).count())
}
