//! The verification harness behind `qeuler verify`.
//!
//! Each target expands into instances (one per `(l, n)` or `(l, n, m)`), and
//! each instance is checked exhaustively. A failing instance carries its
//! first counterexample in a form the parsers accept.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::insertion::{insert, psi, slot_count, slot_values};
use crate::qpoly::rising_flag_product;
use crate::shuffle::{lemma_f_check, psi_via_factorization, ZWord};
use crate::table::{
    derangement_poly, derangement_recurrence_check, distribution, euler_table, fix_sum, g_diag,
    g_explicit, joint_distribution, non_equidistribution_witness, Mahonian,
};
use crate::wreath::{cardinality, enumerate, Class};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Thm1,
    Thm2,
    Thm3,
    Haglund,
    LemmaClark,
    #[value(name = "lemma-F", alias = "lemma-f")]
    #[serde(rename = "lemma-F")]
    LemmaF,
    RecurrenceD,
    FixSum,
    Witness,
    All,
}

impl Target {
    pub const EACH: [Target; 9] = [
        Target::Thm1,
        Target::Thm2,
        Target::Thm3,
        Target::Haglund,
        Target::LemmaClark,
        Target::LemmaF,
        Target::RecurrenceD,
        Target::FixSum,
        Target::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Thm1 => "thm1",
            Target::Thm2 => "thm2",
            Target::Thm3 => "thm3",
            Target::Haglund => "haglund",
            Target::LemmaClark => "lemma-clark",
            Target::LemmaF => "lemma-F",
            Target::RecurrenceD => "recurrence-d",
            Target::FixSum => "fix-sum",
            Target::Witness => "witness",
            Target::All => "all",
        }
    }

    /// Default `(l, n)` ranges. For `lemma-F`, `n` is the word length; for
    /// `witness` it bounds the search.
    fn defaults(self) -> (Span, Span) {
        match self {
            Target::Thm3 => (Span::new(1, 1), Span::new(0, 7)),
            Target::LemmaF => (Span::new(1, 1), Span::new(0, 8)),
            Target::Witness => (Span::new(1, 3), Span::new(2, 5)),
            _ => (Span::new(1, 3), Span::new(0, 5)),
        }
    }
}

/// Inclusive range written `A` or `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn new(lo: usize, hi: usize) -> Self {
        Span { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected a number or a range A..B, got '{s}'"))
        };
        let span = match s.split_once("..") {
            Some((a, b)) => Span::new(num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(s)?;
                Span::new(v, v)
            }
        };
        if span.lo > span.hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub l: Option<Span>,
    pub n: Option<Span>,
    pub m: Option<Span>,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub target: &'static str,
    pub instance: String,
    pub passed: bool,
    /// number of objects (permutations, words, slots, polynomials) compared
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} ({} checked)",
            if self.passed { "PASS" } else { "FAIL" },
            self.target,
            self.instance,
            self.checked
        )?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

struct Ctx<'a> {
    target: Target,
    opts: &'a VerifyOptions,
    out: Vec<Check>,
}

impl Ctx<'_> {
    fn ls(&self) -> Result<Vec<u32>> {
        let span = self.opts.l.unwrap_or(self.target.defaults().0);
        if span.lo == 0 {
            return Err(Error::InvalidArgument("l must be at least 1".into()));
        }
        Ok(span.iter().map(|l| l as u32).collect())
    }

    fn ns(&self) -> Span {
        self.opts.n.unwrap_or(self.target.defaults().1)
    }

    fn push(&mut self, instance: String, checked: u64, failure: Option<String>) {
        self.out.push(Check {
            target: self.target.name(),
            instance,
            passed: failure.is_none(),
            checked,
            detail: failure,
        });
    }

    fn size(&self, l: u32, n: usize) -> u64 {
        cardinality(l, n).map_or(u64::MAX, |c| c as u64)
    }
}

/// Runs one target (or every target for [`Target::All`]).
pub fn verify(target: Target, opts: &VerifyOptions) -> Result<Vec<Check>> {
    if target == Target::All {
        let mut all = Vec::new();
        for t in Target::EACH {
            // ranges given on the command line only make sense per target
            let per = VerifyOptions {
                l: if t == Target::Thm3 || t == Target::LemmaF {
                    None
                } else {
                    opts.l
                },
                ..opts.clone()
            };
            all.extend(verify(t, &per)?);
        }
        return Ok(all);
    }
    let mut ctx = Ctx {
        target,
        opts,
        out: Vec::new(),
    };
    match target {
        Target::Thm1 => thm1(&mut ctx)?,
        Target::Thm2 => thm2(&mut ctx)?,
        Target::Thm3 => thm3(&mut ctx)?,
        Target::Haglund => haglund(&mut ctx)?,
        Target::LemmaClark => lemma_clark(&mut ctx)?,
        Target::LemmaF => lemma_f(&mut ctx)?,
        Target::RecurrenceD => recurrence_d(&mut ctx)?,
        Target::FixSum => fix_sum_target(&mut ctx)?,
        Target::Witness => witness(&mut ctx)?,
        Target::All => unreachable!(),
    }
    Ok(ctx.out)
}

fn first_difference<K: Ord + fmt::Debug + Clone>(
    a: &BTreeMap<K, u64>,
    b: &BTreeMap<K, u64>,
) -> Option<String> {
    a.keys()
        .chain(b.keys())
        .find(|k| a.get(*k) != b.get(*k))
        .map(|k| {
            format!(
                "(stat, exc, fix) = {k:?}: fmaf count {}, fmaj count {}",
                a.get(k).copied().unwrap_or(0),
                b.get(k).copied().unwrap_or(0)
            )
        })
}

fn thm1(ctx: &mut Ctx) -> Result<()> {
    let budget = ctx.opts.budget;
    for l in ctx.ls()? {
        for n in ctx.ns().iter() {
            let a = joint_distribution(l, n, Class::All, Mahonian::Fmaf, budget)?;
            let b = joint_distribution(l, n, Class::All, Mahonian::Fmaj, budget)?;
            let mut failure = first_difference(&a, &b);
            if failure.is_none() {
                let marginal = distribution(l, n, Class::All, Mahonian::Fmaf, budget)?;
                let expected = g_diag(l, n);
                if marginal != expected {
                    failure = Some(format!(
                        "(fmaf, fix) distribution {marginal} differs from g_diag = {expected}"
                    ));
                }
            }
            ctx.push(format!("l={l} n={n}"), ctx.size(l, n), failure);
        }
    }
    Ok(())
}

fn thm2(ctx: &mut Ctx) -> Result<()> {
    let budget = ctx.opts.budget;
    let ns = ctx.ns();
    for l in ctx.ls()? {
        let table = euler_table(l, ns.hi, true)?;
        for n in ns.iter() {
            let ms = ctx.opts.m.unwrap_or(Span::new(0, n));
            for m in ms.iter().filter(|&m| m <= n) {
                let rec = table.get(n, m).expect("entry in range");
                let closed = g_explicit(l, n, m)?;
                let enumerated = distribution(l, n, Class::FixInSuffix(m), Mahonian::Fmaf, budget)?;
                let failure = if rec != &closed {
                    Some(format!("recurrence {rec} != closed form {closed}"))
                } else if rec != &enumerated {
                    Some(format!("recurrence {rec} != enumeration {enumerated}"))
                } else {
                    None
                };
                ctx.push(format!("l={l} n={n} m={m}"), ctx.size(l, n), failure);
            }
        }
    }
    Ok(())
}

fn require_l1(ctx: &Ctx) -> Result<()> {
    match ctx.opts.l {
        Some(s) if s != Span::new(1, 1) => Err(Error::InvalidArgument(format!(
            "{} is defined for l = 1 only",
            ctx.target.name()
        ))),
        _ => Ok(()),
    }
}

fn thm3(ctx: &mut Ctx) -> Result<()> {
    require_l1(ctx)?;
    for n in ctx.ns().iter() {
        let mut checked = 0;
        let mut failure = None;
        for tau in enumerate(1, n, Class::All, ctx.opts.budget)? {
            checked += 1;
            let direct = psi(&tau)?;
            let factored = psi_via_factorization(&tau)?;
            if direct != factored {
                failure = Some(format!(
                    "\"{tau}\": psi gives \"{direct}\", factorization gives \"{factored}\""
                ));
                break;
            }
        }
        ctx.push(format!("n={n}"), checked, failure);
    }
    Ok(())
}

fn haglund(ctx: &mut Ctx) -> Result<()> {
    for l in ctx.ls()? {
        for n in ctx.ns().iter() {
            let got = distribution(l, n, Class::All, Mahonian::Fmaj, ctx.opts.budget)?.eval_x(1);
            let expected = rising_flag_product(0, n as u32, l)?;
            let failure = (got != expected).then(|| format!("{got} != {expected}"));
            let instance = format!("l={l} n={n} [{got}]");
            ctx.push(instance, ctx.size(l, n), failure);
        }
    }
    Ok(())
}

fn lemma_clark(ctx: &mut Ctx) -> Result<()> {
    for l in ctx.ls()? {
        for n in ctx.ns().iter() {
            let mut checked = 0;
            let mut failure = None;
            'outer: for sigma in enumerate(l, n, Class::Derangements, ctx.opts.budget)? {
                let g = slot_values(&sigma)?;
                let maj = sigma.maj();
                for (i, &gi) in g.iter().enumerate().take(slot_count(&sigma)) {
                    checked += 1;
                    let after = insert(&sigma, i)?.maj();
                    if after != maj + gi {
                        failure = Some(format!(
                            "\"{sigma}\" slot {i}: maj goes {maj} -> {after}, slot value {gi}"
                        ));
                        break 'outer;
                    }
                }
            }
            ctx.push(format!("l={l} n={n}"), checked, failure);
        }
    }
    Ok(())
}

/// Pillar words over `1..=max_letter` of length `1..=max_pillars`.
fn pillar_words(max_pillars: usize, max_letter: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_pillars {
        layer = layer
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (1..=max_letter).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every admissible split `μ = w1 0^r w2` of `mu`: `w2` a nonempty zero-free
/// suffix, `0^r` the full zero run before it, `w1` nonempty.
fn splits(mu: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 1..mu.len() {
        if mu[s..].contains(&0) || mu[s] == 0 {
            continue;
        }
        let r = mu[..s].iter().rev().take_while(|&&x| x == 0).count();
        if r < s {
            out.push((s - r, r));
        }
    }
    out
}

pub const LEMMA_F_MAX_PILLARS: usize = 4;

fn lemma_f(ctx: &mut Ctx) -> Result<()> {
    require_l1(ctx)?;
    let words = pillar_words(LEMMA_F_MAX_PILLARS, LEMMA_F_MAX_PILLARS);
    for len in ctx.ns().iter() {
        let mut checked = 0;
        let mut failure = None;
        'outer: for v in words.iter().filter(|v| v.len() <= len) {
            for mu in crate::shuffle::shuffle_class(v, len - v.len()) {
                let mu = mu.into_letters();
                for (cut, r) in splits(&mu) {
                    let (w1, w2) = (&mu[..cut], &mu[cut + r..]);
                    if w1.last() == w2.first() {
                        continue;
                    }
                    checked += 1;
                    if !lemma_f_check(w1, r, w2)? {
                        failure = Some(format!(
                            "w1={} r={r} w2={}",
                            ZWord::new(w1.to_vec()),
                            ZWord::new(w2.to_vec())
                        ));
                        break 'outer;
                    }
                }
            }
        }
        ctx.push(format!("length={len}"), checked, failure);
    }
    Ok(())
}

fn recurrence_d(ctx: &mut Ctx) -> Result<()> {
    for l in ctx.ls()? {
        for n in ctx.ns().iter() {
            let closed = derangement_poly(l, n);
            let brute =
                distribution(l, n, Class::Derangements, Mahonian::Fmaj, ctx.opts.budget)?.eval_x(1);
            let failure = if closed != brute {
                Some(format!("closed form {closed} != enumeration {brute}"))
            } else if !derangement_recurrence_check(l, n) {
                Some("recurrence fails below this n".to_string())
            } else {
                None
            };
            ctx.push(format!("l={l} n={n}"), ctx.size(l, n), failure);
        }
    }
    Ok(())
}

fn fix_sum_target(ctx: &mut Ctx) -> Result<()> {
    for l in ctx.ls()? {
        for n in ctx.ns().iter() {
            let lhs = distribution(l, n, Class::All, Mahonian::Fmaf, ctx.opts.budget)?;
            let rhs = fix_sum(l, n);
            let failure = (lhs != rhs).then(|| format!("{lhs} != {rhs}"));
            ctx.push(format!("l={l} n={n}"), ctx.size(l, n), failure);
        }
    }
    Ok(())
}

fn witness(ctx: &mut Ctx) -> Result<()> {
    let l_max = *ctx.ls()?.last().expect("nonempty range");
    let n_max = ctx.ns().hi;
    let found = non_equidistribution_witness(l_max, n_max, ctx.opts.budget)?;
    match found {
        Some((l, n, m, a, b)) => {
            let instance = format!("l={l} n={n} m={m} [fmaf: {a}; fmaj: {b}]");
            ctx.push(instance, 1, None);
        }
        None => ctx.push(
            format!("l<={l_max} n<={n_max}"),
            0,
            Some("no (l, n, m) with differing distributions".into()),
        ),
    }
    Ok(())
}
