//! The colored q-Euler difference table `g_{l,n}^m(q, x)`.
//!
//! Diagonal entries are the fix-graded flag distribution `g_{l,n}(q, x)`; the
//! rest of each row follows from
//!
//! ```text
//! g_{l,n}^m = g_{l,n}^{m+1} - x q^{l(n-m-1)} g_{l,n-1}^m      (0 <= m < n)
//! ```
//!
//! All closed forms are rearranged so that no polynomial division occurs:
//! the quotient `[l]_q⋯[nl]_q / [l]_q⋯[kl]_q` becomes the partial product
//! `[(k+1)l]_q⋯[nl]_q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qpoly::{q_binomial, q_integer, rising_flag_product, QXPoly};
use crate::wreath::{enumerate, Class, ColoredPermutation};

fn choose2(k: u32) -> u32 {
    k * k.saturating_sub(1) / 2
}

fn as_u32(n: usize) -> u32 {
    u32::try_from(n).expect("table sizes fit in u32")
}

/// `g_{l,n}(q, x) = Σ_k [(k+1)l]_q⋯[nl]_q · (x-1)(x-q^l)⋯(x-q^{l(k-1)})`.
pub fn g_diag(l: u32, n: usize) -> QXPoly {
    let n = as_u32(n);
    let mut falling = QXPoly::one();
    let mut total = QXPoly::zero();
    for k in 0..=n {
        let head = rising_flag_product(k, n, l).expect("k <= n");
        total += &head * &falling;
        falling = &falling * &(QXPoly::x() - QXPoly::q_pow(l * k));
    }
    total
}

/// `d_{l,n}(q) = Σ_k (-1)^k q^{l C(k,2)} [(k+1)l]_q⋯[nl]_q`.
pub fn derangement_poly(l: u32, n: usize) -> QXPoly {
    let n = as_u32(n);
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            rising_flag_product(k, n, l)
                .expect("k <= n")
                .mul_monomial(l * choose2(k), 0)
                .scale(&BigInt::from(sign))
        })
        .sum()
}

/// `d_{l,n+1} = [l(n+1)]_q d_{l,n} + (-1)^{n+1} q^{l C(n+1,2)}`, checked for
/// every `n < n_max`.
pub fn derangement_recurrence_check(l: u32, n_max: usize) -> bool {
    (0..n_max).all(|n| {
        let m = as_u32(n) + 1;
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        let rhs = q_integer(m, l).expect("positive") * derangement_poly(l, n)
            + QXPoly::monomial(sign, l * choose2(m), 0);
        rhs == derangement_poly(l, n + 1)
    })
}

/// `g_{l,n}^m` by the alternating closed form
/// `Σ_k (-x)^k [n-m choose k]_{q^l} q^{l C(k,2)} g_{l,n-k}(q, x)`.
pub fn g_explicit(l: u32, n: usize, m: usize) -> Result<QXPoly> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "g_explicit needs m <= n, got n={n}, m={m}"
        )));
    }
    let span = as_u32(n - m);
    let mut total = QXPoly::zero();
    for k in 0..=span {
        let sign = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
        let term = q_binomial(span, k, l)?
            .mul_monomial(l * choose2(k), k)
            .scale(&sign);
        total += &term * &g_diag(l, n - k as usize);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTable {
    pub l: u32,
    pub n_max: usize,
    pub with_x: bool,
    entries: BTreeMap<(usize, usize), QXPoly>,
}

impl EulerTable {
    pub fn get(&self, n: usize, m: usize) -> Option<&QXPoly> {
        self.entries.get(&(n, m))
    }

    pub fn row(&self, n: usize) -> Vec<&QXPoly> {
        (0..=n).filter_map(|m| self.get(n, m)).collect()
    }

    /// JSON object keyed `"g[n][m]"`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for ((n, m), p) in &self.entries {
            obj.insert(
                format!("g[{n}][{m}]"),
                serde_json::to_value(p).expect("polynomials serialize"),
            );
        }
        serde_json::Value::Object(obj)
    }

    /// Triangle with `n` down the side and `m` across, columns aligned.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = (0..=self.n_max)
            .map(|n| self.row(n).iter().map(|p| p.to_string()).collect())
            .collect();
        let mut widths = vec![1usize; self.n_max + 1];
        for row in &cells {
            for (m, c) in row.iter().enumerate() {
                widths[m] = widths[m].max(c.len());
            }
        }
        let label = "n\\m";
        let side = label.len().max(self.n_max.to_string().len());
        let mut out = format!("{label:<side$} |");
        for (m, w) in widths.iter().enumerate() {
            out.push_str(&format!(" {m:<w$}"));
        }
        out = out.trim_end().to_string();
        out.push('\n');
        out.push_str(&"-".repeat(out.trim_end().len()));
        out.push('\n');
        for (n, row) in cells.iter().enumerate() {
            let mut line = format!("{n:<side$} |");
            for (m, c) in row.iter().enumerate() {
                line.push_str(&format!(" {c:<w$}", w = widths[m]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Fills the table by rows, each row from the diagonal leftwards. Without
/// `x` the diagonal is `g_diag` at `x = 1` and the recurrence drops the `x`.
///
/// Fails if any entry has a negative coefficient.
pub fn euler_table(l: u32, n_max: usize, with_x: bool) -> Result<EulerTable> {
    if l == 0 {
        return Err(Error::InvalidArgument("l must be at least 1".into()));
    }
    let mut entries = BTreeMap::new();
    for n in 0..=n_max {
        let diag = if with_x {
            g_diag(l, n)
        } else {
            rising_flag_product(0, as_u32(n), l)?
        };
        entries.insert((n, n), diag);
        for m in (0..n).rev() {
            let step = entries[&(n - 1, m)].mul_monomial(l * as_u32(n - m - 1), u32::from(with_x));
            let entry = &entries[&(n, m + 1)] - &step;
            if !entry.has_nonnegative_coefficients() {
                return Err(Error::NegativeCoefficient {
                    n,
                    m,
                    poly: entry.to_string(),
                });
            }
            entries.insert((n, m), entry);
        }
    }
    Ok(EulerTable {
        l,
        n_max,
        with_x,
        entries,
    })
}

/// Which flag-Mahonian statistic `q` tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mahonian {
    Fmaf,
    Fmaj,
}

impl Mahonian {
    pub fn of(&self, sigma: &ColoredPermutation) -> usize {
        match self {
            Mahonian::Fmaf => sigma.fmaf(),
            Mahonian::Fmaj => sigma.fmaj(),
        }
    }
}

/// `Σ q^{stat σ} x^{fix σ}` over `class`.
pub fn distribution(l: u32, n: usize, class: Class, stat: Mahonian, budget: u64) -> Result<QXPoly> {
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for sigma in enumerate(l, n, class, budget)? {
        *counts.entry((stat.of(&sigma), sigma.fix())).or_default() += 1;
    }
    let mut out = QXPoly::zero();
    for ((s, f), c) in counts {
        out.add_term(as_u32(s), as_u32(f), BigInt::from(c));
    }
    Ok(out)
}

/// Joint counts of `(stat, exc, fix)` over `class`.
pub fn joint_distribution(
    l: u32,
    n: usize,
    class: Class,
    stat: Mahonian,
    budget: u64,
) -> Result<BTreeMap<(usize, usize, usize), u64>> {
    let mut counts = BTreeMap::new();
    for sigma in enumerate(l, n, class, budget)? {
        *counts
            .entry((stat.of(&sigma), sigma.exc(), sigma.fix()))
            .or_default() += 1;
    }
    Ok(counts)
}

/// `Σ_k x^{n-k} [n choose k]_{q^l} d_{l,k}(q)`.
pub fn fix_sum(l: u32, n: usize) -> QXPoly {
    let nn = as_u32(n);
    (0..=nn)
        .map(|k| {
            q_binomial(nn, k, l)
                .expect("k <= n")
                .mul_monomial(0, nn - k)
                * derangement_poly(l, k as usize)
        })
        .sum()
}

/// Compares the enumerated `(fmaf, fix)` distribution on `G_{l,n}` with [`fix_sum`].
pub fn fix_sum_identity_check(l: u32, n: usize, budget: u64) -> Result<bool> {
    Ok(distribution(l, n, Class::All, Mahonian::Fmaf, budget)? == fix_sum(l, n))
}

/// Elementary symmetric polynomials `e_0 … e_n` of `ys`.
pub fn elementary_symmetric(ys: &[QXPoly]) -> Vec<QXPoly> {
    let mut e = vec![QXPoly::one()];
    for y in ys {
        let mut next = e.clone();
        next.push(QXPoly::zero());
        for i in 0..e.len() {
            next[i + 1] += &(&e[i] * y);
        }
        e = next;
    }
    e
}

/// Sequences for the array `a_{n,m} = z_m a_{n-1,m+1} + y_n a_{n-1,m}`,
/// `a_{0,m} = x_m`. Indexing: `xs[m]`, `ys[i - 1]` is `y_i`, `zs[m]` is `z_m`.
#[derive(Clone, Debug)]
pub struct ArraySeqs {
    pub xs: Vec<QXPoly>,
    pub ys: Vec<QXPoly>,
    pub zs: Vec<QXPoly>,
}

impl ArraySeqs {
    fn check(&self, n: usize, m: usize) -> Result<()> {
        if self.xs.len() <= n + m || self.ys.len() < n || (n > 0 && self.zs.len() < n + m) {
            return Err(Error::InvalidArgument(format!(
                "array sequences too short for a[{n}][{m}]"
            )));
        }
        Ok(())
    }
}

/// `a_{n,m}` by the recurrence.
pub fn array_solve(seqs: &ArraySeqs, n: usize, m: usize) -> Result<QXPoly> {
    seqs.check(n, m)?;
    // level[c] = a_{k, m + c}
    let mut level: Vec<QXPoly> = seqs.xs[m..=m + n].to_vec();
    for k in 1..=n {
        level = (0..=n - k)
            .map(|c| &(&seqs.zs[m + c] * &level[c + 1]) + &(&seqs.ys[k - 1] * &level[c]))
            .collect();
    }
    Ok(level.swap_remove(0))
}

/// `a_{n,m} = Σ_k x_{m+k} (z_m⋯z_{m+k-1}) e_{n-k}(y_1, …, y_n)`.
pub fn array_formula(seqs: &ArraySeqs, n: usize, m: usize) -> Result<QXPoly> {
    seqs.check(n, m)?;
    let e = elementary_symmetric(&seqs.ys[..n]);
    let mut zprod = QXPoly::one();
    let mut total = QXPoly::zero();
    for k in 0..=n {
        total += &(&(&seqs.xs[m + k] * &zprod) * &e[n - k]);
        if k < n {
            zprod = &zprod * &seqs.zs[m + k];
        }
    }
    Ok(total)
}

/// The specialisation `x_m = g_{l,m}`, `z = 1`, `y_i = -x q^{l(i-1)}`, under
/// which `a_{n,m} = g_{l,n+m}^m`.
pub fn table_array_seqs(l: u32, size: usize) -> ArraySeqs {
    ArraySeqs {
        xs: (0..=size).map(|m| g_diag(l, m)).collect(),
        ys: (0..size)
            .map(|i| QXPoly::monomial(-1, l * as_u32(i), 1))
            .collect(),
        zs: vec![QXPoly::one(); size + 1],
    }
}

/// `e_k(1, q, …, q^{n-1}) = [n choose k]_q q^{C(k,2)}`.
pub fn q_power_elementary_check(n: usize) -> bool {
    let ys: Vec<QXPoly> = (0..as_u32(n)).map(QXPoly::q_pow).collect();
    let e = elementary_symmetric(&ys);
    (0..=as_u32(n)).all(|k| {
        e[k as usize]
            == q_binomial(as_u32(n), k, 1)
                .expect("k <= n")
                .mul_monomial(choose2(k), 0)
    })
}

/// `(l, n, m, fmaf distribution, fmaj distribution)`.
pub type Witness = (u32, usize, usize, QXPoly, QXPoly);

/// First `(l, n, m)` with `0 < m < n` where the `fmaf` and `fmaj`
/// q-distributions over `G_{l,n}^m` differ, searching `l <= l_max`, `n <= n_max`.
pub fn non_equidistribution_witness(
    l_max: u32,
    n_max: usize,
    budget: u64,
) -> Result<Option<Witness>> {
    for l in 1..=l_max {
        for n in 2..=n_max {
            for m in 1..n {
                let class = Class::FixInSuffix(m);
                let a = distribution(l, n, class, Mahonian::Fmaf, budget)?.eval_x(1);
                let b = distribution(l, n, class, Mahonian::Fmaj, budget)?.eval_x(1);
                if a != b {
                    return Ok(Some((l, n, m, a, b)));
                }
            }
        }
    }
    Ok(None)
}

/// Value at `q = 1` of the flag product, `l^n n!`.
pub fn flag_count(l: u32, n: usize) -> BigInt {
    (1..=as_u32(n)).fold(BigInt::one(), |acc, j| acc * BigInt::from(j * l))
}
