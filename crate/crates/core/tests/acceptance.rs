//! Acceptance suite: one line per criterion, with its exactness check and
//! its time limit. Run with `cargo test --test acceptance -- --nocapture` to
//! see the report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use qeuler::cli::{self, Span, Target, VerifyOptions};
use qeuler::insertion::{
    insert, insert_seq, nondecreasing_sequences, psi, slot_case, slot_colors, slot_count,
    slot_values,
};
use qeuler::qpoly::{q_binomial, rising_flag_product};
use qeuler::shuffle::{
    f_traced, f_transform, phi, phi_inv, phi_inv_traced, shuffle_class, ZWord, ZeroCase,
};
use qeuler::table::{
    array_formula, array_solve, derangement_poly, derangement_recurrence_check, distribution,
    euler_table, g_diag, g_explicit, joint_distribution, non_equidistribution_witness,
    q_power_elementary_check, ArraySeqs, Mahonian,
};
use qeuler::wreath::{enumerate, Class, ColoredPermutation, DEFAULT_BUDGET};
use qeuler::QXPoly;
use rand::{Rng, SeedableRng};

const BUDGET: u64 = DEFAULT_BUDGET;

// time limits; the remaining criteria are exact but untimed
const LIMIT_GOLDEN_STATS: Duration = Duration::from_millis(1);
const LIMIT_GOLDEN_PSI: Duration = Duration::from_millis(1);
const LIMIT_GOLDEN_FH: Duration = Duration::from_millis(1);
const LIMIT_TABLES: Duration = Duration::from_millis(10);
const LIMIT_THM1: Duration = Duration::from_secs(60);
const LIMIT_THM2: Duration = Duration::from_secs(120);
const LIMIT_THM3: Duration = Duration::from_secs(10);
const LIMIT_WITNESS: Duration = Duration::from_secs(10);

// sweep bounds
const L_MAX: u32 = 3;
const N_MAX: usize = 5;
const THM3_N_MAX: usize = 7;
const PSI_CLASS_ORDER_MAX: usize = 6;
const PSI_CLASS_L_MAX: u32 = 2;
const SHUFFLE_N_MAX: usize = 7;
const CASE_TABLE_N_MAX: usize = 6;
const LEMMA_F_LENGTH_MAX: usize = 8;
const ARRAY_N_MAX: usize = 5;
const ARRAY_TRIALS: usize = 200;
const QBINOMIAL_N_MAX: u32 = 10;
const E_K_N_MAX: usize = 8;
const NONNEG_N_MAX: usize = 6;

type Outcome = Result<(), String>;
type Suite = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(coeffs: &[i64]) -> QXPoly {
    QXPoly::from_q_coeffs(coeffs)
}

fn qint(n: u32) -> QXPoly {
    q(&vec![1; n as usize])
}

fn perm(l: u32, s: &str) -> ColoredPermutation {
    ColoredPermutation::parse(l, s).unwrap()
}

fn word(s: &str) -> ZWord {
    ZWord::parse(s).unwrap()
}

/// Runs `work` once to warm caches, then reports the best of three timings.
fn timed<T>(mut work: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = work();
    for _ in 0..3 {
        let start = Instant::now();
        out = work();
        best = best.min(start.elapsed());
    }
    (out, best)
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn c1_golden_stats() -> Outcome {
    let (sigma, elapsed) = timed(|| {
        let s = perm(4, "1 8:1 3 4 6 2:2 7 5:1 9");
        (s.stat_vector(), s.der())
    });
    let (s, der) = sigma;
    ensure(s.maj == 13, || format!("maj = {}", s.maj))?;
    ensure(der == perm(4, "4:1 3 1:2 2:1"), || format!("Der = {der}"))?;
    ensure(s.maf == 11, || format!("maf = {}", s.maf))?;
    ensure(s.col == 4, || format!("col = {}", s.col))?;
    ensure(s.fmaj == 56, || format!("fmaj = {}", s.fmaj))?;
    ensure(s.fmaf == 48, || format!("fmaf = {}", s.fmaf))?;
    within(elapsed, LIMIT_GOLDEN_STATS)
}

fn c2_golden_psi() -> Outcome {
    let tau = perm(3, "1 9:1 3 10 5 6 7 4 2 8:2");
    let rho = perm(1, "1 5 3 4 2 7 6 8");
    let ((a, b), elapsed) = timed(|| (psi(&tau).unwrap(), psi(&rho).unwrap()));
    ensure(a == perm(3, "6:1 8 2 4 5 1 7 3:2 9 10"), || {
        format!("Psi(tau) = {a}")
    })?;
    ensure(a.fmaf() == 90, || format!("fmaf = {}", a.fmaf()))?;
    ensure(tau.fmaj() == 90, || format!("fmaj = {}", tau.fmaj()))?;
    ensure(b == perm(1, "1 3 2 4 8 6 7 5"), || {
        format!("Psi(rho) = {b}")
    })?;
    within(elapsed, LIMIT_GOLDEN_PSI)
}

fn c3_golden_fh() -> Outcome {
    let w = word("02001430");
    let u = word("02010403");
    let (((inv, steps), (fw, fsteps)), elapsed) =
        timed(|| (phi_inv_traced(&w).unwrap(), f_traced(&u)));
    ensure(inv == u, || format!("Phi^-1 = {inv}"))?;
    let cases: Vec<ZeroCase> = steps.iter().map(|s| s.case).collect();
    let expected = vec![
        ZeroCase::One,
        ZeroCase::One,
        ZeroCase::Three { k: 5 },
        ZeroCase::Two { k: 7 },
    ];
    ensure(cases == expected, || format!("psi cases {cases:?}"))?;
    ensure(fw == word("02104003"), || format!("F = {fw}"))?;
    let rows: Vec<String> = fsteps.iter().map(|s| s.to_string()).collect();
    let expected = [
        "F(02) = 02  no descent",
        "F(020) = 200  case (3)",
        "F(0201) = 0201  case (2)",
        "F(02010) = 20100  case (3)",
        "F(020104) = 201004  case (1)",
        "F(0201040) = 2104000  case (3)",
        "F(02010403) = 02104003  case (2)",
    ];
    ensure(rows == expected, || format!("F trace {rows:#?}"))?;
    within(elapsed, LIMIT_GOLDEN_FH)
}

fn table_from_cli(l: u32, n: usize) -> BTreeMap<String, QXPoly> {
    let out = cli::run([
        "qeuler",
        "--json",
        "table",
        "--l",
        &l.to_string(),
        "--n",
        &n.to_string(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("table JSON parses")
}

fn c4_tables() -> Outcome {
    let ((t1, t2), elapsed) = timed(|| (table_from_cli(1, 3), table_from_cli(2, 3)));
    let qq = QXPoly::q();
    let printed_l1 = [
        ("g[0][0]", QXPoly::one()),
        ("g[1][0]", QXPoly::zero()),
        ("g[1][1]", QXPoly::one()),
        ("g[2][0]", qq.clone()),
        ("g[2][1]", qq.clone()),
        ("g[2][2]", q(&[1, 1])),
        ("g[3][0]", &qq * &qint(2)),
        ("g[3][1]", &qq * &qint(3)),
        ("g[3][2]", q(&[0, 1, 2, 1])),
        ("g[3][3]", &qint(2) * &qint(3)),
    ];
    let printed_l2 = [
        ("g[0][0]", QXPoly::one()),
        ("g[1][0]", qq.clone()),
        ("g[1][1]", qint(2)),
        ("g[2][0]", &(&qq * &qint(4)) + &QXPoly::q_pow(2)),
        (
            "g[2][1]",
            &(&qq * &qint(4)) + &(&QXPoly::q_pow(2) * &qint(2)),
        ),
        ("g[2][2]", &qint(2) * &qint(4)),
        ("g[3][0]", q(&[0, 1, 3, 4, 5, 5, 4, 4, 2, 1])),
        ("g[3][1]", q(&[0, 1, 3, 4, 5, 6, 6, 5, 3, 1])),
        // corrected: the recurrence forces this, not the printed value
        ("g[3][2]", q(&[0, 1, 3, 5, 7, 8, 7, 5, 3, 1])),
        ("g[3][3]", &(&qint(2) * &qint(4)) * &qint(6)),
    ];
    for (l, got, want) in [(1, &t1, &printed_l1[..]), (2, &t2, &printed_l2[..])] {
        ensure(got.len() == want.len(), || {
            format!("l={l}: {} entries", got.len())
        })?;
        for (key, p) in want {
            ensure(got.get(*key) == Some(p), || {
                format!(
                    "l={l} {key}: got {:?}, want {p}",
                    got.get(*key).map(|g| g.to_string())
                )
            })?;
        }
    }
    within(elapsed, LIMIT_TABLES)
}

fn c5_equidistribution() -> Outcome {
    let start = Instant::now();
    for l in 1..=L_MAX {
        for n in 0..=N_MAX {
            let a = joint_distribution(l, n, Class::All, Mahonian::Fmaf, BUDGET).unwrap();
            let b = joint_distribution(l, n, Class::All, Mahonian::Fmaj, BUDGET).unwrap();
            ensure(a == b, || {
                format!("l={l} n={n}: (stat, exc, fix) distributions differ")
            })?;
            let marginal = distribution(l, n, Class::All, Mahonian::Fmaf, BUDGET).unwrap();
            ensure(marginal == g_diag(l, n), || {
                format!("l={l} n={n}: marginal {marginal}")
            })?;
        }
    }
    within(start.elapsed(), LIMIT_THM1)
}

fn c6_table_three_ways() -> Outcome {
    let start = Instant::now();
    for l in 1..=L_MAX {
        let table = euler_table(l, N_MAX, true).unwrap();
        for n in 0..=N_MAX {
            for m in 0..=n {
                let rec = table.get(n, m).unwrap();
                let closed = g_explicit(l, n, m).unwrap();
                let enumd =
                    distribution(l, n, Class::FixInSuffix(m), Mahonian::Fmaf, BUDGET).unwrap();
                ensure(rec == &closed && rec == &enumd, || {
                    format!("l={l} n={n} m={m}: {rec} / {closed} / {enumd}")
                })?;
            }
        }
    }
    within(start.elapsed(), LIMIT_THM2)
}

fn c7_factorization() -> Outcome {
    let start = Instant::now();
    let checks = cli::verify(
        Target::Thm3,
        &VerifyOptions {
            l: None,
            n: Some(Span::new(0, THM3_N_MAX)),
            m: None,
            budget: BUDGET,
        },
    )
    .unwrap();
    let elapsed = start.elapsed();
    let total: u64 = checks.iter().map(|c| c.checked).sum();
    // 0! + 1! + ... + 7!
    ensure(total == 5914, || format!("{total} permutations checked"))?;
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(bad.to_string());
    }
    within(elapsed, LIMIT_THM3)
}

fn c8_flag_product() -> Outcome {
    for l in 1..=L_MAX {
        for n in 0..=N_MAX {
            let got = distribution(l, n, Class::All, Mahonian::Fmaj, BUDGET)
                .unwrap()
                .eval_x(1);
            let want = rising_flag_product(0, n as u32, l).unwrap();
            ensure(got == want, || format!("l={l} n={n}: {got}"))?;
        }
    }
    Ok(())
}

fn c9_derangements() -> Outcome {
    for l in 1..=L_MAX {
        for n in 0..=N_MAX {
            let brute = distribution(l, n, Class::Derangements, Mahonian::Fmaj, BUDGET)
                .unwrap()
                .eval_x(1);
            let closed = derangement_poly(l, n);
            ensure(brute == closed, || {
                format!("l={l} n={n}: {brute} vs {closed}")
            })?;
        }
        ensure(derangement_recurrence_check(l, N_MAX), || {
            format!("recurrence fails for l={l}")
        })?;
    }
    Ok(())
}

fn c10_slot_lemma() -> Outcome {
    for l in 1..=L_MAX {
        for n in 0..=N_MAX {
            for sigma in enumerate(l, n, Class::Derangements, BUDGET).unwrap() {
                let g = slot_values(&sigma).unwrap();
                for (i, &gi) in g.iter().enumerate().take(slot_count(&sigma)) {
                    let after = insert(&sigma, i).unwrap().maj();
                    ensure(after == sigma.maj() + gi, || {
                        format!("{sigma} slot {i}: {} -> {after}, g = {gi}", sigma.maj())
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn psi_classes() -> Outcome {
    for l in 1..=PSI_CLASS_L_MAX {
        for d in 0..=PSI_CLASS_ORDER_MAX {
            for sigma in enumerate(l, d, Class::Derangements, BUDGET).unwrap() {
                for m in 0..=PSI_CLASS_ORDER_MAX - d {
                    let class: BTreeSet<Vec<usize>> =
                        nondecreasing_sequences(m, d).into_iter().collect();
                    let mut image = BTreeSet::new();
                    for seq in &class {
                        let tau = insert_seq(&sigma, seq).unwrap();
                        let out = psi(&tau).unwrap();
                        ensure(out.der() == sigma && out.fix() == m, || {
                            format!("Psi({tau}) = {out} leaves the class")
                        })?;
                        ensure(out.maf() == tau.maj() && out.fmaf() == tau.fmaj(), || {
                            format!("Psi({tau}) = {out} does not carry maj to maf")
                        })?;
                        image.insert(out.to_string());
                    }
                    ensure(image.len() == class.len(), || {
                        format!("Psi not injective on class of {sigma}, m={m}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn shuffle_bijections() -> Outcome {
    for n in 0..=SHUFFLE_N_MAX {
        for m in 0..=n {
            for v in enumerate(1, m, Class::Derangements, BUDGET).unwrap() {
                let class = shuffle_class(&v.values(), n - m);
                let members: BTreeSet<&ZWord> = class.iter().collect();
                let mut phi_image = BTreeSet::new();
                let mut f_image = BTreeSet::new();
                for w in &class {
                    let u = phi_inv(w).unwrap();
                    ensure(phi(&u).unwrap() == *w, || {
                        format!("Phi(Phi^-1({w})) != {w}")
                    })?;
                    ensure(members.contains(&u), || {
                        format!("Phi^-1({w}) = {u} leaves class")
                    })?;
                    phi_image.insert(u);
                    let f = f_transform(w);
                    ensure(members.contains(&f), || {
                        format!("F({w}) = {f} leaves class")
                    })?;
                    f_image.insert(f);
                }
                ensure(phi_image.len() == class.len(), || {
                    format!("Phi^-1 not onto, v={v}")
                })?;
                ensure(f_image.len() == class.len(), || {
                    format!("F not onto, v={v}")
                })?;
            }
        }
    }
    Ok(())
}

fn case_table() -> Outcome {
    for n in 1..=CASE_TABLE_N_MAX {
        for sigma in enumerate(1, n, Class::Derangements, BUDGET).unwrap() {
            let values = sigma.values();
            for (j, color) in slot_colors(&sigma) {
                let case = slot_case(&values, j);
                ensure(case.map(|c| c.color()) == Some(color), || {
                    format!("{sigma} slot {j}: case {case:?}, colour {color}")
                })?;
            }
        }
    }
    Ok(())
}

fn lemma_f() -> Outcome {
    let checks = cli::verify(
        Target::LemmaF,
        &VerifyOptions {
            l: None,
            n: Some(Span::new(0, LEMMA_F_LENGTH_MAX)),
            m: None,
            budget: BUDGET,
        },
    )
    .unwrap();
    match checks.iter().find(|c| !c.passed) {
        Some(bad) => Err(bad.to_string()),
        None => Ok(()),
    }
}

fn random_poly(rng: &mut impl Rng) -> QXPoly {
    let mut p = QXPoly::zero();
    for _ in 0..rng.gen_range(0..4) {
        p.add_term(
            rng.gen_range(0..4),
            rng.gen_range(0..3),
            rng.gen_range(-5i64..=5).into(),
        );
    }
    p
}

fn array_lemma() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for trial in 0..ARRAY_TRIALS {
        let len = 2 * ARRAY_N_MAX + 2;
        let seqs = ArraySeqs {
            xs: (0..len).map(|_| random_poly(&mut rng)).collect(),
            ys: (0..len).map(|_| random_poly(&mut rng)).collect(),
            zs: (0..len).map(|_| random_poly(&mut rng)).collect(),
        };
        for n in 0..=ARRAY_N_MAX {
            for m in 0..=ARRAY_N_MAX {
                let a = array_solve(&seqs, n, m).unwrap();
                let b = array_formula(&seqs, n, m).unwrap();
                ensure(a == b, || format!("trial {trial} n={n} m={m}: {a} vs {b}"))?;
            }
        }
    }
    Ok(())
}

fn q_binomials() -> Outcome {
    for base in 1..=3 {
        for n in 0..=QBINOMIAL_N_MAX {
            for k in 0..=n {
                let b = q_binomial(n, k, base).unwrap();
                ensure(b == q_binomial(n, n - k, base).unwrap(), || {
                    format!("symmetry fails at n={n} k={k}")
                })?;
                if n > 0 && k > 0 && k < n {
                    let pascal = q_binomial(n - 1, k - 1, base).unwrap()
                        + q_binomial(n - 1, k, base)
                            .unwrap()
                            .mul_monomial(base * k, 0);
                    ensure(b == pascal, || format!("Pascal fails at n={n} k={k}"))?;
                }
            }
        }
    }
    for n in 0..=E_K_N_MAX {
        ensure(q_power_elementary_check(n), || {
            format!("e_k identity fails at n={n}")
        })?;
    }
    Ok(())
}

fn nonnegative_tables() -> Outcome {
    for l in 1..=L_MAX {
        for with_x in [false, true] {
            euler_table(l, NONNEG_N_MAX, with_x).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn c11_properties() -> Outcome {
    let suites: [Suite; 7] = [
        ("Psi per class", psi_classes),
        ("Phi and F per shuffle class", shuffle_bijections),
        ("green/red case table", case_table),
        ("index predictions for F", lemma_f),
        ("array lemma", array_lemma),
        ("q-binomial symmetry, Pascal, e_k", q_binomials),
        ("table nonnegativity", nonnegative_tables),
    ];
    for (name, suite) in suites {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn c12_witness() -> Outcome {
    let start = Instant::now();
    let found = non_equidistribution_witness(L_MAX, N_MAX, BUDGET).unwrap();
    let elapsed = start.elapsed();
    let (l, n, m, a, b) = found.ok_or("no witness found")?;
    println!("    witness: l={l} n={n} m={m}, fmaf {a}, fmaj {b}");
    ensure(0 < m && m < n && a != b, || "bad witness".into())?;
    within(elapsed, LIMIT_WITNESS)
}

#[test]
fn acceptance() {
    let criteria: [Suite; 12] = [
        ("golden statistics", c1_golden_stats),
        ("golden Psi", c2_golden_psi),
        ("golden Phi^-1 and F", c3_golden_fh),
        ("difference tables l=1, l=2", c4_tables),
        (
            "fmaf/fmaj equidistribution with exc and fix",
            c5_equidistribution,
        ),
        (
            "recurrence = closed form = enumeration",
            c6_table_three_ways,
        ),
        ("Psi = ZDer^-1 F Phi^-1 ZDer", c7_factorization),
        ("flag major index product", c8_flag_product),
        ("derangement polynomials", c9_derangements),
        ("slot values shift maj", c10_slot_lemma),
        ("property suites", c11_properties),
        ("non-equidistribution witness", c12_witness),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match &result {
            Ok(()) => println!("criterion {:>2} PASS  {name}  ({elapsed:.2?})", i + 1),
            Err(e) => {
                println!("criterion {:>2} FAIL  {name}  ({elapsed:.2?}): {e}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
