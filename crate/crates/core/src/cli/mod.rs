//! The `qeuler` command line.
//!
//! [`run`] does all the work and returns the text to print together with the
//! exit code, so the binary is a thin wrapper and tests can drive it directly.
//!
//! Exit codes: 0 success, 1 a verification counterexample, 2 bad input,
//! 3 enumeration budget exceeded.

pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::insertion::psi_traced;
use crate::shuffle::{f_traced, factorize, phi_inv_traced, phi_l, ZWord};
use crate::table::euler_table;
use crate::wreath::{ColoredPermutation, DEFAULT_BUDGET};

pub use verify::{verify, Check, Span, Target, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qeuler",
    version,
    about = "Colored permutation statistics, the bijection Psi and the colored q-Euler difference table"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of elements any single enumeration may visit.
    #[arg(long, global = true, env = "QEULER_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All statistics of a colored permutation, plus Der and FIX.
    Stats(PermArgs),
    /// Apply Psi, optionally with the recursion trace.
    Psi {
        #[command(flatten)]
        perm: PermArgs,
        #[arg(long)]
        trace: bool,
    },
    /// The maps Phi, Phi^-1 and F on words, or the full factorisation of Psi.
    Fh {
        action: FhAction,
        /// A word such as `0 2 0 0 1 4 3 0` or `02001430`; a permutation for `factorize`.
        input: String,
        #[arg(long)]
        trace: bool,
    },
    /// The difference table g_{l,n}^m.
    Table {
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Keep the x variable (tracking fix).
        #[arg(long, overrides_with = "no_x")]
        x: bool,
        /// Evaluate at x = 1 (default).
        #[arg(long, overrides_with = "x")]
        no_x: bool,
    },
    /// Exhaustive checks of the identities and bijections.
    Verify {
        target: Target,
        /// `A` or `A..B`, inclusive.
        #[arg(long)]
        l: Option<Span>,
        #[arg(long)]
        n: Option<Span>,
        /// Restrict the `m` column (thm2 only).
        #[arg(long)]
        m: Option<Span>,
    },
}

#[derive(Debug, Args)]
struct PermArgs {
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// Window `σ(1) … σ(n)`; a colored letter is written `v:c`, e.g. `1 8:1 3`.
    permutation: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FhAction {
    PhiInv,
    Phi,
    F,
    Factorize,
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Invariant(_) | Error::NegativeCoefficient { .. } => EXIT_COUNTEREXAMPLE,
        _ => EXIT_INPUT,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Stats(p) => stats(cli, p),
        Command::Psi { perm, trace } => psi_cmd(cli, perm, *trace),
        Command::Fh {
            action,
            input,
            trace,
        } => fh(cli, *action, input, *trace),
        Command::Table { l, n, x, no_x } => table(cli, *l, *n, *x && !*no_x),
        Command::Verify { target, l, n, m } => {
            let opts = VerifyOptions {
                l: *l,
                n: *n,
                m: *m,
                budget: cli.budget,
            };
            verify_cmd(cli, *target, &opts)
        }
    }
}

fn json_text(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn stats(cli: &Cli, p: &PermArgs) -> Result<Outcome> {
    let sigma = ColoredPermutation::parse(p.l, &p.permutation)?;
    let s = sigma.stat_vector();
    let der = sigma.der();
    let fix_set = sigma.fix_set();
    if cli.json {
        return Ok(Outcome::ok(json_text(json!({
            "l": p.l,
            "permutation": sigma.to_string(),
            "stats": s,
            "der": der.to_string(),
            "fix_set": fix_set,
        }))));
    }
    let mut out = format!(
        "fix={} des={} maj={} exc={} col={} maf={} fmaj={} fmaf={}\n",
        s.fix, s.des, s.maj, s.exc, s.col, s.maf, s.fmaj, s.fmaf
    );
    let _ = writeln!(out, "Der={der}");
    let _ = writeln!(out, "FIX={}", join(&fix_set));
    Ok(Outcome::ok(out))
}

fn psi_cmd(cli: &Cli, p: &PermArgs, trace: bool) -> Result<Outcome> {
    let tau = ColoredPermutation::parse(p.l, &p.permutation)?;
    let (image, t) = psi_traced(&tau)?;
    if cli.json {
        let mut v = json!({
            "l": p.l,
            "input": tau.to_string(),
            "output": image.to_string(),
            "maj": tau.maj(),
            "maf": image.maf(),
            "fmaj": tau.fmaj(),
            "fmaf": image.fmaf(),
        });
        if trace {
            v["trace"] = serde_json::to_value(&t).expect("trace serializes");
        }
        return Ok(Outcome::ok(json_text(v)));
    }
    let mut out = String::new();
    if trace {
        let _ = writeln!(out, "Der = {}", t.derangement);
        let _ = writeln!(out, "insertion sequence: <{}>", join(&t.input_seq));
        for s in &t.slots {
            let value = s.value.map_or(String::new(), |g| format!(" g={g}"));
            let _ = writeln!(
                out,
                "slot {} ({}, {}): {}{value}",
                s.index,
                s.position,
                s.position + 1,
                s.color
            );
        }
        for s in &t.steps {
            let _ = writeln!(
                out,
                "Psi<{}> = <{}>  slot {} {}, {}",
                join(&s.input),
                join(&s.output),
                s.last_slot,
                s.color,
                s.rule
            );
        }
    }
    let _ = writeln!(out, "{image}");
    Ok(Outcome::ok(out))
}

fn fh(cli: &Cli, action: FhAction, input: &str, trace: bool) -> Result<Outcome> {
    if action == FhAction::Factorize {
        let tau = ColoredPermutation::parse(1, input)?;
        let (image, record) = factorize(&tau)?;
        let direct = crate::insertion::psi(&tau)?;
        let agreement = image == direct;
        if cli.json {
            return Ok(Outcome::ok(json_text(json!({
                "input": tau.to_string(),
                "steps": record,
                "output": image.to_string(),
                "psi": direct.to_string(),
                "agreement": agreement,
            }))));
        }
        let mut out = String::new();
        if trace {
            let _ = writeln!(out, "ZDer:      {}", record.zder);
            let _ = writeln!(out, "Phi^-1:    {}", record.phi_inv);
            let _ = writeln!(out, "F:         {}", record.f);
            let _ = writeln!(out, "ZDer^-1:   {}", record.result);
        }
        let _ = writeln!(out, "{image}");
        let _ = writeln!(out, "agreement={agreement}");
        return Ok(Outcome::ok(out));
    }

    let w = ZWord::parse(input)?;
    let compact = !input.trim().contains(char::is_whitespace);
    let show = |u: &ZWord| {
        if compact {
            u.to_compact().unwrap_or_else(|| u.to_string())
        } else {
            u.to_string()
        }
    };
    let (result, lines): (ZWord, Vec<String>) = match action {
        FhAction::PhiInv => {
            let (r, steps) = phi_inv_traced(&w)?;
            (r, steps.iter().map(ToString::to_string).collect())
        }
        FhAction::Phi => {
            let r = crate::shuffle::phi(&w)?;
            let mut cur = w.clone();
            let mut lines = Vec::new();
            for l in (1..=w.zeros()).rev() {
                let (next, case) = phi_l(&cur, l);
                lines.push(format!(
                    "phi_{l}: {}  case ({})",
                    show(&next),
                    case.number()
                ));
                cur = next;
            }
            (r, lines)
        }
        FhAction::F => {
            let (r, steps) = f_traced(&w);
            (r, steps.iter().map(ToString::to_string).collect())
        }
        FhAction::Factorize => unreachable!(),
    };
    if cli.json {
        let mut v = json!({ "input": w, "output": result });
        if trace {
            v["trace"] = json!(lines);
        }
        return Ok(Outcome::ok(json_text(v)));
    }
    let mut out = String::new();
    if trace {
        for line in &lines {
            let _ = writeln!(out, "{line}");
        }
    }
    let _ = writeln!(out, "{}", show(&result));
    Ok(Outcome::ok(out))
}

fn table(cli: &Cli, l: u32, n: usize, with_x: bool) -> Result<Outcome> {
    let t = euler_table(l, n, with_x)?;
    Ok(Outcome::ok(if cli.json {
        json_text(t.to_json())
    } else {
        t.render()
    }))
}

fn verify_cmd(cli: &Cli, target: Target, opts: &VerifyOptions) -> Result<Outcome> {
    let checks = verify(target, opts)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let code = if failed == 0 {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    };
    let stdout = if cli.json {
        json_text(json!({
            "target": target.name(),
            "passed": failed == 0,
            "failed": failed,
            "checks": checks,
        }))
    } else {
        let mut out = String::new();
        for c in &checks {
            let _ = writeln!(out, "{c}");
        }
        let _ = writeln!(
            out,
            "{}: {} of {} instances passed",
            target.name(),
            checks.len() - failed,
            checks.len()
        );
        out
    };
    Ok(Outcome {
        code,
        stdout,
        stderr: String::new(),
    })
}
