//! Command-line front end: every subcommand returns a [`CommandResult`], printed as text
//! or, with `--json`, as `{"status", "payload", "diagnostics"}`.

use crate::constants::counting::{
    basis_count_w1, count_table5, motivic_dim, table5_printed, Table5Column, TABLE4_NEW_BASIS, TABLE4_SUMS,
};
use crate::constants::hpl_one::hpl_at_one;
use crate::constants::polygamma::polygamma_reduce;
use crate::constants::rank::{relation_rank, RankMethod};
use crate::constants::ramanujan::{ramanujan_values, G1_PRINTED, H1_PRINTED};
use crate::constants::roots::li_root;
use crate::constants::special::polygamma;
use crate::constants::{eval_constant, ConstantExpr};
use crate::cyclopoly::{cyclotomic, factor_xn_minus_1, factor_xn_plus_1, partial_fraction_inverse};
use crate::lincomb::rational_json;
use crate::numerics::asymptotic::phi_asymptotic;
use crate::numerics::fixtures::{ex2_deviation, Ex2Form};
use crate::numerics::phi::phi;
use crate::numerics::{bits, eval_hpl_quadrature, eval_hpl_series};
use crate::sums::mellin::{differentiate, mellin_to_sum, sum_to_mellin};
use crate::sums::{
    count_table2, duplicate_h1, duplicate_h2, eval_sum_definition, stuffle, synchronize, Relation, SumIndex,
    Table2Column,
};
use crate::verify::{run_suite, SUITES};
use crate::words::{lyndon_basis, parse_letters, shuffle, witt_count, Word};
use crate::{Error, LinComb, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rug::{Float, Rational};
use serde_json::{json, Value};
use std::fmt::Display;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "cyclo", version, about = "Cyclotomic harmonic sums and polylogarithms")]
pub struct Cli {
    /// Emit a JSON CommandResult.
    #[arg(long, global = true)]
    pub json: bool,
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "CYCLO_PREC", default_value_t = 30)]
    pub prec: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HplMethod {
    Series,
    Quad,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RankMode {
    Stuffle,
    Numeric,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cyclotomic polynomial Φ_N.
    Poly { n: u64 },
    /// Factor x^L+1 or x^L-1 into cyclotomic polynomials.
    Factor { expr: String },
    /// Partial fractions of 1/(x^L + 1) (SIGN = +) or 1/(x^L - 1) (SIGN = -).
    Pfrac {
        l: u64,
        #[arg(allow_hyphen_values = true)]
        sign: String,
    },
    /// Shuffle product of two words.
    Shuffle { w1: String, w2: String },
    /// Lyndon basis words over the given letters, e.g. `--letters 0:0,1:0,2:0`.
    Basis {
        #[arg(long)]
        letters: String,
        #[arg(long)]
        weight: usize,
    },
    /// Numbers of basic polylogarithms by weight and letter count.
    CountTable1 {
        #[arg(long, default_value_t = 8)]
        max_letters: u64,
        #[arg(long, default_value_t = 8)]
        max_weight: u64,
    },
    /// Exact value of S_IDX(N).
    EvalSum { idx: String, n: u64 },
    /// Quasi-shuffle product of two sums.
    Stuffle { idx1: String, idx2: String },
    /// S_IDX(K N) through sums at N.
    Sync { idx: String, k: u64 },
    /// Duplication relation.
    Dup {
        idx: String,
        #[arg(long, default_value_t = 1)]
        variant: u8,
    },
    /// Basis counts over {1/k, (-1)^k/k, 1/(2k+1), (-1)^k/(2k+1)}.
    CountTable2 {
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
    },
    /// C_WORD(X) numerically.
    EvalHpl {
        word: String,
        x: String,
        #[arg(long, value_enum, default_value_t = HplMethod::Series)]
        method: HplMethod,
    },
    /// φ_K(L,N) = ∫ x^{N+L}/Φ_K(x) dx.
    Phi {
        k: u64,
        l: u64,
        n: u64,
        #[arg(long)]
        plus: bool,
    },
    /// Printed large-N expansion of φ_K(L,N) against the exact value.
    PhiAsym {
        k: u64,
        l: u64,
        n: u64,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// The Mellin representation of S_{{3,2,2},{2,1,-1}}, printed and re-derived.
    VerifyEx2 {
        #[arg(long, default_value_t = 5)]
        nmax: u64,
    },
    /// Evaluate a constant expression such as `pi^2/6 - zeta(2)`.
    Const { expr: String },
    /// ψ^{(N)}(P/Q) reduced over the basis constants.
    Polygamma { n: u32, p: u64, q: u64 },
    /// Weight-one basis sizes by cyclotomy.
    Table4,
    /// Weight-two basis sizes by cyclotomy and relation set.
    Table5,
    /// Basis size from the rank of the relation system.
    Rank {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        cyclotomy: u64,
        #[arg(long, value_enum, default_value_t = RankMode::Numeric)]
        method: RankMode,
    },
    /// G(1) and H(1).
    Ramanujan,
    /// Li_W at e^{2πiK/L}.
    Liroot { w: u32, l: u64, k: u64 },
    /// Taylor coefficients 0..=NMAX of G_W.
    Motivic { w: u64, nmax: usize },
    /// Mellin representation of a sum over {k, 2k, 2k+1} denominators, and back.
    Mellin {
        idx: String,
        /// Also differentiate M times in N.
        #[arg(long, default_value_t = 0)]
        diff: u32,
    },
    /// Acceptance battery.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub ok: bool,
    pub payload: Value,
    pub text: String,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(payload: Value, text: impl Into<String>) -> Self {
        CommandResult { ok: true, payload, text: text.into(), diagnostics: Vec::new() }
    }

    fn failed(payload: Value, text: impl Into<String>, diag: impl Into<String>) -> Self {
        CommandResult { ok: false, payload, text: text.into(), diagnostics: vec![diag.into()] }
    }

    pub fn error(e: &Error) -> Self {
        CommandResult { ok: false, payload: Value::Null, text: String::new(), diagnostics: vec![e.to_string()] }
    }

    pub fn to_json(&self) -> Value {
        json!({"status": if self.ok { "ok" } else { "error" }, "payload": self.payload, "diagnostics": self.diagnostics})
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

/// Fixed-point decimal with `digits` significant digits.
pub fn decimal(x: &Float, digits: u32) -> String {
    if !x.is_normal() {
        return if x.is_zero() { "0".into() } else { x.to_string() };
    }
    let s = x.to_string_radix(10, Some(digits.max(1) as usize));
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, mant),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((&mant, ""));
    let digits_all = format!("{int}{frac}");
    let point = int.len() as i64 + exp;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits_all)
    } else if point as usize >= digits_all.len() {
        format!("{}{}", digits_all, "0".repeat(point as usize - digits_all.len()))
    } else {
        format!("{}.{}", &digits_all[..point as usize], &digits_all[point as usize..])
    };
    let body = if body.contains('.') { body.trim_end_matches('0').trim_end_matches('.').to_string() } else { body };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn rational_str(q: &Rational) -> String {
    q.to_string()
}

fn lincomb_json<T: Ord + Clone>(lc: &LinComb<T>, key: impl Fn(&T) -> Value) -> Value {
    Value::Array(lc.iter().map(|(t, c)| json!({"term": key(t), "coeff": rational_json(c)})).collect())
}

fn parse_rational(s: &str) -> Result<Rational> {
    if let Ok(q) = s.parse::<Rational>() {
        return Ok(q);
    }
    let f = Float::parse(s).map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
    Float::with_val(bits(60), f).to_rational().ok_or_else(|| Error::Parse(format!("bad number {s:?}")))
}

fn relation_text(r: &Relation) -> String {
    let lhs = r.lhs.map_keys(|i| format!("{i}({}N)", r.lhs_scale));
    let rhs = r.rhs.map_keys(|i| format!("{i}(N)"));
    format!("{lhs} = {rhs}")
}

fn grid_text<R: Display, C: Display>(corner: &str, cols: &[C], rows: &[(R, Vec<String>)]) -> String {
    let mut out = format!("{corner:>6}");
    let width: Vec<usize> = (0..cols.len())
        .map(|j| rows.iter().map(|(_, r)| r[j].len()).chain([cols[j].to_string().len()]).max().unwrap_or(1) + 2)
        .collect();
    for (c, w) in cols.iter().zip(&width) {
        out.push_str(&format!("{:>w$}", c.to_string(), w = w));
    }
    for (r, vals) in rows {
        out.push_str(&format!("\n{:>6}", r.to_string()));
        for (v, w) in vals.iter().zip(&width) {
            out.push_str(&format!("{v:>w$}", w = w));
        }
    }
    out
}

fn parse_factor(expr: &str) -> Result<(u64, i32)> {
    let e: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("expected x^L+1 or x^L-1, got {expr:?}"));
    let rest = e.strip_prefix('x').ok_or_else(bad)?;
    let (l, sign_rest) = match rest.strip_prefix('^') {
        Some(r) => {
            let pos = r.find(['+', '-']).ok_or_else(bad)?;
            (r[..pos].parse::<u64>().map_err(|_| bad())?, &r[pos..])
        }
        None => (1, rest),
    };
    match sign_rest {
        "+1" => Ok((l, 1)),
        "-1" => Ok((l, -1)),
        _ => Err(bad()),
    }
}

pub fn run(cli: &Cli) -> CommandResult {
    dispatch(cli).unwrap_or_else(|e| CommandResult::error(&e))
}

fn dispatch(cli: &Cli) -> Result<CommandResult> {
    let d = cli.prec;
    let r = match &cli.command {
        Command::Poly { n } => {
            let p = cyclotomic(*n)?;
            CommandResult::ok(json!({"n": n, "coeffs": p.to_json()}), p.to_string())
        }
        Command::Factor { expr } => {
            let (l, sign) = parse_factor(expr)?;
            let ks = if sign > 0 { factor_xn_plus_1(l) } else { factor_xn_minus_1(l) };
            let text = ks.iter().map(|k| format!("Φ_{k}")).collect::<Vec<_>>().join(" * ");
            let factors: Vec<Value> =
                ks.iter().map(|&k| cyclotomic(k).map(|p| json!({"k": k, "coeffs": p.to_json()}))).collect::<Result<_>>()?;
            CommandResult::ok(json!({"l": l, "sign": sign, "factors": factors}), format!("x^{l}{} = {text}", if sign > 0 { "+1" } else { "-1" }))
        }
        Command::Pfrac { l, sign } => {
            let s = match sign.as_str() {
                "+" | "+1" | "1" | "plus" => 1,
                "-" | "-1" | "minus" => -1,
                _ => return Err(Error::Parse(format!("SIGN must be + or -, got {sign:?}"))),
            };
            let lc = partial_fraction_inverse(s, *l)?;
            let payload = lincomb_json(&lc, |t| json!({"k": t.k, "l": t.l}));
            CommandResult::ok(json!({"terms": payload}), lc.to_string())
        }
        Command::Shuffle { w1, w2 } => {
            let (a, b): (Word, Word) = (w1.parse()?, w2.parse()?);
            let lc = shuffle(&a, &b);
            CommandResult::ok(json!({"terms": lincomb_json(&lc, |w| json!(w.to_string()))}), lc.to_string())
        }
        Command::Basis { letters, weight } => {
            let alphabet = parse_letters(letters)?;
            let words = lyndon_basis(&alphabet, *weight)?;
            let names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            CommandResult::ok(json!({"count": names.len(), "words": names}), format!("{} words\n{}", names.len(), names.join("\n")))
        }
        Command::CountTable1 { max_letters, max_weight } => {
            let cols: Vec<u64> = (2..=*max_letters).collect();
            let rows: Vec<(u64, Vec<String>)> =
                (1..=*max_weight).map(|w| (w, cols.iter().map(|&m| witt_count(m, w).to_string()).collect())).collect();
            let payload: Vec<Value> = rows.iter().map(|(w, r)| json!({"weight": w, "counts": r})).collect();
            CommandResult::ok(json!({"letters": cols, "rows": payload}), grid_text("w\\m", &cols, &rows))
        }
        Command::EvalSum { idx, n } => {
            let i: SumIndex = idx.parse()?;
            let v = eval_sum_definition(&i, *n)?;
            let f = Float::with_val(bits(d + 5), &v);
            CommandResult::ok(
                json!({"index": i.to_json(), "n": n, "value": rational_json(&v), "decimal": decimal(&f, d)}),
                format!("{i}({n}) = {} ≈ {}", rational_str(&v), decimal(&f, d)),
            )
        }
        Command::Stuffle { idx1, idx2 } => {
            let (a, b): (SumIndex, SumIndex) = (idx1.parse()?, idx2.parse()?);
            let lc = stuffle(&a, &b);
            CommandResult::ok(json!({"terms": lincomb_json(&lc, |i| json!(i.to_string()))}), lc.to_string())
        }
        Command::Sync { idx, k } => {
            let r = synchronize(&idx.parse()?, *k)?;
            let ok = (1..=5).map(|n| r.check(n)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
            let text = format!("{}\nchecked N = 1..5: {ok}", relation_text(&r));
            if ok { CommandResult::ok(r.to_json(), text) } else { CommandResult::failed(r.to_json(), text, "relation check failed") }
        }
        Command::Dup { idx, variant } => {
            let i: SumIndex = idx.parse()?;
            let r = match variant {
                1 => duplicate_h1(&i)?,
                2 => duplicate_h2(&i)?,
                v => return Err(Error::Domain(format!("variant must be 1 or 2, got {v}"))),
            };
            let ok = (1..=5).map(|n| r.check(n)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
            let text = format!("{}\nchecked N = 1..5: {ok}", relation_text(&r));
            if ok { CommandResult::ok(r.to_json(), text) } else { CommandResult::failed(r.to_json(), text, "relation check failed") }
        }
        Command::CountTable2 { max_weight } => {
            let cols: Vec<&str> = Table2Column::ALL.iter().map(|c| c.label()).collect();
            let mut rows = Vec::new();
            for w in 1..=*max_weight {
                let r: Vec<String> = Table2Column::ALL.iter().map(|c| count_table2(w, *c).map(|v| v.to_string())).collect::<Result<_>>()?;
                rows.push((w, r));
            }
            let payload: Vec<Value> = rows.iter().map(|(w, r)| json!({"weight": w, "counts": r})).collect();
            CommandResult::ok(json!({"columns": cols, "rows": payload}), grid_text("w", &cols, &rows))
        }
        Command::EvalHpl { word, x, method } => {
            let w: Word = word.parse()?;
            let xq = parse_rational(x)?;
            let xv = Float::with_val(bits(d + 10), &xq);
            let v = match method {
                HplMethod::Series if xq == 1 => hpl_at_one(&w, d)?,
                HplMethod::Series => eval_hpl_series(&w, &xv, d)?,
                HplMethod::Quad => eval_hpl_quadrature(&w, &xv, d)?,
            };
            CommandResult::ok(json!({"word": w.to_string(), "x": x, "value": decimal(&v, d)}), format!("C({w})({x}) = {}", decimal(&v, d)))
        }
        Command::Phi { k, l, n, plus } => {
            let v = phi(*k, *l, *n, d, *plus)?;
            let name = format!("φ_{k}({l},{n}){}", if *plus { "_+" } else { "" });
            CommandResult::ok(json!({"k": k, "l": l, "n": n, "plus": plus, "value": decimal(&v, d)}), format!("{name} = {}", decimal(&v, d)))
        }
        Command::PhiAsym { k, l, n, order } => {
            let a = phi_asymptotic(*k, *l, *n, *order, d)?;
            let e = phi(*k, *l, *n, d, *k == 1)?;
            let rel = Float::with_val(a.prec(), &a - &e).abs() / e.clone().abs();
            let payload = json!({"k": k, "l": l, "n": n, "order": order, "asymptotic": decimal(&a, d),
                "exact": decimal(&e, d), "relative_deviation": format!("{:.3e}", rel.to_f64())});
            CommandResult::ok(payload, format!("expansion {}\nexact     {}\nrelative deviation {:.3e}", decimal(&a, d), decimal(&e, d), rel.to_f64()))
        }
        Command::VerifyEx2 { nmax } => {
            let mut rows = Vec::new();
            let mut text = String::from("   N   printed     re-derived");
            let mut ok = true;
            for n in 1..=*nmax {
                let p = ex2_deviation(n, d, Ex2Form::Printed)?.to_f64();
                let c = ex2_deviation(n, d, Ex2Form::Corrected)?.to_f64();
                ok &= p < 1e-12;
                text.push_str(&format!("\n{n:>4}   {p:.3e}   {c:.3e}"));
                rows.push(json!({"n": n, "printed": p, "corrected": c}));
            }
            let payload = json!({"deviations": rows, "printed_holds": ok});
            if ok {
                CommandResult::ok(payload, text)
            } else {
                CommandResult::failed(payload, text, "the printed representation misses the exact sum; the re-derived one holds")
            }
        }
        Command::Const { expr } => {
            let e: ConstantExpr = expr.parse()?;
            let v = eval_constant(&e, d)?;
            CommandResult::ok(json!({"expr": e.to_string(), "terms": e.to_json(), "value": decimal(&v, d)}), format!("{e}\n= {}", decimal(&v, d)))
        }
        Command::Polygamma { n, p, q } => {
            let e = polygamma_reduce(*n, *p, *q)?;
            let v = eval_constant(&e, d)?;
            let w = polygamma(*n, &Rational::from((*p, *q)), bits(d + 10))?;
            let dev = Float::with_val(w.prec(), &v - &w).abs().to_f64();
            CommandResult::ok(
                json!({"n": n, "p": p, "q": q, "expr": e.to_string(), "terms": e.to_json(), "value": decimal(&v, d), "check": dev}),
                format!("ψ^({n})({p}/{q}) = {e}\n= {}   (direct {:.1e})", decimal(&v, d), dev),
            )
        }
        Command::Table4 => {
            let ls: Vec<u64> = (1..=20).collect();
            let basis: Vec<String> = ls.iter().map(|&l| basis_count_w1(l).to_string()).collect();
            let rows = vec![
                ("sums", TABLE4_SUMS.iter().map(|v| v.to_string()).collect()),
                ("basis", basis.clone()),
                ("new", TABLE4_NEW_BASIS.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
            ];
            CommandResult::ok(json!({"l": ls, "sums": TABLE4_SUMS, "basis": basis, "new_basis": TABLE4_NEW_BASIS}), grid_text("l", &ls, &rows))
        }
        Command::Table5 => {
            let cols: Vec<&str> = Table5Column::ALL.iter().map(|c| c.label()).collect();
            let mut rows = Vec::new();
            for l in 1..=20u64 {
                let mut r = Vec::new();
                for c in &Table5Column::ALL[..6] {
                    r.push(count_table5(l, *c)?.to_string());
                }
                r.push(table5_printed(l, Table5Column::AShH1H2M).map(|v| format!("{v}*")).unwrap_or_default());
                rows.push((l, r));
            }
            let payload: Vec<Value> = rows.iter().map(|(l, r)| json!({"l": l, "counts": r})).collect();
            let text = format!("{}\n(* printed, no counting formula)", grid_text("l", &cols, &rows));
            CommandResult::ok(json!({"columns": cols, "rows": payload}), text)
        }
        Command::Rank { weight, cyclotomy, method } => {
            let m = match method {
                RankMode::Stuffle => RankMethod::Stuffle,
                RankMode::Numeric => RankMethod::Numeric,
            };
            let r = relation_rank(*weight, *cyclotomy, m)?;
            CommandResult::ok(
                json!({"weight": r.weight, "cyclotomy": r.cyclotomy, "method": format!("{:?}", r.method).to_lowercase(),
                    "sums": r.sums, "rank": r.rank, "basis": r.basis}),
                format!("w={} l={} ({:?}): {} sums, rank {}, basis {}", r.weight, r.cyclotomy, r.method, r.sums, r.rank, r.basis),
            )
        }
        Command::Ramanujan => {
            let (g, h) = ramanujan_values(d.max(25))?;
            let text = format!("G(1) = {}\nH(1) = {}\nprinted {G1_PRINTED} / {H1_PRINTED}", decimal(&g, d), decimal(&h, d));
            CommandResult::ok(json!({"G1": decimal(&g, d), "H1": decimal(&h, d), "equal": false}), text)
        }
        Command::Liroot { w, l, k } => {
            let v = li_root(*w, *l, *k, d)?;
            let text = format!(
                "Li_{w}(e_{l}^{k})\nRe = {} = {}\nIm = {} = {}",
                v.re,
                decimal(&v.value.re, d),
                v.im,
                decimal(&v.value.im, d)
            );
            CommandResult::ok(
                json!({"re": v.re.to_json(), "im": v.im.to_json(), "re_text": v.re.to_string(), "im_text": v.im.to_string(),
                    "value": {"re": decimal(&v.value.re, d), "im": decimal(&v.value.im, d)}}),
                text,
            )
        }
        Command::Motivic { w, nmax } => {
            let c: Vec<Rational> = (0..=*nmax).map(|n| motivic_dim(*w, n)).collect::<Result<_>>()?;
            let text = c.iter().map(rational_str).collect::<Vec<_>>().join(", ");
            CommandResult::ok(json!({"w": w, "coefficients": c.iter().map(rational_json).collect::<Vec<_>>()}), text)
        }
        Command::Mellin { idx, diff } => {
            let i: SumIndex = idx.parse()?;
            let m = sum_to_mellin(&i)?;
            let back = mellin_to_sum(&m)?;
            let mut payload = json!({"index": i.to_string(), "mellin": m.to_json(), "sums": back.to_json()});
            let mut text = format!("{i}(N) = {m}\ninverse: {back}");
            if *diff > 0 {
                let (dm, ds) = differentiate(&i, *diff)?;
                payload["derivative"] = json!({"order": diff, "mellin": dm.to_json(), "sums": ds.to_json()});
                text.push_str(&format!("\nd^{diff}/dN^{diff}: {ds}"));
            }
            CommandResult::ok(payload, text)
        }
        Command::Verify { suite } => {
            let outcomes = run_suite(suite)
                .ok_or_else(|| Error::Domain(format!("unknown suite {suite:?}; one of {}", SUITES.join(", "))))?;
            let ok = outcomes.iter().all(|o| o.pass);
            let text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
            let payload = json!({"suite": suite, "results": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>()});
            let failing: Vec<String> = outcomes.iter().filter(|o| !o.pass).map(|o| format!("criterion {} failed", o.id)).collect();
            if ok {
                CommandResult::ok(payload, format!("{text}\nok"))
            } else {
                CommandResult { ok: false, payload, text, diagnostics: failing }
            }
        }
    };
    Ok(r)
}

/// Parses `argv`, runs the command, prints the result; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let r = run(&cli);
    // a closed pipe is not an error of the command
    let mut out = std::io::stdout().lock();
    if cli.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r.to_json()).expect("serializable"));
    } else {
        if !r.text.is_empty() {
            let _ = writeln!(out, "{}", r.text);
        }
        for d in &r.diagnostics {
            eprintln!("cyclo: {d}");
        }
    }
    r.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandResult {
        run(&Cli::try_parse_from(std::iter::once("cyclo").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn decimal_format() {
        let x = Float::with_val(100, Float::parse("-0.00123456").unwrap());
        assert_eq!(decimal(&x, 4), "-0.001235");
        assert_eq!(decimal(&Float::with_val(100, 1234.5), 6), "1234.5");
        assert_eq!(decimal(&Float::with_val(100, 100), 3), "100");
    }

    #[test]
    fn poly_and_factor() {
        assert_eq!(run_args(&["poly", "12"]).text, "x^4 - x^2 + 1");
        assert_eq!(run_args(&["factor", "x^6+1"]).text, "x^6+1 = Φ_4 * Φ_12");
        let r = run_args(&["--json", "poly", "6"]);
        assert_eq!(r.payload["coeffs"], json!(["1", "-1", "1"]));
    }

    #[test]
    fn errors_set_status() {
        let r = run_args(&["eval-sum", "S[{1,0}]", "3"]);
        assert!(!r.ok && r.exit_code() == 1);
        assert_eq!(main_with_args(["cyclo", "frobnicate"]), 2);
    }

    #[test]
    fn sums_and_mellin() {
        assert!(run_args(&["eval-sum", "S[{1,0,1}]", "3"]).text.starts_with("S[{1,0,1}](3) = 11/6"));
        let r = run_args(&["mellin", "S[{2,1,-1}]", "--diff", "1"]);
        assert!(r.ok, "{:?}", r.diagnostics);
    }
}
