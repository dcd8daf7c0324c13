//! TOML corpus of assertions and the JSON report produced by running it.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::parse::{chebyshev, parse_constant, parse_field, parse_ratfun};
use crate::algebra::Field;
use crate::boettcher::{boettcher_residual, boettcher_solve, local_transition_commute, transition_group};
use crate::error::{Error, Result};
use crate::lattice::{
    compositum, good_solution_certify, intersection_via_groups, left_membership, minimal_intersection_decide,
    right_factor_test, solve_ax_eq_by, MinimalDecision,
};
use crate::moebius::{classify_group, group_closure, Moebius, MoebiusGroup, DEFAULT_CLOSURE_BOUND};
use crate::ratfun::{RatFun, SpherePoint};
use crate::verifiers::{
    abhyankar_check, deck_group, equivariance_solve, is_galois, moebius_left_solve, so2_verify, theorem1_check,
    theorem2_recognize, theorem5_obstruction, theorem8_check, Theorem8Outcome, DEFAULT_SAMPLE_BUDGET,
};

pub const CORPUS_VERSION: u32 = 1;
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub version: u32,
    #[serde(rename = "entry", default)]
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    pub field: String,
    #[serde(default)]
    pub define: BTreeMap<String, String>,
    #[serde(rename = "assert", default)]
    pub assertions: Vec<Assertion>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Assertion {
    pub op: String,
    pub args: Vec<String>,
    pub expected: String,
    /// `reference`, `trivial` or `derived(<oracle>)`.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum AssertionVerdict {
    Pass,
    Fail { expected: String, computed: String },
    Undecided { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct AssertionReport {
    pub op: String,
    pub args: Vec<String>,
    pub provenance: String,
    #[serde(flatten)]
    pub verdict: AssertionVerdict,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub field: String,
    pub assertions: Vec<AssertionReport>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub tool_version: String,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for e in &mut r.entries {
            e.elapsed_ms = 0.0;
            for a in &mut e.assertions {
                a.elapsed_ms = 0.0;
            }
        }
        r
    }
}

pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let c: Corpus = toml::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))?;
    if c.version != CORPUS_VERSION {
        return Err(Error::SchemaError(format!("unsupported corpus version {}", c.version)));
    }
    let mut seen = std::collections::HashSet::new();
    for e in &c.entries {
        if !seen.insert(e.id.as_str()) {
            return Err(Error::SchemaError(format!("duplicate id {:?}", e.id)));
        }
        for a in &e.assertions {
            let p = a.provenance.as_str();
            let ok = p == "reference" || p == "trivial" || (p.starts_with("derived(") && p.ends_with(')'));
            if !ok {
                return Err(Error::SchemaError(format!("{}: bad provenance {p:?}", e.id)));
            }
        }
    }
    Ok(c)
}

pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::SchemaError(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}

pub fn run_corpus(path: &Path) -> Result<Report> {
    Ok(run(&load_corpus(path)?))
}

pub fn run(corpus: &Corpus) -> Report {
    let mut summary = Summary::default();
    let mut entries = vec![];
    for e in &corpus.entries {
        let t0 = Instant::now();
        let assertions = run_entry(e);
        for a in &assertions {
            match a.verdict {
                AssertionVerdict::Pass => summary.pass += 1,
                AssertionVerdict::Fail { .. } => summary.fail += 1,
                AssertionVerdict::Undecided { .. } => summary.undecided += 1,
            }
        }
        entries.push(EntryReport {
            id: e.id.clone(),
            field: e.field.clone(),
            assertions,
            elapsed_ms: t0.elapsed().as_secs_f64() * 1e3,
        });
    }
    Report { version: REPORT_VERSION, tool_version: env!("CARGO_PKG_VERSION").to_string(), entries, summary }
}

fn run_entry(e: &CorpusEntry) -> Vec<AssertionReport> {
    let fail_all = |msg: String| {
        e.assertions
            .iter()
            .map(|a| AssertionReport {
                op: a.op.clone(),
                args: a.args.clone(),
                provenance: a.provenance.clone(),
                verdict: AssertionVerdict::Fail { expected: a.expected.clone(), computed: msg.clone() },
                elapsed_ms: 0.0,
            })
            .collect()
    };
    let k = match parse_field(&e.field) {
        Ok(k) => k,
        Err(err) => return fail_all(format!("error: {err}")),
    };
    let mut env = Env { k: k.clone(), defs: BTreeMap::new() };
    for (name, text) in &e.define {
        match parse_ratfun(text, &k) {
            Ok(f) => {
                env.defs.insert(name.clone(), f);
            }
            Err(err) => return fail_all(format!("error in {name}: {err}")),
        }
    }
    e.assertions
        .iter()
        .map(|a| {
            let t0 = Instant::now();
            let verdict = match evaluate(&env, &a.op, &a.args) {
                Ok(out) => compare(&env, &out, &a.expected),
                Err(Error::Inconclusive(r)) => AssertionVerdict::Undecided { reason: r },
                Err(Error::KernelTooLarge(d)) => {
                    AssertionVerdict::Undecided { reason: format!("kernel dimension {d}") }
                }
                Err(err) => compare(&env, &Outcome::Text(format!("error: {err}")), &a.expected),
            };
            AssertionReport {
                op: a.op.clone(),
                args: a.args.clone(),
                provenance: a.provenance.clone(),
                verdict,
                elapsed_ms: t0.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

struct Env {
    k: Field,
    defs: BTreeMap<String, RatFun>,
}

impl Env {
    /// A defined name, a chain `F∘G∘...` of defined names, or an expression.
    fn fun(&self, s: &str) -> Result<RatFun> {
        let s = s.trim();
        if let Some(f) = self.defs.get(s) {
            return Ok(f.clone());
        }
        if s.contains('∘') {
            let mut acc: Option<RatFun> = None;
            for part in s.split('∘') {
                let f = self.fun(part)?;
                acc = Some(match acc {
                    None => f,
                    Some(a) => a.compose(&f),
                });
            }
            return Ok(acc.unwrap());
        }
        parse_ratfun(s, &self.k)
    }

    fn moebius(&self, s: &str) -> Result<Moebius> {
        Moebius::from_ratfun(&self.fun(s)?).ok_or_else(|| Error::Precondition(format!("{s} is not a Möbius map")))
    }

    fn group(&self, gens: &[String]) -> Result<MoebiusGroup> {
        let g: Result<Vec<Moebius>> = gens.iter().map(|s| self.moebius(s)).collect();
        group_closure(&self.k, &g?, DEFAULT_CLOSURE_BOUND)
    }

    fn point(&self, s: &str) -> Result<SpherePoint> {
        match s.trim() {
            "inf" | "∞" => Ok(SpherePoint::Infinity),
            t => Ok(SpherePoint::Finite(parse_constant(t, &self.k)?)),
        }
    }
}

fn int(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::SchemaError(format!("expected a nonnegative integer, got {s:?}")))
}

enum Outcome {
    Fun(RatFun),
    /// Equality up to a Möbius map on the left.
    FunModMoebius(RatFun),
    Text(String),
}

fn text(s: impl ToString) -> Outcome {
    Outcome::Text(s.to_string())
}

fn arity(op: &str, args: &[String], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::SchemaError(format!("{op} takes {n} arguments, got {}", args.len())));
    }
    Ok(())
}

fn evaluate(env: &Env, op: &str, args: &[String]) -> Result<Outcome> {
    let f = |i: usize| env.fun(&args[i]);
    let fixed = |n: usize| arity(op, args, n);
    Ok(match op {
        "compose" => {
            if args.is_empty() {
                return Err(Error::SchemaError("compose needs arguments".into()));
            }
            let mut acc = f(0)?;
            for i in 1..args.len() {
                acc = acc.compose(&f(i)?);
            }
            Outcome::Fun(acc)
        }
        "chebyshev" => {
            fixed(1)?;
            Outcome::Fun(chebyshev(&env.k, int(&args[0])?))
        }
        "equal" => {
            fixed(2)?;
            text(f(0)? == f(1)?)
        }
        "degree" => {
            fixed(1)?;
            text(f(0)?.degree())
        }
        "multiplicity" => {
            fixed(2)?;
            text(f(0)?.multiplicity_at(&env.point(&args[1])?)?)
        }
        "compositum_degree" => {
            fixed(2)?;
            text(compositum(&f(0)?, &f(1)?)?.degree)
        }
        "compositum" => {
            fixed(2)?;
            Outcome::FunModMoebius(compositum(&f(0)?, &f(1)?)?.generator)
        }
        "member" => {
            fixed(2)?;
            match left_membership(&f(0)?, &f(1)?) {
                Some(a) => Outcome::Fun(a),
                None => text("none"),
            }
        }
        "in_field" => {
            fixed(2)?;
            text(left_membership(&f(0)?, &f(1)?).is_some())
        }
        "right_factor" => {
            fixed(2)?;
            text(right_factor_test(&f(0)?, &f(1)?).is_some())
        }
        "solve" => {
            fixed(4)?;
            let out = solve_ax_eq_by(&f(0)?, &f(1)?, int(&args[2])?, int(&args[3])?)?;
            text(if out.is_empty() {
                "empty"
            } else if out.is_family() {
                "family"
            } else {
                "unique"
            })
        }
        "minimal" => {
            fixed(2)?;
            match minimal_intersection_decide(&f(0)?, &f(1)?)? {
                MinimalDecision::Yes { .. } => text("yes"),
                MinimalDecision::No { .. } => text("no"),
                MinimalDecision::Undecided { kernel_dim } => {
                    return Err(Error::Inconclusive(format!("kernel dimension {kernel_dim}")))
                }
            }
        }
        "certify" => {
            fixed(4)?;
            let c = good_solution_certify(&f(0)?, &f(1)?, &f(2)?, &f(3)?)?;
            text(if c.is_good() { "good" } else { "not_good" })
        }
        "deck_order" => {
            fixed(1)?;
            let d = deck_group(&f(0)?, DEFAULT_SAMPLE_BUDGET)?;
            if !d.is_complete() {
                return Err(Error::Inconclusive(format!("deck group has at least {} elements", d.group.order())));
            }
            text(d.group.order())
        }
        "galois" => {
            fixed(1)?;
            text(is_galois(&f(0)?)?.is_galois)
        }
        "closure_order" => text(env.group(args)?.order()),
        "group_type" => text(classify_group(&env.group(args)?)?),
        "intersection" => {
            fixed(2)?;
            Outcome::FunModMoebius(intersection_via_groups(&f(0)?, &f(1)?)?.h)
        }
        "equivariant" => {
            if args.len() < 2 {
                return Err(Error::SchemaError("equivariant takes V and generators".into()));
            }
            match equivariance_solve(&f(0)?, &env.group(&args[1..])?) {
                Some(w) if w.injective => text("injective"),
                Some(_) => text("non_injective"),
                None => text("none"),
            }
        }
        "thm1" => {
            fixed(4)?;
            text(if theorem1_check(&f(0)?, &f(1)?, &f(2)?, &f(3)?)?.all_pass() { "pass" } else { "fail" })
        }
        "thm2" => {
            fixed(2)?;
            match theorem2_recognize(&f(0)?, int(&args[1])?)? {
                Some(form) => text(format!("s={}", form.s)),
                None => text("none"),
            }
        }
        "thm5" => {
            fixed(2)?;
            text(if theorem5_obstruction(&f(0)?, &f(1)?)?.intersection_trivial { "obstructed" } else { "clear" })
        }
        "thm8" => {
            fixed(4)?;
            match theorem8_check(&f(0)?, &f(1)?, &f(2)?, &f(3)?)? {
                Theorem8Outcome::Reduced { .. } => text("reduced"),
                Theorem8Outcome::Fail(r) => text(r),
            }
        }
        "abhyankar" => {
            fixed(5)?;
            text(abhyankar_check(&f(0)?, &f(1)?, &f(2)?, &f(3)?, &f(4)?, None)?.holds)
        }
        "so2" => {
            fixed(3)?;
            text(so2_verify(&f(0)?, &f(1)?, &env.moebius(&args[2])?)?.holds)
        }
        "boettcher" => {
            fixed(2)?;
            text(boettcher_solve(&f(0)?, int(&args[1])?)?)
        }
        "boettcher_residual" => {
            fixed(2)?;
            let h = f(0)?;
            let r = boettcher_residual(&h, &boettcher_solve(&h, int(&args[1])?)?)?;
            text(if r.support().is_empty() { "0".to_string() } else { r.to_string() })
        }
        "transition_order" => {
            fixed(2)?;
            let g = transition_group(&f(0)?, int(&args[1])?)?;
            if !(g.is_closed()? && g.is_abelian()?) {
                text("not_a_group")
            } else {
                text(g.elements.len())
            }
        }
        "local_commute" => {
            fixed(4)?;
            text(local_transition_commute(&f(0)?, &f(1)?, &env.point(&args[2])?, int(&args[3])?)?)
        }
        _ => return Err(Error::SchemaError(format!("unknown operation {op:?}"))),
    })
}

fn compare(env: &Env, out: &Outcome, expected: &str) -> AssertionVerdict {
    let (ok, computed) = match out {
        Outcome::Text(t) => (t.trim() == expected.trim(), t.clone()),
        Outcome::Fun(f) => (env.fun(expected).is_ok_and(|e| e == *f), f.to_string()),
        Outcome::FunModMoebius(f) => (
            env.fun(expected).is_ok_and(|e| e.degree() == f.degree() && moebius_left_solve(&e, f).is_some()),
            f.to_string(),
        ),
    };
    if ok {
        AssertionVerdict::Pass
    } else {
        AssertionVerdict::Fail { expected: expected.to_string(), computed }
    }
}
