use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use luroth_core::boettcher::{boettcher_residual, boettcher_solve, transition_group, DEFAULT_TRUNCATION};
use luroth_core::lattice::{compositum, left_membership, minimal_intersection_decide, solve_ax_eq_by, MinimalDecision};
use luroth_core::moebius::{classify_group, group_closure, Moebius, DEFAULT_CLOSURE_BOUND};
use luroth_core::ratfun::RatFun;
use luroth_core::verifiers::{
    deck_group, equivariance_solve, is_galois, theorem1_check, theorem2_recognize, theorem5_obstruction,
    theorem8_check, Theorem8Outcome, DEFAULT_SAMPLE_BUDGET,
};
use luroth_core::workbench::{parse_field, parse_ratfun, run_corpus};
use luroth_core::Error;

const OUTPUT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "luroth", version, about = "Exact computations with rational functions under composition")]
struct Cli {
    /// Q, Q(zeta_N) or Q[w]/(poly in w)
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Bound on group closures and on the number of deck base points tried
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Truncation order for power series
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of K(z) over K(X, Y) and a generator of K(X, Y)
    Compositum { x: String, y: String },
    /// Whether H lies in K(X); prints A with H = A(X)
    Member { h: String, x: String },
    /// Solutions of A(X) = B(Y) with deg A = DA, deg B = DB
    Solve { x: String, y: String, da: usize, db: usize },
    /// Deck transformation group of X
    Deck { x: String },
    /// Whether X is a Galois covering
    Galois { x: String },
    /// Whether V is equivariant for the group generated by the given Möbius maps
    Equivariant { v: String, gens: Vec<String> },
    /// Closure of a set of Möbius maps
    Closure { gens: Vec<String> },
    /// Whether K(X) ∩ K(Y) has index deg X * deg Y
    Minimal { x: String, y: String },
    /// Equivariance conditions for X with Y = U(V)
    Thm1 { x: String, y: String, v: String, u: String },
    /// Recognize Y = σ(z^s R(z^n))
    Thm2 { y: String, n: usize },
    /// Common points with non-coprime multiplicities
    Thm5 { x: String, y: String },
    /// Reduction of A(X) = B(Y) with B Galois
    Thm8 { x: String, y: String, a: String, b: String },
    /// Böttcher coordinate of H at 0
    Boettcher { h: String },
    /// Transition functions of H at 0
    Transition { h: String },
    /// Run an assertion corpus
    Corpus { path: PathBuf },
}

/// Exit codes: 0 success, 1 negative verdict, 2 undecided, 3 usage or parse error.
struct Outcome {
    verdict: String,
    code: u8,
    fields: Map<String, Value>,
}

impl Outcome {
    fn new(verdict: impl Into<String>, code: u8) -> Outcome {
        Outcome { verdict: verdict.into(), code, fields: Map::new() }
    }

    fn with(mut self, key: &str, v: impl Into<Value>) -> Outcome {
        self.fields.insert(key.to_string(), v.into());
        self
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconclusive(_) | Error::KernelTooLarge(_) | Error::ExceedsBound { .. } => 2,
        Error::CompositumNotFull(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => Outcome::new("error", exit_code(&e)).with("error", e.to_string()),
    };
    match cli.format {
        Format::Text => {
            println!("verdict: {}", out.verdict);
            for (k, v) in &out.fields {
                match v {
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
        Format::Structured => {
            let doc = json!({
                "version": OUTPUT_VERSION,
                "tool_version": env!("CARGO_PKG_VERSION"),
                "field": cli.field,
                "verdict": out.verdict,
                "exit_code": out.code,
                "result": Value::Object(out.fields),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    ExitCode::from(out.code)
}

fn strings<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn run(cli: &Cli) -> luroth_core::Result<Outcome> {
    if let Command::Corpus { path } = &cli.command {
        let report = run_corpus(path)?;
        let code = if report.all_pass() { 0 } else { 1 };
        let verdict = if report.all_pass() { "pass" } else { "fail" };
        let doc = serde_json::to_value(&report).unwrap();
        return Ok(Outcome::new(verdict, code).with("report", doc));
    }
    let k = parse_field(&cli.field)?;
    let f = |s: &str| parse_ratfun(s, &k);
    let moebius = |s: &str| -> luroth_core::Result<Moebius> {
        Moebius::from_ratfun(&f(s)?).ok_or_else(|| Error::Precondition(format!("{s} is not a Möbius map")))
    };
    let closure_bound = cli.bound.unwrap_or(DEFAULT_CLOSURE_BOUND);
    let group = |gens: &[String]| {
        let g: luroth_core::Result<Vec<Moebius>> = gens.iter().map(|s| moebius(s)).collect();
        group_closure(&k, &g?, closure_bound)
    };
    Ok(match &cli.command {
        Command::Compositum { x, y } => {
            let c = compositum(&f(x)?, &f(y)?)?;
            let verdict = if c.is_full() { "full" } else { "proper" };
            Outcome::new(verdict, if c.is_full() { 0 } else { 1 })
                .with("degree", c.degree)
                .with("generator", c.generator.to_string())
                .with("route", format!("{:?}", c.route))
        }
        Command::Member { h, x } => match left_membership(&f(h)?, &f(x)?) {
            Some(a) => Outcome::new("member", 0).with("A", a.to_string()),
            None => Outcome::new("not_member", 1),
        },
        Command::Solve { x, y, da, db } => {
            let s = solve_ax_eq_by(&f(x)?, &f(y)?, *da, *db)?;
            let verdict = if s.is_empty() {
                "empty"
            } else if s.is_family() {
                "family"
            } else {
                "unique"
            };
            let sols: Vec<Value> = s
                .solutions
                .iter()
                .map(|p| json!({"A": p.a.to_string(), "B": p.b.to_string(), "H": p.h.to_string()}))
                .collect();
            Outcome::new(verdict, if s.is_empty() { 1 } else { 0 })
                .with("kernel_dim", s.kernel_dim)
                .with("max_outer_degree", s.max_outer_degree)
                .with("solutions", sols)
        }
        Command::Deck { x } => {
            let d = deck_group(&f(x)?, cli.bound.unwrap_or(DEFAULT_SAMPLE_BUDGET))?;
            let (verdict, code) = if d.is_complete() { ("complete", 0) } else { ("lower_bound", 2) };
            Outcome::new(verdict, code)
                .with("order", d.group.order())
                .with("elements", strings(d.group.elements()))
                .with("completeness", format!("{:?}", d.completeness))
        }
        Command::Galois { x } => {
            let g = is_galois(&f(x)?)?;
            Outcome::new(if g.is_galois { "galois" } else { "not_galois" }, if g.is_galois { 0 } else { 1 })
                .with("degree", g.degree)
                .with("deck_order", g.deck_order)
                .with("deck_complete", g.deck_complete)
                .with("profile_uniform", g.profile_uniform)
        }
        Command::Equivariant { v, gens } => {
            let g = group(gens)?;
            match equivariance_solve(&f(v)?, &g) {
                Some(w) => {
                    let phi: Vec<Value> = w.phi.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect();
                    Outcome::new(if w.injective { "injective" } else { "non_injective" }, 0)
                        .with("phi", phi)
                        .with("homomorphism", w.homomorphism)
                }
                None => Outcome::new("none", 1).with("group_order", g.order()),
            }
        }
        Command::Closure { gens } => {
            let g = group(gens)?;
            let mut o = Outcome::new("finite", 0).with("order", g.order()).with("elements", strings(g.elements()));
            if let Ok(t) = classify_group(&g) {
                o = o.with("type", t.to_string());
            }
            o
        }
        Command::Minimal { x, y } => match minimal_intersection_decide(&f(x)?, &f(y)?)? {
            MinimalDecision::Yes { h, a, b, .. } => {
                Outcome::new("yes", 0).with("H", h.to_string()).with("A", a.to_string()).with("B", b.to_string())
            }
            MinimalDecision::No { reason } => Outcome::new("no", 1).with("reason", reason),
            MinimalDecision::Undecided { kernel_dim } => Outcome::new("undecided", 2).with("kernel_dim", kernel_dim),
        },
        Command::Thm1 { x, y, v, u } => {
            let r = theorem1_check(&f(x)?, &f(y)?, &f(v)?, &f(u)?)?;
            let mut o = Outcome::new(if r.all_pass() { "pass" } else { "fail" }, if r.all_pass() { 0 } else { 1 })
                .with("condition1_u_galois", r.condition1_u_galois.to_string())
                .with("condition2_equivariance", r.condition2_equivariance.to_string())
                .with("condition3_group_order", r.condition3_group_order.to_string());
            if let Some(c) = &r.constructed {
                o = o.with("H", c.h.to_string()).with("A", c.a.to_string()).with("B", c.b.to_string());
            }
            if let Some(e) = &r.construction_error {
                o = o.with("construction_error", e.clone());
            }
            o
        }
        Command::Thm2 { y, n } => match theorem2_recognize(&f(y)?, *n)? {
            Some(t) => Outcome::new("recognized", 0)
                .with("sigma", t.sigma.to_string())
                .with("s", t.s)
                .with("R", t.r.to_string())
                .with("mu", t.mu.to_string())
                .with("zero_order_hypothesis", t.zero_order_hypothesis)
                .with("indecomposability_checked", t.indecomposability_checked),
            None => Outcome::new("none", 1),
        },
        Command::Thm5 { x, y } => {
            let r = theorem5_obstruction(&f(x)?, &f(y)?)?;
            let pts: Vec<Value> = r.points.iter().map(|(d, a, b)| json!([d.to_string(), a, b])).collect();
            let verdict = if r.intersection_trivial { "intersection_trivial" } else { "no_conclusion" };
            Outcome::new(verdict, if r.intersection_trivial { 1 } else { 0 })
                .with("points", pts)
                .with("compositum_full", r.compositum_full)
        }
        Command::Thm8 { x, y, a, b } => match theorem8_check(&f(x)?, &f(y)?, &f(a)?, &f(b)?)? {
            Theorem8Outcome::Reduced { eta, nu, v, .. } => Outcome::new("reduced", 0)
                .with("eta", eta.to_string())
                .with("nu", nu.to_string())
                .with("V", v.to_string()),
            Theorem8Outcome::Fail(r) => Outcome::new("fail", 1).with("reason", r.to_string()),
        },
        Command::Boettcher { h } => {
            let h: RatFun = f(h)?;
            let b = boettcher_solve(&h, cli.truncation)?;
            let res = boettcher_residual(&h, &b)?;
            Outcome::new("solved", 0).with("beta", b.to_string()).with("residual_zero", res.support().is_empty())
        }
        Command::Transition { h } => {
            let g = transition_group(&f(h)?, cli.truncation)?;
            let ok = g.is_closed()? && g.is_abelian()?;
            Outcome::new(if ok { "group" } else { "not_group" }, if ok { 0 } else { 1 })
                .with("order", g.order_n)
                .with("elements", strings(&g.elements))
        }
        Command::Corpus { .. } => unreachable!(),
    })
}
