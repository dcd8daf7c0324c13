//! Structural identities checked over every function defined in the shipped
//! corpus, plus a few seeded random families.

mod common;

use common::*;
use luroth_core::algebra::{Field, Poly};
use luroth_core::boettcher::{boettcher_residual, boettcher_solve, localize, transition_group};
use luroth_core::lattice::{minimal_intersection_decide, normal_form, solve_ax_eq_by, MinimalDecision};
use luroth_core::ratfun::{critical_data, critical_points, Descriptor, RatFun, SpherePoint};
use luroth_core::verifiers::{galois_riemann_hurwitz, is_galois, theorem1_check, theorem5_obstruction};
use luroth_core::workbench::{load_corpus, parse_field, parse_ratfun};
use luroth_core::Error;
use rand::Rng;
use std::path::PathBuf;

const N: usize = 32;

struct Entry {
    id: String,
    defs: Vec<(String, RatFun)>,
    compositum_one: Vec<(String, String)>,
}

impl Entry {
    fn get(&self, name: &str) -> Option<&RatFun> {
        self.defs.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

fn corpus() -> Vec<Entry> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/corpus.toml");
    let c = load_corpus(&path).unwrap();
    c.entries
        .iter()
        .map(|e| {
            let k = parse_field(&e.field).unwrap();
            let defs = e.define.iter().filter_map(|(n, s)| Some((n.clone(), parse_ratfun(s, &k).ok()?))).collect();
            let compositum_one = e
                .assertions
                .iter()
                .filter(|a| a.op == "compositum_degree" && a.expected == "1" && a.args.len() == 2)
                .map(|a| (a.args[0].clone(), a.args[1].clone()))
                .collect();
            Entry { id: e.id.clone(), defs, compositum_one }
        })
        .collect()
}

/// Distinct nonconstant functions across the corpus.
fn corpus_functions() -> Vec<(String, RatFun)> {
    let mut out: Vec<(String, RatFun)> = vec![];
    for e in corpus() {
        for (n, f) in e.defs {
            if !f.is_constant() && !out.iter().any(|(_, g)| *g == f) {
                out.push((format!("{}/{n}", e.id), f));
            }
        }
    }
    out
}

fn is_critical_value(descs: &[Descriptor], c: &SpherePoint) -> bool {
    descs.iter().any(|d| match d {
        Descriptor::Point(p) => p == c,
        Descriptor::Conjugates(g) => c.finite().is_some_and(|x| g.eval(x).is_zero()),
    })
}

#[test]
fn riemann_hurwitz_on_corpus() {
    let fs = corpus_functions();
    assert!(fs.len() >= 50, "only {} corpus functions", fs.len());
    for (name, f) in &fs {
        let d = f.degree();
        let from_points: usize = critical_points(f).unwrap().iter().map(|c| c.at.size() * (c.multiplicity - 1)).sum();
        assert_eq!(from_points, 2 * d - 2, "{name}: {f}");
        assert_eq!(critical_data(f).unwrap().total_ramification(), 2 * d - 2, "{name}: {f}");
    }
}

#[test]
fn fiber_polynomials_on_corpus() {
    for (name, f) in corpus_functions() {
        let full = f.fiber_polynomial();
        assert!(full.poly.diagonal().is_zero(), "{name}");
        assert_eq!(full.poly.deg_t(), f.degree(), "{name}");
        let red = f.fiber_polynomial_reduced();
        assert!(red.reduced);
        assert_eq!(red.poly.deg_t(), f.degree() - 1, "{name}");
    }
}

#[test]
fn noncritical_fibers_are_unramified() {
    let mut checked = 0;
    for (name, f) in corpus_functions() {
        let k = f.field().clone();
        let values: Vec<Descriptor> = critical_data(&f).unwrap().entries.into_iter().map(|e| e.value).collect();
        for c in -3..=3 {
            let c = k.from_int(c);
            if is_critical_value(&values, &SpherePoint::Finite(c.clone())) {
                continue;
            }
            let p = f.num() - &f.den().scale(&c);
            assert!(p.gcd(&p.derivative()).is_constant(), "{name}: fiber over {c} of {f}");
            if p.degree() < f.degree() {
                assert_eq!(f.multiplicity_at(&SpherePoint::Infinity).unwrap(), f.degree() - p.degree());
                assert_eq!(f.degree() - p.degree(), 1, "{name}: ∞ ramified over noncritical {c}");
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn galois_evidence_agrees_on_corpus() {
    let (mut agree, mut inconclusive) = (0, 0);
    for (name, f) in corpus_functions() {
        match is_galois(&f) {
            Ok(ev) => {
                if ev.deck_complete || ev.deck_order == ev.degree {
                    assert_eq!(ev.deck_order == ev.degree, ev.profile_uniform, "{name}: {f} {ev:?}");
                }
                if ev.is_galois && ev.degree > 1 {
                    assert!(galois_riemann_hurwitz(&critical_data(&f).unwrap()), "{name}: {f}");
                }
                agree += 1;
            }
            Err(Error::Inconclusive(_)) => inconclusive += 1,
            Err(e) => panic!("{name}: {e}"),
        }
    }
    eprintln!("galois evidence: {agree} decided, {inconclusive} inconclusive");
    assert!(agree >= 50);
}

#[test]
fn boettcher_residual_on_corpus() {
    let mut solved = 0;
    for (name, f) in corpus_functions() {
        let k = f.field().clone();
        let zero = SpherePoint::Finite(k.zero());
        if f.eval(&zero) != zero || f.multiplicity_at(&zero).unwrap() < 2 {
            continue;
        }
        match boettcher_solve(&f, N) {
            Ok(b) => {
                assert!(boettcher_residual(&f, &b).unwrap().support().is_empty(), "{name}: {f}");
                solved += 1;
            }
            Err(Error::FieldTooSmall { .. }) => {}
            Err(e) => panic!("{name}: {e}"),
        }
    }
    assert!(solved >= 10, "{solved}");
}

/// Compositum degree 1 forces `Γ_X ∩ Γ_Y = {z}` at every common point where
/// both maps are superattracting.
#[test]
fn transition_groups_meet_trivially_for_full_compositum() {
    let mut checked = 0;
    for e in corpus() {
        for (xn, yn) in &e.compositum_one {
            let (Some(x), Some(y)) = (e.get(xn), e.get(yn)) else { continue };
            let k = x.field();
            for p in [SpherePoint::Finite(k.zero()), SpherePoint::Infinity] {
                let (mx, my) = (x.multiplicity_at(&p).unwrap(), y.multiplicity_at(&p).unwrap());
                if mx < 2 || my < 2 {
                    continue;
                }
                let l = num_integer::lcm(mx, my);
                let kl = if l <= 2 { Field::rationals() } else { Field::cyclotomic(l as u32) };
                let lift = |f: &RatFun| localize(f, &p).unwrap().embed(&kl).unwrap();
                let gx = transition_group(&lift(x), N).unwrap();
                let gy = transition_group(&lift(y), N).unwrap();
                let common = gx.elements.iter().filter(|s| gy.elements.contains(s)).count();
                assert_eq!(common, 1, "{}: {xn}, {yn} at {p}", e.id);
                assert!(gx.elements[0].is_identity() && gy.elements[0].is_identity());
                checked += 1;
            }
        }
    }
    assert!(checked >= 5, "{checked}");
}

#[test]
fn theorem5_obstruction_excludes_minimal_solutions() {
    let mut checked = 0;
    for e in corpus() {
        let (Some(x), Some(y)) = (e.get("X"), e.get("Y")) else { continue };
        if x.degree() < 2 || y.degree() < 2 {
            continue;
        }
        let r = theorem5_obstruction(x, y).unwrap();
        if !(r.compositum_full && !r.points.is_empty()) {
            continue;
        }
        match solve_ax_eq_by(x, y, y.degree(), x.degree()) {
            Ok(out) => assert!(out.is_empty(), "{}: {:?}", e.id, out.solutions),
            Err(Error::KernelTooLarge(_)) => continue,
            Err(err) => panic!("{}: {err}", e.id),
        }
        checked += 1;
    }
    assert!(checked >= 1);
}

#[test]
fn theorem1_construction_is_the_minimal_intersection() {
    let q = Field::rationals();
    let k3 = Field::cyclotomic(3);
    let f = |k: &Field, s: &str| parse_ratfun(s, k).unwrap();
    let cases = [(f(&q, "z^2"), f(&q, "z*(z^2+1)"), f(&q, "z+1/z")), (f(&k3, "z^2"), f(&k3, "z"), f(&k3, "z^3+1"))];
    for (x, v, u) in cases {
        let y = u.compose(&v);
        let r = theorem1_check(&x, &y, &v, &u).unwrap();
        assert!(r.all_pass());
        let built = r.constructed.unwrap().h;
        match minimal_intersection_decide(&x, &y).unwrap() {
            MinimalDecision::Yes { h, .. } => assert_eq!(normal_form(&h).1, normal_form(&built).1, "{x}, {y}"),
            d => panic!("{x}, {y}: {d:?}"),
        }
    }
}

#[test]
fn degree_is_multiplicative() {
    let mut rng = seeded("degree_is_multiplicative", 0x5eed_0010);
    let k = Field::rationals();
    for _ in 0..100 {
        let (da, db) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = rand_ratfun(&mut rng, &k, da);
        let b = rand_ratfun(&mut rng, &k, db);
        assert_eq!(a.compose(&b).degree(), da * db, "{a} ∘ {b}");
    }
}

#[test]
fn random_fiber_polynomials_vanish_on_diagonal() {
    let mut rng = seeded("random_fiber_polynomials_vanish_on_diagonal", 0x5eed_0011);
    let k = Field::rationals();
    for _ in 0..30 {
        let d = rng.gen_range(1..=5);
        let f = rand_ratfun(&mut rng, &k, d);
        let fp = f.fiber_polynomial();
        assert!(fp.poly.diagonal().is_zero());
        assert_eq!(fp.poly.deg_t(), d);
        // N_F(t, z0) vanishes at t = z0
        let z0 = k.from_int(rng.gen_range(-5..=5));
        let at: Poly = fp.poly.eval_z(&z0);
        assert!(at.eval(&z0).is_zero(), "{f} at {z0}");
    }
}
