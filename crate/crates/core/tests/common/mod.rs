//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use luroth_core::algebra::{BiPoly, Fe, Field, Poly};
use luroth_core::moebius::{Moebius, MoebiusGroup};
use luroth_core::ratfun::RatFun;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded(name: &str, seed: u64) -> ChaCha8Rng {
    eprintln!("[{name}] seed = {seed}");
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_q(rng: &mut ChaCha8Rng, k: &Field, lo: i64, hi: i64) -> Fe {
    let n = rng.gen_range(lo..=hi);
    let d = rng.gen_range(1..=3);
    &k.from_int(n) / &k.from_int(d)
}

pub fn nonzero_q(rng: &mut ChaCha8Rng, k: &Field) -> Fe {
    loop {
        let c = small_q(rng, k, -4, 4);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Polynomial of exact degree `d` with small rational coefficients.
pub fn rand_poly(rng: &mut ChaCha8Rng, k: &Field, d: usize) -> Poly {
    let mut c: Vec<Fe> = (0..d).map(|_| small_q(rng, k, -4, 4)).collect();
    c.push(nonzero_q(rng, k));
    Poly::new(k, c)
}

/// Rational function of degree exactly `d`.
pub fn rand_ratfun(rng: &mut ChaCha8Rng, k: &Field, d: usize) -> RatFun {
    loop {
        let dn = d;
        let dd = rng.gen_range(0..=d);
        let (num, den) = if rng.gen_bool(0.5) { (dn, dd) } else { (dd, dn) };
        if let Ok(f) = RatFun::new(rand_poly(rng, k, num), rand_poly(rng, k, den)) {
            if f.degree() == d {
                return f;
            }
        }
    }
}

pub fn rand_moebius(rng: &mut ChaCha8Rng, k: &Field) -> Moebius {
    loop {
        let e: Vec<Fe> = (0..4).map(|_| small_q(rng, k, -3, 3)).collect();
        if let Ok(m) = Moebius::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return m;
        }
    }
}

/// Oracle for deck groups: Möbius maps μ whose factor `(cz+d)t - (az+b)`
/// divides the reduced fiber polynomial, with a, b, c, d ranging over 0 and
/// the roots of unity of K (a cyclotomic field or Q), plus the identity.
pub fn linear_fiber_factors(x: &RatFun) -> Vec<Moebius> {
    let k = x.field().clone();
    // the roots of unity of Q(zeta_m) are ±zeta_m^j
    let mut units = vec![k.zero()];
    let m = k.cyclotomic_order().unwrap_or(1);
    let g = if m > 1 { k.gen() } else { k.one() };
    for j in 0..m as u64 {
        for s in [k.one(), -k.one()] {
            let p = &s * &g.pow(j);
            if !units.contains(&p) {
                units.push(p);
            }
        }
    }
    let reduced = x.fiber_polynomial_reduced().poly;
    let mut found = vec![Moebius::identity(&k)];
    for a in &units {
        for b in &units {
            for c in &units {
                for d in &units {
                    let Ok(m) = Moebius::new(a.clone(), b.clone(), c.clone(), d.clone()) else { continue };
                    // one representative per projective class, then a cheap sample test
                    if m.entries() != [a, b, c, d] || found.contains(&m) {
                        continue;
                    }
                    let vanishes_at = |z0: i64| {
                        let z0 = k.from_int(z0);
                        let den = &(c * &z0) + d;
                        den.is_zero() || reduced.eval_z(&z0).eval(&(&(&(a * &z0) + b) / &den)).is_zero()
                    };
                    if !(vanishes_at(2) && vanishes_at(5)) {
                        continue;
                    }
                    let l =
                        BiPoly::new(&k, vec![Poly::new(&k, vec![-b, -a]), Poly::new(&k, vec![d.clone(), c.clone()])]);
                    if reduced.div_exact(&l).is_some() {
                        found.push(m);
                    }
                }
            }
        }
    }
    found
}

pub fn same_set(g: &MoebiusGroup, v: &[Moebius]) -> bool {
    g.order() == v.len() && v.iter().all(|m| g.contains(m))
}

/// `T_n` from integer coefficient vectors, independent of the library.
pub fn chebyshev_oracle(k: &Field, n: usize) -> RatFun {
    let mut t: Vec<Vec<i64>> = vec![vec![1], vec![0, 1]];
    for m in 2..=n {
        let mut next = vec![0i64; m + 1];
        for (i, c) in t[m - 1].iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, c) in t[m - 2].iter().enumerate() {
            next[i] -= c;
        }
        t.push(next);
    }
    RatFun::from_poly(Poly::from_ints(k, &t[n]))
}
