//! Subfields of K(z) generated by rational functions: compositum, membership
//! of a function in K(X), the equation `A ∘ X = B ∘ Y`, and the minimal
//! degree intersection test.

mod certificate;
mod compositum;
mod membership;
mod solver;

pub use certificate::{
    good_solution_certify, intersection_via_groups, minimal_intersection_decide, GoodSolutionCertificate,
    GroupIntersection, MinimalDecision, Verdict,
};
pub use compositum::{compositum, CompositumResult, CompositumRoute};
pub use membership::{left_membership, right_factor_test};
pub use solver::{solve_ax_eq_by, solve_ax_eq_by_with, SolutionPair, SolverOptions, SolverOutcome};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{linalg, Fe, Field, Poly, Q};
use crate::moebius::Moebius;
use crate::ratfun::RatFun;

/// Normal form in the orbit `{ν ∘ f}` of left Möbius composition.
///
/// The value `f(∞)` is sent to ∞, the numerator is made monic, and the
/// numerator coefficient of degree `deg den` is cleared (for polynomials this
/// is the constant term). Returns `(ν, ν ∘ f)`.
pub fn normal_form(f: &RatFun) -> (Moebius, RatFun) {
    let k = f.field().clone();
    let mut nu = Moebius::identity(&k);
    let mut g = f.clone();
    let push = |m: Moebius, g: &mut RatFun, nu: &mut Moebius| {
        *g = m.to_ratfun().compose(g);
        *nu = m.compose(nu);
    };
    if g.num().degree() <= g.den().degree() && !g.is_constant() {
        if g.num().degree() == g.den().degree() {
            let c = &g.num().lc() / &g.den().lc();
            push(Moebius::translation(&-&c), &mut g, &mut nu);
        }
        push(Moebius::inversion(&k), &mut g, &mut nu);
    }
    let lc = g.num().lc();
    if !lc.is_one() {
        push(Moebius::scaling(&lc.inv().unwrap()), &mut g, &mut nu);
    }
    let c = g.num().coeff(g.den().degree());
    if !c.is_zero() {
        push(Moebius::translation(&-&c), &mut g, &mut nu);
    }
    (nu, g)
}

/// `num^i den^(m-i)` for `i = 0..=m`, all scaled by one common constant.
/// Over Q the numerator and denominator are first made integral.
pub(crate) fn homogeneous_basis(x: &RatFun, m: usize) -> Vec<Poly> {
    let k = x.field();
    let (num, den) = if k.is_rationals() {
        let l = x
            .num()
            .coeffs()
            .iter()
            .chain(x.den().coeffs())
            .filter_map(|c| c.as_rational())
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let l = k.from_q(Q::from_integer(l));
        (x.num().scale(&l), x.den().scale(&l))
    } else {
        (x.num().clone(), x.den().clone())
    };
    let mut np = vec![Poly::one(k)];
    let mut dp = vec![Poly::one(k)];
    for i in 1..=m {
        np.push(&np[i - 1] * &num);
        dp.push(&dp[i - 1] * &den);
    }
    (0..=m).map(|i| &np[i] * &dp[m - i]).collect()
}

/// Kernel of the linear map sending a coefficient vector to `Σ v_i cols_i`.
pub(crate) fn poly_kernel(k: &Field, cols: &[Poly]) -> Vec<Vec<Fe>> {
    let rows = cols.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let m: linalg::Matrix = (0..rows).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    linalg::kernel(k, &m, cols.len())
}

pub(crate) fn poly_from(k: &Field, c: &[Fe]) -> Poly {
    Poly::new(k, c.to_vec())
}

/// Rational function of numerator degree ≤ `dn` and denominator degree ≤ `dd`
/// through the given points, if the interpolation problem has a solution.
pub fn rational_interpolate(k: &Field, xs: &[Fe], ys: &[Fe], dn: usize, dd: usize) -> Option<RatFun> {
    let cols = dn + dd + 2;
    let m: linalg::Matrix = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| {
            let mut row = Vec::with_capacity(cols);
            let mut p = k.one();
            for _ in 0..=dn {
                row.push(p.clone());
                p = &p * x;
            }
            let mut p = k.one();
            for _ in 0..=dd {
                row.push(-&(&p * y));
                p = &p * x;
            }
            row
        })
        .collect();
    for v in linalg::kernel(k, &m, cols) {
        let num = poly_from(k, &v[..=dn]);
        let den = poly_from(k, &v[dn + 1..]);
        if den.is_zero() {
            continue;
        }
        let f = RatFun::new(num, den).ok()?;
        if xs.iter().zip(ys.iter()).all(|(x, y)| f.eval_fe(x).as_ref() == Some(y)) {
            return Some(f);
        }
    }
    None
}

/// Sample points 0, 1, -1, 2, -2, ... as field elements.
pub(crate) fn sample_points(k: &Field) -> impl Iterator<Item = Fe> + '_ {
    (0i64..).map(move |i| k.from_int(if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }))
}
