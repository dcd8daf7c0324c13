use crate::algebra::{linalg, Fe, Field, Poly};
use crate::error::{Error, Result};
use crate::lattice::{homogeneous_basis, left_membership, normal_form, poly_from, poly_kernel, sample_points};
use crate::ratfun::{RatFun, SpherePoint};

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Largest kernel dimension handled by the structured search.
    pub kernel_threshold: usize,
    /// Number of base points tried by the fiber closure before giving up.
    pub attempts: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { kernel_threshold: 6, attempts: 12 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionPair {
    pub a: RatFun,
    pub b: RatFun,
    /// `A ∘ X = B ∘ Y`.
    pub h: RatFun,
    /// Representative chosen by left Möbius normalization of H.
    pub canonical: bool,
}

#[derive(Clone, Debug)]
pub struct SolverOutcome {
    pub kernel_dim: usize,
    /// One representative per solution class (empty when there is none).
    pub solutions: Vec<SolutionPair>,
    /// Largest `deg T` such that `(T ∘ A, T ∘ B)` stays within the degree
    /// bounds; values above 1 mean a family `T ∘ (A, B)` of solutions.
    pub max_outer_degree: usize,
}

impl SolverOutcome {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn is_family(&self) -> bool {
        self.max_outer_degree > 1
    }
}

/// Columns `e_i(X) f_j(Y)` of the linear map on matrices `M_ij`, row-major in (i, j).
fn bilinear_columns(x: &RatFun, y: &RatFun, da: usize, db: usize) -> Vec<Poly> {
    let ex = homogeneous_basis(x, da);
    let fy = homogeneous_basis(y, db);
    let mut cols = Vec::with_capacity((da + 1) * (db + 1));
    for e in &ex {
        for f in &fy {
            cols.push(e * f);
        }
    }
    cols
}

fn apply_columns(k: &Field, cols: &[Poly], v: &[Fe]) -> Poly {
    let mut acc = Poly::zero(k);
    for (c, x) in cols.iter().zip(v) {
        if !x.is_zero() {
            acc = &acc + &c.scale(x);
        }
    }
    acc
}

/// `M = p sᵀ - q rᵀ` for `A = P/Q`, `B = R/S`, padded to the degree bounds.
fn solution_matrix(k: &Field, a: &RatFun, b: &RatFun, da: usize, db: usize) -> Vec<Fe> {
    let mut m = vec![k.zero(); (da + 1) * (db + 1)];
    for i in 0..=da {
        for j in 0..=db {
            let t1 = &a.num().coeff(i) * &b.den().coeff(j);
            let t2 = &a.den().coeff(i) * &b.num().coeff(j);
            m[i * (db + 1) + j] = &t1 - &t2;
        }
    }
    m
}

/// Rank-two decomposition of a kernel matrix into `(A, B)`.
fn decompose(k: &Field, v: &[Fe], da: usize, db: usize) -> Option<(RatFun, RatFun)> {
    let m: linalg::Matrix = (0..=da).map(|i| v[i * (db + 1)..(i + 1) * (db + 1)].to_vec()).collect();
    if linalg::rank(&m) != 2 {
        return None;
    }
    let column = |j: usize| -> Vec<Fe> { (0..=da).map(|i| m[i][j].clone()).collect() };
    // two independent columns span {p, q}
    let j1 = (0..=db).find(|&j| column(j).iter().any(|x| !x.is_zero()))?;
    let c1 = column(j1);
    let j2 = (0..=db).find(|&j| {
        let c = column(j);
        linalg::rank(&vec![c1.clone(), c]) == 2
    })?;
    let c2 = column(j2);
    let basis: linalg::Matrix = (0..=da).map(|i| vec![c1[i].clone(), c2[i].clone()]).collect();
    let mut s = vec![];
    let mut r = vec![];
    for j in 0..=db {
        let coords = linalg::solve(k, &basis, &column(j))?;
        s.push(coords[0].clone());
        r.push(-&coords[1]);
    }
    let (p, q) = (poly_from(k, &c1), poly_from(k, &c2));
    let (rp, sp) = (poly_from(k, &r), poly_from(k, &s));
    if q.is_zero() || sp.is_zero() {
        return None;
    }
    let a = RatFun::new(p, q).ok()?;
    let b = RatFun::new(rp, sp).ok()?;
    (!a.is_constant() && !b.is_constant()).then_some((a, b))
}

/// Fiber of `f` through `z0` as a monic squarefree polynomial, when it is
/// finite and unramified.
fn clean_fiber(f: &RatFun, z0: &Fe) -> Option<Poly> {
    let c = f.eval_fe(z0)?;
    if f.value_at_infinity() == SpherePoint::Finite(c.clone()) {
        return None;
    }
    let p = f.num() - &f.den().scale(&c);
    (p.squarefree_part().degree() == p.degree()).then(|| p.monic())
}

/// Roots t with `f(t) = f(s)` for some root s of `set`, as a squarefree polynomial.
fn saturate(f: &RatFun, set: &Poly) -> Poly {
    let k = f.field();
    let bound = set.degree() * f.degree();
    let mut xs = vec![];
    let mut ys = vec![];
    for t in sample_points(k) {
        if xs.len() == bound + 1 {
            break;
        }
        // N_f(t, s) as a polynomial in s
        let ns = &f.den().scale(&f.num().eval(&t)) - &f.num().scale(&f.den().eval(&t));
        ys.push(set.resultant(&ns));
        xs.push(t);
    }
    let r = Poly::interpolate(k, &xs, &ys);
    if r.is_zero() {
        return set.clone();
    }
    r.squarefree_part().monic().lcm(set).monic()
}

/// Smallest set containing the X-fiber of `z0` and closed under X- and
/// Y-fibers; None once its size exceeds `max_deg`.
fn fiber_closure(x: &RatFun, y: &RatFun, z0: &Fe, max_deg: usize) -> Option<Poly> {
    let mut s = clean_fiber(x, z0)?;
    loop {
        let before = s.degree();
        s = saturate(y, &s);
        if s.degree() > max_deg {
            return None;
        }
        s = saturate(x, &s);
        if s.degree() > max_deg {
            return None;
        }
        if s.degree() == before {
            return Some(s);
        }
    }
}

enum Closure {
    /// Some fiber closure exceeds the degree bound: no solution exists.
    TooLarge,
    Found(RatFun, RatFun, RatFun),
    Failed,
}

/// Generator of `K(X) ∩ K(Y)` from two fiber closures, if it has degree ≤ `max_deg`.
fn closure_search(x: &RatFun, y: &RatFun, max_deg: usize, attempts: usize) -> Closure {
    let k = x.field();
    let mut fibers: Vec<Poly> = vec![];
    let mut tried = 0;
    for z0 in sample_points(k).take(60) {
        if clean_fiber(x, &z0).is_none() || clean_fiber(y, &z0).is_none() {
            continue;
        }
        if fibers.iter().any(|f| f.eval(&z0).is_zero()) {
            continue;
        }
        tried += 1;
        if tried > attempts {
            break;
        }
        let Some(f) = fiber_closure(x, y, &z0, max_deg) else {
            // the closure is contained in every fiber of every solution
            return Closure::TooLarge;
        };
        for g in &fibers {
            if g.degree() != f.degree() || !g.gcd(&f).is_one() {
                continue;
            }
            let Ok(h) = RatFun::new(f.clone(), g.clone()) else { continue };
            if h.degree() != f.degree() {
                continue;
            }
            if let (Some(a), Some(b)) = (left_membership(&h, x), left_membership(&h, y)) {
                return Closure::Found(h, a, b);
            }
        }
        fibers.push(f);
    }
    Closure::Failed
}

fn canonical_pair(h: &RatFun, a: &RatFun, b: &RatFun) -> SolutionPair {
    let (nu, h) = normal_form(h);
    let nu = nu.to_ratfun();
    SolutionPair { a: nu.compose(a), b: nu.compose(b), h, canonical: true }
}

pub fn solve_ax_eq_by(x: &RatFun, y: &RatFun, deg_a: usize, deg_b: usize) -> Result<SolverOutcome> {
    solve_ax_eq_by_with(x, y, deg_a, deg_b, SolverOptions::default())
}

/// All solutions of `A ∘ X = B ∘ Y` with `deg A ≤ deg_a`, `deg B ≤ deg_b`,
/// modulo `(A, B) ~ (ν ∘ A, ν ∘ B)`.
///
/// Every solution gives a matrix `M_ij = p_i s_j - q_i r_j` of rank two in
/// the kernel of `M ↦ Σ M_ij X^i Y^j`. A one-dimensional kernel is decomposed
/// directly. Larger kernels are resolved by computing the generator of
/// `K(X) ∩ K(Y)` from fiber closures; every solution is `T ∘` that one.
pub fn solve_ax_eq_by_with(
    x: &RatFun,
    y: &RatFun,
    deg_a: usize,
    deg_b: usize,
    opts: SolverOptions,
) -> Result<SolverOutcome> {
    if x.is_constant() || y.is_constant() {
        return Err(Error::ConstantFunction);
    }
    if deg_a == 0 || deg_b == 0 {
        return Err(Error::Precondition("degree bounds must be at least 1".into()));
    }
    let k = x.field().clone();
    let cols = bilinear_columns(x, y, deg_a, deg_b);
    let ker = poly_kernel(&k, &cols);
    let kernel_dim = ker.len();
    let empty = SolverOutcome { kernel_dim, solutions: vec![], max_outer_degree: 0 };
    if kernel_dim == 0 {
        return Ok(empty);
    }
    let outer = |a: &RatFun, b: &RatFun| (deg_a / a.degree()).min(deg_b / b.degree());
    if kernel_dim == 1 {
        let Some((a, b)) = decompose(&k, &ker[0], deg_a, deg_b) else { return Ok(empty) };
        let h = a.compose(x);
        if h != b.compose(y) {
            return Err(Error::IdentityFails);
        }
        let sol = canonical_pair(&h, &a, &b);
        return Ok(SolverOutcome { kernel_dim, max_outer_degree: outer(&sol.a, &sol.b), solutions: vec![sol] });
    }
    if kernel_dim > opts.kernel_threshold {
        return Err(Error::KernelTooLarge(kernel_dim));
    }
    let max_deg = (deg_a * x.degree()).min(deg_b * y.degree());
    match closure_search(x, y, max_deg, opts.attempts) {
        Closure::TooLarge => Ok(empty),
        Closure::Failed => Err(Error::KernelTooLarge(kernel_dim)),
        Closure::Found(h, a, b) => {
            let m = solution_matrix(&k, &a, &b, deg_a, deg_b);
            if !apply_columns(&k, &cols, &m).is_zero() {
                return Err(Error::IdentityFails);
            }
            let sol = canonical_pair(&h, &a, &b);
            Ok(SolverOutcome { kernel_dim, max_outer_degree: outer(&sol.a, &sol.b), solutions: vec![sol] })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        let k = Field::rationals();
        RatFun::new(Poly::from_ints(&k, n), Poly::from_ints(&k, d)).unwrap()
    }

    #[test]
    fn monomials() {
        let k = Field::rationals();
        let out = solve_ax_eq_by(&RatFun::monomial(&k, 2), &RatFun::monomial(&k, 3), 3, 2).unwrap();
        assert_eq!(out.solutions.len(), 1);
        assert_eq!(out.solutions[0].a.to_string(), "z^3");
        assert_eq!(out.solutions[0].b.to_string(), "z^2");
        assert_eq!(out.max_outer_degree, 1);
    }

    #[test]
    fn klein_four() {
        let k = Field::rationals();
        let j = rf(&[1, 0, 1], &[0, 1]);
        let out = solve_ax_eq_by(&j, &RatFun::monomial(&k, 2), 2, 2).unwrap();
        let s = &out.solutions[0];
        assert_eq!(s.a, rf(&[-2, 0, 1], &[1]));
        assert_eq!(s.b, j);
    }

    #[test]
    fn no_solution_with_trivial_deck_group() {
        let j = rf(&[1, 0, 1], &[0, 1]);
        let y = rf(&[1, -1], &[-1, 0, 0, 0, 1]);
        let out = solve_ax_eq_by(&j, &y, 4, 2).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn family_when_common_factor() {
        let k = Field::rationals();
        let out = solve_ax_eq_by(&RatFun::monomial(&k, 2), &RatFun::monomial(&k, 4), 4, 2).unwrap();
        assert_eq!(out.solutions[0].h.to_string(), "z^4");
        assert_eq!(out.max_outer_degree, 2);
    }
}
