use crate::algebra::Field;
use crate::lattice::{homogeneous_basis, poly_from, poly_kernel, sample_points};
use crate::ratfun::RatFun;

/// `A` with `A ∘ X = H`, if `H ∈ K(X)`.
///
/// Solves `num(H) Q_h(X) - den(H) P_h(X) = 0` for the coefficients of
/// `A = P/Q` of degree `deg H / deg X`, then verifies the composition.
pub fn left_membership(h: &RatFun, x: &RatFun) -> Option<RatFun> {
    if h.is_constant() || x.is_constant() || !h.degree().is_multiple_of(x.degree()) {
        return None;
    }
    let k = h.field().clone();
    let m = h.degree() / x.degree();
    let basis = homogeneous_basis(x, m);
    let mut cols = Vec::with_capacity(2 * m + 2);
    for e in &basis {
        cols.push(-&(h.den() * e));
    }
    for e in &basis {
        cols.push(h.num() * e);
    }
    for v in poly_kernel(&k, &cols) {
        let p = poly_from(&k, &v[..=m]);
        let q = poly_from(&k, &v[m + 1..]);
        if q.is_zero() {
            continue;
        }
        let a = match RatFun::new(p, q) {
            Ok(a) => a,
            Err(_) => continue,
        };
        if a.degree() == m && a.compose(x) == *h {
            return Some(a);
        }
    }
    None
}

/// Fiber divisibility screen: for a few sample values, the fiber of `V` through
/// `z0` must lie inside the fiber of `Y`.
fn fibers_nest(k: &Field, y: &RatFun, v: &RatFun) -> bool {
    let mut checked = 0;
    for z0 in sample_points(k).take(40) {
        let (Some(cy), Some(cv)) = (y.eval_fe(&z0), v.eval_fe(&z0)) else { continue };
        let fy = y.num() - &y.den().scale(&cy);
        let fv = v.num() - &v.den().scale(&cv);
        if fy.degree() != y.degree() || fv.degree() != v.degree() {
            continue;
        }
        if !fv.divides(&fy) {
            return false;
        }
        checked += 1;
        if checked == 3 {
            break;
        }
    }
    true
}

/// `U` with `U ∘ V = Y`, if `V` is a right compositional factor of `Y`.
pub fn right_factor_test(y: &RatFun, v: &RatFun) -> Option<RatFun> {
    if y.is_constant() || v.is_constant() || !y.degree().is_multiple_of(v.degree()) {
        return None;
    }
    if !fibers_nest(y.field(), y, v) {
        return None;
    }
    left_membership(y, v)
}
