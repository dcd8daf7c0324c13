use crate::algebra::{BiPoly, Fe, Poly};
use crate::error::{Error, Result};
use crate::lattice::{left_membership, normal_form, rational_interpolate, sample_points};
use crate::ratfun::{RatFun, SpherePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositumRoute {
    /// Gcds of specialized fiber polynomials, coefficients interpolated in z.
    Specialized,
    /// Primitive pseudo-remainder gcd in K[z][t].
    Bivariate,
}

#[derive(Clone, Debug)]
pub struct CompositumResult {
    /// `[K(z) : K(X, Y)]`.
    pub degree: usize,
    /// Generator W with `K(W) = K(X, Y)`, in normal form.
    pub generator: RatFun,
    /// `N_W(t, z)`: the minimal polynomial of z over `K(X, Y)` up to a factor in K[z].
    pub gcd_poly: BiPoly,
    pub route: CompositumRoute,
}

impl CompositumResult {
    pub fn is_full(&self) -> bool {
        self.degree == 1
    }
}

/// Monic gcd of the fibers of X and Y through `z0`, or None when `z0` is a pole
/// or shares its fiber with ∞.
fn fiber_gcd(x: &RatFun, y: &RatFun, z0: &Fe) -> Option<Poly> {
    let fiber = |f: &RatFun| -> Option<Poly> {
        let c = f.eval_fe(z0)?;
        if f.value_at_infinity() == SpherePoint::Finite(c.clone()) {
            return None;
        }
        Some(f.num() - &f.den().scale(&c))
    };
    Some(fiber(x)?.gcd(&fiber(y)?).monic())
}

fn specialized(x: &RatFun, y: &RatFun) -> Option<RatFun> {
    let k = x.field().clone();
    let mut best: Option<usize> = None;
    let mut samples: Vec<(Fe, Poly)> = vec![];
    for z0 in sample_points(&k).take(400) {
        let Some(g) = fiber_gcd(x, y, &z0) else { continue };
        let d = g.degree();
        match best {
            Some(b) if d > b => continue,
            Some(b) if d < b => samples.clear(),
            _ => {}
        }
        best = Some(d);
        samples.push((z0, g));
        if samples.len() >= 2 * d + 4 {
            break;
        }
    }
    let d = best?;
    if samples.len() < 2 * d + 4 {
        return None;
    }
    let j = (0..d).find(|&j| samples.iter().any(|(_, g)| g.coeff(j) != samples[0].1.coeff(j)))?;
    let xs: Vec<Fe> = samples.iter().map(|(z, _)| z.clone()).collect();
    let ys: Vec<Fe> = samples.iter().map(|(_, g)| g.coeff(j)).collect();
    let w = rational_interpolate(&k, &xs, &ys, d, d)?;
    (w.degree() == d).then_some(w)
}

fn bivariate(x: &RatFun, y: &RatFun) -> Option<RatFun> {
    let g = x.fiber_polynomial().poly.gcd(&y.fiber_polynomial().poly).primitive_part();
    let c = g.coeffs();
    for i in 0..c.len() {
        for j in 0..c.len() {
            if i == j || c[i].is_zero() || c[j].is_zero() {
                continue;
            }
            let w = RatFun::new(c[i].clone(), c[j].clone()).ok()?;
            if !w.is_constant() {
                return Some(w);
            }
        }
    }
    None
}

/// `K(X, Y)` as `K(W)`, with `[K(z) : K(X, Y)] = deg W`.
pub fn compositum(x: &RatFun, y: &RatFun) -> Result<CompositumResult> {
    if x.is_constant() || y.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let verified = |w: RatFun| -> Option<RatFun> {
        let (_, w) = normal_form(&w);
        (left_membership(x, &w).is_some() && left_membership(y, &w).is_some()).then_some(w)
    };
    let (w, route) = match specialized(x, y).and_then(verified) {
        Some(w) => (w, CompositumRoute::Specialized),
        None => {
            let w = bivariate(x, y)
                .and_then(verified)
                .ok_or_else(|| Error::Precondition("compositum generator could not be verified".into()))?;
            (w, CompositumRoute::Bivariate)
        }
    };
    Ok(CompositumResult { degree: w.degree(), gcd_poly: w.fiber_polynomial().poly, generator: w, route })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn mono(n: usize) -> RatFun {
        RatFun::monomial(&Field::rationals(), n)
    }

    #[test]
    fn monomial_oracle() {
        for a in 1..=6usize {
            for b in 1..=6usize {
                let c = compositum(&mono(a), &mono(b)).unwrap();
                let g = num_integer::gcd(a, b);
                assert_eq!(c.degree, g, "({a},{b})");
                assert_eq!(c.generator, mono(g));
            }
        }
    }

    #[test]
    fn routes_agree() {
        let k = Field::rationals();
        let x = RatFun::new(Poly::from_ints(&k, &[1, 0, 0, 0, 1]), Poly::from_ints(&k, &[0, 0, 1])).unwrap();
        let y = RatFun::monomial(&k, 6);
        let c = compositum(&x, &y).unwrap();
        assert_eq!(c.degree, 2);
        assert_eq!(c.route, CompositumRoute::Specialized);
        let (_, w) = normal_form(&bivariate(&x, &y).unwrap());
        assert_eq!(w, c.generator);
        assert!(x.fiber_polynomial().poly.div_exact(&c.gcd_poly).is_some());
        assert!(c.gcd_poly.div_exact(&BiPoly::t_minus_z(&k)).is_some());
    }
}
