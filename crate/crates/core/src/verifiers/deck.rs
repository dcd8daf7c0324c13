use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{roots_in_field, Fe};
use crate::error::{Error, Result};
use crate::lattice::{left_membership, normal_form, poly_kernel};
use crate::moebius::{standardize, Moebius, MoebiusGroup};
use crate::ratfun::{critical_data, RamificationProfile, RatFun, SpherePoint};

pub const DEFAULT_SAMPLE_BUDGET: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    /// Only the deck transformations defined over K were found.
    LowerBound(String),
}

#[derive(Clone, Debug)]
pub struct DeckGroupResult {
    pub group: MoebiusGroup,
    pub completeness: Completeness,
}

impl DeckGroupResult {
    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }
}

struct BaseFiber {
    point: Fe,
    roots: Vec<Fe>,
    split: bool,
}

/// Möbius map sending p1, p2, p3 to 0, ∞, 1.
fn to_standard_triple(p: [&Fe; 3]) -> Moebius {
    let a = p[2] - p[1];
    let c = p[2] - p[0];
    Moebius::new(a.clone(), -&(p[0] * &a), c.clone(), -&(p[1] * &c)).unwrap()
}

/// Deck transformations of X over K, found by matching three base fibers.
///
/// Base points are 0, 1, 2, ... skipping poles, critical values and values
/// shared with ∞. A deck map sends each base point into its own fiber, and
/// three point images determine it, so all candidates are enumerated and
/// verified. Fibers that split over K make the result complete.
pub fn deck_group(x: &RatFun, sample_budget: usize) -> Result<DeckGroupResult> {
    if x.degree() < 2 {
        return Err(Error::Precondition("deck groups need degree at least 2".into()));
    }
    let k = x.field().clone();
    let n = x.degree();
    let mut fibers: Vec<BaseFiber> = vec![];
    let mut values: Vec<Fe> = vec![];
    for i in 0..sample_budget as i64 {
        let z0 = k.from_int(i);
        let Some(c) = x.eval_fe(&z0) else { continue };
        if values.contains(&c) || x.value_at_infinity() == SpherePoint::Finite(c.clone()) {
            continue;
        }
        let f = x.num() - &x.den().scale(&c);
        if f.degree() != n || f.squarefree_part().degree() != n {
            continue;
        }
        values.push(c);
        let roots = roots_in_field(&f);
        let split = roots.len() == n;
        fibers.push(BaseFiber { point: z0, roots, split });
        if fibers.iter().filter(|b| b.split).count() >= 3 {
            break;
        }
    }
    if fibers.len() < 3 {
        return Err(Error::NoSuitableBasePoints);
    }
    fibers.sort_by_key(|b| !b.split);
    let base = &fibers[..3];
    let complete = base.iter().all(|b| b.split);
    let lp = to_standard_triple([&base[0].point, &base[1].point, &base[2].point]);
    let probe = k.from_int(-7);
    let mut found = vec![];
    for q0 in &base[0].roots {
        for q1 in &base[1].roots {
            for q2 in &base[2].roots {
                let mu = to_standard_triple([q0, q1, q2]).inverse().compose(&lp);
                let img = mu.apply(&SpherePoint::Finite(probe.clone()));
                if x.eval(&img) != x.eval(&SpherePoint::Finite(probe.clone())) {
                    continue;
                }
                if x.compose(&mu.to_ratfun()) == *x {
                    found.push(mu);
                }
            }
        }
    }
    let completeness = if complete || (found.len() == 1 && rigid_points(x)? >= 3) {
        Completeness::Complete
    } else {
        Completeness::LowerBound("nonsplit_fiber".into())
    };
    Ok(DeckGroupResult { group: MoebiusGroup::from_elements(found), completeness })
}

/// Number of points (over the algebraic closure) that every deck
/// transformation fixes because each is the only point of its multiplicity in
/// its fiber over a critical value. Three of them force the group to be trivial.
fn rigid_points(x: &RatFun) -> Result<usize> {
    let profile = critical_data(x)?;
    Ok(profile
        .entries
        .iter()
        .map(|e| {
            let lonely = e.multiset.iter().filter(|&&m| e.multiset.iter().filter(|&&o| o == m).count() == 1).count();
            e.value.size() * lonely
        })
        .sum())
}

/// ν with `w = ν ∘ v`, from the linear condition `num(w)(c v + d) = den(w)(a v + b)`.
pub fn moebius_left_solve(w: &RatFun, v: &RatFun) -> Option<Moebius> {
    if w.degree() != v.degree() || v.is_constant() {
        return None;
    }
    let k = v.field().clone();
    let cols = vec![-&(w.den() * v.num()), -&(w.den() * v.den()), w.num() * v.num(), w.num() * v.den()];
    let ker = poly_kernel(&k, &cols);
    let e = ker.first()?;
    let nu = Moebius::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()).ok()?;
    (nu.to_ratfun().compose(v) == *w).then_some(nu)
}

#[derive(Clone, Debug)]
pub struct GaloisEvidence {
    pub degree: usize,
    pub deck_order: usize,
    pub deck_complete: bool,
    /// Every critical value has all local degrees above it equal.
    pub profile_uniform: bool,
    pub is_galois: bool,
}

/// Whether X is a Galois covering, with two independent pieces of evidence:
/// the deck group order and the uniformity of the ramification profile.
pub fn is_galois(x: &RatFun) -> Result<GaloisEvidence> {
    if x.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let degree = x.degree();
    if degree == 1 {
        return Ok(GaloisEvidence {
            degree,
            deck_order: 1,
            deck_complete: true,
            profile_uniform: true,
            is_galois: true,
        });
    }
    let deck = deck_group(x, DEFAULT_SAMPLE_BUDGET)?;
    let profile_uniform = critical_data(x)?.is_uniform();
    let deck_order = deck.group.order();
    let by_group = deck_order == degree;
    if by_group && !profile_uniform {
        return Err(Error::Inconclusive(format!("deck group of order {degree} but non-uniform ramification for {x}")));
    }
    let is_galois = if by_group || deck.is_complete() {
        by_group
    } else if !profile_uniform {
        false
    } else {
        return Err(Error::Inconclusive(format!(
            "fibers of {x} do not split over {}; found {deck_order} of up to {degree} deck maps",
            k_name(x)
        )));
    };
    Ok(GaloisEvidence { degree, deck_order, deck_complete: deck.is_complete(), profile_uniform, is_galois })
}

fn k_name(x: &RatFun) -> String {
    x.field().describe()
}

/// `2 + Σ (1/d_i - 1) = 2/n` summed over critical values, for a uniform profile.
pub fn galois_riemann_hurwitz(p: &RamificationProfile) -> bool {
    let mut lhs = BigRational::from_integer(2.into());
    for e in &p.entries {
        let d = BigRational::from_integer(e.multiset[0].into());
        let term = d.recip() - BigRational::one();
        lhs += term * BigRational::from_integer(e.value.size().into());
    }
    let rhs = BigRational::from_integer(2.into()) / BigRational::from_integer(p.degree.into());
    !rhs.is_zero() && lhs == rhs
}

#[derive(Clone, Debug)]
pub struct EquivarianceWitness {
    /// Pairs `(μ, φ(μ))` with `V ∘ μ = φ(μ) ∘ V`.
    pub phi: Vec<(Moebius, Moebius)>,
    pub injective: bool,
    pub homomorphism: bool,
    pub image_group: MoebiusGroup,
}

impl EquivarianceWitness {
    pub fn image_of(&self, mu: &Moebius) -> Option<&Moebius> {
        self.phi.iter().find(|(m, _)| m == mu).map(|(_, p)| p)
    }
}

/// φ with `V ∘ μ = φ(μ) ∘ V` for every μ in G, if V is G-equivariant.
pub fn equivariance_solve(v: &RatFun, g: &MoebiusGroup) -> Option<EquivarianceWitness> {
    let mut phi = vec![];
    for mu in g.elements() {
        let w = v.compose(&mu.to_ratfun());
        phi.push((mu.clone(), moebius_left_solve(&w, v)?));
    }
    let image = |m: &Moebius| phi.iter().find(|(a, _)| a == m).map(|(_, b)| b.clone());
    let mut homomorphism = true;
    for (m1, p1) in &phi {
        for (m2, p2) in &phi {
            if image(&m1.compose(m2)) != Some(p1.compose(p2)) {
                homomorphism = false;
            }
        }
    }
    let images: Vec<Moebius> = phi.iter().map(|(_, p)| p.clone()).collect();
    let image_group = MoebiusGroup::from_elements(images);
    let injective = image_group.order() == g.order();
    Some(EquivarianceWitness { phi, injective, homomorphism, image_group })
}

/// `X = X̂ ∘ T` with T the quotient map of a subgroup of the deck group.
pub fn subgroup_factorization(x: &RatFun, sub: &MoebiusGroup) -> Result<(RatFun, RatFun)> {
    for mu in sub.elements() {
        if x.compose(&mu.to_ratfun()) != *x {
            return Err(Error::Precondition(format!("{mu} is not a deck transformation of {x}")));
        }
    }
    if !sub.is_closed() {
        return Err(Error::Precondition("subgroup is not closed under composition".into()));
    }
    let k = x.field().clone();
    let (_, t) = normal_form(&standardize(sub)?.quotient(&k));
    let xhat = left_membership(x, &t).ok_or(Error::DecompositionMismatch)?;
    Ok((t, xhat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Poly};
    use crate::moebius::group_closure;

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        let k = Field::rationals();
        RatFun::new(Poly::from_ints(&k, n), Poly::from_ints(&k, d)).unwrap()
    }

    #[test]
    fn deck_examples() {
        let k4 = Field::cyclotomic(4);
        let d = deck_group(&RatFun::monomial(&k4, 4), 25).unwrap();
        assert_eq!(d.group.order(), 4);
        assert!(d.is_complete());
        let j = deck_group(&rf(&[1, 0, 1], &[0, 1]), 25).unwrap();
        assert_eq!(j.group.order(), 2);
        assert!(j.is_complete());
        let y = deck_group(&rf(&[1, -1], &[-1, 0, 0, 0, 1]), 25).unwrap();
        assert_eq!(y.group.order(), 1);
    }

    #[test]
    fn galois_tests() {
        let k3 = Field::cyclotomic(3);
        let mut n = vec![k3.zero(); 7];
        n[0] = k3.one();
        n[6] = k3.one();
        let y = RatFun::new(Poly::new(&k3, n), Poly::monomial(k3.one(), 3)).unwrap();
        let e = is_galois(&y).unwrap();
        assert!(e.is_galois && e.profile_uniform);
        assert_eq!(e.deck_order, 6);
        assert!(galois_riemann_hurwitz(&critical_data(&y).unwrap()));
        assert!(!is_galois(&rf(&[1, -1], &[-1, 0, 0, 0, 1])).unwrap().is_galois);
        assert!(matches!(is_galois(&RatFun::monomial(&Field::rationals(), 3)), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn equivariance() {
        let k = Field::rationals();
        let neg = Moebius::scaling(&k.from_int(-1));
        let g = group_closure(&k, std::slice::from_ref(&neg), 100).unwrap();
        let w = equivariance_solve(&rf(&[0, 1, 0, 1], &[1]), &g).unwrap();
        assert!(w.injective && w.homomorphism);
        assert_eq!(w.image_of(&neg).unwrap(), &neg);
        let klein = group_closure(&k, &[Moebius::inversion(&k)], 100).unwrap();
        assert!(equivariance_solve(&rf(&[1, -1], &[-1, 0, 0, 0, 1]), &klein).is_none());
    }

    #[test]
    fn subgroup_quotients() {
        let k3 = Field::cyclotomic(3);
        let z6 = RatFun::monomial(&k3, 6);
        let sub = group_closure(&k3, &[Moebius::scaling(&k3.gen())], 100).unwrap();
        let (t, xhat) = subgroup_factorization(&z6, &sub).unwrap();
        assert_eq!(t.to_string(), "z^3");
        assert_eq!(xhat.to_string(), "z^2");
    }
}
