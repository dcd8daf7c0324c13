use crate::error::{Error, Result};
use crate::lattice::{compositum, left_membership, normal_form, solve_ax_eq_by};
use crate::moebius::{group_closure, standardize, GroupType, MoebiusGroup, DEFAULT_CLOSURE_BOUND};
use crate::ratfun::RatFun;
use crate::verifiers::{deck_group, DEFAULT_SAMPLE_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Good,
    NotGood(String),
}

/// Record of which conditions of a good solution were verified. Of the three
/// sufficient conditions (irreducible fiber product of A and B, no common
/// right factor of X and Y, matching degrees) the first is not checked; the
/// verdict is good when the other two hold.
#[derive(Clone, Debug)]
pub struct GoodSolutionCertificate {
    pub x: RatFun,
    pub y: RatFun,
    pub a: RatFun,
    pub b: RatFun,
    pub identity_holds: bool,
    pub deg_a_eq_deg_y: bool,
    pub deg_b_eq_deg_x: bool,
    pub no_common_right_factor: bool,
    pub compositum_degree: usize,
    pub conditions_used: Vec<&'static str>,
    pub verdict: Verdict,
}

impl GoodSolutionCertificate {
    pub fn is_good(&self) -> bool {
        self.verdict == Verdict::Good
    }
}

pub fn good_solution_certify(x: &RatFun, y: &RatFun, a: &RatFun, b: &RatFun) -> Result<GoodSolutionCertificate> {
    if [x, y, a, b].iter().any(|f| f.is_constant()) {
        return Err(Error::ConstantFunction);
    }
    if a.compose(x) != b.compose(y) {
        return Err(Error::IdentityFails);
    }
    let deg_a_eq_deg_y = a.degree() == y.degree();
    let deg_b_eq_deg_x = b.degree() == x.degree();
    let comp = compositum(x, y)?;
    let no_common_right_factor = comp.is_full();
    let mut failures = vec![];
    if !deg_b_eq_deg_x {
        failures.push(format!("deg B {} ≠ deg X {}", b.degree(), x.degree()));
    }
    if !deg_a_eq_deg_y {
        failures.push(format!("deg A {} ≠ deg Y {}", a.degree(), y.degree()));
    }
    if !no_common_right_factor {
        failures.push(format!("X and Y have a common right factor of degree {}", comp.degree));
    }
    let mut conditions_used = vec![];
    if deg_a_eq_deg_y && deg_b_eq_deg_x {
        conditions_used.push("degrees");
    }
    if no_common_right_factor {
        conditions_used.push("no_common_right_factor");
    }
    let verdict = if failures.is_empty() { Verdict::Good } else { Verdict::NotGood(failures.join("; ")) };
    Ok(GoodSolutionCertificate {
        x: x.clone(),
        y: y.clone(),
        a: a.clone(),
        b: b.clone(),
        identity_holds: true,
        deg_a_eq_deg_y,
        deg_b_eq_deg_x,
        no_common_right_factor,
        compositum_degree: comp.degree,
        conditions_used,
        verdict,
    })
}

#[derive(Clone, Debug)]
pub enum MinimalDecision {
    /// `[K(z) : K(X) ∩ K(Y)] = deg X deg Y`, witnessed by `H = A ∘ X = B ∘ Y`.
    Yes {
        h: RatFun,
        a: RatFun,
        b: RatFun,
        certificate: Box<GoodSolutionCertificate>,
    },
    No {
        reason: String,
    },
    Undecided {
        kernel_dim: usize,
    },
}

/// Decide whether `K(X) ∩ K(Y)` has index `deg X · deg Y` in K(z), assuming
/// `K(X, Y) = K(z)`. Only degrees `(deg Y, deg X)` are searched: in the
/// minimal case these are forced.
pub fn minimal_intersection_decide(x: &RatFun, y: &RatFun) -> Result<MinimalDecision> {
    if x.degree() < 2 || y.degree() < 2 {
        return Err(Error::Precondition("both functions need degree at least 2".into()));
    }
    let comp = compositum(x, y)?;
    if !comp.is_full() {
        return Err(Error::CompositumNotFull(comp.degree));
    }
    let out = match solve_ax_eq_by(x, y, y.degree(), x.degree()) {
        Ok(o) => o,
        Err(Error::KernelTooLarge(k)) => return Ok(MinimalDecision::Undecided { kernel_dim: k }),
        Err(e) => return Err(e),
    };
    let Some(sol) = out.solutions.first() else {
        return Ok(MinimalDecision::No {
            reason: format!("no A, B of degrees ({}, {}) with A∘X = B∘Y", y.degree(), x.degree()),
        });
    };
    if sol.a.degree() != y.degree() || sol.b.degree() != x.degree() {
        return Ok(MinimalDecision::No {
            reason: format!("intersection generator has degree {} < {}", sol.h.degree(), x.degree() * y.degree()),
        });
    }
    let cert = good_solution_certify(x, y, &sol.a, &sol.b)?;
    if !cert.is_good() {
        return Err(Error::NotGoodSolution(format!("{:?}", cert.verdict)));
    }
    Ok(MinimalDecision::Yes { h: sol.h.clone(), a: sol.a.clone(), b: sol.b.clone(), certificate: Box::new(cert) })
}

#[derive(Clone, Debug)]
pub struct GroupIntersection {
    pub group: MoebiusGroup,
    pub kind: GroupType,
    pub h: RatFun,
    pub a: RatFun,
    pub b: RatFun,
    /// `G_X ∩ G_Y = {e}`.
    pub trivial_intersection: bool,
    /// `|<G_X, G_Y>| = deg X · deg Y`.
    pub order_matches: bool,
}

impl GroupIntersection {
    pub fn minimal(&self) -> bool {
        self.trivial_intersection && self.order_matches
    }
}

/// For Galois X and Y: `K(X) ∩ K(Y) = K(H)` with H the quotient by `<G_X, G_Y>`.
pub fn intersection_via_groups(x: &RatFun, y: &RatFun) -> Result<GroupIntersection> {
    let k = x.field().clone();
    let gx = deck_group(x, DEFAULT_SAMPLE_BUDGET)?;
    let gy = deck_group(y, DEFAULT_SAMPLE_BUDGET)?;
    for (f, g, name) in [(x, &gx, "X"), (y, &gy, "Y")] {
        if g.group.order() != f.degree() {
            return Err(Error::Precondition(format!(
                "{name} is not Galois over {} (deck group of order {} for degree {})",
                k.describe(),
                g.group.order(),
                f.degree()
            )));
        }
    }
    let gens: Vec<_> = gx.group.elements().iter().chain(gy.group.elements()).cloned().collect();
    let group = match group_closure(&k, &gens, DEFAULT_CLOSURE_BOUND) {
        Ok(g) => g,
        Err(Error::ExceedsBound { infinite_witness: Some(w), .. }) => return Err(Error::InfiniteGroup(w)),
        Err(e) => return Err(e),
    };
    let std = standardize(&group)?;
    let (_, h) = normal_form(&std.quotient(&k));
    let a = left_membership(&h, x).ok_or(Error::IdentityFails)?;
    let b = left_membership(&h, y).ok_or(Error::IdentityFails)?;
    let trivial_intersection = gx.group.intersection(&gy.group).len() == 1;
    let order_matches = group.order() == x.degree() * y.degree();
    Ok(GroupIntersection { kind: std.kind, group, h, a, b, trivial_intersection, order_matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Poly};

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        let k = Field::rationals();
        RatFun::new(Poly::from_ints(&k, n), Poly::from_ints(&k, d)).unwrap()
    }

    #[test]
    fn certificates() {
        let k = Field::rationals();
        let z2 = RatFun::monomial(&k, 2);
        let z3 = RatFun::monomial(&k, 3);
        assert!(good_solution_certify(&z2, &z3, &z3, &z2).unwrap().is_good());
        let j = rf(&[1, 0, 1], &[0, 1]);
        let y = rf(&[1, -1], &[-1, 0, 0, 0, 1]);
        let b = rf(&[0, 1, 3, 3, 1], &[1]);
        let a = left_membership(&b.compose(&y), &j).unwrap();
        let c = good_solution_certify(&j, &y, &a, &b).unwrap();
        match c.verdict {
            Verdict::NotGood(r) => assert!(r.contains("deg B 4 ≠ deg X 2")),
            Verdict::Good => panic!("expected not good"),
        }
        assert_eq!(good_solution_certify(&z2, &z3, &z2, &z3).unwrap_err(), Error::IdentityFails);
    }

    #[test]
    fn decisions() {
        let k = Field::rationals();
        let z2 = RatFun::monomial(&k, 2);
        match minimal_intersection_decide(&z2, &RatFun::monomial(&k, 3)).unwrap() {
            MinimalDecision::Yes { h, .. } => assert_eq!(h.to_string(), "z^6"),
            other => panic!("{other:?}"),
        }
        let j = rf(&[1, 0, 1], &[0, 1]);
        let y = rf(&[1, -1], &[-1, 0, 0, 0, 1]);
        assert!(matches!(minimal_intersection_decide(&j, &y).unwrap(), MinimalDecision::No { .. }));
        assert_eq!(
            minimal_intersection_decide(&z2, &RatFun::monomial(&k, 4)).unwrap_err(),
            Error::CompositumNotFull(2)
        );
    }

    #[test]
    fn via_groups() {
        let k = Field::rationals();
        let j = rf(&[1, 0, 1], &[0, 1]);
        let r = intersection_via_groups(&j, &RatFun::monomial(&k, 2)).unwrap();
        assert_eq!(r.h, rf(&[1, 0, 0, 0, 1], &[0, 0, 1]));
        assert!(r.minimal());
        let k3 = Field::cyclotomic(3);
        let z2 = RatFun::monomial(&k3, 2);
        let mut n = vec![k3.zero(); 7];
        n[0] = k3.one();
        n[6] = k3.one();
        let y = RatFun::new(Poly::new(&k3, n), Poly::monomial(k3.one(), 3)).unwrap();
        let r = intersection_via_groups(&z2, &y).unwrap();
        assert_eq!(r.group.order(), 12);
        assert!(r.minimal());
        assert_eq!(r.h.to_string(), "(z^12 + 1)/z^6");
    }
}
