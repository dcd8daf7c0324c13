use luroth_core::algebra::Field;
use luroth_core::lattice::{good_solution_certify, minimal_intersection_decide, MinimalDecision};
use luroth_core::moebius::{group_closure, Moebius, DEFAULT_CLOSURE_BOUND};
use luroth_core::ratfun::{RatFun, SpherePoint};
use luroth_core::verifiers::*;
use luroth_core::workbench::parse_ratfun;
use luroth_core::Error;

fn q() -> Field {
    Field::rationals()
}

fn f(k: &Field, s: &str) -> RatFun {
    parse_ratfun(s, k).unwrap()
}

fn m(k: &Field, s: &str) -> Moebius {
    Moebius::from_ratfun(&f(k, s)).unwrap()
}

#[test]
fn theorem1_klein_four() {
    let k = q();
    let (x, v, u) = (f(&k, "z^2"), f(&k, "z*(z^2+1)"), f(&k, "z+1/z"));
    let y = u.compose(&v);
    let r = theorem1_check(&x, &y, &v, &u).unwrap();
    assert!(r.all_pass(), "{r:?}");
    let c = r.constructed.unwrap();
    assert_eq!(c.h.degree(), 12);
    assert_eq!(c.a.compose(&x), c.b.compose(&y));
    assert!(c.certificate.is_good());
}

#[test]
fn theorem1_cyclic_six() {
    let k = Field::cyclotomic(3);
    let (x, y) = (f(&k, "z^2"), f(&k, "z^3+1"));
    let r = theorem1_check(&x, &y, &f(&k, "z"), &y).unwrap();
    assert!(r.all_pass(), "{r:?}");
    let c = r.constructed.unwrap();
    assert_eq!(c.h.degree(), 6);
    assert_eq!(c.a.compose(&x), c.b.compose(&y));
}

#[test]
fn theorem1_equivariance_fails() {
    let k = q();
    let (x, y) = (f(&k, "z^2"), f(&k, "z^2*(z-1)"));
    let r = theorem1_check(&x, &y, &y, &f(&k, "z")).unwrap();
    assert!(!r.condition2_equivariance.passed());
    assert!(r.constructed.is_none());
    assert_eq!(theorem1_check(&x, &y, &f(&k, "z"), &f(&k, "z")).unwrap_err(), Error::DecompositionMismatch);
}

#[test]
fn theorem2_examples() {
    let k3 = Field::cyclotomic(3);
    let t = theorem2_recognize(&f(&k3, "z^2*(z^3+2)"), 3).unwrap().unwrap();
    assert_eq!(t.s, 2);
    assert!(t.sigma.is_identity());
    assert_eq!(t.r, f(&k3, "z+2"));
    let k = q();
    let t = theorem2_recognize(&f(&k, "z*(z^2+1)^2"), 2).unwrap().unwrap();
    assert_eq!((t.s, t.r.clone()), (1, f(&k, "(z+1)^2")));
    // Y(0) = 0 but only simply; the hypothesis is reported, not enforced
    assert!(!t.zero_order_hypothesis);
    assert!(!t.indecomposability_checked);
    assert!(theorem2_recognize(&f(&k, "z^2*(z-1)"), 2).unwrap().is_none());
    assert!(matches!(theorem2_recognize(&f(&k, "z^3+1"), 3), Err(Error::FieldTooSmall { .. })));
}

#[test]
fn theorem5_examples() {
    let k = q();
    let r = theorem5_obstruction(&f(&k, "z^2"), &f(&k, "z^2*(z-1)")).unwrap();
    let at_zero: Vec<_> = r.points.iter().filter(|p| p.0.point() == Some(&SpherePoint::Finite(k.zero()))).collect();
    assert_eq!(at_zero.len(), 1);
    assert_eq!((at_zero[0].1, at_zero[0].2), (2, 2));
    assert!(r.compositum_full && r.intersection_trivial);
    let r = theorem5_obstruction(&f(&k, "z^2"), &f(&k, "z^3")).unwrap();
    assert!(r.points.is_empty() && !r.intersection_trivial);
    let r = theorem5_obstruction(&f(&k, "z^2"), &f(&k, "z^4+z^2")).unwrap();
    assert!(r.points.iter().any(|p| p.0.point() == Some(&SpherePoint::Finite(k.zero())) && p.1 == 2 && p.2 == 2));
    assert!(!r.compositum_full && !r.intersection_trivial);
}

#[test]
fn theorem8_examples() {
    let k = q();
    let (x, y, a, b) = (f(&k, "z^2"), f(&k, "2*(z^3+z)"), f(&k, "4*(z^3+2*z^2+z)"), f(&k, "z^2"));
    match theorem8_check(&x, &y, &a, &b).unwrap() {
        Theorem8Outcome::Reduced { eta, v, witness, .. } => {
            assert_eq!(eta, m(&k, "2*z"));
            assert_eq!(v, f(&k, "z^3+z"));
            assert!(witness.phi.iter().all(|(g, h)| g == h));
        }
        o => panic!("{o:?}"),
    }
    let r = theorem8_check(&f(&k, "z^3"), &f(&k, "z^3"), &f(&k, "z^2"), &f(&k, "z^2")).unwrap();
    assert!(matches!(r, Theorem8Outcome::Fail(Theorem8Failure::DegreeMismatch)));
    let r = theorem8_check(&f(&k, "z"), &f(&k, "z"), &f(&k, "z^3+z"), &f(&k, "z^3+z")).unwrap();
    assert!(matches!(r, Theorem8Outcome::Fail(Theorem8Failure::DegreeMismatch)));
    let (x, b) = (f(&k, "z^3+z"), f(&k, "z^3+z"));
    let r = theorem8_check(&x, &x, &b, &b).unwrap();
    assert!(matches!(r, Theorem8Outcome::Fail(Theorem8Failure::BNotGalois)));
}

#[test]
fn abhyankar_examples() {
    let k = q();
    let (h, a, b, x, y) = (f(&k, "z^2+1/z^2"), f(&k, "z^2-2"), f(&k, "z+1/z"), f(&k, "z+1/z"), f(&k, "z^2"));
    let one = [SpherePoint::Finite(k.one())];
    let r = abhyankar_check(&h, &a, &b, &x, &y, Some(&one)).unwrap();
    assert_eq!(r.rows[0].1, 2);
    assert_eq!((r.rows[0].2, r.rows[0].3), (1, 2));
    assert!(r.holds);
    assert!(abhyankar_check(&h, &a, &b, &x, &y, None).unwrap().holds);
    let (h, a, b, x, y) = (f(&k, "z^6"), f(&k, "z^3"), f(&k, "z^2"), f(&k, "z^2"), f(&k, "z^3"));
    let pts = [SpherePoint::Finite(k.zero()), SpherePoint::Finite(k.one())];
    let r = abhyankar_check(&h, &a, &b, &x, &y, Some(&pts)).unwrap();
    assert_eq!(r.rows[0].1, 6);
    assert_eq!(r.rows[1].1, 1);
    assert!(r.holds);
    assert_eq!(abhyankar_check(&h, &a, &b, &y, &x, None).unwrap_err(), Error::IdentityFails);
}

#[test]
fn so2_examples() {
    let k = q();
    let r = so2_verify(&f(&k, "z^2"), &f(&k, "z+1"), &m(&k, "-z-2")).unwrap();
    assert!(r.holds && r.involution);
    assert!(so2_verify(&f(&k, "z^2"), &f(&k, "z"), &m(&k, "-z")).unwrap().holds);
    assert!(!so2_verify(&f(&k, "z^3"), &f(&k, "z"), &m(&k, "-z")).unwrap().holds);
}

#[test]
fn equivariance_examples() {
    let k = q();
    let g = group_closure(&k, &[m(&k, "-z")], DEFAULT_CLOSURE_BOUND).unwrap();
    let w = equivariance_solve(&f(&k, "z^3+z"), &g).unwrap();
    assert!(w.injective && w.homomorphism);
    assert_eq!(w.image_of(&m(&k, "-z")), Some(&m(&k, "-z")));
    let flip = group_closure(&k, &[m(&k, "1/z")], DEFAULT_CLOSURE_BOUND).unwrap();
    assert!(equivariance_solve(&f(&k, "(1-z)/(z^4-1)"), &flip).is_none());
    let w = equivariance_solve(&f(&k, "z"), &flip).unwrap();
    assert!(w.phi.iter().all(|(a, b)| a == b));
}

#[test]
fn galois_examples() {
    let k3 = Field::cyclotomic(3);
    let e = is_galois(&f(&k3, "z^3+1/z^3")).unwrap();
    assert!(e.is_galois);
    assert_eq!(e.deck_order, 6);
    assert!(is_galois(&f(&k3, "z^3")).unwrap().is_galois);
    let k = q();
    assert!(!is_galois(&f(&k, "(1-z)/(z^4-1)")).unwrap().is_galois);
    let d = deck_group(&f(&k, "(1-z)/(z^4-1)"), DEFAULT_SAMPLE_BUDGET).unwrap();
    assert!(d.is_complete());
    assert_eq!(d.group.order(), 1);
}

#[test]
fn subgroup_factorizations() {
    let k3 = Field::cyclotomic(3);
    let rot = group_closure(&k3, &[m(&k3, "w*z")], DEFAULT_CLOSURE_BOUND).unwrap();
    let (t, xhat) = subgroup_factorization(&f(&k3, "z^6"), &rot).unwrap();
    assert_eq!((t.clone(), xhat), (f(&k3, "z^3"), f(&k3, "z^2")));
    let (t, xhat) = subgroup_factorization(&f(&k3, "z^3+1/z^3"), &rot).unwrap();
    assert_eq!(t, f(&k3, "z^3"));
    assert_eq!(xhat, f(&k3, "z+1/z"));
    let k = q();
    let neg = group_closure(&k, &[m(&k, "-z")], DEFAULT_CLOSURE_BOUND).unwrap();
    let (t, xhat) = subgroup_factorization(&f(&k, "z^4"), &neg).unwrap();
    assert_eq!((t, xhat), (f(&k, "z^2"), f(&k, "z^2")));
}

#[test]
fn minimal_decisions_carry_good_certificates() {
    let k = q();
    for (x, y) in [("z^2", "z^3"), ("z+1/z", "z^2"), ("2*z^2-1", "4*z^3-3*z")] {
        let (x, y) = (f(&k, x), f(&k, y));
        match minimal_intersection_decide(&x, &y).unwrap() {
            MinimalDecision::Yes { h, a, b, .. } => {
                assert_eq!(h.degree(), x.degree() * y.degree());
                assert!(good_solution_certify(&x, &y, &a, &b).unwrap().is_good());
                assert!(abhyankar_check(&h, &a, &b, &x, &y, None).unwrap().holds);
            }
            d => panic!("{x}, {y}: {d:?}"),
        }
    }
    let d = minimal_intersection_decide(&f(&k, "z+1/z"), &f(&k, "(1-z)/(z^4-1)")).unwrap();
    assert!(matches!(d, MinimalDecision::No { .. }));
    let e = minimal_intersection_decide(&f(&k, "z^2"), &f(&k, "z^4")).unwrap_err();
    assert_eq!(e, Error::CompositumNotFull(2));
}
