use std::fmt;

use num_integer::Integer;

use crate::algebra::{cyclotomic_polynomial, roots_in_field, Fe, Poly};
use crate::error::{Error, Result};
use crate::lattice::{compositum, good_solution_certify, left_membership, normal_form, GoodSolutionCertificate};
use crate::moebius::{group_closure, standardize, GroupType, Moebius, DEFAULT_CLOSURE_BOUND};
use crate::ratfun::{critical_points, Descriptor, RatFun, SpherePoint};
use crate::verifiers::deck::{deck_group, equivariance_solve, is_galois, moebius_left_solve, EquivarianceWitness};
use crate::verifiers::DEFAULT_SAMPLE_BUDGET;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        *self == Check::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Pass => f.write_str("pass"),
            Check::Fail(d) => write!(f, "fail({d})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Construction {
    /// `X ∘ V = C ∘ X`.
    pub c: RatFun,
    /// Quotient by `<G_X, G_U>` written as `D ∘ X`.
    pub d: RatFun,
    pub a: RatFun,
    pub b: RatFun,
    pub h: RatFun,
    pub certificate: GoodSolutionCertificate,
}

#[derive(Clone, Debug)]
pub struct Theorem1Verdict {
    pub condition1_u_galois: Check,
    pub condition2_equivariance: Check,
    pub condition3_group_order: Check,
    pub constructed: Option<Theorem1Construction>,
    pub construction_error: Option<String>,
}

impl Theorem1Verdict {
    pub fn all_pass(&self) -> bool {
        self.condition1_u_galois.passed()
            && self.condition2_equivariance.passed()
            && self.condition3_group_order.passed()
    }
}

fn galois_check(f: &RatFun) -> Check {
    match is_galois(f) {
        Ok(e) if e.is_galois => Check::Pass,
        Ok(e) => Check::Fail(format!("deck group of order {} for degree {}", e.deck_order, e.degree)),
        Err(e) => Check::Fail(e.to_string()),
    }
}

/// Conditions for `Y = U ∘ V` and Galois X to give a minimal intersection,
/// with the common left multiple built when they hold.
pub fn theorem1_check(x: &RatFun, y: &RatFun, v: &RatFun, u: &RatFun) -> Result<Theorem1Verdict> {
    if u.compose(v) != *y {
        return Err(Error::DecompositionMismatch);
    }
    let k = x.field().clone();
    let gx = deck_group(x, DEFAULT_SAMPLE_BUDGET)?;
    if gx.group.order() != x.degree() {
        return Err(Error::Precondition(format!("X = {x} is not Galois over {}", k.describe())));
    }
    let condition1_u_galois = galois_check(u);
    let condition2_equivariance = match equivariance_solve(v, &gx.group) {
        None => Check::Fail("no Möbius φ(μ) with V∘μ = φ(μ)∘V".into()),
        Some(w) if !w.homomorphism => Check::Fail("φ is not a homomorphism".into()),
        Some(w) if !w.injective => Check::Fail("φ is not injective".into()),
        Some(w) if w.image_group != gx.group => Check::Fail("image of φ is not G_X".into()),
        Some(_) => Check::Pass,
    };
    let gu = if u.degree() >= 2 { Some(deck_group(u, DEFAULT_SAMPLE_BUDGET)?) } else { None };
    let mut gens: Vec<Moebius> = gx.group.elements().to_vec();
    if let Some(g) = &gu {
        gens.extend(g.group.elements().iter().cloned());
    }
    let closure = group_closure(&k, &gens, DEFAULT_CLOSURE_BOUND);
    let condition3_group_order = match (&closure, &gu) {
        (Err(e), _) => Check::Fail(e.to_string()),
        (Ok(g), gu) => {
            let meet = gu.as_ref().map_or(1, |gu| gx.group.intersection(&gu.group).len());
            let want = x.degree() * u.degree();
            if meet != 1 {
                Check::Fail(format!("G_X ∩ G_U has {meet} elements"))
            } else if g.order() != want {
                Check::Fail(format!("|<G_X, G_U>| = {} ≠ {want}", g.order()))
            } else {
                Check::Pass
            }
        }
    };
    let mut verdict = Theorem1Verdict {
        condition1_u_galois,
        condition2_equivariance,
        condition3_group_order,
        constructed: None,
        construction_error: None,
    };
    if !verdict.all_pass() {
        return Ok(verdict);
    }
    let build = || -> Result<Theorem1Construction> {
        let c = left_membership(&x.compose(v), x).ok_or(Error::IdentityFails)?;
        let (_, hu) = normal_form(&standardize(closure.as_ref().unwrap())?.quotient(&k));
        let d = left_membership(&hu, x).ok_or(Error::IdentityFails)?;
        let b = match Moebius::from_ratfun(u) {
            Some(m) => hu.compose(&m.inverse().to_ratfun()),
            None => left_membership(&hu, u).ok_or(Error::IdentityFails)?,
        };
        let a = d.compose(&c);
        let h = a.compose(x);
        if h != b.compose(y) {
            return Err(Error::IdentityFails);
        }
        let certificate = good_solution_certify(x, y, &a, &b)?;
        Ok(Theorem1Construction { c, d, a, b, h, certificate })
    };
    match build() {
        Ok(c) => verdict.constructed = Some(c),
        Err(e) => verdict.construction_error = Some(e.to_string()),
    }
    Ok(verdict)
}

#[derive(Clone, Debug)]
pub struct Theorem2Form {
    pub sigma: Moebius,
    pub s: usize,
    pub r: RatFun,
    /// Möbius map with `Y ∘ ζ_n z = μ ∘ Y`.
    pub mu: Moebius,
    /// Y(0) = 0 with multiplicity at least 2.
    pub zero_order_hypothesis: bool,
    /// Indecomposability of Y is never checked.
    pub indecomposability_checked: bool,
}

impl Theorem2Form {
    /// `σ ∘ z^s R(z^n)`.
    pub fn rebuild(&self, n: usize) -> RatFun {
        let k = self.r.field().clone();
        let inner = RatFun::monomial(&k, self.s).mul(&self.r.compose(&RatFun::monomial(&k, n)));
        self.sigma.to_ratfun().compose(&inner)
    }
}

/// Substitute `w = z^n` back: the rational function R with `R(z^n) = f`.
fn unpower(f: &RatFun, n: usize) -> Option<RatFun> {
    let k = f.field().clone();
    let take = |p: &Poly| -> Option<Poly> {
        let mut c = vec![];
        for (i, a) in p.coeffs().iter().enumerate() {
            if i % n == 0 {
                c.push(a.clone());
            } else if !a.is_zero() {
                return None;
            }
        }
        Some(Poly::new(&k, c))
    };
    RatFun::new(take(f.num())?, take(f.den())?).ok()
}

/// Write Y as `σ ∘ z^s R(z^n)` with `gcd(s, n) = 1`, if it has that form.
pub fn theorem2_recognize(y: &RatFun, n: usize) -> Result<Option<Theorem2Form>> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    if y.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let k = y.field().clone();
    let zeta = k.primitive_root_of_unity(n as u32).ok_or_else(|| Error::FieldTooSmall {
        min_poly: Poly::new(&k, cyclotomic_polynomial(n as u32).into_iter().map(|c| k.from_q(c)).collect()).to_string(),
    })?;
    let zero = SpherePoint::Finite(k.zero());
    let zero_order_hypothesis = y.eval(&zero) == zero && y.multiplicity_at(&zero)? >= 2;
    let rot = Moebius::scaling(&zeta);
    let Some(mu) = moebius_left_solve(&y.compose(&rot.to_ratfun()), y) else { return Ok(None) };
    if mu.is_identity() {
        return Ok(None);
    }
    let fp = mu.fixed_points().map_err(|q| Error::FieldTooSmall { min_poly: q.to_string() })?;
    let p1 = y.eval(&zero);
    let Some(p2) = fp.iter().find(|p| **p != p1).cloned() else { return Ok(None) };
    let sigma = match (&p1, &p2) {
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => Moebius::new(b.clone(), a.clone(), k.one(), k.one())?,
        (SpherePoint::Finite(a), SpherePoint::Infinity) => Moebius::translation(a),
        (SpherePoint::Infinity, SpherePoint::Finite(b)) => Moebius::new(b.clone(), k.one(), k.one(), k.zero())?,
        _ => return Ok(None),
    };
    let yhat = sigma.inverse().to_ratfun().compose(y);
    // yhat(ζ z) = λ yhat(z) with λ = ζ^s
    let conj = sigma.inverse().compose(&mu).compose(&sigma);
    let [a, b, c, d] = conj.entries();
    if !b.is_zero() || !c.is_zero() {
        return Ok(None);
    }
    let lambda: Fe = a / d;
    let Some(s) = (0..n).find(|&s| zeta.pow(s as u64) == lambda) else { return Ok(None) };
    if s.gcd(&n) != 1 {
        return Ok(None);
    }
    let shifted = yhat.div(&RatFun::monomial(&k, s))?;
    let Some(r) = unpower(&shifted, n) else { return Ok(None) };
    let form = Theorem2Form { sigma, s, r, mu, zero_order_hypothesis, indecomposability_checked: false };
    Ok((form.rebuild(n) == *y).then_some(form))
}

#[derive(Clone, Debug)]
pub struct Theorem5Report {
    /// Common critical points where the multiplicities share a factor.
    pub points: Vec<(Descriptor, usize, usize)>,
    pub compositum_full: bool,
    /// Certified `K(X) ∩ K(Y) = K`: the compositum is full and `points` is nonempty.
    pub intersection_trivial: bool,
}

pub fn theorem5_obstruction(x: &RatFun, y: &RatFun) -> Result<Theorem5Report> {
    if x.degree() < 2 || y.degree() < 2 {
        return Err(Error::Precondition("both functions need degree at least 2".into()));
    }
    let cx = critical_points(x)?;
    let cy = critical_points(y)?;
    let mut points = vec![];
    for px in &cx {
        for py in &cy {
            if px.multiplicity.gcd(&py.multiplicity) == 1 {
                continue;
            }
            match (px.at.finite_poly(), py.at.finite_poly()) {
                (None, None) => points.push((px.at.clone(), px.multiplicity, py.multiplicity)),
                (Some(f), Some(g)) => {
                    let h = f.gcd(&g);
                    if h.degree() > 0 {
                        for d in Descriptor::split(h) {
                            points.push((d, px.multiplicity, py.multiplicity));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    let compositum_full = compositum(x, y)?.is_full();
    let intersection_trivial = compositum_full && !points.is_empty();
    Ok(Theorem5Report { points, compositum_full, intersection_trivial })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem8Failure {
    DegreeMismatch,
    BNotGalois,
    XNotGalois,
    NoEta,
    VNotEquivariant,
}

impl fmt::Display for Theorem8Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem8Failure::DegreeMismatch => "degree_mismatch",
            Theorem8Failure::BNotGalois => "B_not_galois",
            Theorem8Failure::XNotGalois => "X_not_galois",
            Theorem8Failure::NoEta => "no_eta",
            Theorem8Failure::VNotEquivariant => "V_not_equivariant",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Theorem8Outcome {
    Reduced { eta: Moebius, nu: Moebius, v: RatFun, witness: EquivarianceWitness },
    Fail(Theorem8Failure),
}

/// η with `B ∘ η = ν ∘ X`, built from standardizations of `G_B` and `G_X`.
fn find_eta(x: &RatFun, b: &RatFun) -> Option<Moebius> {
    let k = x.field().clone();
    let gx = deck_group(x, DEFAULT_SAMPLE_BUDGET).ok()?;
    let gb = deck_group(b, DEFAULT_SAMPLE_BUDGET).ok()?;
    let sx = standardize(&gx.group).ok()?;
    let sb = standardize(&gb.group).ok()?;
    if sx.kind != sb.kind {
        return None;
    }
    // match the flip constants k/z of the two standard dihedral groups
    let mut sigma_b = sb.sigma.clone();
    if let (Some(cx), Some(cb)) = (&sx.flip_constant, &sb.flip_constant) {
        if cx != cb {
            let ratio = cb / cx;
            let sq = Poly::new(&k, vec![-&ratio, k.zero(), k.one()]);
            let s = roots_in_field(&sq).into_iter().next()?;
            sigma_b = sigma_b.compose(&Moebius::scaling(&s));
        }
    }
    let eta = sigma_b.compose(&sx.sigma.inverse());
    moebius_left_solve(&b.compose(&eta.to_ratfun()), x).map(|_| eta)
}

/// Reduction of a solution with Galois B and `deg B = deg X` to a
/// G_X-equivariant V with `Y = η ∘ V`.
pub fn theorem8_check(x: &RatFun, y: &RatFun, a: &RatFun, b: &RatFun) -> Result<Theorem8Outcome> {
    if a.compose(x) != b.compose(y) {
        return Err(Error::IdentityFails);
    }
    if b.degree() != x.degree() {
        return Ok(Theorem8Outcome::Fail(Theorem8Failure::DegreeMismatch));
    }
    if !matches!(is_galois(b), Ok(e) if e.is_galois) {
        return Ok(Theorem8Outcome::Fail(Theorem8Failure::BNotGalois));
    }
    if !matches!(is_galois(x), Ok(e) if e.is_galois) {
        return Ok(Theorem8Outcome::Fail(Theorem8Failure::XNotGalois));
    }
    let Some(mut eta) = find_eta(x, b) else { return Ok(Theorem8Outcome::Fail(Theorem8Failure::NoEta)) };
    let mut v = eta.inverse().to_ratfun().compose(y);
    // With G_X in standard cyclic position, rescale so that V has leading coefficient 1.
    let gx = deck_group(x, DEFAULT_SAMPLE_BUDGET)?;
    if let Ok(sx) = standardize(&gx.group) {
        if matches!(sx.kind, GroupType::Cyclic(_)) && sx.sigma.is_identity() && v.num().degree() > v.den().degree() {
            let c = &v.num().lc() / &v.den().lc();
            let scaled = eta.compose(&Moebius::scaling(&c));
            if moebius_left_solve(&b.compose(&scaled.to_ratfun()), x).is_some() {
                eta = scaled;
                v = eta.inverse().to_ratfun().compose(y);
            }
        }
    }
    let Some(nu) = moebius_left_solve(&b.compose(&eta.to_ratfun()), x) else {
        return Ok(Theorem8Outcome::Fail(Theorem8Failure::NoEta));
    };
    match equivariance_solve(&v, &gx.group) {
        Some(witness) => Ok(Theorem8Outcome::Reduced { eta, nu, v, witness }),
        None => Ok(Theorem8Outcome::Fail(Theorem8Failure::VNotEquivariant)),
    }
}

#[derive(Clone, Debug)]
pub struct AbhyankarReport {
    /// `(t0, mult_t0 H, mult_X(t0) A, mult_Y(t0) B)`.
    pub rows: Vec<(SpherePoint, usize, usize, usize)>,
    pub holds: bool,
}

/// `mult_t0 H = lcm(mult_X(t0) A, mult_Y(t0) B)` at the given points, by
/// default the K-rational critical points of H and ∞.
pub fn abhyankar_check(
    h: &RatFun,
    a: &RatFun,
    b: &RatFun,
    x: &RatFun,
    y: &RatFun,
    points: Option<&[SpherePoint]>,
) -> Result<AbhyankarReport> {
    if a.compose(x) != *h || b.compose(y) != *h {
        return Err(Error::IdentityFails);
    }
    let cert = good_solution_certify(x, y, a, b)?;
    if !cert.is_good() {
        return Err(Error::NotGoodSolution(format!("{:?}", cert.verdict)));
    }
    let pts: Vec<SpherePoint> = match points {
        Some(p) => p.to_vec(),
        None => {
            let mut v: Vec<SpherePoint> =
                critical_points(h)?.into_iter().filter_map(|c| c.at.point().cloned()).collect();
            if !v.contains(&SpherePoint::Infinity) {
                v.push(SpherePoint::Infinity);
            }
            v
        }
    };
    let mut rows = vec![];
    let mut holds = true;
    for p in pts {
        let mh = h.multiplicity_at(&p)?;
        let ma = a.multiplicity_at(&x.eval(&p))?;
        let mb = b.multiplicity_at(&y.eval(&p))?;
        holds &= mh == ma.lcm(&mb);
        rows.push((p, mh, ma, mb));
    }
    Ok(AbhyankarReport { rows, holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct So2Result {
    pub holds: bool,
    pub involution: bool,
}

/// `B ∘ Y = B ∘ (Y ∘ μ)`.
pub fn so2_verify(b: &RatFun, y: &RatFun, mu: &Moebius) -> Result<So2Result> {
    if b.is_constant() || y.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let lhs = b.compose(y);
    let rhs = b.compose(&y.compose(&mu.to_ratfun()));
    let involution = !mu.is_identity() && mu.compose(mu).is_identity();
    Ok(So2Result { holds: lhs == rhs, involution })
}
