//! Rational functions in lowest terms, composition, local multiplicities and
//! fiber polynomials.

mod ramification;

use std::fmt;

pub use ramification::{critical_data, critical_points, CriticalPoint, Descriptor, RamEntry, RamificationProfile};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::poly::{from_integer, int_mul, to_integer};
use crate::algebra::{BiPoly, Fe, Field, Poly};
use crate::error::{Error, Result};

/// A point of the Riemann sphere over K.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SpherePoint {
    Finite(Fe),
    Infinity,
}

impl SpherePoint {
    pub fn finite(&self) -> Option<&Fe> {
        match self {
            SpherePoint::Finite(x) => Some(x),
            SpherePoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(x) => write!(f, "{x}"),
            SpherePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `num/den` with gcd 1 and monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun { den: Poly::one(num.field()), num });
        }
        let g = num.gcd(&den);
        let (mut n, mut d) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        if !d.is_monic() {
            let inv = d.lc().inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RatFun { num: n, den: d })
    }

    /// Build from parts already known to be coprime; only the denominator is made monic.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> RatFun {
        let inv = den.lc().inv().unwrap();
        if inv.is_one() {
            RatFun { num, den }
        } else {
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        let one = Poly::one(p.field());
        RatFun { num: p, den: one }
    }

    pub fn constant(c: Fe) -> RatFun {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn identity(field: &Field) -> RatFun {
        RatFun::from_poly(Poly::x(field))
    }

    /// `z^k`.
    pub fn monomial(field: &Field, k: usize) -> RatFun {
        RatFun::from_poly(Poly::monomial(field.one(), k))
    }

    /// `(a z + b)/(c z + d)`.
    pub fn moebius(a: &Fe, b: &Fe, c: &Fe, d: &Fe) -> Result<RatFun> {
        let f = a.field().clone();
        RatFun::new(Poly::new(&f, vec![b.clone(), a.clone()]), Poly::new(&f, vec![d.clone(), c.clone()]))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.den.is_one() && self.num == Poly::x(self.field())
    }

    pub fn as_constant(&self) -> Option<Fe> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Value at a finite point, `None` at a pole.
    pub fn eval_fe(&self, x: &Fe) -> Option<Fe> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(&self.num.eval(x) / &d)
        }
    }

    pub fn eval(&self, p: &SpherePoint) -> SpherePoint {
        match p {
            SpherePoint::Finite(x) => match self.eval_fe(x) {
                Some(v) => SpherePoint::Finite(v),
                None => SpherePoint::Infinity,
            },
            SpherePoint::Infinity => self.value_at_infinity(),
        }
    }

    pub fn value_at_infinity(&self) -> SpherePoint {
        let (dn, dd) = (self.num.degree(), self.den.degree());
        if self.num.is_zero() || dn < dd {
            SpherePoint::Finite(self.field().zero())
        } else if dn > dd {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(&self.num.lc() / &self.den.lc())
        }
    }

    /// `(P_h(u, v), Q_h(u, v))` where P/Q is self written with formal degree n = deg self.
    fn homogeneous_parts(&self, u: &Poly, v: &Poly) -> (Poly, Poly) {
        if self.field().is_rationals() {
            return self.homogeneous_parts_q(u, v);
        }
        let n = self.degree();
        let mut vp = Vec::with_capacity(n + 1);
        vp.push(Poly::one(self.field()));
        for i in 1..=n {
            let next = &vp[i - 1] * v;
            vp.push(next);
        }
        let eval = |p: &Poly| {
            let mut acc = Poly::constant(p.coeff(n));
            for i in (0..n).rev() {
                acc = &acc * u;
                let c = p.coeff(i);
                if !c.is_zero() {
                    acc = &acc + &vp[n - i].scale(&c);
                }
            }
            acc
        };
        (eval(&self.num), eval(&self.den))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &RatFun) -> RatFun {
        if self.is_constant() {
            return self.clone();
        }
        if g.is_constant() {
            let v = g.as_constant().unwrap();
            return RatFun::constant(self.eval_fe(&v).expect("composition hits a pole"));
        }
        let (p, q) = self.homogeneous_parts(&g.num, &g.den);
        RatFun::from_coprime(p, q)
    }

    /// `f1 ∘ f2 ∘ ... ∘ fk` for a nonempty chain.
    pub fn compose_all(fs: &[&RatFun]) -> RatFun {
        let mut acc = fs[fs.len() - 1].clone();
        for f in fs[..fs.len() - 1].iter().rev() {
            acc = f.compose(&acc);
        }
        acc
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        RatFun::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        RatFun::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        RatFun::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Fe) -> RatFun {
        RatFun::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn pow(&self, k: usize) -> RatFun {
        RatFun { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    /// Numerator of the derivative: `num' den - num den'`.
    pub fn wronskian(&self) -> Poly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// Local degree at `p`.
    ///
    /// Equals `mult_0(m2 ∘ F ∘ m1)` for Möbius maps with `m1(0) = p` and
    /// `m2(F(p)) = 0`; computed directly as the order of vanishing of
    /// `num - c den` at `p`, of `den` at a pole, or from degrees at infinity.
    pub fn multiplicity_at(&self, p: &SpherePoint) -> Result<usize> {
        if self.is_constant() {
            return Err(Error::ConstantFunction);
        }
        match p {
            SpherePoint::Finite(x) => match self.eval_fe(x) {
                Some(c) => Ok((&self.num - &self.den.scale(&c)).root_multiplicity(x)),
                None => Ok(self.den.root_multiplicity(x)),
            },
            SpherePoint::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.degree());
                if dn > dd {
                    Ok(dn - dd)
                } else {
                    let c = match self.value_at_infinity() {
                        SpherePoint::Finite(c) => c,
                        SpherePoint::Infinity => unreachable!(),
                    };
                    let diff = &self.num - &self.den.scale(&c);
                    Ok(dd - diff.degree())
                }
            }
        }
    }

    /// Same over Q in integer arithmetic. Scaling u and v together does not
    /// change the quotient, and the coefficient denominators of num and den
    /// are moved across at the end.
    fn homogeneous_parts_q(&self, u: &Poly, v: &Poly) -> (Poly, Poly) {
        let k = self.field();
        let n = self.degree();
        let (_, uv) = to_integer(&[u.coeffs(), v.coeffs()].concat());
        let (ui, vi) = uv.split_at(u.coeffs().len());
        let mut vp: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for i in 1..=n {
            let next = int_mul(&vp[i - 1], vi);
            vp.push(next);
        }
        let eval = |p: &Poly| -> (BigInt, Vec<BigInt>) {
            let c: Vec<Fe> = (0..=n).map(|i| p.coeff(i)).collect();
            let (l, c) = to_integer(&c);
            let mut acc = vec![c[n].clone()];
            for i in (0..n).rev() {
                acc = int_mul(&acc, ui);
                if !c[i].is_zero() {
                    if acc.len() < vp[n - i].len() {
                        acc.resize(vp[n - i].len(), BigInt::zero());
                    }
                    for (a, x) in acc.iter_mut().zip(&vp[n - i]) {
                        *a += &c[i] * x;
                    }
                }
            }
            (l, acc)
        };
        let (ln, pn) = eval(&self.num);
        let (ld, pd) = eval(&self.den);
        // P / Q = (pn / ln) / (pd / ld)
        (from_integer(k, pn, &ln), from_integer(k, pd, &ld))
    }

    /// `N(t, z) = num(t) den(z) - num(z) den(t)`.
    pub fn fiber_polynomial(&self) -> FiberPoly {
        let f = self.field();
        let n = self.degree();
        let mut c = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let a = self.den.scale(&self.num.coeff(i));
            let b = self.num.scale(&self.den.coeff(i));
            c.push(&a - &b);
        }
        FiberPoly { poly: BiPoly::new(f, c), reduced: false }
    }

    /// `N(t, z) / (t - z)`.
    pub fn fiber_polynomial_reduced(&self) -> FiberPoly {
        let full = self.fiber_polynomial();
        let q = full.poly.div_exact(&BiPoly::t_minus_z(self.field())).expect("t - z divides every fiber polynomial");
        FiberPoly { poly: q, reduced: true }
    }

    /// The same function over another field; coefficients must be rational
    /// unless the fields agree.
    pub fn embed(&self, k: &Field) -> Result<RatFun> {
        if self.field().same(k) {
            return Ok(self.clone());
        }
        let conv = |p: &Poly| -> Result<Poly> {
            let c: Result<Vec<Fe>> = p
                .coeffs()
                .iter()
                .map(|x| {
                    x.as_rational()
                        .map(|q| k.from_q(q.clone()))
                        .ok_or_else(|| Error::Precondition(format!("coefficient {x} is not rational")))
                })
                .collect();
            Ok(Poly::new(k, c?))
        };
        Ok(RatFun::from_coprime(conv(&self.num)?, conv(&self.den)?))
    }

    pub fn display_var(&self, var: &str) -> String {
        let n = self.num.display_var(var);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.display_var(var);
        let terms = |p: &Poly| p.coeffs().iter().filter(|x| !x.is_zero()).count();
        let n = if terms(&self.num) > 1 { format!("({n})") } else { n };
        let d = if terms(&self.den) > 1 || d.contains('*') { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("z"))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Fiber polynomial with a flag recording whether the factor `t - z` was removed.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberPoly {
    pub poly: BiPoly,
    pub reduced: bool,
}
