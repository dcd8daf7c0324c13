//! Dense univariate polynomials over a number field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::field::{Fe, Field, Q};
use crate::algebra::modular;

#[derive(Clone)]
pub struct Poly {
    field: Field,
    /// Low to high, no trailing zeros.
    c: Vec<Fe>,
}

impl Poly {
    pub fn new(field: &Field, mut c: Vec<Fe>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { field: field.clone(), c }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), c: vec![] }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    /// The polynomial `z`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn constant(c: Fe) -> Poly {
        let f = c.field().clone();
        Poly::new(&f, vec![c])
    }

    pub fn monomial(c: Fe, k: usize) -> Poly {
        let f = c.field().clone();
        let mut v = vec![f.zero(); k + 1];
        v[k] = c;
        Poly::new(&f, v)
    }

    pub fn from_ints(field: &Field, c: &[i64]) -> Poly {
        Poly::new(field, c.iter().map(|&x| field.from_int(x)).collect())
    }

    /// `z - a`.
    pub fn linear_root(a: &Fe) -> Poly {
        let f = a.field().clone();
        Poly::new(&f, vec![-a, f.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn lc(&self) -> Fe {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let s = self.lc().inv().unwrap();
        self.scale(&s)
    }

    pub fn scale(&self, s: &Fe) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly { field: self.field.clone(), c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let c = self.c[1..].iter().enumerate().map(|(i, x)| x * &self.field.from_int(i as i64 + 1)).collect();
        Poly::new(&self.field, c)
    }

    pub fn pow(&self, mut k: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by z^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { field: self.field.clone(), c }
    }

    /// `self(z + a)`.
    pub fn taylor_shift(&self, a: &Fe) -> Poly {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] = &c[j] + &t;
            }
        }
        Poly::new(&self.field, c)
    }

    /// `z^n self(1/z)` for n at least the degree.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut c = vec![self.field.zero(); n + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[n - i] = x.clone();
        }
        Poly::new(&self.field, c)
    }

    /// `self(g(z))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Substitute z -> s*z.
    pub fn scale_var(&self, s: &Fe) -> Poly {
        let mut p = self.field.one();
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x * &p);
            p = &p * s;
        }
        Poly::new(&self.field, c)
    }

    pub fn divrem(&self, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        if self.c.len() < b.c.len() {
            return (Poly::zero(&self.field), self.clone());
        }
        let db = b.c.len() - 1;
        let inv = b.lc().inv().unwrap();
        let mut r = self.c.clone();
        let mut quot = vec![self.field.zero(); r.len() - db];
        for i in (0..quot.len()).rev() {
            let t = &r[i + db] * &inv;
            if !t.is_zero() {
                for j in 0..db {
                    let s = &t * &b.c[j];
                    r[i + j] = &r[i + j] - &s;
                }
            }
            r[i + db] = self.field.zero();
            quot[i] = t;
        }
        r.truncate(db);
        (Poly::new(&self.field, quot), Poly::new(&self.field, r))
    }

    pub fn rem(&self, b: &Poly) -> Poly {
        self.divrem(b).1
    }

    /// Quotient if `b` divides `self` exactly.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        if self.field.is_rationals() && b.degree() >= 8 && !self.is_zero() {
            return modular::div_exact_q(&self.field, &self.c, &b.c).map(|c| Poly::new(&self.field, c));
        }
        let (q, r) = self.divrem(b);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.field.is_rationals() && self.degree().min(other.degree()) >= 8 && !self.is_zero() && !other.is_zero() {
            if let Some(c) = modular::gcd_q(&self.field, &self.c, &other.c) {
                return Poly::new(&self.field, c);
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b.monic();
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (&self.div_exact(&g).unwrap() * other).monic()
    }

    /// Resultant with respect to the actual degrees of both polynomials.
    pub fn resultant(&self, other: &Poly) -> Fe {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return f.zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let da = a.degree();
            let db = b.degree();
            if db == 0 {
                return &acc * &b.lc().pow(da as u64);
            }
            if da == 0 {
                return &acc * &a.lc().pow(db as u64);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return f.zero();
            }
            let dr = r.degree();
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = &acc * &b.lc().pow((da - dr) as u64);
            a = b;
            b = r;
        }
    }

    /// Squarefree decomposition: monic factors with their multiplicities,
    /// multiplicities increasing. The unit factor is dropped.
    pub fn squarefree_factor(&self) -> Vec<(Poly, usize)> {
        let mut out = vec![];
        if self.degree() == 0 {
            return out;
        }
        let d = self.derivative();
        let c = self.gcd(&d);
        let mut w = self.div_exact(&c).unwrap();
        let mut y = d.div_exact(&c).unwrap();
        let mut z = &y - &w.derivative();
        let mut i = 1;
        while w.degree() > 0 {
            let g = w.gcd(&z);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            w = w.div_exact(&g).unwrap();
            y = z.div_exact(&g).unwrap();
            z = &y - &w.derivative();
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree() == 0 {
            return Poly::one(&self.field);
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Fe) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let lin = Poly::linear_root(a);
        let mut k = 0;
        loop {
            let (q, r) = p.divrem(&lin);
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    /// Newton interpolation through (xs[i], ys[i]); the xs must be distinct.
    pub fn interpolate(field: &Field, xs: &[Fe], ys: &[Fe]) -> Poly {
        let n = xs.len();
        let mut dd: Vec<Fe> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - j];
                dd[i] = &num / &den;
            }
        }
        let mut p = Poly::zero(field);
        for i in (0..n).rev() {
            p = &(&p * &Poly::linear_root(&xs[i])) + &Poly::constant(dd[i].clone());
        }
        p
    }

    /// Render using the given variable name.
    pub fn display_var(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let (neg, body) = coeff_body(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (body.as_str(), mono.is_empty()) {
                ("1", false) => out.push_str(&mono),
                (_, true) => out.push_str(&body),
                (_, false) => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Sign and absolute rendering of a coefficient. Coefficients with several
/// terms in w are parenthesized and never treated as negative.
fn coeff_body(c: &Fe) -> (bool, String) {
    use num_traits::Signed;
    if c.term_count() <= 1 {
        let idx = c.coords().iter().position(|x| !num_traits::Zero::is_zero(x)).unwrap_or(0);
        let neg = c.coords()[idx].is_negative();
        let s = if neg { (-c).to_string() } else { c.to_string() };
        (neg, s)
    } else {
        (false, format!("({c})"))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.c == other.c
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, x) in short.c.iter().enumerate() {
            c[i] = &c[i] + x;
        }
        Poly::new(&self.field, c)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Poly::new(&self.field, c)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        if self.field.is_rationals() && self.c.len() * o.c.len() >= 64 {
            return mul_rational(self, o);
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    let t = a * b;
                    c[i + j] = &c[i + j] + &t;
                }
            }
        }
        Poly::new(&self.field, c)
    }
}

fn mul_rational(a: &Poly, b: &Poly) -> Poly {
    let len = a.c.len() + b.c.len() - 1;
    Poly::new(&a.field, rational_product(&a.field, &a.c, &b.c, len))
}

/// First `len` coefficients of a product over Q, computed with denominators
/// cleared so that each output coefficient is normalized once.
pub(crate) fn rational_product(k: &Field, a: &[Fe], b: &[Fe], len: usize) -> Vec<Fe> {
    let (la, va) = to_integer(&a[..a.len().min(len)]);
    let (lb, vb) = to_integer(&b[..b.len().min(len)]);
    let mut c = int_mul(&va, &vb);
    c.resize(len, BigInt::zero());
    let l = la * lb;
    c.into_iter().map(|x| k.from_q(Q::new(x, l.clone()))).collect()
}

/// `(l, v)` with `c = v / l` coefficientwise, for rational coefficients.
pub(crate) fn to_integer(c: &[Fe]) -> (BigInt, Vec<BigInt>) {
    let qs: Vec<&Q> = c.iter().map(|x| x.as_rational().expect("rational coefficients")).collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let v = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    (l, v)
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                c[i + j] += x * y;
            }
        }
    }
    c
}

/// The polynomial with coefficients `v / l`.
pub(crate) fn from_integer(k: &Field, v: Vec<BigInt>, l: &BigInt) -> Poly {
    Poly::new(k, v.into_iter().map(|x| k.from_q(Q::new(x, l.clone()))).collect())
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("z"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
