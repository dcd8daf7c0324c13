//! Number fields `Q[w]/(f)` with elements stored as rational coordinate vectors.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug)]
struct FieldData {
    /// Monic, coefficients low to high; length is degree + 1.
    modulus: Vec<Q>,
    cyclotomic: Option<u32>,
}

/// A handle to a number field. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldData>);

/// Description of a field to construct.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Rationals,
    Cyclotomic(u32),
    /// Coefficients (low to high) of a polynomial in `w`.
    Extension(Vec<Q>),
}

pub fn field_make(spec: &FieldSpec) -> Result<Field> {
    match spec {
        FieldSpec::Rationals => Ok(Field::rationals()),
        FieldSpec::Cyclotomic(n) => {
            if *n == 0 {
                return Err(Error::InvalidSpec("cyclotomic order must be positive".into()));
            }
            Ok(Field::cyclotomic(*n))
        }
        FieldSpec::Extension(coeffs) => {
            let mut m = coeffs.clone();
            qp::trim(&mut m);
            if m.len() < 2 {
                return Err(Error::InvalidSpec("modulus must have degree at least one".into()));
            }
            let lc = m.last().unwrap().clone();
            for c in m.iter_mut() {
                *c = &*c / &lc;
            }
            if m.len() > 2 {
                match crate::algebra::roots::is_irreducible_over_q(&m) {
                    Some(true) => {}
                    Some(false) => return Err(Error::ReducibleModulus(qp::display(&m, "w"))),
                    None => {
                        return Err(Error::InvalidSpec(format!(
                            "could not certify irreducibility of {}",
                            qp::display(&m, "w")
                        )))
                    }
                }
            }
            Ok(Field(Arc::new(FieldData { modulus: m, cyclotomic: None })))
        }
    }
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldData { modulus: vec![Q::zero(), Q::one()], cyclotomic: None }))
    }

    /// `Q(zeta_n)` with generator a primitive n-th root of unity. For n = 1, 2 this is Q.
    pub fn cyclotomic(n: u32) -> Field {
        if n <= 2 {
            return Field::rationals();
        }
        let phi = cyclotomic_polynomial(n);
        Field(Arc::new(FieldData { modulus: phi, cyclotomic: Some(n) }))
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1 && self.0.modulus[0].is_zero()
    }

    pub fn modulus(&self) -> &[Q] {
        &self.0.modulus
    }

    pub fn cyclotomic_order(&self) -> Option<u32> {
        self.0.cyclotomic
    }

    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe { field: self.clone(), c: vec![Q::zero(); self.degree()] }
    }

    pub fn one(&self) -> Fe {
        self.from_q(Q::one())
    }

    pub fn from_int(&self, n: i64) -> Fe {
        self.from_q(q(n))
    }

    pub fn from_q(&self, x: Q) -> Fe {
        let mut c = vec![Q::zero(); self.degree()];
        c[0] = x;
        Fe { field: self.clone(), c }
    }

    /// The class of `w`.
    pub fn gen(&self) -> Fe {
        let d = self.degree();
        if d == 1 {
            return self.from_q(-&self.0.modulus[0]);
        }
        let mut c = vec![Q::zero(); d];
        c[1] = Q::one();
        Fe { field: self.clone(), c }
    }

    /// Element with the given coordinates in the power basis, reduced.
    pub fn from_coords(&self, coords: Vec<Q>) -> Fe {
        Fe { field: self.clone(), c: self.reduce(coords) }
    }

    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        let m = &self.0.modulus;
        let d = m.len() - 1;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                let t = std::mem::replace(&mut v[i], Q::zero());
                if t.is_zero() {
                    continue;
                }
                for j in 0..d {
                    if !m[j].is_zero() {
                        v[i - d + j] -= &t * &m[j];
                    }
                }
            }
            v.truncate(d);
        }
        v.resize(d, Q::zero());
        v
    }

    /// A primitive n-th root of unity in this field, if one exists.
    /// For cyclotomic fields the power of the generator with least exponent is chosen.
    pub fn primitive_root_of_unity(&self, n: u32) -> Option<Fe> {
        if n == 0 {
            return None;
        }
        if n == 1 {
            return Some(self.one());
        }
        if n == 2 {
            return Some(-self.one());
        }
        if let Some(m) = self.0.cyclotomic {
            let w = self.gen();
            // The roots of unity in Q(zeta_m) are +-w^k.
            let mut p = self.one();
            let mut best: Option<Fe> = None;
            for _ in 0..(2 * m) {
                p = &p * &w;
                for cand in [p.clone(), -p.clone()] {
                    if cand.multiplicative_order(2 * m as u64) == Some(n as u64) {
                        best = Some(cand);
                        break;
                    }
                }
                if best.is_some() {
                    break;
                }
            }
            if best.is_some() {
                return best;
            }
        }
        let mut xn = vec![self.zero(); n as usize + 1];
        xn[0] = -self.one();
        xn[n as usize] = self.one();
        let poly = crate::algebra::poly::Poly::new(self, xn);
        crate::algebra::roots::roots_in_field(&poly)
            .into_iter()
            .find(|r| r.multiplicative_order(n as u64) == Some(n as u64))
    }

    pub fn describe(&self) -> String {
        if self.is_rationals() {
            return "Q".into();
        }
        if let Some(n) = self.0.cyclotomic {
            return format!("Q(zeta_{n})");
        }
        format!("Q[w]/({})", qp::display(&self.0.modulus, "w"))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.same(other)
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub fn cyclotomic_polynomial(n: u32) -> Vec<Q> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut p = vec![Q::zero(); n as usize + 1];
    p[0] = -Q::one();
    p[n as usize] = Q::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let f = cyclotomic_polynomial(d);
            let (quot, _) = qp::divrem(&p, &f);
            p = quot;
        }
    }
    p
}

/// Field element: coordinates in the basis 1, w, ..., w^(e-1).
#[derive(Clone)]
pub struct Fe {
    field: Field,
    c: Vec<Q>,
}

impl Fe {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.is_rational() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Fe> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() == 1 {
            return Ok(Fe { field: self.field.clone(), c: vec![self.c[0].recip()] });
        }
        let mut a = self.c.clone();
        qp::trim(&mut a);
        let inv = qp::inv_mod(&a, &self.field.0.modulus).expect("modulus is irreducible");
        Ok(self.field.from_coords(inv))
    }

    pub fn pow(&self, mut k: u64) -> Fe {
        let mut base = self.clone();
        let mut acc = self.field.one();
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

    pub fn powi(&self, k: i64) -> Result<Fe> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inv()?.pow((-k) as u64))
        }
    }

    /// Least k in 1..=bound with self^k = 1.
    pub fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// Bits needed for the largest numerator or denominator among the coordinates.
    pub fn height_bits(&self) -> u64 {
        self.c.iter().map(|x| x.numer().bits().max(x.denom().bits())).max().unwrap_or(0)
    }

    /// A deterministic total order used wherever a canonical choice among
    /// field elements is needed: rational elements first, then coordinates
    /// compared by absolute value with positive sign preferred.
    pub fn canonical_cmp(&self, other: &Fe) -> Ordering {
        let ra = self.is_rational();
        let rb = other.is_rational();
        if ra != rb {
            return if ra { Ordering::Less } else { Ordering::Greater };
        }
        for (x, y) in self.c.iter().zip(other.c.iter()) {
            let o = x.abs().cmp(&y.abs());
            if o != Ordering::Equal {
                return o;
            }
            let o = y.is_positive().cmp(&x.is_positive());
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    /// Number of terms when written as a polynomial in w.
    pub fn term_count(&self) -> usize {
        self.c.iter().filter(|x| !x.is_zero()).count()
    }

    fn binop_add(&self, o: &Fe, sub: bool) -> Fe {
        debug_assert!(self.field.same(&o.field));
        let c = self.c.iter().zip(o.c.iter()).map(|(a, b)| if sub { a - b } else { a + b }).collect();
        Fe { field: self.field.clone(), c }
    }

    fn binop_mul(&self, o: &Fe) -> Fe {
        debug_assert!(self.field.same(&o.field));
        if self.c.len() == 1 {
            return Fe { field: self.field.clone(), c: vec![&self.c[0] * &o.c[0]] };
        }
        if o.is_rational() {
            let s = &o.c[0];
            return Fe { field: self.field.clone(), c: self.c.iter().map(|x| x * s).collect() };
        }
        if self.is_rational() {
            let s = &self.c[0];
            return Fe { field: self.field.clone(), c: o.c.iter().map(|x| x * s).collect() };
        }
        let d = self.c.len();
        let mut prod = vec![Q::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Fe { field: self.field.clone(), c: self.field.reduce(prod) }
    }
}

impl PartialEq for Fe {
    fn eq(&self, other: &Fe) -> bool {
        self.c == other.c
    }
}

impl Eq for Fe {}

impl Hash for Fe {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl<'a> Add<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        self.binop_add(o, false)
    }
}

impl<'a> Sub<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        self.binop_add(o, true)
    }
}

impl<'a> Mul<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        self.binop_mul(o)
    }
}

impl<'a> Div<&'a Fe> for &'a Fe {
    type Output = Fe;
    /// Panics on division by zero; use `inv` for a checked version.
    fn div(self, o: &Fe) -> Fe {
        self * &o.inv().expect("division by zero")
    }
}

impl Add for Fe {
    type Output = Fe;
    fn add(self, o: Fe) -> Fe {
        &self + &o
    }
}

impl Sub for Fe {
    type Output = Fe;
    fn sub(self, o: Fe) -> Fe {
        &self - &o
    }
}

impl Mul for Fe {
    type Output = Fe;
    fn mul(self, o: Fe) -> Fe {
        &self * &o
    }
}

impl Div for Fe {
    type Output = Fe;
    fn div(self, o: Fe) -> Fe {
        &self / &o
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { field: self.field, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

pub(crate) fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 || self.is_rational() {
            return f.write_str(&fmt_rational(&self.c[0]));
        }
        f.write_str(&qp::display(&self.c, "w"))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dense polynomials over Q as coefficient vectors (low to high); used for
/// moduli and element arithmetic.
pub(crate) mod qp {
    use super::*;

    pub fn trim(v: &mut Vec<Q>) {
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
    }

    pub fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "division by zero polynomial");
        if r.len() < b.len() {
            return (vec![], r);
        }
        let db = b.len() - 1;
        let lc_inv = b[db].recip();
        let mut quot = vec![Q::zero(); r.len() - db];
        for i in (0..quot.len()).rev() {
            let t = &r[i + db] * &lc_inv;
            if !t.is_zero() {
                for j in 0..=db {
                    r[i + j] -= &t * &b[j];
                }
            }
            quot[i] = t;
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut quot);
        (quot, r)
    }

    pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut p = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                p[i + j] += x * y;
            }
        }
        trim(&mut p);
        p
    }

    pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = a.len().max(b.len());
        let mut p = vec![Q::zero(); n];
        for (i, x) in a.iter().enumerate() {
            p[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            p[i] -= x;
        }
        trim(&mut p);
        p
    }

    /// Inverse of a modulo m, if gcd(a, m) = 1.
    pub fn inv_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut t0, mut t1): (Vec<Q>, Vec<Q>) = (vec![], vec![Q::one()]);
        while !r1.is_empty() {
            let (quot, rem) = divrem(&r0, &r1);
            let t2 = sub(&t0, &mul(&quot, &t1));
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.len() != 1 {
            return None;
        }
        let s = r0[0].recip();
        let (_, mut t) = divrem(&t0.iter().map(|x| x * &s).collect::<Vec<_>>(), m);
        trim(&mut t);
        Some(t)
    }

    pub fn display(v: &[Q], var: &str) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&a), mono));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_moduli() {
        assert_eq!(cyclotomic_polynomial(3), vec![q(1), q(1), q(1)]);
        assert_eq!(cyclotomic_polynomial(4), vec![q(1), q(0), q(1)]);
        assert_eq!(cyclotomic_polynomial(6), vec![q(1), q(-1), q(1)]);
        assert_eq!(cyclotomic_polynomial(8), vec![q(1), q(0), q(0), q(0), q(1)]);
    }

    #[test]
    fn orders() {
        let k = Field::cyclotomic(5);
        assert_eq!(k.from_int(-1).multiplicative_order(10), Some(2));
        assert_eq!(k.gen().multiplicative_order(10), Some(5));
        assert_eq!(Field::rationals().from_int(2).multiplicative_order(100), None);
    }

    #[test]
    fn inverse_in_extension() {
        let k = field_make(&FieldSpec::Extension(vec![q(-2), q(0), q(1)])).unwrap();
        let a = &k.gen() + &k.one();
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn reducible_modulus_rejected() {
        let r = field_make(&FieldSpec::Extension(vec![q(-1), q(0), q(1)]));
        assert!(matches!(r, Err(Error::ReducibleModulus(_))));
    }

    #[test]
    fn roots_of_unity_in_cyclotomic_fields() {
        let k = Field::cyclotomic(3);
        let z6 = k.primitive_root_of_unity(6).unwrap();
        assert_eq!(z6.multiplicative_order(12), Some(6));
        assert!(Field::rationals().primitive_root_of_unity(3).is_none());
        let k4 = Field::cyclotomic(4);
        assert_eq!(k4.primitive_root_of_unity(4).unwrap(), k4.gen());
    }
}
