//! Polynomials in K[z][t], stored as coefficient polynomials in z for each power of t.

use std::fmt;

use crate::algebra::field::{Fe, Field};
use crate::algebra::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    /// c[i] is the coefficient of t^i.
    c: Vec<Poly>,
}

impl BiPoly {
    pub fn new(field: &Field, mut c: Vec<Poly>) -> BiPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        BiPoly { field: field.clone(), c }
    }

    pub fn zero(field: &Field) -> BiPoly {
        BiPoly { field: field.clone(), c: vec![] }
    }

    /// A polynomial in t alone.
    pub fn from_t(p: &Poly) -> BiPoly {
        let f = p.field().clone();
        BiPoly::new(&f, p.coeffs().iter().map(|x| Poly::constant(x.clone())).collect())
    }

    /// A polynomial in z alone.
    pub fn from_z(p: &Poly) -> BiPoly {
        BiPoly::new(p.field(), vec![p.clone()])
    }

    /// `t - z`.
    pub fn t_minus_z(field: &Field) -> BiPoly {
        BiPoly::new(field, vec![-&Poly::x(field), Poly::one(field)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_t(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_z(&self) -> usize {
        self.c.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn lc_t(&self) -> Poly {
        self.c.last().cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    /// Specialize z to a value: a polynomial in t.
    pub fn eval_z(&self, z0: &Fe) -> Poly {
        Poly::new(&self.field, self.c.iter().map(|p| p.eval(z0)).collect())
    }

    /// Substitute t = z.
    pub fn diagonal(&self) -> Poly {
        let x = Poly::x(&self.field);
        let mut acc = Poly::zero(&self.field);
        for p in self.c.iter().rev() {
            acc = &(&acc * &x) + p;
        }
        acc
    }

    /// Swap the roles of t and z.
    pub fn transpose(&self) -> BiPoly {
        let dz = self.deg_z();
        let mut out = vec![vec![self.field.zero(); self.c.len()]; dz + 1];
        for (i, p) in self.c.iter().enumerate() {
            for (j, a) in p.coeffs().iter().enumerate() {
                out[j][i] = a.clone();
            }
        }
        BiPoly::new(&self.field, out.into_iter().map(|v| Poly::new(&self.field, v)).collect())
    }

    pub fn scale_z(&self, p: &Poly) -> BiPoly {
        BiPoly::new(&self.field, self.c.iter().map(|x| x * p).collect())
    }

    pub fn content(&self) -> Poly {
        let mut g = Poly::zero(&self.field);
        for p in &self.c {
            g = g.gcd(p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        let mut out = BiPoly::new(&self.field, self.c.iter().map(|p| p.div_exact(&g).unwrap()).collect());
        let lc = out.lc_t().lc();
        let inv = lc.inv().unwrap();
        out.c = out.c.iter().map(|p| p.scale(&inv)).collect();
        out
    }

    /// Pseudo-remainder with respect to t.
    pub fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        assert!(!b.is_zero());
        let db = b.deg_t();
        let lb = b.lc_t();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_t() >= db {
            let shift = r.deg_t() - db;
            let lr = r.lc_t();
            // r <- lb * r - lr * t^shift * b
            let mut c: Vec<Poly> = r.c.iter().map(|p| p * &lb).collect();
            for (j, bj) in b.c.iter().enumerate() {
                let t = &lr * bj;
                c[j + shift] = &c[j + shift] - &t;
            }
            r = BiPoly::new(&self.field, c);
        }
        r
    }

    /// Quotient if `b` divides `self` in K[z][t].
    pub fn div_exact(&self, b: &BiPoly) -> Option<BiPoly> {
        if b.is_zero() {
            return None;
        }
        let db = b.deg_t();
        let lb = b.lc_t();
        let mut r = self.clone();
        if r.is_zero() {
            return Some(r);
        }
        if r.deg_t() < db {
            return None;
        }
        let mut quot = vec![Poly::zero(&self.field); r.deg_t() - db + 1];
        while !r.is_zero() {
            if r.deg_t() < db {
                return None;
            }
            let shift = r.deg_t() - db;
            let qc = r.lc_t().div_exact(&lb)?;
            let mut c = r.c.clone();
            for (j, bj) in b.c.iter().enumerate() {
                let t = &qc * bj;
                c[j + shift] = &c[j + shift] - &t;
            }
            quot[shift] = qc;
            r = BiPoly::new(&self.field, c);
        }
        Some(BiPoly::new(&self.field, quot))
    }

    /// Greatest common divisor in K[z][t] (primitive, monic leading coefficient in z),
    /// computed by the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg_t() < b.deg_t() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        let g = a.primitive_part();
        let cg = self.content().gcd(&other.content());
        g.scale_z(&cg)
    }

    pub fn display_vars(&self, t: &str, z: &str) -> String {
        let mut terms = vec![];
        for (i, p) in self.c.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let coeff = p.display_var(z);
            let mono = match i {
                0 => String::new(),
                1 => t.to_string(),
                _ => format!("{t}^{i}"),
            };
            let term = if mono.is_empty() {
                format!("({coeff})")
            } else if p.is_one() {
                mono
            } else {
                format!("({coeff})*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_vars("t", "z"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
