//! Truncated power series at a superattracting fixed point: Böttcher
//! coordinates and the finite groups of local transition functions.

use std::fmt;

use crate::algebra::poly::rational_product;
use crate::algebra::{cyclotomic_polynomial, roots_in_field, Fe, Field, Poly};
use crate::error::{Error, Result};
use crate::moebius::Moebius;
use crate::ratfun::{RatFun, SpherePoint};

pub const DEFAULT_TRUNCATION: usize = 32;

/// `c_1 z + ... + c_N z^N + O(z^(N+1))`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Field,
    /// Index is the power of z; `c[0]` is always zero.
    c: Vec<Fe>,
}

fn mul_trunc(k: &Field, a: &[Fe], b: &[Fe], len: usize) -> Vec<Fe> {
    if k.is_rationals() {
        return rational_product(k, a, b, len);
    }
    let mut out = vec![k.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// `f(g)` truncated to `len` coefficients; requires `g[0] = 0`.
///
/// Baby-step giant-step: with `g^0..g^m` precomputed, f is split into blocks
/// of m coefficients evaluated by scalar combinations, and the blocks are
/// combined by Horner in `g^m`.
fn compose_trunc(k: &Field, f: &[Fe], g: &[Fe], len: usize) -> Vec<Fe> {
    if g.iter().enumerate().all(|(i, x)| i == 1 || x.is_zero()) {
        let l = g.get(1).cloned().unwrap_or_else(|| k.zero());
        let mut p = k.one();
        let mut out = vec![k.zero(); len];
        for (i, c) in f.iter().take(len).enumerate() {
            out[i] = c * &p;
            p = &p * &l;
        }
        return out;
    }
    let flen = f.len().min(len);
    let m = ((flen as f64).sqrt().ceil() as usize).max(1);
    let mut pows: Vec<Vec<Fe>> = vec![vec![k.zero(); len]];
    pows[0][0] = k.one();
    for i in 1..=m {
        let next = mul_trunc(k, &pows[i - 1], g, len);
        pows.push(next);
    }
    let mut acc = vec![k.zero(); len];
    let blocks = flen.div_ceil(m);
    for b in (0..blocks).rev() {
        acc = mul_trunc(k, &acc, &pows[m], len);
        for j in 0..m {
            let idx = b * m + j;
            if idx >= flen || f[idx].is_zero() {
                continue;
            }
            for (t, x) in pows[j].iter().enumerate() {
                if !x.is_zero() {
                    acc[t] = &acc[t] + &(&f[idx] * x);
                }
            }
        }
    }
    acc
}

/// `1/b` truncated to `len` coefficients; requires `b[0] ≠ 0`.
fn recip_trunc(k: &Field, b: &[Fe], len: usize) -> Vec<Fe> {
    let inv0 = b[0].inv().unwrap();
    let mut out = vec![k.zero(); len];
    out[0] = inv0.clone();
    for m in 1..len {
        let mut s = k.zero();
        for i in 1..=m.min(b.len() - 1) {
            s = &s + &(&b[i] * &out[m - i]);
        }
        out[m] = -&(&s * &inv0);
    }
    out
}

/// Taylor coefficients of f at 0, `len` of them; requires `den(0) ≠ 0`.
fn taylor(f: &RatFun, len: usize) -> Vec<Fe> {
    let k = f.field();
    let num: Vec<Fe> = (0..len).map(|i| f.num().coeff(i)).collect();
    let den: Vec<Fe> = (0..len).map(|i| f.den().coeff(i)).collect();
    mul_trunc(k, &num, &recip_trunc(k, &den, len), len)
}

impl TruncatedSeries {
    /// From `c_1, ..., c_N`.
    pub fn new(field: &Field, coeffs: Vec<Fe>) -> TruncatedSeries {
        let mut c = Vec::with_capacity(coeffs.len() + 1);
        c.push(field.zero());
        c.extend(coeffs);
        TruncatedSeries { field: field.clone(), c }
    }

    fn from_vec(field: &Field, mut c: Vec<Fe>) -> TruncatedSeries {
        c[0] = field.zero();
        TruncatedSeries { field: field.clone(), c }
    }

    /// `λ z` truncated at order N.
    pub fn linear(l: &Fe, n: usize) -> TruncatedSeries {
        let k = l.field();
        let mut c = vec![k.zero(); n + 1];
        if n >= 1 {
            c[1] = l.clone();
        }
        TruncatedSeries { field: k.clone(), c }
    }

    pub fn identity(k: &Field, n: usize) -> TruncatedSeries {
        TruncatedSeries::linear(&k.one(), n)
    }

    /// Taylor expansion of a rational function with `f(0) = 0` and no pole at 0.
    pub fn from_ratfun(f: &RatFun, n: usize) -> Result<TruncatedSeries> {
        if f.den().coeff(0).is_zero() {
            return Err(Error::Precondition("pole at 0".into()));
        }
        if !f.num().coeff(0).is_zero() {
            return Err(Error::Precondition("f(0) ≠ 0".into()));
        }
        Ok(TruncatedSeries::from_vec(f.field(), taylor(f, n + 1)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.c.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c[1..]
    }

    pub fn is_unit(&self) -> bool {
        self.order() >= 1 && !self.c[1].is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.c.iter().enumerate().all(|(i, x)| if i == 1 { x.is_one() } else { x.is_zero() })
    }

    /// Exponents with nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (1..self.c.len()).filter(|&i| !self.c[i].is_zero()).collect()
    }

    fn check_orders(&self, o: &TruncatedSeries) -> Result<()> {
        if self.order() != o.order() {
            return Err(Error::TruncationMismatch(self.order(), o.order()));
        }
        Ok(())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_orders(g)?;
        Ok(TruncatedSeries::from_vec(&self.field, compose_trunc(&self.field, &self.c, &g.c, self.c.len())))
    }

    /// Compositional inverse, by Newton iteration `g ← g - (f∘g - z)/(f'∘g)`.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let k = &self.field;
        let len = self.c.len();
        let deriv: Vec<Fe> = (0..len - 1).map(|i| &self.c[i + 1] * &k.from_int(i as i64 + 1)).collect();
        let mut g = vec![k.zero(); len];
        g[1] = self.c[1].inv().unwrap();
        let mut prec = 2;
        while prec < len {
            prec = (2 * prec).min(len);
            let mut fg = compose_trunc(k, &self.c, &g[..prec], prec);
            fg[1] = &fg[1] - &k.one();
            let dg = compose_trunc(k, &deriv, &g[..prec], prec);
            let corr = mul_trunc(k, &fg, &recip_trunc(k, &dg, prec), prec);
            for i in 0..prec {
                g[i] = &g[i] - &corr[i];
            }
        }
        Ok(TruncatedSeries::from_vec(k, g))
    }

    /// The same series truncated at a lower order.
    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        let mut c = self.c.clone();
        c.resize(n + 1, self.field.zero());
        TruncatedSeries { field: self.field.clone(), c }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly::new(&self.field, self.c.clone());
        let n = self.order() + 1;
        if p.is_zero() {
            write!(f, "O(z^{n})")
        } else {
            write!(f, "{p} + O(z^{n})")
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn series_compose(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.compose(g)
}

pub fn series_invert(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.invert()
}

/// `f ∘ g = g ∘ f` modulo the common truncation.
pub fn commute_check(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<bool> {
    Ok(f.compose(g)? == g.compose(f)?)
}

/// Taylor data `(h, n)` of H at a superattracting fixed point 0.
fn superattracting_taylor(h: &RatFun, len: usize) -> Result<(Vec<Fe>, usize)> {
    if h.is_constant() || h.den().coeff(0).is_zero() || !h.num().coeff(0).is_zero() {
        return Err(Error::NotSuperattracting);
    }
    let n = h.multiplicity_at(&SpherePoint::Finite(h.field().zero()))?;
    if n < 2 {
        return Err(Error::NotSuperattracting);
    }
    Ok((taylor(h, len.max(n + 1)), n))
}

/// γ with `γ^(n-1) = 1/a`: 1 when `a = 1`, otherwise the least root in K.
fn canonical_gamma(a: &Fe, n: usize) -> Result<Fe> {
    let k = a.field();
    if a.is_one() || n == 1 {
        return Ok(k.one());
    }
    let mut c = vec![k.zero(); n];
    c[0] = -&a.inv().unwrap();
    c[n - 1] = k.one();
    let p = Poly::new(k, c);
    let mut roots = roots_in_field(&p);
    roots.sort_by(|x, y| x.canonical_cmp(y));
    roots.into_iter().next().ok_or_else(|| Error::FieldTooSmall { min_poly: p.display_var("x") })
}

/// Böttcher coordinate: β with `H ∘ β = β ∘ z^n` modulo `z^(N+1)` and `β'(0) = γ`.
///
/// Solves for `φ = β⁻¹` from `φ ∘ H = φ^n`, where the coefficient of
/// `z^(k+n-1)` determines `φ_k` from lower ones; `φ^n` is tracked by the
/// power recurrence for `(φ/(φ_1 z))^n`. Then β is the series inverse.
pub fn boettcher_solve(h: &RatFun, n_trunc: usize) -> Result<TruncatedSeries> {
    let k = h.field().clone();
    let (tay, n) = superattracting_taylor(h, n_trunc + 1)?;
    let gamma = canonical_gamma(&tay[n], n)?;
    let len = n_trunc + n;
    let tay = if tay.len() >= len { tay } else { taylor(h, len) };
    // powers of H needed for φ ∘ H up to z^(len-1)
    let max_pow = (len - 1) / n;
    let mut hp: Vec<Vec<Fe>> = vec![vec![k.zero(); len]];
    hp[0][0] = k.one();
    for i in 1..=max_pow {
        let next = mul_trunc(&k, &hp[i - 1], &tay, len);
        hp.push(next);
    }
    let phi1 = gamma.inv().unwrap();
    let phi1_n = phi1.pow(n as u64);
    let nf = k.from_int(n as i64);
    // F = φ / (φ_1 z) = 1 + F_1 z + ...; G = F^n
    let mut f = vec![k.one()];
    let mut g = vec![k.one()];
    let mut phi = vec![k.zero(), phi1.clone()];
    for kk in 2..=n_trunc {
        let j = kk + n - 1;
        let mut s = k.zero();
        for (i, p) in hp.iter().enumerate().skip(1) {
            if i >= phi.len() || i * n > j {
                break;
            }
            s = &s + &(&phi[i] * &p[j]);
        }
        let m = kk - 1;
        let nn = n as i64 + 1;
        let mut rest = k.zero();
        for i in 1..m {
            let w = k.from_int(nn * i as i64 - m as i64);
            rest = &rest + &(&(&w * &f[i]) * &g[m - i]);
        }
        let rest = &rest / &k.from_int(m as i64);
        let fm = &(&(&s / &phi1_n) - &rest) / &nf;
        let gm = &rest + &(&nf * &fm);
        phi.push(&fm * &phi1);
        f.push(fm);
        g.push(gm);
    }
    phi.resize(n_trunc + 1, k.zero());
    let beta = TruncatedSeries::from_vec(&k, phi).invert()?;
    debug_assert_eq!(beta.coeff(1), gamma);
    Ok(beta)
}

/// `H ∘ β - β ∘ z^n` modulo `z^(N+1)`, which vanishes for a Böttcher coordinate.
pub fn boettcher_residual(h: &RatFun, beta: &TruncatedSeries) -> Result<TruncatedSeries> {
    let k = h.field().clone();
    let len = beta.c.len();
    let (tay, n) = superattracting_taylor(h, len)?;
    let lhs = compose_trunc(&k, &tay[..len.min(tay.len())], &beta.c, len);
    let mut rhs = vec![k.zero(); len];
    for (i, x) in beta.c.iter().enumerate() {
        if i * n < len {
            rhs[i * n] = x.clone();
        }
    }
    let diff: Vec<Fe> = lhs.iter().zip(rhs.iter()).map(|(a, b)| a - b).collect();
    Ok(TruncatedSeries::from_vec(&k, diff))
}

/// The group `{β ∘ ζ^k z ∘ β⁻¹}` of transition functions of H at 0.
#[derive(Clone, Debug)]
pub struct TransitionGroup {
    pub order_n: usize,
    pub elements: Vec<TruncatedSeries>,
    pub boettcher: TruncatedSeries,
}

impl TransitionGroup {
    /// `elements[j] = elements[1]^j` for every j and `elements[1]^n = z`,
    /// which makes the set a cyclic group.
    fn generated_by_first(&self) -> Result<bool> {
        let n = self.elements.len();
        if n < 2 {
            return Ok(n == 1 && self.elements[0].is_identity());
        }
        if !self.elements[0].is_identity() {
            return Ok(false);
        }
        for j in 1..n {
            let next = self.elements[1].compose(&self.elements[j])?;
            if next != self.elements[(j + 1) % n] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_closed(&self) -> Result<bool> {
        if self.generated_by_first()? {
            return Ok(true);
        }
        for a in &self.elements {
            for b in &self.elements {
                if !self.elements.contains(&a.compose(b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_abelian(&self) -> Result<bool> {
        if self.generated_by_first()? {
            return Ok(true);
        }
        for a in &self.elements {
            for b in &self.elements {
                if !commute_check(a, b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Compositional order of the element at `idx`.
    pub fn element_order(&self, idx: usize) -> Result<usize> {
        let e = &self.elements[idx];
        let mut p = e.clone();
        for k in 1..=self.order_n {
            if p.is_identity() {
                return Ok(k);
            }
            p = p.compose(e)?;
        }
        Ok(0)
    }
}

fn root_of_unity(k: &Field, n: usize) -> Result<Fe> {
    k.primitive_root_of_unity(n as u32).ok_or_else(|| Error::FieldTooSmall {
        min_poly: Poly::new(k, cyclotomic_polynomial(n as u32).into_iter().map(|c| k.from_q(c)).collect())
            .display_var("x"),
    })
}

pub fn transition_group(h: &RatFun, n_trunc: usize) -> Result<TransitionGroup> {
    let k = h.field().clone();
    let beta = boettcher_solve(h, n_trunc)?;
    let n = h.multiplicity_at(&SpherePoint::Finite(k.zero()))?;
    let zeta = root_of_unity(&k, n)?;
    let binv = beta.invert()?;
    let len = n_trunc + n;
    let tay = taylor(h, len);
    let mut elements = vec![];
    for j in 0..n {
        let rot = TruncatedSeries::linear(&zeta.pow(j as u64), n_trunc);
        let phi = beta.compose(&rot)?.compose(&binv)?;
        // H ∘ φ = H holds modulo z^(N+n)
        let mut padded = phi.c.clone();
        padded.resize(len, k.zero());
        let lhs = compose_trunc(&k, &tay, &padded, len);
        if lhs != tay {
            return Err(Error::Precondition(format!("transition function {phi} fails H∘φ = H")));
        }
        elements.push(phi);
    }
    Ok(TransitionGroup { order_n: n, elements, boettcher: beta })
}

/// `m ∘ f ∘ τ` with `τ(0) = p` and `m(f(p)) = 0`, scaled so that its first
/// nonzero Taylor coefficient is 1. Transition functions at p are conjugated
/// by τ and unaffected by m.
pub fn localize(f: &RatFun, p: &SpherePoint) -> Result<RatFun> {
    let k = f.field().clone();
    let tau = match p {
        SpherePoint::Finite(a) => Moebius::translation(a),
        SpherePoint::Infinity => Moebius::inversion(&k),
    };
    let m = match f.eval(p) {
        SpherePoint::Finite(c) => Moebius::translation(&-&c),
        SpherePoint::Infinity => Moebius::inversion(&k),
    };
    let g = m.to_ratfun().compose(&f.compose(&tau.to_ratfun()));
    let n = g.multiplicity_at(&SpherePoint::Finite(k.zero()))?;
    let a = taylor(&g, n + 1)[n].clone();
    Ok(g.scale(&a.inv().unwrap()))
}

/// Whether the transition groups of X and Y at p commute elementwise modulo `z^(N+1)`.
///
/// With `κ = β_Y⁻¹ ∘ β_X`, an element `β_Y ∘ ζ z ∘ β_Y⁻¹` of Γ_Y commutes with
/// every element of Γ_X exactly when `κ⁻¹ ∘ ζ z ∘ κ` commutes with all
/// rotations of order `n_X`, i.e. has support in `1 + n_X Z`. Only a root of
/// unity of order `n_Y` is needed; the roles are swapped if that helps.
pub fn local_transition_commute(x: &RatFun, y: &RatFun, p: &SpherePoint, n_trunc: usize) -> Result<bool> {
    let (lx, ly) = (localize(x, p)?, localize(y, p)?);
    let k = x.field().clone();
    let zero = SpherePoint::Finite(k.zero());
    let (nx, ny) = (lx.multiplicity_at(&zero)?, ly.multiplicity_at(&zero)?);
    if nx < 2 || ny < 2 {
        return Err(Error::NotSuperattracting);
    }
    let (lx, ly, nx, ny) =
        if k.primitive_root_of_unity(ny as u32).is_some() { (lx, ly, nx, ny) } else { (ly, lx, ny, nx) };
    let zeta = root_of_unity(&k, ny)?;
    let bx = boettcher_solve(&lx, n_trunc)?;
    let by = boettcher_solve(&ly, n_trunc)?;
    let kappa = by.invert()?.compose(&bx)?;
    let kinv = kappa.invert()?;
    let rot = TruncatedSeries::linear(&zeta, n_trunc);
    let psi = kinv.compose(&rot)?.compose(&kappa)?;
    Ok(psi.support().iter().all(|&j| j % nx == 1 % nx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_make, Field, FieldSpec};

    fn k() -> Field {
        Field::rationals()
    }

    fn series(v: &[i64]) -> TruncatedSeries {
        let k = k();
        TruncatedSeries::new(&k, v.iter().map(|&x| k.from_int(x)).collect())
    }

    #[test]
    fn compose_and_invert() {
        let f = series(&[1, 1, 0, 0]);
        assert_eq!(f.compose(&series(&[1, 0, 0, 0])).unwrap(), f);
        assert_eq!(f.invert().unwrap(), series(&[1, -1, 2, -5]));
        let neg = series(&[-1, 0, 0]);
        assert!(neg.compose(&neg).unwrap().is_identity());
        assert_eq!(series(&[0, 1]).invert().unwrap_err(), Error::NotAUnit);
        assert!(matches!(f.compose(&neg), Err(Error::TruncationMismatch(4, 3))));
    }

    #[test]
    fn boettcher_examples() {
        let k = k();
        let z2 = RatFun::monomial(&k, 2);
        assert!(boettcher_solve(&z2, 10).unwrap().is_identity());
        let h = RatFun::from_poly(Poly::from_ints(&k, &[0, 0, 1, 1]));
        let b = boettcher_solve(&h, 8).unwrap();
        assert_eq!(b.coeff(2), k.from_q(crate::algebra::field::qq(-1, 2)));
        assert!(boettcher_residual(&h, &b).unwrap().support().is_empty());
        let q2 = field_make(&FieldSpec::Extension(vec![
            crate::algebra::field::q(-2),
            crate::algebra::field::q(0),
            crate::algebra::field::q(1),
        ]))
        .unwrap();
        let h = RatFun::from_poly(Poly::new(&q2, vec![q2.zero(), q2.zero(), q2.zero(), q2.from_int(2)]));
        let b = boettcher_solve(&h, 6).unwrap();
        assert_eq!(b.coeff(1), q2.gen().inv().unwrap());
        assert_eq!(b.support(), vec![1]);
        assert_eq!(boettcher_solve(&RatFun::identity(&k), 4).unwrap_err(), Error::NotSuperattracting);
    }

    #[test]
    fn transition_examples() {
        let k = k();
        let g = transition_group(&RatFun::monomial(&k, 2), 6).unwrap();
        assert_eq!(g.elements[1], TruncatedSeries::linear(&k.from_int(-1), 6));
        let h = RatFun::from_poly(Poly::from_ints(&k, &[0, 0, 1, 1]));
        let g = transition_group(&h, 3).unwrap();
        assert_eq!(g.elements[1].truncate(2), series(&[-1, -1]));
        assert!(g.is_closed().unwrap() && g.is_abelian().unwrap());
        let k3 = Field::cyclotomic(3);
        let g = transition_group(&RatFun::monomial(&k3, 3), 5).unwrap();
        assert_eq!(g.elements.len(), 3);
        assert!(g.elements.iter().all(|e| e.support() == vec![1]));
    }

    #[test]
    fn commutation() {
        let k3 = Field::cyclotomic(3);
        let neg = TruncatedSeries::linear(&k3.from_int(-1), 4);
        let rot = TruncatedSeries::linear(&k3.gen(), 4);
        assert!(commute_check(&neg, &rot).unwrap());
        let mut c = vec![k3.zero(); 4];
        c[0] = k3.from_int(-1);
        c[1] = k3.from_int(-1);
        let f = TruncatedSeries::new(&k3, c);
        assert!(!commute_check(&f, &rot).unwrap());
        assert!(commute_check(&f, &f).unwrap());
    }
}
