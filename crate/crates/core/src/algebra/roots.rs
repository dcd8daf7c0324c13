//! Roots of polynomials inside the coefficient field, found p-adically and
//! certified by exact evaluation. Also a certified irreducibility test over Q
//! used when constructing extension fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::field::{Fe, Field, Q};
use crate::algebra::poly::Poly;

/// Upper bound on embedding-combinations examined before giving up on completeness.
const MAX_COMBINATIONS: usize = 400_000;

/// All distinct roots of `f` lying in its coefficient field, in canonical order.
///
/// Every returned root is verified exactly. Completeness holds whenever the
/// roots have height below the working precision, which is chosen generously
/// from the coefficient size.
pub fn roots_in_field(f: &Poly) -> Vec<Fe> {
    let k = f.field().clone();
    if f.degree() == 0 {
        return vec![];
    }
    let g = f.squarefree_part();
    if g.degree() == 1 {
        return vec![-g.coeff(0)];
    }
    let mut out = padic_roots(&k, &g);
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    out
}

fn padic_roots(k: &Field, g: &Poly) -> Vec<Fe> {
    let e = k.degree();
    let modulus = k.modulus().to_vec();
    let mut den_lcm = BigInt::one();
    let mut max_bits = 0u64;
    for c in g.coeffs() {
        for x in c.coords() {
            den_lcm = den_lcm.lcm(x.denom());
        }
    }
    for x in &modulus {
        den_lcm = den_lcm.lcm(x.denom());
    }
    for c in g.coeffs() {
        for x in c.coords() {
            max_bits = max_bits.max(x.numer().bits() + den_lcm.bits());
        }
    }
    for x in &modulus {
        max_bits = max_bits.max(x.numer().bits() + den_lcm.bits());
    }
    let root_bits = e as u64 * (max_bits + 2 * g.degree() as u64 + 24) + 32;
    let target_bits = 2 * root_bits + 8;

    // several good primes are sampled and the one with the fewest root
    // combinations is lifted
    struct Candidate {
        p: u64,
        mroots: Vec<u64>,
        local_roots: Vec<Vec<u64>>,
        combos: usize,
    }
    let mut best: Option<Candidate> = None;
    let mut good_primes = 0;
    let mut p = 1009u64;
    let mut tries = 0;
    while tries < 400 && good_primes < 4 {
        p = next_prime(p + 1);
        tries += 1;
        if (&den_lcm % p).is_zero() {
            continue;
        }
        let mmod: Vec<u64> = modulus.iter().map(|x| q_mod(x, p)).collect();
        let mroots = fp::roots(&mmod, p);
        if mroots.len() != e {
            continue;
        }
        let mut local_roots = Vec::with_capacity(e);
        let mut good = true;
        for &r in &mroots {
            let gj: Vec<u64> = g.coeffs().iter().map(|c| fe_mod_at(c, r, p)).collect();
            if *gj.last().unwrap() == 0 {
                good = false;
                break;
            }
            let d = fp::derivative(&gj, p);
            if fp::degree(&fp::gcd(&gj, &d, p)) != Some(0) {
                good = false;
                break;
            }
            local_roots.push(fp::roots(&gj, p));
        }
        if !good {
            continue;
        }
        if local_roots.iter().any(|rs| rs.is_empty()) {
            return vec![];
        }
        good_primes += 1;
        let combos = local_roots.iter().fold(1usize, |acc, rs| acc.saturating_mul(rs.len()));
        if best.as_ref().is_none_or(|b| combos < b.combos) {
            best = Some(Candidate { p, mroots, local_roots, combos });
        }
    }
    let Some(Candidate { p, mroots, local_roots, .. }) = best else {
        return vec![];
    };
    let digits = (target_bits as f64 / (p as f64).log2()).ceil() as u32 + 1;
    let big_p = BigInt::from(p);
    let m_big = big_p.pow(digits);
    let mint: Vec<BigInt> = modulus.iter().map(|x| q_mod_big(x, &m_big)).collect();
    let lifted_r: Vec<BigInt> = mroots.iter().map(|&r| hensel(&mint, BigInt::from(r), &m_big, digits)).collect();
    let mut lifted_roots: Vec<Vec<BigInt>> = Vec::with_capacity(e);
    for (j, rj) in lifted_r.iter().enumerate() {
        let gj: Vec<BigInt> = g.coeffs().iter().map(|c| fe_mod_big_at(c, rj, &m_big)).collect();
        lifted_roots.push(local_roots[j].iter().map(|&a| hensel(&gj, BigInt::from(a), &m_big, digits)).collect());
    }
    match vandermonde_inverse(&lifted_r, &m_big) {
        Some(vinv) => combine(k, g, &lifted_roots, &vinv, &m_big),
        None => vec![],
    }
}

fn combine(k: &Field, g: &Poly, lifted: &[Vec<BigInt>], vinv: &[Vec<BigInt>], m: &BigInt) -> Vec<Fe> {
    let e = lifted.len();
    let total: usize = lifted.iter().map(|v| v.len()).product();
    let mut idx = vec![0usize; e];
    let mut out = vec![];
    let mut seen = 0usize;
    loop {
        seen += 1;
        if seen > MAX_COMBINATIONS || out.len() >= g.degree() {
            break;
        }
        let mut coords = Vec::with_capacity(e);
        let mut ok = true;
        for row in vinv.iter() {
            let mut acc = BigInt::zero();
            for j in 0..e {
                acc += &row[j] * &lifted[j][idx[j]];
            }
            let acc = acc.mod_floor(m);
            match rational_reconstruct(&acc, m) {
                Some(x) => coords.push(x),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let cand = k.from_coords(coords);
            if g.eval(&cand).is_zero() && !out.contains(&cand) {
                out.push(cand);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == e {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < lifted[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if seen >= total {
            break;
        }
    }
    out
}

fn hensel(f: &[BigInt], mut a: BigInt, m: &BigInt, digits: u32) -> BigInt {
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| (c * BigInt::from(i)).mod_floor(m)).collect();
    let mut prec = 1u32;
    while prec < digits {
        let fa = eval_mod(f, &a, m);
        let dfa = eval_mod(&df, &a, m);
        let inv = match mod_inverse(&dfa, m) {
            Some(i) => i,
            None => return a,
        };
        a = (&a - fa * inv).mod_floor(m);
        prec *= 2;
    }
    a
}

fn eval_mod(f: &[BigInt], a: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * a + c).mod_floor(m);
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else if (-&g.gcd).is_one() {
        Some((-g.x).mod_floor(m))
    } else {
        None
    }
}

fn vandermonde_inverse(r: &[BigInt], m: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let e = r.len();
    // rows j: r_j^i; we need coords = V^{-1} alpha where alpha_j = sum_i coord_i r_j^i.
    let mut a: Vec<Vec<BigInt>> = (0..e)
        .map(|j| {
            let mut row = Vec::with_capacity(2 * e);
            let mut p = BigInt::one();
            for _ in 0..e {
                row.push(p.clone());
                p = (p * &r[j]).mod_floor(m);
            }
            for t in 0..e {
                row.push(if t == j { BigInt::one() } else { BigInt::zero() });
            }
            row
        })
        .collect();
    for col in 0..e {
        let piv = (col..e).find(|&i| mod_inverse(&a[i][col], m).is_some())?;
        a.swap(col, piv);
        let inv = mod_inverse(&a[col][col], m)?;
        for x in a[col].iter_mut() {
            *x = (&*x * &inv).mod_floor(m);
        }
        for i in 0..e {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for t in 0..2 * e {
                    let v = (&a[i][t] - &f * &a[col][t]).mod_floor(m);
                    a[i][t] = v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[e..].to_vec()).collect())
}

/// Find a/b with a = b*u mod m, |a|, |b| below sqrt(m/2).
pub(crate) fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

fn q_mod(x: &Q, p: u64) -> u64 {
    let pn = BigInt::from(p);
    let n = x.numer().mod_floor(&pn).to_u64().unwrap();
    let d = x.denom().mod_floor(&pn).to_u64().unwrap();
    fp::mul(n, fp::inv(d, p), p)
}

fn q_mod_big(x: &Q, m: &BigInt) -> BigInt {
    let d = mod_inverse(&x.denom().mod_floor(m), m).expect("denominator coprime to p");
    (x.numer() * d).mod_floor(m)
}

fn fe_mod_at(c: &Fe, r: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for x in c.coords().iter().rev() {
        acc = fp::add(fp::mul(acc, r, p), q_mod(x, p), p);
    }
    acc
}

fn fe_mod_big_at(c: &Fe, r: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for x in c.coords().iter().rev() {
        acc = (acc * r + q_mod_big(x, m)).mod_floor(m);
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// Irreducibility of a monic polynomial over Q (coefficients low to high).
/// `None` means neither irreducibility nor a factor could be certified.
pub fn is_irreducible_over_q(m: &[Q]) -> Option<bool> {
    let k = Field::rationals();
    let n = m.len() - 1;
    if n <= 1 {
        return Some(true);
    }
    let poly = Poly::new(&k, m.iter().map(|x| k.from_q(x.clone())).collect());
    if poly.squarefree_part().degree() < n {
        return Some(false);
    }
    if !roots_in_field(&poly).is_empty() {
        return Some(false);
    }
    if n <= 3 {
        return Some(true);
    }
    let mut den = BigInt::one();
    for x in m {
        den = den.lcm(x.denom());
    }
    // Possible factor degrees must be subset sums of every modular pattern.
    let mut possible: Vec<bool> = vec![true; n + 1];
    let mut p = 2u64;
    for _ in 0..60 {
        p = next_prime(p + 1);
        if (&den % p).is_zero() {
            continue;
        }
        let f: Vec<u64> = m.iter().map(|x| q_mod(x, p)).collect();
        let df = fp::derivative(&f, p);
        if fp::degree(&fp::gcd(&f, &df, p)) != Some(0) {
            continue;
        }
        let pattern = fp::distinct_degree_pattern(&f, p);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in pattern {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for s in 0..=n {
            possible[s] &= sums[s];
        }
        if (1..n).all(|s| !possible[s]) {
            return Some(true);
        }
    }
    None
}

/// Arithmetic in Z/p and (Z/p)[x] with small primes.
pub(crate) mod fp {
    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        (a + b) % p
    }

    pub fn sub(a: u64, b: u64, p: u64) -> u64 {
        (a + p - b) % p
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn degree(v: &[u64]) -> Option<usize> {
        let mut n = v.len();
        while n > 0 && v[n - 1] == 0 {
            n -= 1;
        }
        if n == 0 {
            None
        } else {
            Some(n - 1)
        }
    }

    pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
        let mut acc = 0;
        for &c in f.iter().rev() {
            acc = add(mul(acc, x, p), c, p);
        }
        acc
    }

    pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
        let mut d: Vec<u64> = f.iter().enumerate().skip(1).map(|(i, &c)| mul(c, i as u64 % p, p)).collect();
        trim(&mut d);
        d
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let inv_lc = inv(b[db], p);
        while r.len() > db {
            let t = mul(*r.last().unwrap(), inv_lc, p);
            let off = r.len() - 1 - db;
            for j in 0..=db {
                r[off + j] = sub(r[off + j], mul(t, b[j], p), p);
            }
            trim(&mut r);
        }
        r
    }

    pub fn div(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        if r.len() <= db {
            return vec![];
        }
        let inv_lc = inv(b[db], p);
        let mut q = vec![0; r.len() - db];
        for i in (0..q.len()).rev() {
            let t = mul(r[i + db], inv_lc, p);
            q[i] = t;
            for j in 0..=db {
                r[i + j] = sub(r[i + j], mul(t, b[j], p), p);
            }
        }
        q
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = add(c[i + j], mul(x, y, p), p);
            }
        }
        rem(&c, m, p)
    }

    /// Distinct roots in Z/p, found by exhaustive evaluation.
    pub fn roots(f: &[u64], p: u64) -> Vec<u64> {
        let d = match degree(f) {
            Some(d) if d > 0 => d,
            _ => return vec![],
        };
        let mut out = vec![];
        for x in 0..p {
            if eval(f, x, p) == 0 {
                out.push(x);
                if out.len() == d {
                    break;
                }
            }
        }
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial.
    pub fn distinct_degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = f.to_vec();
        trim(&mut f);
        let mut out = vec![];
        let mut h = vec![0u64, 1];
        let mut i = 0usize;
        while degree(&f).unwrap_or(0) > 0 {
            i += 1;
            if 2 * i > degree(&f).unwrap() {
                out.push(degree(&f).unwrap());
                break;
            }
            h = {
                // h <- h^p mod f
                let mut r = vec![1u64];
                let mut base = rem(&h, &f, p);
                let mut e = p;
                while e > 0 {
                    if e & 1 == 1 {
                        r = mulmod(&r, &base, &f, p);
                    }
                    base = mulmod(&base, &base, &f, p);
                    e >>= 1;
                }
                r
            };
            let mut hx = h.clone();
            if hx.len() < 2 {
                hx.resize(2, 0);
            }
            hx[1] = sub(hx[1], 1, p);
            let g = gcd(&f, &hx, p);
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 {
                for _ in 0..dg / i {
                    out.push(i);
                }
                f = div(&f, &g, p);
                h = rem(&h, &f, p);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{field_make, q, qq, FieldSpec};

    #[test]
    fn rational_roots() {
        let k = Field::rationals();
        // (2z - 3)(z + 5)(z^2 + 1)
        let f = &(&Poly::from_ints(&k, &[-3, 2]) * &Poly::from_ints(&k, &[5, 1])) * &Poly::from_ints(&k, &[1, 0, 1]);
        let r = roots_in_field(&f);
        assert_eq!(r, vec![k.from_q(qq(3, 2)), k.from_int(-5)]);
    }

    #[test]
    fn roots_in_cyclotomic_field() {
        let k = Field::cyclotomic(3);
        let f = Poly::from_ints(&k, &[-1, 0, 0, 1]);
        let r = roots_in_field(&f);
        assert_eq!(r.len(), 3);
        for x in &r {
            assert!(f.eval(x).is_zero());
        }
    }

    #[test]
    fn roots_in_quadratic_field() {
        let k = field_make(&FieldSpec::Extension(vec![q(-2), q(0), q(1)])).unwrap();
        // z^2 - 1/2
        let f = Poly::new(&k, vec![k.from_q(qq(-1, 2)), k.zero(), k.one()]);
        let r = roots_in_field(&f);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], k.from_coords(vec![q(0), qq(1, 2)]));
    }

    #[test]
    fn irreducibility() {
        assert_eq!(is_irreducible_over_q(&[q(-2), q(0), q(1)]), Some(true));
        assert_eq!(is_irreducible_over_q(&[q(-1), q(0), q(1)]), Some(false));
        assert_eq!(is_irreducible_over_q(&[q(-2), q(0), q(0), q(0), q(1)]), Some(true));
        // (w^2 + 1)(w^2 + 3) has no rational roots
        let v = vec![q(3), q(0), q(4), q(0), q(1)];
        assert_ne!(is_irreducible_over_q(&v), Some(true));
    }

    #[test]
    fn reconstruct() {
        let m = BigInt::from(1_000_003u64).pow(2);
        let x = Q::new(BigInt::from(-7), BigInt::from(13));
        let u = q_mod_big(&x, &m);
        assert_eq!(rational_reconstruct(&u, &m), Some(x));
    }
}
