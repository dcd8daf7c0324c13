//! Multi-modular kernels of rational matrices.
//!
//! The matrix is reduced modulo word-size primes; the echelon-form kernel
//! basis is lifted by CRT and rational reconstruction and then verified over
//! Q. Since the rank modulo p never exceeds the rank over Q, a verified basis
//! with `cols - rank_p` vectors is a basis of the rational kernel.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::field::{Fe, Field, Q};

const MAX_PRIMES: usize = 400;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Echelon form modulo p: pivot columns and, for each free column, the
/// kernel vector entries at the pivot columns.
fn kernel_mod(rows: &[Vec<BigInt>], cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| residue(x, p)).collect()).collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for x in a[r].iter_mut().skip(c) {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vecs = free.iter().map(|&fc| pivots.iter().enumerate().map(|(r, _)| (p - a[r][fc]) % p).collect()).collect();
    (pivots, vecs)
}

/// x/y with |x|, y below sqrt(m/2) and x ≡ a y mod m.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
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
    Some(Q::new(r1, t1))
}

/// Kernel basis of a rational matrix, or None if the lift did not verify
/// within the prime budget.
pub(crate) fn kernel_q(field: &Field, m: &[Vec<Fe>], cols: usize) -> Option<Vec<Vec<Fe>>> {
    // clear denominators row by row
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let qs: Vec<&Q> = row.iter().map(|x| x.as_rational().expect("rational entries")).collect();
            let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            qs.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut best: Option<(Vec<usize>, Vec<Vec<BigInt>>, BigInt)> = None;
    let mut last: Option<Vec<Vec<Q>>> = None;
    for p in Primes((1u64 << 62) + 1).take(MAX_PRIMES) {
        let (pivots, vecs) = kernel_mod(&rows, cols, p);
        let pb = BigInt::from(p);
        // keep the maximal rank, then the lexicographically smallest pivots
        let better = match &best {
            None => true,
            Some((bp, _, _)) => pivots.len() > bp.len() || (pivots.len() == bp.len() && pivots < *bp),
        };
        if better {
            best = Some((pivots, to_big(&vecs), pb));
            last = None;
            continue;
        }
        let (bp, acc, modulus) = best.as_mut().unwrap();
        if *bp != pivots {
            continue;
        }
        // CRT: x = acc mod M, x = v mod p
        let inv = BigInt::from(pow_mod(residue(modulus, p), p - 2, p));
        for (a_vec, v_vec) in acc.iter_mut().zip(vecs.iter()) {
            for (a, &v) in a_vec.iter_mut().zip(v_vec.iter()) {
                let diff = (BigInt::from(v) - residue(a, p)).mod_floor(&pb);
                *a += &*modulus * ((diff * &inv) % &pb);
            }
        }
        *modulus *= &pb;
        let (pivots, acc, modulus) = best.as_ref().unwrap();
        let recon: Option<Vec<Vec<Q>>> =
            acc.iter().map(|v| v.iter().map(|a| rational_reconstruct(a, modulus)).collect()).collect();
        let Some(recon) = recon else { continue };
        // only verify once two consecutive reconstructions agree
        if last.as_ref() != Some(&recon) {
            last = Some(recon);
            continue;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<Q>> = free
            .iter()
            .zip(recon.iter())
            .map(|(&fc, entries)| {
                let mut v = vec![Q::zero(); cols];
                v[fc] = Q::one();
                for (&pc, e) in pivots.iter().zip(entries.iter()) {
                    v[pc] = e.clone();
                }
                v
            })
            .collect();
        if basis.iter().all(|v| annihilates(&rows, v)) {
            return Some(basis.into_iter().map(|v| v.into_iter().map(|x| field.from_q(x)).collect()).collect());
        }
    }
    None
}

fn to_big(vecs: &[Vec<u64>]) -> Vec<Vec<BigInt>> {
    vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn annihilates(rows: &[Vec<BigInt>], v: &[Q]) -> bool {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let w: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    rows.iter().all(|r| {
        let s: BigInt = r.iter().zip(w.iter()).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum();
        s.sign() == Sign::NoSign
    })
}

/// Coefficients of a nonzero rational polynomial, scaled to a primitive
/// integer polynomial with positive leading coefficient.
fn primitive_integer(c: &[Fe]) -> Vec<BigInt> {
    let qs: Vec<&Q> = c.iter().map(|x| x.as_rational().expect("rational coefficients")).collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let v: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    make_primitive(v)
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    let mut g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if v.last().is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn reduce_poly(v: &[BigInt], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = v.iter().map(|x| residue(x, p)).collect();
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while a.len() > db {
        let t = mul_mod(*a.last().unwrap(), inv, p);
        let shift = a.len() - 1 - db;
        if t != 0 {
            for (j, &y) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - mul_mod(t, y, p)) % p;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = pow_mod(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&x| mul_mod(x, inv, p)).collect()
}

/// Whether g divides a over Z, for primitive g.
fn divides_z(g: &[BigInt], a: &[BigInt]) -> bool {
    quotient_z(g, a).is_some()
}

/// `a / g` over Z, if exact.
fn quotient_z(g: &[BigInt], a: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    if a.len() <= dg {
        return a.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dg];
    while r.len() > dg {
        let top = r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if !top.is_zero() {
            let (t, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, y) in g.iter().enumerate().take(dg) {
                r[shift + j] -= &t * y;
            }
            q[shift] = t;
        }
        r.pop();
    }
    r.iter().all(|x| x.is_zero()).then_some(q)
}

/// `a / b` for rational polynomials given by coefficients, if exact.
pub(crate) fn div_exact_q(field: &Field, a: &[Fe], b: &[Fe]) -> Option<Vec<Fe>> {
    let rational = |c: &[Fe]| -> (BigInt, Vec<BigInt>) {
        let qs: Vec<&Q> = c.iter().map(|x| x.as_rational().expect("rational coefficients")).collect();
        let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let v = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
        (l, v)
    };
    // a = A / la, b = cb B with B primitive, so a / b = (A / B) / (la cb)
    let (la, ai) = rational(a);
    let (lb, bi) = rational(b);
    let bp = make_primitive(bi.clone());
    let cb = Q::new(bi.last().unwrap().clone(), lb) / Q::from_integer(bp.last().unwrap().clone());
    let q = quotient_z(&bp, &ai)?;
    let scale = (cb * Q::from_integer(la)).recip();
    Some(q.into_iter().map(|x| field.from_q(Q::from_integer(x) * &scale)).collect())
}

/// Monic gcd of two nonzero rational polynomials given by coefficients, or
/// None if the prime budget ran out.
pub(crate) fn gcd_q(field: &Field, a: &[Fe], b: &[Fe]) -> Option<Vec<Fe>> {
    let (a, b) = (primitive_integer(a), primitive_integer(b));
    let one = || Some(vec![field.one()]);
    if a.len() == 1 || b.len() == 1 {
        return one();
    }
    let lcg = a.last().unwrap().gcd(b.last().unwrap());
    let mut best = usize::MAX;
    let mut acc: Vec<BigInt> = vec![];
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    for p in Primes((1u64 << 62) + 1).take(MAX_PRIMES) {
        if residue(a.last().unwrap(), p) == 0 || residue(b.last().unwrap(), p) == 0 {
            continue;
        }
        let g = gcd_mod(&reduce_poly(&a, p), &reduce_poly(&b, p), p);
        let d = g.len() - 1;
        // for such p the modular gcd has degree at least the rational one
        if d == 0 {
            return one();
        }
        if d > best {
            continue;
        }
        let scale = residue(&lcg, p);
        let g: Vec<u64> = g.iter().map(|&x| mul_mod(x, scale, p)).collect();
        let pb = BigInt::from(p);
        if d < best {
            best = d;
            acc = g.iter().map(|&x| BigInt::from(x)).collect();
            modulus = pb;
            last = None;
        } else {
            let inv = BigInt::from(pow_mod(residue(&modulus, p), p - 2, p));
            for (x, &v) in acc.iter_mut().zip(g.iter()) {
                let diff = (BigInt::from(v) - residue(x, p)).mod_floor(&pb);
                *x += &modulus * ((diff * &inv) % &pb);
            }
            modulus *= &pb;
        }
        let half = &modulus >> 1u32;
        let sym: Vec<BigInt> = acc.iter().map(|x| if *x > half { x - &modulus } else { x.clone() }).collect();
        let cand = make_primitive(sym);
        if last.as_ref() == Some(&cand) && divides_z(&cand, &a) && divides_z(&cand, &b) {
            let lc = Q::from_integer(cand.last().unwrap().clone());
            return Some(cand.into_iter().map(|x| field.from_q(Q::from_integer(x) / &lc)).collect());
        }
        last = Some(cand);
    }
    None
}
