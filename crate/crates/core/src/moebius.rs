//! Möbius transformations over K and finite groups generated by them.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::algebra::{roots_in_field, Fe, Field, Poly};
use crate::error::{Error, Result};
use crate::ratfun::{RatFun, SpherePoint};

/// Default cap on the size of a generated group.
pub const DEFAULT_CLOSURE_BOUND: usize = 2000;

/// `(a z + b)/(c z + d)` with the first nonzero entry of (a, b, c, d) equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Moebius {
    a: Fe,
    b: Fe,
    c: Fe,
    d: Fe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(usize),
    Infinite,
    /// The search bound was below the order ceiling and no power was trivial.
    Unknown,
}

impl Moebius {
    pub fn new(a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Moebius> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::Precondition("Möbius map with zero determinant".into()));
        }
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).unwrap().clone();
        if lead.is_one() {
            return Ok(Moebius { a, b, c, d });
        }
        let inv = lead.inv().unwrap();
        Ok(Moebius { a: &a * &inv, b: &b * &inv, c: &c * &inv, d: &d * &inv })
    }

    pub fn identity(k: &Field) -> Moebius {
        Moebius { a: k.one(), b: k.zero(), c: k.zero(), d: k.one() }
    }

    /// `λ z`.
    pub fn scaling(l: &Fe) -> Moebius {
        let k = l.field();
        Moebius::new(l.clone(), k.zero(), k.zero(), k.one()).unwrap()
    }

    /// `z + t`.
    pub fn translation(t: &Fe) -> Moebius {
        let k = t.field();
        Moebius::new(k.one(), t.clone(), k.zero(), k.one()).unwrap()
    }

    /// `1/z`.
    pub fn inversion(k: &Field) -> Moebius {
        Moebius::new(k.zero(), k.one(), k.one(), k.zero()).unwrap()
    }

    pub fn from_ratfun(f: &RatFun) -> Option<Moebius> {
        if f.degree() != 1 {
            return None;
        }
        let (n, d) = (f.num(), f.den());
        Moebius::new(n.coeff(1), n.coeff(0), d.coeff(1), d.coeff(0)).ok()
    }

    pub fn to_ratfun(&self) -> RatFun {
        RatFun::moebius(&self.a, &self.b, &self.c, &self.d).unwrap()
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn entries(&self) -> [&Fe; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Moebius) -> Moebius {
        let a = &(&self.a * &o.a) + &(&self.b * &o.c);
        let b = &(&self.a * &o.b) + &(&self.b * &o.d);
        let c = &(&self.c * &o.a) + &(&self.d * &o.c);
        let d = &(&self.c * &o.b) + &(&self.d * &o.d);
        Moebius::new(a, b, c, d).unwrap()
    }

    pub fn inverse(&self) -> Moebius {
        Moebius::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()).unwrap()
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Moebius) -> Moebius {
        self.compose(g).compose(&self.inverse())
    }

    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        match p {
            SpherePoint::Infinity => {
                if self.c.is_zero() {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(&self.a / &self.c)
                }
            }
            SpherePoint::Finite(x) => {
                let den = &(&self.c * x) + &self.d;
                if den.is_zero() {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(&(&(&self.a * x) + &self.b) / &den)
                }
            }
        }
    }

    pub fn pow(&self, k: usize) -> Moebius {
        let mut acc = Moebius::identity(self.field());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Largest k with φ(k) ≤ 2[K:Q]: no element of finite order exceeds it,
    /// since the eigenvalue ratio lies in an extension of K of degree at most 2.
    pub fn order_ceiling(k: &Field) -> usize {
        let cap = 2 * k.degree();
        let mut best = 1;
        for n in 1..=(4 * cap * cap + 8) {
            if euler_phi(n) <= cap {
                best = n;
            }
        }
        best
    }

    /// Order in PGL2(K), searching powers up to `min(bound, ceiling)`.
    pub fn element_order(&self, bound: Option<usize>) -> ElementOrder {
        let ceiling = Moebius::order_ceiling(self.field());
        let limit = bound.map_or(ceiling, |b| b.min(ceiling));
        let mut p = self.clone();
        for k in 1..=limit {
            if p.is_identity() {
                return ElementOrder::Finite(k);
            }
            p = p.compose(self);
        }
        if limit >= ceiling {
            ElementOrder::Infinite
        } else {
            ElementOrder::Unknown
        }
    }

    /// Fixed points in K ∪ {∞}, or the quadratic whose roots they are.
    pub fn fixed_points(&self) -> std::result::Result<Vec<SpherePoint>, Poly> {
        let k = self.field();
        // c z^2 + (d - a) z - b = 0
        let q = Poly::new(k, vec![-&self.b, &self.d - &self.a, self.c.clone()]);
        if q.is_zero() {
            return Ok(vec![]);
        }
        let mut out: Vec<SpherePoint> = vec![];
        if self.c.is_zero() {
            out.push(SpherePoint::Infinity);
        }
        if q.degree() >= 1 {
            let rs = roots_in_field(&q);
            let expected = q.squarefree_part().degree();
            if rs.len() < expected {
                return Err(q);
            }
            out.extend(rs.into_iter().map(SpherePoint::Finite));
        }
        Ok(out)
    }

    fn sort_key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfun())
    }
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn euler_phi(n: usize) -> usize {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// A finite group of Möbius maps, elements in a deterministic order.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusGroup {
    elements: Vec<Moebius>,
}

impl MoebiusGroup {
    pub fn from_elements(mut elements: Vec<Moebius>) -> MoebiusGroup {
        elements.sort_by_key(|m| (!m.is_identity(), m.sort_key()));
        elements.dedup();
        MoebiusGroup { elements }
    }

    pub fn trivial(k: &Field) -> MoebiusGroup {
        MoebiusGroup { elements: vec![Moebius::identity(k)] }
    }

    pub fn elements(&self) -> &[Moebius] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Moebius) -> bool {
        self.elements.contains(m)
    }

    pub fn is_closed(&self) -> bool {
        let set: HashSet<&Moebius> = self.elements.iter().collect();
        self.elements.iter().all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn intersection(&self, other: &MoebiusGroup) -> Vec<Moebius> {
        self.elements.iter().filter(|m| other.contains(m)).cloned().collect()
    }

    /// Order of each element (all finite).
    pub fn element_orders(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(|m| {
                let mut p = m.clone();
                let mut k = 1;
                while !p.is_identity() {
                    p = p.compose(m);
                    k += 1;
                }
                k
            })
            .collect()
    }
}

impl fmt::Display for MoebiusGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Group generated by `gens`, by breadth-first closure.
pub fn group_closure(k: &Field, gens: &[Moebius], bound: usize) -> Result<MoebiusGroup> {
    let exceeds = |w: Option<&Moebius>| Error::ExceedsBound { bound, infinite_witness: w.map(|m| m.to_string()) };
    for g in gens {
        if g.element_order(None) == ElementOrder::Infinite {
            return Err(exceeds(Some(g)));
        }
    }
    for g in gens {
        for h in gens {
            let p = g.compose(h);
            if p.element_order(None) == ElementOrder::Infinite {
                return Err(exceeds(Some(&p)));
            }
        }
    }
    let id = Moebius::identity(k);
    let mut seen: HashSet<Moebius> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let n = g.compose(&e);
            if seen.insert(n.clone()) {
                if seen.len() > bound {
                    let witness = seen.iter().find(|m| m.element_order(None) == ElementOrder::Infinite).cloned();
                    return Err(exceeds(witness.as_ref()));
                }
                queue.push_back(n);
            }
        }
    }
    Ok(MoebiusGroup::from_elements(seen.into_iter().collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupType {
    Cyclic(usize),
    Dihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::Cyclic(n) => write!(f, "C{n}"),
            GroupType::Dihedral(n) => write!(f, "D{n}"),
            GroupType::Tetrahedral => f.write_str("A4"),
            GroupType::Octahedral => f.write_str("S4"),
            GroupType::Icosahedral => f.write_str("A5"),
        }
    }
}

/// Isomorphism type among the finite subgroups of PGL2.
pub fn classify_group(g: &MoebiusGroup) -> Result<GroupType> {
    let n = g.order();
    let orders = g.element_orders();
    let max = orders.iter().copied().max().unwrap_or(1);
    if max == n {
        return Ok(GroupType::Cyclic(n));
    }
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    match (n, max) {
        (12, 3) if involutions == 3 => return Ok(GroupType::Tetrahedral),
        (24, 4) if involutions == 9 => return Ok(GroupType::Octahedral),
        (60, 5) if involutions == 15 => return Ok(GroupType::Icosahedral),
        _ => {}
    }
    if n.is_multiple_of(2) && max == n / 2 {
        let m = n / 2;
        let expected = if m.is_multiple_of(2) { m + 1 } else { m };
        if involutions == expected {
            return Ok(GroupType::Dihedral(m));
        }
    }
    Err(Error::UnclassifiableGroup(n))
}

/// A conjugation putting a cyclic or dihedral group into standard position:
/// `σ⁻¹ G σ` is `<ζ z>` or `<ζ z, k/z>`.
#[derive(Clone, Debug)]
pub struct Standardization {
    pub kind: GroupType,
    pub sigma: Moebius,
    /// For dihedral groups, the constant k of the standard flip `k/z`.
    pub flip_constant: Option<Fe>,
}

impl Standardization {
    /// Invariant map of the standard group.
    pub fn standard_quotient(&self, k: &Field) -> RatFun {
        match self.kind {
            GroupType::Cyclic(n) => RatFun::monomial(k, n),
            GroupType::Dihedral(n) => {
                let c = self.flip_constant.clone().unwrap().pow(n as u64);
                let num = &Poly::monomial(k.one(), 2 * n) + &Poly::constant(c);
                RatFun::new(num, Poly::monomial(k.one(), n)).unwrap()
            }
            _ => unreachable!("only cyclic and dihedral groups are standardized"),
        }
    }

    /// Invariant map of the original group, of degree |G|.
    pub fn quotient(&self, k: &Field) -> RatFun {
        self.standard_quotient(k).compose(&self.sigma.inverse().to_ratfun())
    }
}

/// σ with σ(0) = p1 and σ(∞) = p2, using unit scale.
fn moebius_sending_zero_inf(k: &Field, p1: &SpherePoint, p2: &SpherePoint) -> Moebius {
    match (p1, p2) {
        (SpherePoint::Finite(a), SpherePoint::Infinity) => Moebius::translation(a),
        (SpherePoint::Infinity, SpherePoint::Finite(b)) => Moebius::new(b.clone(), k.one(), k.one(), k.zero()).unwrap(),
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            Moebius::new(b.clone(), a.clone(), k.one(), k.one()).unwrap()
        }
        _ => unreachable!(),
    }
}

/// Ordered fixed points of a nontrivial element of finite order.
fn ordered_fixed_points(g: &Moebius) -> Result<(SpherePoint, SpherePoint)> {
    let fp = g.fixed_points().map_err(|q| Error::FieldTooSmall { min_poly: q.to_string() })?;
    if fp.len() != 2 {
        return Err(Error::Precondition(format!("{g} does not have two fixed points")));
    }
    let (mut p1, mut p2) = (fp[0].clone(), fp[1].clone());
    let key = |p: &SpherePoint| match p {
        SpherePoint::Infinity => None,
        SpherePoint::Finite(x) => Some(x.clone()),
    };
    // ∞ goes to ∞ when it is fixed; otherwise order canonically.
    let greater = |a: &SpherePoint, b: &SpherePoint| {
        !b.is_infinity() && key(a).unwrap().canonical_cmp(&key(b).unwrap()) == std::cmp::Ordering::Greater
    };
    if p1.is_infinity() || greater(&p1, &p2) {
        std::mem::swap(&mut p1, &mut p2);
    }
    Ok((p1, p2))
}

/// σ with `σ⁻¹ G σ = <ζ_n z>` for a cyclic group G.
pub fn standardize_cyclic(g: &MoebiusGroup) -> Result<Moebius> {
    let k = g.elements()[0].field().clone();
    let n = g.order();
    if n == 1 {
        return Ok(Moebius::identity(&k));
    }
    let orders = g.element_orders();
    let gen = g
        .elements()
        .iter()
        .zip(orders.iter())
        .find(|(_, &o)| o == n)
        .map(|(m, _)| m.clone())
        .ok_or_else(|| Error::Precondition("group is not cyclic".into()))?;
    let (p1, p2) = ordered_fixed_points(&gen)?;
    Ok(moebius_sending_zero_inf(&k, &p1, &p2))
}

pub fn standardize(g: &MoebiusGroup) -> Result<Standardization> {
    let k = g.elements()[0].field().clone();
    let kind = classify_group(g)?;
    match kind {
        GroupType::Cyclic(_) => Ok(Standardization { kind, sigma: standardize_cyclic(g)?, flip_constant: None }),
        GroupType::Dihedral(n) => {
            let orders = g.element_orders();
            // candidate rotations: elements of order n (for n = 2 every involution)
            let mut last_err = None;
            for (r, &o) in g.elements().iter().zip(orders.iter()) {
                if o != n {
                    continue;
                }
                let (p1, p2) = match ordered_fixed_points(r) {
                    Ok(p) => p,
                    Err(e) => {
                        last_err = Some(e);
                        continue;
                    }
                };
                let sigma = moebius_sending_zero_inf(&k, &p1, &p2);
                let sinv = sigma.inverse();
                let rot: Vec<Moebius> = (0..n).map(|i| r.pow(i)).collect();
                let flip = g.elements().iter().find(|m| !rot.contains(m)).unwrap();
                let f = sinv.compose(flip).compose(&sigma);
                // f = k/z in canonical form (0, 1, 1/k, 0)
                let [a, b, c, d] = f.entries();
                if !a.is_zero() || !d.is_zero() {
                    continue;
                }
                let kc = b / c;
                let mut std = Standardization { kind, sigma, flip_constant: Some(kc.clone()) };
                // Prefer the flip 1/z when k is a square in K.
                let sq = Poly::new(&k, vec![-&kc, k.zero(), k.one()]);
                if let Some(s) = roots_in_field(&sq).into_iter().next() {
                    std.sigma = std.sigma.compose(&Moebius::scaling(&s));
                    std.flip_constant = Some(k.one());
                }
                return Ok(std);
            }
            Err(last_err.unwrap_or(Error::UnclassifiableGroup(g.order())))
        }
        other => Err(Error::UnsupportedGroup(other.to_string())),
    }
}

/// Invariant rational function of degree |G| for cyclic and dihedral groups.
pub fn quotient_map(g: &MoebiusGroup) -> Result<RatFun> {
    let k = g.elements()[0].field().clone();
    Ok(standardize(g)?.quotient(&k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: &Field, a: i64, b: i64, c: i64, d: i64) -> Moebius {
        Moebius::new(k.from_int(a), k.from_int(b), k.from_int(c), k.from_int(d)).unwrap()
    }

    #[test]
    fn basic_ops() {
        let k = Field::rationals();
        let inv = m(&k, 0, 1, 1, 0);
        let neg = m(&k, -1, 0, 0, 1);
        assert_eq!(inv.compose(&neg), m(&k, 0, -1, 1, 0));
        assert_eq!(m(&k, 1, 1, 0, 1).inverse(), m(&k, 1, -1, 0, 1));
        assert_eq!(inv.apply(&SpherePoint::Finite(k.zero())), SpherePoint::Infinity);
    }

    #[test]
    fn orders() {
        let k = Field::rationals();
        assert_eq!(m(&k, -1, 0, 0, 1).element_order(None), ElementOrder::Finite(2));
        assert_eq!(m(&k, 2, 0, 0, 1).element_order(None), ElementOrder::Infinite);
        let k5 = Field::cyclotomic(5);
        let r = Moebius::scaling(&k5.gen());
        assert_eq!(r.element_order(None), ElementOrder::Finite(5));
    }

    #[test]
    fn closures() {
        let k = Field::rationals();
        let g = group_closure(&k, &[m(&k, -1, 0, 0, 1)], DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(g.order(), 2);
        let k3 = Field::cyclotomic(3);
        let d3 = group_closure(&k3, &[Moebius::inversion(&k3), Moebius::scaling(&k3.gen())], 2000).unwrap();
        assert_eq!(d3.order(), 6);
        assert_eq!(classify_group(&d3).unwrap(), GroupType::Dihedral(3));
        let bad = group_closure(&k, &[m(&k, 0, 1, 1, 0), m(&k, 1, -2, 1, -1)], 2000);
        assert!(matches!(bad, Err(Error::ExceedsBound { infinite_witness: Some(_), .. })));
    }

    #[test]
    fn classification() {
        let k = Field::rationals();
        let klein = group_closure(&k, &[m(&k, -1, 0, 0, 1), m(&k, 0, 1, 1, 0)], 2000).unwrap();
        assert_eq!(classify_group(&klein).unwrap(), GroupType::Dihedral(2));
        let k6 = Field::cyclotomic(6);
        let c6 = group_closure(&k6, &[Moebius::scaling(&k6.primitive_root_of_unity(6).unwrap())], 2000).unwrap();
        assert_eq!(classify_group(&c6).unwrap(), GroupType::Cyclic(6));
        let k4 = Field::cyclotomic(4);
        let d4 = group_closure(&k4, &[Moebius::inversion(&k4), Moebius::scaling(&k4.gen())], 2000).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(classify_group(&d4).unwrap(), GroupType::Dihedral(4));
    }

    #[test]
    fn standardization() {
        let k = Field::rationals();
        let g = group_closure(&k, &[m(&k, -1, 2, 0, 1)], 2000).unwrap();
        assert_eq!(standardize_cyclic(&g).unwrap(), m(&k, 1, 1, 0, 1));
        let g = group_closure(&k, &[m(&k, -1, 0, 0, 1)], 2000).unwrap();
        assert!(standardize_cyclic(&g).unwrap().is_identity());
        let k4 = Field::cyclotomic(4);
        let g = group_closure(&k4, &[Moebius::scaling(&k4.gen())], 2000).unwrap();
        assert!(standardize_cyclic(&g).unwrap().is_identity());
    }

    #[test]
    fn quotients() {
        let k = Field::rationals();
        let klein = group_closure(&k, &[m(&k, -1, 0, 0, 1), m(&k, 0, 1, 1, 0)], 2000).unwrap();
        let h = quotient_map(&klein).unwrap();
        assert_eq!(h.degree(), 4);
        for g in klein.elements() {
            assert_eq!(h.compose(&g.to_ratfun()), h);
        }
    }
}
