//! Critical points and ramification profiles, grouped into classes of
//! conjugate points with identical data. Only gcd computations over K are
//! used; no factorization is required.

use std::fmt;

use crate::algebra::{roots_in_field, Fe, Poly};
use crate::error::{Error, Result};
use crate::ratfun::{RatFun, SpherePoint};

/// A single point, or the set of roots of a squarefree polynomial over K
/// sharing the same data. Classes are not necessarily irreducible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Descriptor {
    Point(SpherePoint),
    Conjugates(Poly),
}

impl Descriptor {
    /// Split a squarefree polynomial into its K-rational roots and the remaining class.
    pub(crate) fn split(g: Poly) -> Vec<Descriptor> {
        let mut rest = g.monic();
        let mut out = vec![];
        if rest.degree() > 1 {
            for r in roots_in_field(&rest) {
                rest = rest.div_exact(&Poly::linear_root(&r)).unwrap();
                out.push(Descriptor::Point(SpherePoint::Finite(r)));
            }
        }
        if rest.degree() == 1 {
            out.push(Descriptor::Point(SpherePoint::Finite(-rest.coeff(0))));
        } else if rest.degree() > 1 {
            out.push(Descriptor::Conjugates(rest));
        }
        out
    }

    /// Number of points described.
    pub fn size(&self) -> usize {
        match self {
            Descriptor::Point(_) => 1,
            Descriptor::Conjugates(g) => g.degree(),
        }
    }

    pub fn point(&self) -> Option<&SpherePoint> {
        match self {
            Descriptor::Point(p) => Some(p),
            Descriptor::Conjugates(_) => None,
        }
    }

    /// Squarefree polynomial whose roots are the finite points described.
    pub fn finite_poly(&self) -> Option<Poly> {
        match self {
            Descriptor::Point(SpherePoint::Finite(a)) => Some(Poly::linear_root(a)),
            Descriptor::Point(SpherePoint::Infinity) => None,
            Descriptor::Conjugates(g) => Some(g.clone()),
        }
    }

    fn sort_key(&self) -> (usize, String) {
        match self {
            Descriptor::Point(SpherePoint::Infinity) => (usize::MAX, String::new()),
            Descriptor::Point(p) => (1, p.to_string()),
            Descriptor::Conjugates(g) => (g.degree(), g.to_string()),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Point(p) => write!(f, "{p}"),
            Descriptor::Conjugates(g) => write!(f, "roots({g})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriticalPoint {
    pub at: Descriptor,
    pub multiplicity: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RamEntry {
    pub value: Descriptor,
    /// Multiplicities over each value of the class, decreasing; sums to the degree.
    pub multiset: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RamificationProfile {
    pub degree: usize,
    pub entries: Vec<RamEntry>,
}

impl RamificationProfile {
    /// `Σ (m - 1)` over all critical values counted with class size; equals `2d - 2`.
    pub fn total_ramification(&self) -> usize {
        self.entries.iter().map(|e| e.value.size() * e.multiset.iter().map(|m| m - 1).sum::<usize>()).sum()
    }

    /// Every critical value has all multiplicities equal.
    pub fn is_uniform(&self) -> bool {
        self.entries.iter().all(|e| e.multiset.iter().all(|&m| m == e.multiset[0]))
    }

    pub fn entry_at(&self, v: &SpherePoint) -> Option<&RamEntry> {
        self.entries.iter().find(|e| e.value.point() == Some(v))
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let ms: Vec<String> = e.multiset.iter().map(|m| m.to_string()).collect();
                format!("{}: {{{}}}", e.value, ms.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

/// Squarefree decomposition of the wronskian restricted to non-poles:
/// pairs (w, k) where the roots of w are finite, finite-valued points of multiplicity k + 1.
fn finite_critical_classes(f: &RatFun) -> Vec<(Poly, usize)> {
    let w = f.wronskian();
    let mut out = vec![];
    for (wk, k) in w.squarefree_factor() {
        let g = wk.gcd(f.den());
        let np = if g.is_one() { wk } else { wk.div_exact(&g).unwrap() };
        if np.degree() > 0 {
            out.push((np.monic(), k + 1));
        }
    }
    out
}

/// All critical points with their multiplicities.
pub fn critical_points(f: &RatFun) -> Result<Vec<CriticalPoint>> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let mut out = vec![];
    for (g, m) in finite_critical_classes(f) {
        for at in Descriptor::split(g) {
            out.push(CriticalPoint { at, multiplicity: m });
        }
    }
    for (g, m) in f.den().squarefree_factor() {
        if m >= 2 {
            for at in Descriptor::split(g) {
                out.push(CriticalPoint { at, multiplicity: m });
            }
        }
    }
    let mi = f.multiplicity_at(&SpherePoint::Infinity)?;
    if mi >= 2 {
        out.push(CriticalPoint { at: Descriptor::Point(SpherePoint::Infinity), multiplicity: mi });
    }
    Ok(out)
}

/// Ramification profile: for every class of critical values, the multiset of
/// multiplicities over each value of the class.
pub fn critical_data(f: &RatFun) -> Result<RamificationProfile> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let k = f.field().clone();
    let d = f.degree();
    // classes of finite critical values with (multiplicity, count) data
    let mut classes: Vec<(Poly, Vec<(usize, usize)>)> = vec![];
    let refine = |v: Poly, datum: (usize, usize), classes: &mut Vec<(Poly, Vec<(usize, usize)>)>| {
        let mut rest = v;
        let mut next = vec![];
        for (g, data) in classes.drain(..) {
            if rest.degree() == 0 {
                next.push((g, data));
                continue;
            }
            let h = g.gcd(&rest);
            if h.degree() == 0 {
                next.push((g, data));
                continue;
            }
            let other = g.div_exact(&h).unwrap();
            rest = rest.div_exact(&h).unwrap();
            let mut with = data.clone();
            with.push(datum);
            next.push((h, with));
            if other.degree() > 0 {
                next.push((other, data));
            }
        }
        if rest.degree() > 0 {
            next.push((rest.monic(), vec![datum]));
        }
        *classes = next;
    };
    for (wk, m) in finite_critical_classes(f) {
        // V(c) = prod over roots a of wk of (num(a) - c den(a))
        let n = wk.degree();
        let xs: Vec<Fe> = (0..=n as i64).map(|i| k.from_int(i)).collect();
        let ys: Vec<Fe> = xs.iter().map(|c| wk.resultant(&(f.num() - &f.den().scale(c)))).collect();
        let v = Poly::interpolate(&k, &xs, &ys);
        for (vj, j) in v.squarefree_factor() {
            refine(vj, (m, j), &mut classes);
        }
    }
    let mi = f.multiplicity_at(&SpherePoint::Infinity)?;
    let mut entries = vec![];
    match f.value_at_infinity() {
        SpherePoint::Finite(c) => {
            if mi >= 2 {
                refine(Poly::linear_root(&c), (mi, 1), &mut classes);
            }
        }
        SpherePoint::Infinity => {}
    }
    for (g, data) in classes {
        let mut ms = vec![];
        for (m, count) in data {
            for _ in 0..count {
                ms.push(m);
            }
        }
        let used: usize = ms.iter().sum();
        ms.extend(std::iter::repeat_n(1, d - used));
        ms.sort_unstable_by(|a, b| b.cmp(a));
        for value in Descriptor::split(g) {
            entries.push(RamEntry { value, multiset: ms.clone() });
        }
    }
    // fiber over infinity: poles and possibly the point at infinity
    let mut over_inf = vec![];
    for (g, m) in f.den().squarefree_factor() {
        for _ in 0..g.degree() {
            over_inf.push(m);
        }
    }
    if f.value_at_infinity().is_infinity() {
        over_inf.push(mi);
    }
    if over_inf.iter().any(|&m| m > 1) {
        let used: usize = over_inf.iter().sum();
        over_inf.extend(std::iter::repeat_n(1, d - used));
        over_inf.sort_unstable_by(|a, b| b.cmp(a));
        entries.push(RamEntry { value: Descriptor::Point(SpherePoint::Infinity), multiset: over_inf });
    }
    entries.sort_by_key(|e| e.value.sort_key());
    Ok(RamificationProfile { degree: d, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        let k = Field::rationals();
        RatFun::new(Poly::from_ints(&k, n), Poly::from_ints(&k, d)).unwrap()
    }

    #[test]
    fn profiles() {
        let k = Field::rationals();
        let z2 = critical_data(&rf(&[0, 0, 1], &[1])).unwrap();
        assert_eq!(z2.to_string(), "{0: {2}; inf: {2}}");
        let j = critical_data(&rf(&[1, 0, 1], &[0, 1])).unwrap();
        assert_eq!(j.entries.len(), 2);
        assert!(j.entry_at(&SpherePoint::Finite(k.from_int(2))).is_some());
        assert!(j.entry_at(&SpherePoint::Finite(k.from_int(-2))).is_some());
        assert_eq!(j.total_ramification(), 2);
        let t3 = critical_data(&rf(&[0, -3, 0, 1], &[1])).unwrap();
        assert_eq!(t3.entry_at(&SpherePoint::Finite(k.from_int(2))).unwrap().multiset, vec![2, 1]);
        assert_eq!(t3.entry_at(&SpherePoint::Finite(k.from_int(-2))).unwrap().multiset, vec![2, 1]);
        assert_eq!(t3.total_ramification(), 4);
    }

    #[test]
    fn conjugate_classes() {
        // z^3 + 3z: critical points +-i, values +-2i form one class
        let f = rf(&[0, 3, 0, 1], &[1]);
        let prof = critical_data(&f).unwrap();
        assert_eq!(prof.total_ramification(), 4);
        let c = prof.entries.iter().find(|e| e.value.size() == 2).unwrap();
        assert_eq!(c.multiset, vec![2, 1]);
    }
}
