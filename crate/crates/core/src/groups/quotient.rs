use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::group::{enumerate_elements, FiniteGroup, Subgroup};
use super::law::{Element, QuotientLaw};
use super::series::commutator_subgroup;
use crate::error::{Error, Result};

/// `g / n` as a group on coset representatives.
pub fn quotient_group(g: &Subgroup, n: &Subgroup, cap: usize) -> Result<FiniteGroup> {
    let group = g.group();
    if !n.is_subgroup_of(g) {
        return Err(Error::NotNormal);
    }
    for x in n.elements() {
        for s in g.generators() {
            if !n.contains(&group.conjugate(x, s)) {
                return Err(Error::NotNormal);
            }
        }
    }
    let count = g.order() / n.order();
    if count > cap {
        return Err(Error::EnumerationLimit(cap));
    }
    let mut rep_of: HashMap<Element, Element> = HashMap::with_capacity(g.order());
    let mut reps = Vec::with_capacity(count);
    // elements are sorted, so the first unassigned one is the smallest
    // member of its coset
    for x in g.elements() {
        if rep_of.contains_key(x) {
            continue;
        }
        for y in n.elements() {
            rep_of.insert(group.multiply(x, y), x.clone());
        }
        reps.push(x.clone());
    }
    if reps.len() * n.order() != g.order() || rep_of.len() != g.order() {
        return Err(Error::ClosureViolation);
    }
    let law = QuotientLaw { parent: group.law().clone(), rep_of: Arc::new(rep_of), reps: Arc::new(reps) };
    let id = law.project(&group.identity());
    let mut gens: Vec<Element> = Vec::new();
    for s in g.generators() {
        let r = law.project(s);
        if r != id && !gens.contains(&r) {
            gens.push(r);
        }
    }
    FiniteGroup::from_law(Arc::new(law), gens, format!("{} / N", group.label()))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariants of an abelian group as prime powers, grouped by ascending
/// prime and ascending within each prime, read off from the sizes of the
/// `p^j`-th power subgroups of each primary part.
pub fn abelian_invariants(a: &Subgroup) -> Result<Vec<u64>> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let g = a.group();
    let order = a.order() as u64;
    let mut out = Vec::new();
    for p in prime_factors(order) {
        let mut pe = 1;
        while order % (pe * p) == 0 {
            pe *= p;
        }
        let mut current: Vec<Element> = a.elements().iter().filter(|x| g.pow(x, pe) == g.identity()).cloned().collect();
        let mut sizes = vec![current.len() as u64];
        while current.len() > 1 {
            let next: HashSet<Element> = current.iter().map(|x| g.pow(x, p)).collect();
            current = next.into_iter().collect();
            sizes.push(current.len() as u64);
        }
        // r[j] = number of cyclic factors of order at least p^(j+1)
        let r: Vec<u32> = sizes.windows(2).map(|w| log_p(w[0] / w[1], p)).collect();
        let mut q = p;
        for j in 0..r.len() {
            let exact = r[j] - r.get(j + 1).copied().unwrap_or(0);
            out.extend(std::iter::repeat(q).take(exact as usize));
            q *= p;
        }
    }
    Ok(out)
}

fn log_p(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Order, exponent, abelianization and derived length. Used where the
/// text asserts an isomorphism that is not certified here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub exponent: u64,
    pub abelianization: Vec<u64>,
    /// `None` when the derived series stabilizes at a non-trivial group.
    pub derived_length: Option<u32>,
}

pub fn fingerprint(g: &Subgroup, cap: usize) -> Result<GroupFingerprint> {
    let group = g.group();
    let mut exponent = 1u64;
    for x in g.elements() {
        exponent = num_integer::lcm(exponent, group.element_order(x));
    }
    let derived = commutator_subgroup(g, g, cap)?;
    let ab = quotient_group(g, &derived, cap)?;
    let ab = enumerate_elements(&ab, cap)?;
    let abelianization = abelian_invariants(&ab)?;
    let mut derived_length = None;
    let mut term = g.clone();
    let mut k = 0;
    loop {
        if term.is_trivial() {
            derived_length = Some(k);
            break;
        }
        let next = if k == 0 { derived.clone() } else { commutator_subgroup(&term, &term, cap)? };
        if next.order() == term.order() {
            break;
        }
        term = next;
        k += 1;
    }
    Ok(GroupFingerprint { order: g.order() as u64, exponent, abelianization, derived_length })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::{construct_group, subgroup_generated, DEFAULT_ELEMENT_CAP as CAP};
    use crate::groups::series::center;
    use crate::groups::spec::{GroupSpec, RingSpec};

    fn whole(spec: GroupSpec) -> Subgroup {
        enumerate_elements(&construct_group(&spec).unwrap(), CAP).unwrap()
    }

    #[test]
    fn invariants_of_small_abelian_groups() {
        assert_eq!(abelian_invariants(&whole(GroupSpec::Cyclic { n: 12 })).unwrap(), vec![4, 3]);
        let p = GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 4 }] };
        assert_eq!(abelian_invariants(&whole(p)).unwrap(), vec![2, 4]);
        let k = whole(GroupSpec::CongruenceKernel { n: 3, ring: RingSpec::Zmod { m: 4 }, level: 1 });
        assert_eq!(abelian_invariants(&k).unwrap(), vec![2; 8]);
        let s = whole(GroupSpec::Sl { n: 2, ring: RingSpec::Zmod { m: 3 } });
        assert_eq!(abelian_invariants(&s), Err(Error::NotAbelian));
    }

    #[test]
    fn quotients() {
        let c8 = whole(GroupSpec::Cyclic { n: 8 });
        let n = subgroup_generated(c8.group(), &[Element(vec![4])], CAP).unwrap();
        let q = enumerate_elements(&quotient_group(&c8, &n, CAP).unwrap(), CAP).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(abelian_invariants(&q).unwrap(), vec![4]);
        let h = whole(GroupSpec::Unitriangular { n: 3, p: 2 });
        let z = center(&h).unwrap();
        let q = enumerate_elements(&quotient_group(&h, &z, CAP).unwrap(), CAP).unwrap();
        assert_eq!(abelian_invariants(&q).unwrap(), vec![2, 2]);
    }

    #[test]
    fn non_normal_rejected() {
        let s = whole(GroupSpec::Sl { n: 2, ring: RingSpec::Zmod { m: 2 } });
        let t = subgroup_generated(s.group(), &[s.group().generators()[0].clone()], CAP).unwrap();
        assert_eq!(quotient_group(&s, &t, CAP).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn fingerprints() {
        let f = fingerprint(&whole(GroupSpec::Sl { n: 2, ring: RingSpec::Zmod { m: 2 } }), CAP).unwrap();
        assert_eq!(f, GroupFingerprint { order: 6, exponent: 6, abelianization: vec![2], derived_length: Some(2) });
        let f = fingerprint(&whole(GroupSpec::Sl { n: 3, ring: RingSpec::Zmod { m: 2 } }), CAP).unwrap();
        assert_eq!(f.derived_length, None);
        assert!(f.abelianization.is_empty());
    }
}
