use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::group::{enumerate_elements, subgroup_generated, FiniteGroup, Subgroup};
use super::hom::Homomorphism;
use super::law::{Element, GroupLaw};
use crate::error::{Error, Result};

/// Limits for [`find_section`]. Hitting one yields an inconclusive verdict.
#[derive(Debug, Clone, Copy)]
pub struct SectionCaps {
    pub elements: usize,
    pub tuples: u128,
}

impl Default for SectionCaps {
    fn default() -> Self {
        SectionCaps { elements: super::group::DEFAULT_ELEMENT_CAP, tuples: 1 << 24 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SectionVerdict {
    /// Lifts of the quotient generators generating a complement to the kernel.
    Found { images: Vec<Vec<u32>> },
    None,
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionSearchResult {
    pub verdict: SectionVerdict,
    pub quotient_generators: Vec<Vec<u32>>,
    pub quotient_order: u64,
    pub kernel_order: u64,
    pub fiber_sizes: Vec<u64>,
    pub search_space: u128,
}

/// The first pair of elements of `q`, in canonical order, generating all of
/// `q`, unless the first two listed generators already do.
pub fn default_quotient_generators(q: &FiniteGroup, all: &Subgroup, cap: usize) -> Result<Vec<Element>> {
    let gens = q.generators();
    if gens.len() <= 2 {
        return Ok(gens.to_vec());
    }
    if subgroup_generated(q, &gens[..2], cap)?.order() == all.order() {
        return Ok(gens[..2].to_vec());
    }
    let els = all.elements();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            if generates(q.law().as_ref(), &[els[i].clone(), els[j].clone()], all.order()) {
                return Ok(vec![els[i].clone(), els[j].clone()]);
            }
        }
    }
    Ok(gens.to_vec())
}

fn generates(law: &dyn GroupLaw, gens: &[Element], order: usize) -> bool {
    close_bounded(law, gens, order, |_| false) == Some(order)
}

/// Breadth-first closure that gives up once it exceeds `limit` elements or
/// meets a non-identity element rejected by `reject`.
fn close_bounded(law: &dyn GroupLaw, gens: &[Element], limit: usize, reject: impl Fn(&Element) -> bool) -> Option<usize> {
    let id = law.identity();
    let mut seen: HashSet<Element> = HashSet::with_capacity(limit + 1);
    let mut order = vec![id.clone()];
    seen.insert(id);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = law.multiply(&order[i], g);
            if seen.contains(&y) {
                continue;
            }
            if reject(&y) || seen.len() >= limit {
                return None;
            }
            seen.insert(y.clone());
            order.push(y);
            queue.push_back(order.len() - 1);
        }
    }
    Some(seen.len())
}

/// Exhaustive search for lifts `s_1, ..., s_k` of the quotient generators
/// such that `⟨s_1, ..., s_k⟩` meets the kernel trivially and has the order
/// of the quotient, i.e. a splitting of `q` over the chosen generators.
pub fn find_section(q: &Homomorphism, q_gens: Option<Vec<Element>>, caps: SectionCaps) -> Result<SectionSearchResult> {
    let g = q.source();
    let target = q.target();
    let inconclusive = |reason: String| SectionSearchResult {
        verdict: SectionVerdict::Inconclusive { reason },
        quotient_generators: Vec::new(),
        quotient_order: 0,
        kernel_order: 0,
        fiber_sizes: Vec::new(),
        search_space: 0,
    };
    let all = match enumerate_elements(g, caps.elements) {
        Ok(all) => all,
        Err(e) if e.is_resource_limit() => return Ok(inconclusive(e.to_string())),
        Err(e) => return Err(e),
    };
    let q_all = match enumerate_elements(target, caps.elements) {
        Ok(all) => all,
        Err(e) if e.is_resource_limit() => return Ok(inconclusive(e.to_string())),
        Err(e) => return Err(e),
    };
    let images: Vec<Element> = all.elements().iter().map(|x| q.apply(x)).collect();
    let image_set: HashSet<&Element> = images.iter().collect();
    if image_set.len() != q_all.order() {
        return Err(Error::NotSurjective { image: image_set.len(), target: q_all.order() });
    }
    let q_gens = match q_gens {
        Some(v) => v,
        None => default_quotient_generators(target, &q_all, caps.elements)?,
    };
    for x in &q_gens {
        if !q_all.contains(x) {
            return Err(Error::InvalidElement(format!("{:?} is not in the quotient", x.0)));
        }
    }
    let q_id = target.identity();
    let kernel: HashSet<Element> =
        all.elements().iter().zip(&images).filter(|(_, y)| **y == q_id).map(|(x, _)| x.clone()).collect();
    let fibers: Vec<Vec<Element>> = q_gens
        .iter()
        .map(|t| all.elements().iter().zip(&images).filter(|(_, y)| *y == t).map(|(x, _)| x.clone()).collect())
        .collect();
    let search_space = fibers.iter().map(|f| f.len() as u128).product::<u128>();
    let mut result = SectionSearchResult {
        verdict: SectionVerdict::None,
        quotient_generators: q_gens.iter().map(|x| x.0.clone()).collect(),
        quotient_order: q_all.order() as u64,
        kernel_order: kernel.len() as u64,
        fiber_sizes: fibers.iter().map(|f| f.len() as u64).collect(),
        search_space,
    };
    if search_space > caps.tuples {
        result.verdict = SectionVerdict::Inconclusive {
            reason: format!("{search_space} lift tuples exceed the cap {}", caps.tuples),
        };
        return Ok(result);
    }
    let law = g.law().as_ref();
    let target_order = q_all.order();
    let decode = |mut code: u128| -> Vec<Element> {
        let mut out = vec![Element(Vec::new()); fibers.len()];
        for k in (0..fibers.len()).rev() {
            let len = fibers[k].len() as u128;
            out[k] = fibers[k][(code % len) as usize].clone();
            code /= len;
        }
        out
    };
    let found = (0..search_space as u64).into_par_iter().find_map_first(|code| {
        let lifts = decode(code as u128);
        let size = close_bounded(law, &lifts, target_order, |y| kernel.contains(y))?;
        (size == target_order).then_some(lifts)
    });
    if let Some(lifts) = found {
        let h = subgroup_generated(g, &lifts, target_order + 1)?;
        let back_ok = lifts.iter().zip(&q_gens).all(|(s, t)| q.apply(s) == *t);
        let disjoint = h.elements().iter().filter(|x| kernel.contains(*x)).count() == 1;
        if !back_ok || h.order() != target_order || !disjoint {
            return Err(Error::ClosureViolation);
        }
        result.verdict = SectionVerdict::Found { images: lifts.iter().map(|x| x.0.clone()).collect() };
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObstructionVerdict {
    /// Some coset of the kernel has no element of order dividing `p`, so no
    /// complement can exist.
    NonsplitCertified { witness: Vec<u32>, cosets_without: u64 },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    pub p: u32,
    pub image_rank: u32,
    pub cosets: u64,
    pub cosets_with_small_order: u64,
}

/// For a surjection onto an elementary abelian `p`-group, a complement would
/// consist of elements with `x^p = 1`, one in each coset of the kernel.
pub fn elementary_complement_obstruction(q: &Homomorphism, cap: usize) -> Result<ObstructionReport> {
    let g = q.source();
    let all = enumerate_elements(g, cap)?;
    let image = q.image(&all)?;
    let order = image.order() as u32;
    let (p, rank) = if order == 1 {
        return Err(Error::NotElementaryAbelian);
    } else {
        super::spec::prime_power(order).ok_or(Error::NotElementaryAbelian)?
    };
    let t = q.target();
    let els = image.elements();
    let abelian = els.iter().all(|x| image.generators().iter().all(|y| t.multiply(x, y) == t.multiply(y, x)));
    if !abelian || !els.iter().all(|x| t.pow(x, p as u64) == t.identity()) {
        return Err(Error::NotElementaryAbelian);
    }
    let mut good: HashSet<Element> = HashSet::new();
    let id = g.identity();
    for x in all.elements() {
        if g.pow(x, p as u64) == id {
            good.insert(q.apply(x));
        }
    }
    let witness = els.iter().find(|y| !good.contains(*y));
    let verdict = match witness {
        Some(w) => ObstructionVerdict::NonsplitCertified {
            witness: w.0.clone(),
            cosets_without: (els.len() - good.len()) as u64,
        },
        None => ObstructionVerdict::Inconclusive,
    };
    Ok(ObstructionReport {
        verdict,
        p,
        image_rank: rank,
        cosets: els.len() as u64,
        cosets_with_small_order: good.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::construct_group;
    use crate::groups::spec::{GroupSpec, RingSpec};

    fn natural(a: GroupSpec, b: GroupSpec) -> Homomorphism {
        Homomorphism::natural(&construct_group(&a).unwrap(), &construct_group(&b).unwrap()).unwrap()
    }

    #[test]
    fn coprime_section() {
        let q = natural(GroupSpec::Cyclic { n: 12 }, GroupSpec::Cyclic { n: 3 });
        let r = find_section(&q, None, SectionCaps::default()).unwrap();
        assert_eq!(r.verdict, SectionVerdict::Found { images: vec![vec![4]] });
        let q = natural(GroupSpec::Cyclic { n: 4 }, GroupSpec::Cyclic { n: 2 });
        assert_eq!(find_section(&q, None, SectionCaps::default()).unwrap().verdict, SectionVerdict::None);
    }

    #[test]
    fn constant_matrices_split_truncation() {
        let q = natural(
            GroupSpec::Sl { n: 3, ring: RingSpec::PolyTrunc { p: 2, l: 2 } },
            GroupSpec::Sl { n: 3, ring: RingSpec::Zmod { m: 2 } },
        );
        let r = find_section(&q, None, SectionCaps::default()).unwrap();
        assert!(matches!(r.verdict, SectionVerdict::Found { .. }));
    }

    #[test]
    fn obstruction_small_cases() {
        let q = natural(GroupSpec::Cyclic { n: 4 }, GroupSpec::Cyclic { n: 2 });
        let r = elementary_complement_obstruction(&q, 100).unwrap();
        assert_eq!(r.verdict, ObstructionVerdict::NonsplitCertified { witness: vec![1], cosets_without: 1 });
        let v4 = GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 2 }] };
        let q = natural(v4, GroupSpec::Cyclic { n: 2 });
        assert_eq!(elementary_complement_obstruction(&q, 100).unwrap().verdict, ObstructionVerdict::Inconclusive);
        let q = natural(GroupSpec::Cyclic { n: 9 }, GroupSpec::Cyclic { n: 9 });
        assert_eq!(elementary_complement_obstruction(&q, 100).unwrap_err(), Error::NotElementaryAbelian);
    }
}
