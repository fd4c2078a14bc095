use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::group::{FiniteGroup, Subgroup};
use super::law::Element;
use super::quotient::quotient_group;
use super::ring::Ring;
use super::spec::{GroupSpec, RingSpec};
use crate::error::{Error, Result};

type MapFn = Arc<dyn Fn(&Element) -> Element + Send + Sync>;

/// A homomorphism between finite groups given by an element map.
#[derive(Clone)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: MapFn,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homomorphism({} -> {})", self.source.label(), self.target.label())
    }
}

fn matrix_data(spec: &GroupSpec) -> Option<(u32, RingSpec)> {
    match spec {
        GroupSpec::Sl { n, ring } | GroupSpec::CongruenceKernel { n, ring, .. } => Some((*n, *ring)),
        GroupSpec::Unitriangular { n, p } => Some((*n, RingSpec::Zmod { m: *p })),
        _ => None,
    }
}

fn natural_map(source: &GroupSpec, target: &GroupSpec) -> Option<MapFn> {
    if source == target {
        return Some(Arc::new(|x: &Element| x.clone()));
    }
    match (source, target) {
        (GroupSpec::Cyclic { n }, GroupSpec::Cyclic { n: d }) if n % d == 0 => {
            let d = *d;
            Some(Arc::new(move |x: &Element| Element(vec![x.0[0] % d])))
        }
        (GroupSpec::Product { factors: a }, GroupSpec::Product { factors: b }) if a.len() == b.len() => {
            let maps: Vec<MapFn> = a.iter().zip(b).map(|(x, y)| natural_map(x, y)).collect::<Option<_>>()?;
            let widths: Vec<usize> = a.iter().map(spec_width).collect();
            Some(Arc::new(move |x: &Element| {
                let mut out = Vec::new();
                let mut at = 0;
                for (m, w) in maps.iter().zip(&widths) {
                    out.extend(m(&Element(x.0[at..at + w].to_vec())).0);
                    at += w;
                }
                Element(out)
            }))
        }
        (GroupSpec::Product { factors }, t) => {
            let i = factors.iter().position(|f| f == t)?;
            let at: usize = factors[..i].iter().map(spec_width).sum();
            let w = spec_width(t);
            Some(Arc::new(move |x: &Element| Element(x.0[at..at + w].to_vec())))
        }
        (s, t) => {
            let (n, rs) = matrix_data(s)?;
            let (nt, rt) = matrix_data(t)?;
            if n != nt {
                return None;
            }
            let (src, tgt) = (Ring::new(rs), Ring::new(rt));
            src.reduce_to(&tgt, &src.one())?;
            let w = src.width();
            Some(Arc::new(move |x: &Element| {
                Element(x.0.chunks(w).flat_map(|e| src.reduce_to(&tgt, e).expect("checked reducible")).collect())
            }))
        }
    }
}

fn spec_width(spec: &GroupSpec) -> usize {
    match spec {
        GroupSpec::Cyclic { .. } => 1,
        GroupSpec::Product { factors } => factors.iter().map(spec_width).sum(),
        _ => {
            let (n, ring) = matrix_data(spec).expect("matrix spec");
            (n * n) as usize * Ring::new(ring).width()
        }
    }
}

impl Homomorphism {
    /// The evident map between two groups built from specs: reduction of
    /// residues or matrix entries, projection onto a factor, componentwise
    /// maps of products. Checked on generators.
    pub fn natural(source: &FiniteGroup, target: &FiniteGroup) -> Result<Self> {
        let (Some(s), Some(t)) = (source.spec(), target.spec()) else {
            return Err(Error::NotHomomorphism("natural maps need groups built from specs".into()));
        };
        let map = natural_map(s, t).ok_or_else(|| Error::NotHomomorphism(format!("no natural map {s} -> {t}")))?;
        let h = Homomorphism { source: source.clone(), target: target.clone(), map };
        h.check_on_generators()?;
        Ok(h)
    }

    /// The homomorphism sending the source generators to `images`, checked
    /// for consistency along a breadth-first enumeration of the source.
    pub fn from_generator_images(source: &FiniteGroup, target: &FiniteGroup, images: &[Element], cap: usize) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::DimensionMismatch { expected: source.generators().len(), found: images.len() });
        }
        let mut table: HashMap<Element, Element> = HashMap::new();
        let mut order = vec![source.identity()];
        table.insert(source.identity(), target.identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let x = order[i].clone();
            let fx = table[&x].clone();
            for (g, img) in source.generators().iter().zip(images) {
                let y = source.multiply(&x, g);
                let fy = target.multiply(&fx, img);
                match table.get(&y) {
                    Some(prev) if *prev != fy => {
                        return Err(Error::NotHomomorphism(format!("inconsistent image at {:?}", y.0)));
                    }
                    Some(_) => {}
                    None => {
                        if order.len() >= cap {
                            return Err(Error::EnumerationLimit(cap));
                        }
                        table.insert(y.clone(), fy);
                        order.push(y);
                        queue.push_back(order.len() - 1);
                    }
                }
            }
        }
        let table = Arc::new(table);
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            map: Arc::new(move |x: &Element| table[x].clone()),
        })
    }

    /// Wraps an element map, checked for multiplicativity on generators.
    pub fn from_fn(
        source: &FiniteGroup,
        target: &FiniteGroup,
        f: impl Fn(&Element) -> Element + Send + Sync + 'static,
    ) -> Result<Self> {
        let h = Homomorphism { source: source.clone(), target: target.clone(), map: Arc::new(f) };
        h.check_on_generators()?;
        Ok(h)
    }

    /// The projection `g → g/n` together with the quotient group.
    pub fn quotient(g: &Subgroup, n: &Subgroup, cap: usize) -> Result<Self> {
        let q = quotient_group(g, n, cap)?;
        let law = q.law().clone();
        let map: MapFn = Arc::new(move |x: &Element| law.multiply(x, &law.identity()));
        Ok(Homomorphism { source: g.as_group(), target: q, map })
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, x: &Element) -> Element {
        (self.map)(x)
    }

    pub fn compose(&self, then: &Homomorphism) -> Homomorphism {
        let (f, g) = (self.map.clone(), then.map.clone());
        Homomorphism { source: self.source.clone(), target: then.target.clone(), map: Arc::new(move |x: &Element| g(&f(x))) }
    }

    fn check_on_generators(&self) -> Result<()> {
        let gens = self.source.generators();
        for g in gens {
            if !self.target.is_element(&self.apply(g)) {
                return Err(Error::NotHomomorphism(format!("image of {:?} is not in the target", g.0)));
            }
        }
        for a in gens {
            for b in gens {
                let lhs = self.apply(&self.source.multiply(a, b));
                let rhs = self.target.multiply(&self.apply(a), &self.apply(b));
                if lhs != rhs {
                    return Err(Error::NotHomomorphism("multiplicativity fails on generators".into()));
                }
            }
        }
        Ok(())
    }

    /// Checks `f(xy) = f(x) f(y)` for every element `x` of `domain` and every
    /// generator `y`, which suffices on a generated group.
    pub fn certify(&self, domain: &Subgroup) -> Result<()> {
        for x in domain.elements() {
            let fx = self.apply(x);
            for g in domain.generators() {
                if self.apply(&self.source.multiply(x, g)) != self.target.multiply(&fx, &self.apply(g)) {
                    return Err(Error::NotHomomorphism(format!("fails at {:?}", x.0)));
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self, domain: &Subgroup) -> Result<Subgroup> {
        let id = self.target.identity();
        let k: Vec<Element> = domain.elements().iter().filter(|x| self.apply(x) == id).cloned().collect();
        let gens = k.iter().filter(|x| **x != self.source.identity()).take(64).cloned().collect();
        Subgroup::certified(domain.group(), k, gens)
    }

    pub fn image(&self, domain: &Subgroup) -> Result<Subgroup> {
        let im: Vec<Element> = domain.elements().iter().map(|x| self.apply(x)).collect();
        let gens = domain.generators().iter().map(|g| self.apply(g)).collect();
        Subgroup::certified(&self.target, im, gens)
    }

    pub fn check_surjective(&self, domain: &Subgroup, target_order: usize) -> Result<()> {
        let image = self.image(domain)?.order();
        if image != target_order {
            return Err(Error::NotSurjective { image, target: target_order });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::{construct_group, enumerate_elements, DEFAULT_ELEMENT_CAP as CAP};

    #[test]
    fn reduction_maps() {
        let g = construct_group(&GroupSpec::Sl { n: 2, ring: RingSpec::Zmod { m: 4 } }).unwrap();
        let q = construct_group(&GroupSpec::Sl { n: 2, ring: RingSpec::Zmod { m: 2 } }).unwrap();
        let h = Homomorphism::natural(&g, &q).unwrap();
        let all = enumerate_elements(&g, CAP).unwrap();
        h.certify(&all).unwrap();
        assert_eq!(h.kernel(&all).unwrap().order(), 8);
        h.check_surjective(&all, 6).unwrap();
        let c = construct_group(&GroupSpec::Cyclic { n: 12 }).unwrap();
        let c3 = construct_group(&GroupSpec::Cyclic { n: 3 }).unwrap();
        assert_eq!(Homomorphism::natural(&c, &c3).unwrap().apply(&Element(vec![7])), Element(vec![1]));
        assert!(Homomorphism::natural(&c3, &c).is_err());
    }

    #[test]
    fn generator_images_consistency() {
        let c4 = construct_group(&GroupSpec::Cyclic { n: 4 }).unwrap();
        let c2 = construct_group(&GroupSpec::Cyclic { n: 2 }).unwrap();
        assert!(Homomorphism::from_generator_images(&c4, &c2, &[Element(vec![1])], CAP).is_ok());
        let c3 = construct_group(&GroupSpec::Cyclic { n: 3 }).unwrap();
        assert!(Homomorphism::from_generator_images(&c4, &c3, &[Element(vec![1])], CAP).is_err());
    }

    #[test]
    fn projection_onto_factor() {
        let spec = GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 3 }] };
        let g = construct_group(&spec).unwrap();
        let c3 = construct_group(&GroupSpec::Cyclic { n: 3 }).unwrap();
        let h = Homomorphism::natural(&g, &c3).unwrap();
        assert_eq!(h.apply(&Element(vec![1, 2])), Element(vec![2]));
    }
}
