use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::law::{CyclicLaw, Element, GroupLaw, MatrixKind, MatrixLaw, ProductLaw};
use super::ring::Ring;
use super::spec::GroupSpec;
use crate::error::{Error, Result};

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

const FULL_CERTIFICATE_LIMIT: usize = 4096;
const SAMPLED_CERTIFICATE_PAIRS: usize = 100_000;
const CERTIFICATE_SEED: u64 = 0x5eed_c10c;

/// A finite group given by a multiplication law and a generator list.
#[derive(Clone)]
pub struct FiniteGroup {
    law: Arc<dyn GroupLaw>,
    generators: Vec<Element>,
    spec: Option<GroupSpec>,
    label: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a law and generators, spot-checking the
    /// generators against the law.
    pub fn from_law(law: Arc<dyn GroupLaw>, generators: Vec<Element>, label: impl Into<String>) -> Result<Self> {
        let id = law.identity();
        for g in &generators {
            if !law.is_element(g) {
                return Err(Error::InvalidElement(format!("generator {:?} is not a group element", g.0)));
            }
            if law.multiply(&id, g) != *g || law.multiply(g, &law.invert(g)) != id {
                return Err(Error::InvalidElement(format!("identity or inverse check failed at {:?}", g.0)));
            }
        }
        Ok(FiniteGroup { law, generators, spec: None, label: label.into() })
    }

    pub fn law(&self) -> &Arc<dyn GroupLaw> {
        &self.law
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn identity(&self) -> Element {
        self.law.identity()
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.law.multiply(a, b)
    }

    pub fn invert(&self, a: &Element) -> Element {
        self.law.invert(a)
    }

    pub fn is_element(&self, a: &Element) -> bool {
        self.law.is_element(a)
    }

    pub fn pow(&self, a: &Element, mut e: u64) -> Element {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x^-1 y^-1 x y`
    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        let xi = self.invert(x);
        let yi = self.invert(y);
        self.multiply(&self.multiply(&xi, &yi), &self.multiply(x, y))
    }

    /// `s^-1 x s`
    pub fn conjugate(&self, x: &Element, s: &Element) -> Element {
        self.multiply(&self.multiply(&self.invert(s), x), s)
    }

    pub fn element_order(&self, a: &Element) -> u64 {
        let id = self.identity();
        let mut x = a.clone();
        let mut k = 1;
        while x != id {
            x = self.multiply(&x, a);
            k += 1;
        }
        k
    }

    /// Same law, different generators.
    pub fn with_generators(&self, generators: Vec<Element>, label: impl Into<String>) -> FiniteGroup {
        FiniteGroup { law: self.law.clone(), generators, spec: None, label: label.into() }
    }
}

/// Builds the group described by `spec` with its default generators.
pub fn construct_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    spec.validate()?;
    let (law, generators) = law_and_generators(spec)?;
    let mut g = FiniteGroup::from_law(law, generators, spec.to_string())?;
    g.spec = Some(spec.clone());
    Ok(g)
}

fn law_and_generators(spec: &GroupSpec) -> Result<(Arc<dyn GroupLaw>, Vec<Element>)> {
    Ok(match spec {
        GroupSpec::Cyclic { n } => {
            let gens = if *n > 1 { vec![Element(vec![1])] } else { vec![] };
            (Arc::new(CyclicLaw { n: *n }), gens)
        }
        GroupSpec::Product { factors } => {
            let mut laws = Vec::new();
            let mut factor_gens = Vec::new();
            for f in factors {
                let (l, g) = law_and_generators(f)?;
                laws.push(l);
                factor_gens.push(g);
            }
            let law = ProductLaw::new(laws);
            let gens = factor_gens
                .iter()
                .enumerate()
                .flat_map(|(i, gs)| gs.iter().map(|g| law.embed(i, g)).collect::<Vec<_>>())
                .collect();
            (Arc::new(law), gens)
        }
        GroupSpec::Sl { n, ring } => {
            let law = MatrixLaw::new(*n as usize, *ring, MatrixKind::Special);
            let scalars = law.ring.elementary_scalars();
            let mut gens = Vec::new();
            for i in 0..*n as usize {
                for j in 0..*n as usize {
                    if i != j {
                        for s in &scalars {
                            gens.push(law.elementary(i, j, s));
                        }
                    }
                }
            }
            (Arc::new(law), gens)
        }
        GroupSpec::CongruenceKernel { n, ring, level } => {
            let n = *n as usize;
            let law = MatrixLaw::new(n, *ring, MatrixKind::Kernel(*level));
            let r = Ring::new(*ring);
            let pi = r.uniformizer().expect("validated local ring");
            let pi_l = r.pow(&pi, *level as u64);
            let mut gens = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        gens.push(law.elementary(i, j, &pi_l));
                    }
                }
            }
            let u = r.add(&r.one(), &pi_l);
            let u_inv = r.inverse(&u).expect("1 + pi^level is a unit");
            for i in 0..n - 1 {
                let mut d = vec![r.one(); n];
                d[i] = u.clone();
                d[i + 1] = u_inv.clone();
                gens.push(law.diagonal(&d));
            }
            let gens = refine_generators(&law, gens)?;
            (Arc::new(law), gens)
        }
        GroupSpec::Unitriangular { n, p } => {
            let law = MatrixLaw::new(*n as usize, super::spec::RingSpec::Zmod { m: *p }, MatrixKind::UpperUnitriangular);
            let one = law.ring.one();
            let gens = (0..*n as usize - 1).map(|i| law.elementary(i, i + 1, &one)).collect();
            (Arc::new(law), gens)
        }
    })
}

/// The default kernel generators need not generate in small characteristic;
/// append the canonically first missing element until they do.
fn refine_generators(law: &MatrixLaw, mut gens: Vec<Element>) -> Result<Vec<Element>> {
    let MatrixKind::Kernel(level) = law.kind else { return Ok(gens) };
    let all = match law.kernel_elements(level, DEFAULT_ELEMENT_CAP) {
        Ok(all) => all,
        Err(e) if e.is_resource_limit() => return Ok(gens),
        Err(e) => return Err(e),
    };
    gens.retain(|g| *g != law.identity());
    let mut closure = Closure::new(law);
    closure.extend(law, &gens, usize::MAX)?;
    for x in &all {
        if closure.len() == all.len() {
            break;
        }
        if !closure.contains(x) {
            gens.push(x.clone());
            closure.extend(law, std::slice::from_ref(x), usize::MAX)?;
        }
    }
    Ok(gens)
}

/// Incrementally maintained closure of a generator set under
/// right multiplication, in breadth-first discovery order.
#[derive(Debug, Clone)]
pub(crate) struct Closure {
    pub order: Vec<Element>,
    pub index: HashMap<Element, u32>,
    pub gens: Vec<Element>,
}

impl Closure {
    pub fn new(law: &dyn GroupLaw) -> Self {
        let id = law.identity();
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        Closure { order: vec![id], index, gens: Vec::new() }
    }

    pub fn from_elements(elements: &[Element], gens: Vec<Element>) -> Self {
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        Closure { order: elements.to_vec(), index, gens }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    fn insert(&mut self, x: Element, queue: &mut VecDeque<usize>, cap: usize) -> Result<()> {
        if self.index.contains_key(&x) {
            return Ok(());
        }
        if self.order.len() >= cap {
            return Err(Error::EnumerationLimit(cap));
        }
        self.index.insert(x.clone(), self.order.len() as u32);
        queue.push_back(self.order.len());
        self.order.push(x);
        Ok(())
    }

    /// Adds generators and restores closure. Existing elements only need to
    /// be multiplied by the new generators; newly found elements by all.
    pub fn extend(&mut self, law: &dyn GroupLaw, new_gens: &[Element], cap: usize) -> Result<()> {
        let fresh: Vec<Element> = new_gens.iter().filter(|g| !self.gens.contains(g)).cloned().collect();
        if fresh.is_empty() {
            return Ok(());
        }
        let old_len = self.order.len();
        let mut queue = VecDeque::new();
        for i in 0..old_len {
            for g in &fresh {
                let y = law.multiply(&self.order[i], g);
                self.insert(y, &mut queue, cap)?;
            }
        }
        self.gens.extend(fresh);
        while let Some(i) = queue.pop_front() {
            for k in 0..self.gens.len() {
                let y = law.multiply(&self.order[i], &self.gens[k]);
                self.insert(y, &mut queue, cap)?;
            }
        }
        Ok(())
    }
}

/// An enumerated subgroup of a finite group, sorted canonically.
#[derive(Clone)]
pub struct Subgroup {
    group: FiniteGroup,
    elements: Arc<Vec<Element>>,
    index: Arc<HashMap<Element, u32>>,
    generators: Vec<Element>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("group", &self.group.label)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl Subgroup {
    /// Wraps a closed element set after checking `x y^-1` membership.
    pub fn certified(group: &FiniteGroup, mut elements: Vec<Element>, generators: Vec<Element>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let s = Self::trusted(group, elements, generators);
        s.certify()?;
        Ok(s)
    }

    /// Wraps an element set that is closed by construction.
    pub(crate) fn trusted(group: &FiniteGroup, elements: Vec<Element>, generators: Vec<Element>) -> Self {
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        Subgroup { group: group.clone(), elements: Arc::new(elements), index: Arc::new(index), generators }
    }

    pub(crate) fn from_closure(group: &FiniteGroup, closure: Closure) -> Result<Self> {
        let Closure { mut order, gens, .. } = closure;
        order.sort();
        let s = Self::trusted(group, order, gens);
        s.certify()?;
        Ok(s)
    }

    pub fn certify(&self) -> Result<()> {
        let g = &self.group;
        if !self.contains(&g.identity()) {
            return Err(Error::ClosureViolation);
        }
        let n = self.elements.len();
        let inverses: Vec<Element> = if n <= FULL_CERTIFICATE_LIMIT {
            self.elements.iter().map(|y| g.invert(y)).collect()
        } else {
            Vec::new()
        };
        if n <= FULL_CERTIFICATE_LIMIT {
            for x in self.elements.iter() {
                for yi in &inverses {
                    if !self.contains(&g.multiply(x, yi)) {
                        return Err(Error::ClosureViolation);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(CERTIFICATE_SEED);
            for _ in 0..SAMPLED_CERTIFICATE_PAIRS {
                let x = &self.elements[rng.gen_range(0..n)];
                let y = &self.elements[rng.gen_range(0..n)];
                if !self.contains(&g.multiply(x, &g.invert(y))) {
                    return Err(Error::ClosureViolation);
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).map(|i| *i as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|x| other.contains(x))
    }

    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }

    /// The subgroup as a group in its own right, generated by its generators.
    pub fn as_group(&self) -> FiniteGroup {
        self.group.with_generators(self.generators.clone(), format!("subgroup of {}", self.group.label))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        self.generators
            .iter()
            .all(|x| self.generators.iter().all(|y| g.multiply(x, y) == g.multiply(y, x)))
    }

    pub(crate) fn to_closure(&self) -> Closure {
        Closure::from_elements(&self.elements, self.generators.clone())
    }
}

/// Breadth-first closure of the generators; children are expanded in
/// generator order and the result is sorted canonically.
pub fn enumerate_elements(g: &FiniteGroup, cap: usize) -> Result<Subgroup> {
    if cap == 0 {
        return Err(Error::EnumerationLimit(0));
    }
    if let Some(direct) = g.law.direct_elements(cap) {
        let elements = direct?;
        let s = Subgroup::trusted(g, elements, g.generators.clone());
        s.certify()?;
        return Ok(s);
    }
    subgroup_generated(g, &g.generators, cap)
}

pub fn subgroup_generated(g: &FiniteGroup, gens: &[Element], cap: usize) -> Result<Subgroup> {
    for x in gens {
        if !g.is_element(x) {
            return Err(Error::InvalidElement(format!("{:?} is not in {}", x.0, g.label)));
        }
    }
    let gens: Vec<Element> = gens.iter().filter(|x| **x != g.identity()).cloned().collect();
    let mut c = Closure::new(g.law.as_ref());
    if cap < 1 {
        return Err(Error::EnumerationLimit(cap));
    }
    c.extend(g.law.as_ref(), &gens, cap)?;
    Subgroup::from_closure(g, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::spec::RingSpec;

    #[test]
    fn small_orders() {
        let c4 = construct_group(&GroupSpec::Cyclic { n: 4 }).unwrap();
        assert_eq!(enumerate_elements(&c4, 10).unwrap().order(), 4);
        let sl = construct_group(&GroupSpec::Sl { n: 3, ring: RingSpec::Zmod { m: 2 } }).unwrap();
        assert_eq!(enumerate_elements(&sl, 1000).unwrap().order(), 168);
        let ut = construct_group(&GroupSpec::Unitriangular { n: 3, p: 3 }).unwrap();
        assert_eq!(enumerate_elements(&ut, 1000).unwrap().order(), 27);
    }

    #[test]
    fn cap_is_enforced() {
        let c6 = construct_group(&GroupSpec::Cyclic { n: 6 }).unwrap();
        assert_eq!(enumerate_elements(&c6, 10).unwrap().order(), 6);
        let sl = construct_group(&GroupSpec::Sl { n: 3, ring: RingSpec::Zmod { m: 2 } }).unwrap();
        assert_eq!(enumerate_elements(&sl, 100).unwrap_err(), Error::EnumerationLimit(100));
    }

    #[test]
    fn sl2_char_two_kernel_generators_generate() {
        let spec = GroupSpec::CongruenceKernel { n: 2, ring: RingSpec::PolyTrunc { p: 2, l: 3 }, level: 1 };
        let g = construct_group(&spec).unwrap();
        let all = enumerate_elements(&g, 1000).unwrap();
        assert_eq!(all.order(), 64);
        let bfs = subgroup_generated(&g, g.generators(), 1000).unwrap();
        assert!(bfs.same_elements(&all));
    }

    #[test]
    fn generated_subgroups() {
        let c8 = construct_group(&GroupSpec::Cyclic { n: 8 }).unwrap();
        assert_eq!(subgroup_generated(&c8, &[Element(vec![2])], 100).unwrap().order(), 4);
        assert_eq!(subgroup_generated(&c8, &[Element(vec![0])], 100).unwrap().order(), 1);
    }
}
