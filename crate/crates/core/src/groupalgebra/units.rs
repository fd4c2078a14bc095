use std::sync::Arc;

use super::algebra::{GroupAlgebra, JFiltration};
use super::coproduct::{is_grouplike, Coproduct};
use super::quotient::QuotientAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{Field, PrimeField};
use crate::groups::{subgroup_generated, Element, FiniteGroup, GroupLaw, Subgroup};

/// Largest number of candidates scanned by [`grouplike_bruteforce`].
pub const BRUTEFORCE_LIMIT: u128 = 1 << 22;

/// The unit group of `A_l` over a prime field, on coordinate vectors.
#[derive(Debug, Clone)]
pub struct UnitLaw {
    algebra: Arc<QuotientAlgebra<PrimeField>>,
}

impl UnitLaw {
    pub fn new(algebra: Arc<QuotientAlgebra<PrimeField>>) -> Self {
        UnitLaw { algebra }
    }

    pub fn algebra(&self) -> &QuotientAlgebra<PrimeField> {
        &self.algebra
    }
}

impl GroupLaw for UnitLaw {
    fn identity(&self) -> Element {
        Element(self.algebra.one())
    }

    fn multiply(&self, a: &Element, b: &Element) -> Element {
        Element(self.algebra.mul(&a.0, &b.0))
    }

    fn invert(&self, a: &Element) -> Element {
        Element(self.algebra.inverse(&a.0).expect("unit group elements are invertible"))
    }

    fn is_element(&self, a: &Element) -> bool {
        let f = self.algebra.field();
        a.0.len() == self.algebra.dim() && a.0.iter().all(|c| f.contains(c)) && self.algebra.inverse(&a.0).is_some()
    }
}

/// The image `P_l` of `G` in the units of `A_l`, with the map on group
/// element indices.
#[derive(Debug, Clone)]
pub struct UnitImage {
    pub level: usize,
    pub algebra: Arc<QuotientAlgebra<PrimeField>>,
    pub group: Subgroup,
}

impl UnitImage {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Image of the element of `G` with index `g`.
    pub fn image_of(&self, g: usize) -> Element {
        Element(self.algebra.group_element(g))
    }
}

/// `P_l`: the subgroup of the units of `A_l` generated by the images of the
/// generators of `G`, each element certified grouplike.
pub fn unit_image_of_group(
    a: &GroupAlgebra<PrimeField>,
    jf: &JFiltration<PrimeField>,
    l: usize,
    cap: usize,
) -> Result<UnitImage> {
    let q = Arc::new(QuotientAlgebra::new(a, jf, l)?);
    let cop = Coproduct::new(a, jf, l)?;
    let law: Arc<dyn GroupLaw> = Arc::new(UnitLaw::new(q.clone()));
    let mut gens: Vec<Element> = Vec::new();
    let one = Element(q.one());
    for &s in a.generator_indices() {
        let x = Element(q.group_element(s));
        if x != one && !gens.contains(&x) {
            gens.push(x);
        }
    }
    let group = FiniteGroup::from_law(law, gens.clone(), format!("P_{l}"))?;
    let image = subgroup_generated(&group, &gens, cap)?;
    for x in image.elements() {
        if !is_grouplike(&q, &cop, &x.0)? {
            return Err(Error::GrouplikeViolation(format!("unit image element {:?} is not grouplike", x.0)));
        }
    }
    for g in 0..a.dim() {
        if !image.contains(&Element(q.group_element(g))) {
            return Err(Error::GrouplikeViolation(format!("image of group element {g} missing from P_{l}")));
        }
    }
    Ok(UnitImage { level: l, algebra: q, group: image })
}

/// Every grouplike element of `A_l`, found by scanning all vectors with
/// `ε = 1`, in ascending coordinate order.
pub fn grouplike_bruteforce(q: &QuotientAlgebra<PrimeField>, cop: &Coproduct<PrimeField>) -> Result<Vec<Element>> {
    let f = q.field();
    let p = f.p();
    let d = q.dim();
    let size = (p as u128).checked_pow(d.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if size > BRUTEFORCE_LIMIT {
        return Err(Error::SearchSpaceTooLarge { size, limit: BRUTEFORCE_LIMIT });
    }
    let mut out = Vec::new();
    let mut x = vec![0u32; d];
    for mut k in 0..size {
        for c in x.iter_mut().skip(1) {
            *c = (k % p as u128) as u32;
            k /= p as u128;
        }
        let rest = x[1..].iter().fold(f.zero(), |acc, c| f.add(&acc, c));
        x[0] = f.sub(&f.one(), &rest);
        if is_grouplike(q, cop, &x)? {
            out.push(Element(x.clone()));
        }
    }
    out.sort();
    Ok(out)
}
