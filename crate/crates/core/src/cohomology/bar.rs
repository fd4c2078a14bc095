use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{span, Field, PrimeField, SparseEliminator, SubspaceBasis};
use crate::groups::{enumerate_elements, Element, FiniteGroup, Subgroup};

/// Bound on `(|G|-1)^3`, the size of the normalized 3-cochains.
pub const MAX_COCHAIN_DIM: u128 = 1 << 25;
/// Largest cochain degree handled by [`CochainSpace`].
pub const MAX_COCHAIN_DEGREE: usize = 3;
/// Largest cohomology degree computed.
pub const MAX_COHOMOLOGY_DEGREE: usize = 2;

/// Normalized `n`-cochains `(G∖{1})^n → F_p`, tuples in lexicographic order
/// of the canonical element order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CochainSpace {
    pub group: String,
    pub degree: usize,
    pub p: u32,
    pub order: usize,
    pub dim: usize,
}

impl CochainSpace {
    pub fn new(group: impl Into<String>, order: usize, degree: usize, p: u32) -> Result<Self> {
        if degree > MAX_COCHAIN_DEGREE {
            return Err(Error::LevelOutOfRange { level: degree, max: MAX_COCHAIN_DEGREE });
        }
        let size = (order.saturating_sub(1) as u128).pow(degree as u32);
        if size > MAX_COCHAIN_DIM {
            return Err(Error::DimensionLimit { what: "normalized cochains", size, limit: MAX_COCHAIN_DIM });
        }
        Ok(CochainSpace { group: group.into(), degree, p, order, dim: size as usize })
    }

    /// Position of a tuple of non-identity letters `0..order-1`.
    pub fn tuple_index(&self, letters: &[usize]) -> usize {
        letters.iter().fold(0, |acc, &x| acc * (self.order - 1) + x)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let base = self.order - 1;
        let mut out = vec![0; self.degree];
        for slot in out.iter_mut().rev() {
            *slot = index % base;
            index /= base;
        }
        out
    }
}

/// The normalized bar complex of a finite group with trivial `F_p`
/// coefficients, up to degree 3.
#[derive(Debug, Clone)]
pub struct BarComplex {
    group: Subgroup,
    label: String,
    field: PrimeField,
    identity: usize,
    /// `table[a * order + b]` is the index of `a b`.
    table: Vec<u32>,
    generators: Vec<usize>,
}

impl BarComplex {
    pub fn new(g: &FiniteGroup, p: u32, cap: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let all = enumerate_elements(g, cap)?;
        Self::from_subgroup(&all, field, g.label())
    }

    pub fn from_subgroup(all: &Subgroup, field: PrimeField, label: &str) -> Result<Self> {
        let m = all.order();
        CochainSpace::new(label, m, MAX_COCHAIN_DEGREE, field.p())?;
        let g = all.group();
        let elems = all.elements();
        let index = |x: &Element| all.index_of(x).ok_or(Error::ClosureViolation);
        let mut table = Vec::with_capacity(m * m);
        for a in elems {
            for b in elems {
                table.push(index(&g.multiply(a, b))? as u32);
            }
        }
        let identity = index(&g.identity())?;
        let mut generators: Vec<usize> =
            all.generators().iter().map(index).collect::<Result<Vec<_>>>()?.into_iter().filter(|&s| s != identity).collect();
        generators.sort_unstable();
        generators.dedup();
        Ok(BarComplex { group: all.clone(), label: label.to_string(), field, identity, table, generators })
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn cochain_space(&self, degree: usize) -> Result<CochainSpace> {
        CochainSpace::new(self.label.clone(), self.order(), degree, self.field.p())
    }

    fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    fn letter_to_index(&self, letter: usize) -> usize {
        if letter < self.identity {
            letter
        } else {
            letter + 1
        }
    }

    /// Position of a tuple of element indices, `None` when an entry is the
    /// identity (where normalized cochains vanish).
    pub fn cochain_index(&self, tuple: &[usize]) -> Option<usize> {
        let base = self.order() - 1;
        tuple.iter().try_fold(0, |acc, &x| match x.cmp(&self.identity) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(acc * base + x),
            std::cmp::Ordering::Greater => Some(acc * base + x - 1),
        })
    }

    /// Value of `d f` at `tuple` (length `n+1`) as a combination of
    /// `n`-cochain positions:
    /// `f(g_2,…) + Σ (-1)^i f(…, g_i g_(i+1), …) + (-1)^(n+1) f(g_1,…,g_n)`.
    fn differential_row(&self, tuple: &[usize]) -> Vec<(usize, u32)> {
        let f = &self.field;
        let n = tuple.len() - 1;
        let sign = |i: usize| if i % 2 == 0 { f.one() } else { f.neg(&f.one()) };
        let mut row = Vec::with_capacity(n + 2);
        let mut push = |t: &[usize], s: u32| {
            if let Some(i) = self.cochain_index(t) {
                row.push((i, s));
            }
        };
        push(&tuple[1..], f.one());
        let mut t = Vec::with_capacity(n);
        for i in 1..=n {
            t.clear();
            t.extend_from_slice(&tuple[..i - 1]);
            t.push(self.product(tuple[i - 1], tuple[i]));
            t.extend_from_slice(&tuple[i + 1..]);
            push(&t, sign(i));
        }
        push(&tuple[..n], sign(n + 1));
        row
    }

    /// `d^n f`, evaluated on every normalized `(n+1)`-tuple.
    pub fn differential(&self, n: usize, f: &[u32]) -> Result<Vec<u32>> {
        let source = self.cochain_space(n)?;
        let target = self.cochain_space(n + 1)?;
        if f.len() != source.dim {
            return Err(Error::DimensionMismatch { expected: source.dim, found: f.len() });
        }
        let field = &self.field;
        let mut out = Vec::with_capacity(target.dim);
        for idx in 0..target.dim {
            let tuple: Vec<usize> = target.tuple(idx).into_iter().map(|l| self.letter_to_index(l)).collect();
            let v = self
                .differential_row(&tuple)
                .iter()
                .fold(field.zero(), |acc, (i, s)| field.add(&acc, &field.mul(s, &f[*i])));
            out.push(v);
        }
        Ok(out)
    }

    /// `ker d^n`. For `n ≥ 1` the equations `d f(g_1,…,g_n,s) = 0` with `s` a
    /// generator already cut out the cocycles; every basis vector is then
    /// checked against the full differential.
    pub fn cocycles(&self, n: usize) -> Result<SubspaceBasis<PrimeField>> {
        self.check_degree(n)?;
        let source = self.cochain_space(n)?;
        if n == 0 {
            return Ok(SubspaceBasis::full(self.field, 1));
        }
        let mut elim = SparseEliminator::new(self.field, source.dim);
        let mut tuple = vec![0; n + 1];
        for idx in 0..source.dim {
            for (slot, l) in tuple.iter_mut().zip(source.tuple(idx)) {
                *slot = self.letter_to_index(l);
            }
            for &s in &self.generators {
                tuple[n] = s;
                elim.push(&self.differential_row(&tuple))?;
            }
        }
        let z = elim.nullspace()?;
        for v in z.rows() {
            if self.differential(n, v)?.iter().any(|x| *x != 0) {
                return Err(Error::InvalidElement(format!("degree-{n} solution of {} is not a cocycle", self.label)));
            }
        }
        Ok(z)
    }

    /// `im d^(n-1)`; zero in degrees 0 and 1 since `d^0 = 0` for trivial
    /// coefficients.
    pub fn coboundaries(&self, n: usize) -> Result<SubspaceBasis<PrimeField>> {
        self.check_degree(n)?;
        let target = self.cochain_space(n)?;
        if n == 0 {
            return Ok(SubspaceBasis::zero(self.field, target.dim));
        }
        let source = self.cochain_space(n - 1)?;
        let images = (0..source.dim)
            .map(|i| {
                let mut e = vec![0u32; source.dim];
                e[i] = 1;
                self.differential(n - 1, &e)
            })
            .collect::<Result<Vec<_>>>()?;
        span(self.field, target.dim, images)
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyResult> {
        let z = self.cocycles(n)?;
        let b = self.coboundaries(n)?;
        let classes = span(self.field, z.ambient(), z.rows().iter().map(|v| b.residual(v)))?;
        Ok(CohomologyResult {
            group: self.label.clone(),
            p: self.field.p(),
            degree: n,
            cocycle_dim: z.dim(),
            coboundary_dim: b.dim(),
            coboundaries: b,
            classes,
        })
    }

    /// `f ∘ (q × … × q)` for an `n`-cochain `f` on `quotient`, where `qmap`
    /// sends element indices of `self` to element indices of `quotient`.
    pub fn pullback(&self, quotient: &BarComplex, qmap: &[usize], n: usize, f: &[u32]) -> Result<Vec<u32>> {
        let space = self.cochain_space(n)?;
        let mut out = Vec::with_capacity(space.dim);
        for idx in 0..space.dim {
            let image: Vec<usize> = space.tuple(idx).into_iter().map(|l| qmap[self.letter_to_index(l)]).collect();
            out.push(quotient.cochain_index(&image).map_or(0, |i| f[i]));
        }
        Ok(out)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > MAX_COHOMOLOGY_DEGREE {
            return Err(Error::LevelOutOfRange { level: n, max: MAX_COHOMOLOGY_DEGREE });
        }
        Ok(())
    }
}

/// `H^n(G, F_p)` with canonical class representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyResult {
    pub group: String,
    pub p: u32,
    pub degree: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Reduced echelon basis of `B^n`.
    pub coboundaries: SubspaceBasis<PrimeField>,
    /// Cocycles reduced modulo `B^n`, in reduced echelon form; a complement
    /// of `B^n` in `Z^n`.
    pub classes: SubspaceBasis<PrimeField>,
}

impl CohomologyResult {
    pub fn dimension(&self) -> usize {
        self.classes.dim()
    }

    pub fn representatives(&self) -> &[Vec<u32>] {
        self.classes.rows()
    }

    /// Coordinates of the class of a cocycle against [`Self::representatives`].
    pub fn class_coordinates(&self, cocycle: &[u32]) -> Result<Vec<u32>> {
        self.classes
            .coordinates(&self.coboundaries.residual(cocycle))?
            .ok_or_else(|| Error::InvalidElement(format!("vector is not a degree-{} cocycle", self.degree)))
    }

    pub fn summary(&self) -> CohomologySummary {
        CohomologySummary {
            group: self.group.clone(),
            p: self.p,
            degree: self.degree,
            dimension: self.dimension(),
            cocycle_dim: self.cocycle_dim,
            coboundary_dim: self.coboundary_dim,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologySummary {
    pub group: String,
    pub p: u32,
    pub degree: usize,
    pub dimension: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
}

pub fn bar_cohomology(g: &FiniteGroup, p: u32, degree: usize, cap: usize) -> Result<CohomologyResult> {
    BarComplex::new(g, p, cap)?.cohomology(degree)
}

/// `dim H^n(Z/m, F_p)` from the 2-periodic resolution: `1` in degree 0,
/// otherwise `1` exactly when `p | m`.
pub fn periodic_cyclic_oracle(m: u64, p: u64, degree: usize) -> usize {
    if degree == 0 {
        1
    } else {
        usize::from(m % p == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct_group, GroupSpec, DEFAULT_ELEMENT_CAP as CAP};

    fn cyclic(n: u32) -> FiniteGroup {
        construct_group(&GroupSpec::Cyclic { n }).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(bar_cohomology(&cyclic(4), 2, 1, CAP).unwrap().dimension(), 1);
        assert_eq!(bar_cohomology(&cyclic(4), 2, 2, CAP).unwrap().dimension(), 1);
        assert_eq!(bar_cohomology(&cyclic(2), 3, 2, CAP).unwrap().dimension(), 0);
        assert_eq!(bar_cohomology(&cyclic(5), 3, 0, CAP).unwrap().dimension(), 1);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(periodic_cyclic_oracle(4, 2, 2), 1);
        assert_eq!(periodic_cyclic_oracle(3, 2, 1), 0);
        assert_eq!(periodic_cyclic_oracle(6, 3, 2), 1);
    }

    #[test]
    fn tuples_round_trip() {
        let s = CochainSpace::new("Z/5", 5, 3, 2).unwrap();
        assert_eq!(s.dim, 64);
        for i in 0..s.dim {
            assert_eq!(s.tuple_index(&s.tuple(i)), i);
        }
        assert!(CochainSpace::new("big", 400, 3, 2).is_err());
        assert!(CochainSpace::new("Z/5", 5, 4, 2).is_err());
    }

    #[test]
    fn degree_three_is_refused() {
        let c = BarComplex::new(&cyclic(3), 3, CAP).unwrap();
        assert!(matches!(c.cohomology(3), Err(Error::LevelOutOfRange { .. })));
    }
}
