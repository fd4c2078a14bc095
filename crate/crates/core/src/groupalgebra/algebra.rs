use crate::error::{Error, Result};
use crate::exactmath::{EchelonBuilder, Field, SubspaceBasis};
use crate::groups::{enumerate_elements, Element, FiniteGroup, Subgroup};

/// Largest group whose multiplication table is materialized.
pub const MAX_ALGEBRA_DIM: usize = 512;

/// The group algebra `kG` on the canonical element basis of `G`.
#[derive(Debug, Clone)]
pub struct GroupAlgebra<F: Field> {
    field: F,
    group: Subgroup,
    table: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
}

impl<F: Field> GroupAlgebra<F> {
    pub fn new(group: &Subgroup, field: F) -> Result<Self> {
        let n = group.order();
        if n > MAX_ALGEBRA_DIM {
            return Err(Error::DimensionLimit { what: "group algebra", size: n as u128, limit: MAX_ALGEBRA_DIM as u128 });
        }
        let g = group.group();
        let els = group.elements();
        let mut table = Vec::with_capacity(n * n);
        for a in els {
            for b in els {
                let c = g.multiply(a, b);
                let k = group.index_of(&c).ok_or(Error::ClosureViolation)?;
                table.push(k as u32);
            }
        }
        let identity = group.index_of(&g.identity()).ok_or(Error::ClosureViolation)?;
        let generators = group
            .generators()
            .iter()
            .map(|s| group.index_of(s).ok_or(Error::ClosureViolation))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAlgebra { field, group: group.clone(), table, identity, generators })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.group.elements()[i]
    }

    /// Index of the product of the basis elements `a` and `b`.
    #[inline]
    pub fn product_index(&self, a: usize, b: usize) -> usize {
        self.table[a * self.dim() + b] as usize
    }

    pub fn basis_vector(&self, g: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.dim()];
        v[g] = f.one();
        v
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.basis_vector(self.identity)
    }

    /// `g - 1`
    pub fn augmentation_vector(&self, g: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.dim()];
        if g != self.identity {
            v[g] = f.one();
            v[self.identity] = f.neg(&f.one());
        }
        v
    }

    pub fn epsilon(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        x.iter().fold(f.zero(), |acc, c| f.add(&acc, c))
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !f.is_zero(yb) {
                    let k = self.product_index(a, b);
                    out[k] = f.add(&out[k], &f.mul(xa, yb));
                }
            }
        }
        out
    }

    /// `x * s` for a basis element `s`; a permutation of coordinates.
    pub fn right_translate(&self, x: &[F::Elem], s: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if !f.is_zero(xa) {
                out[self.product_index(a, s)] = xa.clone();
            }
        }
        out
    }

    /// `x * (s - 1)`
    pub fn times_augmentation(&self, x: &[F::Elem], s: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.right_translate(x, s);
        for (o, xa) in out.iter_mut().zip(x) {
            *o = f.sub(o, xa);
        }
        out
    }
}

pub fn build_group_algebra<F: Field>(g: &FiniteGroup, field: F, cap: usize) -> Result<GroupAlgebra<F>> {
    let all = enumerate_elements(g, cap)?;
    GroupAlgebra::new(&all, field)
}

/// Echelon bases of the powers `J^0 = kG ⊇ J^1 ⊇ J^2 ⊇ ...` of the
/// augmentation ideal.
#[derive(Debug, Clone)]
pub struct JFiltration<F: Field> {
    powers: Vec<SubspaceBasis<F>>,
    stable_index: Option<usize>,
}

impl<F: Field> JFiltration<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(|b| b.dim()).collect()
    }

    /// Least `N` with `J^N = J^(N+1)`, if reached.
    pub fn stable_index(&self) -> Option<usize> {
        self.stable_index
    }

    /// Index of the last computed power.
    pub fn computed(&self) -> usize {
        self.powers.len() - 1
    }

    /// `J^i`; beyond the computed range only once the filtration is stable.
    pub fn power(&self, i: usize) -> Result<&SubspaceBasis<F>> {
        match self.powers.get(i) {
            Some(b) => Ok(b),
            None if self.stable_index.is_some() => Ok(self.powers.last().expect("J^0 is always present")),
            None => Err(Error::LevelOutOfRange { level: i, max: self.computed() }),
        }
    }

    pub fn powers(&self) -> &[SubspaceBasis<F>] {
        &self.powers
    }
}

/// Computes `J^{l+1} = Σ_s J^l (s - 1)` over the group generators `s`, which
/// spans the same space as all products of `J^l` with `J`, until the powers
/// vanish, repeat, or `max_l` is reached.
pub fn j_power_filtration<F: Field>(a: &GroupAlgebra<F>, max_l: usize) -> Result<JFiltration<F>> {
    if max_l < 1 {
        return Err(Error::LevelOutOfRange { level: max_l, max: 1 });
    }
    let f = a.field().clone();
    let n = a.dim();
    let mut powers = vec![SubspaceBasis::full(f.clone(), n)];
    let mut current = SubspaceBasis::full(f.clone(), n);
    let gens: Vec<usize> = if a.generator_indices().is_empty() {
        (0..n).filter(|g| *g != a.identity_index()).collect()
    } else {
        a.generator_indices().to_vec()
    };
    for l in 0..max_l {
        let mut b = EchelonBuilder::new(f.clone(), n);
        for row in current.rows() {
            for &s in &gens {
                b.push(a.times_augmentation(row, s))?;
            }
        }
        let next = b.finish();
        let zero = next.dim() == 0;
        let repeat = next.dim() == current.dim();
        powers.push(next.clone());
        if zero {
            return Ok(JFiltration { powers, stable_index: Some(l + 1) });
        }
        if repeat {
            return Ok(JFiltration { powers, stable_index: Some(l) });
        }
        current = next;
    }
    Ok(JFiltration { powers, stable_index: None })
}

/// `dim J / J^2`.
pub fn h1_dimension<F: Field>(jf: &JFiltration<F>) -> Result<usize> {
    Ok(jf.power(1)?.dim() - jf.power(2)?.dim())
}
