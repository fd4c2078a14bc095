use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{GroupAlgebra, JFiltration};
use crate::error::{Error, Result};
use crate::exactmath::{DenseMatrix, Field, SubspaceBasis};

const ASSOCIATIVITY_SEED: u64 = 0xa55c_0c1a;

/// `A_l = kG / J^(l+1)` on the basis of group elements at the free columns
/// of the echelon basis of `J^(l+1)`.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra<F: Field> {
    field: F,
    level: usize,
    ambient: usize,
    reps: Vec<usize>,
    /// `reduced[g]`: coordinates of the group element `g` in `A_l`.
    reduced: Vec<Vec<F::Elem>>,
    /// Group index of `reps[a] * reps[b]`, row-major.
    rep_products: Vec<usize>,
    ideal: SubspaceBasis<F>,
    identity: usize,
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn new(a: &GroupAlgebra<F>, jf: &JFiltration<F>, l: usize) -> Result<Self> {
        let ideal = jf.power(l + 1)?.clone();
        let reps = ideal.free_columns();
        let n = a.dim();
        let reduced = (0..n)
            .map(|g| {
                let r = ideal.residual(&a.basis_vector(g));
                reps.iter().map(|&c| r[c].clone()).collect()
            })
            .collect();
        let mut rep_products = Vec::with_capacity(reps.len() * reps.len());
        for &x in &reps {
            for &y in &reps {
                rep_products.push(a.product_index(x, y));
            }
        }
        Ok(QuotientAlgebra { field: a.field().clone(), level: l, ambient: n, reps, reduced, rep_products, ideal, identity: a.identity_index() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Group indices whose images form the basis of `A_l`.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// `J^(l+1)` inside `kG`.
    pub fn ideal(&self) -> &SubspaceBasis<F> {
        &self.ideal
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn project(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.ideal.residual(x);
        self.reps.iter().map(|&c| r[c].clone()).collect()
    }

    /// Image of the group element with index `g`.
    pub fn group_element(&self, g: usize) -> Vec<F::Elem> {
        self.reduced[g].clone()
    }

    /// The lift to `kG` supported on the representatives.
    pub fn lift(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.ambient];
        for (c, xa) in self.reps.iter().zip(x) {
            v[*c] = xa.clone();
        }
        v
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.reduced[self.identity].clone()
    }

    pub fn epsilon(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        x.iter().fold(f.zero(), |acc, c| f.add(&acc, c))
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if f.is_zero(yb) {
                    continue;
                }
                let c = f.mul(xa, yb);
                let red = &self.reduced[self.rep_products[a * d + b]];
                for (o, r) in out.iter_mut().zip(red) {
                    if !f.is_zero(r) {
                        *o = f.add(o, &f.mul(&c, r));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `u ↦ xu` on the representative basis.
    pub fn left_multiplication_matrix(&self, x: &[F::Elem]) -> Result<DenseMatrix<F>> {
        let d = self.dim();
        if x.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: x.len() });
        }
        let mut m = DenseMatrix::zeros(self.field.clone(), d, d);
        for b in 0..d {
            let col = self.mul(x, &self.basis_vector(b));
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, b, v);
            }
        }
        Ok(m)
    }

    pub fn basis_vector(&self, a: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[a] = self.field.one();
        v
    }

    /// Two-sided inverse, if `x` is a unit.
    pub fn inverse(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let inv = self.left_multiplication_matrix(x).ok()?.inverse()?;
        inv.mul_vec(&self.one()).ok()
    }

    /// Checks `(xy)z = x(yz)` on all basis triples when `dim ≤ 16`, on a
    /// fixed-seed sample of `10^4` triples otherwise.
    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let (x, y, z) = (self.basis_vector(a), self.basis_vector(b), self.basis_vector(c));
            if self.mul(&self.mul(&x, &y), &z) != self.mul(&x, &self.mul(&y, &z)) {
                return Err(Error::ClosureViolation);
            }
            Ok(())
        };
        if d == 0 {
            return Ok(());
        }
        if d <= 16 {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..10_000 {
                check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }
}

pub fn quotient_algebra<F: Field>(a: &GroupAlgebra<F>, jf: &JFiltration<F>, l: usize) -> Result<QuotientAlgebra<F>> {
    QuotientAlgebra::new(a, jf, l)
}
