use super::algebra::{GroupAlgebra, JFiltration};
use super::quotient::QuotientAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{DenseMatrix, EchelonBuilder, Field};

/// Largest `|G|^2` for which the tensor square is handled.
pub const MAX_TENSOR_DIM: usize = 65_536;

/// The comultiplication `Δ_l : A_l → B_l = (kG ⊗ kG) / D^(l+1)` with
/// `D = J ⊗ kG + kG ⊗ J`, induced by `g ↦ g ⊗ g`.
///
/// `kG` is given a basis `u_a` adapted to the filtration, with weight `w(a)`
/// the largest `i` such that `u_a ∈ J^i` (capped at `l+1`). Then `D^(l+1)` is
/// spanned by the `u_a ⊗ u_b` with `w(a) + w(b) > l`, and `B_l` has the
/// remaining pairs as a basis.
#[derive(Debug, Clone)]
pub struct Coproduct<F: Field> {
    field: F,
    level: usize,
    weights: Vec<usize>,
    /// Row `a` is the coordinate functional of `u_a` on the group basis.
    coords: DenseMatrix<F>,
    /// Column `a` is `u_a`.
    vectors: DenseMatrix<F>,
    pairs: Vec<(usize, usize)>,
}

impl<F: Field> Coproduct<F> {
    pub fn new(a: &GroupAlgebra<F>, jf: &JFiltration<F>, l: usize) -> Result<Self> {
        let n = a.dim();
        if n * n > MAX_TENSOR_DIM {
            return Err(Error::DimensionLimit { what: "tensor square kG ⊗ kG", size: (n * n) as u128, limit: MAX_TENSOR_DIM as u128 });
        }
        let f = a.field().clone();
        let mut basis: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..=l {
            let lower = jf.power(i + 1)?;
            let mut b = EchelonBuilder::new(f.clone(), n);
            for row in lower.rows() {
                b.push(row.clone())?;
            }
            for row in jf.power(i)?.rows() {
                if b.push(row.clone())? {
                    basis.push(row.clone());
                    weights.push(i);
                }
            }
        }
        for row in jf.power(l + 1)?.rows() {
            basis.push(row.clone());
            weights.push(l + 1);
        }
        if basis.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: basis.len() });
        }
        // basis vectors are the rows, so the coordinate functionals are the
        // columns of the inverse
        let u = DenseMatrix::from_rows(f.clone(), n, basis)?;
        let coords = u.inverse().ok_or(Error::ClosureViolation)?.transpose();
        let vectors = u.transpose();
        let mut pairs = Vec::new();
        for (x, wx) in weights.iter().enumerate() {
            for (y, wy) in weights.iter().enumerate() {
                if wx + wy <= l {
                    pairs.push((x, y));
                }
            }
        }
        let cop = Coproduct { field: f, level: l, weights, coords, vectors, pairs };
        for row in jf.power(l + 1)?.rows() {
            if cop.apply(row).iter().any(|c| !cop.field.is_zero(c)) {
                return Err(Error::GrouplikeViolation("Δ(J^(l+1)) is not contained in D^(l+1)".into()));
            }
        }
        Ok(cop)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `dim B_l`
    pub fn target_dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Index pairs `(a, b)` of the basis `u_a ⊗ u_b` of `B_l`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Coordinates of `x` in the adapted basis.
    pub fn adapted_coordinates(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.coords.mul_vec(x).expect("length checked by caller")
    }

    /// The adapted basis vector `u_a` on the group basis.
    pub fn adapted_vector(&self, a: usize) -> Vec<F::Elem> {
        self.vectors.column(a)
    }

    /// `Δ(x)` in `B_l` for `x ∈ kG`.
    pub fn apply(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.pairs
            .iter()
            .map(|&(a, b)| {
                let (ca, cb) = (self.coords.row(a), self.coords.row(b));
                let mut acc = f.zero();
                for (g, xg) in x.iter().enumerate() {
                    if !f.is_zero(xg) {
                        acc = f.add(&acc, &f.mul(xg, &f.mul(&ca[g], &cb[g])));
                    }
                }
                acc
            })
            .collect()
    }

    /// `x ⊗ x` in `B_l` for `x ∈ kG`.
    pub fn tensor_square(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let xc = self.adapted_coordinates(x);
        self.pairs.iter().map(|&(a, b)| f.mul(&xc[a], &xc[b])).collect()
    }

    /// Reduces a tensor given by its coefficients `t[g*n + h]` on `g ⊗ h`.
    pub fn reduce_tensor(&self, t: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.coords.cols();
        self.pairs
            .iter()
            .map(|&(a, b)| {
                let (ca, cb) = (self.coords.row(a), self.coords.row(b));
                let mut acc = f.zero();
                for g in 0..n {
                    if f.is_zero(&ca[g]) {
                        continue;
                    }
                    for h in 0..n {
                        let c = &t[g * n + h];
                        if !f.is_zero(c) {
                            acc = f.add(&acc, &f.mul(c, &f.mul(&ca[g], &cb[h])));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// A tensor in `kG ⊗ kG` representing the class with coordinates `y`.
    pub fn lift_tensor(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.coords.cols();
        let mut t = vec![f.zero(); n * n];
        for (&(a, b), c) in self.pairs.iter().zip(y) {
            if f.is_zero(c) {
                continue;
            }
            let (ua, ub) = (self.vectors.column(a), self.vectors.column(b));
            for g in 0..n {
                if f.is_zero(&ua[g]) {
                    continue;
                }
                let s = f.mul(c, &ua[g]);
                for h in 0..n {
                    if !f.is_zero(&ub[h]) {
                        t[g * n + h] = f.add(&t[g * n + h], &f.mul(&s, &ub[h]));
                    }
                }
            }
        }
        t
    }

    /// Matrix of `Δ_l` from the representative basis of `q` to `B_l`.
    pub fn matrix(&self, q: &QuotientAlgebra<F>) -> Result<DenseMatrix<F>> {
        let d = q.dim();
        let mut m = DenseMatrix::zeros(self.field.clone(), self.target_dim(), d);
        for c in 0..d {
            for (r, v) in self.apply(&q.lift(&q.basis_vector(c))).into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }
}

pub fn coproduct_to_quotient<F: Field>(a: &GroupAlgebra<F>, jf: &JFiltration<F>, l: usize) -> Result<Coproduct<F>> {
    Coproduct::new(a, jf, l)
}

/// `ε(x) = 1` and `Δ_l(x) = x ⊗ x` in `B_l`, for `x` given in `A_l`.
pub fn is_grouplike<F: Field>(q: &QuotientAlgebra<F>, cop: &Coproduct<F>, x: &[F::Elem]) -> Result<bool> {
    if x.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: x.len() });
    }
    if cop.level() != q.level() {
        return Err(Error::LevelOutOfRange { level: cop.level(), max: q.level() });
    }
    if !q.field().is_one(&q.epsilon(x)) {
        return Ok(false);
    }
    let lift = q.lift(x);
    Ok(cop.apply(&lift) == cop.tensor_square(&lift))
}
