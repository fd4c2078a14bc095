use super::field::Field;
use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

const NO_PIVOT: usize = usize::MAX;

/// A subspace of `F^ambient` held in reduced row echelon form.
///
/// Rows are sorted by pivot column, every pivot entry is one, and every
/// pivot column is zero in all other rows. This form is unique for a given
/// subspace, so two bases compare equal exactly when the subspaces do.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        SubspaceBasis { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        SubspaceBasis { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that carry no pivot; the standard basis vectors at these
    /// positions complete the subspace to the whole space.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|c| !is_pivot[*c]).collect()
    }

    /// `v` minus its projection onto the subspace along the free columns.
    pub fn residual(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let coef = v[c].clone();
            if !self.field.is_zero(&coef) {
                self.field.sub_scaled(&mut out, &coef, row);
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        v.len() == self.ambient && self.residual(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates with respect to the echelon rows, or `None` when `v` lies
    /// outside the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        if !self.residual(v).iter().all(|x| self.field.is_zero(x)) {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&c| v[c].clone()).collect()))
    }

    pub fn combine(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            let neg = f.neg(c);
            f.sub_scaled(&mut out, &neg, row);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains_vector(r))
    }

    pub fn to_builder(&self) -> EchelonBuilder<F> {
        let mut pivot_row = vec![NO_PIVOT; self.ambient];
        for (i, &c) in self.pivots.iter().enumerate() {
            pivot_row[c] = i;
        }
        EchelonBuilder {
            field: self.field.clone(),
            ambient: self.ambient,
            rows: self.rows.clone(),
            pivots: self.pivots.clone(),
            pivot_row,
        }
    }

    /// Checks the reduced-echelon invariants.
    pub fn is_reduced_echelon(&self) -> bool {
        let f = &self.field;
        self.pivots.windows(2).all(|w| w[0] < w[1])
            && self.rows.iter().zip(&self.pivots).all(|(row, &c)| {
                f.is_one(&row[c]) && row[..c].iter().all(|x| f.is_zero(x))
            })
            && self.pivots.iter().enumerate().all(|(i, &c)| {
                self.rows.iter().enumerate().all(|(j, row)| j == i || f.is_zero(&row[c]))
            })
    }
}

/// Incremental row reduction that keeps its rows in reduced echelon form.
///
/// Because every stored row is zero at the other pivot columns, reducing an
/// incoming vector needs one row operation per pivot where the vector is
/// non-zero; sparse inputs therefore reduce in a handful of operations.
#[derive(Debug, Clone)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: Vec<usize>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        EchelonBuilder { field, ambient, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![NO_PIVOT; ambient] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce_in_place(&self, v: &mut [F::Elem]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let coef = v[c].clone();
            if !self.field.is_zero(&coef) {
                self.field.sub_scaled(v, &coef, row);
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn push(&mut self, mut v: Vec<F::Elem>) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        self.reduce_in_place(&mut v);
        Ok(self.insert_reduced(v))
    }

    /// Adds a vector given as `(column, value)` pairs. Repeated columns are summed.
    pub fn push_sparse(&mut self, entries: &[(usize, F::Elem)]) -> Result<bool> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.ambient];
        for (c, x) in entries {
            if *c >= self.ambient {
                return Err(Error::DimensionMismatch { expected: self.ambient, found: c + 1 });
            }
            v[*c] = f.add(&v[*c], x);
        }
        for (c, _) in entries {
            let r = self.pivot_row[*c];
            if r != NO_PIVOT {
                let coef = v[*c].clone();
                if !f.is_zero(&coef) {
                    f.sub_scaled(&mut v, &coef, &self.rows[r]);
                }
            }
        }
        Ok(self.insert_reduced(v))
    }

    fn insert_reduced(&mut self, mut v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        let Some(lead) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[lead]).expect("non-zero element of a field is invertible");
        f.scale(&mut v, &inv);
        for row in self.rows.iter_mut() {
            let coef = row[lead].clone();
            if !f.is_zero(&coef) {
                f.sub_scaled(row, &coef, &v);
            }
        }
        self.pivot_row[lead] = self.rows.len();
        self.rows.push(v);
        self.pivots.push(lead);
        true
    }

    pub fn finish(self) -> SubspaceBasis<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows_opt: Vec<Option<Vec<F::Elem>>> = self.rows.into_iter().map(Some).collect();
        let rows = order.iter().map(|&i| rows_opt[i].take().expect("each row taken once")).collect();
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        SubspaceBasis { field: self.field, ambient: self.ambient, rows, pivots }
    }
}

/// Streams the rows of a matrix and produces the reduced echelon basis of
/// its null space.
///
/// Rows are reduced with the column order reversed. The canonical null space
/// vectors of a reverse-ordered echelon form are, once the columns are put
/// back, already in reduced echelon form for the natural order, so no second
/// elimination is needed.
#[derive(Debug, Clone)]
pub struct NullspaceBuilder<F: Field> {
    inner: EchelonBuilder<F>,
}

impl<F: Field> NullspaceBuilder<F> {
    pub fn new(field: F, cols: usize) -> Self {
        NullspaceBuilder { inner: EchelonBuilder::new(field, cols) }
    }

    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    pub fn push(&mut self, mut row: Vec<F::Elem>) -> Result<bool> {
        row.reverse();
        self.inner.push(row)
    }

    pub fn push_sparse(&mut self, entries: &[(usize, F::Elem)]) -> Result<bool> {
        let n = self.inner.ambient;
        if let Some((c, _)) = entries.iter().find(|(c, _)| *c >= n) {
            return Err(Error::DimensionMismatch { expected: n, found: c + 1 });
        }
        let flipped: Vec<(usize, F::Elem)> = entries.iter().map(|(c, x)| (n - 1 - c, x.clone())).collect();
        self.inner.push_sparse(&flipped)
    }

    pub fn finish(self) -> SubspaceBasis<F> {
        let field = self.inner.field.clone();
        let n = self.inner.ambient;
        let reversed = self.inner.finish();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        // free columns of the reversed form, largest first, give ascending
        // leading columns in the natural order
        for free in reversed.free_columns().into_iter().rev() {
            let mut v = vec![field.zero(); n];
            v[n - 1 - free] = field.one();
            for (row, &pc) in reversed.rows().iter().zip(reversed.pivots()) {
                if !field.is_zero(&row[free]) {
                    v[n - 1 - pc] = field.neg(&row[free]);
                }
            }
            pivots.push(n - 1 - free);
            rows.push(v);
        }
        SubspaceBasis { field, ambient: n, rows, pivots }
    }
}

fn check_field<F: Field>(m: &DenseMatrix<F>, f: &F) -> Result<()> {
    if m.field() != f {
        return Err(Error::FieldMismatch { expected: f.spec().to_string(), found: m.field().spec().to_string() });
    }
    Ok(())
}

/// Reduced row echelon basis of the row space, with the rank.
pub fn echelonize<F: Field>(m: &DenseMatrix<F>, f: F) -> Result<(SubspaceBasis<F>, usize)> {
    check_field(m, &f)?;
    let mut b = EchelonBuilder::new(f, m.cols());
    for r in 0..m.rows() {
        b.push(m.row(r).to_vec())?;
    }
    let basis = b.finish();
    let rank = basis.dim();
    Ok((basis, rank))
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace<F: Field>(m: &DenseMatrix<F>, f: F) -> Result<SubspaceBasis<F>> {
    check_field(m, &f)?;
    let mut b = NullspaceBuilder::new(f, m.cols());
    for r in 0..m.rows() {
        b.push(m.row(r).to_vec())?;
    }
    Ok(b.finish())
}

/// Coordinates of `v` against the basis rows, if `v` lies in their span.
pub fn subspace_contains<F: Field>(b: &SubspaceBasis<F>, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    b.coordinates(v)
}

pub fn span<F: Field>(field: F, ambient: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Result<SubspaceBasis<F>> {
    let mut b = EchelonBuilder::new(field, ambient);
    for v in vectors {
        b.push(v)?;
    }
    Ok(b.finish())
}
