use std::fmt;

use super::echelon::{echelonize, EchelonBuilder};
use super::field::Field;
use crate::error::{Error, Result};

/// Row-major dense matrix over a field.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| !field.contains(e)) {
            return Err(Error::InvalidElement(format!("{bad:?} is not a canonical element of {}", field.spec())));
        }
        Ok(DenseMatrix { field, rows, cols, entries })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        DenseMatrix { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r);
        }
        Self::new(field, n, cols, entries)
    }

    /// Builds a matrix from signed integers reduced into the field.
    pub fn from_i64(field: F, rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        let entries = values.iter().map(|v| field.from_i64(*v)).collect();
        Self::new(field, rows, cols, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = Vec<F::Elem>> + '_ {
        (0..self.rows).map(|r| self.row(r).to_vec())
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.spec().to_string(),
                found: other.field.spec().to_string(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                let neg = f.neg(a);
                let start = r * other.cols;
                f.sub_scaled(&mut out.entries[start..start + other.cols], &neg, other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        echelonize(self, self.field.clone()).map(|(_, r)| r).unwrap_or(0)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse by reducing `[M | I]`.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut builder = EchelonBuilder::new(f.clone(), 2 * n);
        for r in 0..n {
            let mut v = self.row(r).to_vec();
            v.extend((0..n).map(|c| if c == r { f.one() } else { f.zero() }));
            builder.push(v).ok()?;
        }
        let basis = builder.finish();
        if basis.pivots().iter().copied().take(n).ne(0..n) || basis.dim() != n {
            return None;
        }
        let entries = basis.rows().iter().flat_map(|row| row[n..].iter().cloned()).collect();
        Some(DenseMatrix { field: f.clone(), rows: n, cols: n, entries })
    }
}

impl<F: Field> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::PrimeField;

    #[test]
    fn inverse_round_trips() {
        let f = PrimeField::new(7).unwrap();
        let m = DenseMatrix::from_i64(f, 3, 3, &[2, 1, 0, 0, 3, 1, 1, 0, 5]).unwrap();
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(f, 3));
        let singular = DenseMatrix::from_i64(f, 2, 2, &[1, 2, 2, 4]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn rejects_bad_shapes_and_entries() {
        let f = PrimeField::new(3).unwrap();
        assert!(DenseMatrix::new(f, 2, 2, vec![0, 1, 2]).is_err());
        assert!(DenseMatrix::new(f, 1, 2, vec![0, 3]).is_err());
    }
}
